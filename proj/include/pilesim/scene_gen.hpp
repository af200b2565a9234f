#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <vector>

#include "pilesim/pile_ops.hpp"
#include "pilesim/rng.hpp"
#include "pilesim/scene.hpp"

namespace pilesim {

struct SceneGenConfig {
  int grid_width = 64;
  int grid_height = 64;
  double cell_size = 0.02;
  double layer_thickness = 0.005;
  BoundaryKind boundary = BoundaryKind::Open;
  int count_min = 6;
  int count_max = 16;
  int wall_margin = 2;
  double floor_offset = 0.0;
  int container_inset = 14;  // closed: container rect inset from the grid edge
  int color_jitter = 10;     // per-channel jitter around the palette color
};

// Paper-style scenario presets: open surfaces hold 6-16 garments, containers 3-8.
inline SceneGenConfig default_scene_config(BoundaryKind kind) {
  SceneGenConfig cfg;
  cfg.boundary = kind;
  if (kind == BoundaryKind::Closed) {
    cfg.count_min = 3;
    cfg.count_max = 8;
  }
  return cfg;
}

namespace detail {

// connected blob of `area` cells grown by seeded frontier expansion
inline std::vector<Cell> grow_blob(int area, Rng& rng) {
  std::set<Cell> cells{Cell{0, 0}};
  std::vector<Cell> frontier{Cell{0, 0}};
  while (static_cast<int>(cells.size()) < area && !frontier.empty()) {
    const int pick = rng.uniform_int(0, static_cast<int>(frontier.size()) - 1);
    const Cell base = frontier[pick];
    std::vector<Cell> open;
    for (int k = 0; k < 4; ++k) {
      const Cell n{base.x + kNeighbor4X[k], base.y + kNeighbor4Y[k]};
      if (!cells.count(n)) open.push_back(n);
    }
    if (open.empty()) {
      frontier.erase(frontier.begin() + pick);
      continue;
    }
    const Cell chosen = open[rng.uniform_int(0, static_cast<int>(open.size()) - 1)];
    cells.insert(chosen);
    frontier.push_back(chosen);
  }
  std::vector<Cell> out(cells.begin(), cells.end());
  const Rect bb = bounding_rect(out);
  for (Cell& c : out) {
    c.x -= bb.x0;
    c.y -= bb.y0;
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<Cell> make_strip(int width, int length, bool horizontal) {
  std::vector<Cell> out;
  const int w = horizontal ? length : width;
  const int h = horizontal ? width : length;
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) out.push_back(Cell{x, y});
  return out;
}

struct ShapeDraw {
  std::vector<Cell> cells;
  ShapeClass shape_class;
};

inline ShapeDraw draw_footprint(Category cat, Rng& rng) {
  switch (cat) {
    case Category::Dress:
      return {grow_blob(rng.uniform_int(90, 140), rng), ShapeClass::Blob};
    case Category::Tops:
      return {grow_blob(rng.uniform_int(60, 100), rng), ShapeClass::Blob};
    case Category::Skirt:
      return {grow_blob(rng.uniform_int(50, 80), rng), ShapeClass::Blob};
    case Category::Underpants:
      return {grow_blob(rng.uniform_int(16, 28), rng), ShapeClass::Blob};
    case Category::Hat:
      return {grow_blob(rng.uniform_int(12, 20), rng), ShapeClass::Blob};
    case Category::Glove:
      return {grow_blob(rng.uniform_int(8, 16), rng), ShapeClass::Blob};
    case Category::Socks:
      return {grow_blob(rng.uniform_int(8, 14), rng), ShapeClass::Blob};
    case Category::Trousers:
      return {make_strip(rng.uniform_int(2, 3), rng.uniform_int(14, 22),
                         rng.bernoulli(0.5)),
              ShapeClass::Strip};
    case Category::Scarf:
      return {make_strip(rng.uniform_int(1, 2), rng.uniform_int(18, 28),
                         rng.bernoulli(0.5)),
              ShapeClass::Strip};
  }
  return {grow_blob(20, rng), ShapeClass::Blob};
}

}  // namespace detail

// Builds a seeded pile. Identical (config, seed) pairs yield identical scenes.
inline PileScene generate_scene(const SceneGenConfig& cfg, std::uint64_t seed) {
  if (cfg.grid_width < 32 || cfg.grid_height < 32)
    throw ConfigError("generate_scene: grid must be at least 32x32");
  if (cfg.count_min < 1 || cfg.count_min > cfg.count_max)
    throw ConfigError("generate_scene: invalid garment-count range");

  PileScene scene;
  scene.grid_width = cfg.grid_width;
  scene.grid_height = cfg.grid_height;
  scene.cell_size = cfg.cell_size;
  scene.layer_thickness = cfg.layer_thickness;
  scene.seed = seed;
  scene.boundary.kind = cfg.boundary;
  scene.boundary.wall_margin = cfg.wall_margin;
  scene.boundary.floor_offset = cfg.floor_offset;
  if (cfg.boundary == BoundaryKind::Closed) {
    scene.boundary.container =
        Rect{cfg.container_inset, cfg.container_inset,
             cfg.grid_width - 1 - cfg.container_inset,
             cfg.grid_height - 1 - cfg.container_inset};
    if (scene.boundary.container.width() < 12 ||
        scene.boundary.container.height() < 12)
      throw GenerationError("generate_scene: container interior too small");
  }

  const Rect bounds = scene.placement_bounds();
  const long capacity = static_cast<long>(bounds.width()) * bounds.height();
  if (static_cast<long>(cfg.count_min) * 8 > 2 * capacity)
    throw GenerationError(
        "generate_scene: garment count incompatible with grid capacity");

  Rng rng(derive_seed(seed, 0x7363656eu /*'scen'*/));
  const int count = rng.uniform_int(cfg.count_min, cfg.count_max);

  for (int i = 0; i < count; ++i) {
    const Category cat = static_cast<Category>(rng.uniform_int(0, 8));
    detail::ShapeDraw shape = detail::draw_footprint(cat, rng);
    Rect bb = bounding_rect(shape.cells);
    // shrink strips that cannot fit the container interior
    if (bb.width() > bounds.width() || bb.height() > bounds.height()) {
      const int len = std::min(bounds.width(), bounds.height()) - 2;
      shape.cells = detail::make_strip(1, len, bb.width() >= bb.height());
      bb = bounding_rect(shape.cells);
    }
    const int max_x = bounds.x1 - bb.x1;
    const int max_y = bounds.y1 - bb.y1;
    const int ox = rng.uniform_int(bounds.x0, max_x);
    const int oy = rng.uniform_int(bounds.y0, max_y);

    GarmentSpec g;
    g.id = i;
    g.category = cat;
    g.shape_class = shape.shape_class;
    const PaletteEntry& base = palette()[rng.uniform_int(0, 11)];
    const auto channel = [&](std::uint8_t v) {
      const int j = rng.uniform_int(-cfg.color_jitter, cfg.color_jitter);
      return static_cast<std::uint8_t>(std::clamp(int(v) + j, 0, 255));
    };
    g.color = Rgb{channel(base.rgb.r), channel(base.rgb.g), channel(base.rgb.b)};
    g.footprint = shape.cells;
    for (Cell& c : g.footprint) {
      c.x += ox;
      c.y += oy;
    }
    scene.stack.push_back(std::move(g));
  }
  scene.entanglement = compute_entanglement(scene.stack);
  return scene;
}

}  // namespace pilesim
