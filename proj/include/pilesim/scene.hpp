#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "pilesim/color.hpp"
#include "pilesim/errors.hpp"
#include "pilesim/grid.hpp"

namespace pilesim {

enum class Category {
  Dress,
  Trousers,
  Tops,
  Skirt,
  Socks,
  Glove,
  Hat,
  Scarf,
  Underpants,
};

inline const char* category_name(Category c) {
  switch (c) {
    case Category::Dress: return "dress";
    case Category::Trousers: return "trousers";
    case Category::Tops: return "tops";
    case Category::Skirt: return "skirt";
    case Category::Socks: return "socks";
    case Category::Glove: return "glove";
    case Category::Hat: return "hat";
    case Category::Scarf: return "scarf";
    case Category::Underpants: return "underpants";
  }
  return "?";
}

inline Category category_from_name(const std::string& s) {
  static const char* names[] = {"dress", "trousers", "tops",  "skirt",
                                "socks", "glove",    "hat",   "scarf",
                                "underpants"};
  for (int i = 0; i < 9; ++i)
    if (s == names[i]) return static_cast<Category>(i);
  throw ConfigError("unknown garment category: " + s);
}

enum class ShapeClass { Blob, Strip };

struct GarmentSpec {
  int id = 0;
  Category category = Category::Tops;
  Rgb color;
  std::vector<Cell> footprint;  // sorted row-major; non-empty, 4-connected
  ShapeClass shape_class = ShapeClass::Blob;

  int area() const { return static_cast<int>(footprint.size()); }
  bool covers(const Cell& c) const {
    return std::binary_search(footprint.begin(), footprint.end(), c);
  }
};

enum class BoundaryKind { Open, Closed };

struct BoundarySpec {
  BoundaryKind kind = BoundaryKind::Open;
  Rect container;             // valid when kind == Closed
  int wall_margin = 2;        // cells; grasps this close to a wall collide
  double floor_offset = 0.0;  // meters; container floor above the surround

  // distance (cells) from c to the nearest container side; <0 outside
  int wall_distance(const Cell& c) const {
    return std::min(std::min(c.x - container.x0, container.x1 - c.x),
                    std::min(c.y - container.y0, container.y1 - c.y));
  }
  bool violates_wall(const Cell& c) const {
    if (kind != BoundaryKind::Closed) return false;
    const int d = wall_distance(c);
    return d >= 0 && d < wall_margin;
  }
};

struct EntanglementEdge {
  int a = 0;  // garment ids, a < b
  int b = 0;
  double weight = 0.0;
};

// The world state: an ordered stack of garment footprints on a grid.
// Values are immutable in spirit; operations return fresh scenes.
struct PileScene {
  int grid_width = 64;
  int grid_height = 64;
  double cell_size = 0.02;        // meters per cell
  double layer_thickness = 0.005;  // meters per garment layer
  BoundarySpec boundary;
  std::vector<GarmentSpec> stack;  // index = stacking order, later = on top
  std::vector<EntanglementEdge> entanglement;
  std::uint64_t seed = 0;

  bool in_grid(const Cell& c) const {
    return c.x >= 0 && c.x < grid_width && c.y >= 0 && c.y < grid_height;
  }

  const GarmentSpec* find(int id) const {
    for (const auto& g : stack)
      if (g.id == id) return &g;
    return nullptr;
  }

  int stack_position(int id) const {
    for (int i = 0; i < static_cast<int>(stack.size()); ++i)
      if (stack[i].id == id) return i;
    return -1;
  }

  // id of the stack-topmost garment covering c, or -1
  int topmost_at(const Cell& c) const {
    for (int i = static_cast<int>(stack.size()) - 1; i >= 0; --i)
      if (stack[i].covers(c)) return stack[i].id;
    return -1;
  }

  int cover_count(const Cell& c) const {
    int n = 0;
    for (const auto& g : stack)
      if (g.covers(c)) ++n;
    return n;
  }

  double entanglement_weight(int a, int b) const {
    if (a > b) std::swap(a, b);
    for (const auto& e : entanglement)
      if (e.a == a && e.b == b) return e.weight;
    return 0.0;
  }

  // cells a garment may occupy (whole grid, or container interior)
  Rect placement_bounds() const {
    if (boundary.kind == BoundaryKind::Closed) return boundary.container;
    return Rect{0, 0, grid_width - 1, grid_height - 1};
  }
};

struct Observation {
  Grid<Rgb> color;
  Grid<double> depth;  // meters
  double cell_size = 0.02;
  double layer_thickness = 0.005;
  Rgb background{45, 45, 60};
};

enum class GraspResult { Success, MultiLift, Drop, BoundaryCollision, EmptyGrasp };

inline const char* grasp_result_name(GraspResult r) {
  switch (r) {
    case GraspResult::Success: return "success";
    case GraspResult::MultiLift: return "multi_lift";
    case GraspResult::Drop: return "drop";
    case GraspResult::BoundaryCollision: return "boundary_collision";
    case GraspResult::EmptyGrasp: return "empty_grasp";
  }
  return "?";
}

struct GraspOutcome {
  std::vector<int> lifted_ids;  // sorted
  GraspResult result = GraspResult::EmptyGrasp;
  double sag = 0.0;  // meters
  int steps = 1;     // motion steps spent by this primitive
};

// Grasp-oracle and arm constants. The paper-facing defaults live here.
struct OracleConfig {
  double r_drag = 3.0;    // cells: co-lift radius for garments above the target
  double theta_ent = 0.5;  // entanglement weight that forces co-lifting
  double l_arm = 0.35;     // meters: single-arm reach / lift height
  int dropback_offset = 2;  // cells: max |offset| when a failed lift drops back
  int shake_radius = 10;    // cells: translation search radius for shaking
};

}  // namespace pilesim
