#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "pilesim/mask.hpp"
#include "pilesim/scene.hpp"

namespace pilesim {

// Front view of the lifted garments hanging from the gripper. Row r holds
// cloth at unfurled distance r (cells) below the grasp; columns gather
// toward the grasp x by `bunch`. Cloth unfurled past the lift height rests
// at depth zero. Pixels remember which garment is in front and which scene
// cell produced them, so hanging-view picks map back to grasp points.
struct LiftView {
  Observation obs;
  Bitmap lifted_region;     // every pixel some lifted garment reaches
  Grid<int> front_garment;  // garment id per pixel, -1 where empty
  Grid<int> source_index;   // flattened scene cell behind each pixel, -1
  double lift_height = 0.35;

  bool empty() const { return bitmap_area(lifted_region) == 0; }

  Bitmap garment_pixels(int garment_id) const {
    Bitmap b(front_garment.width(), front_garment.height(), 0);
    for (int y = 0; y < front_garment.height(); ++y)
      for (int x = 0; x < front_garment.width(); ++x)
        if (front_garment.at(x, y) == garment_id) b.at(x, y) = 1;
    return b;
  }

  Cell source_cell(const Cell& pixel) const {
    const int idx = source_index.at(pixel);
    if (idx < 0) throw DomainError("lift view: pixel has no source cell");
    return Cell{idx % front_garment.width(), idx / front_garment.width()};
  }
};

inline LiftView make_lift_view(const PileScene& scene,
                               const std::vector<int>& lifted_ids,
                               const Cell& grasp, double lift_height,
                               double bunch = 0.3) {
  const int W = scene.grid_width;
  const int H = scene.grid_height;
  LiftView view;
  view.lift_height = lift_height;
  view.obs.cell_size = scene.cell_size;
  view.obs.layer_thickness = scene.layer_thickness;
  view.obs.color = Grid<Rgb>(W, H, view.obs.background);
  view.obs.depth = Grid<double>(W, H, 0.0);
  view.lifted_region = Bitmap(W, H, 0);
  view.front_garment = Grid<int>(W, H, -1);
  view.source_index = Grid<int>(W, H, -1);

  for (const auto& g : scene.stack) {  // stack order: later paints in front
    if (std::find(lifted_ids.begin(), lifted_ids.end(), g.id) ==
        lifted_ids.end())
      continue;
    for (const Cell& c : g.footprint) {
      const double d = cell_distance(c, grasp);
      const int row = std::clamp(static_cast<int>(std::lround(d)), 0, H - 1);
      const int col = std::clamp(
          grasp.x + static_cast<int>(std::lround((c.x - grasp.x) * bunch)), 0,
          W - 1);
      const Cell px{col, row};
      view.obs.color.at(px) = g.color;
      view.obs.depth.at(px) =
          std::max(0.0, lift_height - d * scene.cell_size);
      view.lifted_region.at(px) = 1;
      view.front_garment.at(px) = g.id;
      view.source_index.at(px) = static_cast<int>(
          static_cast<std::size_t>(c.y) * W + c.x);
    }
  }
  return view;
}

// Slave-arm grasp selection: hanging pixels of the picked mask sorted along
// z, the pick taken from the bottom (ties: lowest row-major pixel index).
// The returned scene cell differs from the master grasp whenever another
// candidate exists; a single-point mask returns the master cell, degenerate.
inline Cell select_coop_point(const LiftView& view, const Bitmap& picked_mask,
                              const Cell& master_grasp) {
  struct Candidate {
    double z;
    std::size_t idx;
    Cell pixel;
  };
  std::vector<Candidate> cands;
  for (int y = 0; y < picked_mask.height(); ++y)
    for (int x = 0; x < picked_mask.width(); ++x) {
      if (!picked_mask.at(x, y)) continue;
      const Cell px{x, y};
      if (view.source_index.at(px) < 0) continue;
      cands.push_back(Candidate{view.obs.depth.at(px),
                                picked_mask.index(px), px});
    }
  if (cands.empty())
    throw DomainError("select_coop_point: picked mask covers no points");

  std::sort(cands.begin(), cands.end(), [](const auto& a, const auto& b) {
    if (a.z != b.z) return a.z < b.z;
    return a.idx < b.idx;
  });
  for (const auto& c : cands) {
    const Cell src = view.source_cell(c.pixel);
    if (src != master_grasp) return src;
  }
  return view.source_cell(cands[0].pixel);
}

}  // namespace pilesim
