#pragma once

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#include "pilesim/pile_ops.hpp"
#include "pilesim/segment.hpp"

namespace pilesim {

namespace detail {

// garment whose visible region best matches the mask on this scene
// (max IoU, ties to the lower garment id); -1 when nothing overlaps
inline int associate_mask(const Bitmap& mask, const PileScene& scene) {
  int best_id = -1;
  double best_iou = 0.0;
  for (const auto& [id, cells] : visible_regions(scene)) {
    if (cells.empty()) continue;
    const double iou = mask_iou(
        mask, bitmap_from_cells(scene.grid_width, scene.grid_height, cells));
    if (iou > best_iou || (iou == best_iou && iou > 0.0 && id < best_id)) {
      best_iou = iou;
      best_id = id;
    }
  }
  return best_iou > 0.0 ? best_id : -1;
}

}  // namespace detail

// Video-predictor stand-in: each mask is associated on frame 0 with the
// garment whose visible region it matches best; the output mask is that
// garment's visible region in the last frame. Masks whose garment left the
// field are dropped; survivors are renumbered in input order.
inline MaskSet track_masks(const std::vector<PileScene>& frames,
                           const MaskSet& masks) {
  if (frames.empty()) throw DomainError("track_masks: no frames");
  const PileScene& first = frames.front();
  const PileScene& last = frames.back();
  const auto last_regions = visible_regions(last);

  MaskSet out;
  for (const auto& m : masks.masks) {
    const int id = detail::associate_mask(m.bitmap, first);
    if (id < 0) continue;
    const auto it =
        std::find_if(last_regions.begin(), last_regions.end(),
                     [&](const auto& p) { return p.first == id; });
    if (it == last_regions.end() || it->second.empty()) continue;
    out.masks.push_back(make_mask(
        bitmap_from_cells(last.grid_width, last.grid_height, it->second), 0));
  }
  out.renumber();
  return out;
}

// Center-outward mask regeneration. Scans cells by increasing distance from
// the image center; every covered cell not yet under a mask becomes a point
// prompt. The union of kept and regenerated masks goes through filtering and
// NMS.
inline MaskSet regenerate_from_center(const Observation& obs,
                                      const PileScene& scene,
                                      const MaskSet& kept,
                                      const SegmenterConfig& cfg,
                                      std::uint64_t seed) {
  const int W = scene.grid_width;
  const int H = scene.grid_height;
  const double cx = (W - 1) / 2.0;
  const double cy = (H - 1) / 2.0;

  std::vector<Cell> order;
  order.reserve(static_cast<std::size_t>(W) * H);
  for (int y = 0; y < H; ++y)
    for (int x = 0; x < W; ++x) order.push_back(Cell{x, y});
  std::stable_sort(order.begin(), order.end(),
                   [&](const Cell& a, const Cell& b) {
                     const double da = (a.x - cx) * (a.x - cx) +
                                       (a.y - cy) * (a.y - cy);
                     const double db = (b.x - cx) * (b.x - cx) +
                                       (b.y - cy) * (b.y - cy);
                     if (da != db) return da < db;
                     return a < b;  // lower row, then column
                   });

  Bitmap covered(W, H, 0);
  MaskSet combined = kept;
  for (const auto& m : combined.masks)
    for (const Cell& c : cells_of(m.bitmap)) covered.at(c) = 1;

  // one stream for all prompts: merge decisions stay consistent within a pass
  const std::uint64_t prompt_seed = derive_seed(seed, 0x70726f6du);
  for (const Cell& c : order) {
    if (covered.at(c) || scene.topmost_at(c) < 0) continue;
    Mask fresh = point_prompt_segment(obs, scene, c, cfg, prompt_seed);
    for (const Cell& mc : cells_of(fresh.bitmap)) covered.at(mc) = 1;
    combined.masks.push_back(std::move(fresh));
  }
  combined.renumber();
  return nms(filter_masks(combined, obs.depth, cfg, scene.layer_thickness),
             cfg.nms_iou);
}

// Pinch-lift-shake-release repair of flagged masks: shake at a seeded pinch
// inside the flagged union, track the unflagged masks across the motion, and
// regenerate the rest from the image center on the settled scene.
inline std::pair<PileScene, MaskSet> fine_tune(const PileScene& scene,
                                               const MaskSet& masks,
                                               const std::vector<int>& flagged,
                                               const SegmenterConfig& cfg,
                                               std::uint64_t seed,
                                               const OracleConfig& oracle = {},
                                               int frames = 4) {
  if (flagged.empty())
    throw DomainError("fine_tune: flagged mask set must not be empty");

  Bitmap flagged_union(scene.grid_width, scene.grid_height, 0);
  MaskSet unflagged;
  for (const auto& m : masks.masks) {
    if (std::find(flagged.begin(), flagged.end(), m.marker_id) !=
        flagged.end()) {
      for (const Cell& c : cells_of(m.bitmap)) flagged_union.at(c) = 1;
    } else {
      unflagged.masks.push_back(m);
    }
  }
  const std::vector<Cell> pinch_pool = cells_of(flagged_union);
  if (pinch_pool.empty())
    throw DomainError("fine_tune: flagged markers not present in mask set");

  Rng pinch_rng(derive_seed(seed, 0x706e6368u /*'pnch'*/));
  const Cell pinch =
      pinch_pool[pinch_rng.uniform_int(0, static_cast<int>(pinch_pool.size()) - 1)];

  const std::vector<PileScene> motion = shake_perturb(
      scene, pinch, frames, derive_seed(seed, 0x7368616bu /*'shak'*/), oracle);
  const PileScene& settled = motion.back();

  MaskSet tracked = track_masks(motion, unflagged);
  const Observation obs = render_observation(settled);
  MaskSet final_set = regenerate_from_center(
      obs, settled, tracked, cfg, derive_seed(seed, 0x7265676eu /*'regn'*/));
  return {settled, std::move(final_set)};
}

}  // namespace pilesim
