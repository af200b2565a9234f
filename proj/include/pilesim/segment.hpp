#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include "pilesim/mask.hpp"
#include "pilesim/pile_ops.hpp"
#include "pilesim/rng.hpp"
#include "pilesim/scene.hpp"

namespace pilesim {

// Corruption model for the oracle segmenter. Merging of color-similar
// touching regions and random fragmentation stand in for the failure modes
// of a real instance segmenter on garment piles.
struct SegmenterConfig {
  double p_merge = 0.8;
  int merge_color_threshold = 30;  // max L-inf distance for "similar color"
  int merge_overlap_threshold = 3;  // min shared-boundary cell pairs
  double p_frag = 0.15;
  int frag_pieces = 2;  // 2..4
  int min_area = 8;     // cells; smaller masks are "overly fragmented"
  double planar_eps = 0.002;  // meters; depth std-dev below this is "planar"
  double nms_iou = 0.5;

  void validate() const {
    if (p_merge < 0 || p_merge > 1 || p_frag < 0 || p_frag > 1)
      throw ConfigError("segmenter: probabilities must be in [0,1]");
    if (frag_pieces < 2 || frag_pieces > 4)
      throw ConfigError("segmenter: frag_pieces must be in 2..4");
    if (merge_color_threshold <= 0 || merge_overlap_threshold <= 0 ||
        min_area <= 0 || planar_eps <= 0)
      throw ConfigError("segmenter: thresholds must be positive");
    if (nms_iou < 0 || nms_iou > 1)
      throw ConfigError("segmenter: nms_iou must be in [0,1]");
  }
};

namespace detail {

// number of 4-adjacent cell pairs with one cell in each region; the regions
// are disjoint, so scanning a's cells counts every pair exactly once
inline int shared_boundary(const Bitmap& a, const Bitmap& b) {
  int n = 0;
  for (int y = 0; y < a.height(); ++y)
    for (int x = 0; x < a.width(); ++x) {
      if (!a.at(x, y)) continue;
      for (int k = 0; k < 4; ++k) {
        const Cell nb{x + kNeighbor4X[k], y + kNeighbor4Y[k]};
        if (b.in_bounds(nb) && b.at(nb)) ++n;
      }
    }
  return n;
}

// seeded split of a connected region into up to `pieces` connected parts
// (multi-source BFS from seeded picks)
inline std::vector<std::vector<Cell>> split_region(
    const std::vector<Cell>& cells, int pieces, int width, int height,
    Rng& rng) {
  const int n = static_cast<int>(cells.size());
  pieces = std::min(pieces, n);
  if (pieces <= 1) return {cells};

  Grid<int> owner(width, height, -1);
  for (const Cell& c : cells) owner.at(c) = 0;  // 0 = unassigned member

  // distinct seed cells
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  for (int i = n - 1; i > 0; --i)
    std::swap(order[i], order[rng.uniform_int(0, i)]);

  std::vector<std::vector<Cell>> frontiers(pieces);
  for (int p = 0; p < pieces; ++p) {
    const Cell c = cells[order[p]];
    owner.at(c) = p + 1;
    frontiers[p].push_back(c);
  }
  // round-robin growth keeps parts connected and roughly balanced
  bool grew = true;
  while (grew) {
    grew = false;
    for (int p = 0; p < pieces; ++p) {
      std::vector<Cell> next;
      for (const Cell& c : frontiers[p]) {
        for (int k = 0; k < 4; ++k) {
          const Cell nb{c.x + kNeighbor4X[k], c.y + kNeighbor4Y[k]};
          if (!owner.in_bounds(nb) || owner.at(nb) != 0) continue;
          owner.at(nb) = p + 1;
          next.push_back(nb);
          grew = true;
        }
      }
      frontiers[p] = std::move(next);
    }
  }
  std::vector<std::vector<Cell>> parts(pieces);
  for (const Cell& c : cells) parts[owner.at(c) - 1].push_back(c);
  parts.erase(std::remove_if(parts.begin(), parts.end(),
                             [](const auto& p) { return p.empty(); }),
              parts.end());
  return parts;
}

struct RegionInfo {
  int garment_id = 0;
  Rgb color;
  Bitmap bitmap;
};

inline std::vector<RegionInfo> nonempty_regions(const PileScene& scene) {
  std::vector<RegionInfo> out;
  for (const auto& [id, cells] : visible_regions(scene)) {
    if (cells.empty()) continue;
    RegionInfo r;
    r.garment_id = id;
    r.color = scene.find(id)->color;
    r.bitmap = bitmap_from_cells(scene.grid_width, scene.grid_height, cells);
    out.push_back(std::move(r));
  }
  return out;
}

inline bool merge_condition(const RegionInfo& a, const RegionInfo& b,
                            const SegmenterConfig& cfg) {
  if (color_distance(a.color, b.color) > cfg.merge_color_threshold)
    return false;
  return shared_boundary(a.bitmap, b.bitmap) >= cfg.merge_overlap_threshold;
}

}  // namespace detail

// Oracle segmentation with corruption. Starts from ground-truth visible
// regions; color-similar touching regions merge with probability p_merge,
// remaining regions fragment with probability p_frag. Raw masks, before
// filtering and NMS.
inline MaskSet segment(const Observation& obs, const PileScene& scene,
                       const SegmenterConfig& cfg, std::uint64_t seed) {
  (void)obs;  // the oracle reads the scene; obs fixes the grid dims
  cfg.validate();
  std::vector<detail::RegionInfo> regions = detail::nonempty_regions(scene);
  const int n = static_cast<int>(regions.size());

  // union-find over merge-eligible pairs, visited in canonical id order
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  const auto find = [&](int i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  Rng merge_rng(derive_seed(seed, 0x6d657267u /*'merg'*/));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (detail::merge_condition(regions[i], regions[j], cfg) &&
          merge_rng.bernoulli(cfg.p_merge))
        parent[find(j)] = find(i);

  std::vector<std::vector<Cell>> groups;
  std::vector<int> group_of(n, -1);
  for (int i = 0; i < n; ++i) {
    const int root = find(i);
    if (group_of[root] < 0) {
      group_of[root] = static_cast<int>(groups.size());
      groups.emplace_back();
    }
    auto cells = cells_of(regions[i].bitmap);
    auto& g = groups[group_of[root]];
    g.insert(g.end(), cells.begin(), cells.end());
  }
  for (auto& g : groups) std::sort(g.begin(), g.end());

  Rng frag_rng(derive_seed(seed, 0x66726167u /*'frag'*/));
  MaskSet out;
  for (const auto& group : groups) {
    std::vector<std::vector<Cell>> parts;
    if (frag_rng.bernoulli(cfg.p_frag))
      parts = detail::split_region(group, cfg.frag_pieces, scene.grid_width,
                                   scene.grid_height, frag_rng);
    else
      parts = {group};
    for (auto& part : parts)
      out.masks.push_back(make_mask(
          bitmap_from_cells(scene.grid_width, scene.grid_height, part), 0));
  }
  out.renumber();
  return out;
}

// Single point prompt. Returns the visible region of the topmost garment at
// `pixel`; merge corruption still applies when the merge condition holds at
// prompt time.
inline Mask point_prompt_segment(const Observation& obs, const PileScene& scene,
                                 const Cell& pixel, const SegmenterConfig& cfg,
                                 std::uint64_t seed) {
  (void)obs;
  if (!scene.in_grid(pixel))
    throw DomainError("point_prompt_segment: pixel outside grid");
  const int id = scene.topmost_at(pixel);
  if (id < 0) throw DomainError("point_prompt_segment: no garment at pixel");

  std::vector<detail::RegionInfo> regions = detail::nonempty_regions(scene);
  const int n = static_cast<int>(regions.size());
  int start = -1;
  for (int i = 0; i < n; ++i)
    if (regions[i].garment_id == id) start = i;

  // transitive merge closure seeded per ordered pair, as in segment()
  Rng merge_rng(derive_seed(seed, 0x70726f6du /*'prom'*/));
  std::vector<std::vector<bool>> merged(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (detail::merge_condition(regions[i], regions[j], cfg) &&
          merge_rng.bernoulli(cfg.p_merge))
        merged[i][j] = merged[j][i] = true;

  std::vector<bool> in_group(n, false);
  std::vector<int> todo{start};
  in_group[start] = true;
  while (!todo.empty()) {
    const int i = todo.back();
    todo.pop_back();
    for (int j = 0; j < n; ++j)
      if (merged[i][j] && !in_group[j]) {
        in_group[j] = true;
        todo.push_back(j);
      }
  }
  Bitmap bitmap(scene.grid_width, scene.grid_height, 0);
  for (int i = 0; i < n; ++i) {
    if (!in_group[i]) continue;
    for (const Cell& c : cells_of(regions[i].bitmap)) bitmap.at(c) = 1;
  }
  return make_mask(std::move(bitmap), 1);
}

// Drops overly fragmented masks (area below min_area) and background-like
// masks (depth nearly constant at background level). Flat garments resting
// on the floor read exactly one layer thick and are kept.
inline MaskSet filter_masks(const MaskSet& masks, const Grid<double>& depth,
                            const SegmenterConfig& cfg,
                            double layer_thickness) {
  MaskSet out;
  for (const auto& m : masks.masks) {
    const long area = m.area();
    if (area < cfg.min_area) continue;
    double sum = 0.0, sum2 = 0.0;
    for (const Cell& c : cells_of(m.bitmap)) {
      const double d = depth.at(c);
      sum += d;
      sum2 += d * d;
    }
    const double mean = sum / area;
    const double var = std::max(0.0, sum2 / area - mean * mean);
    if (std::sqrt(var) < cfg.planar_eps && mean < layer_thickness) continue;
    out.masks.push_back(m);
  }
  out.renumber();
  return out;
}

// Greedy NMS by descending area (ties: lower marker id first). A mask is
// suppressed iff IoU with an already kept mask strictly exceeds the
// threshold. Survivors keep their relative order and are renumbered.
inline MaskSet nms(const MaskSet& masks, double iou_threshold) {
  const int n = masks.count();
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<long> area(n);
  for (int i = 0; i < n; ++i) area[i] = masks.masks[i].area();
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (area[a] != area[b]) return area[a] > area[b];
    return masks.masks[a].marker_id < masks.masks[b].marker_id;
  });

  std::vector<bool> kept(n, false);
  std::vector<int> kept_order;
  for (const int i : order) {
    bool suppressed = false;
    for (const int k : kept_order)
      if (mask_iou(masks.masks[i], masks.masks[k]) > iou_threshold) {
        suppressed = true;
        break;
      }
    if (!suppressed) {
      kept[i] = true;
      kept_order.push_back(i);
    }
  }
  MaskSet out;
  for (int i = 0; i < n; ++i)
    if (kept[i]) out.masks.push_back(masks.masks[i]);
  out.renumber();
  return out;
}

}  // namespace pilesim
