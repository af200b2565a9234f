#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "pilesim/mask.hpp"
#include "pilesim/scene.hpp"

namespace pilesim {

struct ColorCluster {
  Rgb rgb;        // palette color of the cluster
  int palette_index = 0;
  double share = 0.0;  // fraction of mask pixels in the cluster
};

// Observable digest of one mask; what a vision-language judge would read off
// the annotated image.
struct MaskSummary {
  int marker_id = 0;
  long area = 0;
  std::vector<ColorCluster> dominant_colors;  // up to 3, by descending share
  double raggedness = 0.0;  // perimeter^2 / area
  double mean_depth = 0.0;  // meters
  Rect bbox;
  std::vector<int> overlap_ids;  // marker ids of masks with intersecting bbox
};

inline MaskSummary summarize_one(const Observation& obs, const Bitmap& bitmap,
                                 int marker_id) {
  MaskSummary s;
  s.marker_id = marker_id;
  const std::vector<Cell> cells = cells_of(bitmap);
  s.area = static_cast<long>(cells.size());
  if (cells.empty()) return s;
  s.bbox = bounding_rect(cells);

  std::array<long, 12> hist{};
  double depth_sum = 0.0;
  long perimeter = 0;
  for (const Cell& c : cells) {
    hist[nearest_palette_index(obs.color.at(c))] += 1;
    depth_sum += obs.depth.at(c);
    for (int k = 0; k < 4; ++k) {
      const Cell n{c.x + kNeighbor4X[k], c.y + kNeighbor4Y[k]};
      if (!bitmap.in_bounds(n) || !bitmap.at(n)) ++perimeter;
    }
  }
  s.mean_depth = depth_sum / s.area;
  s.raggedness = static_cast<double>(perimeter) * perimeter / s.area;

  std::array<int, 12> idx{};
  for (int i = 0; i < 12; ++i) idx[i] = i;
  std::stable_sort(idx.begin(), idx.end(),
                   [&](int a, int b) { return hist[a] > hist[b]; });
  for (int k = 0; k < 3; ++k) {
    if (hist[idx[k]] == 0) break;
    ColorCluster cl;
    cl.palette_index = idx[k];
    cl.rgb = palette()[idx[k]].rgb;
    cl.share = static_cast<double>(hist[idx[k]]) / s.area;
    s.dominant_colors.push_back(cl);
  }
  return s;
}

inline std::vector<MaskSummary> summarize_masks(const Observation& obs,
                                                const MaskSet& masks) {
  std::vector<MaskSummary> out;
  out.reserve(masks.masks.size());
  for (const auto& m : masks.masks)
    out.push_back(summarize_one(obs, m.bitmap, m.marker_id));
  for (std::size_t i = 0; i < out.size(); ++i)
    for (std::size_t j = 0; j < out.size(); ++j)
      if (i != j && out[i].area > 0 && out[j].area > 0 &&
          out[i].bbox.intersects(out[j].bbox))
        out[i].overlap_ids.push_back(out[j].marker_id);
  return out;
}

inline double bbox_diagonal_cells(const Rect& r) {
  const double dx = r.x1 - r.x0;
  const double dy = r.y1 - r.y0;
  return std::sqrt(dx * dx + dy * dy);
}

}  // namespace pilesim
