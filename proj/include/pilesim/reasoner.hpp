#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "pilesim/annotate.hpp"
#include "pilesim/pile_ops.hpp"
#include "pilesim/summary.hpp"

namespace pilesim {

struct TargetDescriptor {
  Rgb color;
  std::optional<Category> category;
};

struct TaskSpec {
  enum class Kind { A, B };
  Kind kind = Kind::A;
  std::optional<TargetDescriptor> target;

  void validate() const {
    if (kind == Kind::B && !target.has_value())
      throw ConfigError("TaskSpec: task B requires a target descriptor");
  }
};

struct CoopAnswer {
  int x_error = 0;  // two or more garments lifted: terminate the attempt
  int x_dual = 0;   // master-slave cooperation required
};

// Everything a decision function may look at. Rule-based reasoning uses the
// observable part only; the privileged variant requires the ground-truth
// pointers and is exact.
struct AdjustQuery {
  std::vector<MaskSummary> summaries;
  const PileScene* scene = nullptr;  // privileged only
  const MaskSet* masks = nullptr;    // privileged only
};

struct SelectQuery {
  std::vector<MaskSummary> summaries;
  TaskSpec task;
  const PileScene* scene = nullptr;
  const MaskSet* masks = nullptr;
};

struct CoopQuery {
  MaskSummary lifted_region;     // silhouette of everything hanging
  long selected_area_prelift = 0;
  double cell_size = 0.02;
  // privileged only
  std::vector<int> lifted_ids;
  double sag = 0.0;
  // optional images for the remote protocol
  const AnnotatedImage* pre_border = nullptr;
  const AnnotatedImage* pre_fill = nullptr;
  const Grid<Rgb>* post_lift_image = nullptr;
};

class Reasoner {
 public:
  virtual ~Reasoner() = default;
  virtual std::vector<int> decide_adjust(const AdjustQuery& q) = 0;
  virtual int select_target(const SelectQuery& q) = 0;
  virtual CoopAnswer decide_cooperation(const CoopQuery& q) = 0;
};

struct RuleReasonerConfig {
  int merge_color_threshold = 30;
  double ragged_threshold = 60.0;
  double second_share_min = 0.25;      // adjust: second color must hold this
  double coop_second_share = 0.15;     // cooperation: visible foreign color
  double l_arm = 0.35;
};

// Deterministic stand-in for the vision-language decisions, computed from
// mask summaries alone.
class RuleReasoner : public Reasoner {
 public:
  explicit RuleReasoner(RuleReasonerConfig cfg = {}) : cfg_(cfg) {}

  std::vector<int> decide_adjust(const AdjustQuery& q) override {
    std::vector<int> flagged;
    for (const auto& s : q.summaries) {
      bool flag = s.raggedness > cfg_.ragged_threshold;
      if (!flag && s.dominant_colors.size() >= 2) {
        const auto& c0 = s.dominant_colors[0];
        const auto& c1 = s.dominant_colors[1];
        flag = c1.share >= cfg_.second_share_min &&
               color_distance(c0.rgb, c1.rgb) > cfg_.merge_color_threshold;
      }
      if (flag) flagged.push_back(s.marker_id);
    }
    return flagged;
  }

  int select_target(const SelectQuery& q) override {
    if (q.summaries.empty())
      throw DomainError("select_target: no masks to choose from");
    if (q.task.kind == TaskSpec::Kind::A) return topmost(q.summaries);

    // task B: match by nearest palette color
    const int want = nearest_palette_index(q.task.target->color);
    const MaskSummary* match = nullptr;
    for (const auto& s : q.summaries)
      if (!s.dominant_colors.empty() &&
          s.dominant_colors[0].palette_index == want) {
        match = &s;
        break;
      }
    if (match == nullptr) return topmost(q.summaries);  // dig from the top

    const MaskSummary* obstructor = nullptr;
    for (const auto& s : q.summaries) {
      if (s.marker_id == match->marker_id) continue;
      if (!s.bbox.intersects(match->bbox)) continue;
      if (s.mean_depth <= match->mean_depth) continue;
      if (obstructor == nullptr || s.mean_depth > obstructor->mean_depth ||
          (s.mean_depth == obstructor->mean_depth &&
           s.marker_id < obstructor->marker_id))
        obstructor = &s;
    }
    return obstructor ? obstructor->marker_id : match->marker_id;
  }

  CoopAnswer decide_cooperation(const CoopQuery& q) override {
    CoopAnswer a;
    const auto& lifted = q.lifted_region;
    if (lifted.dominant_colors.size() >= 2) {
      const auto& c0 = lifted.dominant_colors[0];
      const auto& c1 = lifted.dominant_colors[1];
      if (c1.share >= cfg_.coop_second_share &&
          color_distance(c0.rgb, c1.rgb) > cfg_.merge_color_threshold)
        a.x_error = 1;
    }
    if (q.selected_area_prelift > 0 &&
        lifted.area > 2 * q.selected_area_prelift)
      a.x_error = 1;
    if (lifted.area > 0 &&
        bbox_diagonal_cells(lifted.bbox) * q.cell_size > cfg_.l_arm)
      a.x_dual = 1;
    return a;
  }

 private:
  static int topmost(const std::vector<MaskSummary>& summaries) {
    const MaskSummary* best = &summaries.front();
    for (const auto& s : summaries)
      if (s.mean_depth > best->mean_depth ||
          (s.mean_depth == best->mean_depth && s.marker_id < best->marker_id))
        best = &s;
    return best->marker_id;
  }

  RuleReasonerConfig cfg_;
};

// Test oracle with ground-truth access; exact on uncorrupted inputs.
class PrivilegedReasoner : public Reasoner {
 public:
  explicit PrivilegedReasoner(double l_arm = 0.35, double min_coverage = 0.6)
      : l_arm_(l_arm), min_coverage_(min_coverage) {}

  std::vector<int> decide_adjust(const AdjustQuery& q) override {
    require(q.scene, q.masks);
    const auto regions = region_bitmaps(*q.scene);
    std::vector<int> flagged;
    for (const auto& m : q.masks->masks) {
      int spanned = 0;
      long own_overlap = 0;
      long own_region_area = 0;
      double best_iou = -1.0;
      for (const auto& [id, bm] : regions) {
        long inter = 0;
        for (std::size_t i = 0; i < bm.size(); ++i)
          if (bm.data()[i] && m.bitmap.data()[i]) ++inter;
        if (inter > 0) ++spanned;
        const double iou = mask_iou(m.bitmap, bm);
        if (iou > best_iou) {
          best_iou = iou;
          own_overlap = inter;
          own_region_area = bitmap_area(bm);
        }
      }
      const bool low_cover =
          own_region_area > 0 &&
          static_cast<double>(own_overlap) / own_region_area < min_coverage_;
      if (spanned >= 2 || low_cover) flagged.push_back(m.marker_id);
    }
    return flagged;
  }

  int select_target(const SelectQuery& q) override {
    require(q.scene, q.masks);
    if (q.summaries.empty())
      throw DomainError("select_target: no masks to choose from");
    const PileScene& scene = *q.scene;

    if (q.task.kind == TaskSpec::Kind::A) {
      for (int i = static_cast<int>(scene.stack.size()) - 1; i >= 0; --i) {
        const int id = scene.stack[i].id;
        const int marker = best_mask_for(scene, id, *q.masks);
        if (marker > 0) return marker;
      }
      return q.summaries.front().marker_id;
    }

    // task B on ground truth: locate the target garment, else its topmost
    // obstructor; fall back to task A digging when neither has a mask
    const int t_id = find_target(scene, *q.task.target);
    if (t_id >= 0) {
      const GarmentSpec& target = *scene.find(t_id);
      const int t_pos = scene.stack_position(t_id);
      int obstructor = -1;
      for (int i = t_pos + 1; i < static_cast<int>(scene.stack.size()); ++i) {
        const auto& g = scene.stack[i];
        for (const Cell& c : target.footprint)
          if (g.covers(c)) {
            obstructor = g.id;
            break;
          }
      }
      if (obstructor < 0) {
        const int marker = best_mask_for(scene, t_id, *q.masks);
        if (marker > 0) return marker;
      } else {
        // the obstructor itself may be buried: pick the garment actually on
        // top over the target's footprint
        int top_id = -1, top_pos = -1;
        for (const Cell& c : target.footprint) {
          const int id = scene.topmost_at(c);
          if (id >= 0 && id != t_id && scene.stack_position(id) > top_pos) {
            top_pos = scene.stack_position(id);
            top_id = id;
          }
        }
        if (top_id < 0) top_id = obstructor;
        const int marker = best_mask_for(scene, top_id, *q.masks);
        if (marker > 0) return marker;
      }
    }
    SelectQuery task_a = q;
    task_a.task.kind = TaskSpec::Kind::A;
    task_a.task.target.reset();
    return select_target(task_a);
  }

  CoopAnswer decide_cooperation(const CoopQuery& q) override {
    CoopAnswer a;
    a.x_error = q.lifted_ids.size() >= 2 ? 1 : 0;
    a.x_dual = q.sag > l_arm_ ? 1 : 0;
    return a;
  }

  // true ground-truth target lookup, shared with episode scoring
  static int find_target(const PileScene& scene, const TargetDescriptor& t) {
    const int want = nearest_palette_index(t.color);
    int found = -1;
    for (const auto& g : scene.stack) {  // later = higher = preferred
      if (nearest_palette_index(g.color) != want) continue;
      if (t.category.has_value() && g.category != *t.category) continue;
      found = g.id;
    }
    return found;
  }

 private:
  static void require(const PileScene* scene, const MaskSet* masks) {
    if (scene == nullptr || masks == nullptr)
      throw DomainError("privileged reasoner needs ground-truth context");
  }

  static std::vector<std::pair<int, Bitmap>> region_bitmaps(
      const PileScene& scene) {
    std::vector<std::pair<int, Bitmap>> out;
    for (const auto& [id, cells] : visible_regions(scene)) {
      if (cells.empty()) continue;
      out.emplace_back(
          id, bitmap_from_cells(scene.grid_width, scene.grid_height, cells));
    }
    return out;
  }

  // marker of the mask with max IoU against the garment's visible region
  static int best_mask_for(const PileScene& scene, int garment_id,
                           const MaskSet& masks) {
    const auto regions = visible_regions(scene);
    const auto it = std::find_if(regions.begin(), regions.end(),
                                 [&](const auto& p) { return p.first == garment_id; });
    if (it == regions.end() || it->second.empty()) return -1;
    const Bitmap region =
        bitmap_from_cells(scene.grid_width, scene.grid_height, it->second);
    int best = -1;
    double best_iou = 0.0;
    for (const auto& m : masks.masks) {
      const double iou = mask_iou(m.bitmap, region);
      if (iou > best_iou) {
        best_iou = iou;
        best = m.marker_id;
      }
    }
    return best;
  }

  double l_arm_;
  double min_coverage_;
};

}  // namespace pilesim
