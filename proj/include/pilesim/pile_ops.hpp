#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "pilesim/rng.hpp"
#include "pilesim/scene.hpp"

namespace pilesim {

// ---------------------------------------------------------------------------
// Rendering / region queries
// ---------------------------------------------------------------------------

// garment id per cell (-1 = uncovered), resolved by stack order
inline Grid<int> topmost_grid(const PileScene& scene) {
  Grid<int> g(scene.grid_width, scene.grid_height, -1);
  for (const auto& garment : scene.stack)
    for (const Cell& c : garment.footprint) g.at(c) = garment.id;
  return g;
}

// Visible region per garment, in stack order (bottom to top). Fully covered
// garments get an empty region. Regions partition the covered-cell set.
inline std::vector<std::pair<int, std::vector<Cell>>> visible_regions(
    const PileScene& scene) {
  const Grid<int> top = topmost_grid(scene);
  std::map<int, std::vector<Cell>> by_id;
  for (const auto& garment : scene.stack) by_id[garment.id] = {};
  for (int y = 0; y < top.height(); ++y)
    for (int x = 0; x < top.width(); ++x) {
      const int id = top.at(x, y);
      if (id >= 0) by_id[id].push_back(Cell{x, y});
    }
  std::vector<std::pair<int, std::vector<Cell>>> out;
  out.reserve(scene.stack.size());
  for (const auto& garment : scene.stack)
    out.emplace_back(garment.id, std::move(by_id[garment.id]));
  return out;
}

inline double floor_height(const PileScene& scene, const Cell& c) {
  if (scene.boundary.kind == BoundaryKind::Closed &&
      scene.boundary.container.contains(c))
    return scene.boundary.floor_offset;
  return 0.0;
}

inline Observation render_observation(const PileScene& scene) {
  Observation obs;
  obs.cell_size = scene.cell_size;
  obs.layer_thickness = scene.layer_thickness;
  obs.color = Grid<Rgb>(scene.grid_width, scene.grid_height, obs.background);
  obs.depth = Grid<double>(scene.grid_width, scene.grid_height, 0.0);

  Grid<int> covers(scene.grid_width, scene.grid_height, 0);
  for (const auto& garment : scene.stack)
    for (const Cell& c : garment.footprint) {
      covers.at(c) += 1;
      obs.color.at(c) = garment.color;  // later garments overwrite: topmost wins
    }
  for (int y = 0; y < scene.grid_height; ++y)
    for (int x = 0; x < scene.grid_width; ++x) {
      const Cell c{x, y};
      const int n = covers.at(c);
      double d = scene.layer_thickness * n;
      if (n > 0 || floor_height(scene, c) > 0.0) d += floor_height(scene, c);
      obs.depth.at(c) = n > 0 ? d : floor_height(scene, c);
    }
  return obs;
}

// ---------------------------------------------------------------------------
// Grasp oracle
// ---------------------------------------------------------------------------

// Proxy for how far the garment hangs below a gripper at `point`:
// cell_size * max distance from `point` to any footprint cell.
inline double sag_length(const PileScene& scene, int garment_id,
                         const Cell& point) {
  const GarmentSpec* g = scene.find(garment_id);
  if (g == nullptr) throw DomainError("sag_length: unknown garment id");
  if (!g->covers(point)) throw DomainError("sag_length: point outside footprint");
  double max_d = 0.0;
  for (const Cell& c : g->footprint)
    max_d = std::max(max_d, cell_distance(c, point));
  return scene.cell_size * max_d;
}

namespace detail {

// companions pulled along when garment g is lifted at `point` (rule 3)
inline std::vector<int> co_lifted_ids(const PileScene& scene, int g_id,
                                      const Cell& point,
                                      const OracleConfig& cfg) {
  std::set<int> lifted{g_id};
  const GarmentSpec& g = *scene.find(g_id);
  const int g_pos = scene.stack_position(g_id);
  for (int i = g_pos + 1; i < static_cast<int>(scene.stack.size()); ++i) {
    const GarmentSpec& h = scene.stack[i];
    for (const Cell& c : h.footprint) {
      if (cell_distance(c, point) <= cfg.r_drag && g.covers(c)) {
        lifted.insert(h.id);
        break;
      }
    }
  }
  for (const auto& h : scene.stack)
    if (h.id != g_id && scene.entanglement_weight(g_id, h.id) >= cfg.theta_ent)
      lifted.insert(h.id);
  return std::vector<int>(lifted.begin(), lifted.end());
}

}  // namespace detail

// Deterministic single-arm grasp outcome; rules evaluated in order:
// empty, wall collision, co-lift, sag, success.
inline GraspOutcome simulate_single_grasp(const PileScene& scene,
                                          const Cell& point,
                                          const OracleConfig& cfg = {}) {
  if (!scene.in_grid(point))
    throw DomainError("simulate_single_grasp: point outside grid");
  GraspOutcome out;
  out.steps = 1;

  const int g_id = scene.topmost_at(point);
  if (g_id < 0) {
    out.result = GraspResult::EmptyGrasp;
    return out;
  }
  if (scene.boundary.violates_wall(point)) {
    out.result = GraspResult::BoundaryCollision;
    return out;
  }
  out.lifted_ids = detail::co_lifted_ids(scene, g_id, point, cfg);
  out.sag = sag_length(scene, g_id, point);
  if (out.lifted_ids.size() >= 2) {
    out.result = GraspResult::MultiLift;
    return out;
  }
  if (out.sag > cfg.l_arm) {
    out.result = GraspResult::Drop;
    return out;
  }
  out.result = GraspResult::Success;
  return out;
}

// Two-arm horizontal delivery of one garment held at p1 and p2.
inline GraspOutcome simulate_dual_delivery(const PileScene& scene,
                                           int garment_id, const Cell& p1,
                                           const Cell& p2,
                                           const OracleConfig& cfg = {}) {
  const GarmentSpec* g = scene.find(garment_id);
  if (g == nullptr) throw DomainError("simulate_dual_delivery: unknown id");
  if (!g->covers(p1) || !g->covers(p2))
    throw DomainError("simulate_dual_delivery: grasp point outside footprint");
  if (p1 == p2) throw DomainError("simulate_dual_delivery: p1 == p2");

  GraspOutcome out;
  out.steps = 2;  // second grasp + delivery
  if (scene.boundary.violates_wall(p1) || scene.boundary.violates_wall(p2)) {
    out.result = GraspResult::BoundaryCollision;
    return out;
  }
  double max_min = 0.0;
  for (const Cell& c : g->footprint)
    max_min = std::max(
        max_min, std::min(cell_distance(c, p1), cell_distance(c, p2)));
  out.lifted_ids = {garment_id};
  out.sag = scene.cell_size * max_min;
  out.result =
      out.sag <= cfg.l_arm ? GraspResult::Success : GraspResult::Drop;
  return out;
}

// ---------------------------------------------------------------------------
// Scene evolution
// ---------------------------------------------------------------------------

// Entanglement rule: for every overlapping pair,
// w = clamp(overlap / min(area) * interleave, 0, 1) where interleave is 1
// when a third garment's footprint cuts through the overlap between the two
// in stack order, else 0.5.
inline std::vector<EntanglementEdge> compute_entanglement(
    const std::vector<GarmentSpec>& stack) {
  std::vector<EntanglementEdge> edges;
  const int n = static_cast<int>(stack.size());
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const GarmentSpec& a = stack[i];
      const GarmentSpec& b = stack[j];
      std::vector<Cell> overlap;
      std::set_intersection(a.footprint.begin(), a.footprint.end(),
                            b.footprint.begin(), b.footprint.end(),
                            std::back_inserter(overlap));
      if (overlap.empty()) continue;
      double interleave = 0.5;
      for (int k = i + 1; k < j && interleave < 1.0; ++k) {
        for (const Cell& c : overlap)
          if (stack[k].covers(c)) {
            interleave = 1.0;
            break;
          }
      }
      double w = static_cast<double>(overlap.size()) /
                 std::min(a.area(), b.area()) * interleave;
      w = std::clamp(w, 0.0, 1.0);
      EntanglementEdge e;
      e.a = std::min(a.id, b.id);
      e.b = std::max(a.id, b.id);
      e.weight = w;
      edges.push_back(e);
    }
  }
  std::sort(edges.begin(), edges.end(), [](const auto& x, const auto& y) {
    return x.a != y.a ? x.a < y.a : x.b < y.b;
  });
  return edges;
}

namespace detail {

inline std::vector<Cell> translate_clamped(const std::vector<Cell>& cells,
                                           int dx, int dy,
                                           const Rect& bounds) {
  Rect bb = bounding_rect(cells);
  // pull the offset back so the footprint stays inside bounds
  dx = std::clamp(dx, bounds.x0 - bb.x0, bounds.x1 - bb.x1);
  dy = std::clamp(dy, bounds.y0 - bb.y0, bounds.y1 - bb.y1);
  std::vector<Cell> out;
  out.reserve(cells.size());
  for (const Cell& c : cells) out.push_back(Cell{c.x + dx, c.y + dy});
  return out;
}

}  // namespace detail

// Applies a grasp outcome to the pile. Success removes the lifted garment;
// MultiLift/Drop dump the lifted garments back on top at a seeded offset;
// EmptyGrasp/BoundaryCollision leave the scene untouched.
inline PileScene apply_retrieval(const PileScene& scene,
                                 const GraspOutcome& outcome,
                                 std::uint64_t seed,
                                 const OracleConfig& cfg = {}) {
  PileScene next = scene;
  switch (outcome.result) {
    case GraspResult::EmptyGrasp:
    case GraspResult::BoundaryCollision:
      return next;
    case GraspResult::Success: {
      const int id = outcome.lifted_ids.at(0);
      next.stack.erase(
          std::remove_if(next.stack.begin(), next.stack.end(),
                         [&](const GarmentSpec& g) { return g.id == id; }),
          next.stack.end());
      next.entanglement.erase(
          std::remove_if(next.entanglement.begin(), next.entanglement.end(),
                         [&](const EntanglementEdge& e) {
                           return e.a == id || e.b == id;
                         }),
          next.entanglement.end());
      return next;
    }
    case GraspResult::MultiLift:
    case GraspResult::Drop: {
      Rng rng(derive_seed(seed, 0x6472u /*'dr'*/));
      const Rect bounds = scene.placement_bounds();
      std::vector<GarmentSpec> dropped;
      std::vector<GarmentSpec> rest;
      for (const auto& g : next.stack) {
        const bool lifted =
            std::binary_search(outcome.lifted_ids.begin(),
                               outcome.lifted_ids.end(), g.id);
        (lifted ? dropped : rest).push_back(g);
      }
      for (auto& g : dropped) {
        const int dx = rng.uniform_int(-cfg.dropback_offset, cfg.dropback_offset);
        const int dy = rng.uniform_int(-cfg.dropback_offset, cfg.dropback_offset);
        g.footprint = detail::translate_clamped(g.footprint, dx, dy, bounds);
      }
      next.stack = std::move(rest);
      next.stack.insert(next.stack.end(), dropped.begin(), dropped.end());
      next.entanglement = compute_entanglement(next.stack);
      return next;
    }
  }
  return next;
}

// Pinch-lift-shake-release. The garment topmost at `pinch` (with its co-lift
// companions) is moved to the top of the stack and translated so that its
// overlap with every unmoved garment never exceeds the pre-shake overlap.
// Returns `frames` scenes; frame 0 is the input scene.
inline std::vector<PileScene> shake_perturb(const PileScene& scene,
                                            const Cell& pinch, int frames,
                                            std::uint64_t seed,
                                            const OracleConfig& cfg = {}) {
  if (frames < 2) throw DomainError("shake_perturb: frames < 2");
  const int g_id = scene.topmost_at(pinch);
  if (g_id < 0) throw DomainError("shake_perturb: pinch on uncovered cell");

  const std::vector<int> moved_ids =
      detail::co_lifted_ids(scene, g_id, pinch, cfg);
  const auto is_moved = [&](int id) {
    return std::binary_search(moved_ids.begin(), moved_ids.end(), id);
  };

  std::vector<const GarmentSpec*> moved;
  std::vector<const GarmentSpec*> unmoved;
  for (const auto& g : scene.stack)
    (is_moved(g.id) ? moved : unmoved).push_back(&g);

  const auto overlap_area = [](const std::vector<Cell>& a,
                               const std::vector<Cell>& b) {
    std::size_t n = 0;
    for (const Cell& c : a)
      if (std::binary_search(b.begin(), b.end(), c)) ++n;
    return static_cast<long>(n);
  };

  // pre-shake overlaps moved x unmoved
  std::vector<std::vector<long>> before(moved.size(),
                                        std::vector<long>(unmoved.size(), 0));
  for (std::size_t i = 0; i < moved.size(); ++i)
    for (std::size_t j = 0; j < unmoved.size(); ++j)
      before[i][j] = overlap_area(moved[i]->footprint, unmoved[j]->footprint);

  const Rect bounds = scene.placement_bounds();

  // candidate translations: applied as-is (no clamping) so every moved
  // garment keeps its relative placement; out-of-bounds candidates rejected
  const auto fits = [&](const GarmentSpec& g, int dx, int dy) {
    const Rect bb = bounding_rect(g.footprint);
    return bb.x0 + dx >= bounds.x0 && bb.x1 + dx <= bounds.x1 &&
           bb.y0 + dy >= bounds.y0 && bb.y1 + dy <= bounds.y1;
  };

  long best_score = -1;
  long best_r2 = 0;
  int best_dx = 0, best_dy = 0;
  std::vector<Cell> shifted;
  for (int dy = -cfg.shake_radius; dy <= cfg.shake_radius; ++dy) {
    for (int dx = -cfg.shake_radius; dx <= cfg.shake_radius; ++dx) {
      bool ok = true;
      for (const auto* m : moved)
        if (!fits(*m, dx, dy)) {
          ok = false;
          break;
        }
      if (!ok) continue;
      long score = 0;
      for (std::size_t i = 0; i < moved.size() && ok; ++i) {
        shifted.clear();
        for (const Cell& c : moved[i]->footprint)
          shifted.push_back(Cell{c.x + dx, c.y + dy});
        for (std::size_t j = 0; j < unmoved.size(); ++j) {
          const long after = overlap_area(shifted, unmoved[j]->footprint);
          if (after > before[i][j]) {
            ok = false;  // shaking separates, never further entangles
            break;
          }
          score += after;
        }
      }
      if (!ok) continue;
      const long r2 = static_cast<long>(dx) * dx + static_cast<long>(dy) * dy;
      if (best_score < 0 || score < best_score ||
          (score == best_score && r2 < best_r2)) {
        best_score = score;
        best_r2 = r2;
        best_dx = dx;
        best_dy = dy;
      }
    }
  }
  // (0,0) is always feasible, so a candidate was found

  Rng jitter(derive_seed(seed, 0x736bu /*'sk'*/));
  std::vector<PileScene> out;
  out.reserve(frames);
  out.push_back(scene);
  for (int f = 1; f < frames; ++f) {
    const bool last = (f == frames - 1);
    const double t = static_cast<double>(f) / (frames - 1);
    int dx = static_cast<int>(std::lround(t * best_dx));
    int dy = static_cast<int>(std::lround(t * best_dy));
    if (!last && (best_dx != 0 || best_dy != 0)) {
      dx += jitter.uniform_int(-1, 1);
      dy += jitter.uniform_int(-1, 1);
    }
    PileScene frame = scene;
    std::vector<GarmentSpec> rest, lifted;
    for (const auto& g : frame.stack)
      (is_moved(g.id) ? lifted : rest).push_back(g);
    for (auto& g : lifted)
      g.footprint = detail::translate_clamped(g.footprint, dx, dy, bounds);
    frame.stack = std::move(rest);
    frame.stack.insert(frame.stack.end(), lifted.begin(), lifted.end());
    frame.entanglement = compute_entanglement(frame.stack);
    out.push_back(std::move(frame));
  }
  return out;
}

}  // namespace pilesim
