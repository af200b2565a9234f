#pragma once

#include <algorithm>
#include <vector>

#include "pilesim/grid.hpp"

namespace pilesim {

using Bitmap = Grid<std::uint8_t>;

inline Bitmap bitmap_from_cells(int width, int height,
                                const std::vector<Cell>& cells) {
  Bitmap b(width, height, 0);
  for (const Cell& c : cells) b.at(c) = 1;
  return b;
}

inline std::vector<Cell> cells_of(const Bitmap& b) {
  std::vector<Cell> out;
  for (int y = 0; y < b.height(); ++y)
    for (int x = 0; x < b.width(); ++x)
      if (b.at(x, y)) out.push_back(Cell{x, y});
  return out;
}

inline long bitmap_area(const Bitmap& b) {
  long n = 0;
  for (const auto v : b.data()) n += v ? 1 : 0;
  return n;
}

struct Mask {
  Bitmap bitmap;
  int marker_id = 0;
  Cell marker_pixel;

  long area() const { return bitmap_area(bitmap); }
};

// Masks with marker ids exactly 1..N in list order.
struct MaskSet {
  std::vector<Mask> masks;

  int count() const { return static_cast<int>(masks.size()); }
  const Mask* by_marker(int id) const {
    for (const auto& m : masks)
      if (m.marker_id == id) return &m;
    return nullptr;
  }
  void renumber() {
    for (int i = 0; i < static_cast<int>(masks.size()); ++i)
      masks[i].marker_id = i + 1;
  }
};

inline double mask_iou(const Bitmap& a, const Bitmap& b) {
  if (a.width() != b.width() || a.height() != b.height())
    throw DomainError("mask_iou: dimension mismatch");
  long inter = 0, uni = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const bool va = a.data()[i] != 0;
    const bool vb = b.data()[i] != 0;
    inter += (va && vb) ? 1 : 0;
    uni += (va || vb) ? 1 : 0;
  }
  if (uni == 0) return 0.0;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

inline double mask_iou(const Mask& a, const Mask& b) {
  return mask_iou(a.bitmap, b.bitmap);
}

// mask cells with at least one non-mask 4-neighbor (grid edge counts)
inline std::vector<Cell> mask_boundary_cells(const Bitmap& b) {
  std::vector<Cell> out;
  for (int y = 0; y < b.height(); ++y)
    for (int x = 0; x < b.width(); ++x) {
      if (!b.at(x, y)) continue;
      bool edge = false;
      for (int k = 0; k < 4 && !edge; ++k) {
        const Cell n{x + kNeighbor4X[k], y + kNeighbor4Y[k]};
        if (!b.in_bounds(n) || !b.at(n)) edge = true;
      }
      if (edge) out.push_back(Cell{x, y});
    }
  return out;
}

namespace detail {

// Meijster's exact squared Euclidean distance transform to the complement.
// Integer arithmetic only. Cells outside the grid count as complement, which
// a one-cell padding ring makes explicit.
inline std::vector<long> squared_distance_to_complement(const Bitmap& b) {
  const int W = b.width() + 2;
  const int H = b.height() + 2;
  const auto inside = [&](int x, int y) {
    return x >= 1 && x < W - 1 && y >= 1 && y < H - 1 && b.at(x - 1, y - 1);
  };

  // phase 1: per-column vertical distance to the nearest complement cell
  std::vector<int> g(static_cast<std::size_t>(W) * H, 0);
  for (int x = 0; x < W; ++x) {
    for (int y = 1; y < H; ++y) {
      const std::size_t i = static_cast<std::size_t>(y) * W + x;
      g[i] = inside(x, y) ? g[i - W] + 1 : 0;
    }
    for (int y = H - 2; y >= 0; --y) {
      const std::size_t i = static_cast<std::size_t>(y) * W + x;
      if (g[i + W] + 1 < g[i]) g[i] = g[i + W] + 1;
    }
  }

  // phase 2: lower envelope of the per-column parabolas along each row
  std::vector<long> dist(static_cast<std::size_t>(b.width()) * b.height(), 0);
  std::vector<int> s(W), t(W);
  for (int y = 0; y < H; ++y) {
    const int* row = &g[static_cast<std::size_t>(y) * W];
    const auto f = [&](long x, long u) {
      const long d = x - u;
      return d * d + static_cast<long>(row[u]) * row[u];
    };
    const auto sep = [&](long i, long u) {
      return (u * u - i * i + static_cast<long>(row[u]) * row[u] -
              static_cast<long>(row[i]) * row[i]) /
             (2 * (u - i));
    };
    int q = 0;
    s[0] = 0;
    t[0] = 0;
    for (int u = 1; u < W; ++u) {
      while (q >= 0 && f(t[q], s[q]) > f(t[q], u)) --q;
      if (q < 0) {
        q = 0;
        s[0] = u;
      } else {
        const long w = 1 + sep(s[q], u);
        if (w < W) {
          ++q;
          s[q] = u;
          t[q] = static_cast<int>(w);
        }
      }
    }
    for (int x = W - 1; x >= 0; --x) {
      if (y >= 1 && y < H - 1 && x >= 1 && x < W - 1)
        dist[static_cast<std::size_t>(y - 1) * b.width() + (x - 1)] =
            f(x, s[q]);
      while (q > 0 && x == t[q]) --q;
    }
  }
  return dist;
}

}  // namespace detail

// Pole of inaccessibility: the in-mask cell farthest from the complement
// (grid edges count as complement). Ties: lowest row, then column.
inline Cell place_marker(const Bitmap& b) {
  if (bitmap_area(b) == 0) throw DomainError("place_marker: empty mask");
  const std::vector<long> d2 = detail::squared_distance_to_complement(b);
  long best = -1;
  Cell best_cell{0, 0};
  for (int y = 0; y < b.height(); ++y)
    for (int x = 0; x < b.width(); ++x) {
      if (!b.at(x, y)) continue;
      const long v = d2[static_cast<std::size_t>(y) * b.width() + x];
      if (v > best) {
        best = v;
        best_cell = Cell{x, y};
      }
    }
  return best_cell;
}

inline Mask make_mask(Bitmap bitmap, int marker_id) {
  Mask m;
  m.marker_pixel = place_marker(bitmap);
  m.bitmap = std::move(bitmap);
  m.marker_id = marker_id;
  return m;
}

// Row-major run-length encoding; counts alternate starting with zeros.
inline std::vector<long> rle_encode(const Bitmap& b) {
  std::vector<long> counts;
  std::uint8_t cur = 0;
  long run = 0;
  for (const auto v : b.data()) {
    const std::uint8_t bit = v ? 1 : 0;
    if (bit == cur) {
      ++run;
    } else {
      counts.push_back(run);
      cur = bit;
      run = 1;
    }
  }
  counts.push_back(run);
  return counts;
}

inline Bitmap rle_decode(int width, int height, const std::vector<long>& counts) {
  Bitmap b(width, height, 0);
  std::size_t pos = 0;
  std::uint8_t cur = 0;
  for (const long run : counts) {
    if (run < 0 || pos + run > b.size())
      throw DomainError("rle_decode: counts exceed grid size");
    if (cur)
      for (long i = 0; i < run; ++i) b.data()[pos + i] = 1;
    pos += run;
    cur = cur ? 0 : 1;
  }
  if (pos != b.size()) throw DomainError("rle_decode: counts do not cover grid");
  return b;
}

}  // namespace pilesim
