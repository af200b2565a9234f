#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "pilesim/errors.hpp"

namespace pilesim {

// Grid cell. x = column, y = row. Row-major flattened index = y * width + x.
struct Cell {
  int x = 0;
  int y = 0;

  friend bool operator==(const Cell& a, const Cell& b) {
    return a.x == b.x && a.y == b.y;
  }
  friend bool operator!=(const Cell& a, const Cell& b) { return !(a == b); }
  // row-major order, matches flattened-index tie breaking
  friend bool operator<(const Cell& a, const Cell& b) {
    if (a.y != b.y) return a.y < b.y;
    return a.x < b.x;
  }
};

inline double cell_distance(const Cell& a, const Cell& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return std::sqrt(dx * dx + dy * dy);
}

// Inclusive axis-aligned cell rectangle.
struct Rect {
  int x0 = 0, y0 = 0, x1 = 0, y1 = 0;

  int width() const { return x1 - x0 + 1; }
  int height() const { return y1 - y0 + 1; }
  bool contains(const Cell& c) const {
    return c.x >= x0 && c.x <= x1 && c.y >= y0 && c.y <= y1;
  }
  bool intersects(const Rect& o) const {
    return !(o.x0 > x1 || o.x1 < x0 || o.y0 > y1 || o.y1 < y0);
  }
  friend bool operator==(const Rect& a, const Rect& b) {
    return a.x0 == b.x0 && a.y0 == b.y0 && a.x1 == b.x1 && a.y1 == b.y1;
  }
};

inline Rect bounding_rect(const std::vector<Cell>& cells) {
  if (cells.empty()) throw DomainError("bounding_rect: empty cell set");
  Rect r{cells[0].x, cells[0].y, cells[0].x, cells[0].y};
  for (const Cell& c : cells) {
    if (c.x < r.x0) r.x0 = c.x;
    if (c.x > r.x1) r.x1 = c.x;
    if (c.y < r.y0) r.y0 = c.y;
    if (c.y > r.y1) r.y1 = c.y;
  }
  return r;
}

template <typename T>
class Grid {
 public:
  Grid() = default;
  Grid(int width, int height, T fill = T{})
      : width_(width), height_(height),
        data_(static_cast<std::size_t>(width) * height, fill) {}

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return data_.size(); }

  bool in_bounds(const Cell& c) const {
    return c.x >= 0 && c.x < width_ && c.y >= 0 && c.y < height_;
  }

  T& at(const Cell& c) { return data_[index(c)]; }
  const T& at(const Cell& c) const { return data_[index(c)]; }
  T& at(int x, int y) { return data_[static_cast<std::size_t>(y) * width_ + x]; }
  const T& at(int x, int y) const {
    return data_[static_cast<std::size_t>(y) * width_ + x];
  }

  std::size_t index(const Cell& c) const {
    return static_cast<std::size_t>(c.y) * width_ + c.x;
  }
  Cell cell_of(std::size_t idx) const {
    return Cell{static_cast<int>(idx % width_), static_cast<int>(idx / width_)};
  }

  const std::vector<T>& data() const { return data_; }
  std::vector<T>& data() { return data_; }

  friend bool operator==(const Grid& a, const Grid& b) {
    return a.width_ == b.width_ && a.height_ == b.height_ && a.data_ == b.data_;
  }

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<T> data_;
};

inline constexpr int kNeighbor4X[4] = {1, -1, 0, 0};
inline constexpr int kNeighbor4Y[4] = {0, 0, 1, -1};

}  // namespace pilesim
