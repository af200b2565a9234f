#pragma once

#include <array>
#include <cstdint>
#include <cstdlib>
#include <string>

#include "pilesim/errors.hpp"

namespace pilesim {

struct Rgb {
  std::uint8_t r = 0, g = 0, b = 0;

  friend bool operator==(const Rgb& a, const Rgb& b) {
    return a.r == b.r && a.g == b.g && a.b == b.b;
  }
  friend bool operator!=(const Rgb& a, const Rgb& b) { return !(a == b); }
};

// L-infinity distance; "similar color" thresholds are expressed in this metric.
inline int color_distance(const Rgb& a, const Rgb& b) {
  int d = std::abs(int(a.r) - int(b.r));
  d = std::max(d, std::abs(int(a.g) - int(b.g)));
  d = std::max(d, std::abs(int(a.b) - int(b.b)));
  return d;
}

struct PaletteEntry {
  const char* name;
  Rgb rgb;
};

// 12 named colors, pairwise L-inf distance >= 70 so that +/-10 jitter on
// garment colors never makes two different entries "similar".
inline const std::array<PaletteEntry, 12>& palette() {
  static const std::array<PaletteEntry, 12> p = {{
      {"red", {220, 40, 40}},
      {"green", {40, 180, 60}},
      {"blue", {40, 70, 220}},
      {"yellow", {230, 220, 50}},
      {"orange", {240, 150, 40}},
      {"purple", {150, 50, 200}},
      {"pink", {240, 130, 180}},
      {"brown", {130, 80, 30}},
      {"black", {25, 25, 25}},
      {"white", {240, 240, 240}},
      {"gray", {130, 130, 130}},
      {"cyan", {60, 200, 220}},
  }};
  return p;
}

inline int nearest_palette_index(const Rgb& c) {
  int best = 0;
  int best_d = color_distance(c, palette()[0].rgb);
  for (int i = 1; i < static_cast<int>(palette().size()); ++i) {
    const int d = color_distance(c, palette()[i].rgb);
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  return best;
}

inline int palette_index_by_name(const std::string& name) {
  for (int i = 0; i < static_cast<int>(palette().size()); ++i) {
    if (name == palette()[i].name) return i;
  }
  return -1;
}

}  // namespace pilesim
