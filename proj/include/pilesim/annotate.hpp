#pragma once

#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include "pilesim/mask.hpp"
#include "pilesim/scene.hpp"

namespace pilesim {

enum class OverlayKind { Border, Fill };

struct AnnotatedImage {
  Grid<Rgb> image;
  OverlayKind kind = OverlayKind::Border;
  std::vector<std::pair<int, Cell>> labels;  // (marker_id, marker_pixel)
};

// Border image: mask boundary cells drawn with a white line, marker at the
// marker pixel. Fill image: each mask tinted a distinct overlay color.
inline std::pair<AnnotatedImage, AnnotatedImage> annotate(
    const Observation& obs, const MaskSet& masks) {
  AnnotatedImage border{obs.color, OverlayKind::Border, {}};
  AnnotatedImage fill{obs.color, OverlayKind::Fill, {}};
  const Rgb white{255, 255, 255};
  for (const auto& m : masks.masks) {
    for (const Cell& c : mask_boundary_cells(m.bitmap))
      border.image.at(c) = white;
    const Rgb tint = palette()[(m.marker_id - 1) % palette().size()].rgb;
    for (const Cell& c : cells_of(m.bitmap)) {
      Rgb& px = fill.image.at(c);
      px.r = static_cast<std::uint8_t>((px.r + tint.r) / 2);
      px.g = static_cast<std::uint8_t>((px.g + tint.g) / 2);
      px.b = static_cast<std::uint8_t>((px.b + tint.b) / 2);
    }
    border.labels.emplace_back(m.marker_id, m.marker_pixel);
    fill.labels.emplace_back(m.marker_id, m.marker_pixel);
    border.image.at(m.marker_pixel) = white;
  }
  return {std::move(border), std::move(fill)};
}

inline std::string ppm_bytes(const Grid<Rgb>& img) {
  std::string out = "P6\n" + std::to_string(img.width()) + " " +
                    std::to_string(img.height()) + "\n255\n";
  out.reserve(out.size() + img.size() * 3);
  for (const Rgb& px : img.data()) {
    out.push_back(static_cast<char>(px.r));
    out.push_back(static_cast<char>(px.g));
    out.push_back(static_cast<char>(px.b));
  }
  return out;
}

inline void write_ppm(const Grid<Rgb>& img, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("write_ppm: cannot open " + path);
  const std::string bytes = ppm_bytes(img);
  f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

}  // namespace pilesim
