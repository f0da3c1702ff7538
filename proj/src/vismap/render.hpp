// Copyright 2026 The vismap Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "vismap/grid.hpp"
#include "vismap/raster.hpp"

namespace vismap {

struct Rgb {
  std::uint8_t r = 0, g = 0, b = 0;
  friend bool operator==(Rgb, Rgb) = default;
  std::uint8_t gray() const noexcept { return static_cast<std::uint8_t>((299 * r + 587 * g + 114 * b + 500) / 1000); }
};

struct RenderStyle {
  Rgb pass{46, 204, 64};
  Rgb fail{220, 40, 40};
  Rgb obstructed{40, 40, 40};
  Rgb never{255, 255, 255};   // ASET cells that never fail
  std::string colormap = "gray";  // "gray" or "heat"

  /// Colors (and their gray levels, used by PGM output) must be distinct.
  void validate() const;
};

enum class CellState : std::uint8_t { Fail = 0, Pass = 1, Obstructed = 2 };

Raster<CellState> tri_state(const Mask& map, const Mask& obstructed);

/// 8-bit RGB image, top row first.
struct Image {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> rgb;

  Rgb at(int x, int y) const;
  friend bool operator==(const Image&, const Image&) = default;
};

/// One pixel per cell. Raster row j = 0 (minimum y) becomes the bottom image row.
Image render_states(const Raster<CellState>& states, const RenderStyle& style);

/// Continuous field through the style's colormap over [lo, hi]. Infinite
/// values get `never`, cells flagged in `obstructed` get the obstructed color.
Image render_field(const Raster<double>& field, const Mask& obstructed, double lo, double hi,
                   const RenderStyle& style);

/// Alpha-over of `overlay` onto `background`. The background is resampled
/// (nearest neighbour) to the overlay extent.
Image composite_over(const Image& background, const Image& overlay, double alpha);

enum class ImageFormat { Pgm, Png };

bool png_supported() noexcept;

std::vector<std::uint8_t> encode_pgm(const Image& image);
std::vector<std::uint8_t> encode_png(const Image& image);
Image decode_pgm(const std::vector<std::uint8_t>& bytes);
Image read_image(const std::filesystem::path& path);  // PGM, PPM or PNG

void write_bytes(const std::filesystem::path& path, const std::vector<std::uint8_t>& bytes);
void write_image(const Image& image, const std::filesystem::path& path, ImageFormat format);

void write_map_image(const Raster<CellState>& states, const RenderStyle& style, const std::filesystem::path& path,
                     ImageFormat format = ImageFormat::Pgm);

/// CSV "x,y,value" over cell centers, j outer. Coordinates use 6 significant digits.
std::string field_csv(const SceneDescription& scene, const Raster<double>& raster);
/// As field_csv; infinite entries are written as `never`, obstructed cells as `obstructed`.
std::string aset_csv(const SceneDescription& scene, const Raster<double>& aset, const Mask& obstructed);

void write_field_csv(const SceneDescription& scene, const Raster<double>& raster, const std::filesystem::path& path);
void write_aset(const SceneDescription& scene, const Raster<double>& aset, const Mask& obstructed,
                const std::filesystem::path& path);

}  // namespace vismap
