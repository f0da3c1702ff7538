// Copyright 2026 The vismap Authors
// SPDX-License-Identifier: Apache-2.0

// Readers for the subset of FDS/Smokeview output used by the visibility
// pipeline (.smv index: GRID, TRNX/TRNY/TRNZ, OBST, SLCF/SLCC; .sf slice
// files) and for the portable scene/field format.

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vismap/grid.hpp"

namespace vismap::fds {

struct MeshInfo {
  std::string name;
  int nx = 0;
  int ny = 0;
  int nz = 0;
  std::vector<double> x;  // node coordinates, size nx + 1
  std::vector<double> y;
  std::vector<double> z;
};

/// Obstruction cuboid. `index` holds node-index bounds i1,i2,j1,j2,k1,k2 in
/// the owning mesh, i.e. the box covers cells i1..i2-1.
struct ObstBox {
  int mesh = 0;
  double x0 = 0, x1 = 0, y0 = 0, y1 = 0, z0 = 0, z1 = 0;
  std::array<int, 6> index{};
};

struct SliceRef {
  std::string file;
  int mesh = 0;  // 0-based
  std::string quantity;
  std::string short_name;
  std::string units;
  bool cell_centered = false;  // SLCC
  std::optional<std::array<int, 6>> bounds;
};

struct SmvScene {
  std::vector<MeshInfo> meshes;
  std::vector<ObstBox> obstructions;
  std::vector<SliceRef> slices;
};

SmvScene parse_smv(std::string_view text);
SmvScene parse_smv(std::istream& in);

/// Node in `coords` nearest to `value` (binary search).
int nearest_node(std::span<const double> coords, double value);

/// Labels compare case-insensitively after stripping trailing blanks.
bool quantity_matches(std::string_view a, std::string_view b);
std::vector<const SliceRef*> find_slices(const SmvScene& smv, std::string_view quantity);

enum class ByteOrder { Little, Big };

/// Chooses the byte order under which the first record marker reads 30.
ByteOrder detect_endianness(std::span<const std::byte> bytes);

struct SliceHeader {
  std::string quantity;
  std::string short_name;
  std::string units;
  std::array<int, 6> bounds{};  // i1,i2,j1,j2,k1,k2

  int extent(int axis) const noexcept { return bounds[2 * axis + 1] - bounds[2 * axis] + 1; }
  std::size_t cell_count() const noexcept {
    return static_cast<std::size_t>(extent(0)) * static_cast<std::size_t>(extent(1)) *
           static_cast<std::size_t>(extent(2));
  }
  bool horizontal() const noexcept { return bounds[4] == bounds[5]; }
};

struct RawFrame {
  float time = 0.0f;
  std::vector<float> values;  // Fortran order, first index fastest
};

struct SliceData {
  SliceHeader header;
  std::vector<RawFrame> frames;
  ByteOrder byte_order = ByteOrder::Little;
  int dropped_frames = 0;  // truncated trailing frames
};

SliceData read_slice(std::span<const std::byte> bytes);
SliceData read_slice_file(const std::filesystem::path& path);

// Portable format.
//   scene: "grid nx ny x0 y0 dx dy" followed by "obst i j" lines ('#' comments)
//   field: "frames n t0 ... t(n-1)\n" followed by n little-endian float32
//          rasters of nx*ny values, j outer.
SceneDescription parse_portable_scene(std::string_view text, double eval_height = kDefaultEvalHeight);
FieldSeries parse_portable_field(std::span<const std::byte> bytes, int nx, int ny);
std::string write_portable_scene(const SceneDescription& scene);
std::vector<std::byte> write_portable_field(const FieldSeries& field);

std::vector<std::byte> read_file_bytes(const std::filesystem::path& path);
std::string read_file_text(const std::filesystem::path& path);

}  // namespace vismap::fds
