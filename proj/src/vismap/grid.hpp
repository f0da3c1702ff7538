// Copyright 2026 The vismap Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vismap/raster.hpp"

namespace vismap {

inline constexpr double kDefaultEvalHeight = 2.0;
inline constexpr double kDefaultMassExtinction = 8700.0;  // m^2/kg, FDS default at 633 nm

/// Where a source mesh sits inside the global evaluation grid.
struct MeshPlacement {
  int mesh_index = 0;  // 0-based position in the .smv mesh list
  std::string name;
  int i0 = 0;  // global cell offset of the mesh's first cell
  int j0 = 0;
  int nx = 0;
  int ny = 0;
};

/// Uniform horizontal grid at the evaluation height plus its obstruction mask.
struct SceneDescription {
  double origin_x = 0.0;
  double origin_y = 0.0;
  double cell_size = 1.0;  // dx == dy
  int nx = 0;
  int ny = 0;
  Mask obstructed;
  double eval_height = kDefaultEvalHeight;
  std::vector<MeshPlacement> meshes;  // empty for portable scenes

  double center_x(int i) const noexcept { return origin_x + (i + 0.5) * cell_size; }
  double center_y(int j) const noexcept { return origin_y + (j + 0.5) * cell_size; }
  double extent_x() const noexcept { return origin_x + nx * cell_size; }
  double extent_y() const noexcept { return origin_y + ny * cell_size; }

  bool contains_point(double x, double y) const noexcept;
  /// Cell containing (x, y); points on the upper domain boundary belong to
  /// the last cell.
  std::optional<Cell> cell_of(double x, double y) const noexcept;

  /// Throws ConfigError when shape or mask are inconsistent.
  void validate() const;
};

bool same_grid(const SceneDescription& a, const SceneDescription& b);

/// Time-ordered extinction coefficient rasters (1/m) on the scene grid.
struct FieldSeries {
  std::vector<double> times;
  std::vector<Raster<float>> frames;
  double mass_extinction = kDefaultMassExtinction;

  std::size_t frame_count() const noexcept { return frames.size(); }
  /// Throws ParseError/ConfigError on negative values or unsorted times.
  void validate(const SceneDescription& scene) const;
};

/// An exit sign.
struct Waypoint {
  int id = 0;
  double x = 0.0;
  double y = 0.0;
  double visibility_factor = 3.0;  // C_k: ~3 reflecting, ~8 light emitting
  double alpha_deg = 0.0;          // rotation of the observation normal; 0 faces +y
};

/// Rejects non-positive C, positions outside the domain and waypoints on
/// obstructed cells. Returns the waypoint's cell.
Cell validate_waypoint(const SceneDescription& scene, const Waypoint& wp);

/// sigma = K_m * rho_s, elementwise.
Raster<float> sigma_from_density(const Raster<float>& density, double mass_extinction);

}  // namespace vismap
