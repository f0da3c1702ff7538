// Copyright 2026 The vismap Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <limits>
#include <span>
#include <vector>

#include "vismap/grid.hpp"
#include "vismap/raster.hpp"
#include "vismap/raycast.hpp"

namespace vismap {

struct VisParams {
  double v_max = 30.0;                // m
  double zero_sigma_epsilon = 1e-9;  // 1/m; below this C/sigma counts as infinite

  void validate() const;
};

inline constexpr double kNeverFails = std::numeric_limits<double>::infinity();

/// Time-independent geometry for one waypoint.
struct WaypointFields {
  Cell cell;
  Raster<double> distance;     // L, required visibility (m)
  Raster<double> view_factor;  // A in [0, 1]
  Mask unconcealed;            // U
  Mask active;                 // L <= V_max
};

/// L = Euclidean distance from the waypoint to every cell center.
Raster<double> distance_matrix(const SceneDescription& scene, const Waypoint& wp);

/// A = max(0, (sin a (X_i - X_k) + cos a (Y_j - Y_k)) / L); 1 on the waypoint's own cell.
Raster<double> view_angle_matrix(const SceneDescription& scene, const Waypoint& wp, const Raster<double>& distance);

WaypointFields compute_waypoint_fields(const SceneDescription& scene, const Waypoint& wp, const VisParams& params,
                                       const OcclusionParams& occlusion = {});

/// Arithmetic mean of sigma over the Bresenham cells from `from` to `to`.
double mean_extinction(const Raster<float>& sigma, Cell from, Cell to);

/// V = min(U A C / sigma_bar, V_max). Where U A = 0 the result is 0 and
/// sigma_bar is not inspected.
double available_visibility(double sigma_bar, bool unconcealed, double view_factor, double visibility_factor,
                            const VisParams& params);

Raster<double> visibility_matrix(const Raster<double>& sigma_bar, const Mask& unconcealed,
                                 const Raster<double>& view_factor, double visibility_factor, const VisParams& params);

/// V raster for one waypoint and one frame. sigma_bar is evaluated only where
/// U A > 0 and the cell is active.
Raster<double> waypoint_visibility(const Raster<float>& sigma, const WaypointFields& fields,
                                   double visibility_factor, const VisParams& params);

/// M = 1 where V >= L on unobstructed cells.
Mask waypoint_map(const Raster<double>& visibility, const Raster<double>& distance, const Mask& obstructed);

/// Elementwise OR over waypoints.
Mask combine_waypoints(std::span<const Mask> maps);
/// Elementwise AND over time.
Mask aggregate_time(std::span<const Mask> maps);
/// First time at which each cell fails; kNeverFails where it never does.
Raster<double> aset_map(std::span<const Mask> maps, std::span<const double> times);

}  // namespace vismap
