// Copyright 2026 The vismap Authors
// SPDX-License-Identifier: Apache-2.0

#include "vismap/visibility.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "vismap/error.hpp"

namespace vismap {

void VisParams::validate() const {
  if (!(v_max > 0.0) || !std::isfinite(v_max)) throw ConfigError("V_max must be positive and finite");
  if (!(zero_sigma_epsilon > 0.0)) throw ConfigError("zero-sigma epsilon must be positive");
}

Raster<double> distance_matrix(const SceneDescription& scene, const Waypoint& wp) {
  Raster<double> out(scene.nx, scene.ny);
  for (int j = 0; j < scene.ny; ++j) {
    const double dy = scene.center_y(j) - wp.y;
    for (int i = 0; i < scene.nx; ++i) {
      const double dx = scene.center_x(i) - wp.x;
      out(i, j) = std::sqrt(dx * dx + dy * dy);
    }
  }
  return out;
}

Raster<double> view_angle_matrix(const SceneDescription& scene, const Waypoint& wp, const Raster<double>& distance) {
  if (distance.nx() != scene.nx || distance.ny() != scene.ny)
    throw ComputeError("distance raster does not match the scene grid");
  const double a = wp.alpha_deg * std::numbers::pi / 180.0;
  const double sa = std::sin(a), ca = std::cos(a);
  const auto own = scene.cell_of(wp.x, wp.y);
  Raster<double> out(scene.nx, scene.ny);
  for (int j = 0; j < scene.ny; ++j) {
    const double dy = scene.center_y(j) - wp.y;
    for (int i = 0; i < scene.nx; ++i) {
      const double l = distance(i, j);
      if ((own && own->i == i && own->j == j) || l <= 0.0) {
        out(i, j) = 1.0;
        continue;
      }
      const double dx = scene.center_x(i) - wp.x;
      out(i, j) = std::clamp((sa * dx + ca * dy) / l, 0.0, 1.0);
    }
  }
  return out;
}

WaypointFields compute_waypoint_fields(const SceneDescription& scene, const Waypoint& wp, const VisParams& params,
                                       const OcclusionParams& occlusion) {
  params.validate();
  WaypointFields f;
  f.cell = validate_waypoint(scene, wp);
  f.distance = distance_matrix(scene, wp);
  f.view_factor = view_angle_matrix(scene, wp, f.distance);
  f.unconcealed = compute_unconcealed(scene, wp.x, wp.y, params.v_max, occlusion);
  f.active = Mask(scene.nx, scene.ny, 0);
  for (std::size_t n = 0; n < f.active.size(); ++n)
    f.active.values()[n] = f.distance.values()[n] <= params.v_max ? 1 : 0;
  return f;
}

double mean_extinction(const Raster<float>& sigma, Cell from, Cell to) {
  double sum = 0.0;
  int count = 0;
  for_each_bresenham(from, to, [&](Cell c) {
    sum += sigma[c];
    ++count;
  });
  return sum / count;
}

double available_visibility(double sigma_bar, bool unconcealed, double view_factor, double visibility_factor,
                            const VisParams& params) {
  const double weight = (unconcealed ? 1.0 : 0.0) * view_factor;
  if (!(weight > 0.0)) return 0.0;
  if (sigma_bar < params.zero_sigma_epsilon) return params.v_max;
  return std::min(weight * visibility_factor / sigma_bar, params.v_max);
}

Raster<double> visibility_matrix(const Raster<double>& sigma_bar, const Mask& unconcealed,
                                 const Raster<double>& view_factor, double visibility_factor, const VisParams& params) {
  if (!sigma_bar.same_shape(unconcealed) || !sigma_bar.same_shape(view_factor))
    throw ComputeError("visibility inputs are not conformant");
  Raster<double> out(sigma_bar.nx(), sigma_bar.ny());
  for (std::size_t n = 0; n < out.size(); ++n)
    out.values()[n] = available_visibility(sigma_bar.values()[n], unconcealed.values()[n] != 0,
                                           view_factor.values()[n], visibility_factor, params);
  return out;
}

Raster<double> waypoint_visibility(const Raster<float>& sigma, const WaypointFields& fields,
                                   double visibility_factor, const VisParams& params) {
  if (!sigma.same_shape(fields.distance)) throw ComputeError("field frame does not match the waypoint geometry");
  Raster<double> out(sigma.nx(), sigma.ny(), 0.0);
  for (int j = 0; j < sigma.ny(); ++j) {
    for (int i = 0; i < sigma.nx(); ++i) {
      if (!fields.active(i, j) || !fields.unconcealed(i, j) || !(fields.view_factor(i, j) > 0.0)) continue;
      const double sbar = mean_extinction(sigma, fields.cell, {i, j});
      out(i, j) = available_visibility(sbar, true, fields.view_factor(i, j), visibility_factor, params);
    }
  }
  return out;
}

Mask waypoint_map(const Raster<double>& visibility, const Raster<double>& distance, const Mask& obstructed) {
  if (!visibility.same_shape(distance) || !visibility.same_shape(obstructed))
    throw ComputeError("map inputs are not conformant");
  Mask out(visibility.nx(), visibility.ny(), 0);
  for (std::size_t n = 0; n < out.size(); ++n)
    out.values()[n] = (!obstructed.values()[n] && visibility.values()[n] >= distance.values()[n]) ? 1 : 0;
  return out;
}

namespace {

template <class Op>
Mask reduce_maps(std::span<const Mask> maps, const char* what, Op op) {
  if (maps.empty()) throw ConfigError(std::string("cannot ") + what + " an empty list of maps");
  Mask out = maps.front();
  for (std::size_t m = 1; m < maps.size(); ++m) {
    if (!maps[m].same_shape(out)) throw ComputeError(std::string("cannot ") + what + " maps of different shapes");
    auto dst = out.values();
    auto src = maps[m].values();
    for (std::size_t n = 0; n < dst.size(); ++n) dst[n] = op(dst[n], src[n]);
  }
  return out;
}

}  // namespace

Mask combine_waypoints(std::span<const Mask> maps) {
  return reduce_maps(maps, "combine", [](std::uint8_t a, std::uint8_t b) -> std::uint8_t { return (a | b) ? 1 : 0; });
}

Mask aggregate_time(std::span<const Mask> maps) {
  return reduce_maps(maps, "aggregate", [](std::uint8_t a, std::uint8_t b) -> std::uint8_t { return (a && b) ? 1 : 0; });
}

Raster<double> aset_map(std::span<const Mask> maps, std::span<const double> times) {
  if (maps.size() != times.size()) {
    std::ostringstream os;
    os << "ASET needs one map per time point (" << maps.size() << " maps, " << times.size() << " times)";
    throw ComputeError(os.str());
  }
  if (maps.empty()) throw ConfigError("ASET needs at least one time point");
  for (std::size_t t = 1; t < times.size(); ++t)
    if (times[t] < times[t - 1]) throw ComputeError("ASET time points must be sorted ascending");
  Raster<double> out(maps.front().nx(), maps.front().ny(), kNeverFails);
  for (std::size_t t = 0; t < maps.size(); ++t) {
    if (!maps[t].same_shape(out)) throw ComputeError("ASET maps have different shapes");
    for (std::size_t n = 0; n < out.size(); ++n)
      if (!maps[t].values()[n] && out.values()[n] == kNeverFails) out.values()[n] = times[t];
  }
  return out;
}

}  // namespace vismap
