// Copyright 2026 The vismap Authors
// SPDX-License-Identifier: Apache-2.0

#include "vismap/grid.hpp"

#include <cmath>
#include <sstream>

#include "vismap/error.hpp"

namespace vismap {

bool SceneDescription::contains_point(double x, double y) const noexcept {
  return x >= origin_x && y >= origin_y && x <= extent_x() && y <= extent_y();
}

std::optional<Cell> SceneDescription::cell_of(double x, double y) const noexcept {
  if (!contains_point(x, y)) return std::nullopt;
  int i = static_cast<int>(std::floor((x - origin_x) / cell_size));
  int j = static_cast<int>(std::floor((y - origin_y) / cell_size));
  i = std::min(std::max(i, 0), nx - 1);
  j = std::min(std::max(j, 0), ny - 1);
  return Cell{i, j};
}

void SceneDescription::validate() const {
  if (nx < 1 || ny < 1) throw ConfigError("scene grid must have at least one cell in each direction");
  if (!(cell_size > 0.0) || !std::isfinite(cell_size)) throw ConfigError("scene cell size must be positive");
  if (obstructed.nx() != nx || obstructed.ny() != ny) throw ConfigError("obstruction mask shape does not match grid");
  for (auto v : obstructed.values())
    if (v > 1) throw ConfigError("obstruction mask must be boolean");
}

bool same_grid(const SceneDescription& a, const SceneDescription& b) {
  return a.nx == b.nx && a.ny == b.ny && a.origin_x == b.origin_x && a.origin_y == b.origin_y &&
         a.cell_size == b.cell_size && a.obstructed == b.obstructed;
}

void FieldSeries::validate(const SceneDescription& scene) const {
  if (times.size() != frames.size()) throw ConfigError("field time vector and frame list differ in length");
  for (std::size_t n = 0; n < frames.size(); ++n) {
    const auto& f = frames[n];
    if (f.nx() != scene.nx || f.ny() != scene.ny) {
      std::ostringstream os;
      os << "field frame " << n << " has shape " << f.nx() << "x" << f.ny() << ", scene is " << scene.nx << "x"
         << scene.ny;
      throw ParseError(os.str());
    }
    for (float v : f.values()) {
      if (!(v >= 0.0f) || !std::isfinite(v)) {
        std::ostringstream os;
        os << "field frame " << n << " contains a negative or non-finite extinction coefficient";
        throw ParseError(os.str());
      }
    }
    if (n > 0 && !(times[n] > times[n - 1])) throw ParseError("field times are not strictly increasing");
  }
}

Cell validate_waypoint(const SceneDescription& scene, const Waypoint& wp) {
  std::ostringstream os;
  if (!(wp.visibility_factor > 0.0) || !std::isfinite(wp.visibility_factor)) {
    os << "waypoint " << wp.id << ": visibility factor must be positive";
    throw ConfigError(os.str());
  }
  if (!std::isfinite(wp.alpha_deg)) {
    os << "waypoint " << wp.id << ": orientation angle must be finite";
    throw ConfigError(os.str());
  }
  auto cell = scene.cell_of(wp.x, wp.y);
  if (!cell) {
    os << "waypoint " << wp.id << " at (" << wp.x << ", " << wp.y << ") lies outside the domain";
    throw ConfigError(os.str());
  }
  if (scene.obstructed[*cell]) {
    os << "waypoint " << wp.id << " at (" << wp.x << ", " << wp.y << ") lies on obstructed cell (" << cell->i << ", "
       << cell->j << ")";
    throw ConfigError(os.str());
  }
  return *cell;
}

Raster<float> sigma_from_density(const Raster<float>& density, double mass_extinction) {
  if (!(mass_extinction >= 0.0)) throw ConfigError("mass extinction coefficient must be non-negative");
  Raster<float> out(density.nx(), density.ny());
  auto src = density.values();
  auto dst = out.values();
  for (std::size_t n = 0; n < src.size(); ++n) {
    if (!(src[n] >= 0.0f)) throw ComputeError("smoke density must be non-negative");
    dst[n] = static_cast<float>(mass_extinction * static_cast<double>(src[n]));
  }
  return out;
}

}  // namespace vismap
