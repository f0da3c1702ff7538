// Copyright 2026 The vismap Authors
// SPDX-License-Identifier: Apache-2.0

#include "vismap/raycast.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "vismap/error.hpp"

namespace vismap {

CellPath bresenham(Cell src, Cell dst) {
  CellPath path;
  path.reserve(static_cast<std::size_t>(std::max(std::abs(dst.i - src.i), std::abs(dst.j - src.j))) + 1);
  for_each_bresenham(src, dst, [&](Cell c) { path.push_back(c); });
  return path;
}

std::vector<Cell> thick_line(Cell src, Cell dst, double thickness) {
  if (!(thickness >= 1.0)) throw ConfigError("ray thickness must be at least one cell");
  std::vector<Cell> out;
  for_each_thick_step(src, dst, thickness, [&](int, std::span<const Cell> cells) {
    out.insert(out.end(), cells.begin(), cells.end());
    return true;
  });
  return out;
}

std::optional<Cell> first_collision(std::span<const Cell> ordered, const Mask& obstructed) {
  for (Cell c : ordered)
    if (obstructed.contains(c) && obstructed[c]) return c;
  return std::nullopt;
}

Mask compute_unconcealed(const SceneDescription& scene, double wx, double wy, double radius,
                         const OcclusionParams& params) {
  if (!(params.thickness >= 1.0)) throw ConfigError("ray thickness must be at least one cell");
  auto src = scene.cell_of(wx, wy);
  if (!src) throw ComputeError("waypoint lies outside the domain");
  if (scene.obstructed[*src]) {
    std::ostringstream os;
    os << "waypoint cell (" << src->i << ", " << src->j << ") is obstructed";
    throw ComputeError(os.str());
  }

  Mask active(scene.nx, scene.ny, 0);
  int bi0 = scene.nx, bi1 = -1, bj0 = scene.ny, bj1 = -1;
  const double r2 = radius * radius;
  for (int j = 0; j < scene.ny; ++j) {
    const double dy = scene.center_y(j) - wy;
    for (int i = 0; i < scene.nx; ++i) {
      const double dx = scene.center_x(i) - wx;
      if (dx * dx + dy * dy <= r2) {
        active(i, j) = 1;
        bi0 = std::min(bi0, i), bi1 = std::max(bi1, i);
        bj0 = std::min(bj0, j), bj1 = std::max(bj1, j);
      }
    }
  }

  Mask unconcealed(scene.nx, scene.ny, 0);
  unconcealed[*src] = 1;
  if (bi1 < 0) return unconcealed;

  auto cast = [&](Cell target) {
    for_each_thick_step(*src, target, params.thickness, [&](int, std::span<const Cell> cells) {
      for (Cell c : cells)
        if (scene.obstructed.contains(c) && scene.obstructed[c]) return false;
      for (Cell c : cells)
        if (active.contains(c) && active[c]) unconcealed[c] = 1;
      return true;
    });
  };

  if (params.targets == RayTargets::EveryCell) {
    for (int j = bj0; j <= bj1; ++j)
      for (int i = bi0; i <= bi1; ++i)
        if (active(i, j)) cast({i, j});
    return unconcealed;
  }
  for (int i = bi0; i <= bi1; ++i) {
    cast({i, bj0});
    if (bj1 != bj0) cast({i, bj1});
  }
  for (int j = bj0 + 1; j < bj1; ++j) {
    cast({bi0, j});
    if (bi1 != bi0) cast({bi1, j});
  }
  return unconcealed;
}

}  // namespace vismap
