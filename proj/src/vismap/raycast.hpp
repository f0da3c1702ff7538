// Copyright 2026 The vismap Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstdlib>
#include <optional>
#include <span>
#include <vector>

#include "vismap/grid.hpp"
#include "vismap/raster.hpp"

namespace vismap {

using CellPath = std::vector<Cell>;

namespace detail {

// Nearest integer to num/den (den > 0), exact halves rounded down.
constexpr int round_half_down(long long num, long long den) {
  // ceil((2*num - den) / (2*den))
  const long long a = 2 * num - den, b = 2 * den;
  return static_cast<int>(a >= 0 ? (a + b - 1) / b : -((-a) / b));
}

}  // namespace detail

/// Visits the Bresenham cells from `src` to `dst` inclusive. At every step
/// along the major axis the minor coordinate is the nearest cell to the ideal
/// line; exact ties go to the smaller index, so the path is the same set in
/// both directions.
template <class Fn>
void for_each_bresenham(Cell src, Cell dst, Fn&& fn) {
  const int di = dst.i - src.i, dj = dst.j - src.j;
  const int ai = std::abs(di), aj = std::abs(dj);
  if (ai >= aj) {
    const int step = di >= 0 ? 1 : -1;
    for (int s = 0; s <= ai; ++s) {
      const int j = ai == 0 ? src.j : src.j + detail::round_half_down(static_cast<long long>(s) * dj, ai);
      fn(Cell{src.i + step * s, j});
    }
  } else {
    const int step = dj >= 0 ? 1 : -1;
    for (int s = 0; s <= aj; ++s) {
      const int i = src.i + detail::round_half_down(static_cast<long long>(s) * di, aj);
      fn(Cell{i, src.j + step * s});
    }
  }
}

CellPath bresenham(Cell src, Cell dst);

/// Cells within `thickness`/2 cells (measured along the minor axis) of the
/// ideal segment at each major-axis step, plus the Bresenham cell. The
/// callback receives the step index and that step's cells in ascending minor
/// order and returns false to stop.
template <class Fn>
void for_each_thick_step(Cell src, Cell dst, double thickness, Fn&& fn) {
  const int di = dst.i - src.i, dj = dst.j - src.j;
  const int ai = std::abs(di), aj = std::abs(dj);
  const bool x_major = ai >= aj;
  const int major_len = x_major ? ai : aj;
  const int major_step = (x_major ? di : dj) >= 0 ? 1 : -1;
  const int minor_delta = x_major ? dj : di;
  const int minor_src = x_major ? src.j : src.i;
  const double half = thickness * 0.5;
  std::vector<Cell> cells;
  for (int s = 0; s <= major_len; ++s) {
    const double ideal = major_len == 0 ? minor_src : minor_src + static_cast<double>(s) * minor_delta / major_len;
    const int nearest =
        major_len == 0 ? minor_src
                       : minor_src + detail::round_half_down(static_cast<long long>(s) * minor_delta, major_len);
    int lo = static_cast<int>(std::floor(ideal - half)) - 1;
    int hi = static_cast<int>(std::ceil(ideal + half)) + 1;
    cells.clear();
    for (int m = lo; m <= hi; ++m) {
      if (m == nearest || std::abs(m - ideal) < half) {
        const int major = (x_major ? src.i : src.j) + major_step * s;
        cells.push_back(x_major ? Cell{major, m} : Cell{m, major});
      }
    }
    if (!fn(s, std::span<const Cell>(cells))) return;
  }
}

/// Thick line as an ordered list (by step, then minor index).
std::vector<Cell> thick_line(Cell src, Cell dst, double thickness);

/// First obstructed cell in traversal order; cells off the mask are ignored.
std::optional<Cell> first_collision(std::span<const Cell> ordered, const Mask& obstructed);

enum class RayTargets {
  EdgeCells,  // rays to the perimeter of the active region's bounding box
  EveryCell,  // one ray per active cell (reference mode)
};

struct OcclusionParams {
  double thickness = 3.0;
  RayTargets targets = RayTargets::EdgeCells;
};

/// Unconcealed mask for a waypoint: 1 for cells within `radius` (m, measured
/// from the waypoint position to cell centers) that some ray reaches before
/// its first collision. The ray step containing a collision and all later
/// steps are concealed. The waypoint's own cell is always unconcealed.
Mask compute_unconcealed(const SceneDescription& scene, double wx, double wy, double radius,
                         const OcclusionParams& params = {});

}  // namespace vismap
