// Copyright 2026 The vismap Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>

#include "vismap/fds_io.hpp"
#include "vismap/grid.hpp"

namespace vismap {

/// Builds the global evaluation grid from the meshes whose z-range contains
/// `eval_height`. A cell is obstructed iff an obstruction box spans
/// eval_height and its footprint covers the cell center, or no mesh covers it.
SceneDescription assemble_scene(const fds::SmvScene& smv, double eval_height = kDefaultEvalHeight);

struct MeshSlice {
  int mesh = 0;  // 0-based .smv mesh index
  fds::SliceData data;
};

/// Merges one horizontal slice per mesh into global rasters. Node-centered
/// slices (nx+1 columns) give cell c the value of node c, so the seam column
/// shared by two meshes is taken from the mesh that owns the cell to its right.
FieldSeries stitch_field(const SceneDescription& scene, std::span<const MeshSlice> slices,
                         double time_tolerance = 1e-6);

}  // namespace vismap
