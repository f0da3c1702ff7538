// Copyright 2026 The vismap Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vismap/grid.hpp"
#include "vismap/raycast.hpp"
#include "vismap/render.hpp"
#include "vismap/visibility.hpp"

namespace vismap {

enum class FieldKind { Extinction, Density };

struct OutputToggles {
  bool waypoint_fields = true;  // per-(k, t) V rasters as CSV
  bool time_maps = true;        // M^t images
  bool aggregate = true;        // time-aggregated M image
  bool aset = true;             // ASET CSV + image
  bool png = false;             // PNG copies of every image
};

struct RunConfig {
  // Either `input` (an FDS directory, an .smv file or a directory holding
  // scene.txt + field.bin) or the explicit portable pair.
  std::filesystem::path input;
  std::filesystem::path scene_file;
  std::filesystem::path field_file;

  std::string quantity = "EXTINCTION COEFFICIENT";
  FieldKind field_kind = FieldKind::Extinction;
  double mass_extinction = kDefaultMassExtinction;
  double eval_height = kDefaultEvalHeight;

  std::vector<Waypoint> waypoints;
  std::vector<double> times;
  std::optional<double> time_tolerance;

  VisParams vis;
  OcclusionParams occlusion;
  int workers = 0;  // 0: hardware concurrency

  std::filesystem::path out_dir = "vismap_out";
  OutputToggles outputs;
  RenderStyle style;
  std::filesystem::path background;
  double background_alpha = 0.6;

  // Accepted for compatibility with existing run scripts; recorded only.
  std::optional<std::array<double, 2>> start_point;

  void validate() const;
};

/// Parses a JSON run configuration; relative paths resolve against `base_dir`.
RunConfig parse_config(std::string_view json_text, const std::filesystem::path& base_dir = {});
RunConfig load_config(const std::filesystem::path& path);

/// Flag override: input, out, times, vmax, thickness, quantity, height.
void apply_override(RunConfig& config, std::string_view key, std::string_view value);

/// "400", "0,100,200" or "start:stop:step" (stop included).
std::vector<double> parse_times(std::string_view spec);

struct Dataset {
  SceneDescription scene;
  FieldSeries field;
  std::vector<std::filesystem::path> sources;
  bool from_fds = false;
  int dropped_frames = 0;
};

Dataset load_dataset(const RunConfig& config);

/// Half the mean frame interval (0 for a single frame) plus 1e-6 s.
double default_time_tolerance(const FieldSeries& field);

/// Nearest frame per requested time, ties toward the earlier frame.
std::vector<std::size_t> select_frames(const FieldSeries& field, std::span<const double> times, double tolerance);

struct ComputeOptions {
  VisParams vis;
  OcclusionParams occlusion;
  int workers = 0;
  bool keep_visibility = false;
};

struct VisMapResult {
  std::vector<double> times;
  std::vector<std::size_t> frame_index;
  std::vector<WaypointFields> geometry;              // [k]
  std::vector<std::vector<Mask>> waypoint_maps;      // [k][t]
  std::vector<std::vector<Raster<double>>> visibility;  // [k][t], when kept
  std::vector<Mask> time_maps;                       // [t]
  Mask aggregate;
  Raster<double> aset;
  double v_max = 0.0;
  std::uint64_t geometry_evaluations = 0;
  std::uint64_t pair_evaluations = 0;
};

VisMapResult compute_maps(const SceneDescription& scene, const FieldSeries& field, std::span<const Waypoint> waypoints,
                          std::span<const double> times, std::optional<double> time_tolerance,
                          const ComputeOptions& options);

struct OutputRecord {
  std::string file;
  std::string sha256;
};

struct RunResult {
  VisMapResult maps;
  int nx = 0;
  int ny = 0;
  std::vector<OutputRecord> outputs;
  std::filesystem::path manifest;
};

RunResult run(const RunConfig& config);

std::string sha256_hex(std::span<const std::uint8_t> bytes);
std::string sha256_file(const std::filesystem::path& path);

}  // namespace vismap
