// Copyright 2026 The vismap Authors
// SPDX-License-Identifier: Apache-2.0

// vismap command line front end. Links only against the C interface.

#include <cstdio>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "vismap/vismap.h"

namespace {

int report(vismap_status st) {
  if (st != VISMAP_OK) std::fprintf(stderr, "vismap: %s: %s\n", vismap_status_name(st), vismap_last_error());
  return static_cast<int>(st);
}

struct Overrides {
  std::optional<std::string> input, out, times, vmax, thickness, quantity, height;

  void add_to(CLI::App& app) {
    app.add_option("--input", input, "FDS directory, .smv file, or portable directory (scene.txt + field.bin)");
    app.add_option("--out", out, "Output directory");
    app.add_option("--times", times, "Evaluation times: '400', '0,100,200' or 'start:stop:step'");
    app.add_option("--vmax", vmax, "Maximum visibility V_max in m");
    app.add_option("--thickness", thickness, "Ray thickness in cells for occlusion tests");
    app.add_option("--quantity", quantity, "Slice quantity label");
    app.add_option("--height", height, "Evaluation height in m");
  }

  vismap_status apply(vismap_config* cfg) const {
    const std::pair<const char*, const std::optional<std::string>*> all[] = {
        {"input", &input},         {"out", &out},           {"times", &times},  {"vmax", &vmax},
        {"thickness", &thickness}, {"quantity", &quantity}, {"height", &height}};
    for (const auto& [key, value] : all) {
      if (!value->has_value()) continue;
      if (auto st = vismap_config_set(cfg, key, (*value)->c_str()); st != VISMAP_OK) return st;
    }
    return VISMAP_OK;
  }
};

int run_command(const std::string& config_path, const Overrides& ov) {
  vismap_config* cfg = nullptr;
  vismap_status st = config_path.empty() ? vismap_config_parse("{}", nullptr, &cfg)
                                         : vismap_config_load(config_path.c_str(), &cfg);
  if (st != VISMAP_OK) return report(st);
  st = ov.apply(cfg);
  vismap_run_summary summary{};
  if (st == VISMAP_OK) st = vismap_run(cfg, &summary);
  vismap_config_free(cfg);
  if (st != VISMAP_OK) return report(st);
  std::printf("grid %dx%d, %d waypoint(s), %d time(s), %llu passable cell(s) in the aggregated map\n", summary.nx,
              summary.ny, summary.waypoints, summary.times, static_cast<unsigned long long>(summary.passable_cells));
  return 0;
}

int convert_command(const std::string& input, const std::string& quantity, double height, const std::string& out) {
  vismap_dataset* ds = nullptr;
  vismap_status st = vismap_dataset_open(input.c_str(), quantity.c_str(), height, &ds);
  if (st == VISMAP_OK) st = vismap_dataset_write_portable(ds, out.c_str());
  vismap_dataset_free(ds);
  return report(st);
}

int info_command(const std::string& input, const std::string& quantity, double height) {
  vismap_dataset* ds = nullptr;
  vismap_status st = vismap_dataset_open(input.c_str(), quantity.c_str(), height, &ds);
  if (st != VISMAP_OK) return report(st);
  int nx = 0, ny = 0;
  double x0 = 0, y0 = 0, d = 0;
  size_t frames = 0;
  vismap_dataset_shape(ds, &nx, &ny, &x0, &y0, &d);
  vismap_dataset_frame_count(ds, &frames);
  std::vector<uint8_t> mask(static_cast<size_t>(nx) * static_cast<size_t>(ny));
  vismap_dataset_obstructions(ds, mask.data(), mask.size());
  size_t blocked = 0;
  for (auto v : mask) blocked += v;
  std::printf("grid: %d x %d cells of %g m, origin (%g, %g)\n", nx, ny, d, x0, y0);
  std::printf("obstructed cells: %zu\n", blocked);
  std::printf("frames: %zu", frames);
  if (frames > 0) {
    double t0 = 0, t1 = 0;
    vismap_dataset_frame_time(ds, 0, &t0);
    vismap_dataset_frame_time(ds, frames - 1, &t1);
    std::printf(" (t = %g .. %g s)", t0, t1);
  }
  std::printf("\n");
  vismap_dataset_free(ds);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Waypoint-based visibility maps and ASET maps from fire simulation output"};
  app.require_subcommand(0, 1);
  app.set_version_flag("--version", vismap_version());

  // "vismap --config x.json" behaves like "vismap run --config x.json".
  std::string config_path;
  Overrides top;
  app.add_option("--config", config_path, "JSON run configuration");
  top.add_to(app);

  auto* run = app.add_subcommand("run", "Compute visibility maps from a run configuration");
  std::string run_config;
  Overrides run_ov;
  run->add_option("--config", run_config, "JSON run configuration");
  run_ov.add_to(*run);

  auto* convert = app.add_subcommand("convert", "Write an FDS scene and field in the portable format");
  std::string conv_input, conv_out, conv_quantity = "EXTINCTION COEFFICIENT";
  double conv_height = 2.0;
  convert->add_option("--input", conv_input, "FDS directory or .smv file")->required();
  convert->add_option("--out", conv_out, "Output directory")->required();
  convert->add_option("--quantity", conv_quantity, "Slice quantity label");
  convert->add_option("--height", conv_height, "Evaluation height in m");

  auto* info = app.add_subcommand("info", "Describe the grid and frames of an input");
  std::string info_input, info_quantity = "EXTINCTION COEFFICIENT";
  double info_height = 2.0;
  info->add_option("--input", info_input, "Input directory or .smv file")->required();
  info->add_option("--quantity", info_quantity, "Slice quantity label");
  info->add_option("--height", info_height, "Evaluation height in m");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(VISMAP_ERR_CONFIG);
  }

  if (*convert) return convert_command(conv_input, conv_quantity, conv_height, conv_out);
  if (*info) return info_command(info_input, info_quantity, info_height);
  if (*run) return run_command(run_config, run_ov);
  if (config_path.empty() && !top.input) {
    std::fputs(app.help().c_str(), stderr);
    return static_cast<int>(VISMAP_ERR_CONFIG);
  }
  return run_command(config_path, top);
}
