// Copyright 2026 The vismap Authors
// SPDX-License-Identifier: Apache-2.0

#include "vismap/vismap.h"

#include <algorithm>
#include <cstring>
#include <exception>
#include <filesystem>
#include <memory>
#include <new>
#include <stdexcept>
#include <string>
#include <vector>

#include "vismap/error.hpp"
#include "vismap/fds_io.hpp"
#include "vismap/pipeline.hpp"

struct vismap_config {
  vismap::RunConfig config;
};

struct vismap_dataset {
  vismap::Dataset data;
};

struct vismap_result {
  vismap::VisMapResult maps;
  int nx = 0;
  int ny = 0;
};

namespace {

thread_local std::string last_error;

vismap_status status_of(vismap::ErrorKind kind) {
  switch (kind) {
    case vismap::ErrorKind::Config: return VISMAP_ERR_CONFIG;
    case vismap::ErrorKind::Parse: return VISMAP_ERR_PARSE;
    case vismap::ErrorKind::Compute: return VISMAP_ERR_COMPUTE;
    case vismap::ErrorKind::Io: return VISMAP_ERR_IO;
  }
  return VISMAP_ERR_INTERNAL;
}

template <class Fn>
vismap_status guarded(Fn&& fn) {
  last_error.clear();
  try {
    fn();
    return VISMAP_OK;
  } catch (const vismap::Error& e) {
    last_error = e.what();
    return status_of(e.kind());
  } catch (const std::filesystem::filesystem_error& e) {
    last_error = e.what();
    return VISMAP_ERR_IO;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
  } catch (const std::exception& e) {
    last_error = e.what();
  } catch (...) {
    last_error = "unknown error";
  }
  return VISMAP_ERR_INTERNAL;
}

void require(const void* p, const char* what) {
  if (!p) throw std::invalid_argument(std::string(what) + " must not be NULL");
}

void copy_mask(const vismap::Mask& m, uint8_t* out, size_t len) {
  require(out, "output buffer");
  if (len < m.size()) throw std::invalid_argument("output buffer too small");
  std::copy(m.values().begin(), m.values().end(), out);
}

void fill_summary(const vismap::VisMapResult& m, int nx, int ny, vismap_run_summary* s) {
  s->nx = nx;
  s->ny = ny;
  s->waypoints = static_cast<int>(m.geometry.size());
  s->times = static_cast<int>(m.times.size());
  s->geometry_evaluations = m.geometry_evaluations;
  s->pair_evaluations = m.pair_evaluations;
  s->passable_cells = 0;
  for (auto v : m.aggregate.values()) s->passable_cells += v;
}

}  // namespace

extern "C" {

const char* vismap_version(void) { return "1.0.0"; }

const char* vismap_last_error(void) { return last_error.c_str(); }

const char* vismap_status_name(vismap_status status) {
  switch (status) {
    case VISMAP_OK: return "ok";
    case VISMAP_ERR_INTERNAL: return "internal error";
    case VISMAP_ERR_CONFIG: return "configuration error";
    case VISMAP_ERR_PARSE: return "parse error";
    case VISMAP_ERR_COMPUTE: return "compute error";
    case VISMAP_ERR_IO: return "I/O error";
  }
  return "unknown status";
}

vismap_params vismap_default_params(void) {
  vismap_params p;
  p.vmax = vismap::VisParams{}.v_max;
  p.thickness = vismap::OcclusionParams{}.thickness;
  p.every_cell = 0;
  p.workers = 0;
  return p;
}

vismap_status vismap_config_load(const char* path, vismap_config** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = nullptr;
    auto cfg = std::make_unique<vismap_config>();
    cfg->config = vismap::load_config(path);
    *out = cfg.release();
  });
}

vismap_status vismap_config_parse(const char* json_text, const char* base_dir, vismap_config** out) {
  return guarded([&] {
    require(json_text, "json_text");
    require(out, "out");
    *out = nullptr;
    auto cfg = std::make_unique<vismap_config>();
    cfg->config = vismap::parse_config(json_text, base_dir ? std::filesystem::path(base_dir) : std::filesystem::path());
    *out = cfg.release();
  });
}

vismap_status vismap_config_set(vismap_config* config, const char* key, const char* value) {
  return guarded([&] {
    require(config, "config");
    require(key, "key");
    require(value, "value");
    vismap::apply_override(config->config, key, value);
  });
}

void vismap_config_free(vismap_config* config) { delete config; }

vismap_status vismap_run(const vismap_config* config, vismap_run_summary* summary) {
  return guarded([&] {
    require(config, "config");
    auto r = vismap::run(config->config);
    if (summary) fill_summary(r.maps, r.nx, r.ny, summary);
  });
}

vismap_status vismap_dataset_open(const char* input, const char* quantity, double eval_height, vismap_dataset** out) {
  return guarded([&] {
    require(input, "input");
    require(out, "out");
    *out = nullptr;
    vismap::RunConfig c;
    c.input = input;
    if (quantity) c.quantity = quantity;
    c.eval_height = eval_height;
    auto ds = std::make_unique<vismap_dataset>();
    ds->data = vismap::load_dataset(c);
    *out = ds.release();
  });
}

vismap_status vismap_dataset_open_portable(const char* scene_path, const char* field_path, vismap_dataset** out) {
  return guarded([&] {
    require(scene_path, "scene_path");
    require(field_path, "field_path");
    require(out, "out");
    *out = nullptr;
    vismap::RunConfig c;
    c.scene_file = scene_path;
    c.field_file = field_path;
    auto ds = std::make_unique<vismap_dataset>();
    ds->data = vismap::load_dataset(c);
    *out = ds.release();
  });
}

vismap_status vismap_dataset_shape(const vismap_dataset* ds, int* nx, int* ny, double* origin_x, double* origin_y,
                                   double* cell_size) {
  return guarded([&] {
    require(ds, "dataset");
    const auto& s = ds->data.scene;
    if (nx) *nx = s.nx;
    if (ny) *ny = s.ny;
    if (origin_x) *origin_x = s.origin_x;
    if (origin_y) *origin_y = s.origin_y;
    if (cell_size) *cell_size = s.cell_size;
  });
}

vismap_status vismap_dataset_frame_count(const vismap_dataset* ds, size_t* count) {
  return guarded([&] {
    require(ds, "dataset");
    require(count, "count");
    *count = ds->data.field.frame_count();
  });
}

vismap_status vismap_dataset_frame_time(const vismap_dataset* ds, size_t frame, double* time) {
  return guarded([&] {
    require(ds, "dataset");
    require(time, "time");
    if (frame >= ds->data.field.times.size()) throw vismap::ConfigError("frame index out of range");
    *time = ds->data.field.times[frame];
  });
}

vismap_status vismap_dataset_obstructions(const vismap_dataset* ds, uint8_t* mask, size_t len) {
  return guarded([&] {
    require(ds, "dataset");
    copy_mask(ds->data.scene.obstructed, mask, len);
  });
}

vismap_status vismap_dataset_write_portable(const vismap_dataset* ds, const char* dir) {
  return guarded([&] {
    require(ds, "dataset");
    require(dir, "dir");
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw vismap::IoError(std::string("cannot create '") + dir + "': " + ec.message());
    const std::filesystem::path d(dir);
    const auto scene = vismap::fds::write_portable_scene(ds->data.scene);
    vismap::write_bytes(d / "scene.txt", std::vector<std::uint8_t>(scene.begin(), scene.end()));
    const auto field = vismap::fds::write_portable_field(ds->data.field);
    std::vector<std::uint8_t> bytes(field.size());
    if (!field.empty()) std::memcpy(bytes.data(), field.data(), field.size());
    vismap::write_bytes(d / "field.bin", bytes);
  });
}

void vismap_dataset_free(vismap_dataset* ds) { delete ds; }

vismap_status vismap_compute(const vismap_dataset* ds, const vismap_waypoint* waypoints, size_t n_waypoints,
                             const double* times, size_t n_times, const vismap_params* params, vismap_result** out) {
  return guarded([&] {
    require(ds, "dataset");
    require(out, "out");
    *out = nullptr;
    if (n_waypoints > 0) require(waypoints, "waypoints");
    if (n_times > 0) require(times, "times");
    std::vector<vismap::Waypoint> wps;
    for (size_t k = 0; k < n_waypoints; ++k)
      wps.push_back({static_cast<int>(k + 1), waypoints[k].x, waypoints[k].y, waypoints[k].c, waypoints[k].alpha});
    const vismap_params p = params ? *params : vismap_default_params();
    vismap::ComputeOptions opts;
    opts.vis.v_max = p.vmax;
    opts.occlusion.thickness = p.thickness;
    opts.occlusion.targets = p.every_cell ? vismap::RayTargets::EveryCell : vismap::RayTargets::EdgeCells;
    opts.workers = p.workers;
    if (!(opts.occlusion.thickness >= 1.0)) throw vismap::ConfigError("ray thickness must be at least one cell");
    if (p.workers < 0) throw vismap::ConfigError("worker count must be non-negative");
    std::vector<double> ts(times, times + n_times);
    for (size_t t = 1; t < ts.size(); ++t)
      if (!(ts[t] >= ts[t - 1])) throw vismap::ConfigError("evaluation times must be sorted ascending");
    auto r = std::make_unique<vismap_result>();
    r->maps = vismap::compute_maps(ds->data.scene, ds->data.field, wps, ts, std::nullopt, opts);
    r->nx = ds->data.scene.nx;
    r->ny = ds->data.scene.ny;
    *out = r.release();
  });
}

vismap_status vismap_result_summary(const vismap_result* r, vismap_run_summary* summary) {
  return guarded([&] {
    require(r, "result");
    require(summary, "summary");
    fill_summary(r->maps, r->nx, r->ny, summary);
  });
}

vismap_status vismap_result_aggregate(const vismap_result* r, uint8_t* map, size_t len) {
  return guarded([&] {
    require(r, "result");
    copy_mask(r->maps.aggregate, map, len);
  });
}

vismap_status vismap_result_time_map(const vismap_result* r, size_t t, uint8_t* map, size_t len) {
  return guarded([&] {
    require(r, "result");
    if (t >= r->maps.time_maps.size()) throw vismap::ConfigError("time index out of range");
    copy_mask(r->maps.time_maps[t], map, len);
  });
}

vismap_status vismap_result_aset(const vismap_result* r, double* aset, size_t len) {
  return guarded([&] {
    require(r, "result");
    require(aset, "output buffer");
    if (len < r->maps.aset.size()) throw std::invalid_argument("output buffer too small");
    std::copy(r->maps.aset.values().begin(), r->maps.aset.values().end(), aset);
  });
}

void vismap_result_free(vismap_result* r) { delete r; }

}  // extern "C"
