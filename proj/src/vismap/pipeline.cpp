// Copyright 2026 The vismap Authors
// SPDX-License-Identifier: Apache-2.0

#include "vismap/pipeline.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <atomic>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "vismap/error.hpp"
#include "vismap/fds_io.hpp"
#include "vismap/scene_assembly.hpp"

namespace vismap {

using nlohmann::json;
namespace fsys = std::filesystem;

// ---------------------------------------------------------------------------
// configuration

void RunConfig::validate() const {
  if (waypoints.empty()) throw ConfigError("at least one waypoint is required");
  if (times.empty()) throw ConfigError("at least one evaluation time is required");
  for (std::size_t n = 1; n < times.size(); ++n)
    if (!(times[n] >= times[n - 1])) throw ConfigError("evaluation times must be sorted ascending");
  for (double t : times)
    if (!std::isfinite(t)) throw ConfigError("evaluation times must be finite");
  if (time_tolerance && !(*time_tolerance >= 0.0)) throw ConfigError("time tolerance must be non-negative");
  vis.validate();
  if (!(occlusion.thickness >= 1.0) || !std::isfinite(occlusion.thickness))
    throw ConfigError("ray thickness must be at least one cell");
  if (!std::isfinite(eval_height)) throw ConfigError("evaluation height must be finite");
  if (!(mass_extinction > 0.0)) throw ConfigError("mass extinction coefficient must be positive");
  if (input.empty() && (scene_file.empty() || field_file.empty()))
    throw ConfigError("no input given: set 'input' or both 'scene' and 'field'");
  if (out_dir.empty()) throw ConfigError("output directory must not be empty");
  if (workers < 0) throw ConfigError("worker count must be non-negative");
  style.validate();
  for (const auto& wp : waypoints)
    if (!(wp.visibility_factor > 0.0)) throw ConfigError("waypoint " + std::to_string(wp.id) + ": C must be positive");
}

namespace {

double parse_double(std::string_view s, std::string_view what) {
  std::string str(s);
  char* end = nullptr;
  const double v = std::strtod(str.c_str(), &end);
  if (str.empty() || end != str.c_str() + str.size())
    throw ConfigError(std::string(what) + ": '" + str + "' is not a number");
  return v;
}

fsys::path resolve(const fsys::path& base, const std::string& p) {
  fsys::path path(p);
  if (path.is_relative() && !base.empty()) path = base / path;
  return path;
}

template <class T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config key '") + key + "': " + e.what());
  }
}

std::vector<double> times_from_range(double start, double stop, double step) {
  if (!(step > 0.0)) throw ConfigError("time range step must be positive");
  if (stop < start) throw ConfigError("time range stop precedes start");
  std::vector<double> out;
  const auto n = static_cast<long long>(std::floor((stop - start) / step + 1e-9));
  for (long long k = 0; k <= n; ++k) out.push_back(start + static_cast<double>(k) * step);
  return out;
}

}  // namespace

std::vector<double> parse_times(std::string_view spec) {
  std::string s(spec);
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
  if (s.empty()) throw ConfigError("empty time specification");
  if (s.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
    if (parts.size() != 3) throw ConfigError("time range must be 'start:stop:step'");
    return times_from_range(parse_double(parts[0], "times"), parse_double(parts[1], "times"),
                            parse_double(parts[2], "times"));
  }
  std::vector<double> out;
  std::stringstream ss(s);
  for (std::string p; std::getline(ss, p, ',');) out.push_back(parse_double(p, "times"));
  return out;
}

RunConfig parse_config(std::string_view json_text, const fsys::path& base_dir) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");

  RunConfig c;
  if (j.contains("input")) c.input = resolve(base_dir, get_or<std::string>(j, "input", ""));
  if (j.contains("scene")) c.scene_file = resolve(base_dir, get_or<std::string>(j, "scene", ""));
  if (j.contains("field")) c.field_file = resolve(base_dir, get_or<std::string>(j, "field", ""));
  c.quantity = get_or<std::string>(j, "quantity", c.quantity);
  const auto kind = get_or<std::string>(j, "field_kind", "extinction");
  if (kind == "extinction")
    c.field_kind = FieldKind::Extinction;
  else if (kind == "density")
    c.field_kind = FieldKind::Density;
  else
    throw ConfigError("field_kind must be 'extinction' or 'density'");
  c.mass_extinction = get_or<double>(j, "mass_extinction", c.mass_extinction);
  c.eval_height = get_or<double>(j, "eval_height", c.eval_height);
  c.vis.v_max = get_or<double>(j, "vmax", c.vis.v_max);
  c.vis.zero_sigma_epsilon = get_or<double>(j, "zero_sigma_epsilon", c.vis.zero_sigma_epsilon);
  c.occlusion.thickness = get_or<double>(j, "thickness", c.occlusion.thickness);
  const auto rays = get_or<std::string>(j, "ray_targets", "edge");
  if (rays == "edge")
    c.occlusion.targets = RayTargets::EdgeCells;
  else if (rays == "every")
    c.occlusion.targets = RayTargets::EveryCell;
  else
    throw ConfigError("ray_targets must be 'edge' or 'every'");
  c.workers = get_or<int>(j, "workers", 0);
  if (j.contains("out")) c.out_dir = resolve(base_dir, get_or<std::string>(j, "out", ""));
  if (j.contains("time_tolerance")) c.time_tolerance = get_or<double>(j, "time_tolerance", 0.0);

  if (j.contains("times")) {
    const auto& t = j.at("times");
    if (t.is_array()) {
      for (const auto& v : t) {
        if (!v.is_number()) throw ConfigError("times must contain numbers");
        c.times.push_back(v.get<double>());
      }
    } else if (t.is_object()) {
      c.times = times_from_range(get_or<double>(t, "start", 0.0), get_or<double>(t, "stop", 0.0),
                                 get_or<double>(t, "step", 1.0));
    } else if (t.is_string()) {
      c.times = parse_times(t.get<std::string>());
    } else if (t.is_number()) {
      c.times.push_back(t.get<double>());
    } else {
      throw ConfigError("times must be a list, a range object or a string");
    }
  }

  if (j.contains("waypoints")) {
    const auto& w = j.at("waypoints");
    if (!w.is_array()) throw ConfigError("waypoints must be a list");
    int next_id = 1;
    for (const auto& e : w) {
      Waypoint wp;
      if (e.is_array()) {
        if (e.size() != 4) throw ConfigError("waypoint arrays must be [x, y, C, alpha]");
        wp.x = e[0].get<double>();
        wp.y = e[1].get<double>();
        wp.visibility_factor = e[2].get<double>();
        wp.alpha_deg = e[3].get<double>();
        wp.id = next_id;
      } else if (e.is_object()) {
        if (!e.contains("x") || !e.contains("y")) throw ConfigError("waypoint needs x and y");
        wp.id = get_or<int>(e, "id", next_id);
        wp.x = get_or<double>(e, "x", 0.0);
        wp.y = get_or<double>(e, "y", 0.0);
        wp.visibility_factor = get_or<double>(e, "c", 3.0);
        wp.alpha_deg = get_or<double>(e, "alpha", 0.0);
      } else {
        throw ConfigError("waypoint entries must be objects or [x, y, C, alpha] arrays");
      }
      next_id = wp.id + 1;
      c.waypoints.push_back(wp);
    }
  }

  if (j.contains("start_point")) {
    const auto& s = j.at("start_point");
    if (!s.is_array() || s.size() != 2) throw ConfigError("start_point must be [x, y]");
    c.start_point = std::array<double, 2>{s[0].get<double>(), s[1].get<double>()};
  }

  if (j.contains("outputs")) {
    const auto& o = j.at("outputs");
    c.outputs.waypoint_fields = get_or<bool>(o, "waypoint_fields", c.outputs.waypoint_fields);
    c.outputs.time_maps = get_or<bool>(o, "time_maps", c.outputs.time_maps);
    c.outputs.aggregate = get_or<bool>(o, "aggregate", c.outputs.aggregate);
    c.outputs.aset = get_or<bool>(o, "aset", c.outputs.aset);
    c.outputs.png = get_or<bool>(o, "png", c.outputs.png);
  }

  if (j.contains("background")) {
    c.background = resolve(base_dir, get_or<std::string>(j, "background", ""));
    c.background_alpha = get_or<double>(j, "background_alpha", c.background_alpha);
  }
  if (j.contains("colormap")) c.style.colormap = get_or<std::string>(j, "colormap", c.style.colormap);
  return c;
}

RunConfig load_config(const fsys::path& path) {
  std::string text;
  try {
    text = fds::read_file_text(path);
  } catch (const IoError& e) {
    throw ConfigError(e.what());
  }
  return parse_config(text, path.parent_path());
}

void apply_override(RunConfig& c, std::string_view key, std::string_view value) {
  const std::string v(value);
  if (key == "input") {
    c.input = v;
    c.scene_file.clear();
    c.field_file.clear();
  } else if (key == "out") {
    c.out_dir = v;
  } else if (key == "times") {
    c.times = parse_times(value);
  } else if (key == "vmax") {
    c.vis.v_max = parse_double(value, "--vmax");
  } else if (key == "thickness") {
    c.occlusion.thickness = parse_double(value, "--thickness");
  } else if (key == "quantity") {
    c.quantity = v;
  } else if (key == "height") {
    c.eval_height = parse_double(value, "--height");
  } else {
    throw ConfigError("unknown override '" + std::string(key) + "'");
  }
}

// ---------------------------------------------------------------------------
// input loading

namespace {

double density_unit_scale(const std::string& units) {
  std::string u;
  for (char ch : units)
    if (!std::isspace(static_cast<unsigned char>(ch))) u += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  if (u == "mg/m3" || u == "mg/m^3") return 1e-6;
  return 1.0;
}

fsys::path find_smv(const fsys::path& input) {
  if (fsys::is_regular_file(input)) return input;
  std::vector<fsys::path> found;
  for (const auto& e : fsys::directory_iterator(input))
    if (e.is_regular_file() && e.path().extension() == ".smv") found.push_back(e.path());
  if (found.size() != 1)
    throw ConfigError("expected exactly one .smv file in '" + input.string() + "', found " +
                      std::to_string(found.size()));
  return found.front();
}

Dataset load_fds(const RunConfig& c, const fsys::path& smv_path) {
  Dataset ds;
  ds.from_fds = true;
  ds.sources.push_back(smv_path);
  const auto smv = fds::parse_smv(fds::read_file_text(smv_path));
  ds.scene = assemble_scene(smv, c.eval_height);

  const auto candidates = fds::find_slices(smv, c.quantity);
  if (candidates.empty()) throw ConfigError("no slice with quantity '" + c.quantity + "' in " + smv_path.string());

  std::vector<MeshSlice> chosen;
  double scale = 1.0;
  for (const auto& place : ds.scene.meshes) {
    const auto& mesh = smv.meshes[static_cast<std::size_t>(place.mesh_index)];
    const double dz = (mesh.z.back() - mesh.z.front()) / mesh.nz;
    const fds::SliceRef* best = nullptr;
    double best_dist = 0.0;
    std::optional<fds::SliceData> best_data;
    for (const auto* ref : candidates) {
      if (ref->mesh != place.mesh_index) continue;
      if (ref->bounds && (*ref->bounds)[4] != (*ref->bounds)[5]) continue;
      auto data = fds::read_slice_file(smv_path.parent_path() / ref->file);
      if (!data.header.horizontal()) continue;
      const int k = std::clamp(data.header.bounds[4], 0, mesh.nz);
      double z = mesh.z[static_cast<std::size_t>(k)];
      if (ref->cell_centered && k > 0) z = 0.5 * (mesh.z[static_cast<std::size_t>(k - 1)] + mesh.z[static_cast<std::size_t>(k)]);
      const double dist = std::abs(z - c.eval_height);
      if (dist > dz + 1e-9) continue;
      if (!best || dist < best_dist) {
        best = ref;
        best_dist = dist;
        best_data = std::move(data);
      }
    }
    if (!best) continue;  // reported by stitch_field
    ds.sources.push_back(smv_path.parent_path() / best->file);
    ds.dropped_frames += best_data->dropped_frames;
    scale = density_unit_scale(best->units);
    chosen.push_back({place.mesh_index, std::move(*best_data)});
  }
  ds.field = stitch_field(ds.scene, chosen);
  if (c.field_kind == FieldKind::Density && scale != 1.0) {
    for (auto& f : ds.field.frames)
      for (auto& v : f.values()) v = static_cast<float>(v * scale);
  }
  return ds;
}

Dataset load_portable(const RunConfig& c, const fsys::path& scene_path, const fsys::path& field_path) {
  Dataset ds;
  ds.sources = {scene_path, field_path};
  ds.scene = fds::parse_portable_scene(fds::read_file_text(scene_path), c.eval_height);
  ds.field = fds::parse_portable_field(fds::read_file_bytes(field_path), ds.scene.nx, ds.scene.ny);
  return ds;
}

}  // namespace

Dataset load_dataset(const RunConfig& c) {
  Dataset ds;
  if (!c.scene_file.empty() && !c.field_file.empty()) {
    ds = load_portable(c, c.scene_file, c.field_file);
  } else {
    if (!fsys::exists(c.input)) throw ConfigError("input '" + c.input.string() + "' does not exist");
    if (fsys::is_directory(c.input) && fsys::exists(c.input / "scene.txt") && fsys::exists(c.input / "field.bin"))
      ds = load_portable(c, c.input / "scene.txt", c.input / "field.bin");
    else
      ds = load_fds(c, find_smv(c.input));
  }
  ds.scene.validate();
  ds.field.mass_extinction = c.mass_extinction;
  if (c.field_kind == FieldKind::Density)
    for (auto& f : ds.field.frames) f = sigma_from_density(f, c.mass_extinction);
  ds.field.validate(ds.scene);
  if (ds.field.frames.empty()) throw ParseError("input contains no complete field frames");
  return ds;
}

// ---------------------------------------------------------------------------
// compute

double default_time_tolerance(const FieldSeries& field) {
  if (field.times.size() < 2) return 1e-6;
  return 0.5 * (field.times.back() - field.times.front()) / static_cast<double>(field.times.size() - 1) + 1e-6;
}

std::vector<std::size_t> select_frames(const FieldSeries& field, std::span<const double> times, double tolerance) {
  if (field.times.empty()) throw ConfigError("field has no frames to select from");
  const auto& ft = field.times;
  std::vector<std::size_t> out;
  out.reserve(times.size());
  for (double t : times) {
    if (t < ft.front() - tolerance || t > ft.back() + tolerance) {
      std::ostringstream os;
      os << "requested time " << t << " s is outside the field's range [" << ft.front() << ", " << ft.back()
         << "] s (tolerance " << tolerance << " s)";
      throw ConfigError(os.str());
    }
    auto it = std::lower_bound(ft.begin(), ft.end(), t);
    std::size_t k;
    if (it == ft.begin()) {
      k = 0;
    } else if (it == ft.end()) {
      k = ft.size() - 1;
    } else {
      k = static_cast<std::size_t>(it - ft.begin());
      if (t - ft[k - 1] <= ft[k] - t) --k;
    }
    out.push_back(k);
  }
  return out;
}

namespace {

// Runs fn(0..n-1) on a bounded pool; rethrows the first failure.
template <class Fn>
void parallel_for(std::size_t n, int workers, Fn&& fn) {
  std::size_t pool = workers > 0 ? static_cast<std::size_t>(workers)
                                 : std::max<std::size_t>(1, std::thread::hardware_concurrency());
  pool = std::min(pool, n);
  if (pool <= 1) {
    for (std::size_t k = 0; k < n; ++k) fn(k);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> threads;
    for (std::size_t w = 0; w < pool; ++w) {
      threads.emplace_back([&] {
        for (std::size_t k; (k = next.fetch_add(1)) < n;) {
          try {
            fn(k);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            next = n;
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

VisMapResult compute_maps(const SceneDescription& scene, const FieldSeries& field, std::span<const Waypoint> waypoints,
                          std::span<const double> times, std::optional<double> time_tolerance,
                          const ComputeOptions& options) {
  options.vis.validate();
  if (waypoints.empty()) throw ConfigError("at least one waypoint is required");
  if (times.empty()) throw ConfigError("at least one evaluation time is required");
  for (const auto& wp : waypoints) validate_waypoint(scene, wp);

  VisMapResult r;
  r.v_max = options.vis.v_max;
  r.times.assign(times.begin(), times.end());
  r.frame_index = select_frames(field, times, time_tolerance.value_or(default_time_tolerance(field)));

  const std::size_t nk = waypoints.size(), nt = times.size();
  std::atomic<std::uint64_t> geometry_count{0}, pair_count{0};
  r.geometry.resize(nk);
  parallel_for(nk, options.workers, [&](std::size_t k) {
    r.geometry[k] = compute_waypoint_fields(scene, waypoints[k], options.vis, options.occlusion);
    ++geometry_count;
  });

  r.waypoint_maps.assign(nk, std::vector<Mask>(nt));
  if (options.keep_visibility) r.visibility.assign(nk, std::vector<Raster<double>>(nt));
  parallel_for(nk * nt, options.workers, [&](std::size_t pair) {
    const std::size_t k = pair / nt, t = pair % nt;
    const auto& frame = field.frames[r.frame_index[t]];
    auto v = waypoint_visibility(frame, r.geometry[k], waypoints[k].visibility_factor, options.vis);
    r.waypoint_maps[k][t] = waypoint_map(v, r.geometry[k].distance, scene.obstructed);
    if (options.keep_visibility) r.visibility[k][t] = std::move(v);
    ++pair_count;
  });

  r.time_maps.resize(nt);
  for (std::size_t t = 0; t < nt; ++t) {
    std::vector<Mask> per_k;
    per_k.reserve(nk);
    for (std::size_t k = 0; k < nk; ++k) per_k.push_back(r.waypoint_maps[k][t]);
    r.time_maps[t] = combine_waypoints(per_k);
  }
  r.aggregate = aggregate_time(r.time_maps);
  r.aset = aset_map(r.time_maps, r.times);
  r.geometry_evaluations = geometry_count;
  r.pair_evaluations = pair_count;
  return r;
}

// ---------------------------------------------------------------------------
// run

std::string sha256_hex(std::span<const std::uint8_t> bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr))
    throw ComputeError("SHA-256 computation failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int n = 0; n < len; ++n) {
    out += hex[digest[n] >> 4];
    out += hex[digest[n] & 0xF];
  }
  return out;
}

std::string sha256_file(const fsys::path& path) {
  auto bytes = fds::read_file_bytes(path);
  return sha256_hex({reinterpret_cast<const std::uint8_t*>(bytes.data()), bytes.size()});
}

namespace {

std::string time_tag(double t) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%g", t);
  return buf;
}

class OutputWriter {
 public:
  OutputWriter(fsys::path dir, std::vector<OutputRecord>& records) : dir_(std::move(dir)), records_(records) {}

  void bytes(const std::string& name, const std::vector<std::uint8_t>& data) {
    write_bytes(dir_ / name, data);
    records_.push_back({name, sha256_hex(data)});
  }
  void text(const std::string& name, const std::string& data) {
    bytes(name, std::vector<std::uint8_t>(data.begin(), data.end()));
  }
  void image(const std::string& stem, const Image& img, bool png) {
    bytes(stem + ".pgm", encode_pgm(img));
    if (png) bytes(stem + ".png", encode_png(img));
  }

 private:
  fsys::path dir_;
  std::vector<OutputRecord>& records_;
};

}  // namespace

RunResult run(const RunConfig& config) {
  config.validate();
  if (config.outputs.png && !png_supported()) throw ConfigError("PNG output requested but this build has no PNG support");
  Dataset ds = load_dataset(config);

  ComputeOptions opts;
  opts.vis = config.vis;
  opts.occlusion = config.occlusion;
  opts.workers = config.workers;
  opts.keep_visibility = config.outputs.waypoint_fields;
  RunResult result;
  result.maps = compute_maps(ds.scene, ds.field, config.waypoints, config.times, config.time_tolerance, opts);
  result.nx = ds.scene.nx;
  result.ny = ds.scene.ny;
  const auto& m = result.maps;

  std::error_code ec;
  fsys::create_directories(config.out_dir, ec);
  if (ec) throw IoError("cannot create output directory '" + config.out_dir.string() + "': " + ec.message());

  std::optional<Image> background;
  if (!config.background.empty()) background = read_image(config.background);
  auto decorate = [&](Image img) {
    return background ? composite_over(*background, img, config.background_alpha) : img;
  };

  OutputWriter out(config.out_dir, result.outputs);
  if (config.outputs.aggregate)
    out.image("vismap_aggregate", decorate(render_states(tri_state(m.aggregate, ds.scene.obstructed), config.style)),
              config.outputs.png);
  if (config.outputs.time_maps)
    for (std::size_t t = 0; t < m.times.size(); ++t)
      out.image("vismap_t" + time_tag(m.times[t]),
                decorate(render_states(tri_state(m.time_maps[t], ds.scene.obstructed), config.style)),
                config.outputs.png);
  if (config.outputs.aset) {
    out.text("aset.csv", aset_csv(ds.scene, m.aset, ds.scene.obstructed));
    out.image("aset", decorate(render_field(m.aset, ds.scene.obstructed, m.times.front(), m.times.back(), config.style)),
              config.outputs.png);
  }
  if (config.outputs.waypoint_fields)
    for (std::size_t k = 0; k < config.waypoints.size(); ++k)
      for (std::size_t t = 0; t < m.times.size(); ++t)
        out.text("visibility_wp" + std::to_string(config.waypoints[k].id) + "_t" + time_tag(m.times[t]) + ".csv",
                 field_csv(ds.scene, m.visibility[k][t]));

  json manifest;
  manifest["tool"] = "vismap";
  json inputs = json::array();
  for (const auto& s : ds.sources) inputs.push_back({{"path", s.string()}, {"sha256", sha256_file(s)}});
  manifest["inputs"] = {{"kind", ds.from_fds ? "fds" : "portable"},
                        {"files", inputs},
                        {"dropped_frames", ds.dropped_frames},
                        {"grid",
                         {{"nx", ds.scene.nx},
                          {"ny", ds.scene.ny},
                          {"origin", {ds.scene.origin_x, ds.scene.origin_y}},
                          {"cell_size", ds.scene.cell_size}}}};
  json wps = json::array();
  for (const auto& w : config.waypoints)
    wps.push_back({{"id", w.id}, {"x", w.x}, {"y", w.y}, {"c", w.visibility_factor}, {"alpha", w.alpha_deg}});
  manifest["parameters"] = {
      {"quantity", config.quantity},
      {"field_kind", config.field_kind == FieldKind::Density ? "density" : "extinction"},
      {"mass_extinction", config.mass_extinction},
      {"eval_height", config.eval_height},
      {"vmax", config.vis.v_max},
      {"zero_sigma_epsilon", config.vis.zero_sigma_epsilon},
      {"thickness", config.occlusion.thickness},
      {"ray_targets", config.occlusion.targets == RayTargets::EveryCell ? "every" : "edge"},
      {"time_tolerance", config.time_tolerance.value_or(default_time_tolerance(ds.field))},
      {"waypoints", wps},
      {"start_point", config.start_point ? json{(*config.start_point)[0], (*config.start_point)[1]} : json(nullptr)}};
  json frames = json::array();
  for (std::size_t t = 0; t < m.times.size(); ++t)
    frames.push_back({{"requested", m.times[t]},
                      {"frame", m.frame_index[t]},
                      {"frame_time", ds.field.times[m.frame_index[t]]}});
  manifest["frames"] = frames;
  manifest["counters"] = {{"geometry_evaluations", m.geometry_evaluations},
                          {"pair_evaluations", m.pair_evaluations}};
  std::size_t passable = 0;
  for (auto v : m.aggregate.values()) passable += v;
  manifest["summary"] = {{"passable_cells", passable}};
  json outs = json::array();
  for (const auto& o : result.outputs) outs.push_back({{"file", o.file}, {"sha256", o.sha256}});
  manifest["outputs"] = outs;

  result.manifest = config.out_dir / "manifest.json";
  const auto text = manifest.dump(2) + "\n";
  write_bytes(result.manifest, std::vector<std::uint8_t>(text.begin(), text.end()));
  return result;
}

}  // namespace vismap
