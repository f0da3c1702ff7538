// Copyright 2026 The vismap Authors
// SPDX-License-Identifier: Apache-2.0

// Test-only writers and reference oracles. Nothing here calls into the
// library code paths it is used to check.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "vismap/fds_io.hpp"
#include "vismap/grid.hpp"

namespace fixtures {

// ---------------------------------------------------------------------------
// .sf writer

inline void put_u32(std::vector<std::byte>& out, std::uint32_t v, bool big) {
  unsigned char b[4];
  for (int n = 0; n < 4; ++n) b[n] = static_cast<unsigned char>(v >> (8 * (big ? 3 - n : n)));
  for (auto c : b) out.push_back(static_cast<std::byte>(c));
}

inline void put_record(std::vector<std::byte>& out, const std::vector<std::byte>& payload, bool big) {
  put_u32(out, static_cast<std::uint32_t>(payload.size()), big);
  out.insert(out.end(), payload.begin(), payload.end());
  put_u32(out, static_cast<std::uint32_t>(payload.size()), big);
}

inline std::vector<std::byte> label(const std::string& s) {
  std::string padded = s;
  padded.resize(30, ' ');
  std::vector<std::byte> out(30);
  std::memcpy(out.data(), padded.data(), 30);
  return out;
}

inline std::vector<std::byte> floats(const std::vector<float>& v, bool big) {
  std::vector<std::byte> out;
  for (float f : v) {
    std::uint32_t u;
    std::memcpy(&u, &f, 4);
    put_u32(out, u, big);
  }
  return out;
}

struct SfFrame {
  float time;
  std::vector<float> values;
};

inline std::vector<std::byte> write_sf(const std::string& quantity, const std::string& short_name,
                                       const std::string& units, std::array<int, 6> bounds,
                                       const std::vector<SfFrame>& frames, bool big = false) {
  std::vector<std::byte> out;
  put_record(out, label(quantity), big);
  put_record(out, label(short_name), big);
  put_record(out, label(units), big);
  std::vector<std::byte> b;
  for (int v : bounds) put_u32(b, static_cast<std::uint32_t>(v), big);
  put_record(out, b, big);
  for (const auto& f : frames) {
    put_record(out, floats({f.time}, big), big);
    put_record(out, floats(f.values, big), big);
  }
  return out;
}

inline std::vector<std::byte> to_bytes(const std::string& s) {
  std::vector<std::byte> out(s.size());
  std::memcpy(out.data(), s.data(), s.size());
  return out;
}

inline void save(const std::filesystem::path& p, const std::vector<std::byte>& bytes) {
  std::ofstream out(p, std::ios::binary);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

inline void save(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

// ---------------------------------------------------------------------------
// .smv writer

struct MeshSpec {
  std::string name;
  double x0, y0, z0;
  int nx, ny, nz;
  double d;  // cubic cells
};

struct ObstSpec {
  double x0, x1, y0, y1, z0, z1;
};

struct SliceSpec {
  std::string file;
  int mesh;  // 1-based
  std::array<int, 6> bounds;
  std::string quantity = "EXTINCTION COEFFICIENT";
  bool cell_centered = false;
};

inline std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%14.5f", v);
  return buf;
}

inline int node_of(double origin, double d, int n, double v) {
  int k = static_cast<int>(std::lround((v - origin) / d));
  return std::clamp(k, 0, n);
}

/// Writes a Smokeview index in FDS layout. Each obstruction is clipped into
/// every mesh it overlaps.
inline std::string write_smv(const std::vector<MeshSpec>& meshes, const std::vector<ObstSpec>& obst,
                             const std::vector<SliceSpec>& slices, bool slices_first = false) {
  std::ostringstream os;
  os << "TITLE\n fixture\n\nVERSION\n 6.9.1\n\nNMESHES\n " << meshes.size() << "\n\n";
  auto slice_text = [&] {
    std::ostringstream ss;
    for (const auto& s : slices) {
      ss << (s.cell_centered ? "SLCC" : "SLCF") << "     " << s.mesh << " # STRUCTURED &";
      for (int b : s.bounds) ss << ' ' << b;
      ss << " !      1\n " << s.file << "\n " << s.quantity << "\n ext_coef\n 1/m\n";
    }
    return ss.str();
  };
  if (slices_first) os << slice_text();
  for (std::size_t m = 0; m < meshes.size(); ++m) {
    const auto& me = meshes[m];
    os << "GRID  " << me.name << "\n" << "    " << me.nx << "    " << me.ny << "    " << me.nz << "    0\n\n";
    os << "PDIM\n" << fmt(me.x0) << fmt(me.x0 + me.nx * me.d) << fmt(me.y0) << fmt(me.y0 + me.ny * me.d)
       << fmt(me.z0) << fmt(me.z0 + me.nz * me.d) << "  0.0  0.0  0.0\n\n";
    const char* names[3] = {"TRNX", "TRNY", "TRNZ"};
    const double origins[3] = {me.x0, me.y0, me.z0};
    const int counts[3] = {me.nx, me.ny, me.nz};
    for (int a = 0; a < 3; ++a) {
      os << names[a] << "\n     0\n";
      for (int k = 0; k <= counts[a]; ++k) os << "  " << k << fmt(origins[a] + k * me.d) << "\n";
      os << "\n";
    }
    std::vector<ObstSpec> mine;
    for (const auto& o : obst) {
      const double ex = me.x0 + me.nx * me.d, ey = me.y0 + me.ny * me.d, ez = me.z0 + me.nz * me.d;
      ObstSpec c{std::max(o.x0, me.x0), std::min(o.x1, ex), std::max(o.y0, me.y0),
                 std::min(o.y1, ey),    std::max(o.z0, me.z0), std::min(o.z1, ez)};
      if (c.x1 > c.x0 && c.y1 > c.y0 && c.z1 > c.z0) mine.push_back(c);
    }
    os << "OBST\n  " << mine.size() << "\n";
    for (const auto& o : mine)
      os << fmt(o.x0) << fmt(o.x1) << fmt(o.y0) << fmt(o.y1) << fmt(o.z0) << fmt(o.z1)
         << "  1  -1 -1 -1 -1 -1 -1\n";
    for (const auto& o : mine)
      os << "  " << node_of(me.x0, me.d, me.nx, o.x0) << " " << node_of(me.x0, me.d, me.nx, o.x1) << " "
         << node_of(me.y0, me.d, me.ny, o.y0) << " " << node_of(me.y0, me.d, me.ny, o.y1) << " "
         << node_of(me.z0, me.d, me.nz, o.z0) << " " << node_of(me.z0, me.d, me.nz, o.z1) << "  -1  -1\n";
    os << "\nVENT\n   0   0\n\n";
  }
  if (!slices_first) os << slice_text();
  os << "\nDEVICE\n ignored\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// geometric oracle

/// Closed segment vs closed axis-aligned rectangle (Liang-Barsky clip).
inline bool segment_hits_rect(double x0, double y0, double x1, double y1, double rx0, double ry0, double rx1,
                              double ry1) {
  double t0 = 0.0, t1 = 1.0;
  const double dx = x1 - x0, dy = y1 - y0;
  const double p[4] = {-dx, dx, -dy, dy};
  const double q[4] = {x0 - rx0, rx1 - x0, y0 - ry0, ry1 - y0};
  for (int k = 0; k < 4; ++k) {
    if (p[k] == 0.0) {
      if (q[k] < 0.0) return false;
    } else {
      const double r = q[k] / p[k];
      if (p[k] < 0.0)
        t0 = std::max(t0, r);
      else
        t1 = std::min(t1, r);
      if (t0 > t1) return false;
    }
  }
  return true;
}

/// Exact visibility from a waypoint position to every cell center within
/// `radius`: visible iff the segment touches no obstructed cell rectangle.
/// Cells outside the radius and obstructed cells are 0.
inline vismap::Mask exact_unconcealed(const vismap::SceneDescription& s, double wx, double wy, double radius) {
  vismap::Mask out(s.nx, s.ny, 0);
  for (int j = 0; j < s.ny; ++j) {
    for (int i = 0; i < s.nx; ++i) {
      if (s.obstructed(i, j)) continue;
      const double cx = s.center_x(i), cy = s.center_y(j);
      if (std::hypot(cx - wx, cy - wy) > radius) continue;
      bool blocked = false;
      for (int b = 0; b < s.ny && !blocked; ++b)
        for (int a = 0; a < s.nx && !blocked; ++a)
          if (s.obstructed(a, b))
            blocked = segment_hits_rect(wx, wy, cx, cy, s.origin_x + a * s.cell_size, s.origin_y + b * s.cell_size,
                                        s.origin_x + (a + 1) * s.cell_size, s.origin_y + (b + 1) * s.cell_size);
      out(i, j) = blocked ? 0 : 1;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// scenes

inline vismap::SceneDescription open_scene(int nx, int ny, double d, double x0 = 0.0, double y0 = 0.0) {
  vismap::SceneDescription s;
  s.nx = nx;
  s.ny = ny;
  s.cell_size = d;
  s.origin_x = x0;
  s.origin_y = y0;
  s.obstructed = vismap::Mask(nx, ny, 0);
  return s;
}

/// Random straight wall segments (horizontal, vertical or diagonal staircase).
inline void add_random_walls(vismap::SceneDescription& s, std::mt19937& rng, int walls) {
  std::uniform_int_distribution<int> ui(0, s.nx - 1), uj(0, s.ny - 1), len(3, std::max(4, s.nx / 2)), dir(0, 3);
  for (int w = 0; w < walls; ++w) {
    int i = ui(rng), j = uj(rng);
    const int l = len(rng), d = dir(rng);
    const int di = d == 0 ? 1 : d == 1 ? 0 : 1;
    const int dj = d == 0 ? 0 : d == 1 ? 1 : d == 2 ? 1 : -1;
    for (int k = 0; k < l; ++k, i += di, j += dj)
      if (s.obstructed.contains({i, j})) s.obstructed(i, j) = 1;
  }
}

inline vismap::FieldSeries constant_field(const vismap::SceneDescription& s, std::vector<double> times, float sigma) {
  vismap::FieldSeries f;
  f.times = std::move(times);
  f.frames.assign(f.times.size(), vismap::Raster<float>(s.nx, s.ny, sigma));
  return f;
}

}  // namespace fixtures
