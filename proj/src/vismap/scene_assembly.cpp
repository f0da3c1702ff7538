// Copyright 2026 The vismap Authors
// SPDX-License-Identifier: Apache-2.0

#include "vismap/scene_assembly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "vismap/error.hpp"

namespace vismap {

namespace {

constexpr double kAlignTolerance = 1e-3;  // fraction of a cell

double uniform_spacing(const std::vector<double>& coords, const std::string& what) {
  const int n = static_cast<int>(coords.size()) - 1;
  const double d = (coords.back() - coords.front()) / n;
  for (int k = 1; k <= n; ++k) {
    if (std::abs(coords[static_cast<std::size_t>(k)] - (coords.front() + k * d)) > kAlignTolerance * d)
      throw ComputeError("unsupported layout: " + what + " is not uniformly spaced");
  }
  return d;
}

bool contains_height(const fds::MeshInfo& m, double h, bool closed_top) {
  return h >= m.z.front() && (closed_top ? h <= m.z.back() : h < m.z.back());
}

}  // namespace

SceneDescription assemble_scene(const fds::SmvScene& smv, double eval_height) {
  if (!std::isfinite(eval_height)) throw ConfigError("evaluation height must be finite");
  std::vector<int> selected;
  for (bool closed : {false, true}) {
    for (std::size_t m = 0; m < smv.meshes.size(); ++m)
      if (contains_height(smv.meshes[m], eval_height, closed)) selected.push_back(static_cast<int>(m));
    if (!selected.empty()) break;
  }
  if (selected.empty()) {
    std::ostringstream os;
    os << "evaluation height " << eval_height << " m lies outside the z-range of every mesh";
    throw ConfigError(os.str());
  }

  double dx = 0.0;
  double xmin = std::numeric_limits<double>::infinity(), ymin = xmin;
  double xmax = -xmin, ymax = -xmin;
  for (int m : selected) {
    const auto& mesh = smv.meshes[static_cast<std::size_t>(m)];
    const double mx = uniform_spacing(mesh.x, mesh.name + " TRNX");
    const double my = uniform_spacing(mesh.y, mesh.name + " TRNY");
    if (std::abs(mx - my) > kAlignTolerance * mx)
      throw ComputeError("unsupported layout: mesh " + mesh.name + " has non-square cells");
    if (dx == 0.0) dx = mx;
    if (std::abs(mx - dx) > kAlignTolerance * dx)
      throw ComputeError("unsupported layout: meshes have differing cell sizes");
    xmin = std::min(xmin, mesh.x.front());
    ymin = std::min(ymin, mesh.y.front());
    xmax = std::max(xmax, mesh.x.back());
    ymax = std::max(ymax, mesh.y.back());
  }

  SceneDescription scene;
  scene.origin_x = xmin;
  scene.origin_y = ymin;
  scene.cell_size = dx;
  scene.eval_height = eval_height;
  scene.nx = static_cast<int>(std::lround((xmax - xmin) / dx));
  scene.ny = static_cast<int>(std::lround((ymax - ymin) / dx));

  Raster<int> owner(scene.nx, scene.ny, -1);
  for (int m : selected) {
    const auto& mesh = smv.meshes[static_cast<std::size_t>(m)];
    const double fi = (mesh.x.front() - xmin) / dx, fj = (mesh.y.front() - ymin) / dx;
    MeshPlacement p{m, mesh.name, static_cast<int>(std::lround(fi)), static_cast<int>(std::lround(fj)), mesh.nx,
                    mesh.ny};
    if (std::abs(fi - p.i0) > kAlignTolerance || std::abs(fj - p.j0) > kAlignTolerance)
      throw ComputeError("unsupported layout: mesh " + mesh.name + " is not aligned with the global grid");
    for (int j = p.j0; j < p.j0 + p.ny; ++j) {
      for (int i = p.i0; i < p.i0 + p.nx; ++i) {
        if (owner(i, j) >= 0)
          throw ComputeError("unsupported layout: meshes " + smv.meshes[static_cast<std::size_t>(owner(i, j))].name +
                             " and " + mesh.name + " overlap at the evaluation height");
        owner(i, j) = m;
      }
    }
    scene.meshes.push_back(std::move(p));
  }

  scene.obstructed = Mask(scene.nx, scene.ny, 0);
  for (std::size_t n = 0; n < owner.size(); ++n)
    if (owner.values()[n] < 0) scene.obstructed.values()[n] = 1;

  for (const auto& box : smv.obstructions) {
    if (!(box.z0 <= eval_height && eval_height <= box.z1)) continue;
    // cell centers x_c = xmin + (i + 0.5) dx inside [x0, x1]
    const int i_lo = std::max(0, static_cast<int>(std::ceil((box.x0 - xmin) / dx - 0.5)));
    const int i_hi = std::min(scene.nx - 1, static_cast<int>(std::floor((box.x1 - xmin) / dx - 0.5)));
    const int j_lo = std::max(0, static_cast<int>(std::ceil((box.y0 - ymin) / dx - 0.5)));
    const int j_hi = std::min(scene.ny - 1, static_cast<int>(std::floor((box.y1 - ymin) / dx - 0.5)));
    for (int j = j_lo; j <= j_hi; ++j)
      for (int i = i_lo; i <= i_hi; ++i) scene.obstructed(i, j) = 1;
  }
  return scene;
}

namespace {

// Maps a mesh-local cell index to the slice's value index along one axis.
// Returns the offset to subtract, or throws if the slice does not span the mesh.
int axis_origin(int lo, int hi, int cells, int mesh_no, char axis) {
  const int count = hi - lo + 1;
  if (count == cells + 1 && lo == 0) return 0;           // node data, drop the last node
  if (count == cells && (lo == 0 || lo == 1)) return 0;  // cell data
  std::ostringstream os;
  os << "slice for mesh " << mesh_no << " spans " << axis << "-indices " << lo << ".." << hi << "; expected the full "
     << cells << "-cell extent";
  throw ComputeError(os.str());
}

}  // namespace

FieldSeries stitch_field(const SceneDescription& scene, std::span<const MeshSlice> slices, double time_tolerance) {
  if (scene.meshes.empty()) throw ComputeError("scene has no mesh placements to stitch against");
  std::vector<const MeshSlice*> by_mesh(scene.meshes.size(), nullptr);
  for (const auto& s : slices) {
    for (std::size_t p = 0; p < scene.meshes.size(); ++p) {
      if (scene.meshes[p].mesh_index != s.mesh) continue;
      if (by_mesh[p]) throw ComputeError("mesh " + scene.meshes[p].name + " is covered by more than one slice");
      by_mesh[p] = &s;
    }
  }
  std::string missing;
  for (std::size_t p = 0; p < scene.meshes.size(); ++p)
    if (!by_mesh[p]) missing += (missing.empty() ? "" : ", ") + scene.meshes[p].name;
  if (!missing.empty()) throw ComputeError("no horizontal slice at the evaluation height for meshes: " + missing);

  const auto& ref = by_mesh.front()->data;
  FieldSeries field;
  for (const auto& f : ref.frames) field.times.push_back(f.time);
  for (std::size_t p = 0; p < scene.meshes.size(); ++p) {
    const auto& d = by_mesh[p]->data;
    bool same = d.frames.size() == ref.frames.size();
    for (std::size_t k = 0; same && k < d.frames.size(); ++k)
      same = std::abs(static_cast<double>(d.frames[k].time) - field.times[k]) <= time_tolerance;
    if (!same) throw ComputeError("slice time vectors of mesh " + scene.meshes[p].name + " and " +
                                  scene.meshes.front().name + " differ");
  }

  field.frames.assign(field.times.size(), Raster<float>(scene.nx, scene.ny, 0.0f));
  for (std::size_t p = 0; p < scene.meshes.size(); ++p) {
    const auto& place = scene.meshes[p];
    const auto& h = by_mesh[p]->data.header;
    if (!h.horizontal()) throw ComputeError("slice for mesh " + place.name + " is not horizontal");
    axis_origin(h.bounds[0], h.bounds[1], place.nx, place.mesh_index + 1, 'i');
    axis_origin(h.bounds[2], h.bounds[3], place.ny, place.mesh_index + 1, 'j');
    const int ex = h.extent(0);
    for (std::size_t k = 0; k < field.frames.size(); ++k) {
      const auto& src = by_mesh[p]->data.frames[k].values;
      auto& dst = field.frames[k];
      for (int j = 0; j < place.ny; ++j)
        for (int i = 0; i < place.nx; ++i)
          dst(place.i0 + i, place.j0 + j) = src[static_cast<std::size_t>(i) + static_cast<std::size_t>(ex) * j];
    }
  }
  return field;
}

}  // namespace vismap
