// Copyright 2026 The vismap Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cassert>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace vismap {

/// Integer cell index on the horizontal evaluation grid. `i` runs along x,
/// `j` along y.
struct Cell {
  int i = 0;
  int j = 0;
  friend constexpr bool operator==(Cell, Cell) = default;
  friend constexpr auto operator<=>(Cell, Cell) = default;
};

/// Dense 2D raster, row-major with j as the outer (slow) index.
template <class T>
class Raster {
 public:
  using value_type = T;

  Raster() = default;
  Raster(int nx, int ny, T fill = T{})
      : nx_(nx), ny_(ny), data_(static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny), fill) {}

  int nx() const noexcept { return nx_; }
  int ny() const noexcept { return ny_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  bool contains(Cell c) const noexcept { return c.i >= 0 && c.j >= 0 && c.i < nx_ && c.j < ny_; }
  std::size_t index(Cell c) const noexcept {
    return static_cast<std::size_t>(c.j) * static_cast<std::size_t>(nx_) + static_cast<std::size_t>(c.i);
  }

  T& operator()(int i, int j) noexcept {
    assert(contains({i, j}));
    return data_[index({i, j})];
  }
  const T& operator()(int i, int j) const noexcept {
    assert(contains({i, j}));
    return data_[index({i, j})];
  }
  T& operator[](Cell c) noexcept { return (*this)(c.i, c.j); }
  const T& operator[](Cell c) const noexcept { return (*this)(c.i, c.j); }

  std::span<T> values() noexcept { return data_; }
  std::span<const T> values() const noexcept { return data_; }

  template <class U>
  bool same_shape(const Raster<U>& other) const noexcept {
    return nx_ == other.nx() && ny_ == other.ny();
  }

  friend bool operator==(const Raster&, const Raster&) = default;

 private:
  int nx_ = 0;
  int ny_ = 0;
  std::vector<T> data_;
};

/// Boolean raster stored as bytes (0 or 1).
using Mask = Raster<std::uint8_t>;

}  // namespace vismap
