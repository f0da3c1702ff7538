// Copyright 2026 The vismap Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>
#include <random>

#include "support/fixtures.hpp"
#include "vismap/error.hpp"
#include "vismap/fds_io.hpp"
#include "vismap/scene_assembly.hpp"

using namespace vismap;
using namespace vismap::fds;
using fixtures::MeshSpec;
using fixtures::ObstSpec;
using fixtures::SliceSpec;

namespace {

std::vector<MeshSpec> eight_mesh_layout() {
  // 2 x 4 tiling: 20 m x 10 m floor, 5 m x 5 m meshes, 10 cm cells, 3 m high
  std::vector<MeshSpec> meshes;
  for (int row = 0; row < 2; ++row)
    for (int col = 0; col < 4; ++col)
      meshes.push_back({"MESH_" + std::to_string(row * 4 + col + 1), col * 5.0, row * 5.0, 0.0, 50, 50, 30, 0.1});
  return meshes;
}

std::vector<std::byte> swap_bytes_per_word(std::vector<std::byte> v, bool from_big = false) {
  // every field in our fixtures is a 4-byte word except the 30-byte labels,
  // so byte-swap the markers and numeric payloads and leave labels alone
  std::size_t pos = 0;
  auto swap4 = [&](std::size_t at) { std::reverse(v.begin() + static_cast<long>(at), v.begin() + static_cast<long>(at) + 4); };
  int record = 0;
  while (pos + 4 <= v.size()) {
    std::uint32_t len = 0;
    for (int b = 0; b < 4; ++b)
      len |= static_cast<std::uint32_t>(v[pos + static_cast<std::size_t>(b)]) << (8 * (from_big ? 3 - b : b));
    swap4(pos);
    if (record >= 3)
      for (std::size_t k = 0; k < len; k += 4) swap4(pos + 4 + k);
    swap4(pos + 4 + len);
    pos += 8 + len;
    ++record;
  }
  return v;
}

}  // namespace

TEST_CASE("parse_smv: single mesh with an empty OBST block") {
  const auto text = fixtures::write_smv({{"M", 0, 0, 0, 4, 3, 2, 1.0}}, {}, {});
  const auto smv = parse_smv(text);
  REQUIRE(smv.meshes.size() == 1);
  CHECK(smv.obstructions.empty());
  CHECK(smv.meshes[0].nx == 4);
  CHECK(smv.meshes[0].ny == 3);
  CHECK(smv.meshes[0].nz == 2);
  CHECK(smv.meshes[0].x.size() == 5);
  CHECK(smv.meshes[0].name == "M");
}

TEST_CASE("parse_smv: obstruction index bounds agree with the coordinate tables") {
  const auto text = fixtures::write_smv({{"ROOM", 0, 0, 0, 10, 10, 5, 1.0}}, {{1, 2, 0, 1, 0, 3}}, {});
  const auto smv = parse_smv(text);
  REQUIRE(smv.obstructions.size() == 1);
  const auto& box = smv.obstructions[0];
  const auto& m = smv.meshes[0];
  CHECK(box.x0 == doctest::Approx(1.0));
  CHECK(box.z1 == doctest::Approx(3.0));
  // independent oracle: linear scan for the nearest node
  auto scan = [](const std::vector<double>& c, double v) {
    std::size_t best = 0;
    for (std::size_t k = 1; k < c.size(); ++k)
      if (std::abs(c[k] - v) < std::abs(c[best] - v)) best = k;
    return static_cast<int>(best);
  };
  const std::array<int, 6> expect{scan(m.x, 1), scan(m.x, 2), scan(m.y, 0), scan(m.y, 1), scan(m.z, 0), scan(m.z, 3)};
  CHECK(box.index == expect);
  CHECK(expect == std::array<int, 6>{1, 2, 0, 1, 0, 3});
  for (double v : {0.0, 0.4, 0.6, 4.5, 9.9, 10.0, -3.0, 20.0})
    CHECK(nearest_node(m.x, v) == scan(m.x, v));
}

TEST_CASE("parse_smv: 8-mesh layout round-trips") {
  const auto layout = eight_mesh_layout();
  std::vector<SliceSpec> slices;
  for (int m = 1; m <= 8; ++m) slices.push_back({"room_" + std::to_string(m) + ".sf", m, {0, 50, 0, 50, 20, 20}});
  const auto smv = parse_smv(fixtures::write_smv(layout, {{9.9, 10.1, 0, 10, 0, 3}}, slices));
  REQUIRE(smv.meshes.size() == 8);
  for (std::size_t m = 0; m < 8; ++m) {
    const auto& mesh = smv.meshes[m];
    CHECK(mesh.name == layout[m].name);
    CHECK(mesh.nx == 50);
    CHECK(mesh.ny == 50);
    CHECK(mesh.nz == 30);
    CHECK(mesh.x.front() == doctest::Approx(layout[m].x0));
    CHECK((mesh.x[1] - mesh.x[0]) == doctest::Approx(0.1));
    CHECK((mesh.y[1] - mesh.y[0]) == doctest::Approx(0.1));
  }
  REQUIRE(smv.slices.size() == 8);
  for (int m = 0; m < 8; ++m) {
    CHECK(smv.slices[static_cast<std::size_t>(m)].mesh == m);
    CHECK(smv.slices[static_cast<std::size_t>(m)].quantity == "EXTINCTION COEFFICIENT");
    CHECK(smv.slices[static_cast<std::size_t>(m)].bounds == std::array<int, 6>{0, 50, 0, 50, 20, 20});
  }
  // the wall straddles the seam between columns 2 and 3 in both rows
  CHECK(smv.obstructions.size() == 4);
}

TEST_CASE("parse_smv: errors") {
  SUBCASE("no GRID block names a line") {
    try {
      parse_smv("TITLE\n nothing here\n");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(std::string(e.what()).find("line") != std::string::npos);
      CHECK(std::string(e.what()).find("GRID") != std::string::npos);
    }
  }
  SUBCASE("OBST count larger than the listed boxes") {
    auto text = fixtures::write_smv({{"M", 0, 0, 0, 4, 4, 2, 1.0}}, {{1, 2, 1, 2, 0, 2}}, {});
    const auto at = text.find("OBST\n  1\n");
    REQUIRE(at != std::string::npos);
    text.replace(at, 9, "OBST\n  2\n");
    CHECK_THROWS_AS(parse_smv(text), ParseError);
  }
  SUBCASE("slice referencing a missing mesh") {
    const auto text = fixtures::write_smv({{"M", 0, 0, 0, 4, 4, 2, 1.0}}, {}, {{"a.sf", 3, {0, 4, 0, 4, 1, 1}}});
    CHECK_THROWS_AS(parse_smv(text), ParseError);
  }
}

TEST_CASE("parse_smv: unknown blocks are skipped") {
  auto text = fixtures::write_smv({{"M", 0, 0, 0, 4, 4, 2, 1.0}}, {}, {});
  text = "XYZZY\n 1 2 3\n junk\n\n" + text + "HRRPUVCUT\n 1\n 200.0\n";
  CHECK(parse_smv(text).meshes.size() == 1);
}

TEST_CASE("parse_smv: order of OBST and SLCF sections does not matter") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    std::uniform_real_distribution<double> u(0.0, 9.0);
    std::vector<ObstSpec> obst;
    for (int k = 0; k < 4; ++k) {
      const double x = std::round(u(rng)), y = std::round(u(rng));
      obst.push_back({x, x + 1, y, y + 1, 0, 2});
    }
    const std::vector<MeshSpec> meshes{{"A", 0, 0, 0, 10, 10, 3, 1.0}, {"B", 10, 0, 0, 10, 10, 3, 1.0}};
    const std::vector<SliceSpec> slices{{"a.sf", 1, {0, 10, 0, 10, 2, 2}}, {"b.sf", 2, {0, 10, 0, 10, 2, 2}}};
    const auto a = parse_smv(fixtures::write_smv(meshes, obst, slices, false));
    const auto b = parse_smv(fixtures::write_smv(meshes, obst, slices, true));
    REQUIRE(a.obstructions.size() == b.obstructions.size());
    for (std::size_t k = 0; k < a.obstructions.size(); ++k) {
      CHECK(a.obstructions[k].index == b.obstructions[k].index);
      CHECK(a.obstructions[k].mesh == b.obstructions[k].mesh);
    }
    REQUIRE(a.slices.size() == b.slices.size());
    for (std::size_t k = 0; k < a.slices.size(); ++k) {
      CHECK(a.slices[k].file == b.slices[k].file);
      CHECK(a.slices[k].mesh == b.slices[k].mesh);
    }
    CHECK(assemble_scene(a, 1.0).obstructed == assemble_scene(b, 1.0).obstructed);
  }
}

TEST_CASE("quantity labels match case-insensitively without trailing blanks") {
  CHECK(quantity_matches("EXTINCTION COEFFICIENT", "extinction coefficient   "));
  CHECK_FALSE(quantity_matches("EXTINCTION COEFFICIENT", "SOOT DENSITY"));
}

TEST_CASE("read_slice: minimal file") {
  const auto bytes = fixtures::write_sf("EXTINCTION COEFFICIENT", "ext", "1/m", {0, 0, 0, 0, 0, 0}, {{0.0f, {0.5f}}});
  const auto s = read_slice(bytes);
  CHECK(s.header.quantity == "EXTINCTION COEFFICIENT");
  CHECK(s.header.short_name == "ext");
  CHECK(s.header.units == "1/m");
  CHECK(s.header.cell_count() == 1);
  REQUIRE(s.frames.size() == 1);
  CHECK(s.frames[0].time == 0.0f);
  CHECK(s.frames[0].values == std::vector<float>{0.5f});
  CHECK(s.dropped_frames == 0);
}

TEST_CASE("read_slice: 3x2x1 slice keeps Fortran order") {
  const std::vector<float> f0{1, 2, 3, 4, 5, 6}, f1{6, 5, 4, 3, 2, 1};
  const auto bytes = fixtures::write_sf("Q", "q", "u", {0, 2, 0, 1, 4, 4}, {{1.0f, f0}, {2.0f, f1}});
  const auto s = read_slice(bytes);
  CHECK(s.header.extent(0) == 3);
  CHECK(s.header.extent(1) == 2);
  CHECK(s.header.horizontal());
  REQUIRE(s.frames.size() == 2);
  CHECK(s.frames[0].values == f0);
  CHECK(s.frames[1].values == f1);
}

TEST_CASE("read_slice: corrupt and truncated input") {
  const auto good = fixtures::write_sf("Q", "q", "u", {0, 1, 0, 1, 0, 0}, {{0.0f, {1, 2, 3, 4}}, {1.0f, {5, 6, 7, 8}}});
  SUBCASE("leading and trailing markers disagree") {
    auto bad = good;
    bad[4 + 30] = std::byte{29};  // trailing marker of the first label
    try {
      read_slice(bad);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      REQUIRE(e.offset().has_value());
      CHECK(*e.offset() == 34);
    }
  }
  SUBCASE("bounds record of the wrong length") {
    std::vector<std::byte> b;
    for (auto l : {"Q", "q", "u"}) fixtures::put_record(b, fixtures::label(l), false);
    fixtures::put_record(b, fixtures::floats({0, 0, 0, 0, 0}, false), false);
    CHECK_THROWS_AS(read_slice(b), ParseError);
  }
  SUBCASE("truncated trailing frame is dropped and counted") {
    auto cut = good;
    cut.resize(cut.size() - 6);
    const auto s = read_slice(cut);
    CHECK(s.frames.size() == 1);
    CHECK(s.dropped_frames == 1);
  }
  SUBCASE("data record with the wrong length") {
    auto b = fixtures::write_sf("Q", "q", "u", {0, 1, 0, 1, 0, 0}, {{0.0f, {1, 2, 3}}});
    CHECK_THROWS_AS(read_slice(b), ParseError);
  }
  SUBCASE("empty input") { CHECK_THROWS_AS(read_slice(std::span<const std::byte>{}), ParseError); }
}

TEST_CASE("detect_endianness") {
  const auto le = fixtures::write_sf("Q", "q", "u", {0, 0, 0, 0, 0, 0}, {{0.0f, {1.0f}}}, false);
  const auto be = fixtures::write_sf("Q", "q", "u", {0, 0, 0, 0, 0, 0}, {{0.0f, {1.0f}}}, true);
  CHECK(detect_endianness(le) == ByteOrder::Little);
  CHECK(detect_endianness(be) == ByteOrder::Big);
  CHECK(detect_endianness(swap_bytes_per_word(le)) == ByteOrder::Big);
  auto bad = le;
  bad[0] = std::byte{17};
  bad[1] = bad[2] = bad[3] = std::byte{0};
  CHECK_THROWS_AS(detect_endianness(bad), ParseError);
  const std::vector<std::byte> seventeen{std::byte{17}, std::byte{0}, std::byte{0}, std::byte{17}};
  CHECK_THROWS_AS(detect_endianness(seventeen), ParseError);
}

TEST_CASE("property: random slices round-trip bit-exactly in both byte orders") {
  std::mt19937 rng(2026);
  for (int trial = 0; trial < 200; ++trial) {
    std::uniform_int_distribution<int> n(1, 9), nf(0, 4);
    const int ni = n(rng), nj = n(rng), frames = nf(rng);
    std::uniform_int_distribution<std::uint32_t> bits;
    std::vector<fixtures::SfFrame> data;
    for (int f = 0; f < frames; ++f) {
      fixtures::SfFrame fr{static_cast<float>(f) * 0.5f, {}};
      for (int c = 0; c < ni * nj; ++c) {
        std::uint32_t u = bits(rng);
        if ((u & 0x7f800000u) == 0x7f800000u) u &= 0xbfffffffu;  // keep values out of NaN space
        float v;
        std::memcpy(&v, &u, 4);
        fr.values.push_back(v);
      }
      data.push_back(std::move(fr));
    }
    const bool big = trial % 2 == 1;
    const std::array<int, 6> bounds{3, 3 + ni - 1, 1, nj, 7, 7};
    const auto bytes = fixtures::write_sf("SOOT DENSITY", "rho", "mg/m3", bounds, data, big);
    const auto s = read_slice(bytes);
    CHECK((s.byte_order == (big ? ByteOrder::Big : ByteOrder::Little)));
    CHECK(s.header.bounds == bounds);
    REQUIRE(s.frames.size() == data.size());
    for (std::size_t f = 0; f < data.size(); ++f) {
      REQUIRE(s.frames[f].values.size() == data[f].values.size());
      CHECK(std::memcmp(s.frames[f].values.data(), data[f].values.data(), 4 * data[f].values.size()) == 0);
      CHECK(s.frames[f].time == data[f].time);
    }
    // swapping every word flips the detected order
    const auto swapped = swap_bytes_per_word(bytes, big);
    CHECK((detect_endianness(swapped) != detect_endianness(bytes)));
    const auto back = read_slice(swapped);
    REQUIRE(back.frames.size() == data.size());
    for (std::size_t f = 0; f < data.size(); ++f)
      CHECK(std::memcmp(back.frames[f].values.data(), data[f].values.data(), 4 * data[f].values.size()) == 0);
  }
}

TEST_CASE("portable scene and field") {
  SUBCASE("4x3 all-zero field, one frame") {
    const auto scene = parse_portable_scene("grid 4 3 0 0 0.5 0.5\n");
    const auto field = parse_portable_field(fixtures::to_bytes("frames 1 0\n" + std::string(48, '\0')), 4, 3);
    CHECK(scene.nx == 4);
    CHECK(scene.ny == 3);
    REQUIRE(field.frames.size() == 1);
    CHECK(field.frames[0] == Raster<float>(4, 3, 0.0f));
    CHECK(field.times == std::vector<double>{0.0});
  }
  SUBCASE("one obstructed cell") {
    const auto scene = parse_portable_scene("# office\ngrid 4 3 1 2 0.5 0.5\nobst 2 1 # desk\n");
    CHECK(std::count(scene.obstructed.values().begin(), scene.obstructed.values().end(), 1) == 1);
    CHECK(scene.obstructed(2, 1) == 1);
    CHECK(scene.origin_x == 1.0);
  }
  SUBCASE("dimension mismatch") {
    CHECK_THROWS_AS(parse_portable_field(fixtures::to_bytes("frames 1 0\n" + std::string(44, '\0')), 4, 3), ParseError);
    CHECK_THROWS_AS(parse_portable_scene("grid 4 3 0 0 0.5 0.5\nobst 4 0\n"), ParseError);
  }
  SUBCASE("non-square cells are rejected") {
    CHECK_THROWS(parse_portable_scene("grid 4 3 0 0 0.5 0.25\n"));
  }
  SUBCASE("round-trip of an FDS-derived scene") {
    const auto smv =
        parse_smv(fixtures::write_smv(eight_mesh_layout(), {{9.9, 10.1, 0, 10, 0, 3}, {2, 3, 2, 3, 0, 1}}, {}));
    const auto scene = assemble_scene(smv);
    const auto back = parse_portable_scene(write_portable_scene(scene));
    CHECK(same_grid(scene, back));
    CHECK(back.obstructed == scene.obstructed);
    FieldSeries f;
    f.times = {0.0, 1.5};
    f.frames = {Raster<float>(scene.nx, scene.ny, 0.25f), Raster<float>(scene.nx, scene.ny, 1.0f / 3.0f)};
    const auto fb = parse_portable_field(write_portable_field(f), scene.nx, scene.ny);
    CHECK(fb.times == f.times);
    CHECK(fb.frames == f.frames);
  }
}
