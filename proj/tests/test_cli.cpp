// Copyright 2026 The vismap Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "support/fixtures.hpp"
#include "support/office.hpp"

namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  auto p = fs::temp_directory_path() / ("vismap_cli_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_cli(const std::string& args, const fs::path& dir) {
  const auto o = dir / "stdout.txt", e = dir / "stderr.txt";
  const std::string cmd = std::string("'") + VISMAP_CLI_PATH + "' " + args + " >'" + o.string() + "' 2>'" +
                          e.string() + "'";
  const int raw = std::system(cmd.c_str());
  auto slurp = [](const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, slurp(o), slurp(e)};
}

std::string q(const fs::path& p) { return "'" + p.string() + "'"; }

fs::path office(const fs::path& base) {
  fixtures::OfficeOptions opt;
  opt.cell = 0.5;
  return fixtures::write_office(base / "fds", opt);
}

fs::path write_config(const fs::path& base, const fs::path& input, const std::string& waypoints, const std::string& times = "[400]") {
  const auto p = base / "run.json";
  fixtures::save(p, R"({"input": ")" + input.string() + R"(", "out": ")" + (base / "out").string() +
                        R"(", "times": )" + times + R"(, "waypoints": )" + waypoints + "}");
  return p;
}

}  // namespace

TEST_CASE("cli: help and usage errors") {
  const auto base = scratch("usage");
  CHECK(run_cli("", base).code == 2);
  CHECK(run_cli("--help", base).code == 0);
  CHECK(run_cli("--version", base).code == 0);
  CHECK(run_cli("run --no-such-flag", base).code == 2);
  CHECK(run_cli("convert --input x", base).code == 2);  // --out missing
}

TEST_CASE("cli: run on the office layout") {
  const auto base = scratch("run");
  const auto cfg = write_config(base, office(base), fixtures::office_waypoints_json(), "[0, 200, 400]");
  const auto r = run_cli("run --config " + q(cfg), base);
  INFO(r.err);
  REQUIRE(r.code == 0);
  CHECK(r.out.find("grid 40x20") != std::string::npos);
  for (const char* f : {"manifest.json", "aset.csv", "aset.pgm", "vismap_aggregate.pgm", "vismap_t0.pgm",
                        "vismap_t200.pgm", "vismap_t400.pgm"})
    CHECK_MESSAGE(fs::exists(base / "out" / f), f);

  // top-level form with overrides behaves the same
  const auto r2 = run_cli("--config " + q(cfg) + " --out " + q(base / "out2") + " --times 400 --thickness 1", base);
  INFO(r2.err);
  CHECK(r2.code == 0);
  CHECK(fs::exists(base / "out2" / "vismap_t400.pgm"));
  CHECK_FALSE(fs::exists(base / "out2" / "vismap_t200.pgm"));
}

TEST_CASE("cli: convert and info") {
  const auto base = scratch("convert");
  const auto in = office(base);
  const auto c = run_cli("convert --input " + q(in) + " --out " + q(base / "portable"), base);
  INFO(c.err);
  REQUIRE(c.code == 0);
  CHECK(fs::exists(base / "portable" / "scene.txt"));
  CHECK(fs::exists(base / "portable" / "field.bin"));
  const auto i1 = run_cli("info --input " + q(in), base);
  const auto i2 = run_cli("info --input " + q(base / "portable"), base);
  REQUIRE(i1.code == 0);
  REQUIRE(i2.code == 0);
  CHECK(i1.out == i2.out);
  CHECK(i1.out.find("grid: 40 x 20 cells of 0.5 m") != std::string::npos);
  CHECK(i1.out.find("frames: 5 (t = 0 .. 400 s)") != std::string::npos);
}

TEST_CASE("cli: exit codes follow the error category") {
  const auto base = scratch("codes");
  const auto in = office(base);

  SUBCASE("configuration") {
    CHECK(run_cli("run --config " + q(write_config(base, in, "[]")), base).code == 2);
    fixtures::save(base / "broken.json", std::string("{\"input\": "));
    CHECK(run_cli("run --config " + q(base / "broken.json"), base).code == 2);
    const auto cfg = write_config(base, in, fixtures::office_waypoints_json());
    CHECK(run_cli("run --config " + q(cfg) + " --times 9000", base).code == 2);
    CHECK(run_cli("run --config " + q(cfg) + " --vmax abc", base).code == 2);
  }
  SUBCASE("parse") {
    fixtures::save(in / "office_3_1.sf", std::string("this is not a Fortran record stream"));
    const auto r = run_cli("run --config " + q(write_config(base, in, fixtures::office_waypoints_json())), base);
    CHECK(r.code == 3);
    CHECK(r.err.find("office_3_1.sf") != std::string::npos);
  }
  SUBCASE("compute") {
    const auto dir = base / "mixed";
    fs::create_directories(dir);
    using namespace fixtures;
    const std::vector<MeshSpec> meshes{{"A", 0, 0, 0, 4, 4, 6, 0.5}, {"B", 2, 0, 0, 8, 8, 12, 0.25}};
    const std::vector<SliceSpec> slices{{"a.sf", 1, {0, 4, 0, 4, 4, 4}}, {"b.sf", 2, {0, 8, 0, 8, 8, 8}}};
    save(dir / "mixed.smv", write_smv(meshes, {}, slices));
    save(dir / "a.sf", write_sf("EXTINCTION COEFFICIENT", "q", "1/m", {0, 4, 0, 4, 4, 4}, {{0.0f, std::vector<float>(25, 0.0f)}}));
    save(dir / "b.sf", write_sf("EXTINCTION COEFFICIENT", "q", "1/m", {0, 8, 0, 8, 8, 8}, {{0.0f, std::vector<float>(81, 0.0f)}}));
    const auto r = run_cli("info --input " + q(dir), base);
    CHECK(r.code == 4);
    CHECK(r.err.find("unsupported layout") != std::string::npos);
  }
  SUBCASE("io") {
    fixtures::save(base / "plainfile", std::string("x"));
    const auto cfg = write_config(base, in, fixtures::office_waypoints_json());
    CHECK(run_cli("run --config " + q(cfg) + " --out " + q(base / "plainfile" / "out"), base).code == 5);
  }
}
