// Copyright 2026 The vismap Authors
// SPDX-License-Identifier: Apache-2.0

#include "vismap/fds_io.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>
#include <iterator>
#include <sstream>

#include "vismap/error.hpp"

namespace vismap::fds {

namespace {

// ---------------------------------------------------------------------------
// text helpers

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && (std::isspace(static_cast<unsigned char>(s.back())) || s.back() == '\0')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t p = 0;
  while (p < s.size()) {
    while (p < s.size() && std::isspace(static_cast<unsigned char>(s[p]))) ++p;
    std::size_t q = p;
    while (q < s.size() && !std::isspace(static_cast<unsigned char>(s[q]))) ++q;
    if (q > p) out.push_back(s.substr(p, q - p));
    p = q;
  }
  return out;
}

template <class T>
std::optional<T> to_number(std::string_view tok) {
  T value{};
  if constexpr (std::is_floating_point_v<T>) {
    // from_chars for double is available in libstdc++ 11
    auto res = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size()) {
      // Fortran exponent markers (1.0D+00)
      std::string fixed(tok);
      std::replace(fixed.begin(), fixed.end(), 'D', 'E');
      std::replace(fixed.begin(), fixed.end(), 'd', 'e');
      res = std::from_chars(fixed.data(), fixed.data() + fixed.size(), value);
      if (res.ec != std::errc{} || res.ptr != fixed.data() + fixed.size()) return std::nullopt;
    }
  } else {
    if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
    auto res = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size()) return std::nullopt;
  }
  return value;
}

std::string upper(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

class LineCursor {
 public:
  explicit LineCursor(std::string_view text) {
    std::size_t p = 0;
    while (p <= text.size()) {
      auto q = text.find('\n', p);
      if (q == std::string_view::npos) q = text.size();
      auto line = text.substr(p, q - p);
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      lines_.push_back(line);
      p = q + 1;
    }
    if (!lines_.empty() && lines_.back().empty()) lines_.pop_back();
  }

  bool done() const { return pos_ >= lines_.size(); }
  std::size_t line_number() const { return pos_; }  // 1-based number of the last line taken
  std::string_view take() { return lines_[pos_++]; }

  // Next non-blank line; throws with the keyword's line number on EOF.
  std::string_view take_data(std::string_view block, std::size_t block_line) {
    while (!done()) {
      auto line = take();
      if (!trim(line).empty()) return line;
    }
    std::ostringstream os;
    os << "line " << block_line << ": " << block << " block truncated at end of input";
    throw ParseError(os.str(), block_line);
  }

 private:
  std::vector<std::string_view> lines_;
  std::size_t pos_ = 0;
};

[[noreturn]] void fail_line(std::size_t line, const std::string& what) {
  std::ostringstream os;
  os << "line " << line << ": " << what;
  throw ParseError(os.str(), line);
}

std::vector<double> read_trn(LineCursor& cur, std::string_view block, std::size_t block_line, int cells) {
  auto noc = to_number<int>(trim(cur.take_data(block, block_line)));
  if (!noc || *noc < 0) fail_line(cur.line_number(), std::string(block) + ": expected stretching entry count");
  for (int n = 0; n < *noc; ++n) cur.take_data(block, block_line);
  std::vector<double> coords;
  coords.reserve(static_cast<std::size_t>(cells) + 1);
  for (int n = 0; n <= cells; ++n) {
    auto toks = split_ws(cur.take_data(block, block_line));
    if (toks.size() < 2) fail_line(cur.line_number(), std::string(block) + ": expected 'index coordinate'");
    auto v = to_number<double>(toks[1]);
    if (!v) fail_line(cur.line_number(), std::string(block) + ": bad coordinate '" + std::string(toks[1]) + "'");
    coords.push_back(*v);
  }
  return coords;
}

void check_axis(const std::vector<double>& coords, int cells, const std::string& what) {
  if (coords.empty()) throw ParseError(what + ": coordinate table missing");
  if (static_cast<int>(coords.size()) != cells + 1) throw ParseError(what + ": coordinate table length != cells + 1");
  for (std::size_t n = 1; n < coords.size(); ++n)
    if (!(coords[n] > coords[n - 1])) throw ParseError(what + ": coordinates not strictly increasing");
}

// ---------------------------------------------------------------------------
// binary helpers

std::uint32_t bswap32(std::uint32_t v) {
  return ((v & 0x000000FFu) << 24) | ((v & 0x0000FF00u) << 8) | ((v & 0x00FF0000u) >> 8) | ((v & 0xFF000000u) >> 24);
}

std::uint32_t load_u32(const std::byte* p, ByteOrder order) {
  std::uint32_t v;
  std::memcpy(&v, p, 4);
  const bool host_little = std::endian::native == std::endian::little;
  if ((order == ByteOrder::Little) != host_little) v = bswap32(v);
  return v;
}

std::int32_t load_i32(const std::byte* p, ByteOrder order) { return static_cast<std::int32_t>(load_u32(p, order)); }

float load_f32(const std::byte* p, ByteOrder order) { return std::bit_cast<float>(load_u32(p, order)); }

void store_f32_le(std::vector<std::byte>& out, float f) {
  std::uint32_t v = std::bit_cast<std::uint32_t>(f);
  if constexpr (std::endian::native != std::endian::little) v = bswap32(v);
  const auto* b = reinterpret_cast<const std::byte*>(&v);
  out.insert(out.end(), b, b + 4);
}

enum class RecordStatus { Ok, End, Truncated };

class RecordReader {
 public:
  RecordReader(std::span<const std::byte> bytes, ByteOrder order) : bytes_(bytes), order_(order) {}

  RecordStatus next(std::span<const std::byte>& payload) {
    start_ = pos_;
    if (pos_ == bytes_.size()) return RecordStatus::End;
    if (bytes_.size() - pos_ < 4) return RecordStatus::Truncated;
    std::uint32_t lead = load_u32(bytes_.data() + pos_, order_);
    if (static_cast<std::uint64_t>(lead) + 8 > bytes_.size() - pos_) return RecordStatus::Truncated;
    std::uint32_t trail = load_u32(bytes_.data() + pos_ + 4 + lead, order_);
    if (lead != trail) {
      std::ostringstream os;
      const std::size_t at = pos_ + 4 + lead;
      os << "corrupt record marker at byte offset " << at << ": trailing marker " << trail
         << " does not match leading marker " << lead << " of the record at byte offset " << pos_;
      throw ParseError(os.str(), at);
    }
    payload = bytes_.subspan(pos_ + 4, lead);
    pos_ += 8 + static_cast<std::size_t>(lead);
    return RecordStatus::Ok;
  }

  std::size_t record_start() const { return start_; }
  ByteOrder order() const { return order_; }

 private:
  std::span<const std::byte> bytes_;
  ByteOrder order_;
  std::size_t pos_ = 0;
  std::size_t start_ = 0;
};

std::string read_label(RecordReader& rr, const char* what) {
  std::span<const std::byte> payload;
  if (rr.next(payload) != RecordStatus::Ok) {
    std::ostringstream os;
    os << "slice header truncated while reading " << what << " at byte offset " << rr.record_start();
    throw ParseError(os.str(), rr.record_start());
  }
  if (payload.size() != 30) {
    std::ostringstream os;
    os << "slice " << what << " record at byte offset " << rr.record_start() << " has " << payload.size()
       << " bytes, expected 30";
    throw ParseError(os.str(), rr.record_start());
  }
  std::string_view sv(reinterpret_cast<const char*>(payload.data()), payload.size());
  return std::string(trim(sv));
}

}  // namespace

// ---------------------------------------------------------------------------
// .smv

int nearest_node(std::span<const double> coords, double value) {
  if (coords.empty()) return 0;
  auto it = std::lower_bound(coords.begin(), coords.end(), value);
  if (it == coords.begin()) return 0;
  if (it == coords.end()) return static_cast<int>(coords.size()) - 1;
  auto hi = static_cast<int>(it - coords.begin());
  return (value - coords[hi - 1] <= coords[hi] - value) ? hi - 1 : hi;
}

bool quantity_matches(std::string_view a, std::string_view b) {
  a = trim(a);
  b = trim(b);
  if (a.size() != b.size()) return false;
  for (std::size_t n = 0; n < a.size(); ++n)
    if (std::toupper(static_cast<unsigned char>(a[n])) != std::toupper(static_cast<unsigned char>(b[n]))) return false;
  return true;
}

std::vector<const SliceRef*> find_slices(const SmvScene& smv, std::string_view quantity) {
  std::vector<const SliceRef*> out;
  for (const auto& s : smv.slices)
    if (quantity_matches(s.quantity, quantity)) out.push_back(&s);
  return out;
}

SmvScene parse_smv(std::string_view text) {
  SmvScene scene;
  LineCursor cur(text);
  int current_mesh = -1;

  auto need_mesh = [&](std::string_view kw, std::size_t line) {
    if (current_mesh < 0) fail_line(line, std::string(kw) + " block before any GRID block");
    return &scene.meshes[static_cast<std::size_t>(current_mesh)];
  };

  while (!cur.done()) {
    auto raw = cur.take();
    auto line_no = cur.line_number();
    auto toks = split_ws(raw);
    if (toks.empty()) continue;
    // Keywords start in the first column; indented lines are data of skipped blocks.
    if (std::isspace(static_cast<unsigned char>(raw.front()))) continue;
    const std::string kw = upper(toks[0]);

    if (kw == "GRID") {
      MeshInfo mesh;
      if (toks.size() > 1) mesh.name = std::string(toks[1]);
      auto dims = split_ws(cur.take_data("GRID", line_no));
      if (dims.size() < 3) fail_line(cur.line_number(), "GRID: expected cell counts 'nx ny nz'");
      auto nx = to_number<int>(dims[0]), ny = to_number<int>(dims[1]), nz = to_number<int>(dims[2]);
      if (!nx || !ny || !nz || *nx < 1 || *ny < 1 || *nz < 1) fail_line(cur.line_number(), "GRID: bad cell counts");
      mesh.nx = *nx;
      mesh.ny = *ny;
      mesh.nz = *nz;
      if (mesh.name.empty()) mesh.name = "MESH" + std::to_string(scene.meshes.size() + 1);
      scene.meshes.push_back(std::move(mesh));
      current_mesh = static_cast<int>(scene.meshes.size()) - 1;
    } else if (kw == "TRNX" || kw == "TRNY" || kw == "TRNZ") {
      auto* mesh = need_mesh(kw, line_no);
      if (kw == "TRNX") mesh->x = read_trn(cur, kw, line_no, mesh->nx);
      if (kw == "TRNY") mesh->y = read_trn(cur, kw, line_no, mesh->ny);
      if (kw == "TRNZ") mesh->z = read_trn(cur, kw, line_no, mesh->nz);
    } else if (kw == "OBST") {
      need_mesh(kw, line_no);
      auto count = to_number<int>(trim(cur.take_data("OBST", line_no)));
      if (!count || *count < 0) fail_line(cur.line_number(), "OBST: expected obstruction count");
      std::vector<ObstBox> boxes(static_cast<std::size_t>(*count));
      for (auto& box : boxes) {
        std::string_view l;
        if (cur.done() || trim(l = cur.take()).empty() || !std::isspace(static_cast<unsigned char>(l.front())) ||
            split_ws(l).size() < 6) {
          fail_line(cur.line_number(), "OBST: count mismatch, expected " + std::to_string(*count) +
                                           " physical bound lines (block at line " + std::to_string(line_no) + ")");
        }
        auto t = split_ws(l);
        std::array<double, 6> v{};
        for (int n = 0; n < 6; ++n) {
          auto d = to_number<double>(t[static_cast<std::size_t>(n)]);
          if (!d) fail_line(cur.line_number(), "OBST: bad physical bound");
          v[static_cast<std::size_t>(n)] = *d;
        }
        box.mesh = current_mesh;
        box.x0 = v[0], box.x1 = v[1], box.y0 = v[2], box.y1 = v[3], box.z0 = v[4], box.z1 = v[5];
      }
      for (auto& box : boxes) {
        std::string_view l;
        if (cur.done() || trim(l = cur.take()).empty() || !std::isspace(static_cast<unsigned char>(l.front())) ||
            split_ws(l).size() < 6) {
          fail_line(cur.line_number(), "OBST: count mismatch, expected " + std::to_string(*count) +
                                           " index bound lines (block at line " + std::to_string(line_no) + ")");
        }
        auto t = split_ws(l);
        for (int n = 0; n < 6; ++n) {
          auto d = to_number<int>(t[static_cast<std::size_t>(n)]);
          if (!d) fail_line(cur.line_number(), "OBST: bad index bound");
          box.index[static_cast<std::size_t>(n)] = *d;
        }
      }
      scene.obstructions.insert(scene.obstructions.end(), boxes.begin(), boxes.end());
    } else if (kw == "SLCF" || kw == "SLCC") {
      SliceRef ref;
      ref.cell_centered = kw == "SLCC";
      if (toks.size() < 2) fail_line(line_no, kw + ": missing mesh number");
      auto mesh_no = to_number<int>(toks[1]);
      if (!mesh_no) fail_line(line_no, kw + ": bad mesh number");
      ref.mesh = *mesh_no - 1;
      auto amp = std::find(toks.begin(), toks.end(), std::string_view("&"));
      if (amp != toks.end()) {
        if (toks.end() - amp < 7) fail_line(line_no, kw + ": expected six plane indices after '&'");
        std::array<int, 6> b{};
        for (int n = 0; n < 6; ++n) {
          auto d = to_number<int>(*(amp + 1 + n));
          if (!d) fail_line(line_no, kw + ": bad plane index");
          b[static_cast<std::size_t>(n)] = *d;
        }
        ref.bounds = b;
      }
      ref.file = std::string(trim(cur.take_data(kw, line_no)));
      ref.quantity = std::string(trim(cur.take_data(kw, line_no)));
      ref.short_name = std::string(trim(cur.take_data(kw, line_no)));
      ref.units = std::string(trim(cur.take_data(kw, line_no)));
      scene.slices.push_back(std::move(ref));
    }
    // everything else is skipped
  }

  if (scene.meshes.empty()) {
    std::ostringstream os;
    os << "line " << cur.line_number() << ": no GRID block found before end of input";
    throw ParseError(os.str(), cur.line_number());
  }
  for (std::size_t m = 0; m < scene.meshes.size(); ++m) {
    const auto& mesh = scene.meshes[m];
    const std::string what = "mesh " + std::to_string(m + 1) + " (" + mesh.name + ")";
    check_axis(mesh.x, mesh.nx, what + " TRNX");
    check_axis(mesh.y, mesh.ny, what + " TRNY");
    check_axis(mesh.z, mesh.nz, what + " TRNZ");
  }
  for (const auto& box : scene.obstructions) {
    const auto& mesh = scene.meshes[static_cast<std::size_t>(box.mesh)];
    const std::array<int, 3> n{mesh.nx, mesh.ny, mesh.nz};
    for (int a = 0; a < 3; ++a) {
      int lo = box.index[static_cast<std::size_t>(2 * a)], hi = box.index[static_cast<std::size_t>(2 * a + 1)];
      if (lo < 0 || hi > n[static_cast<std::size_t>(a)] || lo > hi)
        throw ParseError("obstruction index bounds outside mesh " + std::to_string(box.mesh + 1));
    }
  }
  for (const auto& s : scene.slices) {
    if (s.mesh < 0 || s.mesh >= static_cast<int>(scene.meshes.size()))
      throw ParseError("slice '" + s.file + "' references unknown mesh " + std::to_string(s.mesh + 1));
    if (s.quantity.empty()) throw ParseError("slice '" + s.file + "' has an empty quantity label");
  }
  return scene;
}

SmvScene parse_smv(std::istream& in) {
  std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  return parse_smv(std::string_view(text));
}

// ---------------------------------------------------------------------------
// .sf

ByteOrder detect_endianness(std::span<const std::byte> bytes) {
  if (bytes.size() < 4) throw ParseError("slice file shorter than one record marker", 0);
  if (load_u32(bytes.data(), ByteOrder::Little) == 30) return ByteOrder::Little;
  if (load_u32(bytes.data(), ByteOrder::Big) == 30) return ByteOrder::Big;
  throw ParseError("first record marker is not 30 in either byte order; not a slice file", 0);
}

SliceData read_slice(std::span<const std::byte> bytes) {
  SliceData out;
  out.byte_order = detect_endianness(bytes);
  RecordReader rr(bytes, out.byte_order);

  out.header.quantity = read_label(rr, "quantity");
  out.header.short_name = read_label(rr, "short name");
  out.header.units = read_label(rr, "units");

  std::span<const std::byte> payload;
  if (rr.next(payload) != RecordStatus::Ok)
    throw ParseError("slice header truncated before bounds record", rr.record_start());
  if (payload.size() != 24) {
    std::ostringstream os;
    os << "bounds record at byte offset " << rr.record_start() << " has " << payload.size() << " bytes, expected 24";
    throw ParseError(os.str(), rr.record_start());
  }
  for (int n = 0; n < 6; ++n)
    out.header.bounds[static_cast<std::size_t>(n)] = load_i32(payload.data() + 4 * n, out.byte_order);
  for (int a = 0; a < 3; ++a) {
    if (out.header.extent(a) < 1) throw ParseError("slice bounds are inverted", rr.record_start());
  }
  const std::size_t n_values = out.header.cell_count();

  for (;;) {
    auto st = rr.next(payload);
    if (st == RecordStatus::End) break;
    if (st == RecordStatus::Truncated) {
      ++out.dropped_frames;
      break;
    }
    if (payload.size() != 4) {
      std::ostringstream os;
      os << "time record at byte offset " << rr.record_start() << " has " << payload.size() << " bytes, expected 4";
      throw ParseError(os.str(), rr.record_start());
    }
    RawFrame frame;
    frame.time = load_f32(payload.data(), out.byte_order);
    const auto time_offset = rr.record_start();

    st = rr.next(payload);
    if (st != RecordStatus::Ok) {
      ++out.dropped_frames;
      break;
    }
    if (payload.size() != 4 * n_values) {
      std::ostringstream os;
      os << "data record at byte offset " << rr.record_start() << " has " << payload.size() << " bytes, expected "
         << 4 * n_values;
      throw ParseError(os.str(), rr.record_start());
    }
    frame.values.resize(n_values);
    for (std::size_t n = 0; n < n_values; ++n) frame.values[n] = load_f32(payload.data() + 4 * n, out.byte_order);
    if (!out.frames.empty() && !(frame.time > out.frames.back().time)) {
      std::ostringstream os;
      os << "slice frame times not strictly increasing at byte offset " << time_offset;
      throw ParseError(os.str(), time_offset);
    }
    out.frames.push_back(std::move(frame));
  }
  return out;
}

SliceData read_slice_file(const std::filesystem::path& path) {
  auto bytes = read_file_bytes(path);
  try {
    return read_slice(bytes);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what(), e.offset());
  }
}

// ---------------------------------------------------------------------------
// portable format

SceneDescription parse_portable_scene(std::string_view text, double eval_height) {
  SceneDescription scene;
  scene.eval_height = eval_height;
  LineCursor cur(text);
  bool have_grid = false;
  while (!cur.done()) {
    auto line = cur.take();
    auto hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    auto toks = split_ws(line);
    if (toks.empty()) continue;
    const auto kw = upper(toks[0]);
    if (kw == "GRID") {
      if (have_grid) fail_line(cur.line_number(), "duplicate grid line");
      if (toks.size() != 7) fail_line(cur.line_number(), "expected 'grid nx ny x0 y0 dx dy'");
      auto nx = to_number<int>(toks[1]), ny = to_number<int>(toks[2]);
      auto x0 = to_number<double>(toks[3]), y0 = to_number<double>(toks[4]);
      auto dx = to_number<double>(toks[5]), dy = to_number<double>(toks[6]);
      if (!nx || !ny || !x0 || !y0 || !dx || !dy) fail_line(cur.line_number(), "malformed grid line");
      if (*nx < 1 || *ny < 1 || !(*dx > 0.0)) fail_line(cur.line_number(), "grid dimensions must be positive");
      if (*dx != *dy) fail_line(cur.line_number(), "grid cells must be square (dx == dy)");
      scene.nx = *nx;
      scene.ny = *ny;
      scene.origin_x = *x0;
      scene.origin_y = *y0;
      scene.cell_size = *dx;
      scene.obstructed = Mask(scene.nx, scene.ny, 0);
      have_grid = true;
    } else if (kw == "OBST") {
      if (!have_grid) fail_line(cur.line_number(), "obst line before grid line");
      if (toks.size() != 3) fail_line(cur.line_number(), "expected 'obst i j'");
      auto i = to_number<int>(toks[1]), j = to_number<int>(toks[2]);
      if (!i || !j) fail_line(cur.line_number(), "malformed obst line");
      if (!scene.obstructed.contains({*i, *j})) fail_line(cur.line_number(), "obst cell outside declared grid");
      scene.obstructed(*i, *j) = 1;
    } else {
      fail_line(cur.line_number(), "unknown portable scene keyword '" + std::string(toks[0]) + "'");
    }
  }
  if (!have_grid) throw ParseError("portable scene has no grid line");
  return scene;
}

FieldSeries parse_portable_field(std::span<const std::byte> bytes, int nx, int ny) {
  const auto* begin = reinterpret_cast<const char*>(bytes.data());
  const auto* nl = static_cast<const char*>(std::memchr(begin, '\n', bytes.size()));
  if (!nl) throw ParseError("portable field header line is not terminated", 0);
  std::string_view header(begin, static_cast<std::size_t>(nl - begin));
  auto toks = split_ws(header);
  if (toks.size() < 2 || upper(toks[0]) != "FRAMES") throw ParseError("portable field must start with 'frames n'", 1);
  auto n = to_number<int>(toks[1]);
  if (!n || *n < 0) throw ParseError("portable field frame count is malformed", 1);
  if (static_cast<int>(toks.size()) != 2 + *n)
    throw ParseError("portable field header lists " + std::to_string(toks.size() - 2) + " times for " +
                         std::to_string(*n) + " frames",
                     1);
  FieldSeries field;
  for (int k = 0; k < *n; ++k) {
    auto t = to_number<double>(toks[static_cast<std::size_t>(2 + k)]);
    if (!t) throw ParseError("portable field time is malformed", 1);
    field.times.push_back(*t);
  }
  const std::size_t header_bytes = static_cast<std::size_t>(nl - begin) + 1;
  const std::size_t cells = static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny);
  const std::size_t expected = static_cast<std::size_t>(*n) * cells * 4;
  if (bytes.size() - header_bytes != expected) {
    std::ostringstream os;
    os << "portable field payload has " << bytes.size() - header_bytes << " bytes, grid " << nx << "x" << ny << " with "
       << *n << " frames needs " << expected;
    throw ParseError(os.str(), header_bytes);
  }
  const std::byte* p = bytes.data() + header_bytes;
  for (int k = 0; k < *n; ++k) {
    Raster<float> frame(nx, ny);
    for (auto& v : frame.values()) {
      v = load_f32(p, ByteOrder::Little);
      p += 4;
    }
    field.frames.push_back(std::move(frame));
  }
  for (std::size_t k = 1; k < field.times.size(); ++k)
    if (!(field.times[k] > field.times[k - 1])) throw ParseError("portable field times are not strictly increasing", 1);
  return field;
}

std::string write_portable_scene(const SceneDescription& scene) {
  std::ostringstream os;
  os.precision(17);
  os << "grid " << scene.nx << ' ' << scene.ny << ' ' << scene.origin_x << ' ' << scene.origin_y << ' '
     << scene.cell_size << ' ' << scene.cell_size << '\n';
  for (int j = 0; j < scene.ny; ++j)
    for (int i = 0; i < scene.nx; ++i)
      if (scene.obstructed(i, j)) os << "obst " << i << ' ' << j << '\n';
  return os.str();
}

std::vector<std::byte> write_portable_field(const FieldSeries& field) {
  std::ostringstream os;
  os.precision(17);
  os << "frames " << field.frames.size();
  for (double t : field.times) os << ' ' << t;
  os << '\n';
  const auto header = os.str();
  std::vector<std::byte> out;
  const auto* h = reinterpret_cast<const std::byte*>(header.data());
  out.insert(out.end(), h, h + header.size());
  for (const auto& frame : field.frames)
    for (float v : frame.values()) store_f32_le(out, v);
  return out;
}

std::vector<std::byte> read_file_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::vector<char> buf{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  if (in.bad()) throw IoError("error reading '" + path.string() + "'");
  std::vector<std::byte> out(buf.size());
  if (!buf.empty()) std::memcpy(out.data(), buf.data(), buf.size());
  return out;
}

std::string read_file_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  if (in.bad()) throw IoError("error reading '" + path.string() + "'");
  return text;
}

}  // namespace vismap::fds
