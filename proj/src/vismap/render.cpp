// Copyright 2026 The vismap Authors
// SPDX-License-Identifier: Apache-2.0

#include "vismap/render.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#ifdef VISMAP_HAVE_PNG
#include <png.h>
#endif

#include "vismap/error.hpp"
#include "vismap/fds_io.hpp"

namespace vismap {

void RenderStyle::validate() const {
  const std::array<Rgb, 4> c{pass, fail, obstructed, never};
  for (std::size_t a = 0; a < c.size(); ++a)
    for (std::size_t b = a + 1; b < c.size(); ++b)
      if (c[a] == c[b] || c[a].gray() == c[b].gray()) throw ConfigError("render style colors must be distinct");
  if (colormap != "gray" && colormap != "heat") throw ConfigError("unknown colormap '" + colormap + "'");
}

Raster<CellState> tri_state(const Mask& map, const Mask& obstructed) {
  if (!map.same_shape(obstructed)) throw ComputeError("map and obstruction mask differ in shape");
  Raster<CellState> out(map.nx(), map.ny());
  for (std::size_t n = 0; n < out.size(); ++n)
    out.values()[n] = obstructed.values()[n] ? CellState::Obstructed : map.values()[n] ? CellState::Pass : CellState::Fail;
  return out;
}

Rgb Image::at(int x, int y) const {
  const auto p = 3 * (static_cast<std::size_t>(y) * static_cast<std::size_t>(width) + static_cast<std::size_t>(x));
  return {rgb[p], rgb[p + 1], rgb[p + 2]};
}

namespace {

Image blank(int w, int h) {
  Image img;
  img.width = w;
  img.height = h;
  img.rgb.assign(static_cast<std::size_t>(w) * static_cast<std::size_t>(h) * 3, 0);
  return img;
}

void put(Image& img, int x, int y, Rgb c) {
  const auto p = 3 * (static_cast<std::size_t>(y) * static_cast<std::size_t>(img.width) + static_cast<std::size_t>(x));
  img.rgb[p] = c.r;
  img.rgb[p + 1] = c.g;
  img.rgb[p + 2] = c.b;
}

Rgb colormap(const std::string& name, double u) {
  u = std::clamp(u, 0.0, 1.0);
  if (name == "heat") {
    // black -> red -> yellow -> white
    const double r = std::clamp(3.0 * u, 0.0, 1.0), g = std::clamp(3.0 * u - 1.0, 0.0, 1.0),
                 b = std::clamp(3.0 * u - 2.0, 0.0, 1.0);
    return {static_cast<std::uint8_t>(std::lround(255 * r)), static_cast<std::uint8_t>(std::lround(255 * g)),
            static_cast<std::uint8_t>(std::lround(255 * b))};
  }
  const auto v = static_cast<std::uint8_t>(std::lround(255 * u));
  return {v, v, v};
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw IoError("error writing '" + path.string() + "'");
}

std::string fmt_num(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

}  // namespace

Image render_states(const Raster<CellState>& states, const RenderStyle& style) {
  style.validate();
  Image img = blank(states.nx(), states.ny());
  for (int j = 0; j < states.ny(); ++j) {
    for (int i = 0; i < states.nx(); ++i) {
      Rgb c = style.fail;
      if (states(i, j) == CellState::Pass) c = style.pass;
      if (states(i, j) == CellState::Obstructed) c = style.obstructed;
      put(img, i, states.ny() - 1 - j, c);
    }
  }
  return img;
}

Image render_field(const Raster<double>& field, const Mask& obstructed, double lo, double hi,
                   const RenderStyle& style) {
  style.validate();
  if (!field.same_shape(obstructed)) throw ComputeError("field and obstruction mask differ in shape");
  Image img = blank(field.nx(), field.ny());
  const double span = hi > lo ? hi - lo : 1.0;
  for (int j = 0; j < field.ny(); ++j) {
    for (int i = 0; i < field.nx(); ++i) {
      Rgb c;
      if (obstructed(i, j))
        c = style.obstructed;
      else if (std::isinf(field(i, j)))
        c = style.never;
      else
        c = colormap(style.colormap, (field(i, j) - lo) / span);
      put(img, i, field.ny() - 1 - j, c);
    }
  }
  return img;
}

Image composite_over(const Image& background, const Image& overlay, double alpha) {
  if (background.width < 1 || background.height < 1) return overlay;
  alpha = std::clamp(alpha, 0.0, 1.0);
  Image out = overlay;
  for (int y = 0; y < overlay.height; ++y) {
    const int by = std::min(background.height - 1, static_cast<int>((y + 0.5) * background.height / overlay.height));
    for (int x = 0; x < overlay.width; ++x) {
      const int bx = std::min(background.width - 1, static_cast<int>((x + 0.5) * background.width / overlay.width));
      const Rgb f = overlay.at(x, y), b = background.at(bx, by);
      auto mix = [&](std::uint8_t fv, std::uint8_t bv) {
        return static_cast<std::uint8_t>(std::lround(alpha * fv + (1.0 - alpha) * bv));
      };
      put(out, x, y, {mix(f.r, b.r), mix(f.g, b.g), mix(f.b, b.b)});
    }
  }
  return out;
}

bool png_supported() noexcept {
#ifdef VISMAP_HAVE_PNG
  return true;
#else
  return false;
#endif
}

std::vector<std::uint8_t> encode_pgm(const Image& image) {
  const std::string header =
      "P5\n" + std::to_string(image.width) + " " + std::to_string(image.height) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.reserve(out.size() + static_cast<std::size_t>(image.width) * static_cast<std::size_t>(image.height));
  for (int y = 0; y < image.height; ++y)
    for (int x = 0; x < image.width; ++x) out.push_back(image.at(x, y).gray());
  return out;
}

namespace {

// Minimal netpbm reader for P5/P6 with maxval 255.
Image decode_netpbm(const std::vector<std::uint8_t>& bytes) {
  std::size_t p = 0;
  auto skip = [&] {
    for (;;) {
      while (p < bytes.size() && std::isspace(bytes[p])) ++p;
      if (p < bytes.size() && bytes[p] == '#') {
        while (p < bytes.size() && bytes[p] != '\n') ++p;
      } else {
        return;
      }
    }
  };
  auto number = [&] {
    skip();
    int v = 0;
    bool any = false;
    while (p < bytes.size() && std::isdigit(bytes[p])) v = v * 10 + (bytes[p++] - '0'), any = true;
    if (!any) throw ParseError("malformed netpbm header", p);
    return v;
  };
  if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '5' && bytes[1] != '6'))
    throw ParseError("not a binary PGM/PPM image", 0);
  const bool color = bytes[1] == '6';
  p = 2;
  const int w = number(), h = number(), maxval = number();
  if (maxval != 255) throw ParseError("only 8-bit netpbm images are supported", p);
  ++p;
  const std::size_t need = static_cast<std::size_t>(w) * static_cast<std::size_t>(h) * (color ? 3 : 1);
  if (bytes.size() < p + need) throw ParseError("netpbm pixel data truncated", p);
  Image img = blank(w, h);
  for (std::size_t n = 0; n < static_cast<std::size_t>(w) * static_cast<std::size_t>(h); ++n) {
    if (color) {
      std::memcpy(&img.rgb[3 * n], &bytes[p + 3 * n], 3);
    } else {
      img.rgb[3 * n] = img.rgb[3 * n + 1] = img.rgb[3 * n + 2] = bytes[p + n];
    }
  }
  return img;
}

#ifdef VISMAP_HAVE_PNG
Image decode_png(const std::vector<std::uint8_t>& bytes) {
  png_image pi;
  std::memset(&pi, 0, sizeof pi);
  pi.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_memory(&pi, bytes.data(), bytes.size()))
    throw ParseError(std::string("cannot decode PNG: ") + pi.message);
  pi.format = PNG_FORMAT_RGB;
  Image img = blank(static_cast<int>(pi.width), static_cast<int>(pi.height));
  if (!png_image_finish_read(&pi, nullptr, img.rgb.data(), 0, nullptr)) {
    png_image_free(&pi);
    throw ParseError(std::string("cannot decode PNG: ") + pi.message);
  }
  return img;
}
#endif

}  // namespace

Image decode_pgm(const std::vector<std::uint8_t>& bytes) { return decode_netpbm(bytes); }

std::vector<std::uint8_t> encode_png(const Image& image) {
#ifdef VISMAP_HAVE_PNG
  png_image pi;
  std::memset(&pi, 0, sizeof pi);
  pi.version = PNG_IMAGE_VERSION;
  pi.width = static_cast<png_uint_32>(image.width);
  pi.height = static_cast<png_uint_32>(image.height);
  pi.format = PNG_FORMAT_RGB;
  png_alloc_size_t size = 0;
  if (!png_image_write_to_memory(&pi, nullptr, &size, 0, image.rgb.data(), 0, nullptr))
    throw IoError(std::string("PNG encoding failed: ") + pi.message);
  std::vector<std::uint8_t> out(size);
  if (!png_image_write_to_memory(&pi, out.data(), &size, 0, image.rgb.data(), 0, nullptr))
    throw IoError(std::string("PNG encoding failed: ") + pi.message);
  out.resize(size);
  return out;
#else
  (void)image;
  throw ConfigError("PNG output requested but this build has no PNG support");
#endif
}

Image read_image(const std::filesystem::path& path) {
  auto raw = fds::read_file_bytes(path);
  std::vector<std::uint8_t> bytes(raw.size());
  if (!raw.empty()) std::memcpy(bytes.data(), raw.data(), raw.size());
  if (bytes.size() >= 8 && bytes[0] == 0x89 && bytes[1] == 'P' && bytes[2] == 'N' && bytes[3] == 'G') {
#ifdef VISMAP_HAVE_PNG
    return decode_png(bytes);
#else
    throw ConfigError("'" + path.string() + "' is a PNG image but this build has no PNG support");
#endif
  }
  return decode_netpbm(bytes);
}

void write_bytes(const std::filesystem::path& path, const std::vector<std::uint8_t>& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("error writing '" + path.string() + "'");
}

void write_image(const Image& image, const std::filesystem::path& path, ImageFormat format) {
  write_bytes(path, format == ImageFormat::Png ? encode_png(image) : encode_pgm(image));
}

void write_map_image(const Raster<CellState>& states, const RenderStyle& style, const std::filesystem::path& path,
                     ImageFormat format) {
  write_image(render_states(states, style), path, format);
}

std::string field_csv(const SceneDescription& scene, const Raster<double>& raster) {
  if (raster.nx() != scene.nx || raster.ny() != scene.ny) throw ComputeError("raster does not match the scene grid");
  std::string out = "x,y,value\n";
  for (int j = 0; j < scene.ny; ++j)
    for (int i = 0; i < scene.nx; ++i)
      out += fmt_num("%.6g", scene.center_x(i)) + ',' + fmt_num("%.6g", scene.center_y(j)) + ',' +
             fmt_num("%.9g", raster(i, j)) + '\n';
  return out;
}

std::string aset_csv(const SceneDescription& scene, const Raster<double>& aset, const Mask& obstructed) {
  if (aset.nx() != scene.nx || aset.ny() != scene.ny || !aset.same_shape(obstructed))
    throw ComputeError("ASET raster does not match the scene grid");
  std::string out = "x,y,value\n";
  for (int j = 0; j < scene.ny; ++j) {
    for (int i = 0; i < scene.nx; ++i) {
      out += fmt_num("%.6g", scene.center_x(i)) + ',' + fmt_num("%.6g", scene.center_y(j)) + ',';
      if (obstructed(i, j))
        out += "obstructed";
      else if (std::isinf(aset(i, j)))
        out += "never";
      else
        out += fmt_num("%.9g", aset(i, j));
      out += '\n';
    }
  }
  return out;
}

void write_field_csv(const SceneDescription& scene, const Raster<double>& raster, const std::filesystem::path& path) {
  write_text(path, field_csv(scene, raster));
}

void write_aset(const SceneDescription& scene, const Raster<double>& aset, const Mask& obstructed,
                const std::filesystem::path& path) {
  write_text(path, aset_csv(scene, aset, obstructed));
}

}  // namespace vismap
