// Copyright (c) 2026 the spix authors.
// SPDX-License-Identifier: Apache-2.0

#include "spix/io.hpp"

#include <png.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <memory>

namespace spix {

namespace {

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

FilePtr open_file(const std::string& path, const char* mode) {
  FilePtr f(std::fopen(path.c_str(), mode));
  if (!f) {
    if (mode[0] == 'r') throw Error(ErrorCode::FileNotFound, "cannot open " + path);
    throw Error(ErrorCode::FileNotFound, "cannot create " + path);
  }
  return f;
}

[[noreturn]] void png_error_fn(png_structp png, png_const_charp msg) {
  (void)png;
  throw Error(ErrorCode::CorruptData, std::string("png: ") + (msg ? msg : "decode error"));
}

void png_warn_fn(png_structp, png_const_charp) {}

struct PngReader {
  png_structp png = nullptr;
  png_infop info = nullptr;
  PngReader() {
    png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, png_error_fn, png_warn_fn);
    if (png) info = png_create_info_struct(png);
    if (!png || !info) throw Error(ErrorCode::CorruptData, "png: allocation failure");
  }
  ~PngReader() { png_destroy_read_struct(&png, &info, nullptr); }
};

struct PngWriter {
  png_structp png = nullptr;
  png_infop info = nullptr;
  PngWriter() {
    png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, png_error_fn, png_warn_fn);
    if (png) info = png_create_info_struct(png);
    if (!png || !info) throw Error(ErrorCode::CorruptData, "png: allocation failure");
  }
  ~PngWriter() { png_destroy_write_struct(&png, &info); }
};

bool is_png_signature(const unsigned char* sig, size_t n) {
  return png_sig_cmp(sig, 0, n) == 0;
}

RgbImage load_png_rgb(const std::string& path) {
  FilePtr f = open_file(path, "rb");
  PngReader r;
  png_init_io(r.png, f.get());
  png_read_info(r.png, r.info);

  png_uint_32 w = png_get_image_width(r.png, r.info);
  png_uint_32 h = png_get_image_height(r.png, r.info);
  int depth = png_get_bit_depth(r.png, r.info);
  int color = png_get_color_type(r.png, r.info);

  if (depth == 16) throw Error(ErrorCode::UnsupportedFormat, "16-bit color input: " + path);
  if (color == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(r.png);
  if (color == PNG_COLOR_TYPE_GRAY || color == PNG_COLOR_TYPE_GRAY_ALPHA)
    png_set_gray_to_rgb(r.png);
  if (depth < 8) png_set_expand(r.png);
  if (png_get_valid(r.png, r.info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(r.png);
  png_set_strip_alpha(r.png);
  png_read_update_info(r.png, r.info);

  if (png_get_rowbytes(r.png, r.info) != w * 3) {
    throw Error(ErrorCode::UnsupportedFormat, "unexpected png layout: " + path);
  }

  RgbImage img(static_cast<int>(w), static_cast<int>(h));
  std::vector<png_bytep> rows(h);
  for (png_uint_32 y = 0; y < h; ++y) rows[y] = img.data.data() + static_cast<size_t>(y) * w * 3;
  png_read_image(r.png, rows.data());
  png_read_end(r.png, nullptr);
  return img;
}

int ppm_next_token(std::FILE* f, char* buf, size_t cap) {
  int c;
  do {
    c = std::fgetc(f);
    if (c == '#') {
      while (c != '\n' && c != EOF) c = std::fgetc(f);
    }
  } while (c != EOF && std::isspace(c));
  if (c == EOF) return 0;
  size_t n = 0;
  while (c != EOF && !std::isspace(c) && n + 1 < cap) {
    buf[n++] = static_cast<char>(c);
    c = std::fgetc(f);
  }
  buf[n] = '\0';
  return 1;
}

RgbImage load_ppm(const std::string& path) {
  FilePtr f = open_file(path, "rb");
  char tok[64];
  if (!ppm_next_token(f.get(), tok, sizeof tok) || std::strcmp(tok, "P6") != 0) {
    throw Error(ErrorCode::UnsupportedFormat, "not a P6 ppm: " + path);
  }
  long dims[3];
  for (int i = 0; i < 3; ++i) {
    if (!ppm_next_token(f.get(), tok, sizeof tok)) {
      throw Error(ErrorCode::CorruptData, "truncated ppm header: " + path);
    }
    char* end = nullptr;
    dims[i] = std::strtol(tok, &end, 10);
    if (end == tok || dims[i] <= 0) {
      throw Error(ErrorCode::CorruptData, "bad ppm header: " + path);
    }
  }
  if (dims[2] != 255) throw Error(ErrorCode::UnsupportedFormat, "ppm maxval must be 255");

  RgbImage img(static_cast<int>(dims[0]), static_cast<int>(dims[1]));
  size_t want = img.data.size();
  if (std::fread(img.data.data(), 1, want, f.get()) != want) {
    throw Error(ErrorCode::CorruptData, "truncated ppm data: " + path);
  }
  return img;
}

}  // namespace

RgbImage load_image(const std::string& path) {
  unsigned char sig[8];
  {
    FilePtr f = open_file(path, "rb");
    size_t got = std::fread(sig, 1, sizeof sig, f.get());
    if (got < 2) throw Error(ErrorCode::CorruptData, "file too short: " + path);
    if (got >= 8 && is_png_signature(sig, 8)) {
      // fall through to the png loader below
    } else if (sig[0] == 'P' && sig[1] == '6') {
      f.reset();
      return load_ppm(path);
    } else {
      throw Error(ErrorCode::UnsupportedFormat, "unknown image format: " + path);
    }
  }
  RgbImage img = load_png_rgb(path);
  if (img.width < 2 || img.height < 2) {
    throw Error(ErrorCode::UnsupportedFormat, "image smaller than 2x2: " + path);
  }
  return img;
}

void save_png(const std::string& path, const RgbImage& img) {
  FilePtr f = open_file(path, "wb");
  PngWriter w;
  png_init_io(w.png, f.get());
  png_set_IHDR(w.png, w.info, img.width, img.height, 8, PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(w.png, w.info);
  for (int y = 0; y < img.height; ++y) {
    png_write_row(w.png, const_cast<png_bytep>(img.data.data() + static_cast<size_t>(y) * img.width * 3));
  }
  png_write_end(w.png, nullptr);
}

void save_edge_png(const std::string& path, const EdgeMap& edges) {
  FilePtr f = open_file(path, "wb");
  PngWriter w;
  png_init_io(w.png, f.get());
  png_set_IHDR(w.png, w.info, edges.width, edges.height, 8, PNG_COLOR_TYPE_GRAY,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(w.png, w.info);
  std::vector<std::uint8_t> row(edges.width);
  for (int y = 0; y < edges.height; ++y) {
    for (int x = 0; x < edges.width; ++x) {
      double s = std::clamp(edges.at(x, y), 0.0, 1.0);
      row[x] = static_cast<std::uint8_t>(std::lround(255.0 * s));
    }
    png_write_row(w.png, row.data());
  }
  png_write_end(w.png, nullptr);
}

EdgeMap load_edge_png(const std::string& path) {
  FilePtr f = open_file(path, "rb");
  PngReader r;
  png_init_io(r.png, f.get());
  png_read_info(r.png, r.info);
  if (png_get_color_type(r.png, r.info) != PNG_COLOR_TYPE_GRAY ||
      png_get_bit_depth(r.png, r.info) != 8) {
    throw Error(ErrorCode::UnsupportedFormat, "edge map must be 8-bit grayscale: " + path);
  }
  png_uint_32 w = png_get_image_width(r.png, r.info);
  png_uint_32 h = png_get_image_height(r.png, r.info);
  EdgeMap out(static_cast<int>(w), static_cast<int>(h));
  std::vector<std::uint8_t> row(w);
  for (png_uint_32 y = 0; y < h; ++y) {
    png_read_row(r.png, row.data(), nullptr);
    for (png_uint_32 x = 0; x < w; ++x) out.at(static_cast<int>(x), static_cast<int>(y)) = row[x] / 255.0;
  }
  png_read_end(r.png, nullptr);
  return out;
}

void save_label_map(const std::string& path, const LabelMap& labels) {
  std::int32_t max_label = 0;
  for (std::int32_t l : labels.v) max_label = std::max(max_label, l);
  if (max_label > 65535) {
    throw Error(ErrorCode::InvalidArgument, "label exceeds 16-bit png range");
  }
  {
    FilePtr f = open_file(path, "wb");
    PngWriter w;
    png_init_io(w.png, f.get());
    png_set_IHDR(w.png, w.info, labels.width, labels.height, 16, PNG_COLOR_TYPE_GRAY,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(w.png, w.info);
    std::vector<std::uint8_t> row(static_cast<size_t>(labels.width) * 2);
    for (int y = 0; y < labels.height; ++y) {
      for (int x = 0; x < labels.width; ++x) {
        std::uint16_t v = static_cast<std::uint16_t>(labels.at(x, y));
        row[2 * x] = static_cast<std::uint8_t>(v >> 8);  // png is big-endian
        row[2 * x + 1] = static_cast<std::uint8_t>(v & 0xff);
      }
      png_write_row(w.png, row.data());
    }
    png_write_end(w.png, nullptr);
  }
  std::ofstream side(path + ".txt");
  side << "K_out=" << (max_label + 1) << "\n";
}

LabelMap load_label_map(const std::string& path) {
  FilePtr f = open_file(path, "rb");
  PngReader r;
  png_init_io(r.png, f.get());
  png_read_info(r.png, r.info);
  if (png_get_color_type(r.png, r.info) != PNG_COLOR_TYPE_GRAY ||
      png_get_bit_depth(r.png, r.info) != 16) {
    throw Error(ErrorCode::UnsupportedFormat, "label map must be 16-bit grayscale: " + path);
  }
  png_uint_32 w = png_get_image_width(r.png, r.info);
  png_uint_32 h = png_get_image_height(r.png, r.info);
  LabelMap out(static_cast<int>(w), static_cast<int>(h));
  std::vector<std::uint8_t> row(static_cast<size_t>(w) * 2);
  for (png_uint_32 y = 0; y < h; ++y) {
    png_read_row(r.png, row.data(), nullptr);
    for (png_uint_32 x = 0; x < w; ++x) {
      out.at(static_cast<int>(x), static_cast<int>(y)) =
          (static_cast<std::int32_t>(row[2 * x]) << 8) | row[2 * x + 1];
    }
  }
  png_read_end(r.png, nullptr);
  return out;
}

}  // namespace spix
