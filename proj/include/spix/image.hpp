// Copyright (c) 2026 the spix authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef SPIX_IMAGE_HPP
#define SPIX_IMAGE_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace spix {

enum class ErrorCode {
  FileNotFound,
  UnsupportedFormat,
  CorruptData,
  ImageTooSmall,
  TooManyClusters,
  LengthMismatch,
  DimensionMismatch,
  EmptyLabel,
  EmptyMatrix,
  EmptyDataset,
  InvalidArgument,
  ConfigError,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Single-channel row-major raster.
template <typename T>
struct Raster {
  int width = 0;
  int height = 0;
  std::vector<T> v;

  Raster() = default;
  Raster(int w, int h, T fill = T{}) : width(w), height(h), v(static_cast<size_t>(w) * h, fill) {}

  T& at(int x, int y) { return v[static_cast<size_t>(y) * width + x]; }
  const T& at(int x, int y) const { return v[static_cast<size_t>(y) * width + x]; }
  size_t size() const { return v.size(); }
  bool same_shape(int w, int h) const { return width == w && height == h; }
};

using GradientMap = Raster<double>;    // non-negative Sobel magnitudes
using EdgeMap = Raster<double>;        // edge strengths, >= 0
using LabelMap = Raster<std::int32_t>; // per-pixel superpixel id

/// 8-bit sRGB raster, row-major interleaved RGB.
struct RgbImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> data;

  RgbImage() = default;
  RgbImage(int w, int h) : width(w), height(h), data(static_cast<size_t>(w) * h * 3, 0) {}

  std::uint8_t* pixel(int x, int y) { return &data[(static_cast<size_t>(y) * width + x) * 3]; }
  const std::uint8_t* pixel(int x, int y) const {
    return &data[(static_cast<size_t>(y) * width + x) * 3];
  }
  size_t pixel_count() const { return static_cast<size_t>(width) * height; }
};

struct LabColor {
  double l = 0.0;
  double a = 0.0;
  double b = 0.0;
};

/// CIELAB raster (D65), row-major interleaved (l, a, b) doubles.
struct LabImage {
  int width = 0;
  int height = 0;
  std::vector<double> data;

  LabImage() = default;
  LabImage(int w, int h) : width(w), height(h), data(static_cast<size_t>(w) * h * 3, 0.0) {}

  double* pixel(int x, int y) { return &data[(static_cast<size_t>(y) * width + x) * 3]; }
  const double* pixel(int x, int y) const {
    return &data[(static_cast<size_t>(y) * width + x) * 3];
  }
  LabColor color(int x, int y) const {
    const double* p = pixel(x, y);
    return {p[0], p[1], p[2]};
  }
  size_t pixel_count() const { return static_cast<size_t>(width) * height; }
};

/// sRGB -> linear RGB -> XYZ (D65) -> CIELAB, one triple.
LabColor rgb_to_lab(std::uint8_t r, std::uint8_t g, std::uint8_t b);

/// Inverse of rgb_to_lab; output channels clamped to 8-bit range.
void lab_to_rgb(const LabColor& lab, std::uint8_t& r, std::uint8_t& g, std::uint8_t& b);

LabImage rgb_to_lab(const RgbImage& img);
RgbImage lab_to_rgb(const LabImage& img);

/// 3x3 Sobel magnitude with edge-replication padding.
/// Throws ImageTooSmall when width or height < 3.
GradientMap sobel_gradient(const Raster<double>& plane);

}  // namespace spix

#endif  // SPIX_IMAGE_HPP
