// Copyright (c) 2026 the spix authors.
// SPDX-License-Identifier: Apache-2.0

#include "spix/image.hpp"

#include <algorithm>
#include <cmath>

namespace spix {

namespace {

// CIE constants, exact rational forms.
constexpr double kEpsilon = 216.0 / 24389.0;
constexpr double kKappa = 24389.0 / 27.0;

// D65 reference white for the sRGB matrix below.
constexpr double kXn = 0.95047;
constexpr double kYn = 1.0;
constexpr double kZn = 1.08883;

double srgb_to_linear(double c) {
  return c <= 0.04045 ? c / 12.92 : std::pow((c + 0.055) / 1.055, 2.4);
}

double linear_to_srgb(double c) {
  return c <= 0.0031308 ? 12.92 * c : 1.055 * std::pow(c, 1.0 / 2.4) - 0.055;
}

double lab_f(double t) {
  return t > kEpsilon ? std::cbrt(t) : (kKappa * t + 16.0) / 116.0;
}

std::uint8_t quantize8(double c) {
  double q = std::clamp(c, 0.0, 1.0) * 255.0;
  return static_cast<std::uint8_t>(std::lround(q));
}

}  // namespace

LabColor rgb_to_lab(std::uint8_t r8, std::uint8_t g8, std::uint8_t b8) {
  double r = srgb_to_linear(r8 / 255.0);
  double g = srgb_to_linear(g8 / 255.0);
  double b = srgb_to_linear(b8 / 255.0);

  double x = 0.4124564 * r + 0.3575761 * g + 0.1804375 * b;
  double y = 0.2126729 * r + 0.7151522 * g + 0.0721750 * b;
  double z = 0.0193339 * r + 0.1191920 * g + 0.9503041 * b;

  double fx = lab_f(x / kXn);
  double fy = lab_f(y / kYn);
  double fz = lab_f(z / kZn);

  return {116.0 * fy - 16.0, 500.0 * (fx - fy), 200.0 * (fy - fz)};
}

void lab_to_rgb(const LabColor& lab, std::uint8_t& r8, std::uint8_t& g8, std::uint8_t& b8) {
  double fy = (lab.l + 16.0) / 116.0;
  double fx = fy + lab.a / 500.0;
  double fz = fy - lab.b / 200.0;

  double fx3 = fx * fx * fx;
  double fz3 = fz * fz * fz;
  double x = fx3 > kEpsilon ? fx3 : (116.0 * fx - 16.0) / kKappa;
  double y = lab.l > kKappa * kEpsilon ? fy * fy * fy : lab.l / kKappa;
  double z = fz3 > kEpsilon ? fz3 : (116.0 * fz - 16.0) / kKappa;

  x *= kXn;
  y *= kYn;
  z *= kZn;

  double r = 3.2404542 * x - 1.5371385 * y - 0.4985314 * z;
  double g = -0.9692660 * x + 1.8760108 * y + 0.0415560 * z;
  double b = 0.0556434 * x - 0.2040259 * y + 1.0572252 * z;

  r8 = quantize8(linear_to_srgb(r));
  g8 = quantize8(linear_to_srgb(g));
  b8 = quantize8(linear_to_srgb(b));
}

LabImage rgb_to_lab(const RgbImage& img) {
  LabImage out(img.width, img.height);
  const std::uint8_t* src = img.data.data();
  double* dst = out.data.data();
  size_t n = img.pixel_count();
  for (size_t i = 0; i < n; ++i) {
    LabColor c = rgb_to_lab(src[3 * i], src[3 * i + 1], src[3 * i + 2]);
    dst[3 * i] = c.l;
    dst[3 * i + 1] = c.a;
    dst[3 * i + 2] = c.b;
  }
  return out;
}

RgbImage lab_to_rgb(const LabImage& img) {
  RgbImage out(img.width, img.height);
  const double* src = img.data.data();
  std::uint8_t* dst = out.data.data();
  size_t n = img.pixel_count();
  for (size_t i = 0; i < n; ++i) {
    lab_to_rgb({src[3 * i], src[3 * i + 1], src[3 * i + 2]}, dst[3 * i], dst[3 * i + 1],
               dst[3 * i + 2]);
  }
  return out;
}

GradientMap sobel_gradient(const Raster<double>& plane) {
  if (plane.width < 3 || plane.height < 3) {
    throw Error(ErrorCode::ImageTooSmall, "sobel_gradient requires at least 3x3 input");
  }
  GradientMap out(plane.width, plane.height);
  auto sample = [&](int x, int y) {
    x = std::clamp(x, 0, plane.width - 1);
    y = std::clamp(y, 0, plane.height - 1);
    return plane.at(x, y);
  };
  for (int y = 0; y < plane.height; ++y) {
    for (int x = 0; x < plane.width; ++x) {
      double tl = sample(x - 1, y - 1), tc = sample(x, y - 1), tr = sample(x + 1, y - 1);
      double ml = sample(x - 1, y), mr = sample(x + 1, y);
      double bl = sample(x - 1, y + 1), bc = sample(x, y + 1), br = sample(x + 1, y + 1);
      double gx = (tr + 2.0 * mr + br) - (tl + 2.0 * ml + bl);
      double gy = (bl + 2.0 * bc + br) - (tl + 2.0 * tc + tr);
      out.at(x, y) = std::sqrt(gx * gx + gy * gy);
    }
  }
  return out;
}

}  // namespace spix
