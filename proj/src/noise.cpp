// Copyright (c) 2026 the spix authors.
// SPDX-License-Identifier: Apache-2.0

#include "spix/noise.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace spix {

namespace {

// splitmix64 step (Steele et al.), the project's fixed portable generator
std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// uniform in (0,1]; never 0 so log() below is safe
double uniform_open(std::uint64_t& state) {
  return (splitmix64(state) >> 11) * 0x1.0p-53 + 0x1.0p-54;
}

// stream keyed on (seed, pixel index): parallel-safe and order independent
std::uint64_t pixel_stream(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t s = seed ^ 0x6a09e667f3bcc909ull;
  s = splitmix64(s);
  s ^= index * 0x9e3779b97f4a7c15ull;
  return splitmix64(s);
}

std::uint8_t requantize(double v) {
  return static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0));
}

}  // namespace

RgbImage add_gaussian(const RgbImage& img, double std_dev, std::uint64_t seed) {
  if (std_dev < 0.0) throw Error(ErrorCode::InvalidArgument, "negative gaussian std");
  if (std_dev == 0.0) return img;

  RgbImage out(img.width, img.height);
  size_t n = img.pixel_count();
  for (size_t i = 0; i < n; ++i) {
    std::uint64_t state = pixel_stream(seed, i);
    double z[4];
    for (int pair = 0; pair < 2; ++pair) {
      double u1 = uniform_open(state);
      double u2 = uniform_open(state);
      double r = std::sqrt(-2.0 * std::log(u1));
      z[2 * pair] = r * std::cos(2.0 * std::numbers::pi * u2);
      z[2 * pair + 1] = r * std::sin(2.0 * std::numbers::pi * u2);
    }
    for (int c = 0; c < 3; ++c) {
      double v = img.data[3 * i + c] / 255.0 + std_dev * z[c];
      out.data[3 * i + c] = requantize(v);
    }
  }
  return out;
}

RgbImage add_salt_pepper(const RgbImage& img, double density, std::uint64_t seed) {
  if (density < 0.0 || density > 1.0) {
    throw Error(ErrorCode::InvalidArgument, "salt-and-pepper density outside [0,1]");
  }
  RgbImage out = img;
  size_t n = img.pixel_count();
  for (size_t i = 0; i < n; ++i) {
    std::uint64_t state = pixel_stream(seed, i);
    if (uniform_open(state) > density) continue;
    std::uint8_t v = uniform_open(state) <= 0.5 ? 0 : 255;
    out.data[3 * i] = v;
    out.data[3 * i + 1] = v;
    out.data[3 * i + 2] = v;
  }
  return out;
}

RgbImage apply_noise(const RgbImage& img, const NoiseSpec& spec) {
  switch (spec.kind) {
    case NoiseKind::None:
      return img;
    case NoiseKind::Gaussian:
      return add_gaussian(img, spec.level, spec.seed);
    case NoiseKind::SaltPepper:
      return add_salt_pepper(img, spec.level, spec.seed);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown noise kind");
}

}  // namespace spix
