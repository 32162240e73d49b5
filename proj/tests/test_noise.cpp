// Copyright (c) 2026 the spix authors.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>

#include "spix/noise.hpp"

using namespace spix;

namespace {

RgbImage constant_rgb(int w, int h, std::uint8_t r, std::uint8_t g, std::uint8_t b) {
  RgbImage img(w, h);
  for (size_t i = 0; i < img.pixel_count(); ++i) {
    img.data[3 * i] = r;
    img.data[3 * i + 1] = g;
    img.data[3 * i + 2] = b;
  }
  return img;
}

struct Moments {
  double mean, stddev;
};

Moments channel_moments(const RgbImage& img) {
  double s = 0, s2 = 0;
  double n = static_cast<double>(img.data.size());
  for (std::uint8_t v : img.data) {
    double u = v / 255.0;
    s += u;
    s2 += u * u;
  }
  double mean = s / n;
  return {mean, std::sqrt(s2 / n - mean * mean)};
}

}  // namespace

TEST_CASE("zero std is the identity") {
  RgbImage img = constant_rgb(16, 16, 40, 80, 120);
  RgbImage out = add_gaussian(img, 0.0, 7);
  CHECK(out.data == img.data);
}

TEST_CASE("gaussian sample moments land on the requested std") {
  RgbImage img = constant_rgb(600, 600, 128, 128, 128);
  for (double level : {0.1, 0.15, 0.2}) {
    RgbImage out = add_gaussian(img, level, 99);
    Moments m = channel_moments(out);  // 1.08e6 samples
    CHECK(std::abs(m.mean - 128.0 / 255.0) < 0.005);
    CHECK(std::abs(m.stddev - level) < 0.05 * level);
  }
}

TEST_CASE("zero density is the identity and full density is all extremes") {
  RgbImage img = constant_rgb(32, 32, 10, 200, 30);
  RgbImage none = add_salt_pepper(img, 0.0, 3);
  CHECK(none.data == img.data);

  RgbImage all = add_salt_pepper(img, 1.0, 3);
  for (size_t i = 0; i < all.pixel_count(); ++i) {
    const std::uint8_t* p = all.pixel(static_cast<int>(i % 32), static_cast<int>(i / 32));
    bool black = p[0] == 0 && p[1] == 0 && p[2] == 0;
    bool white = p[0] == 255 && p[1] == 255 && p[2] == 255;
    CHECK((black || white));
  }
}

TEST_CASE("corrupted fraction concentrates at the density") {
  RgbImage img = constant_rgb(1000, 1000, 128, 128, 128);
  RgbImage out = add_salt_pepper(img, 0.15, 2718);
  std::int64_t corrupted = 0;
  for (size_t i = 0; i < out.pixel_count(); ++i) {
    if (out.data[3 * i] != 128) ++corrupted;
  }
  double frac = static_cast<double>(corrupted) / 1e6;
  CHECK(std::abs(frac - 0.15) < 0.002);
}

TEST_CASE("salt and pepper corrupts whole pixels") {
  RgbImage img = constant_rgb(200, 200, 90, 150, 40);
  RgbImage out = add_salt_pepper(img, 0.3, 11);
  for (size_t i = 0; i < out.pixel_count(); ++i) {
    const std::uint8_t* p = &out.data[3 * i];
    bool original = p[0] == 90 && p[1] == 150 && p[2] == 40;
    bool black = p[0] == 0 && p[1] == 0 && p[2] == 0;
    bool white = p[0] == 255 && p[1] == 255 && p[2] == 255;
    CHECK((original || black || white));
  }
}

TEST_CASE("same seed reproduces bytes, different seeds do not") {
  RgbImage img = constant_rgb(64, 64, 128, 128, 128);
  RgbImage a = add_gaussian(img, 0.15, 123);
  RgbImage b = add_gaussian(img, 0.15, 123);
  CHECK(a.data == b.data);
  RgbImage c = add_gaussian(img, 0.15, 124);
  CHECK(a.data != c.data);

  RgbImage d = add_salt_pepper(img, 0.2, 9);
  RgbImage e = add_salt_pepper(img, 0.2, 9);
  CHECK(d.data == e.data);
  RgbImage f = add_salt_pepper(img, 0.2, 10);
  CHECK(d.data != f.data);
}

TEST_CASE("noise preserves dimensions") {
  RgbImage img = constant_rgb(17, 5, 1, 2, 3);
  NoiseSpec spec{NoiseKind::Gaussian, 0.1, 77};
  RgbImage out = apply_noise(img, spec);
  CHECK(out.width == 17);
  CHECK(out.height == 5);
  CHECK(out.data.size() == img.data.size());

  spec.kind = NoiseKind::None;
  RgbImage same = apply_noise(img, spec);
  CHECK(same.data == img.data);
}

TEST_CASE("invalid levels are rejected") {
  RgbImage img = constant_rgb(4, 4, 0, 0, 0);
  CHECK_THROWS_AS(add_gaussian(img, -0.1, 1), Error);
  CHECK_THROWS_AS(add_salt_pepper(img, 1.5, 1), Error);
}
