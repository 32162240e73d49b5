// Copyright (c) 2026 the spix authors.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <map>

#include "spix/centroidx.hpp"
#include "spix/metrics.hpp"
#include "spix/noise.hpp"

using namespace spix;

namespace {

std::uint64_t test_rng(std::uint64_t& s) {
  s += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = s;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

double test_uniform(std::uint64_t& s) { return (test_rng(s) >> 11) * 0x1.0p-53; }

LabImage constant_lab(int w, int h, double l, double a, double b) {
  LabImage img(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      double* p = img.pixel(x, y);
      p[0] = l;
      p[1] = a;
      p[2] = b;
    }
  return img;
}

LabImage random_lab(int w, int h, std::uint64_t& seed) {
  LabImage img(w, h);
  for (double& v : img.data) v = 100.0 * test_uniform(seed);
  return img;
}

// Nested-loop mean over the clamped block, written independently of the
// summed-area path.
LabColor oracle_block_mean(const LabImage& img, double cx, double cy, int side) {
  int icx = static_cast<int>(std::ceil(cx - 0.5));
  int icy = static_cast<int>(std::ceil(cy - 0.5));
  int x0 = std::max(0, icx - side / 2);
  int y0 = std::max(0, icy - side / 2);
  int x1 = std::min(img.width - 1, icx - side / 2 + side - 1);
  int y1 = std::min(img.height - 1, icy - side / 2 + side - 1);
  double s[3] = {0, 0, 0};
  int n = 0;
  for (int y = y0; y <= y1; ++y)
    for (int x = x0; x <= x1; ++x) {
      const double* p = img.pixel(x, y);
      s[0] += p[0];
      s[1] += p[1];
      s[2] += p[2];
      ++n;
    }
  return {s[0] / n, s[1] / n, s[2] / n};
}

bool partitions_equal_up_to_renumbering(const LabelMap& a, const LabelMap& b) {
  if (a.v.size() != b.v.size()) return false;
  std::map<std::int32_t, std::int32_t> fwd, rev;
  for (size_t i = 0; i < a.v.size(); ++i) {
    auto [itf, newf] = fwd.try_emplace(a.v[i], b.v[i]);
    if (!newf && itf->second != b.v[i]) return false;
    auto [itr, newr] = rev.try_emplace(b.v[i], a.v[i]);
    if (!newr && itr->second != a.v[i]) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("block side follows the adaptive formula") {
  CHECK(block_side(481, 321, 600) == 11);
  CHECK(block_side(100, 100, 50) == 10);
  CHECK(block_side(4, 4, 16) == 1);
}

TEST_CASE("spatial centroid of simple shapes") {
  LabelMap labels(3, 3, 0);
  labels.at(1, 0) = labels.at(0, 1) = labels.at(1, 1) = labels.at(2, 1) = labels.at(1, 2) = 1;
  // label 0 occupies exactly the four corners (0,0),(2,0),(0,2),(2,2)
  auto [cx, cy] = spatial_centroid(labels, 0);
  CHECK(cx == doctest::Approx(1.0));
  CHECK(cy == doctest::Approx(1.0));

  LabelMap single(8, 8, 0);
  single.at(5, 7) = 1;
  auto [sx, sy] = spatial_centroid(single, 1);
  CHECK(sx == 5.0);
  CHECK(sy == 7.0);

  CHECK_THROWS_AS(spatial_centroid(single, 9), Error);
}

TEST_CASE("spatial centroid matches the accumulation oracle") {
  std::uint64_t seed = 2024;
  LabelMap labels(16, 16);
  for (auto& l : labels.v) l = static_cast<std::int32_t>(test_rng(seed) % 5);
  for (int target = 0; target < 5; ++target) {
    double sx = 0, sy = 0;
    int n = 0;
    for (int y = 0; y < 16; ++y)
      for (int x = 0; x < 16; ++x)
        if (labels.at(x, y) == target) {
          sx += x;
          sy += y;
          ++n;
        }
    if (n == 0) continue;
    auto [cx, cy] = spatial_centroid(labels, target);
    CHECK(std::abs(cx - sx / n) < 1e-9);
    CHECK(std::abs(cy - sy / n) < 1e-9);
  }
}

TEST_CASE("block color centroid on constants and tiny blocks") {
  LabImage img = constant_lab(12, 12, 31, -4, 8);
  LabColor c = block_color_centroid(img, {6.3, 4.9, 5});
  CHECK(c.l == doctest::Approx(31.0));
  CHECK(c.a == doctest::Approx(-4.0));
  CHECK(c.b == doctest::Approx(8.0));

  LabImage quad(2, 2);
  double ls[4] = {10, 20, 30, 40};
  for (int i = 0; i < 4; ++i) quad.data[3 * i] = ls[i];
  LabColor m = block_color_centroid(quad, {1.0, 1.0, 2});
  CHECK(m.l == doctest::Approx(25.0));
}

TEST_CASE("block color centroid matches a nested-loop oracle") {
  std::uint64_t seed = 606;
  LabImage img = random_lab(32, 32, seed);
  LabIntegral integral(img);
  for (int trial = 0; trial < 60; ++trial) {
    double cx = 34.0 * test_uniform(seed) - 1.0;  // wander past the borders a bit
    double cy = 34.0 * test_uniform(seed) - 1.0;
    int side = 1 + static_cast<int>(test_rng(seed) % 12);
    int icx = static_cast<int>(std::ceil(cx - 0.5));
    int icy = static_cast<int>(std::ceil(cy - 0.5));
    if (icx - side / 2 + side - 1 < 0 || icx - side / 2 > 31) continue;
    if (icy - side / 2 + side - 1 < 0 || icy - side / 2 > 31) continue;
    LabColor want = oracle_block_mean(img, cx, cy, side);
    LabColor direct = block_color_centroid(img, {cx, cy, side});
    LabColor fast = block_color_centroid(integral, {cx, cy, side});
    CHECK(std::abs(direct.l - want.l) < 1e-9);
    CHECK(std::abs(direct.a - want.a) < 1e-9);
    CHECK(std::abs(direct.b - want.b) < 1e-9);
    CHECK(std::abs(fast.l - want.l) < 1e-9);
    CHECK(std::abs(fast.a - want.a) < 1e-9);
    CHECK(std::abs(fast.b - want.b) < 1e-9);
  }
}

TEST_CASE("block center rounding breaks ties toward negative infinity") {
  LabImage img(4, 1);
  for (int x = 0; x < 4; ++x) img.data[3 * x] = 10.0 * x;
  // center 1.5 rounds to 1, so a side-1 block reads pixel 1
  LabColor c = block_color_centroid(img, {1.5, 0.0, 1});
  CHECK(c.l == doctest::Approx(10.0));
  // center 1.6 rounds to 2
  LabColor d = block_color_centroid(img, {1.6, 0.0, 1});
  CHECK(d.l == doctest::Approx(20.0));
}

TEST_CASE("split update: spatial part is bitwise the standard one") {
  std::uint64_t seed = 31337;
  for (int trial = 0; trial < 6; ++trial) {
    LabImage img = random_lab(24, 18, seed);
    LabelMap labels(24, 18);
    int k = 3 + static_cast<int>(test_rng(seed) % 4);
    for (auto& l : labels.v) l = static_cast<std::int32_t>(test_rng(seed) % k);
    std::vector<Centroid> prev(k);
    auto standard = standard_centroid_update(img, labels, prev);
    auto split = centroidx_update(img, labels, prev, k);
    REQUIRE(standard.centroids.size() == split.centroids.size());
    for (int i = 0; i < k; ++i) {
      // bitwise, not approximate
      CHECK(std::memcmp(&standard.centroids[i].x, &split.centroids[i].x, sizeof(double)) == 0);
      CHECK(std::memcmp(&standard.centroids[i].y, &split.centroids[i].y, sizeof(double)) == 0);
    }
  }
}

TEST_CASE("split update color reads the block, not the members") {
  // two tones; superpixel 1 sits entirely in the right tone and so does
  // its block
  LabImage img(40, 20);
  for (int y = 0; y < 20; ++y)
    for (int x = 0; x < 40; ++x) {
      double* p = img.pixel(x, y);
      p[0] = x < 20 ? 10.0 : 90.0;
      p[1] = p[2] = 0.0;
    }
  LabelMap labels(40, 20);
  for (int y = 0; y < 20; ++y)
    for (int x = 0; x < 40; ++x) labels.at(x, y) = x < 20 ? 0 : 1;
  std::vector<Centroid> prev(2);
  int k_requested = 8;  // block side sqrt(800/16) = 7
  auto up = centroidx_update(img, labels, prev, k_requested);
  CHECK(up.centroids[1].l == doctest::Approx(90.0));
  CHECK(up.centroids[0].l == doctest::Approx(10.0));
}

TEST_CASE("split update on constants equals the standard update") {
  LabImage img = constant_lab(30, 22, 55, 3, -7);
  LabelMap labels(30, 22);
  std::uint64_t seed = 11;
  for (auto& l : labels.v) l = static_cast<std::int32_t>(test_rng(seed) % 6);
  std::vector<Centroid> prev(6);
  auto standard = standard_centroid_update(img, labels, prev);
  auto split = centroidx_update(img, labels, prev, 6);
  for (int i = 0; i < 6; ++i) {
    CHECK(split.centroids[i].x == standard.centroids[i].x);
    CHECK(split.centroids[i].y == standard.centroids[i].y);
    CHECK(split.centroids[i].l == doctest::Approx(standard.centroids[i].l).epsilon(1e-12));
    CHECK(split.centroids[i].a == doctest::Approx(standard.centroids[i].a).epsilon(1e-12));
    CHECK(split.centroids[i].b == doctest::Approx(standard.centroids[i].b).epsilon(1e-12));
  }
}

TEST_CASE("split update keeps empty clusters") {
  LabImage img = constant_lab(8, 8, 40, 0, 0);
  LabelMap labels(8, 8, 0);
  std::vector<Centroid> prev = {{1, 1, 0, 0, 0}, {6.5, 6.5, 77, 7, 7}};
  auto up = centroidx_update(img, labels, prev, 2);
  REQUIRE(up.empty.size() == 1);
  CHECK(up.empty[0] == 1);
  CHECK(up.centroids[1].l == 77);
}

TEST_CASE("block mean shrugs off salt-and-pepper within the statistical bound") {
  // colored constant so every lab channel has real amplitude
  RgbImage base(128, 128);
  for (size_t i = 0; i < base.pixel_count(); ++i) {
    base.data[3 * i] = 180;
    base.data[3 * i + 1] = 90;
    base.data[3 * i + 2] = 60;
  }
  LabColor clean = rgb_to_lab(180, 90, 60);
  LabColor black = rgb_to_lab(0, 0, 0);
  LabColor white = rgb_to_lab(255, 255, 255);
  double amp_l = std::max(std::abs(black.l - clean.l), std::abs(white.l - clean.l));
  double amp_a = std::max(std::abs(black.a - clean.a), std::abs(white.a - clean.a));
  double amp_b = std::max(std::abs(black.b - clean.b), std::abs(white.b - clean.b));

  const double density = 0.1;
  const int side = 11;
  std::uint64_t pick = 42;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    RgbImage noisy = add_salt_pepper(base, density, seed);
    LabImage lab = rgb_to_lab(noisy);
    for (int i = 0; i < 4; ++i) {
      double cx = 10.0 + 108.0 * test_uniform(pick);
      double cy = 10.0 + 108.0 * test_uniform(pick);
      LabColor m = block_color_centroid(lab, {cx, cy, side});
      CHECK(std::abs(m.l - clean.l) < amp_l * density * 3.0);
      CHECK(std::abs(m.a - clean.a) < amp_a * density * 3.0);
      CHECK(std::abs(m.b - clean.b) < amp_b * density * 3.0);
    }
  }
}

TEST_CASE("on constant input the block variant reproduces the plain partitions") {
  LabImage img = constant_lab(64, 64, 47, 1, -1);
  ClusterParams params;
  params.k = 9;

  Segmentation plain_slic = slic_segment(img, params);
  Segmentation block_slic = centroidx_segment(Method::Slic, img, params);
  CHECK(partitions_equal_up_to_renumbering(plain_slic.labels, block_slic.labels));

  Segmentation plain_snic = snic_segment(img, params);
  Segmentation block_snic = centroidx_segment(Method::Snic, img, params);
  CHECK(partitions_equal_up_to_renumbering(plain_snic.labels, block_snic.labels));
}

TEST_CASE("block variant is deterministic") {
  std::uint64_t seed = 5;
  LabImage img = random_lab(40, 40, seed);
  ClusterParams params;
  params.k = 8;
  Segmentation a = centroidx_segment(Method::Slic, img, params);
  Segmentation b = centroidx_segment(Method::Slic, img, params);
  CHECK(a.labels.v == b.labels.v);
  Segmentation c = centroidx_segment(Method::Snic, img, params);
  Segmentation d = centroidx_segment(Method::Snic, img, params);
  CHECK(c.labels.v == d.labels.v);
}

TEST_CASE("clamped blocks never exceed the nominal area and never vanish") {
  std::uint64_t seed = 909;
  LabImage img = random_lab(20, 20, seed);
  for (int trial = 0; trial < 40; ++trial) {
    double cx = 19.0 * test_uniform(seed);
    double cy = 19.0 * test_uniform(seed);
    int side = 1 + static_cast<int>(test_rng(seed) % 9);
    LabColor direct = block_color_centroid(img, {cx, cy, side});
    // reconstruct the clamped rectangle the way the oracle does
    int icx = static_cast<int>(std::ceil(cx - 0.5));
    int icy = static_cast<int>(std::ceil(cy - 0.5));
    int x0 = std::max(0, icx - side / 2), y0 = std::max(0, icy - side / 2);
    int x1 = std::min(19, icx - side / 2 + side - 1), y1 = std::min(19, icy - side / 2 + side - 1);
    int area = (x1 - x0 + 1) * (y1 - y0 + 1);
    CHECK(area >= 1);
    CHECK(area <= side * side);
    CHECK(std::isfinite(direct.l));
  }
}
