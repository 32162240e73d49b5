// Copyright (c) 2026 the spix authors.
// SPDX-License-Identifier: Apache-2.0

#include "spix/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <map>
#include <vector>

namespace spix {

namespace {

void require_same_shape(int w1, int h1, int w2, int h2) {
  if (w1 != w2 || h1 != h2) {
    throw Error(ErrorCode::DimensionMismatch, "raster dimensions differ");
  }
}

}  // namespace

Raster<std::uint8_t> boundary_mask(const LabelMap& labels) {
  Raster<std::uint8_t> mask(labels.width, labels.height, 0);
  for (int y = 0; y < labels.height; ++y) {
    for (int x = 0; x < labels.width; ++x) {
      std::int32_t l = labels.at(x, y);
      bool edge = (x > 0 && labels.at(x - 1, y) != l) ||
                  (x + 1 < labels.width && labels.at(x + 1, y) != l) ||
                  (y > 0 && labels.at(x, y - 1) != l) ||
                  (y + 1 < labels.height && labels.at(x, y + 1) != l);
      mask.at(x, y) = edge ? 1 : 0;
    }
  }
  return mask;
}

GroundTruth make_ground_truth(const LabelMap& segmentation) {
  return {segmentation, boundary_mask(segmentation)};
}

double boundary_recall(const LabelMap& labels, const GroundTruth& gt, int eps) {
  require_same_shape(labels.width, labels.height, gt.segmentation.width, gt.segmentation.height);
  if (eps < 0) throw Error(ErrorCode::InvalidArgument, "negative tolerance");

  Raster<std::uint8_t> sp = boundary_mask(labels);

  // Chebyshev-eps dilation of the superpixel boundaries
  Raster<std::uint8_t> dil(sp.width, sp.height, 0);
  for (int y = 0; y < sp.height; ++y) {
    for (int x = 0; x < sp.width; ++x) {
      if (!sp.at(x, y)) continue;
      int x0 = std::max(0, x - eps), x1 = std::min(sp.width - 1, x + eps);
      int y0 = std::max(0, y - eps), y1 = std::min(sp.height - 1, y + eps);
      for (int v = y0; v <= y1; ++v) {
        for (int u = x0; u <= x1; ++u) dil.at(u, v) = 1;
      }
    }
  }

  std::int64_t total = 0, hit = 0;
  for (int y = 0; y < sp.height; ++y) {
    for (int x = 0; x < sp.width; ++x) {
      if (!gt.boundaries.at(x, y)) continue;
      ++total;
      if (dil.at(x, y)) ++hit;
    }
  }
  if (total == 0) return 1.0;
  return static_cast<double>(hit) / static_cast<double>(total);
}

double undersegmentation_error(const LabelMap& labels, const LabelMap& gt_seg) {
  require_same_shape(labels.width, labels.height, gt_seg.width, gt_seg.height);

  std::map<std::int32_t, std::int64_t> sp_size, gt_size;
  std::map<std::pair<std::int32_t, std::int32_t>, std::int64_t> overlap;  // (gt, sp)
  size_t n = labels.size();
  for (size_t i = 0; i < n; ++i) {
    sp_size[labels.v[i]] += 1;
    gt_size[gt_seg.v[i]] += 1;
    overlap[{gt_seg.v[i], labels.v[i]}] += 1;
  }

  double total = 0.0;
  std::int64_t covered = 0;
  std::int32_t current_gt = 0;
  bool have_gt = false;
  auto flush = [&]() {
    if (have_gt) total += static_cast<double>(covered - gt_size[current_gt]);
  };
  for (const auto& [key, count] : overlap) {
    if (!have_gt || key.first != current_gt) {
      flush();
      current_gt = key.first;
      covered = 0;
      have_gt = true;
    }
    // superpixels spending at least 5% of themselves in this segment
    if (20 * count >= sp_size[key.second]) covered += sp_size[key.second];
  }
  flush();

  double ue = total / static_cast<double>(n);
  return std::max(0.0, ue);
}

double compactness(const LabelMap& labels) {
  std::map<std::int32_t, std::int64_t> area, perimeter;
  for (int y = 0; y < labels.height; ++y) {
    for (int x = 0; x < labels.width; ++x) {
      std::int32_t l = labels.at(x, y);
      area[l] += 1;
      bool frame = x == 0 || y == 0 || x == labels.width - 1 || y == labels.height - 1;
      bool edge = frame || labels.at(x - 1, y) != l || labels.at(x + 1, y) != l ||
                  labels.at(x, y - 1) != l || labels.at(x, y + 1) != l;
      if (edge) perimeter[l] += 1;
    }
  }
  double n = static_cast<double>(labels.size());
  double co = 0.0;
  for (const auto& [l, a] : area) {
    double p = static_cast<double>(perimeter[l]);
    double q = 4.0 * std::numbers::pi * static_cast<double>(a) / (p * p);
    co += (static_cast<double>(a) / n) * q;
  }
  return std::clamp(co, 0.0, 1.0);
}

double psnr(const EdgeMap& edge, const EdgeMap& reference) {
  require_same_shape(edge.width, edge.height, reference.width, reference.height);
  double se = 0.0;
  for (size_t i = 0; i < edge.v.size(); ++i) {
    double d = edge.v[i] - reference.v[i];
    se += d * d;
  }
  double mse = se / static_cast<double>(edge.v.size());
  if (mse == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(1.0 / mse);
}

double ssim(const EdgeMap& edge, const EdgeMap& reference) {
  require_same_shape(edge.width, edge.height, reference.width, reference.height);
  constexpr double c1 = 0.01 * 0.01;
  constexpr double c2 = 0.03 * 0.03;
  int win_w = std::min(8, edge.width);
  int win_h = std::min(8, edge.height);
  double wn = static_cast<double>(win_w) * win_h;

  double total = 0.0;
  std::int64_t windows = 0;
  for (int y = 0; y + win_h <= edge.height; ++y) {
    for (int x = 0; x + win_w <= edge.width; ++x) {
      double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
      for (int v = 0; v < win_h; ++v) {
        for (int u = 0; u < win_w; ++u) {
          double a = edge.at(x + u, y + v);
          double b = reference.at(x + u, y + v);
          sx += a;
          sy += b;
          sxx += a * a;
          syy += b * b;
          sxy += a * b;
        }
      }
      double mx = sx / wn, my = sy / wn;
      double vx = sxx / wn - mx * mx;
      double vy = syy / wn - my * my;
      double cov = sxy / wn - mx * my;
      double s = ((2.0 * mx * my + c1) * (2.0 * cov + c2)) /
                 ((mx * mx + my * my + c1) * (vx + vy + c2));
      total += s;
      ++windows;
    }
  }
  return total / static_cast<double>(windows);
}

int count_superpixels(const LabelMap& labels) {
  std::vector<std::int32_t> seen(labels.v);
  std::sort(seen.begin(), seen.end());
  seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
  return static_cast<int>(seen.size());
}

EdgeMap to_edge_map(const Raster<std::uint8_t>& mask) {
  EdgeMap out(mask.width, mask.height);
  for (size_t i = 0; i < mask.v.size(); ++i) out.v[i] = mask.v[i] ? 1.0 : 0.0;
  return out;
}

}  // namespace spix
