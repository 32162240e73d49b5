// Copyright (c) 2026 the spix authors.
// SPDX-License-Identifier: Apache-2.0

#include "spix/centroidx.hpp"

#include <algorithm>
#include <cmath>

#include "snic_engine.hpp"

namespace spix {

int block_side(int width, int height, int k) {
  double side = std::sqrt(static_cast<double>(width) * height / (2.0 * k));
  return std::max(1, static_cast<int>(std::lround(side)));
}

std::pair<double, double> spatial_centroid(const LabelMap& labels, int label) {
  double sx = 0.0, sy = 0.0;
  std::int64_t count = 0;
  for (int y = 0; y < labels.height; ++y) {
    for (int x = 0; x < labels.width; ++x) {
      if (labels.at(x, y) == label) {
        sx += x;
        sy += y;
        ++count;
      }
    }
  }
  if (count == 0) throw Error(ErrorCode::EmptyLabel, "label has no member pixels");
  return {sx / count, sy / count};
}

LabIntegral::LabIntegral(const LabImage& img) : width_(img.width), height_(img.height) {
  size_t stride = static_cast<size_t>(width_ + 1) * 3;
  sum_.assign(stride * (height_ + 1), 0.0);
  for (int y = 0; y < height_; ++y) {
    const double* row = img.pixel(0, y);
    double* cur = &sum_[(y + 1) * stride];
    const double* above = &sum_[y * stride];
    double run[3] = {0.0, 0.0, 0.0};
    for (int x = 0; x < width_; ++x) {
      for (int c = 0; c < 3; ++c) {
        run[c] += row[3 * x + c];
        cur[3 * (x + 1) + c] = above[3 * (x + 1) + c] + run[c];
      }
    }
  }
}

LabColor LabIntegral::rect_mean(int x0, int y0, int x1, int y1) const {
  size_t stride = static_cast<size_t>(width_ + 1) * 3;
  const double* tl = &sum_[y0 * stride + 3 * x0];
  const double* tr = &sum_[y0 * stride + 3 * (x1 + 1)];
  const double* bl = &sum_[(y1 + 1) * stride + 3 * x0];
  const double* br = &sum_[(y1 + 1) * stride + 3 * (x1 + 1)];
  double n = static_cast<double>(x1 - x0 + 1) * (y1 - y0 + 1);
  return {(br[0] - bl[0] - tr[0] + tl[0]) / n, (br[1] - bl[1] - tr[1] + tl[1]) / n,
          (br[2] - bl[2] - tr[2] + tl[2]) / n};
}

namespace {

struct ClampedRect {
  int x0, y0, x1, y1;
};

ClampedRect clamp_block(int width, int height, const BlockSpec& block) {
  int cx = round_coord(block.cx);
  int cy = round_coord(block.cy);
  int x0 = cx - block.side / 2;
  int y0 = cy - block.side / 2;
  ClampedRect r{std::max(0, x0), std::max(0, y0), std::min(width - 1, x0 + block.side - 1),
                std::min(height - 1, y0 + block.side - 1)};
  if (r.x0 > r.x1 || r.y0 > r.y1) {
    throw Error(ErrorCode::InvalidArgument, "block does not intersect the image");
  }
  return r;
}

}  // namespace

LabColor block_color_centroid(const LabImage& img, const BlockSpec& block) {
  ClampedRect r = clamp_block(img.width, img.height, block);
  double s[3] = {0.0, 0.0, 0.0};
  for (int y = r.y0; y <= r.y1; ++y) {
    for (int x = r.x0; x <= r.x1; ++x) {
      const double* p = img.pixel(x, y);
      s[0] += p[0];
      s[1] += p[1];
      s[2] += p[2];
    }
  }
  double n = static_cast<double>(r.x1 - r.x0 + 1) * (r.y1 - r.y0 + 1);
  return {s[0] / n, s[1] / n, s[2] / n};
}

LabColor block_color_centroid(const LabIntegral& integral, const BlockSpec& block) {
  ClampedRect r = clamp_block(integral.width(), integral.height(), block);
  return integral.rect_mean(r.x0, r.y0, r.x1, r.y1);
}

CentroidUpdate centroidx_update(const LabImage& img, const LabIntegral& integral,
                                const LabelMap& labels, std::span<const Centroid> prev,
                                int k_requested) {
  (void)img;
  int k = static_cast<int>(prev.size());
  detail::SpatialSums s = detail::spatial_sums(labels, k);
  int side = block_side(integral.width(), integral.height(), k_requested);

  CentroidUpdate out;
  out.centroids.resize(k);
  for (int i = 0; i < k; ++i) {
    if (s.count[i] == 0) {
      out.centroids[i] = prev[i];
      out.empty.push_back(i);
      continue;
    }
    double n = static_cast<double>(s.count[i]);
    double mx = s.sx[i] / n;
    double my = s.sy[i] / n;
    LabColor c = block_color_centroid(integral, {mx, my, side});
    out.centroids[i] = {mx, my, c.l, c.a, c.b};
  }
  return out;
}

CentroidUpdate centroidx_update(const LabImage& img, const LabelMap& labels,
                                std::span<const Centroid> prev, int k_requested) {
  LabIntegral integral(img);
  return centroidx_update(img, integral, labels, prev, k_requested);
}

namespace {

/// SNIC color policy: distance color comes from the block around the
/// running spatial mean, refreshed every ceil(side^2/divisor) members.
struct BlockColorPolicy {
  const LabIntegral* integral = nullptr;
  int side = 1;
  std::int64_t refresh_step = 1;
  std::vector<LabColor> colors;
  std::vector<std::int64_t> next_refresh;
  const detail::SuperpixelState* state = nullptr;

  BlockColorPolicy(const LabIntegral& sat, int block_edge, int divisor)
      : integral(&sat), side(block_edge) {
    std::int64_t area = static_cast<std::int64_t>(side) * side;
    refresh_step = std::max<std::int64_t>(1, (area + divisor - 1) / divisor);
  }

  void attach(const LabImage&, const detail::SuperpixelState& s, int k) {
    state = &s;
    colors.assign(k, LabColor{});
    next_refresh.assign(k, 0);
  }
  void added(std::int32_t label, double mean_x, double mean_y) {
    if (state->count[label] >= next_refresh[label]) {
      colors[label] = block_color_centroid(*integral, {mean_x, mean_y, side});
      next_refresh[label] = state->count[label] + refresh_step;
    }
  }
  LabColor color(std::int32_t label) const { return colors[label]; }
  LabColor final_color(std::int32_t, double mean_x, double mean_y) const {
    return block_color_centroid(*integral, {mean_x, mean_y, side});
  }
};

}  // namespace

Segmentation centroidx_segment(Method method, const LabImage& img, const ClusterParams& params,
                               int snic_refresh_divisor) {
  LabIntegral integral(img);
  if (method == Method::Slic) {
    return detail::iterate_slic(
        img, params,
        [&](const LabImage& i, const LabelMap& l, std::span<const Centroid> p) {
          return centroidx_update(i, integral, l, p, params.k);
        });
  }

  int side = block_side(img.width, img.height, params.k);
  BlockColorPolicy policy(integral, side, snic_refresh_divisor);
  Segmentation seg = detail::snic_engine(img, params, policy);
  seg.labels =
      enforce_connectivity(seg.labels, connectivity_min_size(img.width, img.height, params.k));
  std::int32_t k_out = 0;
  for (std::int32_t l : seg.labels.v) k_out = std::max(k_out, l);
  ++k_out;
  std::vector<Centroid> blank(k_out);
  seg.centroids = centroidx_update(img, integral, seg.labels, blank, params.k).centroids;
  return seg;
}

}  // namespace spix
