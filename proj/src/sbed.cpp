// Copyright (c) 2026 the spix authors.
// SPDX-License-Identifier: Apache-2.0

#include "spix/sbed.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "spix/centroidx.hpp"
#include "spix/metrics.hpp"

namespace spix {

EdgeMap superpixel_edges(const LabelMap& labels) {
  return to_edge_map(boundary_mask(labels));
}

SuperpixelColorMeans superpixel_color_means(const LabImage& img, const LabelMap& labels) {
  if (img.width != labels.width || img.height != labels.height) {
    throw Error(ErrorCode::DimensionMismatch, "image and label map differ in size");
  }
  std::int32_t k = 0;
  for (std::int32_t l : labels.v) k = std::max(k, l);
  ++k;

  std::vector<double> sl(k, 0.0), sa(k, 0.0), sb(k, 0.0);
  std::vector<std::int64_t> count(k, 0);
  for (int y = 0; y < labels.height; ++y) {
    for (int x = 0; x < labels.width; ++x) {
      std::int32_t l = labels.at(x, y);
      const double* p = img.pixel(x, y);
      sl[l] += p[0];
      sa[l] += p[1];
      sb[l] += p[2];
      count[l] += 1;
    }
  }
  SuperpixelColorMeans out;
  out.mean.resize(k);
  for (std::int32_t i = 0; i < k; ++i) {
    if (count[i] == 0) continue;
    double n = static_cast<double>(count[i]);
    out.mean[i] = {sl[i] / n, sa[i] / n, sb[i] / n};
  }
  return out;
}

AdjacencyMatrix adjacency_distances(const SuperpixelColorMeans& means, const LabelMap& labels) {
  AdjacencyMatrix A;
  A.k = static_cast<int>(means.mean.size());
  auto touch = [&](std::int32_t a, std::int32_t b) {
    if (a == b) return;
    std::int32_t i = std::min(a, b), j = std::max(a, b);
    if (A.entries.count({i, j})) return;
    const LabColor& u = means.mean[i];
    const LabColor& v = means.mean[j];
    A.entries[{i, j}] = std::abs(u.l - v.l) + std::abs(u.a - v.a) + std::abs(u.b - v.b);
  };
  for (int y = 0; y < labels.height; ++y) {
    for (int x = 0; x < labels.width; ++x) {
      std::int32_t l = labels.at(x, y);
      if (x + 1 < labels.width) touch(l, labels.at(x + 1, y));
      if (y + 1 < labels.height) touch(l, labels.at(x, y + 1));
    }
  }
  return A;
}

double mean_nonzero(const AdjacencyMatrix& A) {
  if (A.entries.empty()) throw Error(ErrorCode::EmptyMatrix, "adjacency matrix has no entries");
  double sum = 0.0;
  std::int64_t n = 0;
  for (const auto& [pair, d] : A.entries) {
    if (d > 0.0) {
      sum += d;
      ++n;
    }
  }
  return n == 0 ? 0.0 : sum / static_cast<double>(n);
}

EdgeMap eliminate_weak_edges(const EdgeMap& E, const AdjacencyMatrix& A, double a_hat,
                             const LabelMap& labels) {
  EdgeMap out = E;
  auto weak = [&](std::int32_t a, std::int32_t b) {
    std::int32_t i = std::min(a, b), j = std::max(a, b);
    auto it = A.entries.find({i, j});
    return it != A.entries.end() && it->second < a_hat;
  };
  for (int y = 0; y < labels.height; ++y) {
    for (int x = 0; x < labels.width; ++x) {
      std::int32_t l = labels.at(x, y);
      bool erase = (x > 0 && labels.at(x - 1, y) != l && weak(l, labels.at(x - 1, y))) ||
                   (x + 1 < labels.width && labels.at(x + 1, y) != l && weak(l, labels.at(x + 1, y))) ||
                   (y > 0 && labels.at(x, y - 1) != l && weak(l, labels.at(x, y - 1))) ||
                   (y + 1 < labels.height && labels.at(x, y + 1) != l && weak(l, labels.at(x, y + 1)));
      if (erase) out.at(x, y) = 0.0;
    }
  }
  return out;
}

std::pair<double, double> threshold_levels(const GradientMap& G) {
  double mx = 0.0;
  for (double v : G.v) mx = std::max(mx, v);
  return {0.1 * mx, 0.8 * mx};
}

EdgeMap sbed_from_labels(const LabImage& img, const LabelMap& labels) {
  EdgeMap edges = superpixel_edges(labels);
  GradientMap grad = sobel_gradient(edges);
  EdgeMap e = grad;  // E <- G

  SuperpixelColorMeans means = superpixel_color_means(img, labels);
  AdjacencyMatrix adj = adjacency_distances(means, labels);
  EdgeMap kept = e;
  if (!adj.entries.empty()) {
    double a_hat = mean_nonzero(adj);
    kept = eliminate_weak_edges(e, adj, a_hat, labels);
  }

  // Elimination is final: the high branch re-reads the gradient only for
  // pixels that survived it. A binary boundary raster grads at most
  // sqrt(20) < 5, so 0.8*max always sits below the straight-segment
  // response of 4 and an unconditional E <- G would undo every removal.
  auto [g_low, g_high] = threshold_levels(grad);
  for (size_t i = 0; i < kept.v.size(); ++i) {
    bool eliminated = kept.v[i] == 0.0 && e.v[i] != 0.0;
    if (grad.v[i] < g_low) {
      kept.v[i] = 0.0;
    } else if (grad.v[i] > g_high && !eliminated) {
      kept.v[i] = grad.v[i];
    }
  }
  return kept;
}

EdgeMap sbed(const RgbImage& img, int k, Method method) {
  if (k < 2) throw Error(ErrorCode::InvalidArgument, "sbed needs k >= 2");
  LabImage lab = rgb_to_lab(img);
  ClusterParams params;
  params.k = k;
  Segmentation seg = centroidx_segment(method, lab, params);
  return sbed_from_labels(lab, seg.labels);
}

namespace {

// rec601 luma on the [0,1] scale
Raster<double> luma_plane(const RgbImage& img) {
  Raster<double> out(img.width, img.height);
  for (size_t i = 0; i < img.pixel_count(); ++i) {
    out.v[i] = (0.299 * img.data[3 * i] + 0.587 * img.data[3 * i + 1] +
                0.114 * img.data[3 * i + 2]) /
               255.0;
  }
  return out;
}

Raster<double> gaussian_blur(const Raster<double>& in, double sigma) {
  int radius = static_cast<int>(std::ceil(3.0 * sigma));
  std::vector<double> kernel(2 * radius + 1);
  double sum = 0.0;
  for (int i = -radius; i <= radius; ++i) {
    kernel[i + radius] = std::exp(-0.5 * i * i / (sigma * sigma));
    sum += kernel[i + radius];
  }
  for (double& v : kernel) v /= sum;

  auto clampx = [&](int x) { return std::clamp(x, 0, in.width - 1); };
  auto clampy = [&](int y) { return std::clamp(y, 0, in.height - 1); };

  Raster<double> tmp(in.width, in.height), out(in.width, in.height);
  for (int y = 0; y < in.height; ++y) {
    for (int x = 0; x < in.width; ++x) {
      double acc = 0.0;
      for (int i = -radius; i <= radius; ++i) acc += kernel[i + radius] * in.at(clampx(x + i), y);
      tmp.at(x, y) = acc;
    }
  }
  for (int y = 0; y < in.height; ++y) {
    for (int x = 0; x < in.width; ++x) {
      double acc = 0.0;
      for (int i = -radius; i <= radius; ++i) acc += kernel[i + radius] * tmp.at(x, clampy(y + i));
      out.at(x, y) = acc;
    }
  }
  return out;
}

}  // namespace

EdgeMap sobel_baseline(const RgbImage& img, double threshold) {
  GradientMap g = sobel_gradient(luma_plane(img));
  double mx = 0.0;
  for (double v : g.v) mx = std::max(mx, v);
  EdgeMap out(g.width, g.height, 0.0);
  if (mx == 0.0) return out;
  double thr = threshold * mx;
  for (size_t i = 0; i < g.v.size(); ++i) out.v[i] = g.v[i] > thr ? 1.0 : 0.0;
  return out;
}

EdgeMap canny_baseline(const RgbImage& img, double threshold) {
  Raster<double> smooth = gaussian_blur(luma_plane(img), 1.4);

  // Sobel gradients with orientation
  const int w = smooth.width, h = smooth.height;
  Raster<double> mag(w, h), dir_gx(w, h), dir_gy(w, h);
  auto sample = [&](int x, int y) {
    return smooth.at(std::clamp(x, 0, w - 1), std::clamp(y, 0, h - 1));
  };
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double tl = sample(x - 1, y - 1), tc = sample(x, y - 1), tr = sample(x + 1, y - 1);
      double ml = sample(x - 1, y), mr = sample(x + 1, y);
      double bl = sample(x - 1, y + 1), bc = sample(x, y + 1), br = sample(x + 1, y + 1);
      double gx = (tr + 2.0 * mr + br) - (tl + 2.0 * ml + bl);
      double gy = (bl + 2.0 * bc + br) - (tl + 2.0 * tc + tr);
      mag.at(x, y) = std::sqrt(gx * gx + gy * gy);
      dir_gx.at(x, y) = gx;
      dir_gy.at(x, y) = gy;
    }
  }

  // non-maximum suppression along the quantized gradient direction
  Raster<double> nms(w, h, 0.0);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double m = mag.at(x, y);
      if (m == 0.0) continue;
      double angle = std::atan2(dir_gy.at(x, y), dir_gx.at(x, y));
      if (angle < 0) angle += std::numbers::pi;
      int sector = static_cast<int>(std::floor(angle / (std::numbers::pi / 4.0) + 0.5)) % 4;
      static const int ox[4] = {1, 1, 0, -1};
      static const int oy[4] = {0, 1, 1, 1};
      auto m_at = [&](int qx, int qy) {
        if (qx < 0 || qy < 0 || qx >= w || qy >= h) return 0.0;
        return mag.at(qx, qy);
      };
      double m1 = m_at(x + ox[sector], y + oy[sector]);
      double m2 = m_at(x - ox[sector], y - oy[sector]);
      // strict against the forward neighbor so plateau ridges thin to 1px
      if (m > m1 && m >= m2) nms.at(x, y) = m;
    }
  }

  double mx = 0.0;
  for (double v : nms.v) mx = std::max(mx, v);
  EdgeMap out(w, h, 0.0);
  if (mx == 0.0) return out;
  double high = threshold * mx;
  double low = 0.4 * high;

  // hysteresis: grow strong pixels through 8-connected weak ones
  std::vector<int> stack;
  Raster<std::uint8_t> state(w, h, 0);  // 1 = accepted
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (nms.at(x, y) > high && !state.at(x, y)) {
        state.at(x, y) = 1;
        stack.push_back(y * w + x);
        while (!stack.empty()) {
          int p = stack.back();
          stack.pop_back();
          int px = p % w, py = p / w;
          for (int dy = -1; dy <= 1; ++dy) {
            for (int dx = -1; dx <= 1; ++dx) {
              int qx = px + dx, qy = py + dy;
              if (qx < 0 || qy < 0 || qx >= w || qy >= h) continue;
              if (!state.at(qx, qy) && nms.at(qx, qy) >= low) {
                state.at(qx, qy) = 1;
                stack.push_back(qy * w + qx);
              }
            }
          }
        }
      }
    }
  }
  for (size_t i = 0; i < out.v.size(); ++i) out.v[i] = state.v[i] ? 1.0 : 0.0;
  return out;
}

}  // namespace spix
