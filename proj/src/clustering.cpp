// Copyright (c) 2026 the spix authors.
// SPDX-License-Identifier: Apache-2.0

#include "spix/clustering.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <set>

#include "snic_engine.hpp"

namespace spix {

double grid_step(int width, int height, int k) {
  return std::sqrt(static_cast<double>(width) * height / k);
}

int connectivity_min_size(int width, int height, int k) {
  return std::max(1, (width * height / k) / 4);
}

namespace {

// Squared CIELAB gradient from central differences, used for seed
// perturbation only.
Raster<double> lab_edge_strength(const LabImage& img) {
  Raster<double> edges(img.width, img.height, 0.0);
  for (int y = 1; y < img.height - 1; ++y) {
    for (int x = 1; x < img.width - 1; ++x) {
      const double* l = img.pixel(x - 1, y);
      const double* r = img.pixel(x + 1, y);
      const double* u = img.pixel(x, y - 1);
      const double* d = img.pixel(x, y + 1);
      double dx = 0.0, dy = 0.0;
      for (int c = 0; c < 3; ++c) {
        dx += (l[c] - r[c]) * (l[c] - r[c]);
        dy += (u[c] - d[c]) * (u[c] - d[c]);
      }
      edges.at(x, y) = dx + dy;
    }
  }
  return edges;
}

double color_dist2(const double* p, const Centroid& c) {
  double dl = p[0] - c.l, da = p[1] - c.a, db = p[2] - c.b;
  return dl * dl + da * da + db * db;
}

}  // namespace

std::vector<Centroid> init_centroids_grid(const LabImage& img, int k, bool seed_perturb) {
  if (k < 1 || static_cast<long long>(k) > static_cast<long long>(img.width) * img.height) {
    throw Error(ErrorCode::TooManyClusters, "requested k exceeds pixel count");
  }
  double step = grid_step(img.width, img.height, k);
  int nx = std::clamp(static_cast<int>(std::lround(img.width / step)), 1, img.width);
  int ny = std::clamp(static_cast<int>(std::lround(img.height / step)), 1, img.height);

  Raster<double> edges;
  if (seed_perturb) edges = lab_edge_strength(img);

  std::vector<Centroid> seeds;
  seeds.reserve(static_cast<size_t>(nx) * ny);
  for (int i = 0; i < ny; ++i) {
    for (int j = 0; j < nx; ++j) {
      double cx = (j + 0.5) * img.width / nx;
      double cy = (i + 0.5) * img.height / ny;
      int px = std::clamp(round_coord(cx), 0, img.width - 1);
      int py = std::clamp(round_coord(cy), 0, img.height - 1);
      if (seed_perturb) {
        // slide to the strictly lowest-gradient spot in the 3x3 patch
        static const int dx8[8] = {-1, 0, 1, -1, 1, -1, 0, 1};
        static const int dy8[8] = {-1, -1, -1, 0, 0, 1, 1, 1};
        int bx = px, by = py;
        double best = edges.at(px, py);
        for (int n = 0; n < 8; ++n) {
          int qx = px + dx8[n], qy = py + dy8[n];
          if (qx < 0 || qy < 0 || qx >= img.width || qy >= img.height) continue;
          if (edges.at(qx, qy) < best) {
            best = edges.at(qx, qy);
            bx = qx;
            by = qy;
          }
        }
        px = bx;
        py = by;
      }
      const double* p = img.pixel(px, py);
      seeds.push_back({static_cast<double>(px), static_cast<double>(py), p[0], p[1], p[2]});
    }
  }
  return seeds;
}

LabelMap slic_assign(const LabImage& img, std::span<const Centroid> centroids,
                     const ClusterParams& params) {
  if (centroids.empty()) {
    throw Error(ErrorCode::InvalidArgument, "slic_assign needs at least one centroid");
  }
  double step = grid_step(img.width, img.height, params.k);
  int radius = std::max(1, static_cast<int>(std::lround(step)));
  double spatial_w = params.compactness / step;  // (d_s / S) * h
  double w2 = spatial_w * spatial_w;

  LabelMap labels(img.width, img.height, -1);
  Raster<double> best(img.width, img.height, std::numeric_limits<double>::infinity());

  for (size_t ci = 0; ci < centroids.size(); ++ci) {
    const Centroid& c = centroids[ci];
    int cx = round_coord(c.x), cy = round_coord(c.y);
    int x0 = std::max(0, cx - radius), x1 = std::min(img.width - 1, cx + radius);
    int y0 = std::max(0, cy - radius), y1 = std::min(img.height - 1, cy + radius);
    for (int y = y0; y <= y1; ++y) {
      for (int x = x0; x <= x1; ++x) {
        const double* p = img.pixel(x, y);
        double ds2 = (x - c.x) * (x - c.x) + (y - c.y) * (y - c.y);
        double d2 = color_dist2(p, c) + ds2 * w2;
        if (d2 < best.at(x, y)) {
          best.at(x, y) = d2;
          labels.at(x, y) = static_cast<std::int32_t>(ci);
        }
      }
    }
  }

  // pixels no window reached: global nearest
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      if (labels.at(x, y) >= 0) continue;
      const double* p = img.pixel(x, y);
      double bd = std::numeric_limits<double>::infinity();
      std::int32_t bl = 0;
      for (size_t ci = 0; ci < centroids.size(); ++ci) {
        const Centroid& c = centroids[ci];
        double ds2 = (x - c.x) * (x - c.x) + (y - c.y) * (y - c.y);
        double d2 = color_dist2(p, c) + ds2 * w2;
        if (d2 < bd) {
          bd = d2;
          bl = static_cast<std::int32_t>(ci);
        }
      }
      labels.at(x, y) = bl;
    }
  }
  return labels;
}

namespace detail {

SpatialSums spatial_sums(const LabelMap& labels, int k) {
  SpatialSums s;
  s.sx.assign(k, 0.0);
  s.sy.assign(k, 0.0);
  s.count.assign(k, 0);
  for (int y = 0; y < labels.height; ++y) {
    for (int x = 0; x < labels.width; ++x) {
      std::int32_t l = labels.at(x, y);
      if (l < 0 || l >= k) {
        throw Error(ErrorCode::InvalidArgument, "label out of range in centroid update");
      }
      s.sx[l] += x;
      s.sy[l] += y;
      s.count[l] += 1;
    }
  }
  return s;
}

}  // namespace detail

CentroidUpdate standard_centroid_update(const LabImage& img, const LabelMap& labels,
                                        std::span<const Centroid> prev) {
  int k = static_cast<int>(prev.size());
  detail::SpatialSums s = detail::spatial_sums(labels, k);

  std::vector<double> sl(k, 0.0), sa(k, 0.0), sb(k, 0.0);
  for (int y = 0; y < labels.height; ++y) {
    for (int x = 0; x < labels.width; ++x) {
      std::int32_t l = labels.at(x, y);
      const double* p = img.pixel(x, y);
      sl[l] += p[0];
      sa[l] += p[1];
      sb[l] += p[2];
    }
  }

  CentroidUpdate out;
  out.centroids.resize(k);
  for (int i = 0; i < k; ++i) {
    if (s.count[i] == 0) {
      out.centroids[i] = prev[i];
      out.empty.push_back(i);
      continue;
    }
    double n = static_cast<double>(s.count[i]);
    out.centroids[i] = {s.sx[i] / n, s.sy[i] / n, sl[i] / n, sa[i] / n, sb[i] / n};
  }
  return out;
}

double residual_error(std::span<const Centroid> old_c, std::span<const Centroid> new_c) {
  if (old_c.size() != new_c.size()) {
    throw Error(ErrorCode::LengthMismatch, "centroid sequences differ in length");
  }
  double err = 0.0;
  for (size_t i = 0; i < old_c.size(); ++i) {
    err += std::abs(old_c[i].x - new_c[i].x) + std::abs(old_c[i].y - new_c[i].y);
  }
  return err;
}

namespace detail {

Segmentation iterate_slic(const LabImage& img, const ClusterParams& params,
                          const UpdateFn& update) {
  std::vector<Centroid> cents = init_centroids_grid(img, params.k, params.seed_perturb);
  LabelMap labels;
  for (int it = 0; it < params.max_iters; ++it) {
    labels = slic_assign(img, cents, params);
    CentroidUpdate up = update(img, labels, cents);
    double err = residual_error(cents, up.centroids);
    cents = std::move(up.centroids);
    if (err < params.threshold) break;
  }
  labels = enforce_connectivity(labels, connectivity_min_size(img.width, img.height, params.k));
  std::int32_t k_out = 0;
  for (std::int32_t l : labels.v) k_out = std::max(k_out, l);
  ++k_out;
  // final centroids from the merged, renumbered partition
  std::vector<Centroid> blank(k_out);
  cents = update(img, labels, blank).centroids;
  return {std::move(labels), std::move(cents)};
}

}  // namespace detail

Segmentation slic_segment(const LabImage& img, const ClusterParams& params) {
  return detail::iterate_slic(img, params, [](const LabImage& i, const LabelMap& l,
                                              std::span<const Centroid> p) {
    return standard_centroid_update(i, l, p);
  });
}

Segmentation snic_segment(const LabImage& img, const ClusterParams& params) {
  detail::RunningMeanColor policy;
  return detail::snic_engine(img, params, policy);
}

LabelMap enforce_connectivity(const LabelMap& labels, int min_size) {
  const int w = labels.width, h = labels.height;
  const int n = w * h;

  // 4-connected components of equal source label
  std::vector<std::int32_t> comp(n, -1);
  std::vector<std::int64_t> comp_size;
  std::vector<int> stack;
  for (int i = 0; i < n; ++i) {
    if (comp[i] >= 0) continue;
    std::int32_t id = static_cast<std::int32_t>(comp_size.size());
    std::int32_t src = labels.v[i];
    comp[i] = id;
    std::int64_t size = 0;
    stack.push_back(i);
    while (!stack.empty()) {
      int p = stack.back();
      stack.pop_back();
      ++size;
      int x = p % w, y = p / w;
      const int nb[4] = {p - 1, p + 1, p - w, p + w};
      const bool ok[4] = {x > 0, x < w - 1, y > 0, y < h - 1};
      for (int d = 0; d < 4; ++d) {
        if (!ok[d]) continue;
        int q = nb[d];
        if (comp[q] < 0 && labels.v[q] == src) {
          comp[q] = id;
          stack.push_back(q);
        }
      }
    }
    comp_size.push_back(size);
  }
  int num_comp = static_cast<int>(comp_size.size());

  // shared-edge counts between touching components
  std::vector<std::map<int, std::int64_t>> adj(num_comp);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      int a = comp[y * w + x];
      if (x + 1 < w) {
        int b = comp[y * w + x + 1];
        if (a != b) {
          adj[a][b] += 1;
          adj[b][a] += 1;
        }
      }
      if (y + 1 < h) {
        int b = comp[(y + 1) * w + x];
        if (a != b) {
          adj[a][b] += 1;
          adj[b][a] += 1;
        }
      }
    }
  }

  std::vector<int> parent(num_comp);
  for (int i = 0; i < num_comp; ++i) parent[i] = i;
  auto find = [&](int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };

  std::set<int> undersized;
  for (int i = 0; i < num_comp; ++i) {
    if (comp_size[i] < min_size) undersized.insert(i);
  }

  while (!undersized.empty()) {
    int r = *undersized.begin();
    undersized.erase(undersized.begin());
    if (find(r) != r || comp_size[r] >= min_size) continue;
    if (adj[r].empty()) continue;  // no neighbor to absorb it

    // largest shared boundary wins; ties to the lowest id
    int target = -1;
    std::int64_t best = -1;
    for (const auto& [nb, cnt] : adj[r]) {
      if (cnt > best) {
        best = cnt;
        target = nb;
      }
    }

    std::map<int, std::int64_t> r_adj = std::move(adj[r]);
    adj[r].clear();
    for (const auto& [nb, cnt] : r_adj) {
      if (nb == target) continue;
      adj[target][nb] += cnt;
      auto it = adj[nb].find(r);
      if (it != adj[nb].end()) {
        adj[nb][target] += it->second;
        adj[nb].erase(it);
      }
    }
    adj[target].erase(r);
    parent[r] = target;
    comp_size[target] += comp_size[r];
    if (comp_size[target] < min_size) undersized.insert(target);
  }

  // contiguous renumbering by first row-major appearance
  std::vector<std::int32_t> new_label(num_comp, -1);
  LabelMap out(w, h);
  std::int32_t next = 0;
  for (int i = 0; i < n; ++i) {
    int root = find(comp[i]);
    if (new_label[root] < 0) new_label[root] = next++;
    out.v[i] = new_label[root];
  }
  return out;
}

}  // namespace spix
