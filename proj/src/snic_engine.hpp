// Copyright (c) 2026 the spix authors.
// SPDX-License-Identifier: Apache-2.0

// Priority-queue region growing shared by snic_segment and its
// block-centroid variant. The color policy decides what color value a
// superpixel presents to the distance computation while it grows.

#ifndef SPIX_SNIC_ENGINE_HPP
#define SPIX_SNIC_ENGINE_HPP

#include <cstdint>
#include <queue>
#include <vector>

#include "spix/clustering.hpp"

namespace spix::detail {

struct QueueEntry {
  double d2;  // squared joint distance
  int y, x;
  std::int32_t label;
};

struct QueueOrder {
  // min-heap on (d2, y, x, label): lower coordinates win ties
  bool operator()(const QueueEntry& a, const QueueEntry& b) const {
    if (a.d2 != b.d2) return a.d2 > b.d2;
    if (a.y != b.y) return a.y > b.y;
    if (a.x != b.x) return a.x > b.x;
    return a.label > b.label;
  }
};

struct SuperpixelState {
  std::vector<double> sx, sy, sl, sa, sb;
  std::vector<std::int64_t> count;
  void init(int k) {
    sx.assign(k, 0.0);
    sy.assign(k, 0.0);
    sl.assign(k, 0.0);
    sa.assign(k, 0.0);
    sb.assign(k, 0.0);
    count.assign(k, 0);
  }
};

/// Plain SNIC: the distance color is the running mean of member colors.
struct RunningMeanColor {
  const SuperpixelState* state = nullptr;
  void attach(const LabImage&, const SuperpixelState& s, int) { state = &s; }
  void added(std::int32_t, double, double) {}
  LabColor color(std::int32_t label) const {
    double n = static_cast<double>(state->count[label]);
    return {state->sl[label] / n, state->sa[label] / n, state->sb[label] / n};
  }
  LabColor final_color(std::int32_t label, double, double) const { return color(label); }
};

template <typename ColorPolicy>
Segmentation snic_engine(const LabImage& img, const ClusterParams& params, ColorPolicy& policy) {
  std::vector<Centroid> seeds = init_centroids_grid(img, params.k, params.seed_perturb);
  const int k = static_cast<int>(seeds.size());
  const double step = grid_step(img.width, img.height, params.k);
  const double spatial_w = params.compactness / step;
  const double w2 = spatial_w * spatial_w;

  LabelMap labels(img.width, img.height, -1);
  SuperpixelState state;
  state.init(k);
  policy.attach(img, state, k);

  std::priority_queue<QueueEntry, std::vector<QueueEntry>, QueueOrder> heap;
  for (int i = 0; i < k; ++i) {
    int sx = std::clamp(round_coord(seeds[i].x), 0, img.width - 1);
    int sy = std::clamp(round_coord(seeds[i].y), 0, img.height - 1);
    heap.push({0.0, sy, sx, static_cast<std::int32_t>(i)});
  }

  const int dx4[4] = {-1, 1, 0, 0};
  const int dy4[4] = {0, 0, -1, 1};

  while (!heap.empty()) {
    QueueEntry e = heap.top();
    heap.pop();
    if (labels.at(e.x, e.y) >= 0) continue;
    labels.at(e.x, e.y) = e.label;

    const double* p = img.pixel(e.x, e.y);
    state.sx[e.label] += e.x;
    state.sy[e.label] += e.y;
    state.sl[e.label] += p[0];
    state.sa[e.label] += p[1];
    state.sb[e.label] += p[2];
    state.count[e.label] += 1;
    double n = static_cast<double>(state.count[e.label]);
    double mx = state.sx[e.label] / n;
    double my = state.sy[e.label] / n;
    policy.added(e.label, mx, my);

    LabColor c = policy.color(e.label);
    for (int d = 0; d < 4; ++d) {
      int qx = e.x + dx4[d], qy = e.y + dy4[d];
      if (qx < 0 || qy < 0 || qx >= img.width || qy >= img.height) continue;
      if (labels.at(qx, qy) >= 0) continue;
      const double* q = img.pixel(qx, qy);
      double dl = q[0] - c.l, da = q[1] - c.a, db = q[2] - c.b;
      double ds2 = (qx - mx) * (qx - mx) + (qy - my) * (qy - my);
      double d2 = dl * dl + da * da + db * db + ds2 * w2;
      heap.push({d2, qy, qx, e.label});
    }
  }

  std::vector<Centroid> cents(k);
  for (int i = 0; i < k; ++i) {
    double n = static_cast<double>(state.count[i]);
    double mx = state.sx[i] / n;
    double my = state.sy[i] / n;
    LabColor c = policy.final_color(i, mx, my);
    cents[i] = {mx, my, c.l, c.a, c.b};
  }
  return {std::move(labels), std::move(cents)};
}

}  // namespace spix::detail

#endif  // SPIX_SNIC_ENGINE_HPP
