// Copyright (c) 2026 the spix authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef SPIX_CLUSTERING_HPP
#define SPIX_CLUSTERING_HPP

#include <cmath>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "spix/image.hpp"

namespace spix {

/// Joint spatial + color cluster center. x is the column coordinate,
/// y the row coordinate; (l, a, b) are CIELAB.
struct Centroid {
  double x = 0.0;
  double y = 0.0;
  double l = 0.0;
  double a = 0.0;
  double b = 0.0;
};

struct ClusterParams {
  int k = 100;
  double compactness = 30.0;  // coefficient h
  int max_iters = 10;
  double threshold = 0.5;     // total L1 spatial residual, in pixels
  bool seed_perturb = true;
};

enum class Method { Slic, Snic };

struct Segmentation {
  LabelMap labels;
  std::vector<Centroid> centroids;  // one per output label
};

/// Centroid update output. Labels listed in `empty` had no members and
/// keep their previous centroid.
struct CentroidUpdate {
  std::vector<Centroid> centroids;
  std::vector<int> empty;
};

/// Grid step S = sqrt(width*height/k) used for seeding, search windows
/// and the spatial distance normalization.
double grid_step(int width, int height, int k);

/// Nearest-integer rounding with ties toward negative infinity.
/// Fixed project-wide so coordinate snapping is platform independent.
inline int round_coord(double v) { return static_cast<int>(std::ceil(v - 0.5)); }

std::vector<Centroid> init_centroids_grid(const LabImage& img, int k, bool seed_perturb);

/// Window-limited nearest-centroid assignment with
/// D = sqrt(d_color^2 + (d_spatial/S)^2 * h^2). Pixels covered by no
/// window fall back to the globally nearest centroid.
LabelMap slic_assign(const LabImage& img, std::span<const Centroid> centroids,
                     const ClusterParams& params);

/// Per-label means of member coordinates and colors.
CentroidUpdate standard_centroid_update(const LabImage& img, const LabelMap& labels,
                                        std::span<const Centroid> prev);

/// Sum of L1 spatial displacements between consecutive centroid sets.
double residual_error(std::span<const Centroid> old_c, std::span<const Centroid> new_c);

Segmentation slic_segment(const LabImage& img, const ClusterParams& params);
Segmentation snic_segment(const LabImage& img, const ClusterParams& params);

/// Merges every 4-connected component smaller than min_size into its
/// largest-boundary neighbor and renumbers labels contiguously.
LabelMap enforce_connectivity(const LabelMap& labels, int min_size);

/// Default minimum segment size, (width*height/k)/4.
int connectivity_min_size(int width, int height, int k);

namespace detail {

/// Row-major spatial coordinate sums per label. Shared by the standard
/// and block-based updates so their spatial parts are bitwise equal.
struct SpatialSums {
  std::vector<double> sx, sy;
  std::vector<std::int64_t> count;
};
SpatialSums spatial_sums(const LabelMap& labels, int k);

using UpdateFn = std::function<CentroidUpdate(const LabImage&, const LabelMap&,
                                              std::span<const Centroid>)>;

/// The assign/update/converge loop shared by SLIC and its block-centroid
/// variant; ends with connectivity enforcement and a final update pass.
Segmentation iterate_slic(const LabImage& img, const ClusterParams& params,
                          const UpdateFn& update);

}  // namespace detail

}  // namespace spix

#endif  // SPIX_CLUSTERING_HPP
