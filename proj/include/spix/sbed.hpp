// Copyright (c) 2026 the spix authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef SPIX_SBED_HPP
#define SPIX_SBED_HPP

#include <map>
#include <utility>
#include <vector>

#include "spix/clustering.hpp"
#include "spix/image.hpp"

namespace spix {

/// Sparse upper-triangular color distances between spatially adjacent
/// superpixel pairs (i < j).
struct AdjacencyMatrix {
  int k = 0;
  std::map<std::pair<std::int32_t, std::int32_t>, double> entries;
};

struct SuperpixelColorMeans {
  std::vector<LabColor> mean;  // indexed by label
};

/// Binary raster of label transitions (4-neighbor differs). The image
/// frame is not an edge by itself.
EdgeMap superpixel_edges(const LabelMap& labels);

SuperpixelColorMeans superpixel_color_means(const LabImage& img, const LabelMap& labels);

/// L1 distances between mean colors of 4-adjacent label pairs.
AdjacencyMatrix adjacency_distances(const SuperpixelColorMeans& means, const LabelMap& labels);

/// Mean over strictly positive entries; 0 when every entry is zero.
/// Throws EmptyMatrix when there are no entries at all.
double mean_nonzero(const AdjacencyMatrix& A);

/// Zeroes edge pixels on the common boundary of every pair with
/// distance strictly below a_hat. Everything else is untouched.
EdgeMap eliminate_weak_edges(const EdgeMap& E, const AdjacencyMatrix& A, double a_hat,
                             const LabelMap& labels);

/// (0.1 * max(G), 0.8 * max(G))
std::pair<double, double> threshold_levels(const GradientMap& G);

/// Superpixel-based edge detection given an existing segmentation:
/// boundary raster, Sobel gradient, weak-pair elimination, two-level
/// thresholding.
EdgeMap sbed_from_labels(const LabImage& img, const LabelMap& labels);

/// Full pipeline; segments with the block-centroid variant of the chosen
/// method first.
EdgeMap sbed(const RgbImage& img, int k, Method method = Method::Slic);

/// Sobel magnitude of the luma plane, binarized at threshold * max.
EdgeMap sobel_baseline(const RgbImage& img, double threshold);

/// Classical Canny: Gaussian smoothing (sigma 1.4), Sobel gradients,
/// non-maximum suppression, hysteresis at (threshold, 0.4 * threshold)
/// of the suppressed maximum.
EdgeMap canny_baseline(const RgbImage& img, double threshold);

}  // namespace spix

#endif  // SPIX_SBED_HPP
