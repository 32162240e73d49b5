// Copyright (c) 2026 the spix authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef SPIX_METRICS_HPP
#define SPIX_METRICS_HPP

#include <cstdint>

#include "spix/image.hpp"

namespace spix {

/// Human segmentation plus its derived boundary raster (pixels with a
/// 4-neighbor of a different segment label).
struct GroundTruth {
  LabelMap segmentation;
  Raster<std::uint8_t> boundaries;
};

GroundTruth make_ground_truth(const LabelMap& segmentation);

/// Pixels with a 4-neighbor of a different label. Image-frame pixels are
/// not boundaries by themselves.
Raster<std::uint8_t> boundary_mask(const LabelMap& labels);

struct MetricsReport {
  double br = 0.0;
  double ue = 0.0;
  double co = 0.0;
  int k_out = 0;
  double runtime_ms = 0.0;
};

/// Fraction of ground-truth boundary pixels with a superpixel boundary
/// within Chebyshev distance eps. 1.0 when the ground truth has no
/// boundary pixels.
double boundary_recall(const LabelMap& labels, const GroundTruth& gt, int eps = 2);

/// Area of superpixel bleeding across ground-truth segments, normalized
/// by image area; overlap form with a 5% membership threshold.
double undersegmentation_error(const LabelMap& labels, const LabelMap& gt_seg);

/// Area-weighted isoperimetric quotient, clipped to [0,1]. Perimeter
/// counts member pixels on the image frame or next to another label.
double compactness(const LabelMap& labels);

/// 10*log10(1/MSE) on [0,1] rasters; +infinity when MSE is zero.
double psnr(const EdgeMap& edge, const EdgeMap& reference);

/// Mean local SSIM with uniform 8x8 sliding windows,
/// C1 = 0.01^2 and C2 = 0.03^2 on the [0,1] scale.
double ssim(const EdgeMap& edge, const EdgeMap& reference);

int count_superpixels(const LabelMap& labels);

EdgeMap to_edge_map(const Raster<std::uint8_t>& mask);

}  // namespace spix

#endif  // SPIX_METRICS_HPP
