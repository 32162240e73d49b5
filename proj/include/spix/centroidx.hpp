// Copyright (c) 2026 the spix authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef SPIX_CENTROIDX_HPP
#define SPIX_CENTROIDX_HPP

#include <span>
#include <utility>
#include <vector>

#include "spix/clustering.hpp"
#include "spix/image.hpp"

namespace spix {

/// Square color-sampling block. `side` is the nominal edge length; the
/// effective block is the intersection with the image rectangle.
struct BlockSpec {
  double cx = 0.0;
  double cy = 0.0;
  int side = 1;
};

/// Adaptive block edge: round(sqrt(width*height / (2k))), at least 1.
/// The block then holds about half the pixels of an average superpixel.
int block_side(int width, int height, int k);

/// Mean coordinates of the pixels carrying the given label.
/// Throws EmptyLabel when no pixel does.
std::pair<double, double> spatial_centroid(const LabelMap& labels, int label);

/// Per-channel summed-area table over a LabImage; block means in O(1).
class LabIntegral {
 public:
  explicit LabIntegral(const LabImage& img);
  int width() const { return width_; }
  int height() const { return height_; }
  /// Mean over the inclusive pixel rectangle [x0,x1] x [y0,y1].
  LabColor rect_mean(int x0, int y0, int x1, int y1) const;

 private:
  int width_ = 0, height_ = 0;
  std::vector<double> sum_;  // (width+1) x (height+1) x 3
};

/// Mean CIELAB over every pixel of the clamped block, labels ignored.
LabColor block_color_centroid(const LabImage& img, const BlockSpec& block);
LabColor block_color_centroid(const LabIntegral& integral, const BlockSpec& block);

/// Eq-style split update: spatial part over the member pixels, color
/// part over the adaptive block centered at the spatial part.
CentroidUpdate centroidx_update(const LabImage& img, const LabelMap& labels,
                                std::span<const Centroid> prev, int k_requested);
CentroidUpdate centroidx_update(const LabImage& img, const LabIntegral& integral,
                                const LabelMap& labels, std::span<const Centroid> prev,
                                int k_requested);

/// How often the growing-superpixel color is refreshed from the block in
/// the SNIC variant: every ceil(side^2 / divisor) added members.
inline constexpr int kSnicRefreshDivisor = 4;

/// Runs the chosen method with the block-based color centroid.
Segmentation centroidx_segment(Method method, const LabImage& img, const ClusterParams& params,
                               int snic_refresh_divisor = kSnicRefreshDivisor);

}  // namespace spix

#endif  // SPIX_CENTROIDX_HPP
