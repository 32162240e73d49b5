// Copyright (c) 2026 the spix authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef SPIX_NOISE_HPP
#define SPIX_NOISE_HPP

#include <cstdint>

#include "spix/image.hpp"

namespace spix {

enum class NoiseKind { None, Gaussian, SaltPepper };

/// level is the Gaussian std or the salt-and-pepper density, both on the
/// normalized [0,1] channel scale.
struct NoiseSpec {
  NoiseKind kind = NoiseKind::None;
  double level = 0.0;
  std::uint64_t seed = 0;
};

/// Adds independent N(0, std^2) per channel on the [0,1] scale, clamps,
/// and requantizes to 8 bits. Per-pixel streams derive from
/// (seed, pixel index) with a splitmix64 generator and Box-Muller
/// transform, so output is platform independent and byte-reproducible.
RgbImage add_gaussian(const RgbImage& img, double std_dev, std::uint64_t seed);

/// Corrupts each pixel with the given probability, setting all three
/// channels to pure black or pure white with equal chance.
RgbImage add_salt_pepper(const RgbImage& img, double density, std::uint64_t seed);

RgbImage apply_noise(const RgbImage& img, const NoiseSpec& spec);

}  // namespace spix

#endif  // SPIX_NOISE_HPP
