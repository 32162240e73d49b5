// Copyright (c) 2026 the spix authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef SPIX_IO_HPP
#define SPIX_IO_HPP

#include <string>

#include "spix/image.hpp"

namespace spix {

/// Decodes a PNG (8-bit RGB) or binary PPM (P6) file.
RgbImage load_image(const std::string& path);

void save_png(const std::string& path, const RgbImage& img);

/// Edge maps go out as 8-bit grayscale, value = round(255 * strength).
/// Strengths are expected in [0,1]; values outside are clamped.
void save_edge_png(const std::string& path, const EdgeMap& edges);
EdgeMap load_edge_png(const std::string& path);

/// Label maps serialize as 16-bit grayscale PNG (label value = pixel value)
/// plus a sidecar text file "<path>.txt" holding one line "K_out=<n>".
void save_label_map(const std::string& path, const LabelMap& labels);
LabelMap load_label_map(const std::string& path);

}  // namespace spix

#endif  // SPIX_IO_HPP
