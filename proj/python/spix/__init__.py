# Copyright (c) 2026 the spix authors.
# SPDX-License-Identifier: Apache-2.0
"""Noise-resistant superpixel segmentation and edge detection."""

from ._spix import (
    add_gaussian,
    add_salt_pepper,
    block_side,
    boundary_recall,
    canny_edges,
    compactness,
    count_superpixels,
    psnr,
    rgb_to_lab,
    sbed,
    segment,
    sobel_edges,
    ssim,
    superpixel_edges,
    undersegmentation_error,
)

__all__ = [
    "add_gaussian",
    "add_salt_pepper",
    "block_side",
    "boundary_recall",
    "canny_edges",
    "compactness",
    "count_superpixels",
    "psnr",
    "rgb_to_lab",
    "sbed",
    "segment",
    "sobel_edges",
    "ssim",
    "superpixel_edges",
    "undersegmentation_error",
]
