// Copyright (c) 2026 the spix authors.
// SPDX-License-Identifier: Apache-2.0

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>

#include "spix/bench.hpp"
#include "spix/centroidx.hpp"
#include "spix/clustering.hpp"
#include "spix/metrics.hpp"
#include "spix/noise.hpp"
#include "spix/sbed.hpp"

namespace py = pybind11;

namespace {

spix::RgbImage to_rgb(const py::array_t<std::uint8_t>& arr) {
  if (arr.ndim() != 3 || arr.shape(2) != 3) {
    throw py::value_error("expected an (h, w, 3) uint8 array");
  }
  auto buf = arr.unchecked<3>();
  spix::RgbImage img(static_cast<int>(arr.shape(1)), static_cast<int>(arr.shape(0)));
  for (int y = 0; y < img.height; ++y)
    for (int x = 0; x < img.width; ++x)
      for (int c = 0; c < 3; ++c) img.pixel(x, y)[c] = buf(y, x, c);
  return img;
}

spix::LabelMap to_labels(const py::array_t<std::int32_t>& arr) {
  if (arr.ndim() != 2) throw py::value_error("expected an (h, w) int32 array");
  auto buf = arr.unchecked<2>();
  spix::LabelMap labels(static_cast<int>(arr.shape(1)), static_cast<int>(arr.shape(0)));
  for (int y = 0; y < labels.height; ++y)
    for (int x = 0; x < labels.width; ++x) labels.at(x, y) = buf(y, x);
  return labels;
}

spix::EdgeMap to_edges(const py::array_t<double>& arr) {
  if (arr.ndim() != 2) throw py::value_error("expected an (h, w) float64 array");
  auto buf = arr.unchecked<2>();
  spix::EdgeMap edges(static_cast<int>(arr.shape(1)), static_cast<int>(arr.shape(0)));
  for (int y = 0; y < edges.height; ++y)
    for (int x = 0; x < edges.width; ++x) edges.at(x, y) = buf(y, x);
  return edges;
}

py::array_t<std::uint8_t> from_rgb(const spix::RgbImage& img) {
  py::array_t<std::uint8_t> arr({img.height, img.width, 3});
  auto buf = arr.mutable_unchecked<3>();
  for (int y = 0; y < img.height; ++y)
    for (int x = 0; x < img.width; ++x)
      for (int c = 0; c < 3; ++c) buf(y, x, c) = img.pixel(x, y)[c];
  return arr;
}

py::array_t<double> from_lab(const spix::LabImage& img) {
  py::array_t<double> arr({img.height, img.width, 3});
  auto buf = arr.mutable_unchecked<3>();
  for (int y = 0; y < img.height; ++y)
    for (int x = 0; x < img.width; ++x)
      for (int c = 0; c < 3; ++c) buf(y, x, c) = img.pixel(x, y)[c];
  return arr;
}

py::array_t<std::int32_t> from_labels(const spix::LabelMap& labels) {
  py::array_t<std::int32_t> arr({labels.height, labels.width});
  auto buf = arr.mutable_unchecked<2>();
  for (int y = 0; y < labels.height; ++y)
    for (int x = 0; x < labels.width; ++x) buf(y, x) = labels.at(x, y);
  return arr;
}

py::array_t<double> from_edges(const spix::EdgeMap& edges) {
  py::array_t<double> arr({edges.height, edges.width});
  auto buf = arr.mutable_unchecked<2>();
  for (int y = 0; y < edges.height; ++y)
    for (int x = 0; x < edges.width; ++x) buf(y, x) = edges.at(x, y);
  return arr;
}

spix::ClusterParams make_params(int k, double compactness, int max_iters, double threshold,
                                bool seed_perturb) {
  spix::ClusterParams p;
  p.k = k;
  p.compactness = compactness;
  p.max_iters = max_iters;
  p.threshold = threshold;
  p.seed_perturb = seed_perturb;
  return p;
}

}  // namespace

PYBIND11_MODULE(_spix, m) {
  m.doc() = "noise-resistant superpixel segmentation and edge detection";

  m.def(
      "rgb_to_lab",
      [](const py::array_t<std::uint8_t>& img) { return from_lab(spix::rgb_to_lab(to_rgb(img))); },
      py::arg("image"));

  m.def(
      "segment",
      [](const py::array_t<std::uint8_t>& img, int k, const std::string& method, bool centroidx,
         double compactness, int max_iters, double threshold, bool seed_perturb) {
        spix::MethodSpec spec = spix::parse_method(method);
        spec.centroidx = centroidx;
        spix::LabImage lab = spix::rgb_to_lab(to_rgb(img));
        spix::Segmentation seg = spix::run_method(
            spec, lab, make_params(k, compactness, max_iters, threshold, seed_perturb));
        return py::make_tuple(from_labels(seg.labels), spix::count_superpixels(seg.labels));
      },
      py::arg("image"), py::arg("k"), py::arg("method") = "slic", py::arg("centroidx") = false,
      py::arg("compactness") = 30.0, py::arg("max_iters") = 10, py::arg("threshold") = 0.5,
      py::arg("seed_perturb") = true,
      "Segment an image; returns (labels, k_out).");

  m.def(
      "add_gaussian",
      [](const py::array_t<std::uint8_t>& img, double std_dev, std::uint64_t seed) {
        return from_rgb(spix::add_gaussian(to_rgb(img), std_dev, seed));
      },
      py::arg("image"), py::arg("std"), py::arg("seed") = 1);

  m.def(
      "add_salt_pepper",
      [](const py::array_t<std::uint8_t>& img, double density, std::uint64_t seed) {
        return from_rgb(spix::add_salt_pepper(to_rgb(img), density, seed));
      },
      py::arg("image"), py::arg("density"), py::arg("seed") = 1);

  m.def(
      "superpixel_edges",
      [](const py::array_t<std::int32_t>& labels) {
        return from_edges(spix::superpixel_edges(to_labels(labels)));
      },
      py::arg("labels"));

  m.def(
      "sbed",
      [](const py::array_t<std::uint8_t>& img, int k, const std::string& method) {
        spix::Method base =
            spix::parse_method(method).method;  // "slic" / "snic"
        return from_edges(spix::sbed(to_rgb(img), k, base));
      },
      py::arg("image"), py::arg("k"), py::arg("method") = "slic");

  m.def(
      "sobel_edges",
      [](const py::array_t<std::uint8_t>& img, double threshold) {
        return from_edges(spix::sobel_baseline(to_rgb(img), threshold));
      },
      py::arg("image"), py::arg("threshold") = 0.1);

  m.def(
      "canny_edges",
      [](const py::array_t<std::uint8_t>& img, double threshold) {
        return from_edges(spix::canny_baseline(to_rgb(img), threshold));
      },
      py::arg("image"), py::arg("threshold") = 0.1);

  m.def(
      "boundary_recall",
      [](const py::array_t<std::int32_t>& labels, const py::array_t<std::int32_t>& gt, int eps) {
        return spix::boundary_recall(to_labels(labels), spix::make_ground_truth(to_labels(gt)),
                                     eps);
      },
      py::arg("labels"), py::arg("gt"), py::arg("eps") = 2);

  m.def(
      "undersegmentation_error",
      [](const py::array_t<std::int32_t>& labels, const py::array_t<std::int32_t>& gt) {
        return spix::undersegmentation_error(to_labels(labels), to_labels(gt));
      },
      py::arg("labels"), py::arg("gt"));

  m.def(
      "compactness",
      [](const py::array_t<std::int32_t>& labels) { return spix::compactness(to_labels(labels)); },
      py::arg("labels"));

  m.def(
      "count_superpixels",
      [](const py::array_t<std::int32_t>& labels) {
        return spix::count_superpixels(to_labels(labels));
      },
      py::arg("labels"));

  m.def(
      "psnr",
      [](const py::array_t<double>& a, const py::array_t<double>& b) {
        return spix::psnr(to_edges(a), to_edges(b));
      },
      py::arg("edge"), py::arg("reference"));

  m.def(
      "ssim",
      [](const py::array_t<double>& a, const py::array_t<double>& b) {
        return spix::ssim(to_edges(a), to_edges(b));
      },
      py::arg("edge"), py::arg("reference"));

  m.def("block_side", &spix::block_side, py::arg("width"), py::arg("height"), py::arg("k"),
        "Adaptive color-sampling block edge length.");
}
