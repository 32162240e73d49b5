// Copyright (c) 2026 the spix authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef SPIX_BENCH_HPP
#define SPIX_BENCH_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "spix/clustering.hpp"
#include "spix/image.hpp"
#include "spix/noise.hpp"

namespace spix {

struct MethodSpec {
  Method method = Method::Slic;
  bool centroidx = false;
};

/// "slic", "snic", "centroid-slic", "centroid-snic"
std::string method_name(const MethodSpec& m);
MethodSpec parse_method(const std::string& name);

Segmentation run_method(const MethodSpec& m, const LabImage& img, const ClusterParams& params,
                        int snic_refresh_divisor = 4);

struct BenchConfig {
  std::string dataset_dir;
  std::string output_dir;
  std::vector<MethodSpec> methods = {{Method::Slic, false},
                                     {Method::Slic, true},
                                     {Method::Snic, false},
                                     {Method::Snic, true}};
  std::vector<int> k_values = {64, 100, 200, 400, 600};
  std::vector<NoiseSpec> noise_specs;          // empty = noise-free only
  int eps = 2;                                 // boundary recall tolerance
  std::vector<std::uint64_t> seeds = {1};
  double compactness = 30.0;
  int max_iters = 10;
  double threshold = 0.5;
  bool seed_perturb = true;
  int threads = 1;
  bool record_runtime = true;                  // off: runtime_ms column reads 0
  std::vector<std::string> edge_detectors = {"sbed", "sobel", "canny"};
  int edge_k = 24;                             // superpixels behind sbed
  double edge_threshold = 0.1;                 // sobel/canny threshold
  int snic_refresh_divisor = 4;                // block-color refresh cadence
};

/// Parses a key=value config file into cfg; unknown keys raise
/// ConfigError. Lines starting with '#' are comments.
void load_config_file(const std::string& path, BenchConfig& cfg);

/// Same grammar from any stream; `name` labels error messages.
void load_config_stream(std::istream& in, BenchConfig& cfg, const std::string& name);

struct DatasetEntry {
  std::string id;
  std::string image_path;
  std::string gt_label_path;
};

/// Expects `images/<id>.png|.ppm` and `groundtruth/<id>.png` under dir.
/// Unmatched or mismatched files are reported on stderr and skipped.
std::vector<DatasetEntry> ingest_dataset(const std::string& dir);

struct BenchResult {
  int rows = 0;
  int failures = 0;
  std::string raw_csv;
  std::string aggregate_csv;
};

/// Full superpixel grid: entry x method x k x noise x seed. Emits
/// `superpixel_raw.csv` and `superpixel_agg.csv` under output_dir. Rows
/// are key-sorted before writing, so output bytes do not depend on the
/// worker count.
BenchResult run_benchmark(const BenchConfig& cfg);

/// Edge-detector comparison on ground-truth boundaries; emits
/// `edges_raw.csv` and `edges_agg.csv`.
BenchResult run_edge_benchmark(const BenchConfig& cfg);

namespace fixtures {

struct Fixture {
  std::string id;
  RgbImage image;
  LabelMap gt;
};

/// Deterministic per-pixel speckle amplitude (8-bit steps) baked into
/// generated fixtures so gradient-based detectors face a little clutter.
inline constexpr double kDefaultTexture = 10.0;

Fixture two_tone(int width, int height, int index, double texture_amp = kDefaultTexture);
Fixture checkerboard(int width, int height, int index, double texture_amp = kDefaultTexture);
Fixture gradient_step(int width, int height, int index, double texture_amp = kDefaultTexture);

/// Cycles the three kinds; count fixtures in total.
std::vector<Fixture> standard_set(int width, int height, int count,
                                  double texture_amp = kDefaultTexture);

/// Writes a dataset directory (images/ + groundtruth/) for the CLI and
/// acceptance runs.
void write_dataset(const std::string& out_dir, const std::vector<Fixture>& set);

}  // namespace fixtures

}  // namespace spix

#endif  // SPIX_BENCH_HPP
