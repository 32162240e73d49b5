// Copyright (c) 2026 the spix authors.
// SPDX-License-Identifier: Apache-2.0

#include "spix/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <thread>

#include "spix/centroidx.hpp"
#include "spix/io.hpp"
#include "spix/metrics.hpp"
#include "spix/sbed.hpp"

namespace fs = std::filesystem;

namespace spix {

std::string method_name(const MethodSpec& m) {
  std::string base = m.method == Method::Slic ? "slic" : "snic";
  return m.centroidx ? "centroid-" + base : base;
}

MethodSpec parse_method(const std::string& name) {
  MethodSpec spec;
  std::string base = name;
  if (name.rfind("centroid-", 0) == 0) {
    spec.centroidx = true;
    base = name.substr(9);
  }
  if (base == "slic") {
    spec.method = Method::Slic;
  } else if (base == "snic") {
    spec.method = Method::Snic;
  } else {
    throw Error(ErrorCode::ConfigError, "unknown method: " + name);
  }
  return spec;
}

Segmentation run_method(const MethodSpec& m, const LabImage& img, const ClusterParams& params,
                        int snic_refresh_divisor) {
  if (m.centroidx) return centroidx_segment(m.method, img, params, snic_refresh_divisor);
  return m.method == Method::Slic ? slic_segment(img, params) : snic_segment(img, params);
}

namespace {

std::string noise_name(NoiseKind kind) {
  switch (kind) {
    case NoiseKind::None: return "none";
    case NoiseKind::Gaussian: return "gaussian";
    case NoiseKind::SaltPepper: return "sp";
  }
  return "?";
}

NoiseKind parse_noise_kind(const std::string& s) {
  if (s == "none") return NoiseKind::None;
  if (s == "gaussian") return NoiseKind::Gaussian;
  if (s == "sp" || s == "saltpepper") return NoiseKind::SaltPepper;
  throw Error(ErrorCode::ConfigError, "unknown noise kind: " + s);
}

std::string fmt(double v, int digits = 6) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

}  // namespace

void load_config_file(const std::string& path, BenchConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::FileNotFound, "config file not found: " + path);
  load_config_stream(in, cfg, path);
}

void load_config_stream(std::istream& in, BenchConfig& cfg, const std::string& path) {
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    size_t start = line.find_first_not_of(" \t");
    if (start == std::string::npos || line[start] == '#') continue;
    size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::ConfigError,
                  path + ":" + std::to_string(lineno) + ": expected key=value");
    }
    auto trim = [](std::string s) {
      size_t a = s.find_first_not_of(" \t\r");
      size_t b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    try {
      if (key == "dataset") {
        cfg.dataset_dir = val;
      } else if (key == "out") {
        cfg.output_dir = val;
      } else if (key == "methods") {
        cfg.methods.clear();
        for (const auto& m : split_list(val)) cfg.methods.push_back(parse_method(m));
      } else if (key == "k_values") {
        cfg.k_values.clear();
        for (const auto& k : split_list(val)) cfg.k_values.push_back(std::stoi(k));
        if (!std::is_sorted(cfg.k_values.begin(), cfg.k_values.end())) {
          throw Error(ErrorCode::ConfigError, "k_values must be ascending");
        }
      } else if (key == "noise") {
        // e.g. noise = none, gaussian:0.1, sp:0.15
        cfg.noise_specs.clear();
        for (const auto& item : split_list(val)) {
          size_t colon = item.find(':');
          NoiseSpec spec;
          spec.kind = parse_noise_kind(item.substr(0, colon));
          if (colon != std::string::npos) spec.level = std::stod(item.substr(colon + 1));
          cfg.noise_specs.push_back(spec);
        }
      } else if (key == "seeds") {
        cfg.seeds.clear();
        for (const auto& s : split_list(val)) cfg.seeds.push_back(std::stoull(s));
      } else if (key == "eps") {
        cfg.eps = std::stoi(val);
      } else if (key == "compactness") {
        cfg.compactness = std::stod(val);
      } else if (key == "max_iters") {
        cfg.max_iters = std::stoi(val);
      } else if (key == "threshold") {
        cfg.threshold = std::stod(val);
      } else if (key == "seed_perturb") {
        cfg.seed_perturb = val == "on" || val == "true" || val == "1";
      } else if (key == "threads") {
        cfg.threads = std::stoi(val);
      } else if (key == "timing") {
        cfg.record_runtime = val == "on" || val == "true" || val == "1";
      } else if (key == "edge_detectors") {
        cfg.edge_detectors = split_list(val);
      } else if (key == "edge_k") {
        cfg.edge_k = std::stoi(val);
      } else if (key == "edge_threshold") {
        cfg.edge_threshold = std::stod(val);
      } else if (key == "snic_refresh_divisor") {
        cfg.snic_refresh_divisor = std::stoi(val);
      } else {
        throw Error(ErrorCode::ConfigError, "unknown config key: " + key);
      }
    } catch (const Error&) {
      throw;
    } catch (const std::exception& e) {
      throw Error(ErrorCode::ConfigError,
                  path + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
}

std::vector<DatasetEntry> ingest_dataset(const std::string& dir) {
  fs::path images = fs::path(dir) / "images";
  fs::path gts = fs::path(dir) / "groundtruth";
  if (!fs::is_directory(images)) {
    throw Error(ErrorCode::EmptyDataset, "missing images/ under " + dir);
  }

  std::vector<DatasetEntry> entries;
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(images)) {
    if (!e.is_regular_file()) continue;
    std::string ext = e.path().extension().string();
    if (ext == ".png" || ext == ".ppm") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());

  for (const auto& img_path : files) {
    std::string id = img_path.stem().string();
    fs::path gt_path = gts / (id + ".png");
    if (!fs::exists(gt_path)) {
      std::cerr << "warning: no ground truth for " << id << ", skipping\n";
      continue;
    }
    try {
      RgbImage img = load_image(img_path.string());
      LabelMap gt = load_label_map(gt_path.string());
      if (!gt.same_shape(img.width, img.height)) {
        std::cerr << "warning: " << id << ": image and ground truth differ in size, skipping\n";
        continue;
      }
    } catch (const Error& e) {
      std::cerr << "warning: " << id << ": " << e.what() << ", skipping\n";
      continue;
    }
    entries.push_back({id, img_path.string(), gt_path.string()});
  }
  if (entries.empty()) throw Error(ErrorCode::EmptyDataset, "no usable image/gt pairs in " + dir);
  return entries;
}

namespace {

struct LoadedEntry {
  std::string id;
  RgbImage image;
  GroundTruth gt;
};

std::vector<LoadedEntry> load_entries(const std::vector<DatasetEntry>& entries) {
  std::vector<LoadedEntry> out;
  out.reserve(entries.size());
  for (const auto& e : entries) {
    LoadedEntry le;
    le.id = e.id;
    le.image = load_image(e.image_path);
    le.gt = make_ground_truth(load_label_map(e.gt_label_path));
    out.push_back(std::move(le));
  }
  return out;
}

void parallel_for(int threads, size_t n, const std::function<void(size_t)>& body) {
  threads = std::max(1, threads);
  if (threads == 1) {
    for (size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (;;) {
        size_t i = next.fetch_add(1);
        if (i >= n) break;
        body(i);
      }
    });
  }
  for (auto& th : pool) th.join();
}

void write_lines(const std::string& path, const std::vector<std::string>& lines) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::FileNotFound, "cannot write " + path);
  for (const auto& l : lines) out << l << "\n";
}

}  // namespace

BenchResult run_benchmark(const BenchConfig& cfg) {
  std::vector<LoadedEntry> entries = load_entries(ingest_dataset(cfg.dataset_dir));
  fs::create_directories(cfg.output_dir);

  std::vector<NoiseSpec> conditions = cfg.noise_specs;
  if (conditions.empty()) conditions.push_back({NoiseKind::None, 0.0, 0});

  struct Task {
    const LoadedEntry* entry;
    MethodSpec method;
    int k;
    NoiseSpec noise;
    std::uint64_t seed;
  };
  std::vector<Task> tasks;
  for (const auto& e : entries)
    for (const auto& m : cfg.methods)
      for (int k : cfg.k_values)
        for (const auto& nz : conditions)
          for (std::uint64_t seed : cfg.seeds) tasks.push_back({&e, m, k, nz, seed});

  struct Row {
    std::string key;
    std::string text;
    bool ok = false;
    // raw values for aggregation
    std::string group;
    double k_out = 0, br = 0, ue = 0, co = 0, ms = 0;
  };
  std::vector<Row> rows(tasks.size());

  parallel_for(cfg.threads, tasks.size(), [&](size_t i) {
    const Task& t = tasks[i];
    ClusterParams params;
    params.k = t.k;
    params.compactness = cfg.compactness;
    params.max_iters = cfg.max_iters;
    params.threshold = cfg.threshold;
    params.seed_perturb = cfg.seed_perturb;

    std::string mname = method_name(t.method);
    std::string nname = noise_name(t.noise.kind);
    char keybuf[256];
    std::snprintf(keybuf, sizeof keybuf, "%s|%s|%s|%s|%08d|%020llu", t.entry->id.c_str(),
                  mname.c_str(), nname.c_str(), fmt(t.noise.level, 4).c_str(), t.k,
                  static_cast<unsigned long long>(t.seed));
    Row& row = rows[i];
    row.key = keybuf;
    row.group = mname + "," + nname + "," + fmt(t.noise.level, 4) + "," + std::to_string(t.k);

    std::string prefix = t.entry->id + "," + mname + "," + nname + "," + fmt(t.noise.level, 4) +
                         "," + std::to_string(t.k);
    try {
      NoiseSpec nz = t.noise;
      nz.seed = t.seed;
      RgbImage noisy = apply_noise(t.entry->image, nz);
      LabImage lab = rgb_to_lab(noisy);

      auto t0 = std::chrono::steady_clock::now();
      Segmentation seg = run_method(t.method, lab, params, cfg.snic_refresh_divisor);
      auto t1 = std::chrono::steady_clock::now();
      double ms = cfg.record_runtime
                      ? std::chrono::duration<double, std::milli>(t1 - t0).count()
                      : 0.0;

      MetricsReport report;
      report.k_out = count_superpixels(seg.labels);
      report.br = boundary_recall(seg.labels, t.entry->gt, cfg.eps);
      report.ue = undersegmentation_error(seg.labels, t.entry->gt.segmentation);
      report.co = compactness(seg.labels);
      report.runtime_ms = ms;

      row.ok = true;
      row.k_out = report.k_out;
      row.br = report.br;
      row.ue = report.ue;
      row.co = report.co;
      row.ms = report.runtime_ms;
      row.text = prefix + "," + std::to_string(report.k_out) + "," + fmt(report.br) + "," +
                 fmt(report.ue) + "," + fmt(report.co) + "," + fmt(report.runtime_ms, 3) + "," +
                 std::to_string(t.seed) + ",ok";
    } catch (const std::exception& e) {
      std::string reason = e.what();
      std::replace(reason.begin(), reason.end(), ',', ';');
      row.text = prefix + ",,,,,," + std::to_string(t.seed) + ",error:" + reason;
    }
  });

  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.key < b.key; });

  std::vector<std::string> raw;
  raw.push_back("image_id,method,noise_kind,noise_level,k_requested,k_out,br,ue,co,runtime_ms,seed,status");
  int failures = 0;
  for (const auto& r : rows) {
    raw.push_back(r.text);
    if (!r.ok) ++failures;
  }

  // per-curve means over images and seeds, keyed by method/noise/k
  struct Agg {
    std::int64_t n = 0;
    double k_out = 0, br = 0, ue = 0, co = 0, ms = 0;
  };
  std::map<std::string, Agg> groups;
  for (const auto& r : rows) {
    if (!r.ok) continue;
    Agg& g = groups[r.group];
    g.n += 1;
    g.k_out += r.k_out;
    g.br += r.br;
    g.ue += r.ue;
    g.co += r.co;
    g.ms += r.ms;
  }
  std::vector<std::string> agg;
  agg.push_back("method,noise_kind,noise_level,k_requested,rows,k_out,br,ue,co,runtime_ms");
  for (const auto& [key, g] : groups) {
    double n = static_cast<double>(g.n);
    agg.push_back(key + "," + std::to_string(g.n) + "," + fmt(g.k_out / n) + "," +
                  fmt(g.br / n) + "," + fmt(g.ue / n) + "," + fmt(g.co / n) + "," +
                  fmt(g.ms / n, 3));
  }

  BenchResult res;
  res.rows = static_cast<int>(rows.size());
  res.failures = failures;
  res.raw_csv = (fs::path(cfg.output_dir) / "superpixel_raw.csv").string();
  res.aggregate_csv = (fs::path(cfg.output_dir) / "superpixel_agg.csv").string();
  write_lines(res.raw_csv, raw);
  write_lines(res.aggregate_csv, agg);
  return res;
}

BenchResult run_edge_benchmark(const BenchConfig& cfg) {
  std::vector<LoadedEntry> entries = load_entries(ingest_dataset(cfg.dataset_dir));
  fs::create_directories(cfg.output_dir);

  struct Task {
    const LoadedEntry* entry;
    std::string detector;
  };
  std::vector<Task> tasks;
  for (const auto& e : entries)
    for (const auto& d : cfg.edge_detectors) tasks.push_back({&e, d});

  struct Row {
    std::string key, text, group;
    bool ok = false;
    double psnr_db = 0, ssim_v = 0;
  };
  std::vector<Row> rows(tasks.size());

  parallel_for(cfg.threads, tasks.size(), [&](size_t i) {
    const Task& t = tasks[i];
    Row& row = rows[i];
    row.key = t.entry->id + "|" + t.detector;
    row.group = t.detector;
    try {
      EdgeMap edge;
      if (t.detector == "sbed") {
        edge = sbed(t.entry->image, cfg.edge_k);
      } else if (t.detector == "sobel") {
        edge = sobel_baseline(t.entry->image, cfg.edge_threshold);
      } else if (t.detector == "canny") {
        edge = canny_baseline(t.entry->image, cfg.edge_threshold);
      } else {
        throw Error(ErrorCode::ConfigError, "unknown detector: " + t.detector);
      }
      // common [0,1] range for the quality metrics
      double mx = 0.0;
      for (double v : edge.v) mx = std::max(mx, v);
      if (mx > 0.0) {
        for (double& v : edge.v) v /= mx;
      }
      EdgeMap ref = to_edge_map(t.entry->gt.boundaries);
      double p = psnr(edge, ref);
      double s = ssim(edge, ref);
      row.ok = true;
      row.psnr_db = p;
      row.ssim_v = s;
      row.text = t.entry->id + "," + t.detector + "," + fmt(p, 4) + "," + fmt(s) + ",ok";
    } catch (const std::exception& e) {
      std::string reason = e.what();
      std::replace(reason.begin(), reason.end(), ',', ';');
      row.text = t.entry->id + "," + t.detector + ",,,error:" + reason;
    }
  });

  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.key < b.key; });

  std::vector<std::string> raw;
  raw.push_back("image_id,detector,psnr_db,ssim,status");
  int failures = 0;
  for (const auto& r : rows) {
    raw.push_back(r.text);
    if (!r.ok) ++failures;
  }

  struct Agg {
    std::int64_t n = 0;
    double psnr_db = 0, ssim_v = 0;
  };
  std::map<std::string, Agg> groups;
  for (const auto& r : rows) {
    if (!r.ok) continue;
    Agg& g = groups[r.group];
    g.n += 1;
    g.psnr_db += r.psnr_db;
    g.ssim_v += r.ssim_v;
  }
  std::vector<std::string> agg;
  agg.push_back("detector,rows,psnr_db,ssim");
  for (const auto& [key, g] : groups) {
    double n = static_cast<double>(g.n);
    agg.push_back(key + "," + std::to_string(g.n) + "," + fmt(g.psnr_db / n, 4) + "," +
                  fmt(g.ssim_v / n));
  }

  BenchResult res;
  res.rows = static_cast<int>(rows.size());
  res.failures = failures;
  res.raw_csv = (fs::path(cfg.output_dir) / "edges_raw.csv").string();
  res.aggregate_csv = (fs::path(cfg.output_dir) / "edges_agg.csv").string();
  write_lines(res.raw_csv, raw);
  write_lines(res.aggregate_csv, agg);
  return res;
}

namespace fixtures {

namespace {

std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// deterministic speckle in [-amp, amp], keyed on (tag, pixel)
double speckle(std::uint64_t tag, int x, int y, double amp) {
  std::uint64_t h = mix64(tag ^ (static_cast<std::uint64_t>(y) << 24 | static_cast<std::uint64_t>(x)));
  double u = (h >> 11) * 0x1.0p-53;
  return amp * (2.0 * u - 1.0);
}

std::uint8_t q8(double v) { return static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0, 255.0))); }

struct Tone {
  double r, g, b;
};

// Per-pixel speckle plus two crossed luminance waves. The waves give the
// fixtures connected low-contrast contours the way natural texture does;
// pure speckle alone disappears under a detector's presmoothing.
struct TextureField {
  std::uint64_t tag = 0;
  double speckle_amp = 0, wave_amp = 0, theta = 0, p1 = 8, p2 = 13;

  TextureField(std::uint64_t t, int index, double amp)
      : tag(t),
        speckle_amp(amp),
        wave_amp(0.8 * amp),
        theta(0.4 + 0.5 * (index % 5)),
        p1(6.0 + 2.0 * (index % 3)),
        p2(p1 * 1.7) {}

  double at(int x, int y, int c) const {
    double u = x * std::cos(theta) + y * std::sin(theta);
    double v = x * std::sin(theta) - y * std::cos(theta);
    double wave = wave_amp * std::sin(2.0 * std::numbers::pi * u / p1) +
                  0.7 * wave_amp * std::sin(2.0 * std::numbers::pi * v / p2);
    return wave + speckle(tag * 3 + c, x, y, speckle_amp);
  }
};

void paint(RgbImage& img, int x, int y, const Tone& t, const TextureField& tex) {
  std::uint8_t* p = img.pixel(x, y);
  p[0] = q8(t.r + tex.at(x, y, 0));
  p[1] = q8(t.g + tex.at(x, y, 1));
  p[2] = q8(t.b + tex.at(x, y, 2));
}

const Tone kPalette[][2] = {
    {{60, 60, 60}, {185, 185, 185}},
    {{70, 45, 40}, {190, 165, 150}},
    {{45, 75, 115}, {200, 175, 95}},
    {{95, 55, 100}, {170, 200, 160}},
    {{50, 95, 60}, {205, 150, 175}},
};
constexpr int kPaletteSize = 5;

}  // namespace

Fixture two_tone(int width, int height, int index, double texture_amp) {
  Fixture f;
  f.id = "twotone_" + std::to_string(index);
  f.image = RgbImage(width, height);
  f.gt = LabelMap(width, height);
  const Tone* pair = kPalette[index % kPaletteSize];
  TextureField tex(mix64(0x7700 + index), index, texture_amp);

  // orientation cycles vertical / horizontal / diagonal; the split line
  // moves with the index
  int mode = index % 3;
  double frac = 0.35 + 0.06 * (index % 6);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      bool second;
      if (mode == 0) {
        second = x >= static_cast<int>(frac * width);
      } else if (mode == 1) {
        second = y >= static_cast<int>(frac * height);
      } else {
        second = x + y >= static_cast<int>(frac * (width + height));
      }
      f.gt.at(x, y) = second ? 1 : 0;
      paint(f.image, x, y, pair[second ? 1 : 0], tex);
    }
  }
  return f;
}

Fixture checkerboard(int width, int height, int index, double texture_amp) {
  Fixture f;
  f.id = "checker_" + std::to_string(index);
  f.image = RgbImage(width, height);
  f.gt = LabelMap(width, height);
  const Tone* pair = kPalette[(index + 2) % kPaletteSize];
  TextureField tex(mix64(0x8800 + index), index + 1, texture_amp);

  int cells = 3 + index % 3;  // 3..5 per axis
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      int cx = std::min(x * cells / width, cells - 1);
      int cy = std::min(y * cells / height, cells - 1);
      f.gt.at(x, y) = cy * cells + cx;  // every cell its own segment
      paint(f.image, x, y, pair[(cx + cy) % 2], tex);
    }
  }
  return f;
}

Fixture gradient_step(int width, int height, int index, double texture_amp) {
  Fixture f;
  f.id = "gradient_" + std::to_string(index);
  f.image = RgbImage(width, height);
  f.gt = LabelMap(width, height);
  TextureField tex(mix64(0x9900 + index), index + 2, texture_amp);

  // smooth horizontal ramp with a hard step; only the step is a region
  // boundary
  int step_at = static_cast<int>((0.4 + 0.05 * (index % 5)) * width);
  double lift = 70.0 + 5.0 * (index % 4);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      double ramp = 40.0 + 70.0 * x / std::max(1, width - 1);
      bool second = x >= step_at;
      double v = ramp + (second ? lift : 0.0);
      f.gt.at(x, y) = second ? 1 : 0;
      Tone t{v, v * 0.95, v * 1.05};
      paint(f.image, x, y, t, tex);
    }
  }
  return f;
}

std::vector<Fixture> standard_set(int width, int height, int count, double texture_amp) {
  std::vector<Fixture> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    switch (i % 3) {
      case 0: out.push_back(two_tone(width, height, i / 3, texture_amp)); break;
      case 1: out.push_back(checkerboard(width, height, i / 3, texture_amp)); break;
      default: out.push_back(gradient_step(width, height, i / 3, texture_amp)); break;
    }
  }
  return out;
}

void write_dataset(const std::string& out_dir, const std::vector<Fixture>& set) {
  fs::path root(out_dir);
  fs::create_directories(root / "images");
  fs::create_directories(root / "groundtruth");
  for (const auto& f : set) {
    save_png((root / "images" / (f.id + ".png")).string(), f.image);
    save_label_map((root / "groundtruth" / (f.id + ".png")).string(), f.gt);
  }
}

}  // namespace fixtures

}  // namespace spix
