// Copyright (c) 2026 the spix authors.
// SPDX-License-Identifier: Apache-2.0

#include "spix/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "spix/bench.hpp"
#include "spix/centroidx.hpp"
#include "spix/io.hpp"
#include "spix/metrics.hpp"
#include "spix/noise.hpp"
#include "spix/sbed.hpp"

namespace spix {

namespace {

struct GlobalOpts {
  std::string config_path;
  std::uint64_t seed = 1;
  int threads = 1;
};

BenchConfig base_config(const GlobalOpts& g) {
  BenchConfig cfg;
  if (!g.config_path.empty()) load_config_file(g.config_path, cfg);
  return cfg;
}

int do_segment(const GlobalOpts& g, const std::string& in, const std::string& out, int k,
               const std::string& method, bool centroidx, double compactness, int max_iters,
               double threshold, bool no_perturb) {
  BenchConfig cfg = base_config(g);
  ClusterParams params;
  params.k = k;
  params.compactness = compactness > 0 ? compactness : cfg.compactness;
  params.max_iters = max_iters > 0 ? max_iters : cfg.max_iters;
  params.threshold = threshold >= 0 ? threshold : cfg.threshold;
  params.seed_perturb = !no_perturb && cfg.seed_perturb;

  MethodSpec spec = parse_method(centroidx ? "centroid-" + method : method);
  RgbImage img = load_image(in);
  LabImage lab = rgb_to_lab(img);
  Segmentation seg = run_method(spec, lab, params);
  save_label_map(out, seg.labels);
  std::cout << "K_out=" << count_superpixels(seg.labels) << "\n";
  return 0;
}

int do_noise(const GlobalOpts& g, const std::string& in, const std::string& out,
             const std::string& kind, double level) {
  NoiseSpec spec;
  spec.level = level;
  spec.seed = g.seed;
  if (kind == "gaussian") {
    spec.kind = NoiseKind::Gaussian;
  } else if (kind == "sp") {
    spec.kind = NoiseKind::SaltPepper;
  } else {
    throw Error(ErrorCode::ConfigError, "noise kind must be gaussian or sp");
  }
  save_png(out, apply_noise(load_image(in), spec));
  return 0;
}

int do_edges(const std::string& in, const std::string& detector, int k, double threshold,
             const std::string& out) {
  RgbImage img = load_image(in);
  EdgeMap edge;
  if (detector == "sbed") {
    edge = sbed(img, k);
  } else if (detector == "sobel") {
    edge = sobel_baseline(img, threshold);
  } else if (detector == "canny") {
    edge = canny_baseline(img, threshold);
  } else {
    throw Error(ErrorCode::ConfigError, "detector must be sbed, sobel or canny");
  }
  double mx = 0.0;
  for (double v : edge.v) mx = std::max(mx, v);
  if (mx > 0.0) {
    for (double& v : edge.v) v /= mx;
  }
  save_edge_png(out, edge);
  return 0;
}

int do_eval(const std::string& labels_path, const std::string& edge_path,
            const std::string& gt_path, int eps) {
  std::cout.setf(std::ios::fixed);
  std::cout.precision(6);
  LabelMap gt_seg = load_label_map(gt_path);
  GroundTruth gt = make_ground_truth(gt_seg);
  if (!labels_path.empty()) {
    LabelMap labels = load_label_map(labels_path);
    std::cout << "br=" << boundary_recall(labels, gt, eps) << "\n"
              << "ue=" << undersegmentation_error(labels, gt_seg) << "\n"
              << "co=" << compactness(labels) << "\n"
              << "k_out=" << count_superpixels(labels) << "\n";
  }
  if (!edge_path.empty()) {
    EdgeMap edge = load_edge_png(edge_path);
    EdgeMap ref = to_edge_map(gt.boundaries);
    double p = psnr(edge, ref);
    std::cout << "psnr_db=";
    if (std::isinf(p)) {
      std::cout << "inf\n";
    } else {
      std::cout << p << "\n";
    }
    std::cout << "ssim=" << ssim(edge, ref) << "\n";
  }
  return 0;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
  CLI::App app{"noise-resistant superpixel segmentation and edge detection toolkit"};
  app.require_subcommand(1);

  GlobalOpts g;
  app.add_option("--config", g.config_path, "key=value config file");
  app.add_option("--seed", g.seed, "default random seed");
  auto* threads_opt = app.add_option("--threads", g.threads, "worker threads for bench");

  // segment
  auto* seg = app.add_subcommand("segment", "segment an image into superpixels");
  seg->fallthrough();
  std::string seg_in, seg_out, seg_method = "slic", seg_cx = "off";
  int seg_k = 200, seg_iters = 0;
  double seg_comp = 0, seg_thresh = -1;
  bool seg_noperturb = false;
  seg->add_option("--in", seg_in, "input image (png or ppm)")->required();
  seg->add_option("--out", seg_out, "output label map png")->required();
  seg->add_option("--k", seg_k, "desired superpixel count");
  seg->add_option("--method", seg_method, "slic or snic")
      ->check(CLI::IsMember({"slic", "snic"}));
  seg->add_option("--centroidx", seg_cx, "block-based color centroid on/off")
      ->check(CLI::IsMember({"on", "off"}));
  seg->add_option("--compactness", seg_comp, "compactness coefficient h");
  seg->add_option("--max-iters", seg_iters, "iteration cap");
  seg->add_option("--threshold", seg_thresh, "convergence residual");
  seg->add_flag("--no-perturb", seg_noperturb, "skip gradient seed perturbation");

  // noise
  auto* nz = app.add_subcommand("noise", "corrupt an image");
  nz->fallthrough();
  std::string nz_in, nz_out, nz_kind = "gaussian";
  double nz_level = 0.1;
  nz->add_option("--in", nz_in)->required();
  nz->add_option("--out", nz_out)->required();
  nz->add_option("--kind", nz_kind, "gaussian or sp")->check(CLI::IsMember({"gaussian", "sp"}));
  nz->add_option("--level", nz_level, "std or density on the [0,1] scale");

  // edges
  auto* ed = app.add_subcommand("edges", "detect edges");
  ed->fallthrough();
  std::string ed_in, ed_out, ed_det = "sbed";
  int ed_k = 200;
  double ed_thresh = 0.1;
  ed->add_option("--in", ed_in)->required();
  ed->add_option("--out", ed_out, "output grayscale png")->required();
  ed->add_option("--detector", ed_det)->check(CLI::IsMember({"sbed", "sobel", "canny"}));
  ed->add_option("--k", ed_k, "superpixels behind sbed");
  ed->add_option("--threshold", ed_thresh, "sobel/canny threshold");

  // eval
  auto* ev = app.add_subcommand("eval", "score a segmentation or edge map");
  ev->fallthrough();
  std::string ev_labels, ev_edge, ev_gt;
  int ev_eps = 2;
  ev->add_option("--labels", ev_labels, "label map png to score");
  ev->add_option("--edge", ev_edge, "edge map png to score");
  ev->add_option("--gt", ev_gt, "ground-truth label map png")->required();
  ev->add_option("--eps", ev_eps, "boundary recall tolerance");

  // bench
  auto* be = app.add_subcommand("bench", "run the evaluation grid");
  be->fallthrough();
  std::string be_dataset, be_out, be_mode = "superpixel";
  std::string be_methods, be_ks, be_noise, be_seeds;
  bool be_no_runtime = false;
  be->add_option("--dataset", be_dataset, "dataset directory");
  be->add_option("--out", be_out, "output directory for csv files");
  be->add_option("--mode", be_mode)->check(CLI::IsMember({"superpixel", "edges", "both"}));
  be->add_option("--methods", be_methods, "comma list, e.g. slic,centroid-slic");
  be->add_option("--k", be_ks, "comma list of k values");
  be->add_option("--noise", be_noise, "comma list, e.g. none,gaussian:0.15,sp:0.1");
  be->add_option("--seeds", be_seeds, "comma list of seeds");
  be->add_flag("--no-runtime", be_no_runtime, "write runtime_ms as 0 for reproducible bytes");

  // fixtures
  auto* fx = app.add_subcommand("fixtures", "generate the synthetic dataset");
  fx->fallthrough();
  std::string fx_out;
  int fx_count = 12, fx_w = 128, fx_h = 128;
  fx->add_option("--out", fx_out)->required();
  fx->add_option("--count", fx_count);
  fx->add_option("--width", fx_w);
  fx->add_option("--height", fx_h);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (seg->parsed()) {
      return do_segment(g, seg_in, seg_out, seg_k, seg_method, seg_cx == "on", seg_comp,
                        seg_iters, seg_thresh, seg_noperturb);
    }
    if (nz->parsed()) return do_noise(g, nz_in, nz_out, nz_kind, nz_level);
    if (ed->parsed()) return do_edges(ed_in, ed_det, ed_k, ed_thresh, ed_out);
    if (ev->parsed()) {
      if (ev_labels.empty() && ev_edge.empty()) {
        throw Error(ErrorCode::ConfigError, "eval needs --labels or --edge");
      }
      return do_eval(ev_labels, ev_edge, ev_gt, ev_eps);
    }
    if (be->parsed()) {
      BenchConfig cfg = base_config(g);
      if (!be_dataset.empty()) cfg.dataset_dir = be_dataset;
      if (!be_out.empty()) cfg.output_dir = be_out;
      if (threads_opt->count() > 0) cfg.threads = g.threads;
      if (be_no_runtime) cfg.record_runtime = false;
      if (!be_methods.empty() || !be_ks.empty() || !be_noise.empty() || !be_seeds.empty()) {
        // route overrides through the config parser for one grammar
        std::string tmp;
        if (!be_methods.empty()) tmp += "methods=" + be_methods + "\n";
        if (!be_ks.empty()) tmp += "k_values=" + be_ks + "\n";
        if (!be_noise.empty()) tmp += "noise=" + be_noise + "\n";
        if (!be_seeds.empty()) tmp += "seeds=" + be_seeds + "\n";
        std::istringstream stream(tmp);
        load_config_stream(stream, cfg, "<cli>");
      }
      if (cfg.dataset_dir.empty() || cfg.output_dir.empty()) {
        throw Error(ErrorCode::ConfigError, "bench needs --dataset and --out (or a config file)");
      }
      int failures = 0;
      if (be_mode == "superpixel" || be_mode == "both") {
        BenchResult r = run_benchmark(cfg);
        std::cout << "superpixel rows=" << r.rows << " failures=" << r.failures << "\n"
                  << "raw=" << r.raw_csv << "\n"
                  << "agg=" << r.aggregate_csv << "\n";
        failures += r.failures;
      }
      if (be_mode == "edges" || be_mode == "both") {
        BenchResult r = run_edge_benchmark(cfg);
        std::cout << "edges rows=" << r.rows << " failures=" << r.failures << "\n"
                  << "raw=" << r.raw_csv << "\n"
                  << "agg=" << r.aggregate_csv << "\n";
        failures += r.failures;
      }
      return failures > 0 ? 1 : 0;
    }
    if (fx->parsed()) {
      auto set = fixtures::standard_set(fx_w, fx_h, fx_count);
      fixtures::write_dataset(fx_out, set);
      std::cout << "wrote " << set.size() << " fixtures to " << fx_out << "\n";
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace spix
