// Command-line front end: factor | sweep | bounds-check | compress-image |
// compress-video | bench.

#include <CLI11.hpp>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "qutv/bounds.hpp"
#include "qutv/errors.hpp"
#include "qutv/experiments.hpp"
#include "qutv/media_io.hpp"
#include "qutv/qfactor.hpp"
#include "qutv/qsketch.hpp"
#include "qutv/qtutv.hpp"
#include "qutv/synth.hpp"
#include "qutv/utv.hpp"

namespace {

using namespace qutv;

bool is_tensor_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  char magic[5] = {};
  in.read(magic, 5);
  return in && std::string(magic, 5) == "QTEN1";
}

bool is_qmat_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  char magic[5] = {};
  in.read(magic, 5);
  return in && std::string(magic, 5) == "QMAT1";
}

QMatrix load_matrix_input(const std::string& path, std::size_t rows,
                          std::size_t cols) {
  if (is_qmat_input(path)) return read_qmat(path);
  return load_image(path, rows, cols);
}

TransformSpec make_spec(const std::string& tag, const std::vector<std::size_t>& dims) {
  if (tag == "dct") return TransformSpec::dct(dims);
  if (tag == "identity") return TransformSpec::identity(dims);
  throw ConfigError("unknown transform '" + tag + "'");
}

int run_factor(const std::string& method, const std::string& input,
               const std::string& output, std::size_t l, std::size_t p,
               std::uint64_t seed, bool shortcut, const std::string& transform,
               std::size_t rows, std::size_t cols) {
  const bool tensor = is_tensor_input(input);
  FactorBundle bundle;
  if (tensor) {
    const QTensor a = read_qten(input);
    const TransformSpec spec = make_spec(transform, a.dims());
    if (method == "qturv") bundle = to_bundle(qturv(a, spec));
    else if (method == "tqt-svd") bundle = to_bundle(tqt_svd(a, spec));
    else if (method == "cor-qturv")
      bundle = to_bundle(cor_qturv(a, spec, {l, p, seed, shortcut}));
    else throw ConfigError("method '" + method + "' does not apply to a tensor input");
  } else {
    const QMatrix a = load_matrix_input(input, rows, cols);
    if (method == "qsvd") bundle = to_bundle(qsvd(a));
    else if (method == "qurv") bundle = to_bundle(qurv(a));
    else if (method == "qulv") bundle = to_bundle(qulv(a));
    else if (method == "qqr") bundle = to_bundle(qqr(a));
    else if (method == "qqrcp") bundle = to_bundle(qqrcp(a));
    else if (method == "cor-qurv")
      bundle = to_bundle(cor_qurv(a, {l, p, seed, shortcut}));
    else throw ConfigError("method '" + method + "' does not apply to a matrix input");
  }
  save_bundle(bundle, output);
  std::cout << "wrote " << bundle.kind << " bundle to " << output << "\n";
  return 0;
}

int run_compress_image(const std::string& input, const std::string& output,
                       const std::string& method, std::size_t k, std::size_t l,
                       std::size_t p, std::uint64_t seed, std::size_t rows,
                       std::size_t cols) {
  const QMatrix img = load_matrix_input(input, rows, cols);
  const std::size_t kmax = std::min(img.rows(), img.cols());
  if (k < 1 || k > kmax) throw BadRank("compress-image: K outside [1, " +
                                       std::to_string(kmax) + "]");
  QMatrix approx;
  if (method == "cor-qurv") {
    const std::size_t leff = l > 0 ? l : std::min(k + 5, kmax);
    approx = truncate_cor(cor_qurv(img, {leff, p, seed, false}), k);
  } else if (method == "qsvd") {
    approx = truncate_svd(qsvd(img), k);
  } else if (method == "qurv") {
    approx = truncate_utv(qurv(img), k);
  } else {
    throw ConfigError("compress-image: unknown method '" + method + "'");
  }
  const double re = relative_error(img, approx);
  save_ppm(approx, output);
  std::cout << "K=" << k << " relative error " << re << ", wrote " << output << "\n";
  return 0;
}

int run_compress_video(const std::vector<std::string>& frames,
                       const std::string& output, const std::string& method,
                       std::size_t k, std::size_t l, std::size_t p,
                       std::uint64_t seed, const std::string& transform) {
  const QTensor video = load_frames(frames);
  const TransformSpec spec = make_spec(transform, video.dims());
  const std::size_t kmax = std::min(video.rows(), video.cols());
  if (k < 1 || k > kmax) throw BadRank("compress-video: K outside [1, " +
                                       std::to_string(kmax) + "]");
  QTensor approx;
  if (method == "cor-qturv") {
    const std::size_t leff = l > 0 ? l : std::min(k + 5, kmax);
    approx = truncate_tqt(cor_qturv(video, spec, {leff, p, seed, false}), k);
  } else if (method == "tqt-svd") {
    approx = truncate_tqt(tqt_svd(video, spec), k);
  } else if (method == "qturv") {
    approx = truncate_tqt(qturv(video, spec), k);
  } else {
    throw ConfigError("compress-video: unknown method '" + method + "'");
  }
  const double re = relative_error(video, approx);
  std::cout << "K=" << k << " relative error " << re << "\n";
  for (std::size_t f = 0; f < video.slice_count(); ++f) {
    char buf[512];
    std::snprintf(buf, sizeof buf, "%s_%04zu.ppm", output.c_str(), f);
    save_ppm(approx.slice(f), buf);
  }
  std::cout << "wrote " << video.slice_count() << " frames to " << output
            << "_*.ppm\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quaternion matrix and tensor UTV factorizations"};
  app.require_subcommand(1);

  std::string method = "qsvd", ci_method = "cor-qurv", cv_method = "cor-qturv";
  std::string input, output, transform = "dct", config_path;
  std::size_t k = 0, l = 0, p = 1, rows = 0, cols = 0;
  std::uint64_t seed = 1;
  bool shortcut = false;
  std::vector<std::string> frames;

  auto* factor = app.add_subcommand("factor", "factor a matrix or tensor into a bundle");
  factor->add_option("--method", method,
                     "qsvd|qurv|qulv|qqr|qqrcp|cor-qurv|qturv|tqt-svd|cor-qturv")
      ->required();
  factor->add_option("--input", input, "QMAT1/QTEN1 blob, PPM, or raw RGB8")->required();
  factor->add_option("--output", output, "bundle path")->required();
  factor->add_option("--l", l, "sketch width for cor methods");
  factor->add_option("--p", p, "power iterations");
  factor->add_option("--seed", seed, "sketch seed");
  factor->add_flag("--shortcut", shortcut, "single-view core estimate (p=1)");
  factor->add_option("--transform", transform, "dct|identity");
  factor->add_option("--rows", rows, "raw image rows");
  factor->add_option("--cols", cols, "raw image cols");

  auto* sweep = app.add_subcommand("sweep", "run a truncation-rank sweep from a config");
  sweep->add_option("--config", config_path, "key=value experiment config")->required();

  auto* bc = app.add_subcommand("bounds-check", "Monte-Carlo error-bound check from a config");
  bc->add_option("--config", config_path, "key=value experiment config")->required();

  auto* ci = app.add_subcommand("compress-image", "low-rank color image compression");
  ci->add_option("--input", input, "PPM or raw RGB8")->required();
  ci->add_option("--output", output, "reconstructed PPM path")->required();
  ci->add_option("--k", k, "truncation rank")->required();
  ci->add_option("--l", l, "sketch width (default K+5)");
  ci->add_option("--p", p, "power iterations");
  ci->add_option("--seed", seed, "sketch seed");
  ci->add_option("--method", ci_method, "cor-qurv|qsvd|qurv");
  ci->add_option("--rows", rows, "raw image rows");
  ci->add_option("--cols", cols, "raw image cols");

  auto* cv = app.add_subcommand("compress-video", "low-rank color video compression");
  cv->add_option("--frames", frames, "frame image paths, in order")
      ->required()
      ->delimiter(',');
  cv->add_option("--output", output, "output frame prefix")->required();
  cv->add_option("--k", k, "truncation rank")->required();
  cv->add_option("--l", l, "sketch width (default K+5)");
  cv->add_option("--p", p, "power iterations");
  cv->add_option("--seed", seed, "sketch seed");
  cv->add_option("--method", cv_method, "cor-qturv|tqt-svd|qturv");
  cv->add_option("--transform", transform, "dct|identity");

  auto* bench = app.add_subcommand("bench", "informational timing comparison");

  CLI11_PARSE(app, argc, argv);

  try {
    if (factor->parsed())
      return run_factor(method, input, output, l, p, seed, shortcut, transform,
                        rows, cols);
    if (sweep->parsed()) {
      const qutv::ExperimentConfig cfg = qutv::parse_config_file(config_path);
      const qutv::SweepResult r = qutv::run_sweep(cfg);
      if (cfg.output.empty()) std::cout << r.csv;
      else std::cout << "wrote " << r.rows.size() << " rows\n";
      return 0;
    }
    if (bc->parsed()) {
      const qutv::ExperimentConfig cfg = qutv::parse_config_file(config_path);
      const qutv::BoundsResult r = qutv::run_bounds_check(cfg);
      if (cfg.output.empty()) std::cout << r.csv;
      else
        std::cout << "trials=" << r.trials.size()
                  << " det_violations=" << r.det_violations << "\n";
      return 0;
    }
    if (ci->parsed())
      return run_compress_image(input, output, ci_method, k, l, p, seed, rows, cols);
    if (cv->parsed())
      return run_compress_video(frames, output, cv_method, k, l, p, seed, transform);
    if (bench->parsed()) {
      qutv::run_bench(std::cout);
      return 0;
    }
  } catch (const qutv::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
