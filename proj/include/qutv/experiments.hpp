#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "qutv/qmatrix.hpp"
#include "qutv/qtensor.hpp"

namespace qutv {

// Flat key=value experiment description ('#' comments, blank lines ignored).
// Unknown keys and inconsistent combinations raise ConfigError naming the
// field. Defaults are chosen so a minimal config stays runnable.
struct ExperimentConfig {
  std::string kind;                  // synthetic-product | synthetic-spectrum | image | video
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t depth = 0;             // trailing dim for tensor kinds (0 = matrix)
  std::size_t rank = 0;              // synthetic-product target rank
  std::string spectrum = "inv-square";
  std::vector<std::string> methods;  // qsvd|qurv|qqrcp|cor-qurv|tqt-svd|qturv|cor-qturv
  std::vector<std::size_t> ksweep;   // parsed from start:step:stop or a list
  std::size_t l = 0;                 // sketch width (0 = derive from oversample)
  std::size_t oversample = 5;        // l = K + oversample when l == 0
  std::vector<std::size_t> p_list = {1};
  std::vector<std::uint64_t> seeds = {1};
  std::uint64_t data_seed = 42;
  std::size_t trials = 0;            // bounds-check trial count
  std::uint64_t seed0 = 1;           // first trial seed
  std::size_t bound_P = 2;           // oversampling split for bounds
  std::size_t bound_K = 0;           // truncation rank for bounds (0 = l - bound_P)
  bool shortcut = false;
  std::string transform = "dct";     // dct | identity
  std::string input;                 // image path, or video frame list/pattern
  std::size_t frames = 0;            // frame count for patterned video input
  std::string output;                // CSV path (empty = stdout)
};

ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig parse_config_file(const std::string& path);

struct SweepRow {
  std::string method;
  std::size_t k = 0;
  long p = -1;         // -1 for deterministic methods
  long long seed = -1; // -1 for deterministic methods
  double re = 0.0;
  double seconds = 0.0;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  std::string csv;  // schema: "# qutv-sweep-csv v1" then method,K,p,seed,re,seconds
};

// Builds the target from the config, factorizes once per (method, p, seed),
// truncates across the K sweep, and records relative errors. Timing is
// informational only.
SweepResult run_sweep(const ExperimentConfig& cfg);

struct BoundsTrial {
  std::uint64_t seed = 0;
  double observed = 0.0;       // ||A - A_cor||_F
  double det_bound = 0.0;
  double expected_bound = 0.0;
  double ratio = 0.0;          // observed / det_bound
  bool det_dominant = false;
};

struct BoundsResult {
  std::vector<BoundsTrial> trials;
  std::size_t det_violations = 0;
  double mean_observed = 0.0;
  double expected_bound = 0.0;
  bool mean_within_expected = false;
  std::string csv;  // schema: "# qutv-bounds-csv v1"
};

// Monte-Carlo check of the compressed-factorization error bounds on a
// synthetic spectrum target (matrix, or tensor when depth > 1).
BoundsResult run_bounds_check(const ExperimentConfig& cfg);

// Informational wall-clock comparison of the factorization paths; never
// gates anything.
void run_bench(std::ostream& out);

void write_text_file(const std::string& path, const std::string& text);

}  // namespace qutv
