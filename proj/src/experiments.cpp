#include "qutv/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "qutv/bounds.hpp"
#include "qutv/errors.hpp"
#include "qutv/media_io.hpp"
#include "qutv/qfactor.hpp"
#include "qutv/qsketch.hpp"
#include "qutv/qtutv.hpp"
#include "qutv/synth.hpp"
#include "qutv/utv.hpp"

namespace qutv {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(trim(item));
  return out;
}

std::size_t parse_size(const std::string& v, const std::string& key) {
  try {
    std::size_t pos = 0;
    const long long n = std::stoll(v, &pos);
    if (pos != v.size() || n < 0) throw std::invalid_argument(v);
    return static_cast<std::size_t>(n);
  } catch (const std::exception&) {
    throw ConfigError("config field '" + key + "': bad integer '" + v + "'");
  }
}

std::uint64_t parse_u64(const std::string& v, const std::string& key) {
  try {
    std::size_t pos = 0;
    const unsigned long long n = std::stoull(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return n;
  } catch (const std::exception&) {
    throw ConfigError("config field '" + key + "': bad integer '" + v + "'");
  }
}

// "a:b:c" (start:step:stop, inclusive), "x,y,z", or a single value.
std::vector<std::size_t> parse_sweep(const std::string& v, const std::string& key) {
  std::vector<std::size_t> out;
  if (v.find(':') != std::string::npos) {
    const auto parts = split(v, ':');
    if (parts.size() != 3)
      throw ConfigError("config field '" + key + "': want start:step:stop");
    const std::size_t start = parse_size(parts[0], key);
    const std::size_t step = parse_size(parts[1], key);
    const std::size_t stop = parse_size(parts[2], key);
    if (step == 0) throw ConfigError("config field '" + key + "': zero step");
    for (std::size_t k = start; k <= stop; k += step) out.push_back(k);
  } else {
    for (const std::string& item : split(v, ','))
      if (!item.empty()) out.push_back(parse_size(item, key));
  }
  if (out.empty()) throw ConfigError("config field '" + key + "': empty sweep");
  for (std::size_t k : out)
    if (k == 0) throw ConfigError("config field '" + key + "': ranks start at 1");
  return out;
}

const std::vector<std::string> kMatrixMethods = {"qsvd", "qurv", "qqrcp", "cor-qurv"};
const std::vector<std::string> kTensorMethods = {"tqt-svd", "qturv", "cor-qturv"};

bool contains(const std::vector<std::string>& v, const std::string& s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text) {
  ExperimentConfig cfg;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  std::vector<std::string> seen;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key.empty() || val.empty())
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": empty key or value");
    if (contains(seen, key))
      throw ConfigError("config field '" + key + "': set twice (line " +
                        std::to_string(lineno) + ")");
    seen.push_back(key);

    if (key == "kind") cfg.kind = val;
    else if (key == "rows") cfg.rows = parse_size(val, key);
    else if (key == "cols") cfg.cols = parse_size(val, key);
    else if (key == "depth") cfg.depth = parse_size(val, key);
    else if (key == "rank") cfg.rank = parse_size(val, key);
    else if (key == "spectrum") cfg.spectrum = val;
    else if (key == "methods") cfg.methods = split(val, ',');
    else if (key == "ksweep") cfg.ksweep = parse_sweep(val, key);
    else if (key == "l") cfg.l = parse_size(val, key);
    else if (key == "oversample") cfg.oversample = parse_size(val, key);
    else if (key == "p") {
      cfg.p_list.clear();
      for (const std::string& item : split(val, ','))
        cfg.p_list.push_back(parse_size(item, key));
    } else if (key == "seeds") {
      cfg.seeds.clear();
      for (const std::string& item : split(val, ','))
        cfg.seeds.push_back(parse_u64(item, key));
    } else if (key == "data_seed") cfg.data_seed = parse_u64(val, key);
    else if (key == "trials") cfg.trials = parse_size(val, key);
    else if (key == "seed0") cfg.seed0 = parse_u64(val, key);
    else if (key == "P") cfg.bound_P = parse_size(val, key);
    else if (key == "K") cfg.bound_K = parse_size(val, key);
    else if (key == "shortcut") {
      if (val == "true" || val == "1") cfg.shortcut = true;
      else if (val == "false" || val == "0") cfg.shortcut = false;
      else throw ConfigError("config field 'shortcut': want true/false");
    } else if (key == "transform") cfg.transform = val;
    else if (key == "input") cfg.input = val;
    else if (key == "frames") cfg.frames = parse_size(val, key);
    else if (key == "output") cfg.output = val;
    else throw ConfigError("config line " + std::to_string(lineno) +
                           ": unknown key '" + key + "'");
  }

  if (cfg.kind.empty()) throw ConfigError("config field 'kind': missing");
  if (cfg.kind != "synthetic-product" && cfg.kind != "synthetic-spectrum" &&
      cfg.kind != "image" && cfg.kind != "video")
    throw ConfigError("config field 'kind': unknown kind '" + cfg.kind + "'");
  if (cfg.kind == "synthetic-product" || cfg.kind == "synthetic-spectrum") {
    if (cfg.rows == 0) throw ConfigError("config field 'rows': required for synthetic kinds");
    if (cfg.cols == 0) throw ConfigError("config field 'cols': required for synthetic kinds");
  }
  if (cfg.kind == "synthetic-product") {
    if (cfg.rank == 0) throw ConfigError("config field 'rank': required for synthetic-product");
    if (cfg.rank > std::min(cfg.rows, cfg.cols))
      throw ConfigError("config field 'rank': exceeds min(rows, cols)");
  }
  if (cfg.kind == "synthetic-spectrum" && cfg.spectrum != "inv-square")
    throw ConfigError("config field 'spectrum': unknown tag '" + cfg.spectrum + "'");
  if ((cfg.kind == "image" || cfg.kind == "video") && cfg.input.empty())
    throw ConfigError("config field 'input': required for image/video kinds");
  if (cfg.kind == "video" && cfg.input.find('%') != std::string::npos &&
      cfg.frames == 0)
    throw ConfigError("config field 'frames': required with a patterned input");
  if (cfg.transform != "dct" && cfg.transform != "identity")
    throw ConfigError("config field 'transform': unknown tag '" + cfg.transform + "'");
  for (const std::string& m : cfg.methods)
    if (!contains(kMatrixMethods, m) && !contains(kTensorMethods, m))
      throw ConfigError("config field 'methods': unknown method '" + m + "'");
  const bool tensor_domain = cfg.kind == "video" || cfg.depth > 0;
  for (const std::string& m : cfg.methods) {
    if (tensor_domain && contains(kMatrixMethods, m))
      throw ConfigError("config field 'methods': '" + m + "' is a matrix method "
                        "but the config describes a tensor");
    if (!tensor_domain && contains(kTensorMethods, m))
      throw ConfigError("config field 'methods': '" + m + "' is a tensor method "
                        "but the config describes a matrix");
  }
  if (cfg.p_list.empty()) throw ConfigError("config field 'p': empty list");
  if (cfg.seeds.empty()) throw ConfigError("config field 'seeds': empty list");
  return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

namespace {

double now_seconds() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

std::string format_row(const SweepRow& r) {
  char buf[160];
  if (r.p < 0)
    std::snprintf(buf, sizeof buf, "%s,%zu,-,-,%.12e,%.6f", r.method.c_str(), r.k,
                  r.re, r.seconds);
  else
    std::snprintf(buf, sizeof buf, "%s,%zu,%ld,%lld,%.12e,%.6f", r.method.c_str(),
                  r.k, r.p, r.seed, r.re, r.seconds);
  return buf;
}

struct MatrixTarget {
  QMatrix a;
};

struct TensorTarget {
  QTensor a;
  TransformSpec spec;
};

MatrixTarget build_matrix_target(const ExperimentConfig& cfg) {
  if (cfg.kind == "synthetic-product")
    return {rank_product_matrix(cfg.rows, cfg.cols, cfg.rank, cfg.data_seed)};
  if (cfg.kind == "synthetic-spectrum")
    return {spectrum_matrix(cfg.rows, cfg.cols,
                            inv_square_spectrum(std::min(cfg.rows, cfg.cols)),
                            cfg.data_seed)
                .A};
  if (cfg.kind == "image") return {load_image(cfg.input, cfg.rows, cfg.cols)};
  throw ConfigError("config field 'kind': '" + cfg.kind + "' is not a matrix kind");
}

std::vector<std::string> frame_paths(const ExperimentConfig& cfg) {
  const auto pct = cfg.input.find('%');
  if (pct != std::string::npos) {
    // One integer conversion only; anything fancier is rejected up front.
    auto conv = cfg.input.find_first_of("diu", pct);
    if (conv == std::string::npos ||
        cfg.input.find('%', pct + 1) != std::string::npos ||
        cfg.input.substr(pct + 1, conv - pct - 1).find_first_not_of("0123456789") !=
            std::string::npos)
      throw ConfigError("config field 'input': pattern must hold a single %d");
    if (cfg.frames == 0)
      throw ConfigError("config field 'frames': required with a patterned input");
    std::vector<std::string> paths;
    // zero-based, matching the frame indices compress-video writes
    for (std::size_t i = 0; i < cfg.frames; ++i) {
      char buf[512];
      std::snprintf(buf, sizeof buf, cfg.input.c_str(), static_cast<int>(i));
      paths.emplace_back(buf);
    }
    return paths;
  }
  return split(cfg.input, ',');
}

TensorTarget build_tensor_target(const ExperimentConfig& cfg) {
  if (cfg.kind == "video") {
    QTensor a = load_frames(frame_paths(cfg));
    TransformSpec spec = cfg.transform == "dct" ? TransformSpec::dct(a.dims())
                                                : TransformSpec::identity(a.dims());
    return {std::move(a), std::move(spec)};
  }
  if (cfg.depth == 0)
    throw ConfigError("config field 'depth': required for tensor experiments");
  const std::vector<std::size_t> dims = {cfg.rows, cfg.cols, cfg.depth};
  TransformSpec spec = cfg.transform == "dct" ? TransformSpec::dct(dims)
                                              : TransformSpec::identity(dims);
  if (cfg.kind == "synthetic-product") {
    QTensor a = rank_product_tensor(cfg.rows, cfg.cols, cfg.rank, {cfg.depth},
                                    spec, cfg.data_seed);
    return {std::move(a), std::move(spec)};
  }
  if (cfg.kind == "synthetic-spectrum") {
    QTensor a = spectrum_tensor(cfg.rows, cfg.cols, {cfg.depth},
                                inv_square_spectrum(std::min(cfg.rows, cfg.cols)),
                                spec, cfg.data_seed)
                    .A;
    return {std::move(a), std::move(spec)};
  }
  throw ConfigError("config field 'kind': '" + cfg.kind + "' is not a tensor kind");
}

QMatrix truncate_qqrcp(const QRFactors& f, std::size_t k) {
  const QMatrix rp = permute_cols_inverse(f.R, f.perm);
  return matmul(f.Q.cols_range(0, k), rp.rows_range(0, k));
}

void check_k_range(const std::vector<std::size_t>& ks, std::size_t kmax) {
  for (std::size_t k : ks)
    if (k < 1 || k > kmax)
      throw ConfigError("config field 'ksweep': K = " + std::to_string(k) +
                        " outside [1, " + std::to_string(kmax) + "]");
}

}  // namespace

SweepResult run_sweep(const ExperimentConfig& cfg) {
  if (cfg.ksweep.empty()) throw ConfigError("config field 'ksweep': missing");
  if (cfg.methods.empty()) throw ConfigError("config field 'methods': missing");
  SweepResult result;
  const bool tensor_domain = cfg.kind == "video" || cfg.depth > 0;

  if (!tensor_domain) {
    const MatrixTarget target = build_matrix_target(cfg);
    const QMatrix& a = target.a;
    const std::size_t kmax = std::min(a.rows(), a.cols());
    check_k_range(cfg.ksweep, kmax);

    for (const std::string& method : cfg.methods) {
      if (method == "qsvd") {
        double t0 = now_seconds();
        const SVDFactors f = qsvd(a);
        double factor_time = now_seconds() - t0;
        for (std::size_t k : cfg.ksweep) {
          t0 = now_seconds();
          const double re = relative_error(a, truncate_svd(f, k));
          result.rows.push_back({method, k, -1, -1, re,
                                 factor_time + (now_seconds() - t0)});
          factor_time = 0.0;
        }
      } else if (method == "qurv") {
        double t0 = now_seconds();
        const UTVFactors f = qurv(a);
        double factor_time = now_seconds() - t0;
        for (std::size_t k : cfg.ksweep) {
          t0 = now_seconds();
          const double re = relative_error(a, truncate_utv(f, k));
          result.rows.push_back({method, k, -1, -1, re,
                                 factor_time + (now_seconds() - t0)});
          factor_time = 0.0;
        }
      } else if (method == "qqrcp") {
        double t0 = now_seconds();
        const QRFactors f = qqrcp(a, QrMode::Thin);
        double factor_time = now_seconds() - t0;
        for (std::size_t k : cfg.ksweep) {
          t0 = now_seconds();
          const double re = relative_error(a, truncate_qqrcp(f, k));
          result.rows.push_back({method, k, -1, -1, re,
                                 factor_time + (now_seconds() - t0)});
          factor_time = 0.0;
        }
      } else if (method == "cor-qurv") {
        for (std::size_t p : cfg.p_list) {
          for (std::uint64_t seed : cfg.seeds) {
            if (cfg.l > 0) {
              check_k_range(cfg.ksweep, cfg.l);
              SketchParams sp{cfg.l, p, seed, cfg.shortcut};
              double t0 = now_seconds();
              const CoRFactors f = cor_qurv(a, sp);
              double factor_time = now_seconds() - t0;
              for (std::size_t k : cfg.ksweep) {
                t0 = now_seconds();
                const double re = relative_error(a, truncate_cor(f, k));
                result.rows.push_back({method, k, static_cast<long>(p),
                                       static_cast<long long>(seed), re,
                                       factor_time + (now_seconds() - t0)});
                factor_time = 0.0;
              }
            } else {
              for (std::size_t k : cfg.ksweep) {
                const std::size_t l = std::min(k + cfg.oversample, kmax);
                SketchParams sp{l, p, seed, cfg.shortcut};
                const double t0 = now_seconds();
                const CoRFactors f = cor_qurv(a, sp);
                const double re = relative_error(a, truncate_cor(f, k));
                result.rows.push_back({method, k, static_cast<long>(p),
                                       static_cast<long long>(seed), re,
                                       now_seconds() - t0});
              }
            }
          }
        }
      }
    }
  } else {
    const TensorTarget target = build_tensor_target(cfg);
    const QTensor& a = target.a;
    const TransformSpec& spec = target.spec;
    const std::size_t kmax = std::min(a.rows(), a.cols());
    check_k_range(cfg.ksweep, kmax);

    for (const std::string& method : cfg.methods) {
      if (method == "qturv" || method == "tqt-svd") {
        double t0 = now_seconds();
        const TensorUTVFactors f =
            method == "qturv" ? qturv(a, spec) : tqt_svd(a, spec);
        double factor_time = now_seconds() - t0;
        for (std::size_t k : cfg.ksweep) {
          t0 = now_seconds();
          const double re = relative_error(a, truncate_tqt(f, k));
          result.rows.push_back({method, k, -1, -1, re,
                                 factor_time + (now_seconds() - t0)});
          factor_time = 0.0;
        }
      } else if (method == "cor-qturv") {
        for (std::size_t p : cfg.p_list) {
          for (std::uint64_t seed : cfg.seeds) {
            if (cfg.l > 0) {
              check_k_range(cfg.ksweep, cfg.l);
              SketchParams sp{cfg.l, p, seed, cfg.shortcut};
              double t0 = now_seconds();
              const TensorCoRFactors f = cor_qturv(a, spec, sp);
              double factor_time = now_seconds() - t0;
              for (std::size_t k : cfg.ksweep) {
                t0 = now_seconds();
                const double re = relative_error(a, truncate_tqt(f, k));
                result.rows.push_back({method, k, static_cast<long>(p),
                                       static_cast<long long>(seed), re,
                                       factor_time + (now_seconds() - t0)});
                factor_time = 0.0;
              }
            } else {
              for (std::size_t k : cfg.ksweep) {
                const std::size_t l = std::min(k + cfg.oversample, kmax);
                SketchParams sp{l, p, seed, cfg.shortcut};
                const double t0 = now_seconds();
                const TensorCoRFactors f = cor_qturv(a, spec, sp);
                const double re = relative_error(a, truncate_tqt(f, k));
                result.rows.push_back({method, k, static_cast<long>(p),
                                       static_cast<long long>(seed), re,
                                       now_seconds() - t0});
              }
            }
          }
        }
      }
    }
  }

  std::ostringstream csv;
  csv << "# qutv-sweep-csv v1\n";
  csv << "method,K,p,seed,re,seconds\n";
  for (const SweepRow& r : result.rows) csv << format_row(r) << "\n";
  result.csv = csv.str();
  if (!cfg.output.empty()) write_text_file(cfg.output, result.csv);
  return result;
}

namespace {

// Full right unitary of a prescribed-spectrum target; completes the thin
// factor when min(M,N) < N so the split of V^H Omega covers all N rows.
QMatrix full_right_unitary(const QMatrix& v_thin) {
  if (v_thin.rows() == v_thin.cols()) return v_thin;
  return complete_unitary(v_thin);
}

struct RealizedNorms {
  double omega1_pinv = 0.0;
  double omega2 = 0.0;
};

RealizedNorms realized_norms(const QMatrix& v_full, const QMatrix& omega,
                             std::size_t l, std::size_t P) {
  const QMatrix omega_t = matmul(conj_transpose(v_full), omega);
  const QMatrix omega1 = omega_t.rows_range(0, l - P);
  const QMatrix omega2 = omega_t.rows_range(l - P, omega_t.rows());
  const SVDFactors s1 = qsvd(omega1);
  if (s1.sigma.back() == 0.0)
    throw BadParams("bounds check: test matrix lost row rank");
  return {1.0 / s1.sigma.back(), spectral_norm(omega2)};
}

}  // namespace

BoundsResult run_bounds_check(const ExperimentConfig& cfg) {
  if (cfg.kind != "synthetic-spectrum")
    throw ConfigError("config field 'kind': bounds checks need synthetic-spectrum");
  if (cfg.l == 0) throw ConfigError("config field 'l': required for bounds checks");
  if (cfg.bound_P >= cfg.l) throw ConfigError("config field 'P': must be < l");
  const std::size_t P = cfg.bound_P;
  const std::size_t K = cfg.bound_K > 0 ? cfg.bound_K : cfg.l - P;
  const std::size_t p = cfg.p_list.front();
  const std::size_t trials = cfg.trials > 0 ? cfg.trials : 50;
  const bool tensor_domain = cfg.depth > 0;

  BoundsResult result;
  double observed_sum = 0.0;

  if (!tensor_domain) {
    const SpectrumMatrix sm =
        spectrum_matrix(cfg.rows, cfg.cols,
                        inv_square_spectrum(std::min(cfg.rows, cfg.cols)),
                        cfg.data_seed);
    const QMatrix v_full = full_right_unitary(sm.V);
    BoundInputs in;
    in.rows = cfg.rows;
    in.cols = cfg.cols;
    in.sigma = sm.sigma;
    in.k = K;
    in.l = cfg.l;
    in.p = p;
    in.P = P;
    const double expected = expected_bound_matrix(in);
    result.expected_bound = expected;

    for (std::size_t t = 0; t < trials; ++t) {
      const std::uint64_t seed = cfg.seed0 + t;
      const QMatrix omega = draw_test_matrix(cfg.cols, cfg.l, seed);
      const CoRFactors f =
          cor_qurv_with_test_matrix(sm.A, omega, {cfg.l, p, seed, false});
      const double observed = frobenius(sm.A - cor_approx(f));
      const RealizedNorms rn = realized_norms(v_full, omega, cfg.l, P);
      in.omega1_pinv_norm = rn.omega1_pinv;
      in.omega2_norm = rn.omega2;
      const double det = det_bound_matrix(in);
      BoundsTrial trial{seed, observed, det, expected, observed / det,
                        observed <= det};
      if (!trial.det_dominant) ++result.det_violations;
      observed_sum += observed;
      result.trials.push_back(trial);
    }
  } else {
    const TransformSpec spec =
        cfg.transform == "dct"
            ? TransformSpec::dct({cfg.rows, cfg.cols, cfg.depth})
            : TransformSpec::identity({cfg.rows, cfg.cols, cfg.depth});
    const SpectrumTensor st =
        spectrum_tensor(cfg.rows, cfg.cols, {cfg.depth},
                        inv_square_spectrum(std::min(cfg.rows, cfg.cols)), spec,
                        cfg.data_seed);
    std::vector<QMatrix> v_full;
    v_full.reserve(st.V_hat.size());
    for (const QMatrix& v : st.V_hat) v_full.push_back(full_right_unitary(v));

    std::vector<BoundInputs> base(st.V_hat.size());
    for (BoundInputs& in : base) {
      in.rows = cfg.rows;
      in.cols = cfg.cols;
      in.sigma = st.sigma;
      in.k = K;
      in.l = cfg.l;
      in.p = p;
      in.P = P;
    }
    const double expected = expected_bound_tensor(base);
    result.expected_bound = expected;

    for (std::size_t t = 0; t < trials; ++t) {
      const std::uint64_t seed = cfg.seed0 + t;
      // cor_qturv draws exactly this matrix internally from the same seed.
      const QMatrix omega = draw_test_matrix(cfg.cols, cfg.l, seed);
      const TensorCoRFactors f = cor_qturv(st.A, spec, {cfg.l, p, seed, false});
      const QTensor approx = qt_product(qt_product(f.U, f.R, spec),
                                        qt_conj_transpose(f.V, spec), spec);
      const double observed = frobenius(st.A - approx);
      std::vector<BoundInputs> slices = base;
      for (std::size_t s = 0; s < slices.size(); ++s) {
        const RealizedNorms rn = realized_norms(v_full[s], omega, cfg.l, P);
        slices[s].omega1_pinv_norm = rn.omega1_pinv;
        slices[s].omega2_norm = rn.omega2;
      }
      const double det = det_bound_tensor(slices);
      BoundsTrial trial{seed, observed, det, expected, observed / det,
                        observed <= det};
      if (!trial.det_dominant) ++result.det_violations;
      observed_sum += observed;
      result.trials.push_back(trial);
    }
  }

  result.mean_observed = observed_sum / static_cast<double>(trials);
  result.mean_within_expected = result.mean_observed <= result.expected_bound;

  std::ostringstream csv;
  csv << "# qutv-bounds-csv v1\n";
  csv << "trial,observed,det_bound,expected_bound,ratio,det_dominant\n";
  for (std::size_t i = 0; i < result.trials.size(); ++i) {
    const BoundsTrial& t = result.trials[i];
    char buf[200];
    std::snprintf(buf, sizeof buf, "%zu,%.12e,%.12e,%.12e,%.6f,%s", i, t.observed,
                  t.det_bound, t.expected_bound, t.ratio,
                  t.det_dominant ? "yes" : "no");
    csv << buf << "\n";
  }
  char buf[240];
  std::snprintf(buf, sizeof buf,
                "# summary: trials=%zu det_violations=%zu mean_observed=%.12e "
                "expected_bound=%.12e mean_within_expected=%s\n",
                result.trials.size(), result.det_violations, result.mean_observed,
                result.expected_bound, result.mean_within_expected ? "yes" : "no");
  csv << buf;
  result.csv = csv.str();
  if (!cfg.output.empty()) write_text_file(cfg.output, result.csv);
  return result;
}

void run_bench(std::ostream& out) {
  out << "informational wall-clock comparison; nothing here is a pass/fail gate\n\n";

  const QMatrix a = rank_product_matrix(200, 200, 40, 42);
  auto time_it = [&](const char* name, auto&& fn) {
    const double t0 = now_seconds();
    fn();
    const double dt = now_seconds() - t0;
    char buf[96];
    std::snprintf(buf, sizeof buf, "  %-28s %8.3f s\n", name, dt);
    out << buf;
    return dt;
  };

  out << "matrix 200x200, rank 40:\n";
  time_it("qqrcp", [&] { qqrcp(a); });
  time_it("qurv", [&] { qurv(a); });
  time_it("qsvd", [&] { qsvd(a); });
  time_it("cor-qurv (l=50, p=1)", [&] { cor_qurv(a, {50, 1, 1, false}); });
  out << "  expected ordering: qqrcp < qurv < qsvd, cor-qurv fastest of the\n"
         "  rank revealers at this size\n\n";

  const std::vector<std::size_t> dims = {60, 60, 8};
  const TransformSpec spec = TransformSpec::dct(dims);
  const QTensor t = rank_product_tensor(60, 60, 10, {8}, spec, 42);
  out << "tensor 60x60x8, rank 10:\n";
  time_it("qturv", [&] { qturv(t, spec); });
  time_it("tqt-svd", [&] { tqt_svd(t, spec); });
  time_it("cor-qturv (l=20, p=1)", [&] { cor_qturv(t, spec, {20, 1, 1, false}); });
  out << "  expected ordering: cor-qturv < qturv < tqt-svd\n";
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw IoError("failed writing '" + path + "'");
}

}  // namespace qutv
