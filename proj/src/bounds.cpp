#include "qutv/bounds.hpp"

#include <cmath>
#include <string>

#include "qutv/errors.hpp"

namespace qutv {

double relative_error(const QMatrix& a, const QMatrix& b) {
  const double ref = frobenius(a);
  if (ref == 0.0) throw ZeroReference("relative_error: zero reference matrix");
  return frobenius(a - b) / ref;
}

double relative_error(const QTensor& a, const QTensor& b) {
  const double ref = frobenius(a);
  if (ref == 0.0) throw ZeroReference("relative_error: zero reference tensor");
  return frobenius(a - b) / ref;
}

namespace {

void validate_common(const BoundInputs& in) {
  const std::size_t mn = std::min(in.rows, in.cols);
  if (in.sigma.size() != mn)
    throw BadParams("bounds: sigma has " + std::to_string(in.sigma.size()) +
                    " entries, want min(rows, cols) = " + std::to_string(mn));
  if (in.k < 1) throw BadParams("bounds: K must be >= 1");
  if (in.P + in.k < 2 || in.P + in.k > in.l)
    throw BadParams("bounds: need 2 <= P + K <= l (P = " + std::to_string(in.P) +
                    ", K = " + std::to_string(in.k) + ", l = " +
                    std::to_string(in.l) + ")");
  if (in.l > mn)
    throw BadParams("bounds: l = " + std::to_string(in.l) +
                    " exceeds min(rows, cols) = " + std::to_string(mn));
  for (std::size_t i = 0; i + 1 < in.sigma.size(); ++i)
    if (in.sigma[i] < in.sigma[i + 1])
      throw BadParams("bounds: sigma must be nonincreasing (index " +
                      std::to_string(i + 1) + ")");
  if (!in.sigma.empty() && in.sigma.back() < 0.0)
    throw BadParams("bounds: sigma must be nonnegative");
}

double tail_norm(const BoundInputs& in) {
  double s = 0.0;
  for (std::size_t i = in.k; i < in.sigma.size(); ++i)
    s += in.sigma[i] * in.sigma[i];
  return std::sqrt(s);
}

}  // namespace

double det_bound_matrix(const BoundInputs& in) {
  validate_common(in);
  if (in.omega1_pinv_norm < 0.0 || in.omega2_norm < 0.0)
    throw BadParams("bounds: realized sketch norms required for the deterministic bound");
  const double tail = tail_norm(in);
  const double sk = in.sigma[in.k - 1];
  const double slp = in.sigma[in.l - in.P];  // sigma_{l-P+1}, 1-based
  if (sk == 0.0 || slp == 0.0) return tail;

  const double s1 = in.sigma[0];
  const double gamma = slp / sk;
  const double powfac = std::pow(gamma, 2.0 * static_cast<double>(in.p));
  const double alpha = std::sqrt(static_cast<double>(in.k)) * (slp * slp / sk) * powfac;
  const double beta = (slp * slp / (s1 * sk)) * powfac;
  const double eta = (sk / slp) * alpha;
  const double tau = beta / slp;
  const double x = in.omega2_norm * in.omega1_pinv_norm;
  const double t1 = std::sqrt(alpha * alpha * x * x / (1.0 + beta * beta * x * x));
  const double t2 = std::sqrt(eta * eta * x * x / (1.0 + tau * tau * x * x));
  return tail + t1 + t2;
}

double expected_bound_matrix(const BoundInputs& in) {
  validate_common(in);
  const double tail = tail_norm(in);
  const double sk = in.sigma[in.k - 1];
  const double slp = in.sigma[in.l - in.P];
  if (sk == 0.0 || slp == 0.0) return tail;

  const double gamma = slp / sk;
  const double n = static_cast<double>(in.cols);
  const double l = static_cast<double>(in.l);
  const double P = static_cast<double>(in.P);
  const double nu1 = 3.0 * (std::sqrt(n - l + P) + std::sqrt(l)) + 3.0;
  const double nu2 = std::exp(1.0) * std::sqrt(4.0 * l + 2.0) / (P + 1.0);
  return tail + (1.0 + gamma) * std::sqrt(static_cast<double>(in.k)) * nu1 * nu2 *
                    slp * gamma;
}

namespace {

void validate_slices(const std::vector<BoundInputs>& slices) {
  if (slices.empty()) throw BadParams("bounds: empty slice list");
  const BoundInputs& f = slices.front();
  for (const BoundInputs& s : slices) {
    validate_common(s);
    if (s.rows != f.rows || s.cols != f.cols || s.k != f.k || s.l != f.l ||
        s.p != f.p || s.P != f.P)
      throw BadParams("bounds: slices disagree on shape or parameters");
  }
}

}  // namespace

double det_bound_tensor(const std::vector<BoundInputs>& slices) {
  validate_slices(slices);
  double tail2 = 0.0, terms = 0.0;
  for (const BoundInputs& s : slices) {
    const double t = tail_norm(s);
    tail2 += t * t;
    if (s.omega1_pinv_norm < 0.0 || s.omega2_norm < 0.0)
      throw BadParams("bounds: realized sketch norms required for the deterministic bound");
    const double sk = s.sigma[s.k - 1];
    const double slp = s.sigma[s.l - s.P];
    if (sk == 0.0 || slp == 0.0) continue;
    const double gamma = slp / sk;
    const double powfac = std::pow(gamma, 2.0 * static_cast<double>(s.p));
    const double alpha =
        std::sqrt(static_cast<double>(s.k)) * (slp * slp / sk) * powfac;
    const double beta = (slp * slp / (s.sigma[0] * sk)) * powfac;
    const double eta = (sk / slp) * alpha;
    const double tau = beta / slp;
    const double x = s.omega2_norm * s.omega1_pinv_norm;
    terms += std::sqrt(alpha * alpha * x * x / (1.0 + beta * beta * x * x)) +
             std::sqrt(eta * eta * x * x / (1.0 + tau * tau * x * x));
  }
  return std::sqrt(tail2) + terms;
}

double expected_bound_tensor(const std::vector<BoundInputs>& slices) {
  validate_slices(slices);
  const BoundInputs& f = slices.front();
  const double n = static_cast<double>(f.cols);
  const double l = static_cast<double>(f.l);
  const double P = static_cast<double>(f.P);
  const double nu1 = 3.0 * (std::sqrt(n - l + P) + std::sqrt(l)) + 3.0;
  const double nu2 = std::exp(1.0) * std::sqrt(4.0 * l + 2.0) / (P + 1.0);
  double tail2 = 0.0, sum = 0.0;
  for (const BoundInputs& s : slices) {
    const double t = tail_norm(s);
    tail2 += t * t;
    const double sk = s.sigma[s.k - 1];
    const double slp = s.sigma[s.l - s.P];
    if (sk == 0.0 || slp == 0.0) continue;
    const double gamma = slp / sk;
    sum += (1.0 + gamma) * slp * gamma;
  }
  const double count = static_cast<double>(slices.size());
  return std::sqrt(tail2) +
         (std::sqrt(static_cast<double>(f.k)) * nu1 * nu2 / count) * sum;
}

}  // namespace qutv
