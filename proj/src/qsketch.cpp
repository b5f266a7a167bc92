#include "qutv/qsketch.hpp"

#include <string>

#include "qutv/errors.hpp"
#include "qutv/qfactor.hpp"

namespace qutv {

QMatrix draw_test_matrix(std::size_t n, std::size_t l, std::uint64_t seed) {
  GaussianQuaternionSource src(seed);
  QMatrix omega(n, l);
  for (Quaternion& q : omega.data()) q = src.next();
  return omega;
}

namespace {

// V sigma^-1 U^H; the caller guarantees sigma_min > 0.
QMatrix pinv_from_svd(const SVDFactors& f) {
  QMatrix vs = f.V;
  for (std::size_t t = 0; t < f.sigma.size(); ++t)
    for (std::size_t i = 0; i < vs.rows(); ++i) vs(i, t) *= 1.0 / f.sigma[t];
  return matmul(vs, conj_transpose(f.U));
}

}  // namespace

CoRFactors cor_qurv_with_test_matrix(const QMatrix& a, const QMatrix& omega,
                                     const SketchParams& params) {
  const std::size_t m = a.rows(), n = a.cols(), l = params.l;
  if (l < 1 || l > std::min(m, n))
    throw BadRank("cor_qurv: l = " + std::to_string(l) + " outside [1, " +
                  std::to_string(std::min(m, n)) + "]");
  if (omega.rows() != n || omega.cols() != l)
    throw DimensionMismatch("cor_qurv: test matrix is " +
                            std::to_string(omega.rows()) + "x" +
                            std::to_string(omega.cols()) + ", want " +
                            std::to_string(n) + "x" + std::to_string(l));

  const QMatrix ah = conj_transpose(a);
  QMatrix y = matmul(a, omega);  // Y_0
  const QMatrix y0 = y;
  QMatrix yhat;
  if (params.p == 0) {
    // The power loop never runs, so the row sketch takes one extra pass.
    yhat = matmul(ah, y);
  } else {
    for (std::size_t i = 0; i < params.p; ++i) {
      yhat = matmul(ah, y);
      y = matmul(a, yhat);
    }
  }

  const QMatrix q1 = qqr(y, QrMode::Thin).Q;     // m x l column basis
  const QMatrix q2 = qqr(yhat, QrMode::Thin).Q;  // n x l row basis

  QMatrix core;
  if (params.shortcut && params.p == 1) {
    // Single-view estimate M ~= Q1^H Y0 (Q2^H Omega)^+ skips the extra
    // multiplication by A.
    const SVDFactors g = qsvd(matmul(conj_transpose(q2), omega));
    if (g.sigma.front() == 0.0 || g.sigma.back() < 1e-12 * g.sigma.front())
      throw SingularSketch("cor_qurv: shortcut core is singular (sigma_min/sigma_max = " +
                           std::to_string(g.sigma.back() / g.sigma.front()) + ")");
    core = matmul(matmul(conj_transpose(q1), y0), pinv_from_svd(g));
  } else {
    core = matmul(matmul(conj_transpose(q1), a), q2);
  }

  const QRFactors f3 = qqrcp(core, QrMode::Thin);
  CoRFactors out;
  out.U = matmul(q1, f3.Q);
  out.R = f3.R;
  out.V = permute_cols(q2, f3.perm);
  out.params = params;
  return out;
}

CoRFactors cor_qurv(const QMatrix& a, const SketchParams& params) {
  return cor_qurv_with_test_matrix(
      a, draw_test_matrix(a.cols(), params.l, params.seed), params);
}

QMatrix cor_approx(const CoRFactors& f) {
  return matmul(matmul(f.U, f.R), conj_transpose(f.V));
}

QMatrix truncate_cor(const CoRFactors& f, std::size_t k) {
  if (k < 1 || k > f.R.rows())
    throw BadRank("truncate_cor: K = " + std::to_string(k) + " outside [1, " +
                  std::to_string(f.R.rows()) + "]");
  return matmul(matmul(f.U.cols_range(0, k), f.R.rows_range(0, k)),
                conj_transpose(f.V));
}

}  // namespace qutv
