#pragma once

#include <cstdint>

#include "qutv/qmatrix.hpp"

namespace qutv {

struct SketchParams {
  std::size_t l = 0;        // sketch width, 1 <= l <= min(M,N)
  std::size_t p = 0;        // power (subspace) iterations
  std::uint64_t seed = 0;   // test-matrix seed
  bool shortcut = false;    // pass-reducing core estimate, honored when p == 1
};

// Compressed factorization A ~= U R V^H with U (M x l), R (l x l, upper
// triangular with nonincreasing diagonal moduli), V (N x l).
struct CoRFactors {
  QMatrix U;
  QMatrix R;
  QMatrix V;
  SketchParams params;
};

// N x l standard Gaussian quaternion test matrix, filled row-major from the
// seeded component stream.
QMatrix draw_test_matrix(std::size_t n, std::size_t l, std::uint64_t seed);

// Compressed randomized UTV. Sketches Y = A Omega, runs p rounds of
// Yhat = A^H Y, Y = A Yhat (one extra adjoint pass defines Yhat when p = 0),
// orthonormalizes both sketches, forms the l x l core M = Q1^H A Q2 (or the
// single-view estimate Q1^H Y0 (Q2^H Omega)^+ when shortcut && p == 1), and
// pivot-factorizes the core. SingularSketch when the shortcut pseudo-inverse
// sees sigma_min < 1e-12 sigma_max; callers retry without the shortcut.
CoRFactors cor_qurv(const QMatrix& a, const SketchParams& params);

// Same, but with a caller-supplied test matrix (deterministic replays).
CoRFactors cor_qurv_with_test_matrix(const QMatrix& a, const QMatrix& omega,
                                     const SketchParams& params);

// U R V^H at full sketch width.
QMatrix cor_approx(const CoRFactors& f);

// Rank-K approximation U(:,1:K) R(1:K,:) V^H, K <= l.
QMatrix truncate_cor(const CoRFactors& f, std::size_t k);

}  // namespace qutv
