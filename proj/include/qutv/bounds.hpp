#pragma once

#include <cstddef>
#include <vector>

#include "qutv/qmatrix.hpp"
#include "qutv/qtensor.hpp"

namespace qutv {

// ||a - b||_F / ||a||_F. ZeroReference when ||a||_F == 0.
double relative_error(const QMatrix& a, const QMatrix& b);
double relative_error(const QTensor& a, const QTensor& b);

// Inputs for the compressed-factorization error bounds. sigma is the full
// singular spectrum of the target (length min(rows, cols), nonincreasing).
// The realized sketch norms describe Omega_tilde = V^H Omega split after its
// first l-P rows: omega1_pinv_norm = ||pinv(rows 1..l-P)||_2 and
// omega2_norm = ||rows l-P+1..N||_2. They are required by the deterministic
// bound and ignored by the expectation bound.
struct BoundInputs {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> sigma;
  std::size_t k = 0;  // truncation rank K >= 1
  std::size_t l = 0;  // sketch width
  std::size_t p = 0;  // power iterations
  std::size_t P = 0;  // oversampling split, 2 <= P + K <= l
  double omega1_pinv_norm = -1.0;
  double omega2_norm = -1.0;
};

// Deterministic bound on ||A - A_cor||_F:
//   tail + sqrt(alpha^2 x^2 / (1 + beta^2 x^2)) + sqrt(eta^2 x^2 / (1 + tau^2 x^2))
// with x = omega2_norm * omega1_pinv_norm,
//   alpha = sqrt(K) (sigma_{l-P+1}^2 / sigma_K) gamma^{2p},
//   beta  = (sigma_{l-P+1}^2 / (sigma_1 sigma_K)) gamma^{2p},
//   eta   = (sigma_K / sigma_{l-P+1}) alpha, tau = beta / sigma_{l-P+1},
//   gamma = sigma_{l-P+1} / sigma_K, tail = sqrt(sum_{i>K} sigma_i^2).
// Degenerate spectra (sigma_K == 0 or sigma_{l-P+1} == 0) return just tail.
double det_bound_matrix(const BoundInputs& in);

// Expectation bound: tail + (1 + gamma) sqrt(K) nu1 nu2 sigma_{l-P+1} gamma,
// nu1 = 3 (sqrt(N-l+P) + sqrt(l)) + 3, nu2 = e sqrt(4l+2) / (P+1).
// Realized norms are not consulted.
double expected_bound_matrix(const BoundInputs& in);

// Tensor analogues: shared global tail sqrt(sum_k tail_k^2) plus per-slice
// terms; slices must agree on rows/cols/k/l/p/P. The expectation form divides
// the per-slice sum by the slice count.
double det_bound_tensor(const std::vector<BoundInputs>& slices);
double expected_bound_tensor(const std::vector<BoundInputs>& slices);

}  // namespace qutv
