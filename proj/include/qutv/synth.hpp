#pragma once

#include <cstdint>
#include <vector>

#include "qutv/qmatrix.hpp"
#include "qutv/qtensor.hpp"

namespace qutv {

// Synthetic test problems shared by the test suite and the experiment driver.

QMatrix random_qmatrix(std::size_t m, std::size_t n, std::uint64_t seed);

// m x r with orthonormal columns (thin QQR of a Gaussian draw).
QMatrix random_unitary_cols(std::size_t m, std::size_t r, std::uint64_t seed);

// Exact rank-r product P Q^H with Gaussian P (m x r), Q (n x r).
QMatrix rank_product_matrix(std::size_t m, std::size_t n, std::size_t r,
                            std::uint64_t seed);

// A = U diag(sigma) V^H with random unitary factors and a prescribed
// spectrum; V is returned for bound evaluation.
struct SpectrumMatrix {
  QMatrix A;
  QMatrix U;  // m x len(sigma)
  QMatrix V;  // n x len(sigma)
  std::vector<double> sigma;
};
SpectrumMatrix spectrum_matrix(std::size_t m, std::size_t n,
                               const std::vector<double>& sigma,
                               std::uint64_t seed);

// sigma_i = 1 / i^2, i = 1..n.
std::vector<double> inv_square_spectrum(std::size_t n);

// Exact low-tensor-rank product P * Q^H under `spec`, with Gaussian
// I1 x r x ... and I2 x r x ... factors.
QTensor rank_product_tensor(std::size_t i1, std::size_t i2, std::size_t r,
                            const std::vector<std::size_t>& rest_dims,
                            const TransformSpec& spec, std::uint64_t seed);

// Transform-domain slices U_k diag(sigma) V_k^H with random unitary factors,
// transformed back; per-slice right factors are returned for bound
// evaluation, indexed by transform-domain slice.
struct SpectrumTensor {
  QTensor A;
  std::vector<QMatrix> V_hat;
  std::vector<double> sigma;
};
SpectrumTensor spectrum_tensor(std::size_t i1, std::size_t i2,
                               const std::vector<std::size_t>& rest_dims,
                               const std::vector<double>& sigma,
                               const TransformSpec& spec, std::uint64_t seed);

}  // namespace qutv
