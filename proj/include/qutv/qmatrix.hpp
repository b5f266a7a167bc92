#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <vector>

#include "qutv/quaternion.hpp"

namespace qutv {

// Dense quaternion matrix, row-major contiguous storage.
class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  static QMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }

  Quaternion& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Quaternion& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  std::vector<Quaternion>& data() { return data_; }
  const std::vector<Quaternion>& data() const { return data_; }

  // Component plane c (0 = w, 1 = x, 2 = y, 3 = z) as a real Eigen matrix.
  Eigen::MatrixXd part(int c) const;
  static QMatrix from_parts(const Eigen::MatrixXd& w, const Eigen::MatrixXd& x,
                            const Eigen::MatrixXd& y, const Eigen::MatrixXd& z);

  QMatrix block(std::size_t r0, std::size_t c0, std::size_t h, std::size_t w) const;
  QMatrix cols_range(std::size_t c0, std::size_t c1) const;  // [c0, c1)
  QMatrix rows_range(std::size_t r0, std::size_t r1) const;  // [r0, r1)

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Quaternion> data_;
};

QMatrix operator+(const QMatrix& a, const QMatrix& b);
QMatrix operator-(const QMatrix& a, const QMatrix& b);
QMatrix operator*(const QMatrix& a, double s);
QMatrix operator*(double s, const QMatrix& a);

// Product under the Hamilton rules. Internally runs 16 real GEMMs on the
// component planes, so it is the only matmul path used in production code;
// tests keep an independent naive-loop oracle.
QMatrix matmul(const QMatrix& a, const QMatrix& b);
inline QMatrix operator*(const QMatrix& a, const QMatrix& b) { return matmul(a, b); }

QMatrix conj_transpose(const QMatrix& a);

// Frobenius norm, equal to sqrt(trace(A^H A)). Kahan-compensated accumulation.
double frobenius(const QMatrix& a);

// Largest singular value, computed on the complex adjoint embedding.
double spectral_norm(const QMatrix& a);

// Complex adjoint chi(A) in C^{2M x 2N}: writing A = C1 + C2*j with
// C1 = W + X*i and C2 = Y + Z*i, chi(A) = [[C1, C2], [-conj(C2), conj(C1)]].
// chi is multiplicative, respects conjugate transposition, and carries each
// singular value of A with multiplicity two.
Eigen::MatrixXcd complex_adjoint(const QMatrix& a);

// Inverse of complex_adjoint. Requires the block symmetry of a valid
// embedding within 1e-10 (relative to the Frobenius norm); NotAnAdjoint
// otherwise. Round-trips complex_adjoint bitwise.
QMatrix from_adjoint(const Eigen::MatrixXcd& c);

// Real counterpart in R^{4M x 4N}; ||A||_F = 0.5 * ||gamma(A)||_F. Kept as an
// independent cross-check for the norm routines.
Eigen::MatrixXd real_counterpart(const QMatrix& a);

// True when ||U^H U - I||_F <= tol_scale * sqrt(cols).
bool is_unitary(const QMatrix& u, double tol_scale = 1e-10);

// A * P for the permutation P whose column j is e_perm[j]: gathers columns so
// result(:, j) = a(:, perm[j]).
QMatrix permute_cols(const QMatrix& a, const std::vector<int>& perm);

// A * P^T: scatters columns back, result(:, perm[j]) = a(:, j).
QMatrix permute_cols_inverse(const QMatrix& a, const std::vector<int>& perm);

}  // namespace qutv
