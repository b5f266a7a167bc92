#include "qutv/qmatrix.hpp"

#include <Eigen/SVD>
#include <cstddef>
#include <string>

#include "qutv/errors.hpp"

namespace qutv {

namespace {

std::string shape_str(std::size_t r, std::size_t c) {
  return std::to_string(r) + "x" + std::to_string(c);
}

void require_same_shape(const QMatrix& a, const QMatrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionMismatch(std::string(op) + ": " + shape_str(a.rows(), a.cols()) +
                            " vs " + shape_str(b.rows(), b.cols()));
}

}  // namespace

QMatrix QMatrix::identity(std::size_t n) {
  QMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Quaternion(1.0);
  return m;
}

Eigen::MatrixXd QMatrix::part(int c) const {
  Eigen::MatrixXd out(rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) {
      const Quaternion& q = data_[i * cols_ + j];
      out(i, j) = c == 0 ? q.w : c == 1 ? q.x : c == 2 ? q.y : q.z;
    }
  return out;
}

QMatrix QMatrix::from_parts(const Eigen::MatrixXd& w, const Eigen::MatrixXd& x,
                            const Eigen::MatrixXd& y, const Eigen::MatrixXd& z) {
  QMatrix out(static_cast<std::size_t>(w.rows()), static_cast<std::size_t>(w.cols()));
  for (std::size_t i = 0; i < out.rows_; ++i)
    for (std::size_t j = 0; j < out.cols_; ++j)
      out(i, j) = Quaternion(w(i, j), x(i, j), y(i, j), z(i, j));
  return out;
}

QMatrix QMatrix::block(std::size_t r0, std::size_t c0, std::size_t h,
                       std::size_t w) const {
  if (r0 + h > rows_ || c0 + w > cols_)
    throw DimensionMismatch("block: out of range for " + shape_str(rows_, cols_));
  QMatrix out(h, w);
  for (std::size_t i = 0; i < h; ++i)
    for (std::size_t j = 0; j < w; ++j) out(i, j) = (*this)(r0 + i, c0 + j);
  return out;
}

QMatrix QMatrix::cols_range(std::size_t c0, std::size_t c1) const {
  return block(0, c0, rows_, c1 - c0);
}

QMatrix QMatrix::rows_range(std::size_t r0, std::size_t r1) const {
  return block(r0, 0, r1 - r0, cols_);
}

QMatrix operator+(const QMatrix& a, const QMatrix& b) {
  require_same_shape(a, b, "add");
  QMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.size(); ++i) out.data()[i] = a.data()[i] + b.data()[i];
  return out;
}

QMatrix operator-(const QMatrix& a, const QMatrix& b) {
  require_same_shape(a, b, "sub");
  QMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.size(); ++i) out.data()[i] = a.data()[i] - b.data()[i];
  return out;
}

QMatrix operator*(const QMatrix& a, double s) {
  QMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.size(); ++i) out.data()[i] = a.data()[i] * s;
  return out;
}

QMatrix operator*(double s, const QMatrix& a) { return a * s; }

QMatrix matmul(const QMatrix& a, const QMatrix& b) {
  if (a.cols() != b.rows())
    throw DimensionMismatch("matmul: " + shape_str(a.rows(), a.cols()) + " * " +
                            shape_str(b.rows(), b.cols()));
  const Eigen::MatrixXd a0 = a.part(0), a1 = a.part(1), a2 = a.part(2), a3 = a.part(3);
  const Eigen::MatrixXd b0 = b.part(0), b1 = b.part(1), b2 = b.part(2), b3 = b.part(3);
  // Componentwise Hamilton product; the operand order inside each GEMM is
  // what encodes the noncommutativity.
  Eigen::MatrixXd c0 = a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3;
  Eigen::MatrixXd c1 = a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2;
  Eigen::MatrixXd c2 = a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1;
  Eigen::MatrixXd c3 = a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0;
  return QMatrix::from_parts(c0, c1, c2, c3);
}

QMatrix conj_transpose(const QMatrix& a) {
  QMatrix out(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = conj(a(i, j));
  return out;
}

double frobenius(const QMatrix& a) {
  double sum = 0.0, comp = 0.0;
  for (const Quaternion& q : a.data()) {
    const double term = q.norm_sq() - comp;
    const double next = sum + term;
    comp = (next - sum) - term;
    sum = next;
  }
  return std::sqrt(sum);
}

Eigen::MatrixXcd complex_adjoint(const QMatrix& a) {
  const std::size_t m = a.rows(), n = a.cols();
  Eigen::MatrixXcd c(2 * m, 2 * n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Quaternion& q = a(i, j);
      const std::complex<double> c1(q.w, q.x);
      const std::complex<double> c2(q.y, q.z);
      c(i, j) = c1;
      c(i, j + n) = c2;
      c(i + m, j) = -std::conj(c2);
      c(i + m, j + n) = std::conj(c1);
    }
  return c;
}

QMatrix from_adjoint(const Eigen::MatrixXcd& c) {
  if (c.rows() % 2 != 0 || c.cols() % 2 != 0)
    throw NotAnAdjoint("from_adjoint: odd dimensions " +
                       shape_str(c.rows(), c.cols()));
  const std::size_t m = static_cast<std::size_t>(c.rows()) / 2;
  const std::size_t n = static_cast<std::size_t>(c.cols()) / 2;
  const auto c1 = c.topLeftCorner(m, n);
  const auto c2 = c.topRightCorner(m, n);
  const double mismatch =
      std::sqrt((c.bottomLeftCorner(m, n) + c2.conjugate()).squaredNorm() +
                (c.bottomRightCorner(m, n) - c1.conjugate()).squaredNorm());
  if (mismatch > 1e-10 * std::max(1.0, c.norm()))
    throw NotAnAdjoint("from_adjoint: block symmetry violated by " +
                       std::to_string(mismatch));
  QMatrix out(m, n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j)
      out(i, j) = Quaternion(c1(i, j).real(), c1(i, j).imag(), c2(i, j).real(),
                             c2(i, j).imag());
  return out;
}

double spectral_norm(const QMatrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(complex_adjoint(a));
  if (svd.info() != Eigen::Success)
    throw ConvergenceFailure("spectral_norm: complex SVD did not converge");
  return svd.singularValues()(0);
}

Eigen::MatrixXd real_counterpart(const QMatrix& a) {
  const std::size_t m = a.rows(), n = a.cols();
  const Eigen::MatrixXd a0 = a.part(0), a1 = a.part(1), a2 = a.part(2), a3 = a.part(3);
  Eigen::MatrixXd g(4 * m, 4 * n);
  g << a0, -a1, -a2, -a3,
       a1,  a0, -a3,  a2,
       a2,  a3,  a0, -a1,
       a3, -a2,  a1,  a0;
  return g;
}

bool is_unitary(const QMatrix& u, double tol_scale) {
  const QMatrix g = matmul(conj_transpose(u), u) - QMatrix::identity(u.cols());
  return frobenius(g) <= tol_scale * std::sqrt(static_cast<double>(u.cols()));
}

QMatrix permute_cols(const QMatrix& a, const std::vector<int>& perm) {
  if (perm.size() != a.cols())
    throw DimensionMismatch("permute_cols: perm length " +
                            std::to_string(perm.size()) + " vs cols " +
                            std::to_string(a.cols()));
  QMatrix out(a.rows(), a.cols());
  for (std::size_t j = 0; j < a.cols(); ++j)
    for (std::size_t i = 0; i < a.rows(); ++i)
      out(i, j) = a(i, static_cast<std::size_t>(perm[j]));
  return out;
}

QMatrix permute_cols_inverse(const QMatrix& a, const std::vector<int>& perm) {
  if (perm.size() != a.cols())
    throw DimensionMismatch("permute_cols_inverse: perm length " +
                            std::to_string(perm.size()) + " vs cols " +
                            std::to_string(a.cols()));
  QMatrix out(a.rows(), a.cols());
  for (std::size_t j = 0; j < a.cols(); ++j)
    for (std::size_t i = 0; i < a.rows(); ++i)
      out(i, static_cast<std::size_t>(perm[j])) = a(i, j);
  return out;
}

}  // namespace qutv
