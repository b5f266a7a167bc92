#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <vector>

#include "qutv/qmatrix.hpp"

namespace qutv {

// Dense quaternion tensor of order >= 3. Storage is frontal-slice major: the
// composite slice index s = i3 + I3*(i4 + I4*(...)) runs over modes 3..N with
// mode 3 fastest, and each I1 x I2 slice is row-major. Collapsing modes 3..N
// into one axis is therefore a relabeling, not a data movement.
class QTensor {
 public:
  QTensor() = default;
  explicit QTensor(std::vector<std::size_t> dims);

  const std::vector<std::size_t>& dims() const { return dims_; }
  std::size_t order() const { return dims_.size(); }
  std::size_t rows() const { return dims_[0]; }
  std::size_t cols() const { return dims_[1]; }
  std::size_t slice_count() const { return slices_; }
  std::size_t size() const { return data_.size(); }

  Quaternion& at(std::size_t i, std::size_t j, std::size_t slice) {
    return data_[slice * dims_[0] * dims_[1] + i * dims_[1] + j];
  }
  const Quaternion& at(std::size_t i, std::size_t j, std::size_t slice) const {
    return data_[slice * dims_[0] * dims_[1] + i * dims_[1] + j];
  }

  QMatrix slice(std::size_t s) const;
  void set_slice(std::size_t s, const QMatrix& m);

  std::vector<Quaternion>& data() { return data_; }
  const std::vector<Quaternion>& data() const { return data_; }

 private:
  std::vector<std::size_t> dims_;
  std::size_t slices_ = 0;
  std::vector<Quaternion> data_;
};

QTensor operator+(const QTensor& a, const QTensor& b);
QTensor operator-(const QTensor& a, const QTensor& b);
double frobenius(const QTensor& a);

enum class TransformDirection { Forward, Inverse };

// Invertible real linear transform per mode >= 3. Quaternion entries are
// transformed componentwise, which keeps the transform commuting with both
// quaternion scaling and conjugation.
class TransformSpec {
 public:
  enum class Tag { Identity, Dct, Custom };

  // dims is the full tensor shape; modes 1 and 2 are untouched.
  static TransformSpec identity(const std::vector<std::size_t>& dims);
  // Orthonormal DCT-II per transformed mode; inverse is the transpose.
  static TransformSpec dct(const std::vector<std::size_t>& dims);
  // Caller-supplied invertible matrices, one per mode 3..N in order. Inverses
  // are computed and validated to ||Q Qinv - I||_F <= 1e-10 sqrt(n).
  static TransformSpec custom(const std::vector<std::size_t>& dims,
                              const std::vector<Eigen::MatrixXd>& mats);

  std::size_t mode_count() const { return fwd_.size(); }
  const Eigen::MatrixXd& forward(std::size_t mode) const { return fwd_[mode]; }
  const Eigen::MatrixXd& inverse(std::size_t mode) const { return inv_[mode]; }
  Tag tag() const { return tag_; }
  bool matches(const QTensor& t) const;

 private:
  std::vector<Eigen::MatrixXd> fwd_;  // index 0 acts on mode 3
  std::vector<Eigen::MatrixXd> inv_;
  Tag tag_ = Tag::Identity;
};

// Orthonormal DCT-II matrix: C(p,q) = s_p cos(pi (2q+1) p / (2n)) with
// s_0 = sqrt(1/n), s_p = sqrt(2/n).
Eigen::MatrixXd dct_matrix(std::size_t n);

QTensor apply_transform(const QTensor& t, const TransformSpec& spec,
                        TransformDirection dir);

// Slice-by-slice matrix product; A is I1 x t x ..., B is t x I2 x ... with
// identical trailing dims.
QTensor facewise_product(const QTensor& a, const QTensor& b);

// Transform both operands, multiply facewise, transform back.
QTensor qt_product(const QTensor& a, const QTensor& b, const TransformSpec& spec);

// Conjugate-transposes every slice in the transform domain.
QTensor qt_conj_transpose(const QTensor& a, const TransformSpec& spec);

// Identity element for qt_product: every transform-domain slice is I_l.
QTensor identity_qtensor(std::size_t l, const std::vector<std::size_t>& rest_dims,
                         const TransformSpec& spec);

// ||U * U^H - I||_F / ||I||_F and the transposed product both within tol.
bool is_unitary_qtensor(const QTensor& u, const TransformSpec& spec,
                        double tol = 1e-10);

}  // namespace qutv
