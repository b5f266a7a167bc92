#include "qutv/qtensor.hpp"

#include <Eigen/LU>
#include <cmath>
#include <string>

#include "qutv/errors.hpp"

namespace qutv {

namespace {

std::string dims_str(const std::vector<std::size_t>& d) {
  std::string s;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (i) s += "x";
    s += std::to_string(d[i]);
  }
  return s;
}

}  // namespace

QTensor::QTensor(std::vector<std::size_t> dims) : dims_(std::move(dims)) {
  if (dims_.size() < 3)
    throw DimensionMismatch("QTensor: order " + std::to_string(dims_.size()) +
                            " < 3");
  slices_ = 1;
  for (std::size_t k = 2; k < dims_.size(); ++k) slices_ *= dims_[k];
  data_.assign(dims_[0] * dims_[1] * slices_, Quaternion());
}

QMatrix QTensor::slice(std::size_t s) const {
  QMatrix m(dims_[0], dims_[1]);
  const std::size_t base = s * dims_[0] * dims_[1];
  std::copy(data_.begin() + base, data_.begin() + base + dims_[0] * dims_[1],
            m.data().begin());
  return m;
}

void QTensor::set_slice(std::size_t s, const QMatrix& m) {
  if (m.rows() != dims_[0] || m.cols() != dims_[1])
    throw DimensionMismatch("set_slice: " + std::to_string(m.rows()) + "x" +
                            std::to_string(m.cols()) + " into " + dims_str(dims_));
  std::copy(m.data().begin(), m.data().end(),
            data_.begin() + s * dims_[0] * dims_[1]);
}

QTensor operator+(const QTensor& a, const QTensor& b) {
  if (a.dims() != b.dims())
    throw DimensionMismatch("tensor add: " + dims_str(a.dims()) + " vs " +
                            dims_str(b.dims()));
  QTensor out = a;
  for (std::size_t i = 0; i < out.size(); ++i) out.data()[i] += b.data()[i];
  return out;
}

QTensor operator-(const QTensor& a, const QTensor& b) {
  if (a.dims() != b.dims())
    throw DimensionMismatch("tensor sub: " + dims_str(a.dims()) + " vs " +
                            dims_str(b.dims()));
  QTensor out = a;
  for (std::size_t i = 0; i < out.size(); ++i) out.data()[i] -= b.data()[i];
  return out;
}

double frobenius(const QTensor& a) {
  double sum = 0.0, comp = 0.0;
  for (const Quaternion& q : a.data()) {
    const double term = q.norm_sq() - comp;
    const double next = sum + term;
    comp = (next - sum) - term;
    sum = next;
  }
  return std::sqrt(sum);
}

Eigen::MatrixXd dct_matrix(std::size_t n) {
  Eigen::MatrixXd c(n, n);
  const double s0 = std::sqrt(1.0 / static_cast<double>(n));
  const double sp = std::sqrt(2.0 / static_cast<double>(n));
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q)
      c(p, q) = (p == 0 ? s0 : sp) *
                std::cos(M_PI * (2.0 * q + 1.0) * p / (2.0 * n));
  return c;
}

TransformSpec TransformSpec::identity(const std::vector<std::size_t>& dims) {
  TransformSpec spec;
  spec.tag_ = Tag::Identity;
  for (std::size_t k = 2; k < dims.size(); ++k) {
    spec.fwd_.push_back(Eigen::MatrixXd::Identity(dims[k], dims[k]));
    spec.inv_.push_back(Eigen::MatrixXd::Identity(dims[k], dims[k]));
  }
  return spec;
}

TransformSpec TransformSpec::dct(const std::vector<std::size_t>& dims) {
  TransformSpec spec;
  spec.tag_ = Tag::Dct;
  for (std::size_t k = 2; k < dims.size(); ++k) {
    Eigen::MatrixXd c = dct_matrix(dims[k]);
    spec.fwd_.push_back(c);
    spec.inv_.push_back(c.transpose());
  }
  return spec;
}

TransformSpec TransformSpec::custom(const std::vector<std::size_t>& dims,
                                    const std::vector<Eigen::MatrixXd>& mats) {
  if (mats.size() + 2 != dims.size())
    throw BadParams("TransformSpec: " + std::to_string(mats.size()) +
                    " matrices for order " + std::to_string(dims.size()));
  TransformSpec spec;
  spec.tag_ = Tag::Custom;
  for (std::size_t k = 0; k < mats.size(); ++k) {
    const std::size_t nk = dims[k + 2];
    if (static_cast<std::size_t>(mats[k].rows()) != nk ||
        static_cast<std::size_t>(mats[k].cols()) != nk)
      throw DimensionMismatch("TransformSpec: mode " + std::to_string(k + 3) +
                              " matrix is " + std::to_string(mats[k].rows()) +
                              "x" + std::to_string(mats[k].cols()) + ", want " +
                              std::to_string(nk));
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(mats[k]);
    Eigen::MatrixXd inv = lu.inverse();
    const double resid =
        (mats[k] * inv - Eigen::MatrixXd::Identity(nk, nk)).norm();
    if (!std::isfinite(resid) || resid > 1e-10 * std::sqrt(static_cast<double>(nk)))
      throw BadParams("TransformSpec: mode " + std::to_string(k + 3) +
                      " matrix is not invertible (residual " +
                      std::to_string(resid) + ")");
    spec.fwd_.push_back(mats[k]);
    spec.inv_.push_back(std::move(inv));
  }
  return spec;
}

bool TransformSpec::matches(const QTensor& t) const {
  if (mode_count() + 2 != t.order()) return false;
  for (std::size_t k = 0; k < mode_count(); ++k)
    if (static_cast<std::size_t>(fwd_[k].rows()) != t.dims()[k + 2]) return false;
  return true;
}

QTensor apply_transform(const QTensor& t, const TransformSpec& spec,
                        TransformDirection dir) {
  if (!spec.matches(t))
    throw DimensionMismatch("apply_transform: spec does not match " +
                            dims_str(t.dims()));
  if (spec.tag() == TransformSpec::Tag::Identity) return t;

  QTensor cur = t;
  const std::size_t slice_len = t.rows() * t.cols();
  // One mode at a time: each output slice is a linear combination of input
  // slices sharing the other mode-3..N coordinates; quaternion entries mix
  // componentwise because the coefficients are real.
  std::size_t stride = 1;
  for (std::size_t mode = 0; mode < spec.mode_count(); ++mode) {
    const Eigen::MatrixXd& q = dir == TransformDirection::Forward
                                   ? spec.forward(mode)
                                   : spec.inverse(mode);
    const std::size_t nk = static_cast<std::size_t>(q.rows());
    const std::size_t outer = cur.slice_count() / (stride * nk);
    QTensor next(cur.dims());
    for (std::size_t b = 0; b < outer; ++b) {
      for (std::size_t a = 0; a < stride; ++a) {
        const std::size_t base = a + stride * nk * b;
        for (std::size_t co = 0; co < nk; ++co) {
          Quaternion* dst = next.data().data() + (base + stride * co) * slice_len;
          for (std::size_t ci = 0; ci < nk; ++ci) {
            const double coef = q(co, ci);
            if (coef == 0.0) continue;
            const Quaternion* src =
                cur.data().data() + (base + stride * ci) * slice_len;
            for (std::size_t e = 0; e < slice_len; ++e) {
              dst[e].w += coef * src[e].w;
              dst[e].x += coef * src[e].x;
              dst[e].y += coef * src[e].y;
              dst[e].z += coef * src[e].z;
            }
          }
        }
      }
    }
    cur = std::move(next);
    stride *= nk;
  }
  return cur;
}

QTensor facewise_product(const QTensor& a, const QTensor& b) {
  if (a.order() != b.order() || a.cols() != b.rows() ||
      !std::equal(a.dims().begin() + 2, a.dims().end(), b.dims().begin() + 2))
    throw DimensionMismatch("facewise_product: " + dims_str(a.dims()) + " * " +
                            dims_str(b.dims()));
  std::vector<std::size_t> dims = a.dims();
  dims[1] = b.cols();
  QTensor out(dims);
  for (std::size_t s = 0; s < a.slice_count(); ++s)
    out.set_slice(s, matmul(a.slice(s), b.slice(s)));
  return out;
}

QTensor qt_product(const QTensor& a, const QTensor& b, const TransformSpec& spec) {
  const QTensor ah = apply_transform(a, spec, TransformDirection::Forward);
  const QTensor bh = apply_transform(b, spec, TransformDirection::Forward);
  return apply_transform(facewise_product(ah, bh), spec,
                         TransformDirection::Inverse);
}

QTensor qt_conj_transpose(const QTensor& a, const TransformSpec& spec) {
  const QTensor ah = apply_transform(a, spec, TransformDirection::Forward);
  std::vector<std::size_t> dims = a.dims();
  std::swap(dims[0], dims[1]);
  QTensor out(dims);
  for (std::size_t s = 0; s < a.slice_count(); ++s)
    out.set_slice(s, conj_transpose(ah.slice(s)));
  return apply_transform(out, spec, TransformDirection::Inverse);
}

QTensor identity_qtensor(std::size_t l, const std::vector<std::size_t>& rest_dims,
                         const TransformSpec& spec) {
  std::vector<std::size_t> dims = {l, l};
  dims.insert(dims.end(), rest_dims.begin(), rest_dims.end());
  QTensor out(dims);
  const QMatrix eye = QMatrix::identity(l);
  for (std::size_t s = 0; s < out.slice_count(); ++s) out.set_slice(s, eye);
  return apply_transform(out, spec, TransformDirection::Inverse);
}

bool is_unitary_qtensor(const QTensor& u, const TransformSpec& spec, double tol) {
  const QTensor uh = qt_conj_transpose(u, spec);
  std::vector<std::size_t> rest(u.dims().begin() + 2, u.dims().end());
  const QTensor right = identity_qtensor(u.cols(), rest, spec);
  const QTensor left = identity_qtensor(u.rows(), rest, spec);
  const double nr = frobenius(right), nl = frobenius(left);
  return frobenius(qt_product(uh, u, spec) - right) <= tol * nr &&
         frobenius(qt_product(u, uh, spec) - left) <= tol * nl;
}

}  // namespace qutv
