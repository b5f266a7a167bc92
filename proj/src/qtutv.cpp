#include "qutv/qtutv.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qutv/errors.hpp"
#include "qutv/qfactor.hpp"
#include "qutv/utv.hpp"

namespace qutv {

namespace {

void require_spec(const QTensor& a, const TransformSpec& spec, const char* op) {
  if (!spec.matches(a))
    throw DimensionMismatch(std::string(op) + ": transform spec does not match tensor");
}

QTensor slices_like(const QTensor& a, std::size_t rows, std::size_t cols) {
  std::vector<std::size_t> dims = a.dims();
  dims[0] = rows;
  dims[1] = cols;
  return QTensor(dims);
}

}  // namespace

TensorUTVFactors qturv(const QTensor& a, const TransformSpec& spec) {
  require_spec(a, spec, "qturv");
  const QTensor ah = apply_transform(a, spec, TransformDirection::Forward);
  const std::size_t i1 = a.rows(), i2 = a.cols();
  QTensor u = slices_like(a, i1, i1);
  QTensor t = slices_like(a, i1, i2);
  QTensor v = slices_like(a, i2, i2);
  for (std::size_t s = 0; s < a.slice_count(); ++s) {
    const UTVFactors f = qurv(ah.slice(s), QrMode::Full);
    u.set_slice(s, f.U);
    t.set_slice(s, f.T);
    v.set_slice(s, f.V);
  }
  TensorUTVFactors out;
  out.U = apply_transform(u, spec, TransformDirection::Inverse);
  out.T = apply_transform(t, spec, TransformDirection::Inverse);
  out.V = apply_transform(v, spec, TransformDirection::Inverse);
  out.spec = spec;
  out.kind = TensorFactorKind::URV;
  return out;
}

TensorUTVFactors tqt_svd(const QTensor& a, const TransformSpec& spec) {
  require_spec(a, spec, "tqt_svd");
  const QTensor ah = apply_transform(a, spec, TransformDirection::Forward);
  const std::size_t i1 = a.rows(), i2 = a.cols();
  QTensor u = slices_like(a, i1, i1);
  QTensor d = slices_like(a, i1, i2);
  QTensor v = slices_like(a, i2, i2);
  for (std::size_t s = 0; s < a.slice_count(); ++s) {
    const SVDFactors f = qsvd(ah.slice(s));
    u.set_slice(s, complete_unitary(f.U));
    v.set_slice(s, complete_unitary(f.V));
    QMatrix ds(i1, i2);
    for (std::size_t t = 0; t < f.sigma.size(); ++t) ds(t, t) = Quaternion(f.sigma[t]);
    d.set_slice(s, ds);
  }
  TensorUTVFactors out;
  out.U = apply_transform(u, spec, TransformDirection::Inverse);
  out.T = apply_transform(d, spec, TransformDirection::Inverse);
  out.V = apply_transform(v, spec, TransformDirection::Inverse);
  out.spec = spec;
  out.kind = TensorFactorKind::SVD;
  return out;
}

TensorRank tqt_rank(const QTensor& a, const TransformSpec& spec) {
  const TensorUTVFactors f = tqt_svd(a, spec);
  TensorRank out;
  const std::size_t r = std::min(a.rows(), a.cols());
  out.tube_norms.resize(r, 0.0);
  // Tube norms of the middle tensor in the original domain; the transform is
  // already undone inside f.T.
  for (std::size_t t = 0; t < r; ++t) {
    double s = 0.0;
    for (std::size_t k = 0; k < f.T.slice_count(); ++k)
      s += f.T.at(t, t, k).norm_sq();
    out.tube_norms[t] = std::sqrt(s);
  }
  const double top = *std::max_element(out.tube_norms.begin(), out.tube_norms.end());
  for (double tn : out.tube_norms)
    if (tn > 1e-10 * top) ++out.rank;
  return out;
}

TensorCoRFactors cor_qturv(const QTensor& a, const TransformSpec& spec,
                           const SketchParams& params) {
  require_spec(a, spec, "cor_qturv");
  const std::size_t i1 = a.rows(), i2 = a.cols(), l = params.l;
  if (l < 1 || l > std::min(i1, i2))
    throw BadRank("cor_qturv: l = " + std::to_string(l) + " outside [1, " +
                  std::to_string(std::min(i1, i2)) + "]");
  const QTensor ah = apply_transform(a, spec, TransformDirection::Forward);
  // One test matrix shared by every slice keeps the sketch reproducible and
  // matches the analysis.
  const QMatrix omega = draw_test_matrix(i2, l, params.seed);
  QTensor u = slices_like(a, i1, l);
  QTensor r = slices_like(a, l, l);
  QTensor v = slices_like(a, i2, l);
  for (std::size_t s = 0; s < a.slice_count(); ++s) {
    const CoRFactors f = cor_qurv_with_test_matrix(ah.slice(s), omega, params);
    u.set_slice(s, f.U);
    r.set_slice(s, f.R);
    v.set_slice(s, f.V);
  }
  TensorCoRFactors out;
  out.U = apply_transform(u, spec, TransformDirection::Inverse);
  out.R = apply_transform(r, spec, TransformDirection::Inverse);
  out.V = apply_transform(v, spec, TransformDirection::Inverse);
  out.spec = spec;
  out.params = params;
  return out;
}

namespace {

QTensor take_cols(const QTensor& t, std::size_t k) {
  std::vector<std::size_t> dims = t.dims();
  dims[1] = k;
  QTensor out(dims);
  for (std::size_t s = 0; s < t.slice_count(); ++s)
    out.set_slice(s, t.slice(s).cols_range(0, k));
  return out;
}

QTensor take_rows(const QTensor& t, std::size_t k) {
  std::vector<std::size_t> dims = t.dims();
  dims[0] = k;
  QTensor out(dims);
  for (std::size_t s = 0; s < t.slice_count(); ++s)
    out.set_slice(s, t.slice(s).rows_range(0, k));
  return out;
}

void check_rank(std::size_t k, std::size_t kmax, const char* op) {
  if (k < 1 || k > kmax)
    throw BadRank(std::string(op) + ": K = " + std::to_string(k) +
                  " outside [1, " + std::to_string(kmax) + "]");
}

}  // namespace

QTensor truncate_tqt(const TensorUTVFactors& f, std::size_t k) {
  const std::size_t kmax = std::min(f.U.cols(), f.V.cols());
  check_rank(k, kmax, "truncate_tqt");
  if (f.kind == TensorFactorKind::URV) {
    const QTensor uk = take_cols(f.U, k);
    const QTensor tk = take_rows(f.T, k);
    return qt_product(qt_product(uk, tk, f.spec),
                      qt_conj_transpose(f.V, f.spec), f.spec);
  }
  const QTensor uk = take_cols(f.U, k);
  const QTensor dk = take_cols(take_rows(f.T, k), k);
  const QTensor vk = take_cols(f.V, k);
  return qt_product(qt_product(uk, dk, f.spec), qt_conj_transpose(vk, f.spec),
                    f.spec);
}

QTensor truncate_tqt(const TensorCoRFactors& f, std::size_t k) {
  check_rank(k, f.R.rows(), "truncate_tqt");
  const QTensor uk = take_cols(f.U, k);
  const QTensor rk = take_rows(f.R, k);
  return qt_product(qt_product(uk, rk, f.spec), qt_conj_transpose(f.V, f.spec),
                    f.spec);
}

}  // namespace qutv
