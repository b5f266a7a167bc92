#include "qutv/qfactor.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "qutv/errors.hpp"

namespace qutv {

namespace {

// Norm of column q over rows [r0, M).
double tail_col_norm(const QMatrix& w, std::size_t r0, std::size_t q) {
  double s = 0.0;
  for (std::size_t i = r0; i < w.rows(); ++i) s += w(i, q).norm_sq();
  return std::sqrt(s);
}

struct Reflector {
  std::size_t offset = 0;          // step index; v spans rows [offset, M)
  std::vector<Quaternion> v;
  double coeff = 0.0;              // 2 / ||v||^2, 0 when the step was skipped
  Quaternion phase{1.0, 0, 0, 0};  // right phase of the Q column
  bool skipped = true;
};

// Shared Householder engine. Reflectors H = I - coeff * v v^H triangularize
// the working copy in place; each step then pulls a unit phase out of the new
// diagonal entry so R's diagonal is real and nonnegative. Q is accumulated
// afterwards by applying the chain H_1 P_1^H ... H_k P_k^H to the identity
// right-to-left, which costs O(M * width * k) instead of O(M^2 k).
QRFactors householder_qr(const QMatrix& a, bool pivot, QrMode mode) {
  const std::size_t m = a.rows(), n = a.cols();
  const std::size_t k = std::min(m, n);
  QMatrix w = a;
  std::vector<Reflector> refl(k);
  std::vector<int> cols(n);
  std::iota(cols.begin(), cols.end(), 0);

  // Downdated squared column norms over the unprocessed rows, with the
  // reference value reset at every exact recompute.
  std::vector<double> est2(n, 0.0), ref(n, 0.0);
  if (pivot) {
    for (std::size_t q = 0; q < n; ++q) {
      ref[q] = tail_col_norm(w, 0, q);
      est2[q] = ref[q] * ref[q];
    }
  }

  for (std::size_t j = 0; j < k; ++j) {
    if (pivot) {
      std::size_t best = j;
      for (std::size_t q = j + 1; q < n; ++q)
        if (est2[q] > est2[best] * (1.0 + 2e-14)) best = q;
      if (best != j) {
        for (std::size_t i = 0; i < m; ++i) std::swap(w(i, j), w(i, best));
        std::swap(est2[j], est2[best]);
        std::swap(ref[j], ref[best]);
        std::swap(cols[j], cols[best]);
      }
    }

    const double s = tail_col_norm(w, j, j);
    if (s == 0.0) {
      w(j, j) = Quaternion();
      if (pivot)
        for (std::size_t q = j + 1; q < n; ++q) {
          est2[q] -= w(j, q).norm_sq();
          if (est2[q] < 0.0 || std::sqrt(std::max(est2[q], 0.0)) < 1e-7 * ref[q]) {
            ref[q] = tail_col_norm(w, j + 1, q);
            est2[q] = ref[q] * ref[q];
          }
        }
      continue;
    }

    Reflector& r = refl[j];
    r.offset = j;
    r.skipped = false;
    const Quaternion u = sign_of(w(j, j));
    r.v.resize(m - j);
    r.v[0] = w(j, j) + u * s;  // modulus |x_1| + s, no cancellation
    for (std::size_t i = 1; i < m - j; ++i) r.v[i] = w(j + i, j);
    double vn2 = 0.0;
    for (const Quaternion& q : r.v) vn2 += q.norm_sq();
    r.coeff = 2.0 / vn2;

    for (std::size_t q = j + 1; q < n; ++q) {
      Quaternion t;
      for (std::size_t i = 0; i < m - j; ++i) t += conj(r.v[i]) * w(j + i, q);
      t *= r.coeff;
      for (std::size_t i = 0; i < m - j; ++i) w(j + i, q) -= r.v[i] * t;
    }

    // Column j maps to -u s e_1; the phase -u moves into Q's column so the
    // diagonal entry becomes the real value s.
    r.phase = -u;
    w(j, j) = Quaternion(s);
    for (std::size_t i = j + 1; i < m; ++i) w(i, j) = Quaternion();
    const Quaternion row_scale = conj(r.phase);
    for (std::size_t q = j + 1; q < n; ++q) w(j, q) = row_scale * w(j, q);

    if (pivot) {
      for (std::size_t q = j + 1; q < n; ++q) {
        est2[q] -= w(j, q).norm_sq();
        if (est2[q] < 0.0 || std::sqrt(std::max(est2[q], 0.0)) < 1e-7 * ref[q]) {
          ref[q] = tail_col_norm(w, j + 1, q);
          est2[q] = ref[q] * ref[q];
        }
      }
    }
  }

  QRFactors out;
  const std::size_t r_rows = mode == QrMode::Full ? m : k;
  out.R = QMatrix(r_rows, n);
  for (std::size_t i = 0; i < std::min(r_rows, m); ++i)
    for (std::size_t q = i; q < n; ++q) out.R(i, q) = w(i, q);

  const std::size_t width = mode == QrMode::Full ? m : k;
  out.Q = QMatrix(m, width);
  for (std::size_t t = 0; t < width; ++t) out.Q(t, t) = Quaternion(1.0);
  for (std::size_t jj = k; jj-- > 0;) {
    const Reflector& r = refl[jj];
    if (r.skipped) continue;
    for (std::size_t c = 0; c < width; ++c)
      out.Q(jj, c) = r.phase * out.Q(jj, c);
    for (std::size_t c = 0; c < width; ++c) {
      Quaternion t;
      for (std::size_t i = 0; i < m - jj; ++i)
        t += conj(r.v[i]) * out.Q(jj + i, c);
      t *= r.coeff;
      for (std::size_t i = 0; i < m - jj; ++i) out.Q(jj + i, c) -= r.v[i] * t;
    }
  }

  out.pivoted = pivot;
  if (pivot) out.perm = cols;
  return out;
}

}  // namespace

QRFactors qqr(const QMatrix& a, QrMode mode) { return householder_qr(a, false, mode); }

QRFactors qqrcp(const QMatrix& a, QrMode mode) { return householder_qr(a, true, mode); }

QMatrix qr_reconstruct(const QRFactors& f) {
  QMatrix qr = matmul(f.Q, f.R);
  if (!f.pivoted) return qr;
  return permute_cols_inverse(qr, f.perm);
}

namespace {

Quaternion quat_from_complex_pair(const std::complex<double>& c,
                                  const std::complex<double>& d) {
  // v = c - conj(d) j for an embedded column [c; d].
  return {c.real(), c.imag(), -d.real(), d.imag()};
}

}  // namespace

SVDFactors qsvd(const QMatrix& a) {
  const std::size_t m = a.rows(), n = a.cols();
  const std::size_t r = std::min(m, n);
  SVDFactors out;
  if (r == 0) return out;

  Eigen::BDCSVD<Eigen::MatrixXcd> svd(complex_adjoint(a), Eigen::ComputeThinV);
  if (svd.info() != Eigen::Success)
    throw ConvergenceFailure("qsvd: complex SVD did not converge");
  const Eigen::VectorXd& sv = svd.singularValues();
  const Eigen::MatrixXcd& vc = svd.matrixV();

  out.sigma.resize(r);
  for (std::size_t t = 0; t < r; ++t) out.sigma[t] = sv(2 * t);

  // Clusters of equal singular values need care: the complex SVD may hand
  // back an arbitrarily mixed basis of the invariant subspace, so the
  // quaternion basis is rebuilt from all columns of the cluster (a cluster of
  // quaternion multiplicity t spans exactly 2t embedded columns) and
  // re-orthonormalized with a pivoted pass. Order inside a cluster is free.
  QMatrix v(n, r);
  const double cluster_tol = 1e-12 * std::max(out.sigma[0], 1e-300);
  std::size_t t0 = 0;
  while (t0 < r) {
    std::size_t t1 = t0 + 1;
    while (t1 < r && out.sigma[t1 - 1] - out.sigma[t1] <= cluster_tol) ++t1;
    const std::size_t mult = t1 - t0;
    QMatrix cand(n, 2 * mult);
    for (std::size_t c = 0; c < 2 * mult; ++c) {
      const Eigen::Index col = static_cast<Eigen::Index>(2 * t0 + c);
      for (std::size_t i = 0; i < n; ++i)
        cand(i, c) = quat_from_complex_pair(vc(i, col), vc(i + n, col));
    }
    const QMatrix basis = qqrcp(cand, QrMode::Thin).Q;
    for (std::size_t c = 0; c < mult; ++c)
      for (std::size_t i = 0; i < n; ++i) v(i, t0 + c) = basis(i, c);
    t0 = t1;
  }

  out.V = qqr(v, QrMode::Thin).Q;
  out.U = qqr(matmul(a, out.V), QrMode::Thin).Q;
  return out;
}

QMatrix truncate_svd(const SVDFactors& f, std::size_t k) {
  if (k < 1 || k > f.sigma.size())
    throw BadRank("truncate_svd: K = " + std::to_string(k) + " outside [1, " +
                  std::to_string(f.sigma.size()) + "]");
  QMatrix us = f.U.cols_range(0, k);
  for (std::size_t t = 0; t < k; ++t)
    for (std::size_t i = 0; i < us.rows(); ++i) us(i, t) *= f.sigma[t];
  return matmul(us, conj_transpose(f.V.cols_range(0, k)));
}

QMatrix complete_unitary(const QMatrix& u) {
  return qqr(u, QrMode::Full).Q;
}

}  // namespace qutv
