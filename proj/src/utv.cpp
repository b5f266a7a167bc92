#include "qutv/utv.hpp"

#include <string>

#include "qutv/errors.hpp"

namespace qutv {

UTVFactors qurv(const QMatrix& a, QrMode mode) {
  // First pass reveals the column structure of A^H, second pass
  // re-triangularizes; both passes keep the pivot information inside V.
  const QRFactors f1 = qqrcp(conj_transpose(a), QrMode::Full);
  const QMatrix r1p1t = permute_cols_inverse(f1.R, f1.perm);  // R1 P1^T
  const QRFactors f2 = qqrcp(conj_transpose(r1p1t), mode);
  UTVFactors out;
  out.kind = UTVKind::URV;
  out.U = f2.Q;
  out.T = f2.R;
  out.V = permute_cols(f1.Q, f2.perm);
  return out;
}

UTVFactors qulv(const QMatrix& a, QrMode mode) {
  const QRFactors f1 = qqrcp(a, QrMode::Full);
  const QMatrix r1p1t = permute_cols_inverse(f1.R, f1.perm);
  const QRFactors f2 = qqrcp(conj_transpose(r1p1t), mode);
  UTVFactors out;
  out.kind = UTVKind::ULV;
  out.U = permute_cols(f1.Q, f2.perm);
  out.T = conj_transpose(f2.R);
  out.V = f2.Q;
  return out;
}

QMatrix truncate_utv(const UTVFactors& f, std::size_t k) {
  if (f.kind == UTVKind::URV) {
    const std::size_t kmax = std::min(f.U.cols(), f.T.rows());
    if (k < 1 || k > kmax)
      throw BadRank("truncate_utv: K = " + std::to_string(k) + " outside [1, " +
                    std::to_string(kmax) + "]");
    return matmul(matmul(f.U.cols_range(0, k), f.T.rows_range(0, k)),
                  conj_transpose(f.V));
  }
  const std::size_t kmax = std::min(f.V.cols(), f.T.cols());
  if (k < 1 || k > kmax)
    throw BadRank("truncate_utv: K = " + std::to_string(k) + " outside [1, " +
                  std::to_string(kmax) + "]");
  return matmul(matmul(f.U, f.T.cols_range(0, k)),
                conj_transpose(f.V.cols_range(0, k)));
}

}  // namespace qutv
