#pragma once

#include <vector>

#include "qutv/qmatrix.hpp"

namespace qutv {

// Width of the accumulated Q: Thin keeps min(M,N) columns, Full all M.
enum class QrMode { Thin, Full };

struct QRFactors {
  QMatrix Q;
  QMatrix R;               // upper triangular, diagonal real and nonnegative
  std::vector<int> perm;   // empty when unpivoted; A(:, perm) = Q R
  bool pivoted = false;
};

struct SVDFactors {
  QMatrix U;
  std::vector<double> sigma;  // nonincreasing, nonnegative
  QMatrix V;
};

// Householder QR. Reflectors H = I - 2 v v^H / (v^H v) with
// v = x + sign(x_1) ||x|| e_1, followed by a unit left-phase on each R row
// (and the matching right-phase on the Q column) so every diagonal entry of R
// comes out real and nonnegative.
QRFactors qqr(const QMatrix& a, QrMode mode = QrMode::Thin);

// Column-pivoted variant: pivots on the largest remaining column norm
// (ties within 1e-14 relative go to the lowest index), maintaining downdated
// norm estimates with an exact recompute once an estimate falls below 1e-7 of
// its reference. Diagonal moduli of R are nonincreasing.
QRFactors qqrcp(const QMatrix& a, QrMode mode = QrMode::Thin);

// A = Q R P^T reassembled from pivoted factors, i.e. (Q R) with columns
// scattered back to their original positions.
QMatrix qr_reconstruct(const QRFactors& f);

// SVD through the complex adjoint: sigma are the even-indexed singular values
// of chi(A); right vectors are extracted from the matching complex columns and
// re-orthonormalized by one QQR pass, then U = qqr(A V).Q. Thin shapes:
// U is M x r, V is N x r, r = min(M,N).
SVDFactors qsvd(const QMatrix& a);

// Best rank-K approximation U(:,1:K) diag(sigma_1..K) V(:,1:K)^H.
QMatrix truncate_svd(const SVDFactors& f, std::size_t k);

// Square unitary whose leading columns equal u (orthonormal input, up to
// roundoff); the remainder is an orthonormal completion.
QMatrix complete_unitary(const QMatrix& u);

}  // namespace qutv
