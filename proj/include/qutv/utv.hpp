#pragma once

#include "qutv/qfactor.hpp"
#include "qutv/qmatrix.hpp"

namespace qutv {

enum class UTVKind { URV, ULV };

// A = U T V^H with unitary U, V and triangular middle (upper for URV, lower
// for ULV). Full shapes: U is M x M, T is M x N, V is N x N.
struct UTVFactors {
  QMatrix U;
  QMatrix T;
  QMatrix V;
  UTVKind kind = UTVKind::URV;
};

// Two-pass pivoted QR: QQRCP(A^H) = Q1 R1 P1^T, then QQRCP((R1 P1^T)^H) =
// Q2 R2 P2^T; U = Q2, T = R2, V = Q1 P2. Diagonal moduli of T inherit the
// nonincreasing pivot order of the second pass. Economy keeps U at
// M x min(M,N) and T at min(M,N) x N; truncations agree with the full form.
UTVFactors qurv(const QMatrix& a, QrMode mode = QrMode::Full);

// Mirror image: QQRCP(A) = Q1 R1 P1^T, QQRCP((R1 P1^T)^H) = Q2 R2 P2^T;
// U = Q1 P2, T = R2^H (lower triangular), V = Q2. Economy keeps V at
// N x min(M,N) and T at M x min(M,N).
UTVFactors qulv(const QMatrix& a, QrMode mode = QrMode::Full);

// Rank-K approximation. URV: U(:,1:K) T(1:K,:) V^H.
// ULV: U T(:,1:K) V(:,1:K)^H.
QMatrix truncate_utv(const UTVFactors& f, std::size_t k);

}  // namespace qutv
