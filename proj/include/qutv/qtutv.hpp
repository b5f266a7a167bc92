#pragma once

#include <vector>

#include "qutv/qsketch.hpp"
#include "qutv/qtensor.hpp"

namespace qutv {

enum class TensorFactorKind { URV, SVD };

// A = U * T * V^H under the transform product of `spec`. For URV the middle
// tensor is slicewise upper triangular in the transform domain; for SVD it is
// f-diagonal with real nonnegative tubes.
struct TensorUTVFactors {
  QTensor U;
  QTensor T;
  QTensor V;
  TransformSpec spec;
  TensorFactorKind kind = TensorFactorKind::URV;
};

struct TensorCoRFactors {
  QTensor U;
  QTensor R;
  QTensor V;
  TransformSpec spec;
  SketchParams params;
};

// Two-pass pivoted QR per transform-domain slice (the tensor analogue of the
// matrix URV): each slice k factors as U_k R_k V_k^H with full unitary U_k,
// V_k, then everything is transformed back.
TensorUTVFactors qturv(const QTensor& a, const TransformSpec& spec);

// Slicewise SVD in the transform domain with unitary completion, so U is
// I1 x I1 x ..., V is I2 x I2 x ..., and the middle tensor is f-diagonal.
TensorUTVFactors tqt_svd(const QTensor& a, const TransformSpec& spec);

struct TensorRank {
  std::size_t rank = 0;                // tubes above 1e-10 of the largest
  std::vector<double> tube_norms;      // ||D(t,t,:,...)||_F, original domain
};

TensorRank tqt_rank(const QTensor& a, const TransformSpec& spec);

// Randomized compressed factorization: one shared N x l test matrix across
// all transform-domain slices, then the matrix CoR core per slice.
TensorCoRFactors cor_qturv(const QTensor& a, const TransformSpec& spec,
                           const SketchParams& params);

// Rank-K truncation under the transform product. URV/CoR:
// U(:,1:K,:) * T(1:K,:,:) * V^H; SVD: U(:,1:K,:) * T(1:K,1:K,:) * V(:,1:K,:)^H.
QTensor truncate_tqt(const TensorUTVFactors& f, std::size_t k);
QTensor truncate_tqt(const TensorCoRFactors& f, std::size_t k);

}  // namespace qutv
