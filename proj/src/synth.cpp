#include "qutv/synth.hpp"

#include <string>

#include "qutv/errors.hpp"
#include "qutv/qfactor.hpp"

namespace qutv {

QMatrix random_qmatrix(std::size_t m, std::size_t n, std::uint64_t seed) {
  GaussianQuaternionSource src(seed);
  QMatrix out(m, n);
  for (Quaternion& q : out.data()) q = src.next();
  return out;
}

QMatrix random_unitary_cols(std::size_t m, std::size_t r, std::uint64_t seed) {
  if (r > m)
    throw BadParams("random_unitary_cols: r = " + std::to_string(r) + " > m = " +
                    std::to_string(m));
  return qqr(random_qmatrix(m, r, seed), QrMode::Thin).Q;
}

QMatrix rank_product_matrix(std::size_t m, std::size_t n, std::size_t r,
                            std::uint64_t seed) {
  GaussianQuaternionSource src(seed);
  QMatrix p(m, r), q(n, r);
  for (Quaternion& e : p.data()) e = src.next();
  for (Quaternion& e : q.data()) e = src.next();
  return matmul(p, conj_transpose(q));
}

SpectrumMatrix spectrum_matrix(std::size_t m, std::size_t n,
                               const std::vector<double>& sigma,
                               std::uint64_t seed) {
  const std::size_t r = sigma.size();
  if (r > std::min(m, n))
    throw BadParams("spectrum_matrix: spectrum longer than min(m, n)");
  SpectrumMatrix out;
  out.U = random_unitary_cols(m, r, seed);
  out.V = random_unitary_cols(n, r, seed + 0x9e3779b97f4a7c15ull);
  out.sigma = sigma;
  QMatrix us = out.U;
  for (std::size_t t = 0; t < r; ++t)
    for (std::size_t i = 0; i < m; ++i) us(i, t) *= sigma[t];
  out.A = matmul(us, conj_transpose(out.V));
  return out;
}

std::vector<double> inv_square_spectrum(std::size_t n) {
  std::vector<double> s(n);
  for (std::size_t i = 0; i < n; ++i)
    s[i] = 1.0 / (static_cast<double>(i + 1) * static_cast<double>(i + 1));
  return s;
}

QTensor rank_product_tensor(std::size_t i1, std::size_t i2, std::size_t r,
                            const std::vector<std::size_t>& rest_dims,
                            const TransformSpec& spec, std::uint64_t seed) {
  std::vector<std::size_t> pdims = {i1, r};
  pdims.insert(pdims.end(), rest_dims.begin(), rest_dims.end());
  std::vector<std::size_t> qdims = {i2, r};
  qdims.insert(qdims.end(), rest_dims.begin(), rest_dims.end());
  GaussianQuaternionSource src(seed);
  QTensor p(pdims), q(qdims);
  for (Quaternion& e : p.data()) e = src.next();
  for (Quaternion& e : q.data()) e = src.next();
  return qt_product(p, qt_conj_transpose(q, spec), spec);
}

SpectrumTensor spectrum_tensor(std::size_t i1, std::size_t i2,
                               const std::vector<std::size_t>& rest_dims,
                               const std::vector<double>& sigma,
                               const TransformSpec& spec, std::uint64_t seed) {
  std::vector<std::size_t> dims = {i1, i2};
  dims.insert(dims.end(), rest_dims.begin(), rest_dims.end());
  QTensor ahat(dims);
  SpectrumTensor out;
  out.sigma = sigma;
  out.V_hat.reserve(ahat.slice_count());
  for (std::size_t s = 0; s < ahat.slice_count(); ++s) {
    const SpectrumMatrix sm =
        spectrum_matrix(i1, i2, sigma, seed + 0x51ul * (s + 1));
    ahat.set_slice(s, sm.A);
    out.V_hat.push_back(sm.V);
  }
  out.A = apply_transform(ahat, spec, TransformDirection::Inverse);
  return out;
}

}  // namespace qutv
