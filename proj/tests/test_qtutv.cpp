#include <doctest.h>

#include <vector>

#include "qutv/errors.hpp"
#include "qutv/qtensor.hpp"
#include "qutv/qtutv.hpp"
#include "qutv/synth.hpp"
#include "test_support.hpp"

using qutv::QTensor;
using qutv::TensorCoRFactors;
using qutv::TensorFactorKind;
using qutv::TensorUTVFactors;
using qutv::TransformDirection;
using qutv::TransformSpec;

namespace {

QTensor random_tensor(const std::vector<std::size_t>& dims,
                      std::uint64_t seed) {
  QTensor t(dims);
  const auto q = qutv::qgauss(seed, t.size());
  std::copy(q.begin(), q.end(), t.data().begin());
  return t;
}

QTensor reassemble(const TensorUTVFactors& f) {
  return qutv::qt_product(qutv::qt_product(f.U, f.T, f.spec),
                          qutv::qt_conj_transpose(f.V, f.spec), f.spec);
}

}  // namespace

TEST_CASE("qturv reconstructs across transforms and shapes") {
  for (const auto& dims : std::vector<std::vector<std::size_t>>{
           {8, 6, 4}, {5, 9, 3, 2}}) {
    const QTensor a = random_tensor(dims, 4000 + dims[0]);
    const double scale = qutv::frobenius(a);
    for (const TransformSpec& spec :
         {TransformSpec::identity(dims), TransformSpec::dct(dims)}) {
      const TensorUTVFactors f = qutv::qturv(a, spec);
      REQUIRE(f.kind == TensorFactorKind::URV);
      CHECK(qutv::frobenius(reassemble(f) - a) <= 1e-9 * scale);
      CHECK(qutv::is_unitary_qtensor(f.U, spec));
      CHECK(qutv::is_unitary_qtensor(f.V, spec));

      // middle tensor is slicewise upper triangular in the transform domain
      const QTensor that =
          qutv::apply_transform(f.T, spec, TransformDirection::Forward);
      for (std::size_t s = 0; s < that.slice_count(); ++s) {
        const auto ts = that.slice(s);
        for (std::size_t i = 0; i < ts.rows(); ++i)
          for (std::size_t j = 0; j < std::min(i, ts.cols()); ++j)
            CHECK(ts(i, j).modulus() <= 1e-10 * scale);
      }
    }
  }
}

TEST_CASE("tqt_svd gives an f-diagonal middle with ordered real tubes") {
  const std::vector<std::size_t> dims = {7, 5, 4};
  const QTensor a = random_tensor(dims, 4100);
  const double scale = qutv::frobenius(a);
  const TransformSpec spec = TransformSpec::dct(dims);
  const TensorUTVFactors f = qutv::tqt_svd(a, spec);
  REQUIRE(f.kind == TensorFactorKind::SVD);
  CHECK(qutv::frobenius(reassemble(f) - a) <= 1e-9 * scale);
  CHECK(qutv::is_unitary_qtensor(f.U, spec));
  CHECK(qutv::is_unitary_qtensor(f.V, spec));

  const QTensor that =
      qutv::apply_transform(f.T, spec, TransformDirection::Forward);
  for (std::size_t s = 0; s < that.slice_count(); ++s) {
    const auto ts = that.slice(s);
    for (std::size_t i = 0; i < ts.rows(); ++i)
      for (std::size_t j = 0; j < ts.cols(); ++j) {
        if (i == j) {
          CHECK(std::abs(ts(i, i).x) <= 1e-12 * scale);
          CHECK(std::abs(ts(i, i).y) <= 1e-12 * scale);
          CHECK(std::abs(ts(i, i).z) <= 1e-12 * scale);
          CHECK(ts(i, i).w >= -1e-12 * scale);
          if (i + 1 < std::min(ts.rows(), ts.cols()))
            CHECK(ts(i, i).w >= ts(i + 1, i + 1).w - 1e-12 * scale);
        } else {
          CHECK(ts(i, j).modulus() <= 1e-10 * scale);
        }
      }
  }
}

TEST_CASE("tqt_rank sees through an exact low rank tensor") {
  const std::vector<std::size_t> rest = {5};
  const TransformSpec spec = TransformSpec::dct({10, 8, 5});
  const QTensor a = qutv::rank_product_tensor(10, 8, 3, rest, spec, 4200);
  const auto rank = qutv::tqt_rank(a, spec);
  CHECK(rank.rank == 3);
  REQUIRE(rank.tube_norms.size() == 8);
  CHECK(rank.tube_norms[2] > 1e-8 * rank.tube_norms[0]);
  CHECK(rank.tube_norms[3] <= 1e-10 * rank.tube_norms[0]);

  // rank-3 truncation of the svd form is lossless
  const TensorUTVFactors f = qutv::tqt_svd(a, spec);
  CHECK(qutv::frobenius(qutv::truncate_tqt(f, 3) - a) <=
        1e-9 * qutv::frobenius(a));
}

TEST_CASE("middle tensor spectrum matches the construction") {
  std::vector<double> sigma = {4.0, 2.0, 1.0, 0.25};
  const std::vector<std::size_t> rest = {3};
  const TransformSpec spec = TransformSpec::dct({9, 6, 3});
  const auto st = qutv::spectrum_tensor(9, 6, rest, sigma, spec, 4300);
  const TensorUTVFactors f = qutv::tqt_svd(st.A, spec);
  const QTensor that =
      qutv::apply_transform(f.T, spec, TransformDirection::Forward);
  for (std::size_t s = 0; s < 3; ++s) {
    const auto ts = that.slice(s);
    for (std::size_t t = 0; t < sigma.size(); ++t)
      CHECK(ts(t, t).w == doctest::Approx(sigma[t]).epsilon(1e-9));
    for (std::size_t t = sigma.size(); t < 6; ++t)
      CHECK(ts(t, t).w <= 1e-9 * sigma[0]);
  }
}

TEST_CASE("truncations agree between urv and svd forms at full width") {
  const std::vector<std::size_t> dims = {6, 5, 3};
  const QTensor a = random_tensor(dims, 4400);
  const TransformSpec spec = TransformSpec::dct(dims);
  const TensorUTVFactors urv = qutv::qturv(a, spec);
  const TensorUTVFactors svd = qutv::tqt_svd(a, spec);
  const double scale = qutv::frobenius(a);
  CHECK(qutv::frobenius(qutv::truncate_tqt(urv, 5) - a) <= 1e-9 * scale);
  CHECK(qutv::frobenius(qutv::truncate_tqt(svd, 5) - a) <= 1e-9 * scale);
  CHECK_THROWS_AS((void)qutv::truncate_tqt(urv, 0), qutv::BadRank);
  CHECK_THROWS_AS((void)qutv::truncate_tqt(urv, 6), qutv::BadRank);
}

TEST_CASE("cor_qturv captures an exact low rank tensor") {
  const std::vector<std::size_t> rest = {4};
  const TransformSpec spec = TransformSpec::dct({14, 11, 4});
  const QTensor a = qutv::rank_product_tensor(14, 11, 4, rest, spec, 4500);
  const double scale = qutv::frobenius(a);
  const TensorCoRFactors f = qutv::cor_qturv(a, spec, {8, 0, 21, false});
  CHECK(qutv::frobenius(qutv::truncate_tqt(f, 8) - a) <= 1e-7 * scale);

  // thin factors: U^H * U and V^H * V are the width-8 identity tensor
  const QTensor eye = qutv::identity_qtensor(8, {4}, spec);
  const QTensor uhu =
      qutv::qt_product(qutv::qt_conj_transpose(f.U, spec), f.U, spec);
  const QTensor vhv =
      qutv::qt_product(qutv::qt_conj_transpose(f.V, spec), f.V, spec);
  CHECK(qutv::frobenius(uhu - eye) <= 1e-9 * qutv::frobenius(eye));
  CHECK(qutv::frobenius(vhv - eye) <= 1e-9 * qutv::frobenius(eye));

  // the core is slicewise upper triangular in the transform domain
  const QTensor rhat =
      qutv::apply_transform(f.R, spec, TransformDirection::Forward);
  for (std::size_t s = 0; s < rhat.slice_count(); ++s) {
    const auto rs = rhat.slice(s);
    for (std::size_t i = 0; i < rs.rows(); ++i)
      for (std::size_t j = 0; j < std::min(i, rs.cols()); ++j)
        CHECK(rs(i, j).modulus() <= 1e-9 * scale);
  }
}

TEST_CASE("cor_qturv improves with power iterations") {
  const std::vector<std::size_t> rest = {4};
  const TransformSpec spec = TransformSpec::dct({16, 12, 4});
  const auto st = qutv::spectrum_tensor(16, 12, rest,
                                        qutv::inv_square_spectrum(12), spec,
                                        4600);
  const double ref = qutv::frobenius(st.A);
  std::vector<double> med;
  for (std::size_t p : {0u, 1u, 2u}) {
    std::vector<double> res;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const TensorCoRFactors f = qutv::cor_qturv(st.A, spec, {6, p, seed, false});
      res.push_back(qutv::frobenius(qutv::truncate_tqt(f, 6) - st.A) / ref);
    }
    med.push_back(qutv::test::median(res));
  }
  CHECK(med[1] <= med[0] + 1e-12);
  CHECK(med[2] <= med[1] + 1e-12);
}

TEST_CASE("factor shapes follow the input") {
  const std::vector<std::size_t> dims = {9, 6, 2, 3};
  const QTensor a = random_tensor(dims, 4700);
  const TransformSpec spec = TransformSpec::dct(dims);
  const TensorUTVFactors f = qutv::qturv(a, spec);
  CHECK(f.U.dims() == std::vector<std::size_t>{9, 9, 2, 3});
  CHECK(f.T.dims() == std::vector<std::size_t>{9, 6, 2, 3});
  CHECK(f.V.dims() == std::vector<std::size_t>{6, 6, 2, 3});
  const TensorCoRFactors c = qutv::cor_qturv(a, spec, {4, 1, 2, false});
  CHECK(c.U.dims() == std::vector<std::size_t>{9, 4, 2, 3});
  CHECK(c.R.dims() == std::vector<std::size_t>{4, 4, 2, 3});
  CHECK(c.V.dims() == std::vector<std::size_t>{6, 4, 2, 3});
}
