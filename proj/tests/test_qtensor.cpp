#include <doctest.h>

#include <Eigen/Dense>
#include <random>
#include <vector>

#include "qutv/errors.hpp"
#include "qutv/qtensor.hpp"
#include "qutv/quaternion.hpp"
#include "qutv/synth.hpp"
#include "test_support.hpp"

using qutv::QMatrix;
using qutv::QTensor;
using qutv::Quaternion;
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

std::vector<TransformSpec> specs_for(const std::vector<std::size_t>& dims,
                                     std::uint64_t seed) {
  std::vector<TransformSpec> out;
  out.push_back(TransformSpec::identity(dims));
  out.push_back(TransformSpec::dct(dims));
  // well conditioned random invertible mats: identity plus a small gaussian
  std::vector<Eigen::MatrixXd> mats;
  std::mt19937_64 eng(seed);
  std::normal_distribution<double> dist;
  for (std::size_t m = 2; m < dims.size(); ++m) {
    Eigen::MatrixXd g(dims[m], dims[m]);
    for (Eigen::Index i = 0; i < g.rows(); ++i)
      for (Eigen::Index j = 0; j < g.cols(); ++j) g(i, j) = 0.2 * dist(eng);
    mats.push_back(Eigen::MatrixXd::Identity(g.rows(), g.cols()) + g);
  }
  out.push_back(TransformSpec::custom(dims, mats));
  return out;
}

}  // namespace

TEST_CASE("dct matrix is orthonormal") {
  for (std::size_t n : {1u, 2u, 5u, 8u}) {
    const Eigen::MatrixXd c = qutv::dct_matrix(n);
    const double err =
        (c * c.transpose() - Eigen::MatrixXd::Identity(n, n)).norm();
    CHECK(err <= 1e-12 * double(n));
  }
  // frozen value: C(0,q) = sqrt(1/n) for every q
  const Eigen::MatrixXd c4 = qutv::dct_matrix(4);
  for (int q = 0; q < 4; ++q) CHECK(c4(0, q) == doctest::Approx(0.5));
}

TEST_CASE("transforms invert and preserve dct energy") {
  const std::vector<std::size_t> dims = {4, 5, 6, 3};
  const QTensor t = random_tensor(dims, 2000);
  int cases = 0;
  for (const auto& spec : specs_for(dims, 2001)) {
    const QTensor f = qutv::apply_transform(t, spec, TransformDirection::Forward);
    const QTensor back =
        qutv::apply_transform(f, spec, TransformDirection::Inverse);
    CHECK(qutv::frobenius(back - t) <= 1e-10 * qutv::frobenius(t));
    ++cases;
    if (spec.tag() == TransformSpec::Tag::Dct) {
      // orthonormal transform preserves the frobenius norm
      CHECK(qutv::frobenius(f) ==
            doctest::Approx(qutv::frobenius(t)).epsilon(1e-12));
    }
  }
  CHECK(cases == 3);
}

TEST_CASE("facewise product matches slicewise matmul") {
  const QTensor a = random_tensor({4, 3, 5}, 2010);
  const QTensor b = random_tensor({3, 6, 5}, 2011);
  const QTensor c = qutv::facewise_product(a, b);
  for (std::size_t s = 0; s < 5; ++s) {
    const QMatrix ref = qutv::test::naive_matmul(a.slice(s), b.slice(s));
    CHECK(qutv::test::max_entry_diff(c.slice(s), ref) < 1e-12);
  }
}

TEST_CASE("tensor product properties across transforms") {
  // associativity, identity, conjugate-transpose reversal, over three
  // transforms and two shapes; each checked triple counts as a case
  int cases = 0;
  for (const auto& dims : std::vector<std::vector<std::size_t>>{
           {4, 3, 4, 2}, {3, 5, 6}}) {
    const std::size_t i1 = dims[0], i2 = dims[1];
    std::vector<std::size_t> rest(dims.begin() + 2, dims.end());
    auto with12 = [&](std::size_t a, std::size_t b) {
      std::vector<std::size_t> d = {a, b};
      d.insert(d.end(), rest.begin(), rest.end());
      return d;
    };
    for (const auto& spec : specs_for(dims, 2020)) {
      for (std::uint64_t seed = 1; seed <= 7; ++seed) {
        const QTensor a = random_tensor(with12(i1, i2), 3000 + seed);
        const QTensor b = random_tensor(with12(i2, 4), 3100 + seed);
        const QTensor c = random_tensor(with12(4, 3), 3200 + seed);

        const QTensor ab_c =
            qutv::qt_product(qutv::qt_product(a, b, spec), c, spec);
        const QTensor a_bc =
            qutv::qt_product(a, qutv::qt_product(b, c, spec), spec);
        const double scale = qutv::frobenius(a) * qutv::frobenius(b) *
                             qutv::frobenius(c);
        CHECK(qutv::frobenius(ab_c - a_bc) <= 1e-10 * scale);
        ++cases;

        const QTensor eye_l = qutv::identity_qtensor(i1, rest, spec);
        const QTensor eye_r = qutv::identity_qtensor(i2, rest, spec);
        CHECK(qutv::frobenius(qutv::qt_product(eye_l, a, spec) - a) <=
              1e-10 * qutv::frobenius(a));
        CHECK(qutv::frobenius(qutv::qt_product(a, eye_r, spec) - a) <=
              1e-10 * qutv::frobenius(a));
        cases += 2;

        const QTensor abh =
            qutv::qt_conj_transpose(qutv::qt_product(a, b, spec), spec);
        const QTensor bhah = qutv::qt_product(qutv::qt_conj_transpose(b, spec),
                                              qutv::qt_conj_transpose(a, spec),
                                              spec);
        CHECK(qutv::frobenius(abh - bhah) <=
              1e-10 * qutv::frobenius(a) * qutv::frobenius(b));
        ++cases;

        const QTensor ahh = qutv::qt_conj_transpose(
            qutv::qt_conj_transpose(a, spec), spec);
        CHECK(qutv::frobenius(ahh - a) <= 1e-10 * qutv::frobenius(a));
        ++cases;
      }
    }
  }
  CHECK(cases >= 200);
}

TEST_CASE("order three with singleton third mode collapses to matrices") {
  // I3 = 1 with the identity transform is plain matrix algebra
  const std::vector<std::size_t> dims = {6, 4, 1};
  const TransformSpec spec = TransformSpec::identity(dims);
  const QTensor a = random_tensor(dims, 2030);
  const QTensor b = random_tensor({4, 5, 1}, 2031);
  const QTensor c = qutv::qt_product(a, b, spec);
  const QMatrix ref = qutv::matmul(a.slice(0), b.slice(0));
  CHECK(qutv::test::max_entry_diff(c.slice(0), ref) <= 1e-11);
  const QTensor ah = qutv::qt_conj_transpose(a, spec);
  CHECK(qutv::test::max_entry_diff(ah.slice(0),
                                   qutv::conj_transpose(a.slice(0))) == 0.0);
}

TEST_CASE("identity tensor is unitary and idempotent") {
  const std::vector<std::size_t> rest = {5, 2};
  for (const auto& spec : specs_for({4, 4, 5, 2}, 2040)) {
    const QTensor eye = qutv::identity_qtensor(4, rest, spec);
    CHECK(qutv::is_unitary_qtensor(eye, spec));
    const QTensor sq = qutv::qt_product(eye, eye, spec);
    CHECK(qutv::frobenius(sq - eye) <= 1e-10 * qutv::frobenius(eye));
  }
}

TEST_CASE("unitary detection rejects a generic tensor") {
  const std::vector<std::size_t> dims = {4, 4, 3};
  const TransformSpec spec = TransformSpec::dct(dims);
  CHECK_FALSE(qutv::is_unitary_qtensor(random_tensor(dims, 2050), spec));
}

TEST_CASE("shape validation") {
  const QTensor a = random_tensor({4, 3, 5}, 2060);
  const QTensor b = random_tensor({4, 3, 5}, 2061);
  CHECK_THROWS_AS((void)qutv::facewise_product(a, b), qutv::DimensionMismatch);
  const QTensor c = random_tensor({3, 4, 6}, 2062);
  CHECK_THROWS_AS((void)qutv::facewise_product(a, c), qutv::DimensionMismatch);
  const TransformSpec spec = TransformSpec::dct({4, 3, 7});
  CHECK_THROWS_AS(
      (void)qutv::apply_transform(a, spec, TransformDirection::Forward),
      qutv::DimensionMismatch);
  CHECK_THROWS_AS((void)QTensor({4, 3}), qutv::DimensionMismatch);
}

TEST_CASE("custom transform validation") {
  std::vector<Eigen::MatrixXd> bad = {Eigen::MatrixXd::Zero(3, 3)};
  CHECK_THROWS_AS((void)TransformSpec::custom({4, 4, 3}, bad), qutv::BadParams);
  std::vector<Eigen::MatrixXd> wrong = {Eigen::MatrixXd::Identity(2, 2)};
  CHECK_THROWS_AS((void)TransformSpec::custom({4, 4, 3}, wrong),
                  qutv::DimensionMismatch);
}

TEST_CASE("slice roundtrip") {
  QTensor t({3, 4, 2});
  QMatrix m(3, 4);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      m(i, j) = Quaternion{double(i), double(j), 1, 0};
  t.set_slice(1, m);
  CHECK(qutv::test::max_entry_diff(t.slice(1), m) == 0.0);
  CHECK(qutv::frobenius(t.slice(0)) == 0.0);
}
