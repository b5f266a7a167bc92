#include <doctest.h>

#include <vector>

#include "qutv/bounds.hpp"
#include "qutv/errors.hpp"
#include "qutv/qfactor.hpp"
#include "qutv/qsketch.hpp"
#include "qutv/synth.hpp"
#include "test_support.hpp"

using qutv::CoRFactors;
using qutv::QMatrix;
using qutv::SketchParams;
using qutv::test::median;

TEST_CASE("test matrix draws are deterministic") {
  const QMatrix a = qutv::draw_test_matrix(7, 3, 5);
  const QMatrix b = qutv::draw_test_matrix(7, 3, 5);
  const QMatrix c = qutv::draw_test_matrix(7, 3, 6);
  CHECK(qutv::test::max_entry_diff(a, b) == 0.0);
  CHECK(qutv::test::max_entry_diff(a, c) > 1e-3);
  REQUIRE(a.rows() == 7);
  REQUIRE(a.cols() == 3);
}

TEST_CASE("cor_qurv captures an exact low rank matrix") {
  const std::size_t r = 6;
  const QMatrix a = qutv::rank_product_matrix(30, 22, r, 1200);
  const double scale = qutv::frobenius(a);
  for (std::size_t p : {0u, 1u, 2u}) {
    const CoRFactors f = qutv::cor_qurv(a, {r + 4, p, 77, false});
    REQUIRE(f.U.rows() == 30);
    REQUIRE(f.U.cols() == r + 4);
    REQUIRE(f.R.rows() == r + 4);
    REQUIRE(f.R.cols() == r + 4);
    REQUIRE(f.V.rows() == 22);
    CHECK(qutv::frobenius(qutv::cor_approx(f) - a) <= 1e-8 * scale);
    CHECK(qutv::is_unitary(f.U, 1e-10));
    CHECK(qutv::is_unitary(f.V, 1e-10));
  }
}

TEST_CASE("core factor is ordered upper triangular") {
  const QMatrix a = qutv::random_qmatrix(20, 16, 1300);
  const CoRFactors f = qutv::cor_qurv(a, {8, 1, 9, false});
  const double scale = qutv::frobenius(a);
  for (std::size_t i = 1; i < 8; ++i) {
    for (std::size_t j = 0; j < i; ++j)
      CHECK(f.R(i, j).modulus() <= 1e-11 * scale);
    CHECK(f.R(i - 1, i - 1).modulus() >=
          f.R(i, i).modulus() - 1e-12 * scale);
  }
}

TEST_CASE("truncation stays within the sketch") {
  const QMatrix a = qutv::random_qmatrix(18, 14, 1400);
  const CoRFactors f = qutv::cor_qurv(a, {10, 1, 3, false});
  const QMatrix full = qutv::cor_approx(f);
  CHECK(qutv::frobenius(qutv::truncate_cor(f, 10) - full) <=
        1e-12 * qutv::frobenius(a));
  const QMatrix t4 = qutv::truncate_cor(f, 4);
  REQUIRE(t4.rows() == 18);
  REQUIRE(t4.cols() == 14);
  CHECK_THROWS_AS((void)qutv::truncate_cor(f, 0), qutv::BadRank);
  CHECK_THROWS_AS((void)qutv::truncate_cor(f, 11), qutv::BadRank);
}

TEST_CASE("power iterations sharpen a decaying spectrum") {
  const auto sigma = qutv::inv_square_spectrum(40);
  const auto sm = qutv::spectrum_matrix(60, 40, sigma, 1500);
  const double ref = qutv::frobenius(sm.A);
  std::vector<double> re_by_p;
  for (std::size_t p : {0u, 1u, 2u}) {
    std::vector<double> res;
    for (std::uint64_t seed = 1; seed <= 9; ++seed) {
      const CoRFactors f = qutv::cor_qurv(sm.A, {12, p, seed, false});
      res.push_back(qutv::frobenius(qutv::cor_approx(f) - sm.A) / ref);
    }
    re_by_p.push_back(median(res));
  }
  CHECK(re_by_p[1] <= re_by_p[0] + 1e-12);
  CHECK(re_by_p[2] <= re_by_p[1] + 1e-12);
  // and no sketch beats the optimal rank-l truncation
  CHECK(re_by_p[2] >= qutv::test::tail_re(sigma, 12) * (1.0 - 1e-9));
}

TEST_CASE("shortcut estimate tracks the exact core") {
  // on a slowly decaying spectrum the single-view estimate stays within a
  // constant factor of the exact core
  const auto sigma = qutv::inv_square_spectrum(30);
  const auto sm = qutv::spectrum_matrix(45, 30, sigma, 1600);
  const double ref = qutv::frobenius(sm.A);
  for (std::uint64_t seed = 1; seed <= 7; ++seed) {
    const CoRFactors ex = qutv::cor_qurv(sm.A, {10, 1, seed, false});
    const CoRFactors sc = qutv::cor_qurv(sm.A, {10, 1, seed, true});
    const double re_ex = qutv::frobenius(qutv::cor_approx(ex) - sm.A) / ref;
    const double re_sc = qutv::frobenius(qutv::cor_approx(sc) - sm.A) / ref;
    CHECK(re_sc <= 2.0 * re_ex + 1e-12);
  }

  // on an exact low rank input the pseudo-inverse cancels and the two cores
  // coincide up to roundoff
  const QMatrix lr = qutv::rank_product_matrix(45, 30, 6, 1601);
  const double rs = qutv::frobenius(lr);
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const CoRFactors ex = qutv::cor_qurv(lr, {10, 1, seed, false});
    const CoRFactors sc = qutv::cor_qurv(lr, {10, 1, seed, true});
    CHECK(qutv::frobenius(qutv::cor_approx(ex) - qutv::cor_approx(sc)) <=
          1e-8 * rs);
    CHECK(qutv::frobenius(qutv::cor_approx(sc) - lr) <= 1e-8 * rs);
  }
}

TEST_CASE("singular sketch is reported") {
  const QMatrix a = qutv::random_qmatrix(16, 12, 1700);
  // rank-1 test matrix: the shortcut core system Q2^H Omega is singular
  const QMatrix u = qutv::draw_test_matrix(12, 1, 41);
  const QMatrix w = qutv::draw_test_matrix(1, 4, 42);
  const QMatrix omega = qutv::matmul(u, w);
  CHECK_THROWS_AS(
      (void)qutv::cor_qurv_with_test_matrix(a, omega, {4, 1, 0, true}),
      qutv::SingularSketch);
  // without the shortcut the exact core does not need the pseudo-inverse,
  // the run completes (the approximation is just poor)
  const CoRFactors f =
      qutv::cor_qurv_with_test_matrix(a, omega, {4, 1, 0, false});
  CHECK(qutv::frobenius(qutv::cor_approx(f)) <= 2.0 * qutv::frobenius(a));
}

TEST_CASE("sketch parameters are validated") {
  const QMatrix a = qutv::random_qmatrix(10, 8, 1800);
  CHECK_THROWS_AS((void)qutv::cor_qurv(a, {0, 0, 1, false}), qutv::BadRank);
  CHECK_THROWS_AS((void)qutv::cor_qurv(a, {9, 0, 1, false}), qutv::BadRank);
  const QMatrix omega = qutv::draw_test_matrix(8, 5, 1);
  CHECK_THROWS_AS(
      (void)qutv::cor_qurv_with_test_matrix(a, omega, {4, 0, 1, false}),
      qutv::DimensionMismatch);
}

TEST_CASE("distribution is stable under unitary rotation") {
  // Gaussian test matrices are rotation invariant, so the error statistics
  // on A and on U A V^H should be close
  const auto sigma = qutv::inv_square_spectrum(24);
  const auto sm = qutv::spectrum_matrix(36, 24, sigma, 1900);
  const QMatrix qu = qutv::random_unitary_cols(36, 36, 1901);
  const QMatrix qv = qutv::random_unitary_cols(24, 24, 1902);
  const QMatrix rotated =
      qutv::matmul(qutv::matmul(qu, sm.A), qutv::conj_transpose(qv));
  const double ra = qutv::frobenius(sm.A), rb = qutv::frobenius(rotated);
  std::vector<double> re_a, re_b;
  for (std::uint64_t seed = 1; seed <= 15; ++seed) {
    re_a.push_back(
        qutv::frobenius(qutv::cor_approx(qutv::cor_qurv(sm.A, {8, 0, seed, false})) -
                        sm.A) /
        ra);
    re_b.push_back(
        qutv::frobenius(
            qutv::cor_approx(qutv::cor_qurv(rotated, {8, 0, seed, false})) -
            rotated) /
        rb);
  }
  CHECK(std::abs(median(re_a) - median(re_b)) < 0.05);
}
