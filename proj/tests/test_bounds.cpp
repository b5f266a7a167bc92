#include <doctest.h>

#include <cmath>
#include <vector>

#include "qutv/bounds.hpp"
#include "qutv/errors.hpp"
#include "qutv/qmatrix.hpp"
#include "qutv/synth.hpp"
#include "test_support.hpp"

using qutv::BoundInputs;

namespace {

BoundInputs small_case() {
  BoundInputs in;
  in.rows = 6;
  in.cols = 6;
  in.sigma = {4, 2, 1, 0.5, 0.25, 0.125};
  in.k = 2;
  in.l = 4;
  in.p = 1;
  in.P = 1;
  in.omega1_pinv_norm = 0.5;
  in.omega2_norm = 2.0;
  return in;
}

}  // namespace

TEST_CASE("relative error") {
  const qutv::QMatrix a = qutv::random_qmatrix(5, 4, 5000);
  CHECK(qutv::relative_error(a, a) <= 1e-15);
  const qutv::QMatrix z(5, 4);
  CHECK(qutv::relative_error(a, z) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK_THROWS_AS((void)qutv::relative_error(z, a), qutv::ZeroReference);
}

TEST_CASE("deterministic bound frozen value") {
  // worked through the formula by hand: gamma = 1/4, alpha = sqrt(2)/128,
  // beta = 1/512, eta = 4 alpha, tau = beta/2, x = 1
  const BoundInputs in = small_case();
  CHECK(qutv::det_bound_matrix(in) ==
        doctest::Approx(1.2076854161975166).epsilon(1e-12));
  CHECK(qutv::det_bound_matrix(in) >= 1.1524430571616109);
}

TEST_CASE("deterministic bound properties") {
  BoundInputs in = small_case();
  const double base = qutv::det_bound_matrix(in);

  // nonincreasing in p while sigma_{l-P+1} < sigma_K
  in.p = 2;
  const double deeper = qutv::det_bound_matrix(in);
  CHECK(deeper <= base);

  // the non-tail part vanishes for large p
  in.p = 50;
  CHECK(qutv::det_bound_matrix(in) - 1.1524430571616109 <= 1e-12);

  // nondecreasing in sigma_{l-P+1}
  in = small_case();
  BoundInputs hi = in;
  hi.sigma[3] = 0.9;
  CHECK(qutv::det_bound_matrix(hi) >= qutv::det_bound_matrix(in));

  // exact rank-K spectrum collapses to the tail norm
  BoundInputs exact = small_case();
  exact.sigma = {4, 2, 0, 0, 0, 0};
  CHECK(qutv::det_bound_matrix(exact) == 0.0);
  exact.sigma = {4, 2, 1, 0, 0, 0};  // sigma_{l-P+1} = 0, tail = 1
  CHECK(qutv::det_bound_matrix(exact) == doctest::Approx(1.0));
}

TEST_CASE("expected bound frozen value") {
  // flat spectrum so the prefactor is exactly 2 sqrt(K): sixty unit singular
  // values out of 148, N - l + P = 100 and l = 50 pin the two nu factors at
  // 54.21320343559643 and 12.878014563950934
  BoundInputs in;
  in.rows = 200;
  in.cols = 148;
  in.sigma.assign(148, 0.0);
  for (std::size_t i = 0; i < 60; ++i) in.sigma[i] = 1.0;
  in.k = 10;
  in.l = 50;
  in.P = 2;
  const double got = qutv::expected_bound_matrix(in);
  CHECK(got == doctest::Approx(4422.612638977197).epsilon(1e-12));
  const double nu_product =
      (got - std::sqrt(50.0)) / (2.0 * std::sqrt(10.0));
  CHECK(nu_product ==
        doctest::Approx(54.21320343559643 * 12.878014563950934).epsilon(1e-12));
}

TEST_CASE("expected bound nu factor at P equals 1") {
  // second factor alone: e sqrt(202) / 2 = 19.3170 (4 d.p.)
  BoundInputs in;
  in.rows = 148;
  in.cols = 120;
  in.sigma.assign(120, 0.0);
  for (std::size_t i = 0; i < 60; ++i) in.sigma[i] = 1.0;
  in.k = 10;
  in.l = 50;
  in.P = 1;
  const double got = qutv::expected_bound_matrix(in);
  const double nu1 = 3.0 * (std::sqrt(71.0) + std::sqrt(50.0)) + 3.0;
  const double nu_product = (got - std::sqrt(50.0)) / (2.0 * std::sqrt(10.0));
  CHECK(nu_product / nu1 == doctest::Approx(19.3170).epsilon(5e-6));
}

TEST_CASE("expected bound degenerate spectra") {
  BoundInputs in = small_case();
  in.sigma = {4, 2, 1, 0, 0, 0};
  CHECK(qutv::expected_bound_matrix(in) == doctest::Approx(1.0));
  in.sigma = {0, 0, 0, 0, 0, 0};
  CHECK(qutv::expected_bound_matrix(in) == 0.0);
}

TEST_CASE("tensor bounds collapse to the matrix case") {
  const BoundInputs in = small_case();
  CHECK(qutv::det_bound_tensor({in}) ==
        doctest::Approx(qutv::det_bound_matrix(in)).epsilon(1e-14));

  BoundInputs ex = in;
  ex.omega1_pinv_norm = -1.0;
  ex.omega2_norm = -1.0;
  CHECK(qutv::expected_bound_tensor({ex}) ==
        doctest::Approx(qutv::expected_bound_matrix(ex)).epsilon(1e-14));

  // identical slices: the tail combines in quadrature, the sum is per slice
  const double tail = 1.1524430571616109;
  const double det1 = qutv::det_bound_matrix(in);
  const double det2 = qutv::det_bound_tensor({in, in});
  CHECK(det2 == doctest::Approx(std::sqrt(2.0) * tail + 2.0 * (det1 - tail))
                    .epsilon(1e-12));
  const double exp1 = qutv::expected_bound_matrix(ex);
  const double exp3 = qutv::expected_bound_tensor({ex, ex, ex});
  CHECK(exp3 == doctest::Approx(std::sqrt(3.0) * tail + (exp1 - tail))
                    .epsilon(1e-12));
}

TEST_CASE("input validation") {
  BoundInputs in = small_case();
  in.sigma.pop_back();
  CHECK_THROWS_AS((void)qutv::det_bound_matrix(in), qutv::BadParams);

  in = small_case();
  in.k = 0;
  CHECK_THROWS_AS((void)qutv::det_bound_matrix(in), qutv::BadParams);

  in = small_case();
  in.l = 7;  // exceeds min(rows, cols)
  CHECK_THROWS_AS((void)qutv::det_bound_matrix(in), qutv::BadParams);

  in = small_case();
  in.k = 5;  // P + K > l
  CHECK_THROWS_AS((void)qutv::det_bound_matrix(in), qutv::BadParams);

  in = small_case();
  in.sigma[1] = 5.0;  // not nonincreasing
  CHECK_THROWS_AS((void)qutv::expected_bound_matrix(in), qutv::BadParams);

  in = small_case();
  in.sigma.back() = -1e-9;
  CHECK_THROWS_AS((void)qutv::expected_bound_matrix(in), qutv::BadParams);

  in = small_case();
  in.omega1_pinv_norm = -1.0;  // realized norms required for det bound
  CHECK_THROWS_AS((void)qutv::det_bound_matrix(in), qutv::BadParams);

  CHECK_THROWS_AS((void)qutv::det_bound_tensor({}), qutv::BadParams);

  BoundInputs a = small_case(), b = small_case();
  b.k = 3;
  CHECK_THROWS_AS((void)qutv::det_bound_tensor({a, b}), qutv::BadParams);
}
