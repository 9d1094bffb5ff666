#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "specop/weights.hpp"

using namespace specop;
using doctest::Approx;

namespace {

// binom(x, n) for real x by the product formula; independent of the ratio code.
double binom_real(double x, int n) {
  double v = 1.0;
  for (int k = 1; k <= n; ++k) v *= (x - n + k) / k;
  return v;
}

}  // namespace

TEST_CASE("bergman omega values") {
  const auto bergman = make_weight(BergmanType{-1.0});
  CHECK(bergman.omega(3) == Approx(0.25).epsilon(1e-15));
  CHECK(bergman.omega(0) == 1.0);

  const auto hardy = make_weight(BergmanType{0.0});
  for (std::size_t n : {0u, 1u, 7u, 1000u}) CHECK(hardy.omega(n) == 1.0);

  const auto half = make_weight(BergmanType{0.5});
  CHECK(half.ratio(0) == Approx(2.0).epsilon(1e-15));
  CHECK(half.omega(1) == Approx(1.0 / binom_real(0.5, 1)).epsilon(1e-15));
}

TEST_CASE("omega matches the binomial closed form") {
  for (double alpha : {-2.0, -1.0, -0.5, 0.25, 0.75}) {
    const auto w = make_weight(BergmanType{alpha});
    const Eigen::VectorXd om = w.omegas(40);
    for (int n = 0; n < 40; ++n) {
      const double expected = 1.0 / binom_real(n - alpha, n);
      CHECK(om(n) == Approx(expected).epsilon(1e-12));
      CHECK(w.omega(static_cast<std::size_t>(n)) == Approx(expected).epsilon(1e-12));
    }
  }
}

TEST_CASE("ratio examples") {
  CHECK(ratio(make_weight(BergmanType{-1.0}), 0) == Approx(0.5).epsilon(1e-15));
  CHECK(ratio(make_weight(BergmanType{0.0}), 17) == 1.0);
  CHECK(ratio(make_weight(DirichletPower{1.0}), 0) == Approx(2.0).epsilon(1e-15));
  const auto dp = make_weight(DirichletPower{0.3});
  for (std::size_t n = 0; n < 20; ++n)
    CHECK(dp.ratio(n) == Approx(std::pow((n + 2.0) / (n + 1.0), 0.3)).epsilon(1e-14));
}

TEST_CASE("large-index omega stays finite") {
  const auto w = make_weight(BergmanType{-2.0});
  // omega_n = 2/((n+1)(n+2)) exactly for alpha = -2
  const double n = 2e5;
  CHECK(w.omega(200000) == Approx(2.0 / ((n + 1) * (n + 2))).epsilon(1e-9));
}

TEST_CASE("constructor rejects alpha >= 1") {
  CHECK_THROWS_AS(make_weight(BergmanType{1.0}), std::invalid_argument);
  CHECK_THROWS_AS(make_weight(BergmanType{1.5}), std::invalid_argument);
  CHECK_THROWS_AS(make_weight(CustomRatio{}), std::invalid_argument);
}

TEST_CASE("validity: alpha = -1 sum and constants") {
  const auto w = make_weight(BergmanType{-1.0});
  const ValidityReport rep = validity_report(w, 1000);
  CHECK(rep.is_valid);
  CHECK(rep.certified);
  CHECK(rep.c0 == 1.0);
  CHECK(rep.c1 == Approx(2.0).epsilon(1e-15));
  CHECK(rep.monotonicity == Monotonicity::non_increasing);

  const double target = std::numbers::pi * std::numbers::pi / 6.0 - 1.0;
  // independent partial sum of 1/(n+2)^2
  double partial = 0.0;
  for (int n = 999; n >= 0; --n) partial += 1.0 / ((n + 2.0) * (n + 2.0));
  CHECK(rep.partial_sum == Approx(partial).epsilon(1e-13));
  CHECK(rep.partial_sum < target);
  CHECK(rep.partial_sum + rep.tail_bound >= target);
  CHECK(std::abs(rep.limit_estimate() - target) < 1e-6);
}

TEST_CASE("validity: hardy and dirichlet-power") {
  const auto hardy = validity_report(make_weight(BergmanType{0.0}), 100);
  CHECK(hardy.partial_sum == 0.0);
  CHECK(hardy.is_valid);
  CHECK(hardy.monotonicity == Monotonicity::constant);

  const auto dp = validity_report(make_weight(DirichletPower{0.5}), 500);
  CHECK(dp.is_valid);
  CHECK(dp.monotonicity == Monotonicity::non_decreasing);
  CHECK(dp.c0 == Approx(std::sqrt(2.0)).epsilon(1e-14));
}

TEST_CASE("validity: custom weights are only checked") {
  const auto w = make_weight(CustomRatio{[](std::size_t n) { return (n + 1.0) / (n + 3.0); }, "test"});
  const auto rep = validity_report(w, 200);
  CHECK(rep.is_valid);
  CHECK_FALSE(rep.certified);
  CHECK_FALSE(rep.c_exact);
  CHECK(rep.c1 == Approx(3.0).epsilon(1e-14));

  // Not monotone: oscillating ratios.
  const auto bad = make_weight(CustomRatio{[](std::size_t n) { return n % 2 ? 1.1 : 0.9; }, "zigzag"});
  CHECK_FALSE(validity_report(bad, 50).is_valid);
}

TEST_CASE("validity across the bergman family") {
  for (double alpha : {-2.0, -1.0, -0.5, 0.25, 0.75}) {
    const auto rep = validity_report(make_weight(BergmanType{alpha}), 2000);
    CHECK(rep.is_valid);
    CHECK(rep.tail_bound >= rep.tail_estimate);
    CHECK(rep.ratio_limit_gap < 1e-3);
  }
}

TEST_CASE("kernel diagonal") {
  CHECK(kernel_diag(make_weight(BergmanType{0.0}), 0.5, 200) == Approx(4.0 / 3.0).epsilon(1e-14));
  CHECK(kernel_diag(make_weight(BergmanType{-1.0}), 0.5, 200) == Approx(16.0 / 9.0).epsilon(1e-14));
  CHECK(kernel_diag(make_weight(BergmanType{-1.0}), 0.0, 10) == 1.0);
  CHECK(kernel_diag(make_weight(DirichletPower{2.0}), 0.0, 10) == 1.0);
  CHECK_THROWS_AS(kernel_diag(make_weight(BergmanType{0.0}), 1.0, 10), std::invalid_argument);
}

TEST_CASE("random ratios are positive and omega is their running product") {
  std::mt19937_64 rng(20261019);
  std::uniform_real_distribution<double> alpha_dist(-3.0, 0.99);
  for (int trial = 0; trial < 200; ++trial) {
    const double alpha = alpha_dist(rng);
    const auto w = make_weight(BergmanType{alpha});
    double running = 1.0;
    for (std::size_t n = 0; n < 30; ++n) {
      CHECK(w.ratio(n) > 0.0);
      CHECK(w.omega(n) == Approx(running).epsilon(1e-13));
      running *= w.ratio(n);
    }
  }
}
