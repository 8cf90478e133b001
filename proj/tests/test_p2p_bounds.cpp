#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "imddic/p2p_bounds.hpp"

using namespace imddic;

namespace {

// Adaptive Simpson quadrature of the standard Gaussian density, independent
// of the erfc-based implementation.
double gauss_pdf(double t) { return std::exp(-0.5 * t * t) / std::sqrt(2.0 * M_PI); }

double simpson(double a, double b) {
  const double m = 0.5 * (a + b);
  return (b - a) / 6.0 * (gauss_pdf(a) + 4.0 * gauss_pdf(m) + gauss_pdf(b));
}

double adaptive(double a, double b, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double left = simpson(a, m), right = simpson(m, b);
  if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adaptive(a, m, left, tol / 2.0, depth - 1) +
         adaptive(m, b, right, tol / 2.0, depth - 1);
}

double q_oracle(double x) {
  const double hi = std::max(x + 40.0, 40.0);
  return adaptive(x, hi, simpson(x, hi), 1e-13, 40);
}

// Bisection on the defining equation, independent of solve_mu_star's series
// split and bracketing policy.
double mu_oracle(double alpha) {
  auto f = [](double mu) { return 1.0 / mu - 1.0 / std::expm1(mu); };
  double lo = 1e-12, hi = 1e6;
  for (int i = 0; i < 220; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) > alpha)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

constexpr double kTwoPiE = 17.07946844534713;

const std::vector<double> kPeakGrid{1e-2, 1e-1, 1, 10, 1e2, 1e3, 1e4, 1e5, 1e6};
const std::vector<double> kRatioGrid{0.05, 0.1, 0.2, 0.3, 0.4, 0.5, 0.7, 1.0};

}  // namespace

TEST_CASE("q_function basics") {
  CHECK(q_function(0.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(q_function(40.0) < 1e-300);
  CHECK(q_function(1.959964) == doctest::Approx(q_oracle(1.959964)).epsilon(1e-10));
  CHECK(std::abs(q_function(1.959964) - 0.025) < 1e-6);
  // monotone nonincreasing
  double prev = 1.0;
  for (double x = -8.0; x <= 8.0; x += 0.125) {
    const double q = q_function(x);
    CHECK(q <= prev);
    prev = q;
  }
  // complementarity against the oracle at scattered points
  for (double x : {-3.0, -1.0, -0.25, 0.5, 2.5, 5.0})
    CHECK(q_function(x) == doctest::Approx(q_oracle(x)).epsilon(1e-10));
}

TEST_CASE("solve_mu_star matches the defining equation") {
  CHECK(solve_mu_star(0.4999) < 0.01);
  CHECK(solve_mu_star(0.4) == doctest::Approx(1.2299332003816).epsilon(1e-10));
  CHECK(std::abs(solve_mu_star(0.1) - 10.0) < 0.1);
  CHECK(solve_mu_star(0.1) == doctest::Approx(mu_oracle(0.1)).epsilon(1e-9));
  CHECK_THROWS_AS(solve_mu_star(0.0), std::domain_error);
  CHECK_THROWS_AS(solve_mu_star(0.5), std::domain_error);
  CHECK_THROWS_AS(solve_mu_star(-0.2), std::domain_error);

  // residual < 1e-10 across the domain
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> dist(0.001, 0.499);
  for (int i = 0; i < 1000; ++i) {
    const double alpha = dist(rng);
    const double mu = solve_mu_star(alpha);
    const double back = 1.0 / mu - std::exp(-mu) / (1.0 - std::exp(-mu));
    CHECK(std::abs(back - alpha) < 1e-10);
  }
}

TEST_CASE("maxent_params") {
  const auto half = maxent_params(3.0, 0.5);
  CHECK(half.rho == doctest::Approx(1.0 / kTwoPiE).epsilon(1e-15));
  CHECK_FALSE(half.mu_star.has_value());
  const auto full = maxent_params(3.0, 1.0);
  CHECK(full.rho == doctest::Approx(1.0 / kTwoPiE).epsilon(1e-15));

  const auto low = maxent_params(3.0, 0.4);
  REQUIRE(low.mu_star.has_value());
  CHECK(*low.mu_star == doctest::Approx(1.2299332003816).epsilon(1e-10));
  CHECK(low.rho == doctest::Approx(0.0518523803203388).epsilon(1e-10));
  CHECK(low.entropy ==
        doctest::Approx(0.5 * std::log2(kTwoPiE * low.rho * 9.0)).epsilon(1e-12));

  CHECK(std::isinf(maxent_params(0.0, 0.5).entropy));
  CHECK_THROWS_AS(maxent_params(1.0, 0.0), std::domain_error);
  CHECK_THROWS_AS(maxent_params(1.0, 1.5), std::domain_error);

  // rho nondecreasing in the ratio
  double prev = 0.0;
  for (double r = 0.02; r <= 1.0; r += 0.02) {
    const double v = rho(r);
    CHECK(v >= prev);
    CHECK(v <= 1.0 / kTwoPiE + 1e-15);
    prev = v;
  }
}

TEST_CASE("capacity_lower") {
  CHECK(capacity_lower(0.0, 0.3, 1.0) == 0.0);
  CHECK(capacity_lower(1000.0, 0.5, 1.0) == doctest::Approx(7.91870101960845).epsilon(1e-12));
  CHECK(capacity_lower(1000.0, 0.4, 1.0) == doctest::Approx(7.83107521045046).epsilon(1e-12));
  // strictly increasing in the peak
  for (double ratio : kRatioGrid) {
    double prev = -1.0;
    for (double peak : kPeakGrid) {
      const double c = capacity_lower(peak, ratio, 1.0);
      CHECK(c > prev);
      prev = c;
    }
  }
  CHECK_THROWS_AS(capacity_lower(1.0, 0.5, 0.0), std::domain_error);
}

TEST_CASE("capacity_upper") {
  CHECK(capacity_upper(0.0, 0.5, 1.0) == 0.0);
  // frozen from an independent high-precision minimization of the same
  // objectives (scipy bounded refinement agrees to ~1e-12)
  CHECK(capacity_upper(1.0, 0.5, 1.0) == doctest::Approx(0.493019673806).epsilon(2e-6));
  CHECK(capacity_upper(1000.0, 0.4, 1.0) == doctest::Approx(7.84486598841).epsilon(2e-6));
  CHECK(capacity_upper(1e6, 0.5, 1.0) - capacity_lower(1e6, 0.5, 1.0) < 0.01);
}

TEST_CASE("bound_pair and the gap properties") {
  const auto zero = bound_pair(0.0, 0.5, 1.0);
  CHECK(zero.lower == 0.0);
  CHECK(zero.upper == 0.0);

  CHECK(bound_pair(1000.0, 0.4, 1.0).gap() < 0.1);
  CHECK(bound_pair(1.0, 0.5, 1.0).gap() < 0.7);

  // sandwich everywhere; gap below 1 nat; vanishing at high SNR
  constexpr double kNatBits = 1.4426950408889634;
  for (double peak : kPeakGrid) {
    for (double ratio : kRatioGrid) {
      const auto b = bound_pair(peak, ratio, 1.0);
      CHECK(b.lower <= b.upper + 1e-9);
      CHECK(b.gap() < kNatBits);
      if (peak == 1e6) CHECK(b.gap() < 0.05);
    }
  }
}

TEST_CASE("f_bound") {
  // a1 = a3 = 0 collapses to the capacity lower bound
  for (double a2 : {0.5, 10.0, 500.0})
    for (double t2 : {0.1, 0.3, 0.8})
      CHECK(f_bound(0.0, a2, 0.0, 1.0, t2, 1.0, 1.0) ==
            doctest::Approx(capacity_lower(a2, t2, 1.0)).epsilon(1e-14));

  CHECK(f_bound(0.0, 0.0, 7.0, 1.0, 1.0, 0.3, 1.0) == 0.0);
  CHECK(f_bound(1000.0, 1000.0, 0.0, 0.5, 0.5, 1.0, 1.0) ==
        doctest::Approx(8.41869485957125).epsilon(1e-12));

  // symmetric under swapping the first two slots
  CHECK(f_bound(3.0, 800.0, 40.0, 0.2, 0.45, 0.3, 1.0) ==
        f_bound(800.0, 3.0, 40.0, 0.45, 0.2, 0.3, 1.0));

  // nondecreasing in a1 and a2
  double prev = -1.0;
  for (double a1 = 0.0; a1 <= 50.0; a1 += 5.0) {
    const double v = f_bound(a1, 20.0, 10.0, 0.4, 0.5, 0.3, 1.0);
    CHECK(v >= prev);
    prev = v;
  }
  prev = -1.0;
  for (double a2 = 0.0; a2 <= 50.0; a2 += 5.0) {
    const double v = f_bound(20.0, a2, 10.0, 0.4, 0.5, 0.3, 1.0);
    CHECK(v >= prev);
    prev = v;
  }

  // high-interference asymptote
  const double a3 = 1e6;
  for (double a1 : {1e5, 5e5}) {
    for (double t1 : {0.3, 0.6}) {
      const double f = f_bound(a1, 2e5, a3, t1, 0.4, 0.35, 1.0);
      const double asym = 0.5 * std::log2(1.0 + (rho(t1) * a1 * a1 + rho(0.4) * 4e10) /
                                                    (rho(0.35) * a3 * a3));
      CHECK(std::abs(f - asym) < 0.05);
    }
  }

  CHECK_THROWS_AS(f_bound(1.0, 1.0, 0.0, 0.0, 0.5, 1.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(f_bound(1.0, 1.0, 1.0, 0.5, 0.5, 0.5, 0.0), std::domain_error);
}
