#include <doctest.h>

#include <cmath>

#include "seedtrace/errors.hpp"
#include "seedtrace/rng.hpp"
#include "seedtrace/stats.hpp"

using namespace seedtrace;

namespace {

// Composite Simpson over the Beta density.
double beta_cdf_numeric(unsigned a, unsigned b, double x) {
  const double log_norm = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b);
  const auto f = [&](double t) {
    if (t <= 0.0 || t >= 1.0) {
      if ((t <= 0.0 && a > 1) || (t >= 1.0 && b > 1)) return 0.0;
      return std::exp(log_norm);
    }
    return std::exp(log_norm + (a - 1.0) * std::log(t) + (b - 1.0) * std::log1p(-t));
  };
  const int steps = 2000;
  const double h = x / steps;
  double s = f(0.0) + f(x);
  for (int i = 1; i < steps; ++i) s += (i % 2 ? 4.0 : 2.0) * f(i * h);
  return s * h / 3.0;
}

// Wilson bounds as the roots of (phat - p)^2 = z^2 p (1 - p) / n.
Interval wilson_quadratic(double s, double n, double z) {
  const double ph = s / n, z2n = z * z / n;
  const double a = 1 + z2n, b = -(2 * ph + z2n), c = ph * ph;
  const double disc = std::sqrt(std::max(0.0, b * b - 4 * a * c));
  return {(-b - disc) / (2 * a), (-b + disc) / (2 * a)};
}

}  // namespace

TEST_CASE("beta cdf examples") {
  CHECK(beta_cdf_int({1, 2}, 0.5) == doctest::Approx(0.75));
  CHECK(beta_cdf_int({2, 2}, 0.5) == doctest::Approx(0.5));
  for (double x : {0.0, 0.1, 0.37, 0.9, 1.0}) CHECK(beta_cdf_int({1, 1}, x) == doctest::Approx(x));
  CHECK(beta_cdf_int({3, 7}, 0.0) == 0.0);
  CHECK(beta_cdf_int({3, 7}, 1.0) == doctest::Approx(1.0));
  CHECK_THROWS_AS(beta_cdf_int({0, 1}, 0.5), ParameterError);
  CHECK_THROWS_AS(beta_cdf_int({1, 1}, 1.5), ParameterError);
}

TEST_CASE("beta cdf agrees with numerical integration") {
  for (unsigned a = 1; a <= 6; ++a)
    for (unsigned b = 1; b <= 6; ++b)
      for (double x = 0.05; x < 1.0; x += 0.1)
        CHECK(beta_cdf_int({a, b}, x) == doctest::Approx(beta_cdf_numeric(a, b, x)).epsilon(1e-7));
}

TEST_CASE("beta cdf is monotone") {
  double prev = 0.0;
  for (int i = 0; i <= 1000; ++i) {
    const double f = beta_cdf_int({4, 9}, i / 1000.0);
    CHECK(f >= prev - 1e-15);
    prev = f;
  }
}

TEST_CASE("beta stochastic dominance") {
  // Beta(beta, gamma - beta) dominates Beta(alpha, gamma - alpha) for alpha <= beta
  for (unsigned gamma = 2; gamma <= 12; ++gamma)
    for (unsigned alpha = 1; alpha < gamma; ++alpha)
      for (unsigned beta = alpha; beta < gamma; ++beta)
        for (int i = 0; i <= 1000; ++i) {
          const double x = i / 1000.0;
          REQUIRE(beta_cdf_int({beta, gamma - beta}, x) <=
                  beta_cdf_int({alpha, gamma - alpha}, x) + 1e-12);
        }
  // F_{1,a} <= F_{1,b} for a <= b
  for (unsigned a = 1; a <= 20; ++a)
    for (unsigned b = a; b <= 20; ++b)
      for (int i = 0; i <= 1000; ++i) {
        const double x = i / 1000.0;
        REQUIRE(beta_cdf_int({1, a}, x) <= beta_cdf_int({1, b}, x) + 1e-12);
        REQUIRE(beta_cdf_int({1, a}, x) == doctest::Approx(1.0 - std::pow(1.0 - x, a)));
      }
}

TEST_CASE("beta concentration") {
  for (unsigned k = 3; k <= 50; ++k) {
    const double d = 1.0 / std::sqrt(static_cast<double>(k));
    for (unsigned ell = 1; ell < k; ++ell) {
      const double mean = static_cast<double>(k - ell) / k;
      const double hi = std::min(1.0, mean + d), lo = std::max(0.0, mean - d);
      const double mass = beta_cdf_int({k - ell, ell}, hi) - beta_cdf_int({k - ell, ell}, lo);
      CHECK(mass >= 0.75);
    }
  }
}

TEST_CASE("ks statistic examples") {
  const auto uniform = [](double x) { return std::clamp(x, 0.0, 1.0); };
  const std::vector<double> two{0.25, 0.75};
  CHECK(ks_statistic(two, uniform) == doctest::Approx(0.25));

  std::vector<double> q;
  for (int i = 1; i <= 50; ++i) q.push_back(i / 51.0);
  CHECK(ks_statistic(q, uniform) <= 1.0 / 51.0 + 1e-12);

  const std::vector<double> zeros(100, 0.0);
  CHECK(ks_statistic(zeros, uniform) == doctest::Approx(1.0));
  CHECK_THROWS_AS(ks_statistic(std::vector<double>{}, uniform), ParameterError);
  CHECK(ks_critical_value(10000) == doctest::Approx(0.01628));
}

TEST_CASE("wilson interval") {
  const Interval mid = wilson_interval(50, 100);
  CHECK(mid.lo == doctest::Approx(0.4038).epsilon(1e-3));
  CHECK(mid.hi == doctest::Approx(0.5962).epsilon(1e-3));
  CHECK(wilson_interval(0, 30).lo == 0.0);
  CHECK(wilson_interval(30, 30).hi == doctest::Approx(1.0));
  CHECK_THROWS_AS(wilson_interval(0, 0), ParameterError);
  CHECK_THROWS_AS(wilson_interval(5, 4), ParameterError);

  for (std::size_t n : {1u, 7u, 100u, 1000u})
    for (std::size_t s = 0; s <= n; s += 1 + n / 13) {
      const Interval a = wilson_interval(s, n, 2.5);
      const Interval b = wilson_quadratic(static_cast<double>(s), static_cast<double>(n), 2.5);
      CHECK(a.lo == doctest::Approx(b.lo).epsilon(1e-9));
      CHECK(a.hi == doctest::Approx(b.hi).epsilon(1e-9));
      const double ph = static_cast<double>(s) / n;
      CHECK(a.lo <= ph + 1e-12);
      CHECK(ph <= a.hi + 1e-12);
      CHECK(a.lo >= 0.0);
      CHECK(a.hi <= 1.0);
    }
}

TEST_CASE("uniform spacings") {
  Rng rng(5);
  CHECK(uniform_spacings(1, rng) == std::vector<double>{1.0});

  const std::size_t k = 5, N = 4000;
  std::vector<double> first, scaled_min;
  for (std::size_t i = 0; i < N; ++i) {
    const auto s = uniform_spacings(k, rng);
    double sum = 0.0;
    for (double x : s) sum += x;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    first.push_back(s[0]);
    scaled_min.push_back(2.0 * std::min(s[1], s[3]));
  }
  std::sort(first.begin(), first.end());
  std::sort(scaled_min.begin(), scaled_min.end());
  const auto beta14 = [](double x) { return beta_cdf_int({1, 4}, std::clamp(x, 0.0, 1.0)); };
  CHECK(ks_statistic(first, beta14) < ks_critical_value(N));
  CHECK(ks_statistic(scaled_min, beta14) < ks_critical_value(N));
}

TEST_CASE("chi-square") {
  // df = 2: the survival function is exp(-x / 2)
  const std::vector<std::size_t> obs{30, 50, 20};
  const std::vector<double> probs{0.25, 0.5, 0.25};
  const auto r = chi_square_gof(obs, probs);
  CHECK(r.statistic == doctest::Approx(2.0));
  CHECK(r.degrees_of_freedom == 2);
  CHECK(r.p_value == doctest::Approx(std::exp(-1.0)));
  CHECK(chi_square_critical(2, 0.01) == doctest::Approx(-2.0 * std::log(0.01)));
  CHECK_THROWS_AS(chi_square_gof(std::vector<std::size_t>{1}, std::vector<double>{1.0}), ParameterError);
}
