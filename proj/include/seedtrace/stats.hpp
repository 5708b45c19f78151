#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "seedtrace/rng.hpp"

namespace seedtrace {

/// Beta(a, b) with positive integer parameters.
struct BetaIntParams {
  unsigned a = 1;
  unsigned b = 1;
};

/// Closed-form CDF through the binomial tail identity
///   F_{a,b}(x) = sum_{j=a}^{a+b-1} C(a+b-1, j) x^j (1-x)^(a+b-1-j).
/// Throws ParameterError for a or b < 1 or x outside [0, 1].
double beta_cdf_int(BetaIntParams p, double x);

/// sup |F_n - F| over a sorted sample, taking both one-sided gaps at each
/// order statistic. Throws ParameterError on an empty sample.
double ks_statistic(std::span<const double> sorted_sample,
                    const std::function<double(double)>& cdf);

/// Asymptotic one-sample KS critical value c / sqrt(N); c = 1.628 for a
/// 1% level. Approximate for small N.
inline constexpr double kKsC01 = 1.628;
double ks_critical_value(std::size_t sample_size, double c = kKsC01);

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
};

/// Wilson score interval for a binomial proportion. Throws ParameterError
/// when trials == 0 or successes > trials.
Interval wilson_interval(std::size_t successes, std::size_t trials, double z = 1.96);

/// k uniform spacings (Dirichlet(1, ..., 1)) as normalized standard
/// exponentials.
std::vector<double> uniform_spacings(std::size_t k, Rng& rng);

struct ChiSquareResult {
  double statistic = 0.0;
  std::size_t degrees_of_freedom = 0;
  double p_value = 1.0;
};

/// Pearson goodness of fit of observed counts against cell probabilities
/// (which must sum to 1).
ChiSquareResult chi_square_gof(std::span<const std::size_t> observed,
                               std::span<const double> probabilities);

/// Upper `level` quantile of chi-square with `df` degrees of freedom.
double chi_square_critical(std::size_t df, double level);

}  // namespace seedtrace
