#include "seedtrace/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <boost/math/distributions/chi_squared.hpp>

#include "seedtrace/errors.hpp"

namespace seedtrace {

double beta_cdf_int(BetaIntParams p, double x) {
  if (p.a < 1 || p.b < 1) throw ParameterError("beta parameters must be positive integers");
  if (!(x >= 0.0 && x <= 1.0)) throw ParameterError("beta_cdf_int: x must lie in [0, 1]");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const unsigned m = p.a + p.b - 1;
  const double log_x = std::log(x);
  const double log_1mx = std::log1p(-x);
  const double log_m_fact = std::lgamma(m + 1.0);
  double total = 0.0;
  for (unsigned j = p.a; j <= m; ++j) {
    const double log_term = log_m_fact - std::lgamma(j + 1.0) - std::lgamma(m - j + 1.0) +
                            j * log_x + (m - j) * log_1mx;
    total += std::exp(log_term);
  }
  return std::clamp(total, 0.0, 1.0);
}

double ks_statistic(std::span<const double> sorted_sample,
                    const std::function<double(double)>& cdf) {
  if (sorted_sample.empty()) throw ParameterError("ks_statistic: empty sample");
  const double n = static_cast<double>(sorted_sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted_sample.size(); ++i) {
    const double f = cdf(sorted_sample[i]);
    d = std::max({d, (static_cast<double>(i) + 1.0) / n - f, f - static_cast<double>(i) / n});
  }
  return d;
}

double ks_critical_value(std::size_t sample_size, double c) {
  return c / std::sqrt(static_cast<double>(sample_size));
}

Interval wilson_interval(std::size_t successes, std::size_t trials, double z) {
  if (trials == 0) throw ParameterError("wilson_interval: trials must be positive");
  if (successes > trials) throw ParameterError("wilson_interval: successes exceed trials");
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half = (z / denom) * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
  Interval out{std::max(0.0, center - half), std::min(1.0, center + half)};
  // The closed form is exact at the boundaries; keep rounding from leaking.
  if (successes == 0) out.lo = 0.0;
  if (successes == trials) out.hi = 1.0;
  return out;
}

std::vector<double> uniform_spacings(std::size_t k, Rng& rng) {
  if (k == 0) return {};
  std::vector<double> e(k);
  for (auto& x : e) x = rng.exponential();
  const double sum = std::accumulate(e.begin(), e.end(), 0.0);
  for (auto& x : e) x /= sum;
  return e;
}

ChiSquareResult chi_square_gof(std::span<const std::size_t> observed,
                               std::span<const double> probabilities) {
  if (observed.size() != probabilities.size() || observed.size() < 2) {
    throw ParameterError("chi_square_gof: need at least two matching cells");
  }
  const double total =
      static_cast<double>(std::accumulate(observed.begin(), observed.end(), std::size_t{0}));
  if (total == 0.0) throw ParameterError("chi_square_gof: no observations");
  ChiSquareResult r;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    const double expected = total * probabilities[i];
    if (expected <= 0.0) throw ParameterError("chi_square_gof: cell with zero probability");
    const double diff = static_cast<double>(observed[i]) - expected;
    r.statistic += diff * diff / expected;
  }
  r.degrees_of_freedom = observed.size() - 1;
  const boost::math::chi_squared dist(static_cast<double>(r.degrees_of_freedom));
  r.p_value = boost::math::cdf(boost::math::complement(dist, r.statistic));
  return r;
}

double chi_square_critical(std::size_t df, double level) {
  if (df == 0 || !(level > 0.0 && level < 1.0)) {
    throw ParameterError("chi_square_critical: need df >= 1 and level in (0, 1)");
  }
  const boost::math::chi_squared dist(static_cast<double>(df));
  return boost::math::quantile(boost::math::complement(dist, level));
}

}  // namespace seedtrace
