#include "lazyrag/stats.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include <boost/math/distributions/students_t.hpp>

namespace lazyrag {

double sample_mean(const std::vector<double>& xs) {
  if (xs.empty()) throw std::invalid_argument("mean of an empty sample");
  double sum = 0.0;
  for (double x : xs) sum += x;
  return sum / static_cast<double>(xs.size());
}

double sample_variance(const std::vector<double>& xs) {
  if (xs.size() < 2) return 0.0;
  const double mean = sample_mean(xs);
  double acc = 0.0;
  for (double x : xs) acc += (x - mean) * (x - mean);
  return acc / static_cast<double>(xs.size() - 1);
}

WelchComparison welch_compare(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() < 2 || b.size() < 2) {
    throw std::invalid_argument("welch comparison needs at least two values per group");
  }
  WelchComparison r;
  r.n_a = a.size();
  r.n_b = b.size();
  r.mean_a = sample_mean(a);
  r.mean_b = sample_mean(b);
  r.gap = r.mean_b - r.mean_a;

  const double na = static_cast<double>(r.n_a);
  const double nb = static_cast<double>(r.n_b);
  const double va = sample_variance(a);
  const double vb = sample_variance(b);
  const double se_sq = va / na + vb / nb;
  const double inf = std::numeric_limits<double>::infinity();

  const double pooled_var =
      ((na - 1.0) * va + (nb - 1.0) * vb) / (na + nb - 2.0);
  if (pooled_var > 0.0) {
    r.cohens_d = r.gap / std::sqrt(pooled_var);
  } else {
    r.cohens_d = r.gap == 0.0 ? 0.0 : (r.gap > 0.0 ? inf : -inf);
  }

  if (se_sq <= 0.0) {
    // Both groups are constant: the gap is exact, there is nothing to
    // estimate. Identical means are maximally unsurprising (p = 1), any
    // difference is unambiguous (p = 0).
    r.df = na + nb - 2.0;
    r.t_statistic = r.gap == 0.0 ? 0.0 : (r.gap > 0.0 ? inf : -inf);
    r.p_value = r.gap == 0.0 ? 1.0 : 0.0;
    r.ci95_low = r.gap;
    r.ci95_high = r.gap;
    return r;
  }

  const double se = std::sqrt(se_sq);
  r.t_statistic = r.gap / se;
  const double num = se_sq * se_sq;
  const double den = (va / na) * (va / na) / (na - 1.0) +
                     (vb / nb) * (vb / nb) / (nb - 1.0);
  r.df = num / den;

  const boost::math::students_t dist(r.df);
  r.p_value = 2.0 * boost::math::cdf(dist, -std::abs(r.t_statistic));
  const double t_crit = boost::math::quantile(dist, 0.975);
  r.ci95_low = r.gap - t_crit * se;
  r.ci95_high = r.gap + t_crit * se;
  return r;
}

}  // namespace lazyrag
