#pragma once

#include <cstddef>
#include <vector>

namespace lazyrag {

double sample_mean(const std::vector<double>& xs);

// Bessel-corrected (n-1) variance; 0 for fewer than two values.
double sample_variance(const std::vector<double>& xs);

// Welch two-sample comparison of groups a and b. gap is mean_b - mean_a;
// the t statistic and two-sided p-value use Welch-Satterthwaite degrees
// of freedom, Cohen's d uses the pooled standard deviation, and the 95%
// confidence interval covers the gap. Each group needs at least two
// values. Degenerate zero-variance inputs keep every field finite or
// signed-infinite rather than NaN.
struct WelchComparison {
  std::size_t n_a = 0;
  std::size_t n_b = 0;
  double mean_a = 0.0;
  double mean_b = 0.0;
  double gap = 0.0;
  double t_statistic = 0.0;
  double df = 0.0;
  double p_value = 1.0;
  double cohens_d = 0.0;
  double ci95_low = 0.0;
  double ci95_high = 0.0;
};

WelchComparison welch_compare(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace lazyrag
