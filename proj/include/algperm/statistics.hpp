#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "algperm/errors.hpp"

namespace algperm {

/// Pairwise (cascade) summation; the split points depend only on the length,
/// so the result is reproducible bit for bit.
inline double pairwise_sum(std::span<const double> values) {
  if (values.size() <= 8) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

struct SampleSummary {
  std::size_t count = 0;
  double mean = 0.0;
  double variance = 0.0;  // unbiased
  double stderr_mean = 0.0;
};

inline SampleSummary summarize(std::span<const double> xs) {
  detail::require(xs.size() >= 2, "summarize: need at least two samples");
  const double n = static_cast<double>(xs.size());
  SampleSummary s;
  s.count = xs.size();
  s.mean = pairwise_sum(xs) / n;
  std::vector<double> dev(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) dev[i] = (xs[i] - s.mean) * (xs[i] - s.mean);
  s.variance = pairwise_sum(dev) / (n - 1);
  s.stderr_mean = std::sqrt(s.variance / n);
  return s;
}

/// m2/m1² with m_k the k-th sample moment, and its leave-one-out jackknife
/// standard error.
struct RatioEstimate {
  double value = 0.0;
  double stderr_value = 0.0;
};

inline RatioEstimate critical_ratio(std::span<const double> xs) {
  detail::require(xs.size() >= 2, "critical_ratio: need at least two samples");
  const std::size_t count = xs.size();
  const double n = static_cast<double>(count);
  std::vector<double> sq(count);
  for (std::size_t i = 0; i < count; ++i) sq[i] = xs[i] * xs[i];
  const double s1 = pairwise_sum(xs);
  const double s2 = pairwise_sum(sq);
  RatioEstimate out;
  const double m1 = s1 / n;
  out.value = m1 != 0.0 ? (s2 / n) / (m1 * m1) : 0.0;
  std::vector<double> loo(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double a = (s1 - xs[i]) / (n - 1);
    const double b = (s2 - sq[i]) / (n - 1);
    loo[i] = a != 0.0 ? b / (a * a) : 0.0;
  }
  const double loo_mean = pairwise_sum(loo) / n;
  for (double& v : loo) v = (v - loo_mean) * (v - loo_mean);
  out.stderr_value = std::sqrt((n - 1) / n * pairwise_sum(loo));
  return out;
}

/// Mean of x_i² with its standard error.
inline SampleSummary second_moment(std::span<const double> xs) {
  std::vector<double> sq(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) sq[i] = xs[i] * xs[i];
  return summarize(sq);
}

/// |estimate − target| measured in standard errors; infinite when the SE is
/// zero and the values differ.
inline double standard_errors_from(double estimate, double stderr_value, double target) {
  const double diff = std::abs(estimate - target);
  if (stderr_value == 0.0) return diff <= 1e-12 * std::max(1.0, std::abs(target)) ? 0.0 : INFINITY;
  return diff / stderr_value;
}

}  // namespace algperm
