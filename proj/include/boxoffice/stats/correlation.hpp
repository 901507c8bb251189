#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>

#include <boost/math/distributions/students_t.hpp>

#include "boxoffice/error.hpp"
#include "boxoffice/stats/descriptive.hpp"

namespace boxoffice::stats {

class UndefinedCorrelationError : public DomainError {
 public:
  using DomainError::DomainError;
};

inline double pearson(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw DomainError("pearson: length mismatch");
  if (xs.empty()) throw DomainError("pearson: empty input");
  const double mx = mean(xs);
  const double my = mean(ys);
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - mx;
    const double dy = ys[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) throw UndefinedCorrelationError("correlation undefined for a constant input");
  const double r = sxy / std::sqrt(sxx * syy);
  return std::clamp(r, -1.0, 1.0);
}

/// Two-sided p-value of a correlation coefficient under the t approximation.
inline double correlation_p_value(double r, std::size_t n) {
  if (n < 3) throw DomainError("correlation_p_value: need at least 3 observations");
  const double dof = static_cast<double>(n - 2);
  if (std::fabs(r) >= 1.0) return 0.0;
  const double t = r * std::sqrt(dof / ((1.0 - r) * (1.0 + r)));
  const boost::math::students_t_distribution<double> dist(dof);
  return std::clamp(2.0 * boost::math::cdf(boost::math::complement(dist, std::fabs(t))), 0.0, 1.0);
}

/// Spearman's rho: Pearson correlation of average ranks.
inline TestResult spearman(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw DomainError("spearman: length mismatch");
  if (xs.size() < 3) throw DomainError("spearman: need at least 3 observations");
  const auto rx = average_ranks(xs);
  const auto ry = average_ranks(ys);
  const double rho = pearson(rx, ry);
  return {rho, correlation_p_value(rho, xs.size())};
}

}  // namespace boxoffice::stats
