#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "boxoffice/error.hpp"
#include "boxoffice/stats/descriptive.hpp"

namespace boxoffice::stats {

/// Survival function of the Kolmogorov distribution, P(K > lambda).
/// Series are summed until a term drops below 1e-12.
inline double kolmogorov_survival(double lambda) {
  constexpr double kTol = 1e-12;
  if (!(lambda > 0.0)) return 1.0;
  if (lambda < 1.0) {
    // Jacobi-transformed form for small lambda.
    const double pi2 = std::numbers::pi * std::numbers::pi;
    double cdf = 0.0;
    for (int k = 1; k < 1000; ++k) {
      const double odd = 2.0 * k - 1.0;
      const double term = std::exp(-odd * odd * pi2 / (8.0 * lambda * lambda));
      cdf += term;
      if (term < kTol) break;
    }
    cdf *= std::sqrt(2.0 * std::numbers::pi) / lambda;
    return std::clamp(1.0 - cdf, 0.0, 1.0);
  }
  double sum = 0.0;
  double sign = 1.0;
  for (int k = 1; k < 1000; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += sign * term;
    if (term < kTol) break;
    sign = -sign;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

/// Largest absolute gap between the two empirical CDFs.
inline double ks_statistic(std::span<const double> a, std::span<const double> b) {
  std::vector<double> sa(a.begin(), a.end());
  std::vector<double> sb(b.begin(), b.end());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  const double na = static_cast<double>(sa.size());
  const double nb = static_cast<double>(sb.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < sa.size() && j < sb.size()) {
    const double x = std::min(sa[i], sb[j]);
    while (i < sa.size() && sa[i] == x) ++i;
    while (j < sb.size() && sb[j] == x) ++j;
    d = std::max(d, std::fabs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

/// Two-sample Kolmogorov-Smirnov test with the asymptotic p-value at
/// effective size na*nb/(na+nb).
inline TestResult ks_two_sample(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw DomainError("ks_two_sample: empty sample");
  const double d = ks_statistic(a, b);
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  const double effective = na * nb / (na + nb);
  return {d, kolmogorov_survival(std::sqrt(effective) * d)};
}

/// Symmetric matrix of pairwise KS results; the diagonal is exactly 1 (p) and 0 (statistic).
struct PValueMatrix {
  std::vector<std::string> labels;
  std::vector<std::vector<double>> p;
  std::vector<std::vector<double>> statistic;
};

inline PValueMatrix pairwise_ks_matrix(const std::vector<std::pair<std::string, std::vector<double>>>& groups) {
  if (groups.size() < 2) throw DomainError("pairwise_ks_matrix: need at least two groups");
  for (const auto& [label, values] : groups) {
    if (values.empty()) throw DomainError("pairwise_ks_matrix: group '" + label + "' is empty");
  }
  const std::size_t n = groups.size();
  PValueMatrix out;
  out.p.assign(n, std::vector<double>(n, 1.0));
  out.statistic.assign(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    out.labels.push_back(groups[i].first);
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto r = ks_two_sample(groups[i].second, groups[j].second);
      out.p[i][j] = out.p[j][i] = r.p_value;
      out.statistic[i][j] = out.statistic[j][i] = r.statistic;
    }
  }
  return out;
}

inline nlohmann::json to_json(const TestResult& r) {
  return {{"statistic", r.statistic}, {"p_value", r.p_value}};
}

inline nlohmann::json to_json(const PValueMatrix& m) {
  return {{"labels", m.labels}, {"p_value", m.p}, {"statistic", m.statistic}};
}

}  // namespace boxoffice::stats
