#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "json.hpp"

#include "boxoffice/error.hpp"
#include "boxoffice/stats/descriptive.hpp"

namespace boxoffice::stats {

/// Polynomial least-squares fit; coefficients[k] multiplies x^k.
struct RegressionFit {
  std::vector<double> coefficients;
  int degree = 1;
  double residual_sum_squares = 0.0;

  double intercept() const { return coefficients.front(); }
  double slope() const { return coefficients.at(1); }

  double operator()(double x) const {
    double y = 0.0;
    for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) y = y * x + *it;
    return y;
  }
};

inline RegressionFit ols_fit(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw DomainError("ols_fit: length mismatch");
  if (xs.size() < 2) throw DomainError("ols_fit: need at least two points");
  const double mx = mean(xs);
  const double my = mean(ys);
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (sxx == 0.0) throw SingularFitError("ols_fit: all x values are equal");
  const double slope = sxy / sxx;
  RegressionFit fit{{my - slope * mx, slope}, 1, 0.0};
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = ys[i] - fit(xs[i]);
    fit.residual_sum_squares += r * r;
  }
  return fit;
}

/// Least squares by column-pivoted Householder QR on a Vandermonde matrix of
/// standardised x; coefficients are mapped back to the raw x basis.
inline RegressionFit poly_fit(std::span<const double> xs, std::span<const double> ys, int degree) {
  if (xs.size() != ys.size()) throw DomainError("poly_fit: length mismatch");
  if (degree < 1) throw DomainError("poly_fit: degree must be at least 1");
  const auto n = xs.size();
  const auto terms = static_cast<std::size_t>(degree) + 1;
  if (n < terms) throw SingularFitError("poly_fit: fewer points than coefficients");

  const double mu = mean(xs);
  double var = 0.0;
  for (const double x : xs) var += (x - mu) * (x - mu);
  const double sigma = std::sqrt(var / static_cast<double>(n));
  if (sigma == 0.0) throw SingularFitError("poly_fit: all x values are equal");

  Eigen::MatrixXd vander(n, terms);
  Eigen::VectorXd rhs(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double z = (xs[i] - mu) / sigma;
    double power = 1.0;
    for (std::size_t k = 0; k < terms; ++k) {
      vander(i, k) = power;
      power *= z;
    }
    rhs(i) = ys[i];
  }
  const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(vander);
  if (static_cast<std::size_t>(qr.rank()) < terms) {
    throw SingularFitError("poly_fit: fewer distinct x values than coefficients");
  }
  const Eigen::VectorXd z_coef = qr.solve(rhs);

  RegressionFit fit;
  fit.degree = degree;
  fit.residual_sum_squares = (vander * z_coef - rhs).squaredNorm();

  // sum_k a_k ((x - mu)/sigma)^k expanded binomially into powers of x.
  fit.coefficients.assign(terms, 0.0);
  for (std::size_t k = 0; k < terms; ++k) {
    const double scaled = z_coef(static_cast<Eigen::Index>(k)) / std::pow(sigma, static_cast<double>(k));
    double binom = 1.0;
    for (std::size_t j = 0; j <= k; ++j) {
      fit.coefficients[j] += scaled * binom * std::pow(-mu, static_cast<double>(k - j));
      binom = binom * static_cast<double>(k - j) / static_cast<double>(j + 1);
    }
  }
  return fit;
}

inline nlohmann::json to_json(const RegressionFit& fit) {
  return {{"degree", fit.degree},
          {"coefficients", fit.coefficients},
          {"residual_sum_squares", fit.residual_sum_squares}};
}

}  // namespace boxoffice::stats
