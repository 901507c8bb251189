#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <deque>
#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace boxoffice::classify {

/// Objective returning f(x) and writing the gradient into `grad`.
using Objective = std::function<double(const Eigen::VectorXd& x, Eigen::VectorXd& grad)>;

struct LbfgsOptions {
  int max_iter = 150;
  int history = 10;
  double gradient_tolerance = 1e-6;  // on the max-norm of the gradient
  int max_line_search = 40;
};

struct LbfgsResult {
  Eigen::VectorXd x;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Limited-memory BFGS with a backtracking Armijo line search. Curvature
/// pairs with s'y <= 0 are skipped, which keeps the implicit Hessian positive.
inline LbfgsResult lbfgs_minimize(const Objective& f, Eigen::VectorXd x, const LbfgsOptions& opt = {}) {
  const auto n = x.size();
  Eigen::VectorXd grad(n);
  double value = f(x, grad);
  std::deque<Eigen::VectorXd> s_hist;
  std::deque<Eigen::VectorXd> y_hist;
  std::deque<double> rho_hist;

  LbfgsResult result;
  Eigen::VectorXd x_new(n);
  Eigen::VectorXd grad_new(n);
  for (int iter = 0; iter < opt.max_iter; ++iter) {
    if (grad.lpNorm<Eigen::Infinity>() <= opt.gradient_tolerance) {
      result.converged = true;
      break;
    }
    // Two-loop recursion.
    Eigen::VectorXd q = grad;
    std::vector<double> alpha(s_hist.size());
    for (std::size_t i = s_hist.size(); i-- > 0;) {
      alpha[i] = rho_hist[i] * s_hist[i].dot(q);
      q -= alpha[i] * y_hist[i];
    }
    if (!s_hist.empty()) {
      q *= s_hist.back().dot(y_hist.back()) / y_hist.back().squaredNorm();
    } else {
      q /= std::max(1.0, grad.norm());
    }
    for (std::size_t i = 0; i < s_hist.size(); ++i) {
      const double beta = rho_hist[i] * y_hist[i].dot(q);
      q += (alpha[i] - beta) * s_hist[i];
    }
    Eigen::VectorXd direction = -q;
    double slope = grad.dot(direction);
    if (!(slope < 0.0)) {
      // Not a descent direction: restart from steepest descent.
      s_hist.clear();
      y_hist.clear();
      rho_hist.clear();
      direction = -grad / std::max(1.0, grad.norm());
      slope = grad.dot(direction);
    }

    double step = 1.0;
    bool accepted = false;
    double value_new = value;
    for (int ls = 0; ls < opt.max_line_search; ++ls) {
      x_new = x + step * direction;
      value_new = f(x_new, grad_new);
      if (std::isfinite(value_new) && value_new <= value + 1e-4 * step * slope) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    result.iterations = iter + 1;
    if (!accepted) break;

    Eigen::VectorXd s = x_new - x;
    Eigen::VectorXd y = grad_new - grad;
    const double sy = s.dot(y);
    if (sy > 1e-12 * y.squaredNorm()) {
      if (static_cast<int>(s_hist.size()) == opt.history) {
        s_hist.pop_front();
        y_hist.pop_front();
        rho_hist.pop_front();
      }
      s_hist.push_back(std::move(s));
      y_hist.push_back(std::move(y));
      rho_hist.push_back(1.0 / sy);
    }
    x.swap(x_new);
    grad.swap(grad_new);
    value = value_new;
  }
  if (grad.lpNorm<Eigen::Infinity>() <= opt.gradient_tolerance) result.converged = true;
  result.x = std::move(x);
  result.value = value;
  return result;
}

}  // namespace boxoffice::classify
