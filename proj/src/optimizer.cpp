#include "vcsc/optimizer.hpp"

#include <cmath>
#include <limits>

namespace vcsc::optim {

BfgsResult minimize_bfgs(const Objective& f, const Eigen::VectorXd& x0, const BfgsOptions& options) {
  const Eigen::Index n = x0.size();
  BfgsResult r;
  r.x = x0;
  r.gradient = Eigen::VectorXd::Zero(n);
  r.value = f(r.x, &r.gradient);
  if (!std::isfinite(r.value)) {
    r.message = "objective not finite at start";
    return r;
  }

  Eigen::MatrixXd h_inv = Eigen::MatrixXd::Identity(n, n);
  bool fresh_hessian = true;
  double last_improvement = std::numeric_limits<double>::infinity();
  Eigen::VectorXd x_new(n), g_new(n);

  for (r.iterations = 0; r.iterations < options.max_iterations; ++r.iterations) {
    const double g_inf = r.gradient.lpNorm<Eigen::Infinity>();
    const bool small_step = r.iterations == 0 || last_improvement < options.relative_tolerance;
    if (g_inf < options.gradient_tolerance && small_step) {
      r.converged = true;
      r.message = "converged";
      return r;
    }

    Eigen::VectorXd dir = -(h_inv * r.gradient);
    double slope = r.gradient.dot(dir);
    if (!(slope < 0.0)) {
      h_inv.setIdentity();
      fresh_hessian = true;
      dir = -r.gradient;
      slope = -r.gradient.squaredNorm();
    }

    double step = 1.0;
    double f_new = std::numeric_limits<double>::infinity();
    bool accepted = false;
    for (int k = 0; k < options.max_backtracks; ++k) {
      x_new = r.x + step * dir;
      f_new = f(x_new, &g_new);
      if (std::isfinite(f_new) && f_new <= r.value + options.armijo * step * slope) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }

    if (!accepted) {
      if (!fresh_hessian) {
        h_inv.setIdentity();
        fresh_hessian = true;
        continue;
      }
      if (g_inf < options.gradient_tolerance) {
        r.converged = true;
        r.message = "converged (no further decrease possible)";
      } else {
        r.message = "line search failed";
      }
      return r;
    }

    const Eigen::VectorXd s = x_new - r.x;
    const Eigen::VectorXd y = g_new - r.gradient;
    last_improvement = (r.value - f_new) / std::max(1.0, std::abs(f_new));
    r.x = x_new;
    r.value = f_new;
    r.gradient = g_new;

    const double sy = s.dot(y);
    if (sy > 1e-12 * s.norm() * y.norm()) {
      if (fresh_hessian) {
        h_inv *= sy / y.squaredNorm();
        fresh_hessian = false;
      }
      const double rho = 1.0 / sy;
      const Eigen::VectorXd hy = h_inv * y;
      // H+ = (I - rho s y^T) H (I - rho y s^T) + rho s s^T, expanded.
      h_inv += (rho * rho * y.dot(hy) + rho) * (s * s.transpose()) - rho * (hy * s.transpose() + s * hy.transpose());
    }
  }
  r.message = "iteration limit reached";
  return r;
}

}  // namespace vcsc::optim
