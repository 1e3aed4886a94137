#pragma once

#include <functional>
#include <string>

#include <Eigen/Dense>

namespace vcsc::optim {

/// Returns f(x); writes the gradient into `grad` when it is non-null.
/// A non-finite value marks x as infeasible and makes the line search back off.
using Objective = std::function<double(const Eigen::VectorXd& x, Eigen::VectorXd* grad)>;

struct BfgsOptions {
  double gradient_tolerance = 1e-6;   // infinity norm
  double relative_tolerance = 1e-10;  // |f_prev - f| / max(1, |f|)
  int max_iterations = 10000;
  double armijo = 1e-4;
  int max_backtracks = 60;
};

struct BfgsResult {
  Eigen::VectorXd x;
  double value = 0.0;
  Eigen::VectorXd gradient;
  int iterations = 0;
  bool converged = false;
  std::string message;
};

/// Dense inverse-Hessian BFGS with Armijo backtracking. Converged means the
/// gradient infinity norm is below tolerance and the last accepted step (if
/// any) improved f by less than the relative tolerance.
BfgsResult minimize_bfgs(const Objective& f, const Eigen::VectorXd& x0, const BfgsOptions& options = {});

}  // namespace vcsc::optim
