#pragma once

#include <Eigen/Core>
#include <functional>
#include <vector>

namespace ganlab {

struct NelderMeadOptions {
  int max_evals = 400;
  double initial_step = 0.5;
  double f_tol = 1e-12;     // stop when simplex spread falls below this
  double x_tol = 1e-10;
};

struct NelderMeadResult {
  Eigen::VectorXd x;
  double fval;
  int evals;
  std::vector<double> trace;  // best objective value after each evaluation
};

/// Deterministic Nelder-Mead simplex search for nonsmooth objectives.
/// The trace records the running best value, so it is nonincreasing.
NelderMeadResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f,
                             const Eigen::VectorXd& x0, const NelderMeadOptions& opts);

}  // namespace ganlab
