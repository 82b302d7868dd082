#include "ganlab/neldermead.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace ganlab {

NelderMeadResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f,
                             const Eigen::VectorXd& x0, const NelderMeadOptions& opts) {
  const int d = static_cast<int>(x0.size());
  const double alpha = 1.0, gamma = 2.0, rho = 0.5, sigma = 0.5;

  NelderMeadResult result;
  result.evals = 0;
  double best_so_far = std::numeric_limits<double>::infinity();
  auto eval = [&](const Eigen::VectorXd& x) {
    double v = f(x);
    ++result.evals;
    best_so_far = std::min(best_so_far, v);
    result.trace.push_back(best_so_far);
    return v;
  };

  std::vector<Eigen::VectorXd> xs(d + 1, x0);
  std::vector<double> fs(d + 1);
  for (int i = 1; i <= d; ++i) xs[i](i - 1) += opts.initial_step;
  for (int i = 0; i <= d; ++i) fs[i] = eval(xs[i]);

  std::vector<int> order(d + 1);
  while (result.evals < opts.max_evals) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return fs[a] < fs[b]; });
    const int lo = order[0], hi = order[d], second_hi = order[d - 1];

    double spread = fs[hi] - fs[lo];
    double size = 0.0;
    for (int i = 0; i <= d; ++i) size = std::max(size, (xs[i] - xs[lo]).norm());
    if (spread < opts.f_tol && size < opts.x_tol) break;

    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(d);
    for (int i = 0; i <= d; ++i)
      if (i != hi) centroid += xs[i];
    centroid /= d;

    Eigen::VectorXd reflected = centroid + alpha * (centroid - xs[hi]);
    double f_ref = eval(reflected);
    if (f_ref < fs[lo]) {
      Eigen::VectorXd expanded = centroid + gamma * (reflected - centroid);
      double f_exp = eval(expanded);
      if (f_exp < f_ref) {
        xs[hi] = expanded;
        fs[hi] = f_exp;
      } else {
        xs[hi] = reflected;
        fs[hi] = f_ref;
      }
    } else if (f_ref < fs[second_hi]) {
      xs[hi] = reflected;
      fs[hi] = f_ref;
    } else {
      Eigen::VectorXd contracted = centroid + rho * (xs[hi] - centroid);
      double f_con = eval(contracted);
      if (f_con < fs[hi]) {
        xs[hi] = contracted;
        fs[hi] = f_con;
      } else {
        for (int i = 0; i <= d; ++i) {
          if (i == lo) continue;
          xs[i] = xs[lo] + sigma * (xs[i] - xs[lo]);
          fs[i] = eval(xs[i]);
          if (result.evals >= opts.max_evals) break;
        }
      }
    }
  }

  int best = 0;
  for (int i = 1; i <= d; ++i)
    if (fs[i] < fs[best]) best = i;
  result.x = xs[best];
  result.fval = fs[best];
  return result;
}

}  // namespace ganlab
