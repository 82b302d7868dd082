#include "ganlab/assignment.hpp"

#include <limits>

#include "ganlab/error.hpp"
#include "ganlab/stats.hpp"

namespace ganlab {

Assignment solve_assignment(const Eigen::MatrixXd& cost) {
  const int n = static_cast<int>(cost.rows());
  if (cost.cols() != n || n == 0) {
    throw Error(ErrorCode::SizeMismatch, "assignment needs a nonempty square matrix");
  }
  const double inf = std::numeric_limits<double>::infinity();

  // 1-indexed with a dummy column 0; p[j] = row assigned to column j.
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), minv(n + 1);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  std::vector<char> used(n + 1);

  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::fill(minv.begin(), minv.end(), inf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      const double* row = cost.data() + (i0 - 1);  // column-major stride n
      double delta = inf;
      int j1 = 0;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        double cur = row[static_cast<std::ptrdiff_t>(j - 1) * n] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  Assignment out;
  out.col_of_row.assign(n, -1);
  std::vector<double> terms;
  terms.reserve(n);
  for (int j = 1; j <= n; ++j) {
    out.col_of_row[p[j] - 1] = j - 1;
    terms.push_back(cost(p[j] - 1, j - 1));
  }
  out.cost = stable_sum(std::move(terms));
  return out;
}

}  // namespace ganlab
