#pragma once

#include <vector>

namespace ganlab {

/// Standard normal density.
double normal_pdf(double x);

/// Standard normal CDF via erfc; absolute error well below 1e-12.
double normal_cdf(double x);

/// Inverse standard normal CDF, accurate in both tails (rational
/// initial guess refined by Newton steps on the erfc-based CDF).
double normal_quantile(double p);

/// E[Z 1{Z >= t}] for Z ~ N(0,1); equals phi(t).
double normal_upper_partial_moment(double t);

/// Median of a copy of the values (n/2 midpoint convention for even n).
double median(std::vector<double> values);

/// Interquartile range (linear-interpolation quartiles).
double iqr(std::vector<double> values);

/// Sum in a fixed order independent of input permutation: values are
/// sorted before compensated (Kahan) accumulation.
double stable_sum(std::vector<double> values);

}  // namespace ganlab
