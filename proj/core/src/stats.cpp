#include "ganlab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ganlab/error.hpp"

namespace ganlab {

namespace {
constexpr double kInvSqrt2 = 0.7071067811865475244;
constexpr double kInvSqrt2Pi = 0.3989422804014326779;
}  // namespace

double normal_pdf(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

double normal_cdf(double x) { return 0.5 * std::erfc(-x * kInvSqrt2); }

double normal_upper_partial_moment(double t) { return normal_pdf(t); }

namespace {

// Acklam-style rational approximation, good to ~1e-9 relative.
double quantile_guess(double p) {
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425;
  if (p < plow) {
    double q = std::sqrt(-2 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
  }
  if (p > 1 - plow) {
    double q = std::sqrt(-2 * std::log(1 - p));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
  }
  double q = p - 0.5;
  double r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1);
}

}  // namespace

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw Error(ErrorCode::BadValue, "normal_quantile requires p in (0,1)");
  }
  // Work in the lower tail where erfc keeps full relative accuracy.
  if (p > 0.5) return -normal_quantile(1.0 - p);
  double x = quantile_guess(p);
  for (int i = 0; i < 3; ++i) {
    double err = normal_cdf(x) - p;
    double dens = normal_pdf(x);
    if (dens <= std::numeric_limits<double>::min()) break;
    x -= err / dens;
  }
  return x;
}

double median(std::vector<double> values) {
  if (values.empty()) throw Error(ErrorCode::BadValue, "median of empty vector");
  std::sort(values.begin(), values.end());
  size_t n = values.size();
  if (n % 2 == 1) return values[n / 2];
  return 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

namespace {
double quantile_sorted(const std::vector<double>& v, double q) {
  double pos = q * (static_cast<double>(v.size()) - 1);
  size_t lo = static_cast<size_t>(pos);
  size_t hi = std::min(lo + 1, v.size() - 1);
  double frac = pos - static_cast<double>(lo);
  return v[lo] * (1 - frac) + v[hi] * frac;
}
}  // namespace

double iqr(std::vector<double> values) {
  if (values.empty()) throw Error(ErrorCode::BadValue, "iqr of empty vector");
  std::sort(values.begin(), values.end());
  return quantile_sorted(values, 0.75) - quantile_sorted(values, 0.25);
}

double stable_sum(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  double sum = 0.0, comp = 0.0;
  for (double v : values) {
    double y = v - comp;
    double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return sum;
}

}  // namespace ganlab
