#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>

namespace logheat::quadrature {

struct Result {
  double value = 0.0;
  double error_estimate = 0.0;
  int subdivisions = 0;
};

namespace detail {

// Gauss 7 / Kronrod 15 nodes and weights on [-1, 1].
inline constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0};
inline constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
inline constexpr double kWg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

inline void gk15(const std::function<double(double)>& f, double a, double b,
                 double& kronrod, double& err) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double fv[15];
  for (int j = 0; j < 7; ++j) {
    fv[j] = f(c - h * kXgk[j]);
    fv[14 - j] = f(c + h * kXgk[j]);
  }
  fv[7] = f(c);
  double resk = kWgk[7] * fv[7];
  double resg = kWg[3] * fv[7];
  for (int j = 0; j < 7; ++j) {
    resk += kWgk[j] * (fv[j] + fv[14 - j]);
    if (j % 2 == 1) {  // odd Kronrod indices are the Gauss-7 nodes
      resg += kWg[j / 2] * (fv[j] + fv[14 - j]);
    }
  }
  kronrod = resk * h;
  err = std::abs((resk - resg) * h);
}

inline double adapt(const std::function<double(double)>& f, double a, double b,
                    double tol, int depth, int max_depth, double* err_out, int* count) {
  double v, e;
  gk15(f, a, b, v, e);
  if (e <= tol || depth >= max_depth) {
    *err_out += e;
    return v;
  }
  const double m = 0.5 * (a + b);
  *count += 1;
  return adapt(f, a, m, 0.5 * tol, depth + 1, max_depth, err_out, count) +
         adapt(f, m, b, 0.5 * tol, depth + 1, max_depth, err_out, count);
}

}  // namespace detail

/// Adaptive Gauss-Kronrod (G7,K15) integration of f over [a, b] to an
/// absolute tolerance. Bisects panels whose Kronrod/Gauss discrepancy
/// exceeds the local budget.
inline Result integrate(const std::function<double(double)>& f, double a, double b,
                        double abs_tol = 1e-12, int max_depth = 40) {
  if (!(abs_tol > 0.0)) {
    throw std::invalid_argument("quadrature::integrate: abs_tol must be > 0");
  }
  Result r;
  if (a == b) return r;
  r.value = detail::adapt(f, a, b, abs_tol, 0, max_depth, &r.error_estimate, &r.subdivisions);
  return r;
}

}  // namespace logheat::quadrature
