#pragma once

#include <cmath>
#include <functional>
#include <random>

// Test-only oracles, kept independent of the library code they check.
namespace testutil {

/// Fixed-step classical RK4 for dy/dt = f(t, y) from y(0) = y0 to time t.
inline double rk4(const std::function<double(double, double)>& f, double y0, double t,
                  int steps = 20000) {
  double y = y0;
  const double h = t / steps;
  double s = 0.0;
  for (int i = 0; i < steps; ++i) {
    const double k1 = f(s, y);
    const double k2 = f(s + 0.5 * h, y + 0.5 * h * k1);
    const double k3 = f(s + 0.5 * h, y + 0.5 * h * k2);
    const double k4 = f(s + h, y + h * k3);
    y += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    s += h;
  }
  return y;
}

/// Composite Simpson rule on [a, b].
inline double simpson(const std::function<double(double)>& f, double a, double b,
                      int panels = 20000) {
  const double h = (b - a) / (2 * panels);
  double acc = f(a) + f(b);
  for (int i = 1; i < 2 * panels; ++i) {
    acc += f(a + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
  }
  return acc * h / 3.0;
}

struct Rng {
  std::mt19937_64 gen;
  explicit Rng(unsigned seed = 20240811u) : gen(seed) {}
  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(gen);
  }
  double log_uniform(double lo, double hi) {
    return std::exp(uniform(std::log(lo), std::log(hi)));
  }
};

}  // namespace testutil
