#pragma once

#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

namespace quad {

struct Rule {
  std::vector<double> x;   // nodes in (0, 1)
  std::vector<double> xc;  // 1 - x, computed without cancellation
  std::vector<double> w;
};

// Tanh-sinh rule on (0, 1); tolerates integrable endpoint singularities.
inline Rule tanh_sinh(double h = 1.0 / 32, double umax = 4.0) {
  Rule r;
  const double half_pi = std::numbers::pi / 2;
  for (double u = -umax; u <= umax + 1e-12; u += h) {
    const double s = half_pi * std::sinh(u);
    const double x = 1 / (1 + std::exp(-2 * s));
    const double xc = 1 / (1 + std::exp(2 * s));
    const double w = h * half_pi * std::cosh(u) / (2 * std::cosh(s) * std::cosh(s));
    if (x <= 0 || xc <= 0 || w == 0) continue;
    r.x.push_back(x);
    r.xc.push_back(xc);
    r.w.push_back(w);
  }
  return r;
}

// n-point Gauss-Legendre rule on (0, 1).
inline Rule gauss_legendre(int n) {
  Rule r;
  for (int i = 1; i <= n; ++i) {
    double z = std::cos(std::numbers::pi * (i - 0.25) / (n + 0.5));
    double dp = 0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1, p1 = z;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2 * k - 1) * z * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (z * p1 - p0) / (z * z - 1);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    r.x.push_back((1 - z) / 2);
    r.xc.push_back((1 + z) / 2);
    r.w.push_back(1 / ((1 - z * z) * dp * dp));
  }
  return r;
}

// Selberg integrand with gamma = 1 over [0,1]^n by a tensor rule.
inline double selberg(int n, double rho, double eta, const Rule& r, int R = 0) {
  const std::size_t m = r.x.size();
  std::vector<std::size_t> idx(static_cast<std::size_t>(n), 0);
  double total = 0;
  for (;;) {
    double v = 1;
    for (int j = 0; j < n; ++j) {
      const std::size_t i = idx[j];
      v *= r.w[i] * std::pow(r.x[i], rho - 1) * std::pow(r.xc[i], eta - 1);
      if (j < R) v *= r.x[i];
      for (int k = 0; k < j; ++k) {
        const double d = r.x[i] - r.x[idx[k]];
        v *= d * d;
      }
    }
    total += v;
    int j = 0;
    while (j < n && ++idx[j] == m) idx[j++] = 0;
    if (j == n) break;
  }
  return total;
}

}  // namespace quad
