#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "jacobi/special.hpp"
#include "support/quadrature.hpp"

using namespace jacobi;
using namespace jacobi::special;

TEST(Gamma, MatchesStd) {
  for (double x : {0.1, 0.5, 1.0, 2.5, 10.0, 55.5}) EXPECT_NEAR(log_gamma(x), std::lgamma(x), 1e-13 * (1 + std::abs(std::lgamma(x))));
  EXPECT_THROW(log_gamma(0.0), DomainError);
}

TEST(BarnesG, KnownValues) {
  EXPECT_NEAR(log_barnes_g(1), 0, 1e-14);
  EXPECT_NEAR(log_barnes_g(2), 0, 1e-14);
  EXPECT_NEAR(log_barnes_g(3), 0, 1e-14);
  EXPECT_NEAR(log_barnes_g(4), std::log(2.0), 1e-14);
  EXPECT_NEAR(log_barnes_g(5), std::log(12.0), 1e-13);
  EXPECT_NEAR(log_barnes_g(7), std::log(34560.0), 1e-13);
  EXPECT_NEAR(std::exp(log_barnes_g(0.5)), 0.603244281209446, 1e-13);
  EXPECT_NEAR(std::exp(log_barnes_g(1.5)), 1.06922264926641, 1e-13);
}

TEST(BarnesG, Recurrence) {
  for (double x : {0.3, 1.7, 4.2, 9.9, 23.25}) {
    EXPECT_NEAR(log_barnes_g(x + 1) - log_barnes_g(x), log_gamma(x), 1e-11 * (1 + std::abs(log_gamma(x))));
  }
}

TEST(Selberg, OneDimensionIsBeta) {
  for (auto [r, e] : {std::pair{0.5, 0.5}, {1.0, 0.5}, {2.5, 3.25}}) {
    EXPECT_NEAR(selberg(1, r, e, 1), std::exp(std::lgamma(r) + std::lgamma(e) - std::lgamma(r + e)), 1e-13);
  }
}

TEST(Selberg, ProductFormulaAgainstQuadrature) {
  const quad::Rule rule = quad::tanh_sinh(1.0 / 16);
  std::mt19937_64 g(2024);
  std::uniform_real_distribution<double> u(0.6, 3.0);
  for (int n = 1; n <= 3; ++n) {
    for (int i = 0; i < 5; ++i) {
      const double r = u(g), e = u(g);
      const double q = quad::selberg(n, r, e, rule);
      EXPECT_NEAR(selberg(n, r, e, 1) / q, 1.0, 1e-5) << n << " " << r << " " << e;
    }
  }
}

TEST(Selberg, Domain) {
  EXPECT_THROW(selberg(0, 1, 1, 1), DomainError);
  EXPECT_THROW(selberg(2, -1, 1, 1), DomainError);
  EXPECT_THROW(selberg(3, 1, 1, -0.6), DomainError);
}

TEST(Aomoto, ReducesToSelberg) {
  EXPECT_EQ(aomoto(3, 0, 1.3, 0.7), selberg(3, 1.3, 0.7, 1));
  EXPECT_THROW(aomoto(2, 3, 1, 1), DomainError);
}

TEST(Aomoto, AgainstQuadrature) {
  const quad::Rule rule = quad::tanh_sinh(1.0 / 16);
  for (int n = 1; n <= 3; ++n) {
    for (int R = 1; R <= n; ++R) {
      const double q = quad::selberg(n, 1.4, 0.8, rule, R);
      EXPECT_NEAR(aomoto(n, R, 1.4, 0.8) / q, 1.0, 1e-5) << n << " " << R;
    }
  }
}

TEST(BarnesRoute, MatchesProductForIntegerN) {
  std::mt19937_64 g(99);
  std::uniform_real_distribution<double> u(0.2, 4.0);
  for (int n = 1; n <= 7; ++n) {
    for (int i = 0; i < 5; ++i) {
      const double r = u(g), e = u(g);
      EXPECT_NEAR(log_selberg_noninteger(n, r, e), log_selberg(n, r, e, 1), 1e-9);
    }
  }
}

TEST(Normalization, IntegratesToOne) {
  // N = 2, alpha = 1/2, beta = 0 over [0, pi]^2
  const auto p = derive(0.0, -0.5, 2.0);
  const quad::Rule r = quad::gauss_legendre(80);
  double s = 0;
  for (std::size_t i = 0; i < r.x.size(); ++i) {
    for (std::size_t j = 0; j < r.x.size(); ++j) {
      const double ci = std::cos(std::numbers::pi * r.x[i]), cj = std::cos(std::numbers::pi * r.x[j]);
      s += r.w[i] * r.w[j] * std::sqrt((1 - ci) * (1 - cj)) * (ci - cj) * (ci - cj);
    }
  }
  s *= std::numbers::pi * std::numbers::pi;
  EXPECT_NEAR(normalization(p) * s, 1.0, 1e-10);
}

TEST(HCoefficients, UniformCase) {
  const HCoefficients h = h1_h2(derive(-0.5, -0.5, 1.0));
  EXPECT_NEAR(h.H1, 1 / std::numbers::pi, 1e-15);
  EXPECT_NEAR(h.H2, 1 / (3 * std::numbers::pi), 1e-15);
  EXPECT_THROW(h1_h2(derive(0.0, 0.0, 0.5)), DomainError);
}

TEST(TaylorE, UniformIsExact) {
  const auto p = derive(-0.5, -0.5, 1.0);
  for (double phi : {0.0, 0.1, 1.0, 3.0}) {
    const TaylorValue v = taylor_E(p, phi);
    EXPECT_NEAR(v.E, 1 - phi / std::numbers::pi, 1e-15);
    EXPECT_NEAR(v.Ep, -1 / std::numbers::pi, 1e-15);
    EXPECT_NEAR(v.Epp, 0, 1e-15);
  }
}

TEST(TaylorE, DerivativesAreConsistent) {
  const TaylorE te(derive(-0.25, 0.5, 3.0));
  for (double phi : {0.05, 0.2, 0.4}) {
    const double h = 1e-5;
    EXPECT_NEAR((te(phi + h).E - te(phi - h).E) / (2 * h), te(phi).Ep, 1e-7);
    EXPECT_NEAR((te(phi + h).Ep - te(phi - h).Ep) / (2 * h), te(phi).Epp, 1e-5);
  }
}

// E_2(phi) = C_2 int_{[phi,pi]^2} w w (cos - cos)^2 against the expansion.
TEST(TaylorE, AgainstTwoDimensionalQuadrature) {
  for (auto [a, b] : {std::pair{0.0, 0.0}, {-0.5, 0.5}}) {
    const auto p = derive(a, b, 2.0);
    const double C = normalization(p);
    const quad::Rule r = quad::gauss_legendre(120);
    for (double phi : {0.02, 0.05}) {
      const double len = std::numbers::pi - phi;
      double s = 0;
      for (std::size_t i = 0; i < r.x.size(); ++i) {
        const double xi = phi + len * r.x[i], ci = std::cos(xi);
        const double wi = std::pow(1 - ci, p.alpha()) * std::pow(1 + ci, p.beta());
        for (std::size_t j = 0; j < r.x.size(); ++j) {
          const double xj = phi + len * r.x[j], cj = std::cos(xj);
          const double wj = std::pow(1 - cj, p.alpha()) * std::pow(1 + cj, p.beta());
          s += r.w[i] * r.w[j] * wi * wj * (ci - cj) * (ci - cj);
        }
      }
      const double E = C * s * len * len;
      // next omitted term is O(phi^(2 alpha + 5))
      EXPECT_NEAR(taylor_E(p, phi).E, E, 20 * std::pow(phi, 2 * p.alpha() + 5)) << a << " " << b << " " << phi;
    }
  }
}
