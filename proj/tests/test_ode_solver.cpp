#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "jacobi/ode_solver.hpp"

using namespace jacobi;
using namespace jacobi::ode;

namespace {

EnsembleParams P(const char* a, const char* b, const char* N) {
  return derive(parse_rational(a), parse_rational(b), parse_rational(N));
}

double trapezoid_mass(const SolutionGrid& g) {
  double m = 0;
  for (std::size_t i = 1; i < g.rows.size(); ++i) {
    m += 0.5 * (g.rows[i].nu + g.rows[i - 1].nu) * (g.rows[i].phi - g.rows[i - 1].phi);
  }
  return m;
}

}  // namespace

TEST(Rhs, WorkedValue) {
  const Derivative d = rhs(0.5, HamiltonianState{0.5, 1, 1, 1}, P("0", "0", "2"));
  EXPECT_NEAR(d.dE, -4, 1e-14);
  EXPECT_DOUBLE_EQ(d.dh, 1);
  EXPECT_NEAR(d.dhp, 4 * std::sqrt(21.0), 1e-12);
}

TEST(Rhs, Singular) {
  const auto p = P("0", "0", "2");
  EXPECT_THROW(rhs(0.5, HamiltonianState{0.5, 1, 1, 0}, p), SingularRhs);
  EXPECT_THROW(rhs(0.5, HamiltonianState{0.5, 1, 10, 1}, p), SingularRhs);
  try {
    rhs(0.25, HamiltonianState{0.25, 1, 1, 0}, p);
  } catch (const SingularRhs& e) {
    EXPECT_DOUBLE_EQ(e.t(), 0.25);
  }
}

TEST(InitialState, UniformClosedForm) {
  OdeConfig cfg;
  cfg.eps = 1e-4;
  std::vector<std::string> w;
  const HamiltonianState s = initial_state(P("-1/2", "-1/2", "1"), cfg, &w);
  EXPECT_DOUBLE_EQ(s.t, 1 - 1e-4);
  EXPECT_NEAR(s.E, 1 - std::acos(2 * s.t - 1) / std::numbers::pi, 1e-12);
  EXPECT_TRUE(w.empty());
}

TEST(InitialState, PositiveAWarns) {
  std::vector<std::string> w;
  initial_state(P("1/2", "0", "2"), OdeConfig{}, &w);
  ASSERT_EQ(w.size(), 1u);
  EXPECT_EQ(w[0], kPositiveAWarning);
}

TEST(Config, Validation) {
  OdeConfig c;
  EXPECT_NO_THROW(c.validate());
  c.eps = 0;
  EXPECT_THROW(c.validate(), DomainError);
  c = OdeConfig{};
  c.t_end = 1;
  EXPECT_THROW(c.validate(), DomainError);
  c = OdeConfig{};
  c.reltol = -1;
  EXPECT_THROW(c.validate(), DomainError);
  c = OdeConfig{};
  c.sample_t = {0.5, 1.0};
  EXPECT_THROW(c.validate(), DomainError);
  c = OdeConfig{};
  c.points_per_theta = 1;
  EXPECT_THROW(c.validate(), DomainError);
}

TEST(Integrate, UniformDensity) {
  OdeConfig cfg;
  cfg.t_end = 1e-6;
  const SolutionGrid g = integrate(P("-1/2", "-1/2", "1"), cfg);
  ASSERT_GT(g.rows.size(), 100u);
  EXPECT_EQ(g.method, Method::rk);
  double maxdev = 0;
  for (const auto& r : g.rows) maxdev = std::max(maxdev, std::abs(r.nu - 1 / std::numbers::pi));
  EXPECT_LT(maxdev, 1e-4);
  for (std::size_t i = 1; i < g.rows.size(); ++i) EXPECT_GT(g.rows[i].phi, g.rows[i - 1].phi);
}

TEST(Integrate, MassAndMonotone) {
  OdeConfig cfg;
  cfg.t_end = 1e-6;
  const SolutionGrid g = integrate(P("0", "0", "2"), cfg);
  EXPECT_NEAR(trapezoid_mass(g), g.rows.front().E - g.rows.back().E, 1e-3);
  for (std::size_t i = 1; i < g.rows.size(); ++i) EXPECT_LE(g.rows[i].E, g.rows[i - 1].E + 1e-12);
  EXPECT_GT(trapezoid_mass(g), 0.99);
  EXPECT_TRUE(g.meta.count("steps"));
}

TEST(Integrate, SampleAbscissae) {
  OdeConfig cfg;
  cfg.sample_t = {0.9, 0.5, 0.1};
  const SolutionGrid g = integrate(P("-1/2", "-1/2", "1"), cfg);
  ASSERT_EQ(g.rows.size(), 3u);
  EXPECT_DOUBLE_EQ(g.rows[0].t, 0.9);
  EXPECT_NEAR(g.rows[1].E, 0.5, 1e-5);
}
