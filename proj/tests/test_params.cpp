#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "jacobi/params.hpp"

using namespace jacobi;

TEST(ParseRational, Forms) {
  EXPECT_EQ(parse_rational("-1/2"), Rational(-1, 2));
  EXPECT_EQ(parse_rational("3"), Rational(3));
  EXPECT_EQ(parse_rational("-0.5"), Rational(-1, 2));
  EXPECT_EQ(parse_rational("1e-3"), Rational(1, 1000));
  EXPECT_EQ(parse_rational("2.5E2"), Rational(250));
  EXPECT_EQ(parse_rational(" 6/4 "), Rational(3, 2));
  EXPECT_EQ(parse_rational("0.1/0.3"), Rational(1, 3));
}

TEST(ParseRational, Rejects) {
  for (const char* bad : {"", "abc", "1/0", "1/", "--1", "1e", ".", "1.2.3"}) {
    EXPECT_THROW(parse_rational(bad), DomainError) << bad;
  }
}

TEST(Derive, SpecialCases) {
  const auto p = derive(Rational(0), Rational(0), Rational(2));
  EXPECT_EQ(p.exact().e2, Rational(-4));
  EXPECT_EQ(p.exact().e2p, Rational(-4));
  EXPECT_EQ(p.exact().lead_exp, Rational(4));
  const auto q = derive(Rational(-1, 2), Rational(-1, 2), Rational(1));
  EXPECT_EQ(q.exact().e2, Rational(-1, 4));
  EXPECT_EQ(q.exact().e2p, Rational(-1, 4));
  EXPECT_DOUBLE_EQ(q.alpha(), 0.0);
  EXPECT_DOUBLE_EQ(q.beta(), 0.0);
}

TEST(Derive, DoubleAndRationalAgree) {
  const auto r = derive(Rational(1, 3), Rational(-2, 7), Rational(5, 2));
  const auto d = derive(1.0 / 3, -2.0 / 7, 2.5);
  EXPECT_NEAR(r.e2(), d.e2(), 1e-14);
  EXPECT_NEAR(r.e2p(), d.e2p(), 1e-14);
  EXPECT_NEAR(r.bprod(), d.bprod(), 1e-13);
  EXPECT_FALSE(d.rational_mode());
  EXPECT_THROW(d.exact(), DomainError);
  EXPECT_FALSE(r.integer_N());
}

TEST(Derive, Domain) {
  EXPECT_THROW(derive(Rational(-1), Rational(0), Rational(1)), DomainError);
  EXPECT_THROW(derive(Rational(0), Rational(-3, 2), Rational(1)), DomainError);
  EXPECT_THROW(derive(0.0, 0.0, 0.0), DomainError);
}

TEST(Angles, Endpoints) {
  EXPECT_DOUBLE_EQ(phi_to_t(0.0), 1.0);
  EXPECT_NEAR(phi_to_t(std::numbers::pi), 0.0, 1e-32);
  EXPECT_DOUBLE_EQ(t_to_phi(1.0), 0.0);
  EXPECT_DOUBLE_EQ(t_to_phi(0.0), std::numbers::pi);
  EXPECT_NEAR(t_to_phi(0.5), std::numbers::pi / 2, 1e-15);
  EXPECT_THROW(phi_to_t(-0.1), DomainError);
  EXPECT_THROW(t_to_phi(1.5), DomainError);
  EXPECT_DOUBLE_EQ(phi_to_theta(std::numbers::pi, 3), 3.0);
  EXPECT_DOUBLE_EQ(theta_to_phi(1.5, 3), std::numbers::pi / 2);
}

TEST(Angles, RoundTripLongDouble) {
  std::mt19937_64 g(7);
  std::uniform_real_distribution<long double> u(0, std::numbers::pi_v<long double>);
  for (int i = 0; i < 10000; ++i) {
    const long double phi = u(g);
    EXPECT_NEAR(static_cast<double>(t_to_phi(phi_to_t(phi))), static_cast<double>(phi), 1e-14);
  }
}

TEST(Angles, RoundTripDoubleWithinConditioning) {
  std::mt19937_64 g(11);
  std::uniform_real_distribution<double> u(1e-12, 1 - 1e-12);
  for (int i = 0; i < 10000; ++i) {
    const double t = u(g);
    const double bound = 8 * std::numeric_limits<double>::epsilon() * (1 + 1 / std::sqrt(t * (1 - t)));
    EXPECT_NEAR(phi_to_t(t_to_phi(t)), t, bound * std::max(t, 1e-300) + 1e-300);
  }
}

TEST(Grid, ScaledDensity) {
  SolutionGrid g;
  g.params = derive(0.0, 0.0, 4.0);
  g.rows.push_back({0.5, 1.0, 1.0, 0.5, 2.0});
  EXPECT_DOUBLE_EQ(g.nu_scaled(0), std::numbers::pi / 4 * 2.0);
  EXPECT_EQ(to_string(Method::glued), "glued");
}
