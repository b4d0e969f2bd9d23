#include <sstream>

#include <gtest/gtest.h>

#include "jacobi/ratseries.hpp"

using namespace jacobi;

namespace {
Rational Q(long p, long q = 1) { return Rational(p, q); }
RationalSeries S(std::vector<Rational> c, int trunc) { return RationalSeries(std::move(c), trunc); }
}  // namespace

TEST(XPoly, Arithmetic) {
  const XPoly X = XPoly::X();
  const XPoly p = X * X - XPoly(Q(1));  // X^2 - 1
  EXPECT_EQ(p.degree(), 2);
  EXPECT_EQ(p(Q(3)), Q(8));
  const XPoly q = (X + XPoly(Q(1))) * (X - XPoly(Q(1)));
  EXPECT_EQ(p, q);
  EXPECT_TRUE((p - q).is_zero());
  EXPECT_EQ((p - q).degree(), -1);
  XPoly r = p;
  r /= Q(2);
  EXPECT_EQ(r.coeff(2), Q(1, 2));
  std::ostringstream os;
  os << p;
  EXPECT_EQ(os.str(), "1*X^2 + -1");
}

TEST(Series, ProductPrecisionRule) {
  const RationalSeries a = S({Q(1), Q(1)}, 5);
  const RationalSeries b = S({Q(0), Q(0), Q(2)}, 4);
  // min(trunc_a + val_b, trunc_b + val_a) = min(7, 4)
  EXPECT_EQ((a * b).trunc(), 4);
  EXPECT_EQ((a * b)[2], Q(2));
  EXPECT_EQ((a * b)[3], Q(2));
  const RationalSeries p = RationalSeries::polynomial({1, -1});
  EXPECT_TRUE(p.exact());
  EXPECT_EQ((p * p).trunc(), RationalSeries::kExact);
  EXPECT_EQ((p * p)[1], Q(-2));
}

TEST(Series, DerivativeIntegrate) {
  const RationalSeries a = S({Q(3), Q(2), Q(1)}, 6);
  EXPECT_EQ(a.derivative().trunc(), 5);
  EXPECT_EQ(a.derivative()[1], Q(2));
  const RationalSeries i = a.integrate();
  EXPECT_EQ(i.trunc(), 7);
  EXPECT_EQ(i[0], Q(0));
  EXPECT_EQ(i[3], Q(1, 3));
  EXPECT_EQ(i.derivative(), S({Q(3), Q(2), Q(1)}, 6));
}

TEST(Series, DivByTMinusOne) {
  const RationalSeries a = S({Q(1), Q(2), Q(3)}, 5);
  const RationalSeries q = a.div_by_t_minus_1();
  const RationalSeries back = q * RationalSeries::polynomial({-1, 1});
  EXPECT_EQ(back.truncated(5), a);
  EXPECT_THROW(RationalSeries::polynomial({1}).div_by_t_minus_1(), DomainError);
}

TEST(Series, ShiftDown) {
  const RationalSeries a = S({Q(7), Q(1), Q(2)}, 4);
  const RationalSeries s = a.shift_down();
  EXPECT_EQ(s.trunc(), 3);
  EXPECT_EQ(s[0], Q(1));
  EXPECT_EQ(s[1], Q(2));
}

TEST(Series, ExpOfT) {
  const RationalSeries e = exp(S({Q(0), Q(1)}, 10));
  Rational f = 1;
  for (int k = 0; k < 10; ++k) {
    if (k) f *= k;
    EXPECT_EQ(e[k], 1 / f);
  }
  EXPECT_THROW(exp(S({Q(1)}, 4)), DomainError);
}

TEST(Series, ExpIsMultiplicative) {
  const RationalSeries a = S({Q(0), Q(1, 3), Q(-2, 5), Q(1, 7)}, 12);
  const RationalSeries b = S({Q(0), Q(-1, 2), Q(0), Q(3)}, 12);
  EXPECT_EQ(exp(a) * exp(b), exp(a + b));
}

TEST(Series, EvalAndDump) {
  const RationalSeries a = S({Q(1), Q(-1, 2), Q(1, 4)}, 3);
  EXPECT_DOUBLE_EQ(eval(a, 2.0), 1.0);
  EXPECT_EQ(eval_horner_rational(a, Q(1, 2)), Q(13, 16));
  EXPECT_EQ(dump(a), "1,-1/2,1/4 + O(t^3)");
  EXPECT_EQ(to_doubles(a).size(), 3u);
}

TEST(Series, LiftKeepsCoefficients) {
  const RationalSeries a = S({Q(1), Q(2)}, 4);
  const UnknownSeries u = lift(a);
  EXPECT_EQ(u.trunc(), 4);
  EXPECT_EQ(u[1], XPoly(Q(2)));
}

TEST(Series, UnknownCoefficientProducts) {
  // (1 + X t)^2 = 1 + 2X t + X^2 t^2
  const UnknownSeries u(std::vector<XPoly>{XPoly(Q(1)), XPoly::X()}, 3);
  const UnknownSeries sq = u * u;
  EXPECT_EQ(sq[1], XPoly::X() * XPoly(Q(2)));
  EXPECT_EQ(sq[2], XPoly::X() * XPoly::X());
}
