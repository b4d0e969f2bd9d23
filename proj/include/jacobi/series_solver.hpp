#pragma once

#include <vector>

#include "jacobi/params.hpp"
#include "jacobi/ratseries.hpp"

namespace jacobi::series {

/// Series t above which evaluation is flagged untrusted (singularity at t = 1).
inline constexpr double kTrustedT = 0.9;

/// Degree used when the caller does not choose one: 100 for N <= 2, 300 for
/// N <= 5. Larger N throws DomainError (an explicit degree is required).
int default_degree(double N);

/// RHS - LHS of the sigma-form equation
///   h' (t(1-t) h'')^2 + (h'(2h - (2t-1)h') + b1b2b3b4)^2 - prod_k (h' + b_k^2)
/// in exact series arithmetic.
template <typename C>
Series<C> pez_residual(const Series<C>& h, const EnsembleParams& p) {
  const auto& ex = p.exact();
  const Series<C> hp = h.derivative();
  const Series<C> hpp = hp.derivative();
  const Series<C> t_one_minus_t = Series<C>::polynomial({0, 1, -1});
  const Series<C> two_t_minus_1 = Series<C>::polynomial({-1, 2});
  const Series<C> T = hpp * t_one_minus_t;
  const Series<C> lhs = hp * (T * T);
  const Series<C> Q = hp * (h * Rational(2) - two_t_minus_1 * hp) + C(ex.bvec[0] * ex.bvec[1] * ex.bvec[2] * ex.bvec[3]);
  Series<C> R = hp + C(ex.bvec[0] * ex.bvec[0]);
  for (int i = 1; i < 4; ++i) R = R * (hp + C(ex.bvec[i] * ex.bvec[i]));
  return lhs + Q * Q - R;
}

/// h_0 and h_1 of h(t) = h_0 + h_1 t + O(t^2).
std::pair<Rational, Rational> boundary_coefficients(const EnsembleParams& p);

/// Exact coefficients h_0..h_{D-1} of h(t); the result is known mod t^D.
/// Each h_k is the root of p_k(X) = [t^k] PEZ(h_0 + ... + X t^k + O(t^{k+2})).
RationalSeries solve_coefficients(const EnsembleParams& p, int D);

/// Same recursion evaluated by forming the full truncated residual over
/// Q[X][[t]] at every step. O(D^3); used to cross-check the incremental
/// recursion of solve_coefficients.
RationalSeries solve_coefficients_reference(const EnsembleParams& p, int D);

/// Root of p_k(X) chosen by the recursion (nonzero root of the quadratic at k = 2).
Rational select_root(const XPoly& p, int k);

/// F(t) = exp int_0^t (h1(s) - e2' - N(N+b)) / (s - 1) ds with h1 = (h - h_0)/t.
RationalSeries reconstruct_F(const RationalSeries& h, const EnsembleParams& p);

/// Largest N for which F_coefficient is available.
inline constexpr int kMaxMomentN = 64;

/// Exact [t^k] F for integer N, as a finite sum over partitions of k.
Rational F_coefficient(const EnsembleParams& p, int k);

/// C = S_N(1, b+1; 1) / S_N(a+1, b+1; 1).
double leading_constant(const EnsembleParams& p);

struct SeriesSolution {
  EnsembleParams params;
  int degree = 0;
  RationalSeries h;
  RationalSeries F;
  double lead_coef = 0;
  Rational lead_exp;
  RationalSeries htilde;  // h1(t) - e2'

  std::vector<double> F_d;
  std::vector<double> htilde_d;
};

SeriesSolution solve(const EnsembleParams& p, int D);

struct SeriesValue {
  double E = 0;
  double Ep = 0;  // dE~/dt
};

/// E~(t) = C t^{N(N+b)} F(t), E~'(t) = (htilde/(t-1) + N(N+b)/(t(1-t))) E~.
SeriesValue evaluate(const SeriesSolution& sol, double t);

/// Same, keeping only the first `terms` coefficients of F and htilde.
SeriesValue evaluate(const SeriesSolution& sol, double t, int terms);

inline bool trusted(double t) { return t <= kTrustedT; }

/// Rows at the given phi in (0, pi) with nu = sqrt(t(1-t)) E~'(t); nu is 0
/// within 1e-6 of either endpoint.
SolutionGrid density_grid(const SeriesSolution& sol, const std::vector<double>& phis);

/// One "k p/q" line per coefficient.
void write_coefficients(std::ostream& os, const RationalSeries& h);

}  // namespace jacobi::series
