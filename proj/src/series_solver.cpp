#include "jacobi/series_solver.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <ostream>

#include "jacobi/special.hpp"

namespace jacobi::series {

int default_degree(double N) {
  if (N <= 2) return 100;
  if (N <= 5) return 300;
  throw DomainError("no default series degree for N > 5; pass one explicitly");
}

std::pair<Rational, Rational> boundary_coefficients(const EnsembleParams& p) {
  const auto& ex = p.exact();
  const Rational denom = 2 * ex.N + ex.b;
  if (sgn(denom) == 0) throw DomainError("boundary condition undefined for 2N + b = 0");
  Rational h0 = -ex.e2 / 2 - ex.lead_exp;
  Rational h1 = ex.e2p + ex.lead_exp * (2 * ex.N + ex.a + ex.b) / denom;
  h0.canonicalize();
  h1.canonicalize();
  return {h0, h1};
}

namespace {

bool rational_sqrt(const Rational& q, Rational& root) {
  if (sgn(q) < 0) return false;
  mpz_class num = q.get_num(), den = q.get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t())) return false;
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
  root = Rational(rn, rd);
  root.canonicalize();
  return true;
}

}  // namespace

Rational select_root(const XPoly& p, int k) {
  const int deg = p.degree();
  if (deg < 0) throw RecursionStall(k, "p_k(X) is identically zero");
  if (deg == 0) throw RecursionStall(k, "p_k(X) is a nonzero constant");
  if (deg == 1) {
    Rational r = -p.coeff(0) / p.coeff(1);
    r.canonicalize();
    return r;
  }
  if (deg > 2 || k >= 3) {
    throw RecursionStall(k, "p_k(X) has degree " + std::to_string(deg) + ", expected linear");
  }
  const Rational c0 = p.coeff(0), c1 = p.coeff(1), c2 = p.coeff(2);
  if (sgn(c0) == 0) {
    // trivial root X = 0; the other root is -c1/c2 (0 again when c1 = 0)
    Rational r = -c1 / c2;
    r.canonicalize();
    return r;
  }
  Rational disc = c1 * c1 - 4 * c2 * c0;
  disc.canonicalize();
  Rational sq;
  if (!rational_sqrt(disc, sq)) throw RecursionStall(k, "quadratic p_k(X) has no rational root");
  Rational r1 = (-c1 + sq) / (2 * c2), r2 = (-c1 - sq) / (2 * c2);
  r1.canonicalize();
  r2.canonicalize();
  if (r1 == r2) return r1;
  throw RecursionStall(k, "quadratic p_k(X) has two nonzero roots");
}

namespace {

// Calls f(lambda) for every partition of n with at most `parts` parts,
// each part at most `cap`.
template <typename Fn>
void for_partitions(int n, int parts, int cap, std::vector<int>& lam, Fn&& f) {
  if (n == 0) {
    f(lam);
    return;
  }
  if (parts == 0) return;
  for (int m = std::min(n, cap); m >= 1; --m) {
    lam.push_back(m);
    for_partitions(n - m, parts - 1, m, lam, f);
    lam.pop_back();
  }
}

// s_lambda(1^c) = prod over cells of (c + content) / hook, for any rational c.
Rational principal_schur(const std::vector<int>& lam, const Rational& c) {
  Rational r = 1;
  const int rows = static_cast<int>(lam.size());
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < lam[i]; ++j) {
      int leg = 0;
      while (i + leg + 1 < rows && lam[i + leg + 1] > j) ++leg;
      const int hook = lam[i] - j + leg;
      r *= (c + (j - i)) / Rational(hook);
    }
  }
  r.canonicalize();
  return r;
}

}  // namespace

Rational F_coefficient(const EnsembleParams& p, int k) {
  const auto& ex = p.exact();
  if (ex.N.get_den() != 1 || ex.N > kMaxMomentN) throw DomainError("F_coefficient: needs integer N <= 64");
  if (k < 0) throw DomainError("F_coefficient: negative order");
  const int N = static_cast<int>(ex.N.get_num().get_si());
  // F(t) = < prod_j (1 - t y_j)^a > for y with density prop. to prod y_j^b Delta(y)^2 on [0,1]^N.
  // Cauchy: prod_j (1 - t y_j)^a = sum_lambda s_lambda(1^{-a}) s_lambda(y) t^{|lambda|};
  // the Selberg average of s_lambda is s_lambda(1^N) prod_i (b+1+N-i)_{l_i} / (b+2N-i+1)_{l_i}.
  Rational total = 0;
  std::vector<int> lam;
  for_partitions(k, N, k, lam, [&](const std::vector<int>& l) {
    Rational term = principal_schur(l, -ex.a) * principal_schur(l, ex.N);
    if (sgn(term) == 0) return;
    for (int i = 1; i <= static_cast<int>(l.size()); ++i) {
      for (int j = 0; j < l[i - 1]; ++j) {
        term *= (ex.b + (1 + N - i + j)) / (ex.b + (2 * N - i + 1 + j));
      }
    }
    total += term;
  });
  total.canonicalize();
  return total;
}

namespace {

// True when the polynomial g_0 + g_1 t + ... solves the equation exactly.
bool is_polynomial_solution(const std::vector<Rational>& g, const EnsembleParams& p) {
  return pez_residual(RationalSeries::polynomial(g), p).size() == 0;
}

// p_k vanishes identically in two situations. For a = 0, F = 1 and h is
// linear; this is caught earlier by is_polynomial_solution. At
// k = 2N + b + 1 the second local solution, with exponent (N+1)(N+1+b),
// leaves h_k free. For integer N it is fixed by the exact coefficient F_k,
// which depends on h_k with slope -1/k. Otherwise h_k is fixed by the first
// higher coefficient of PEZ that depends on it, with h_{k+1}, ... set to
// zero; only a pure power c X^m is accepted, giving h_k = 0.
Rational resolve_degenerate(const std::vector<Rational>& g, const EnsembleParams& p, int k) {
  if (p.exact().N.get_den() == 1 && p.exact().N <= kMaxMomentN) {
    std::vector<Rational> trial(g.begin(), g.end());
    trial.emplace_back(0);
    const Rational f0 = reconstruct_F(RationalSeries(trial, k + 1), p)[k];
    return Rational(-k) * (F_coefficient(p, k) - f0);
  }
  constexpr int kLookahead = 8;
  std::vector<XPoly> c(g.begin(), g.end());
  c.push_back(XPoly::X());
  for (int j = k + 1; j <= k + kLookahead; ++j) {
    const UnknownSeries pez = pez_residual(UnknownSeries(c, j + 2), p);
    const XPoly q = pez[j];
    if (q.is_zero()) continue;
    const int deg = q.degree();
    for (int i = 0; i < deg; ++i) {
      if (!is_zero(q.coeff(i))) throw RecursionStall(k, "p_k(X) is identically zero and the next nonzero coefficient is not a power of X");
    }
    if (deg == 0) throw RecursionStall(k, "p_k(X) is identically zero and a higher coefficient is a nonzero constant");
    return Rational(0);
  }
  throw RecursionStall(k, "p_k(X) is identically zero");
}

}  // namespace

RationalSeries solve_coefficients_reference(const EnsembleParams& p, int D) {
  if (D < 3) throw DomainError("series degree must be at least 3");
  auto [h0, h1] = boundary_coefficients(p);
  std::vector<Rational> g{h0, h1};
  for (int k = 2; k < D; ++k) {
    std::vector<XPoly> c(g.begin(), g.end());
    c.push_back(XPoly::X());
    const UnknownSeries h(std::move(c), k + 2);
    const UnknownSeries pez = pez_residual(h, p);
    if (pez[k].is_zero() && is_polynomial_solution(g, p)) {
      g.resize(static_cast<std::size_t>(D));
      break;
    }
    g.push_back(pez[k].is_zero() ? resolve_degenerate(g, p, k) : select_root(pez[k], k));
  }
  return RationalSeries(std::move(g), D);
}

namespace {

// Incremental evaluation of [t^k] PEZ. Each sequence keeps its coefficients
// that no longer depend on unknowns ("final", indices <= k-2 at step k) and
// two tentative entries at k-1 and k that are polynomials in X = h_k.
// As in the truncated-series formulation, h_{k+1} is taken as 0.
class SigmaRecursion {
 public:
  explicit SigmaRecursion(const EnsembleParams& p) : params_(p) {
    const auto& ex = p.exact();
    for (int i = 0; i < 4; ++i) sq_[i] = ex.bvec[i] * ex.bvec[i];
    c_ = ex.bvec[0] * ex.bvec[1] * ex.bvec[2] * ex.bvec[3];
    auto [h0, h1] = boundary_coefficients(p);
    h_ = {h0, h1};
    P_ = {h1};
    T_ = {Rational(0)};
    U_ = {Rational(2 * h0 + h1)};
    for (int i = 0; i < 4; ++i) Pb_[i] = {Rational(h1 + sq_[i])};
    T2_ = {Rational(0)};
    V_ = {Rational(P_[0] * U_[0])};
    Q_ = {Rational(V_[0] + c_)};
    R1_ = {Rational(Pb_[0][0] * Pb_[1][0])};
    R2_ = {Rational(Pb_[2][0] * Pb_[3][0])};
  }

  const std::vector<Rational>& h() const { return h_; }

  // Determines h_k for k = h_.size(). Returns false, leaving h_ untouched,
  // when p_k vanishes because h_0 + ... + h_{k-1} t^{k-1} is already an
  // exact solution; all later coefficients are then zero.
  bool step() {
    const int k = static_cast<int>(h_.size());
    const int fin = k - 2;
    const XPoly X = XPoly::X();
    const Rational hk1 = h_[k - 1];
    const Rational kk(k), k1(k - 1), k2(k - 2);

    Tent Pt{X * XPoly(kk), XPoly()};
    Tent Tt{X * XPoly(Rational(k1 * kk)) - XPoly(Rational(k2 * k1 * hk1)), X * XPoly(Rational(-k1 * kk))};
    Tent Ut{XPoly(Rational(2 * hk1 - 2 * P_[k - 2])) + X * XPoly(kk), X * XPoly(Rational(2 - 2 * kk))};

    Tent T2t{conv(T_, Tt, T_, Tt, k - 1, fin), conv(T_, Tt, T_, Tt, k, fin)};
    Tent Vt{conv(P_, Pt, U_, Ut, k - 1, fin), conv(P_, Pt, U_, Ut, k, fin)};
    Tent R1t{conv(Pb_[0], Pt, Pb_[1], Pt, k - 1, fin), conv(Pb_[0], Pt, Pb_[1], Pt, k, fin)};
    Tent R2t{conv(Pb_[2], Pt, Pb_[3], Pt, k - 1, fin), conv(Pb_[2], Pt, Pb_[3], Pt, k, fin)};

    XPoly pk = conv(P_, Pt, T2_, T2t, k, fin);
    pk += conv(Q_, Vt, Q_, Vt, k, fin);
    pk -= conv(R1_, R1t, R2_, R2t, k, fin);

    if (pk.is_zero() && is_polynomial_solution(h_, params_)) return false;
    const Rational x = pk.is_zero() ? resolve_degenerate(h_, params_, k) : select_root(pk, k);

    // Commit index k-1 of every sequence.
    h_.push_back(x);
    P_.push_back(kk * x);
    T_.push_back(k1 * kk * x - k2 * k1 * hk1);
    U_.push_back(2 * hk1 + kk * x - 2 * P_[k - 2]);
    for (int i = 0; i < 4; ++i) Pb_[i].push_back(P_[k - 1]);
    T2_.push_back(conv_final(T_, T_, k - 1));
    V_.push_back(conv_final(P_, U_, k - 1));
    Q_.push_back(V_[k - 1]);
    R1_.push_back(conv_final(Pb_[0], Pb_[1], k - 1));
    R2_.push_back(conv_final(Pb_[2], Pb_[3], k - 1));
    return true;
  }

 private:
  using Tent = std::array<XPoly, 2>;  // entries at indices fin+1 and fin+2
  using Vec = std::vector<Rational>;

  static Rational conv_final(const Vec& y, const Vec& z, int m) {
    Rational acc = 0, tmp;
    for (int i = 0; i <= m; ++i) {
      mpq_mul(tmp.get_mpq_t(), y[i].get_mpq_t(), z[m - i].get_mpq_t());
      mpq_add(acc.get_mpq_t(), acc.get_mpq_t(), tmp.get_mpq_t());
    }
    return acc;
  }

  // [t^m] of y*z where entries above fin come from the tentative arrays.
  static XPoly conv(const Vec& yf, const Tent& yt, const Vec& zf, const Tent& zt, int m, int fin) {
    Rational acc = 0, tmp;
    const int lo = std::max(0, m - fin), hi = std::min(m, fin);
    for (int i = lo; i <= hi; ++i) {
      mpq_mul(tmp.get_mpq_t(), yf[i].get_mpq_t(), zf[m - i].get_mpq_t());
      mpq_add(acc.get_mpq_t(), acc.get_mpq_t(), tmp.get_mpq_t());
    }
    XPoly r(acc);
    auto entry = [fin](const Vec& f, const Tent& t, int i) -> XPoly {
      return i <= fin ? XPoly(f[i]) : t[i - fin - 1];
    };
    for (int i = 0; i <= m; ++i) {
      if (i <= fin && m - i <= fin) {
        // skip the final-final block in one jump
        if (i < hi) i = hi;
        continue;
      }
      r += entry(yf, yt, i) * entry(zf, zt, m - i);
    }
    return r;
  }

  EnsembleParams params_;
  std::array<Rational, 4> sq_;
  Rational c_;
  Vec h_, P_, T_, U_, T2_, V_, Q_, R1_, R2_;
  std::array<Vec, 4> Pb_;
};

}  // namespace

RationalSeries solve_coefficients(const EnsembleParams& p, int D) {
  if (D < 3) throw DomainError("series degree must be at least 3");
  SigmaRecursion rec(p);
  while (static_cast<int>(rec.h().size()) < D) {
    if (!rec.step()) break;
  }
  return RationalSeries(rec.h(), D);
}

RationalSeries reconstruct_F(const RationalSeries& h, const EnsembleParams& p) {
  const auto& ex = p.exact();
  RationalSeries F = h.shift_down() - Rational(ex.e2p + ex.lead_exp);
  F = F.div_by_t_minus_1().integrate();
  return exp(F);
}

double leading_constant(const EnsembleParams& p) {
  const double N = p.N();
  return std::exp(special::log_selberg_unit(N, 1.0, p.b() + 1) -
                  special::log_selberg_unit(N, p.a() + 1, p.b() + 1));
}

SeriesSolution solve(const EnsembleParams& p, int D) {
  SeriesSolution s;
  s.params = p;
  s.degree = D;
  s.h = solve_coefficients(p, D);
  s.F = reconstruct_F(s.h, p);
  s.lead_coef = leading_constant(p);
  s.lead_exp = p.exact().lead_exp;
  s.htilde = s.h.shift_down() - Rational(p.exact().e2p);
  s.F_d = to_doubles(s.F);
  s.htilde_d = to_doubles(s.htilde);
  return s;
}

namespace {

double horner(const std::vector<double>& c, double t, std::size_t terms) {
  double r = 0;
  for (std::size_t k = std::min(terms, c.size()); k-- > 0;) r = r * t + c[k];
  return r;
}

}  // namespace

SeriesValue evaluate(const SeriesSolution& sol, double t, int terms) {
  if (!(t > 0 && t < 1)) throw DomainError("series evaluate: t must lie in (0, 1)");
  if (terms < 1) throw DomainError("series evaluate: need at least one term");
  const auto n = static_cast<std::size_t>(terms);
  const double L = sol.params.lead_exp();
  SeriesValue v;
  v.E = sol.lead_coef * std::pow(t, L) * horner(sol.F_d, t, n);
  v.Ep = (horner(sol.htilde_d, t, n) / (t - 1) + L / (t * (1 - t))) * v.E;
  return v;
}

SeriesValue evaluate(const SeriesSolution& sol, double t) { return evaluate(sol, t, sol.degree); }

SolutionGrid density_grid(const SeriesSolution& sol, const std::vector<double>& phis) {
  constexpr double kGuard = 1e-6;
  SolutionGrid g;
  g.method = Method::series;
  g.params = sol.params;
  g.meta["degree"] = std::to_string(sol.degree);
  std::size_t untrusted = 0;
  for (double phi : phis) {
    GridRow r;
    r.phi = phi;
    r.t = phi_to_t(phi);
    r.theta = phi_to_theta(phi, sol.params.N());
    if (r.t > 0 && r.t < 1) {
      const SeriesValue v = evaluate(sol, r.t);
      r.E = v.E;
      r.nu = std::sqrt(r.t * (1 - r.t)) * v.Ep;
    } else {
      r.E = r.t >= 1 ? 1.0 : 0.0;
    }
    if (phi < kGuard || phi > std::numbers::pi - kGuard) r.nu = 0;
    if (!trusted(r.t)) ++untrusted;
    g.rows.push_back(r);
  }
  if (untrusted) {
    g.warnings.push_back(std::to_string(untrusted) + " rows lie beyond the series trust radius t <= 0.9");
  }
  return g;
}

void write_coefficients(std::ostream& os, const RationalSeries& h) {
  const int n = h.exact() ? h.size() : h.trunc();
  for (int k = 0; k < n; ++k) os << k << ' ' << h[k] << '\n';
}

}  // namespace jacobi::series
