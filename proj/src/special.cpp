#include "jacobi/special.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace jacobi::special {
namespace {

constexpr long double kLn2Pi = 1.837877066409345483560659472811235279723L;
// zeta'(-1) = 1/12 - log(Glaisher's constant)
constexpr long double kZetaPrimeMinus1 = -0.1654211437004509292139196602427806807L;

long double log_gamma_ld(long double x) { return std::lgamma(x); }

// Asymptotic series of log G(z + 1) for large z.
long double log_g_asymptotic_shifted(long double z) {
  const long double lz = std::log(z);
  long double s = z * z / 2 * (lz - 1.5L) + z / 2 * kLn2Pi - lz / 12 + kZetaPrimeMinus1;
  // sum_k B_{2k+2} / (4 k (k+1) z^(2k))
  static constexpr long double kCoef[] = {
      -1.0L / 240,                    // B4 / 8
      1.0L / 1008,                    // B6 / 24
      -1.0L / 1440,                   // B8 / 48
      1.0L / 1056,                    // B10 / 80
      -691.0L / (2730.0L * 120.0L),   // B12 / 120
      7.0L / (6.0L * 168.0L),         // B14 / 168
      -3617.0L / (510.0L * 224.0L),   // B16 / 224
  };
  const long double iz2 = 1 / (z * z);
  long double zp = iz2;
  for (long double c : kCoef) {
    s += c * zp;
    zp *= iz2;
  }
  return s;
}

long double log_barnes_g_ld(long double x) {
  // log G(x) = log G(x + m) - sum_{i<m} log Gamma(x + i)
  long double shift = 0;
  while (x < 10) {
    shift += log_gamma_ld(x);
    x += 1;
  }
  return log_g_asymptotic_shifted(x - 1) - shift;
}

void require_positive(double x, const char* what) {
  if (!(x > 0)) throw DomainError(std::string(what) + ": argument must be positive");
}

}  // namespace

double log_gamma(double x) {
  require_positive(x, "log_gamma");
  return static_cast<double>(log_gamma_ld(x));
}

double log_barnes_g(double x) {
  require_positive(x, "log_barnes_g");
  return static_cast<double>(log_barnes_g_ld(x));
}

double log_selberg(int n, double rho, double eta, double gamma) {
  if (n < 1) throw DomainError("selberg: dimension must be a positive integer");
  if (!(rho > 0) || !(eta > 0)) throw DomainError("selberg: rho and eta must be positive");
  double bound = 1.0 / n;
  if (n > 1) bound = std::min({bound, rho / (n - 1), eta / (n - 1)});
  if (!(gamma > -bound)) throw DomainError("selberg: gamma below the convergence bound");
  long double s = 0;
  const long double g = gamma;
  for (int j = 0; j < n; ++j) {
    s += log_gamma_ld(1 + g + j * g) + log_gamma_ld(rho + j * g) + log_gamma_ld(eta + j * g) -
         log_gamma_ld(1 + g) - log_gamma_ld(rho + eta + (n + j - 1) * g);
  }
  return static_cast<double>(s);
}

double selberg(int n, double rho, double eta, double gamma) {
  return std::exp(log_selberg(n, rho, eta, gamma));
}

double log_selberg_noninteger(double N, double rho, double eta) {
  if (!(N > 0) || !(rho > 0) || !(eta > 0)) {
    throw DomainError("selberg_noninteger: arguments must be positive");
  }
  // prod_{j<N} Gamma(rho+j) Gamma(eta+j) Gamma(j+2) / Gamma(rho+eta+N-1+j) telescoped into G.
  const long double n = N, r = rho, e = eta;
  if (!(r + e + n - 1 > 0)) throw DomainError("selberg_noninteger: rho + eta + N - 1 must be positive");
  long double s = log_barnes_g_ld(r + n) - log_barnes_g_ld(r) + log_barnes_g_ld(e + n) -
                  log_barnes_g_ld(e) + log_barnes_g_ld(n + 2) + log_barnes_g_ld(r + e + n - 1) -
                  log_barnes_g_ld(r + e + 2 * n - 1);
  return static_cast<double>(s);
}

double selberg_noninteger(double N, double rho, double eta) {
  return std::exp(log_selberg_noninteger(N, rho, eta));
}

double aomoto(int n, int R, double rho, double eta) {
  if (R < 0 || R > n) throw DomainError("aomoto: R must lie in [0, n]");
  const double base = log_selberg(n, rho, eta, 1.0);
  if (R == 0) return std::exp(base);
  long double pre = 1;
  for (int j = 1; j <= R; ++j) {
    pre *= (rho + static_cast<long double>(n - j)) / (rho + eta + static_cast<long double>(2 * n - j - 1));
  }
  return static_cast<double>(pre * std::exp(static_cast<long double>(base)));
}

double log_selberg_unit(double N, double rho, double eta) {
  if (N >= 1 && N == std::floor(N) && N < 1e6) {
    return log_selberg(static_cast<int>(N), rho, eta, 1.0);
  }
  return log_selberg_noninteger(N, rho, eta);
}

double log_normalization(const EnsembleParams& p) {
  const double N = p.N(), al = p.alpha(), be = p.beta();
  // C_N^{-1} = 2^{N(N+alpha+beta-1)} S_N(beta+1/2, alpha+1/2; 1)
  const double inv = N * (N + al + be - 1) * std::numbers::ln2 + log_selberg_unit(N, be + 0.5, al + 0.5);
  return -inv;
}

double normalization(const EnsembleParams& p) { return std::exp(log_normalization(p)); }

HCoefficients h1_h2(const EnsembleParams& p) {
  const long double N = p.N(), al = p.alpha(), be = p.beta();
  if (!(N >= 1)) throw DomainError("h1_h2: requires N >= 1");
  if (!(al > -0.5L) || !(be > -0.5L)) throw DomainError("h1_h2: requires alpha, beta > -1/2");
  const long double common = log_gamma_ld(al + N + 0.5L) - log_gamma_ld(al + 0.5L) -
                             log_gamma_ld(N + 1) - log_gamma_ld(be + N - 0.5L);
  const long double ln2 = std::numbers::ln2_v<long double>;
  const long double l1 = common + log_gamma_ld(al + be + N) - 2 * al * ln2 - log_gamma_ld(al + 1.5L);
  const long double l2 = common + log_gamma_ld(al + be + N + 1) - (2 * al + 1) * ln2 - log_gamma_ld(al + 2.5L);
  return {static_cast<double>(std::exp(l1)), static_cast<double>(std::exp(l2))};
}

TaylorE::TaylorE(const EnsembleParams& p)
    : alpha_(p.alpha()), beta_(p.beta()), N_(p.N()) {
  const HCoefficients h = h1_h2(p);
  H1_ = h.H1;
  H2_ = h.H2;
  second_ = (N_ - 1) * H2_ + (alpha_ / 12 + beta_ / 4) * H1_;
}

TaylorValue TaylorE::operator()(double phi) const {
  TaylorValue v;
  const double e1 = 2 * alpha_ + 1;
  const double e3 = e1 + 2;
  v.E = 1 - N_ * H1_ * std::pow(phi, e1) / e1 + N_ * second_ * std::pow(phi, e3) / e3;
  v.Ep = -N_ * H1_ * std::pow(phi, e1 - 1) + N_ * second_ * std::pow(phi, e3 - 1);
  v.Epp = N_ * (e3 - 1) * second_ * std::pow(phi, e3 - 2);
  if (alpha_ != 0) v.Epp += -2 * alpha_ * N_ * H1_ * std::pow(phi, e1 - 2);
  return v;
}

}  // namespace jacobi::special
