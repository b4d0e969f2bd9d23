#pragma once

#include "jacobi/params.hpp"

namespace jacobi::special {

/// log Gamma(x) for x > 0, evaluated in extended precision and rounded.
double log_gamma(double x);

/// log G(x) of the Barnes G-function for x > 0. Upward recursion
/// G(x+1) = Gamma(x) G(x) from x + m >= 10, then the asymptotic series.
double log_barnes_g(double x);

// Selberg's integral
//   S_n(rho, eta; gamma) = int_[0,1]^n prod x^(rho-1) (1-x)^(eta-1) prod |x_k - x_j|^(2 gamma)
// by the gamma product formula. n is a positive integer.
double log_selberg(int n, double rho, double eta, double gamma);
double selberg(int n, double rho, double eta, double gamma);

/// S_N(rho, eta; 1) for real N > 0 through Barnes G.
double log_selberg_noninteger(double N, double rho, double eta);
double selberg_noninteger(double N, double rho, double eta);

/// Aomoto's extension with gamma = 1: the Selberg integrand times x_1 ... x_R.
double aomoto(int n, int R, double rho, double eta);

/// log S_N(rho, eta; 1), product formula for integer N and Barnes G otherwise.
double log_selberg_unit(double N, double rho, double eta);

/// Normalization constant C_N of the angular joint density
///   C_N prod (1 - cos phi_j)^alpha (1 + cos phi_j)^beta prod (cos phi_k - cos phi_j)^2.
double log_normalization(const EnsembleParams& p);
double normalization(const EnsembleParams& p);

struct HCoefficients {
  double H1 = 0;
  double H2 = 0;
};

/// Gamma-ratio coefficients of the small-phi expansion of the one-level integral I(1).
/// Requires N >= 1.
HCoefficients h1_h2(const EnsembleParams& p);

struct TaylorValue {
  double E = 0;
  double Ep = 0;   // dE/dphi
  double Epp = 0;  // d^2E/dphi^2
};

/// Two-term small-phi expansion of the gap probability
///   E(phi) = 1 - N (H1 phi^(2a+1)/(2a+1) - [(N-1) H2 + (a/12 + b/4) H1] phi^(2a+3)/(2a+3))
/// with a = alpha, b = beta; derivatives are those of the truncated polynomial.
class TaylorE {
 public:
  explicit TaylorE(const EnsembleParams& p);

  double H1() const { return H1_; }
  double H2() const { return H2_; }
  TaylorValue operator()(double phi) const;

 private:
  double H1_, H2_, alpha_, beta_, N_;
  double second_;  // (N-1) H2 + (alpha/12 + beta/4) H1
};

inline TaylorValue taylor_E(const EnsembleParams& p, double phi) { return TaylorE(p)(phi); }

}  // namespace jacobi::special
