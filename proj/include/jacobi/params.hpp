#pragma once

#include <array>
#include <cmath>
#include <concepts>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "jacobi/errors.hpp"

namespace jacobi {

using Rational = mpq_class;

/// Parses "p/q", an integer, or a decimal with optional exponent ("-0.5", "1e-3")
/// into the exact rational it denotes. Throws DomainError on malformed input.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);

/// Exact counterparts of the derived constants, present only when a, b, N
/// were supplied as rationals.
struct ExactConstants {
  Rational a, b, N;
  std::array<Rational, 4> bvec;
  Rational e2, e2p, lead_exp;
};

/// Ensemble parameters (a, b, N) of J_N^(a,b) and every constant derived from
/// them. alpha = a + 1/2 and beta = b + 1/2 are the exponents of the angular
/// weight (1 - cos phi)^alpha (1 + cos phi)^beta.
class EnsembleParams {
 public:
  double a() const { return a_; }
  double b() const { return b_; }
  double N() const { return N_; }
  double alpha() const { return a_ + 0.5; }
  double beta() const { return b_ + 0.5; }
  const std::array<double, 4>& bvec() const { return bvec_; }
  double e2() const { return e2_; }
  double e2p() const { return e2p_; }
  /// N (N + b), the power of t in E~_N(t) as t -> 0.
  double lead_exp() const { return lead_exp_; }
  /// b1 b2 b3 b4
  double bprod() const { return bvec_[0] * bvec_[1] * bvec_[2] * bvec_[3]; }

  bool rational_mode() const { return exact_.has_value(); }
  /// Throws DomainError unless rational_mode().
  const ExactConstants& exact() const;

  bool integer_N() const;
  std::string describe() const;

 private:
  friend EnsembleParams derive(const Rational&, const Rational&, const Rational&);
  friend EnsembleParams derive(double, double, double);

  double a_ = 0, b_ = 0, N_ = 1;
  std::array<double, 4> bvec_{};
  double e2_ = 0, e2p_ = 0, lead_exp_ = 0;
  std::optional<ExactConstants> exact_;
};

EnsembleParams derive(const Rational& a, const Rational& b, const Rational& N);
EnsembleParams derive(double a, double b, double N);

// t = (1 + cos phi) / 2 maps phi in [0, pi] onto t in [1, 0].
template <std::floating_point T>
T phi_to_t(T phi) {
  if (!(phi >= T(0) && phi <= std::numbers::pi_v<T>)) {
    throw DomainError("phi_to_t: phi outside [0, pi]");
  }
  // cos^2(phi/2) keeps full relative accuracy of t near phi = 0.
  const T c = std::cos(phi / 2);
  return c * c;
}

template <std::floating_point T>
T t_to_phi(T t) {
  if (!(t >= T(0) && t <= T(1))) {
    throw DomainError("t_to_phi: t outside [0, 1]");
  }
  // 2 atan2(sqrt(1-t), sqrt(t)) is well conditioned at both ends.
  return 2 * std::atan2(std::sqrt(T(1) - t), std::sqrt(t));
}

inline double phi_to_theta(double phi, double N) { return N * phi / std::numbers::pi; }
inline double theta_to_phi(double theta, double N) { return std::numbers::pi * theta / N; }

/// The triple (E~_N(t), h(t), h'(t)) evolved by the ODE method.
struct HamiltonianState {
  double t = 0;
  double E = 0;
  double h = 0;
  double hp = 0;
};

enum class Method { rk, series, mc, asymptotic, glued };
std::string to_string(Method m);

struct GridRow {
  double t = 0;
  double phi = 0;
  double theta = 0;
  double E = 0;
  double nu = 0;  // density of the first eigenphase in phi (unscaled)
};

/// Junction between two methods inside a glued grid.
struct Seam {
  Method left;
  Method right;
  double theta = 0;
  double gap = 0;  // |nu_left - nu_right| at the seam
};

/// Sampled columns produced by one method. Rows are ordered by increasing phi.
struct SolutionGrid {
  Method method = Method::series;
  EnsembleParams params;
  std::vector<GridRow> rows;
  std::vector<Seam> seams;
  std::vector<std::string> warnings;
  std::map<std::string, std::string> meta;

  /// Density of the rescaled eigenphase theta = N phi / pi, i.e. (pi / N) nu.
  double nu_scaled(std::size_t i) const { return std::numbers::pi / params.N() * rows[i].nu; }
};

}  // namespace jacobi
