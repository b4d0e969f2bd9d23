#pragma once

#include <string>
#include <vector>

#include "jacobi/params.hpp"

namespace jacobi::ode {

struct OdeConfig {
  double eps = 1e-7;       // t0 = 1 - eps
  double t_end = 0.01;
  double reltol = 1e-5;
  double abstol = 1e-6;
  long max_steps = 1000000;
  double radicand_clamp = 1e-12;
  /// Output abscissae; empty selects a uniform theta grid with
  /// points_per_theta points per unit theta between t0 and t_end.
  std::vector<double> sample_t;
  int points_per_theta = 400;

  /// Throws DomainError when a field is out of range.
  void validate() const;
};

/// State at t0 = 1 - eps built from the small-phi expansion of E_N.
/// Appends a warning when a > 0.
HamiltonianState initial_state(const EnsembleParams& p, const OdeConfig& cfg,
                               std::vector<std::string>* warnings = nullptr);

struct Derivative {
  double dE = 0;
  double dh = 0;
  double dhp = 0;
};

/// Right-hand side of the (E~, h, h') system, positive square-root branch.
Derivative rhs(double t, const HamiltonianState& H, const EnsembleParams& p,
               double radicand_clamp = 1e-12);

inline constexpr const char* kPositiveAWarning =
    "a > 0: the sigma-form integration is known to break down in this regime; "
    "check the result against the series method";

/// Dormand-Prince 5(4) integration from t0 down to t_end; rows ordered by
/// increasing phi. Throws StepFailure or SingularRhs.
SolutionGrid integrate(const EnsembleParams& p, const OdeConfig& cfg);

}  // namespace jacobi::ode
