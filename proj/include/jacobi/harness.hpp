#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "jacobi/mc_oracle.hpp"
#include "jacobi/ode_solver.hpp"
#include "jacobi/params.hpp"
#include "jacobi/series_solver.hpp"
#include "jacobi/special.hpp"

namespace jacobi::harness {

/// Comparison settings. The numeric thresholds are choices of this tool.
struct OverlapPolicy {
  double lo_frac = 0.25;  // window [lo_frac N, hi_frac N] in theta
  double hi_frac = 0.75;
  double trust_t = series::kTrustedT;
  double threshold = 5e-3;  // on sup |nu_rk - nu_series|, theta-scaled density
  int points_per_theta = 400;
};

enum class RkStatus { ok, warned, failed };
enum class Verdict { agree, disagree, rk_failed };
std::string to_string(RkStatus s);
std::string to_string(Verdict v);

struct ComparisonReport {
  EnsembleParams params;
  double theta_lo = 0, theta_hi = 0;
  double sup_diff_nu = 0;
  double l2_diff_nu = 0;  // root mean square over the window points
  double sup_theta = 0;   // where the sup is attained
  std::size_t points = 0;
  RkStatus rk_status = RkStatus::ok;
  int series_degree = 0;
  Verdict verdict = Verdict::disagree;
  OverlapPolicy policy;
  std::string rk_error;
  std::vector<std::string> warnings;
};

/// Linear interpolation of the theta-scaled density of g at theta; rows may
/// come in either order. nullopt outside the sampled range.
std::optional<double> interpolate_nu_scaled(const SolutionGrid& g, double theta);

/// Compares an RK grid (nullptr when the run failed) with a series solution.
ComparisonReport compare_grids(const SolutionGrid* rk, const series::SeriesSolution& sol,
                               const OverlapPolicy& policy = {});

/// Runs both methods and compares them on the overlap window.
ComparisonReport compare(const EnsembleParams& p, const ode::OdeConfig& cfg, int degree,
                         const OverlapPolicy& policy = {});

nlohmann::json to_json(const ComparisonReport& r);

struct GluePolicy {
  double max_gap = 1e-2;  // on the theta-scaled density
  int points_per_theta = 400;
  /// The series piece is used for t <= series_max_t and beyond it wherever
  /// the truncation estimate |nu_D - nu_(3D/4)| stays below series_tol.
  double series_max_t = series::kTrustedT;
  double series_tol = 5e-3;
};

/// Largest t on a fine grid up to which the truncation estimate of the
/// theta-scaled density stays below tol (at least trust_t).
double series_reach(const series::SeriesSolution& sol, double trust_t, double tol);

/// Density of the two-term small-phi expansion, -dE/dphi.
double asymptotic_nu(const special::TaylorE& taylor, double phi);

/// Stitches asymptotic, RK (when rk is non-null) and series pieces on a
/// uniform theta grid over [0, N]; seams sit where adjacent pieces differ
/// least. Throws GlueFailure when a seam gap exceeds max_gap.
SolutionGrid glue_pieces(const EnsembleParams& p, const SolutionGrid* rk, const series::SeriesSolution& sol,
                         const GluePolicy& policy = {});

/// Runs the methods and glues them; RK is left out when it fails or a > 0.
SolutionGrid glue(const EnsembleParams& p, const ode::OdeConfig& cfg, int degree, const GluePolicy& policy = {});

nlohmann::json glue_record(const SolutionGrid& g);

/// sup of |empirical first-phase CDF - (1 - E_series)| over the phis whose t
/// lies within series_reach (default glue tolerance).
double validate_mc(const EnsembleParams& p, const mc::McConfig& cfg, const std::vector<double>& phis, int degree);

/// Trapezoid integral of nu over phi across the grid rows.
double mass(const SolutionGrid& g);

}  // namespace jacobi::harness
