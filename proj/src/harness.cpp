#include "jacobi/harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <functional>
#include <numbers>

namespace jacobi::harness {

namespace {

constexpr double kPi = std::numbers::pi;

double theta_of_t(double t, double N) { return phi_to_theta(t_to_phi(t), N); }

int theta_points(double span, int per_theta) {
  return std::max(2, static_cast<int>(std::ceil(span * per_theta)) + 1);
}

}  // namespace

std::string to_string(RkStatus s) {
  switch (s) {
    case RkStatus::ok: return "ok";
    case RkStatus::warned: return "warned";
    case RkStatus::failed: return "failed";
  }
  return "?";
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::agree: return "agree";
    case Verdict::disagree: return "disagree";
    case Verdict::rk_failed: return "rk-failed";
  }
  return "?";
}

std::optional<double> interpolate_nu_scaled(const SolutionGrid& g, double theta) {
  const auto& rows = g.rows;
  if (rows.empty()) return std::nullopt;
  const bool ascending = rows.front().theta <= rows.back().theta;
  auto at = [&](std::size_t i) -> const GridRow& { return ascending ? rows[i] : rows[rows.size() - 1 - i]; };
  const std::size_t n = rows.size();
  if (theta < at(0).theta || theta > at(n - 1).theta) return std::nullopt;
  std::size_t lo = 0, hi = n - 1;
  while (hi - lo > 1) {
    const std::size_t mid = (lo + hi) / 2;
    (at(mid).theta <= theta ? lo : hi) = mid;
  }
  const GridRow& a = at(lo);
  const GridRow& b = at(hi);
  const double w = b.theta > a.theta ? (theta - a.theta) / (b.theta - a.theta) : 0.0;
  return kPi / g.params.N() * (a.nu + w * (b.nu - a.nu));
}

ComparisonReport compare_grids(const SolutionGrid* rk, const series::SeriesSolution& sol, const OverlapPolicy& policy) {
  const EnsembleParams& p = sol.params;
  const double N = p.N();
  ComparisonReport r;
  r.params = p;
  r.series_degree = sol.degree;
  r.policy = policy;
  if (p.a() > 0) r.rk_status = RkStatus::warned;
  if (!rk) {
    r.rk_status = RkStatus::failed;
    r.verdict = Verdict::rk_failed;
    return r;
  }
  r.warnings = rk->warnings;

  double rk_min = INFINITY, rk_max = -INFINITY;
  for (const auto& row : rk->rows) {
    rk_min = std::min(rk_min, row.theta);
    rk_max = std::max(rk_max, row.theta);
  }
  r.theta_lo = std::max({policy.lo_frac * N, theta_of_t(policy.trust_t, N), rk_min});
  r.theta_hi = std::min(policy.hi_frac * N, rk_max);
  if (!(r.theta_hi > r.theta_lo)) {
    r.warnings.emplace_back("empty overlap window");
    r.sup_diff_nu = INFINITY;
    r.l2_diff_nu = INFINITY;
    r.verdict = Verdict::disagree;
    return r;
  }

  const int n = theta_points(r.theta_hi - r.theta_lo, policy.points_per_theta);
  double sum_sq = 0;
  for (int i = 0; i < n; ++i) {
    const double th = r.theta_lo + (r.theta_hi - r.theta_lo) * i / (n - 1);
    const double t = phi_to_t(theta_to_phi(th, N));
    const series::SeriesValue v = series::evaluate(sol, t);
    const double nu_series = kPi / N * std::sqrt(t * (1 - t)) * v.Ep;
    const double nu_rk = *interpolate_nu_scaled(*rk, th);
    const double d = std::abs(nu_rk - nu_series);
    if (d > r.sup_diff_nu) {
      r.sup_diff_nu = d;
      r.sup_theta = th;
    }
    sum_sq += d * d;
  }
  r.points = static_cast<std::size_t>(n);
  r.l2_diff_nu = std::sqrt(sum_sq / n);
  r.verdict = (r.rk_status == RkStatus::ok && r.sup_diff_nu <= policy.threshold) ? Verdict::agree : Verdict::disagree;
  return r;
}

ComparisonReport compare(const EnsembleParams& p, const ode::OdeConfig& cfg, int degree, const OverlapPolicy& policy) {
  const series::SeriesSolution sol = series::solve(p, degree);
  try {
    const SolutionGrid rk = ode::integrate(p, cfg);
    return compare_grids(&rk, sol, policy);
  } catch (const SingularRhs& e) {
    ComparisonReport r = compare_grids(nullptr, sol, policy);
    r.rk_error = e.what();
    return r;
  } catch (const StepFailure& e) {
    ComparisonReport r = compare_grids(nullptr, sol, policy);
    r.rk_error = e.what();
    return r;
  }
}

namespace {

nlohmann::json params_json(const EnsembleParams& p) {
  nlohmann::json j;
  if (p.rational_mode()) {
    const auto& ex = p.exact();
    j["a"] = jacobi::to_string(ex.a);
    j["b"] = jacobi::to_string(ex.b);
    j["N"] = jacobi::to_string(ex.N);
  } else {
    j["a"] = p.a();
    j["b"] = p.b();
    j["N"] = p.N();
  }
  return j;
}

}  // namespace

nlohmann::json to_json(const ComparisonReport& r) {
  nlohmann::json j;
  j["record"] = "comparison";
  j["params"] = params_json(r.params);
  j["overlap_theta"] = {r.theta_lo, r.theta_hi};
  j["sup_diff_nu"] = r.sup_diff_nu;
  j["sup_theta"] = r.sup_theta;
  j["l2_diff_nu"] = r.l2_diff_nu;
  j["points"] = r.points;
  j["rk_status"] = to_string(r.rk_status);
  j["series_degree"] = r.series_degree;
  j["verdict"] = to_string(r.verdict);
  j["policy"] = {{"threshold", r.policy.threshold},
                 {"window_frac", {r.policy.lo_frac, r.policy.hi_frac}},
                 {"series_trust_t", r.policy.trust_t},
                 {"points_per_theta", r.policy.points_per_theta},
                 {"origin", "tool policy, not a published tolerance"}};
  if (!r.rk_error.empty()) j["rk_error"] = r.rk_error;
  j["warnings"] = r.warnings;
  return j;
}

double asymptotic_nu(const special::TaylorE& taylor, double phi) { return -taylor(phi).Ep; }

double series_reach(const series::SeriesSolution& sol, double trust_t, double tol) {
  const double N = sol.params.N();
  const int coarse = std::max(1, 3 * sol.degree / 4);
  double reach = trust_t;
  // walk toward t = 1 in small phi steps until the estimate fails
  const double phi0 = t_to_phi(trust_t);
  constexpr int kSteps = 2000;
  for (int i = 1; i < kSteps; ++i) {
    const double phi = phi0 * (1 - static_cast<double>(i) / kSteps);
    const double t = phi_to_t(phi);
    const double s = kPi / N * std::sqrt(t * (1 - t));
    const double d = s * std::abs(series::evaluate(sol, t).Ep - series::evaluate(sol, t, coarse).Ep);
    if (!(d <= tol)) break;
    reach = t;
  }
  return reach;
}

namespace {

struct Piece {
  Method method;
  // nullopt where the piece is undefined
  std::function<std::optional<GridRow>(double theta)> row;
};

}  // namespace

SolutionGrid glue_pieces(const EnsembleParams& p, const SolutionGrid* rk, const series::SeriesSolution& sol,
                         const GluePolicy& policy) {
  const double N = p.N();
  const special::TaylorE taylor(p);
  const double L = p.lead_exp();
  const double reach = series_reach(sol, policy.series_max_t, policy.series_tol);

  auto base = [&](double theta) {
    GridRow r;
    r.theta = theta;
    r.phi = std::min(theta_to_phi(theta, N), kPi);
    r.t = phi_to_t(r.phi);
    return r;
  };

  std::vector<Piece> pieces;
  pieces.push_back({Method::asymptotic, [&](double theta) -> std::optional<GridRow> {
                      GridRow r = base(theta);
                      if (r.phi == 0 && p.alpha() < 0) return std::nullopt;
                      const special::TaylorValue v = taylor(r.phi);
                      r.E = v.E;
                      r.nu = -v.Ep;
                      return r;
                    }});
  if (rk) {
    pieces.push_back({Method::rk, [&](double theta) -> std::optional<GridRow> {
                        const auto nu = interpolate_nu_scaled(*rk, theta);
                        if (!nu) return std::nullopt;
                        GridRow r = base(theta);
                        r.nu = *nu * N / kPi;
                        // E by linear interpolation in theta as well
                        const auto& rows = rk->rows;
                        auto it = std::lower_bound(rows.begin(), rows.end(), theta,
                                                   [](const GridRow& g, double th) { return g.theta < th; });
                        if (it == rows.begin()) {
                          r.E = it->E;
                        } else if (it == rows.end()) {
                          r.E = rows.back().E;
                        } else {
                          const auto& a = *(it - 1);
                          const double w = (theta - a.theta) / (it->theta - a.theta);
                          r.E = a.E + w * (it->E - a.E);
                        }
                        return r;
                      }});
  }
  pieces.push_back({Method::series, [&](double theta) -> std::optional<GridRow> {
                      GridRow r = base(theta);
                      if (r.t > reach) return std::nullopt;
                      if (r.t > 0) {
                        const series::SeriesValue v = series::evaluate(sol, r.t);
                        r.E = v.E;
                        r.nu = std::sqrt(r.t * (1 - r.t)) * v.Ep;
                        return r;
                      }
                      // phi = pi: nu ~ C L t^(L - 1/2)
                      r.E = 0;
                      if (L < 0.5) return std::nullopt;
                      r.nu = L == 0.5 ? sol.lead_coef * L : 0.0;
                      return r;
                    }});

  const int n = theta_points(N, policy.points_per_theta);
  std::vector<double> thetas(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) thetas[i] = i + 1 == n ? N : N * i / (n - 1);

  // Seam positions: index of the first grid point owned by each later piece.
  std::vector<std::size_t> start(pieces.size(), 0);
  std::vector<Seam> seams;
  std::size_t from = 0;
  for (std::size_t k = 1; k < pieces.size(); ++k) {
    double best = INFINITY;
    std::size_t best_i = thetas.size();
    for (std::size_t i = from + 1; i < thetas.size(); ++i) {
      const auto l = pieces[k - 1].row(thetas[i]);
      const auto r = pieces[k].row(thetas[i]);
      if (!l || !r) continue;
      const double gap = kPi / N * std::abs(l->nu - r->nu);
      if (gap < best) {
        best = gap;
        best_i = i;
      }
    }
    if (best_i == thetas.size()) {
      throw GlueFailure("no overlap between " + jacobi::to_string(pieces[k - 1].method) + " and " +
                        jacobi::to_string(pieces[k].method) + " pieces");
    }
    if (best > policy.max_gap) {
      throw GlueFailure("smallest " + jacobi::to_string(pieces[k - 1].method) + "/" + jacobi::to_string(pieces[k].method) +
                        " seam gap " + std::to_string(best) + " exceeds " + std::to_string(policy.max_gap));
    }
    start[k] = best_i;
    seams.push_back({pieces[k - 1].method, pieces[k].method, thetas[best_i], best});
    from = best_i;
  }

  SolutionGrid g;
  g.method = Method::glued;
  g.params = p;
  g.seams = seams;
  if (rk) g.warnings = rk->warnings;
  std::size_t k = 0;
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    while (k + 1 < pieces.size() && i >= start[k + 1]) ++k;
    if (auto row = pieces[k].row(thetas[i])) g.rows.push_back(*row);
  }
  std::string pieces_used;
  for (const auto& pc : pieces) pieces_used += (pieces_used.empty() ? "" : ",") + jacobi::to_string(pc.method);
  g.meta["pieces"] = pieces_used;
  g.meta["series_degree"] = std::to_string(sol.degree);
  g.meta["series_reach_t"] = std::to_string(reach);
  for (std::size_t s = 0; s < seams.size(); ++s) {
    g.meta["seam" + std::to_string(s)] = jacobi::to_string(seams[s].left) + "/" + jacobi::to_string(seams[s].right) +
                                         " theta=" + std::to_string(seams[s].theta) +
                                         " gap=" + std::to_string(seams[s].gap);
  }
  return g;
}

SolutionGrid glue(const EnsembleParams& p, const ode::OdeConfig& cfg, int degree, const GluePolicy& policy) {
  const series::SeriesSolution sol = series::solve(p, degree);
  std::optional<SolutionGrid> rk;
  std::string note;
  if (p.a() > 0) {
    note = "RK excluded for a > 0";
  } else {
    try {
      rk = ode::integrate(p, cfg);
    } catch (const SingularRhs& e) {
      note = std::string("RK excluded: ") + e.what();
    } catch (const StepFailure& e) {
      note = std::string("RK excluded: ") + e.what();
    }
  }
  SolutionGrid g = glue_pieces(p, rk ? &*rk : nullptr, sol, policy);
  if (!note.empty()) g.warnings.push_back(note);
  return g;
}

nlohmann::json glue_record(const SolutionGrid& g) {
  nlohmann::json j;
  j["record"] = "glue";
  j["params"] = params_json(g.params);
  j["rows"] = g.rows.size();
  j["mass"] = mass(g);
  nlohmann::json seams = nlohmann::json::array();
  for (const auto& s : g.seams) {
    seams.push_back({{"left", jacobi::to_string(s.left)}, {"right", jacobi::to_string(s.right)}, {"theta", s.theta}, {"gap", s.gap}});
  }
  j["seams"] = seams;
  j["meta"] = g.meta;
  j["warnings"] = g.warnings;
  return j;
}

double validate_mc(const EnsembleParams& p, const mc::McConfig& cfg, const std::vector<double>& phis, int degree) {
  if (cfg.samples < 1) throw DomainError("validate_mc: need at least one sample");
  const series::SeriesSolution sol = series::solve(p, degree);
  const double reach = series_reach(sol, series::kTrustedT, GluePolicy{}.series_tol);
  const std::vector<double> cdf = mc::empirical_first_cdf(p, cfg, phis);
  double sup = 0;
  std::size_t used = 0;
  for (std::size_t i = 0; i < phis.size(); ++i) {
    const double t = phi_to_t(phis[i]);
    if (t > reach) continue;  // truncated series unreliable near t = 1
    const double E = t > 0 ? series::evaluate(sol, t).E : 0.0;
    sup = std::max(sup, std::abs(cdf[i] - (1 - E)));
    ++used;
  }
  if (used == 0) throw DomainError("validate_mc: no abscissa inside the series range");
  return sup;
}

double mass(const SolutionGrid& g) {
  double m = 0;
  for (std::size_t i = 1; i < g.rows.size(); ++i) {
    m += 0.5 * (g.rows[i].nu + g.rows[i - 1].nu) * std::abs(g.rows[i].phi - g.rows[i - 1].phi);
  }
  return m;
}

}  // namespace jacobi::harness
