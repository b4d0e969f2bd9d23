#include "jacobi/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>

#include <CLI11.hpp>

#include "jacobi/harness.hpp"
#include "jacobi/mc_oracle.hpp"
#include "jacobi/ode_solver.hpp"
#include "jacobi/series_solver.hpp"

namespace jacobi::cli {

namespace {

class UsageError : public Error {
 public:
  using Error::Error;
};

std::vector<double> theta_grid(double N, int points, bool interior) {
  const int n = points > 1 ? points : std::max(2, static_cast<int>(std::ceil(N * 400)) + 1);
  std::vector<double> phis;
  for (int i = 0; i < n; ++i) {
    if (interior && (i == 0 || i + 1 == n)) continue;
    phis.push_back(i + 1 == n ? std::numbers::pi : std::numbers::pi * i / (n - 1));
  }
  return phis;
}

ode::OdeConfig ode_config(const CliRequest& r, double N) {
  ode::OdeConfig c;
  c.eps = r.eps;
  c.reltol = r.reltol;
  c.abstol = r.abstol;
  c.t_end = r.t_end;
  if (r.grid_points > 1) {
    const double th0 = phi_to_theta(t_to_phi(1 - r.eps), N);
    const double th1 = phi_to_theta(t_to_phi(r.t_end), N);
    c.points_per_theta = std::max(2, static_cast<int>(std::ceil(r.grid_points / std::max(th1 - th0, 1e-12))));
  }
  c.validate();
  return c;
}

struct Output {
  explicit Output(const std::string& path) {
    if (path != "-") {
      file.open(path);
      if (!file) throw UsageError("cannot open output file " + path);
    }
  }
  std::ostream& stream() { return file.is_open() ? static_cast<std::ostream&>(file) : std::cout; }
  std::ofstream file;
};

void write_report(const CliRequest& r, const nlohmann::json& j, std::ostream& err) {
  if (r.report.empty()) {
    err << j.dump() << '\n';
    return;
  }
  std::ofstream f(r.report);
  if (!f) throw UsageError("cannot open report file " + r.report);
  f << j.dump(2) << '\n';
}

SolutionGrid mc_grid(const EnsembleParams& p, const CliRequest& r, std::ostream& err) {
  mc::McConfig cfg;
  cfg.samples = r.samples;
  cfg.seed = r.seed;
  const mc::SampleSet s = mc::sample_levels(p, cfg);
  const std::vector<double> phis = theta_grid(p.N(), r.grid_points, false);
  const std::vector<double> cdf = mc::first_cdf(s, phis);
  SolutionGrid g;
  g.method = Method::mc;
  g.params = p;
  for (std::size_t i = 0; i < phis.size(); ++i) {
    GridRow row;
    row.phi = phis[i];
    row.t = phi_to_t(row.phi);
    row.theta = phi_to_theta(row.phi, p.N());
    row.E = 1 - cdf[i];
    // histogram density on the cell to the right of the point
    if (i + 1 < phis.size()) row.nu = (cdf[i + 1] - cdf[i]) / (phis[i + 1] - phis[i]);
    g.rows.push_back(row);
  }
  err << "accepted " << s.size() << " of " << s.proposals << " proposals; DKW bound (delta=1e-3) "
      << mc::dkw_bound(s.size(), 1e-3) << '\n';
  return g;
}

}  // namespace

void write_csv(std::ostream& os, const SolutionGrid& g) {
  os << "theta,phi,t,E,nu\n";
  char buf[160];
  for (const auto& r : g.rows) {
    std::snprintf(buf, sizeof buf, "%.16g,%.16g,%.16g,%.16g,%.16g\n", r.theta, r.phi, r.t, r.E, r.nu);
    os << buf;
  }
}

int run(const CliRequest& r, std::ostream& err) {
  try {
    EnsembleParams p;
    try {
      p = derive(parse_rational(r.a), parse_rational(r.b), parse_rational(r.N));
    } catch (const DomainError& e) {
      throw UsageError(e.what());
    }
    const int degree = r.degree ? *r.degree : series::default_degree(p.N());
    if (degree < 3) throw UsageError("--degree must be at least 3");
    Output out(r.output);
    std::ostream& os = out.stream();

    if (r.method == "rk") {
      const SolutionGrid g = ode::integrate(p, ode_config(r, p.N()));
      for (const auto& w : g.warnings) err << "warning: " << w << '\n';
      write_csv(os, g);
    } else if (r.method == "series") {
      const series::SeriesSolution sol = series::solve(p, degree);
      const SolutionGrid g = series::density_grid(sol, theta_grid(p.N(), r.grid_points, true));
      for (const auto& w : g.warnings) err << "warning: " << w << '\n';
      write_csv(os, g);
    } else if (r.method == "mc") {
      write_csv(os, mc_grid(p, r, err));
    } else if (r.method == "compare") {
      const ode::OdeConfig cfg = ode_config(r, p.N());
      if (p.a() > 0) err << "warning: " << ode::kPositiveAWarning << '\n';
      const series::SeriesSolution sol = series::solve(p, degree);
      harness::ComparisonReport rep;
      std::optional<SolutionGrid> rk;
      try {
        rk = ode::integrate(p, cfg);
        rep = harness::compare_grids(&*rk, sol);
      } catch (const SingularRhs& e) {
        rep = harness::compare_grids(nullptr, sol);
        rep.rk_error = e.what();
      } catch (const StepFailure& e) {
        rep = harness::compare_grids(nullptr, sol);
        rep.rk_error = e.what();
      }
      write_report(r, harness::to_json(rep), err);
      if (rk) write_csv(os, *rk);
      if (rep.verdict == harness::Verdict::rk_failed) {
        err << "rk failed: " << rep.rk_error << '\n';
        return kSolverFailure;
      }
      return rep.verdict == harness::Verdict::agree ? kOk : kDisagree;
    } else if (r.method == "glue") {
      harness::GluePolicy gp;
      if (r.grid_points > 1) gp.points_per_theta = std::max(2, static_cast<int>(std::ceil(r.grid_points / p.N())));
      const SolutionGrid g = harness::glue(p, ode_config(r, p.N()), degree, gp);
      for (const auto& w : g.warnings) err << "warning: " << w << '\n';
      write_report(r, harness::glue_record(g), err);
      write_csv(os, g);
    } else {
      throw UsageError("unknown method '" + r.method + "'");
    }
    return kOk;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const SingularRhs& e) {
    err << "solver failure: " << e.what() << '\n';
    return kSolverFailure;
  } catch (const StepFailure& e) {
    err << "solver failure: " << e.what() << '\n';
    return kSolverFailure;
  } catch (const RecursionStall& e) {
    err << "solver failure: " << e.what() << '\n';
    return kSolverFailure;
  } catch (const GlueFailure& e) {
    err << "solver failure: " << e.what() << '\n';
    return kSolverFailure;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << "solver failure: " << e.what() << '\n';
    return kSolverFailure;
  }
}

int main(int argc, char** argv) {
  CLI::App app{"Distribution of the lowest eigenphase of Jacobi ensembles"};
  CliRequest r;
  app.add_option("--method", r.method, "rk, series, mc, compare or glue")
      ->required()
      ->check(CLI::IsMember({"rk", "series", "mc", "compare", "glue"}));
  app.add_option("--a", r.a, "weight exponent a (p/q or decimal)")->capture_default_str();
  app.add_option("--b", r.b, "weight exponent b (p/q or decimal)")->capture_default_str();
  app.add_option("--N", r.N, "number of levels")->capture_default_str();
  app.add_option("--degree", r.degree, "series truncation degree (default 100 for N <= 2, 300 for N <= 5)");
  app.add_option("--eps", r.eps, "RK start t0 = 1 - eps")->capture_default_str();
  app.add_option("--reltol", r.reltol)->capture_default_str();
  app.add_option("--abstol", r.abstol)->capture_default_str();
  app.add_option("--t-end", r.t_end, "RK stop abscissa")->capture_default_str();
  app.add_option("--samples", r.samples, "accepted Monte Carlo samples")->capture_default_str();
  app.add_option("--seed", r.seed)->capture_default_str();
  app.add_option("--grid-points", r.grid_points, "output rows (default 400 per unit theta)");
  app.add_option("--output", r.output, "CSV path, - for stdout")->capture_default_str();
  app.add_option("--report", r.report, "comparison/glue record path (default stderr)");
  // "--a -1/2": let option values start with '-'
  app.allow_extras(false);
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return kUsage;
  }
  return run(r, std::cerr);
}

}  // namespace jacobi::cli
