#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "jacobi/params.hpp"

namespace jacobi::cli {

struct CliRequest {
  std::string method;  // rk | series | mc | compare | glue
  std::string a = "0", b = "0", N = "1";
  std::optional<int> degree;
  double eps = 1e-7;
  double reltol = 1e-5;
  double abstol = 1e-6;
  double t_end = 0.01;
  long samples = 100000;
  std::uint64_t seed = 0x5eed;
  int grid_points = 0;  // 0: 400 points per unit theta
  std::string output = "-";
  std::string report;  // compare/glue record; empty writes it to stderr
};

enum ExitCode : int { kOk = 0, kUsage = 2, kSolverFailure = 3, kDisagree = 4 };

/// Writes "theta,phi,t,E,nu" rows with 16 significant digits.
void write_csv(std::ostream& os, const SolutionGrid& g);

int run(const CliRequest& req, std::ostream& err);

/// Parses argv and runs; usage errors return kUsage.
int main(int argc, char** argv);

}  // namespace jacobi::cli
