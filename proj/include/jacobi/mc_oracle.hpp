#pragma once

#include <cstdint>
#include <vector>

#include "jacobi/params.hpp"

namespace jacobi::mc {

// An unnormalized density value exceeded the accept-reject envelope.
class EnvelopeViolation : public Error {
 public:
  using Error::Error;
};

/// Accept-reject sampler settings. Streams come from std::mt19937_64, one
/// per shard, seeded through SplitMix64 from (seed, shard index); the shard
/// count is fixed so results do not depend on the number of worker threads.
struct McConfig {
  long samples = 100000;  // accepted tuples
  std::uint64_t seed = 0x5eed;
  double envelope_scale = 1.1;
  int shards = 64;
  unsigned workers = 0;  // 0: hardware concurrency
};

inline constexpr int kMaxN = 6;

struct SampleSet {
  int N = 0;
  std::vector<double> phis;  // samples x N, row-major
  double envelope = 0;
  int restarts = 0;          // envelope inflations
  long proposals = 0;

  long size() const { return N ? static_cast<long>(phis.size()) / N : 0; }
  const double* tuple(long i) const { return phis.data() + i * N; }
};

/// log of prod (1 - cos phi_j)^alpha (1 + cos phi_j)^beta prod_{j<k} (cos phi_k - cos phi_j)^2.
double log_density(const EnsembleParams& p, const double* phi);

/// Numerical maximum of the unnormalized density on (0, pi)^N.
double density_max(const EnsembleParams& p, std::uint64_t seed);

/// Requires integer N in [1, 6], alpha >= 0 and beta >= 0 (bounded density).
SampleSet sample_levels(const EnsembleParams& p, const McConfig& cfg);

/// Fraction of tuples whose smallest component is <= phi, for each phi.
std::vector<double> first_cdf(const SampleSet& s, const std::vector<double>& phis);
std::vector<double> empirical_first_cdf(const EnsembleParams& p, const McConfig& cfg, const std::vector<double>& phis);

/// sqrt(ln(2/delta) / (2M)).
double dkw_bound(long M, double delta);

/// SplitMix64 output for state x (one step).
std::uint64_t splitmix64(std::uint64_t x);

}  // namespace jacobi::mc
