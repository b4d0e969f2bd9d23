#include "jacobi/mc_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <thread>

namespace jacobi::mc {

namespace {

constexpr double kPi = std::numbers::pi;

// (0, 1) from the top 53 bits.
double uniform01(std::mt19937_64& g) { return (static_cast<double>(g() >> 11) + 0.5) * 0x1.0p-53; }

int checked_n(const EnsembleParams& p) {
  const double N = p.N();
  if (!p.integer_N() || N < 1 || N > kMaxN) throw DomainError("Monte Carlo oracle needs integer N in [1, 6]");
  if (p.alpha() < 0 || p.beta() < 0) throw DomainError("Monte Carlo oracle needs a, b >= -1/2 (bounded density)");
  return static_cast<int>(N);
}

struct ShardResult {
  std::vector<double> phis;
  long proposals = 0;
  bool violated = false;
};

ShardResult run_shard(const EnsembleParams& p, int n, long want, std::uint64_t seed, double log_m) {
  std::mt19937_64 g(seed);
  ShardResult r;
  r.phis.reserve(static_cast<std::size_t>(want * n));
  std::vector<double> x(static_cast<std::size_t>(n));
  long got = 0;
  while (got < want) {
    for (auto& v : x) v = kPi * uniform01(g);
    const double lf = log_density(p, x.data());
    ++r.proposals;
    if (lf > log_m) {
      r.violated = true;
      return r;
    }
    if (std::log(uniform01(g)) < lf - log_m) {
      r.phis.insert(r.phis.end(), x.begin(), x.end());
      ++got;
    }
  }
  return r;
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double log_density(const EnsembleParams& p, const double* phi) {
  const int n = static_cast<int>(p.N());
  double s = 0;
  for (int j = 0; j < n; ++j) {
    const double c = std::cos(phi[j]);
    if (p.alpha() != 0) s += p.alpha() * std::log1p(-c);
    if (p.beta() != 0) s += p.beta() * std::log1p(c);
    for (int k = 0; k < j; ++k) s += 2 * std::log(std::abs(c - std::cos(phi[k])));
  }
  return s;
}

double density_max(const EnsembleParams& p, std::uint64_t seed) {
  const int n = checked_n(p);
  std::mt19937_64 g(splitmix64(seed ^ 0xe11e1095ULL));
  constexpr int kStarts = 4000, kKeep = 16;
  std::vector<std::pair<double, std::vector<double>>> pts;
  for (int i = 0; i < kStarts; ++i) {
    std::vector<double> x(static_cast<std::size_t>(n));
    for (auto& v : x) v = kPi * uniform01(g);
    std::sort(x.begin(), x.end());
    pts.emplace_back(log_density(p, x.data()), std::move(x));
  }
  std::partial_sort(pts.begin(), pts.begin() + kKeep, pts.end(),
                    [](const auto& l, const auto& r) { return l.first > r.first; });
  double best = -INFINITY;
  for (int i = 0; i < kKeep; ++i) {
    auto [f, x] = pts[i];
    // compass search, coordinates kept inside [0, pi]
    for (double step = 0.25; step > 1e-10;) {
      bool moved = false;
      for (int d = 0; d < n; ++d) {
        for (double sgn : {1.0, -1.0}) {
          std::vector<double> y = x;
          y[d] = std::clamp(y[d] + sgn * step, 0.0, kPi);
          const double fy = log_density(p, y.data());
          if (fy > f) {
            f = fy;
            x = std::move(y);
            moved = true;
          }
        }
      }
      if (!moved) step /= 2;
    }
    best = std::max(best, f);
  }
  return best;
}

SampleSet sample_levels(const EnsembleParams& p, const McConfig& cfg) {
  const int n = checked_n(p);
  if (cfg.samples < 1) throw DomainError("samples must be at least 1");
  if (!(cfg.envelope_scale >= 1)) throw DomainError("envelope_scale must be >= 1");
  if (cfg.shards < 1) throw DomainError("shards must be at least 1");

  SampleSet out;
  out.N = n;
  double log_m = density_max(p, cfg.seed) + std::log(cfg.envelope_scale);
  const unsigned workers = std::max(1u, cfg.workers ? cfg.workers : std::thread::hardware_concurrency());

  for (;;) {
    std::vector<ShardResult> res(static_cast<std::size_t>(cfg.shards));
    auto job = [&](int s) {
      const long want = cfg.samples / cfg.shards + (s < cfg.samples % cfg.shards ? 1 : 0);
      const std::uint64_t seed = splitmix64(splitmix64(cfg.seed) ^ static_cast<std::uint64_t>(s));
      res[static_cast<std::size_t>(s)] = run_shard(p, n, want, seed, log_m);
    };
    if (workers == 1) {
      for (int s = 0; s < cfg.shards; ++s) job(s);
    } else {
      std::vector<std::thread> pool;
      for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
          for (int s = static_cast<int>(w); s < cfg.shards; s += static_cast<int>(workers)) job(s);
        });
      }
      for (auto& th : pool) th.join();
    }
    bool violated = false;
    for (const auto& r : res) violated = violated || r.violated;
    if (violated) {
      log_m += std::log(2.0);
      ++out.restarts;
      continue;
    }
    for (auto& r : res) {
      out.phis.insert(out.phis.end(), r.phis.begin(), r.phis.end());
      out.proposals += r.proposals;
    }
    out.envelope = std::exp(log_m);
    return out;
  }
}

std::vector<double> first_cdf(const SampleSet& s, const std::vector<double>& phis) {
  const long m = s.size();
  if (m < 1) throw DomainError("empty sample set");
  std::vector<double> mins(static_cast<std::size_t>(m));
  for (long i = 0; i < m; ++i) mins[static_cast<std::size_t>(i)] = *std::min_element(s.tuple(i), s.tuple(i) + s.N);
  std::sort(mins.begin(), mins.end());
  std::vector<double> out;
  out.reserve(phis.size());
  for (double phi : phis) {
    const auto k = std::upper_bound(mins.begin(), mins.end(), phi) - mins.begin();
    out.push_back(static_cast<double>(k) / static_cast<double>(m));
  }
  return out;
}

std::vector<double> empirical_first_cdf(const EnsembleParams& p, const McConfig& cfg, const std::vector<double>& phis) {
  return first_cdf(sample_levels(p, cfg), phis);
}

double dkw_bound(long M, double delta) {
  if (M < 1 || !(delta > 0 && delta < 1)) throw DomainError("dkw_bound: need M >= 1 and delta in (0, 1)");
  return std::sqrt(std::log(2 / delta) / (2.0 * static_cast<double>(M)));
}

}  // namespace jacobi::mc
