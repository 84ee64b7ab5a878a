#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "core/animal.hpp"
#include "core/bigint.hpp"

namespace latcomm {

// Per-trial seed stream: output i of a SplitMix64 generator seeded with
// `root`.  Trials seeded this way are independent streams regardless of how
// they are scheduled across threads.
uint64_t split_seed(uint64_t root, uint64_t index);

// Unbiased draw from [0, n) by rejection against the largest multiple of n
// below 2^64, so results do not depend on the standard library's
// distribution internals.
uint64_t uniform_index(std::mt19937_64& rng, uint64_t n);

struct EdenConfig {
  int d = 2;
  int steps = 0;
  uint64_t seed = 0;
  long long trials = 1;
};

// Growth front of one Eden trial.  The sample pool holds every current
// perimeter edge exactly once, interleaved with stale entries whose outside
// endpoint has since been absorbed; stale entries are dropped lazily when
// drawn, which keeps a uniform draw over the pool uniform over the live
// perimeter.  Each lattice edge enters the pool at most once (when its
// first endpoint joins the animal), so no multiplicity bookkeeping is
// needed.
class EdenState {
 public:
  explicit EdenState(int d, const Site& root = kOrigin);

  const LatticeAnimal& animal() const { return animal_; }
  int step() const { return static_cast<int>(animal_.size()) - 1; }
  int perimeter_size() const { return animal_.perimeter_edge_count(); }

  // Perimeter edges keyed by outside endpoint; the group size at y over the
  // total is the probability the next step absorbs y.  Recomputed from the
  // animal, for checks and small-scale exact work.
  std::map<Site, std::vector<Edge>> perimeter_by_outside_site() const;

  // Full recomputation cross-check of the incremental pool.
  bool consistent() const;

 private:
  friend void eden_step(EdenState& s, std::mt19937_64& rng);

  LatticeAnimal animal_;
  std::vector<Edge> pool_;
};

// One growth step: a uniform live perimeter edge is drawn and its outside
// endpoint joins the animal.  Equivalent to picking site y with probability
// (#perimeter edges containing y) / |p(L)|.
void eden_step(EdenState& s, std::mt19937_64& rng);

struct PerimeterStats {
  EdenConfig cfg;
  std::vector<double> mean;       // index = step, size steps + 1
  std::vector<double> std_error;  // sample standard error of the mean
};

// Monte Carlo estimate of the expected perimeter at each step.  Trials run
// in parallel over fixed chunks and statistics merge in chunk order, so the
// output depends only on (cfg.seed, cfg), not on the thread count.
PerimeterStats perimeter_expectation_mc(const EdenConfig& cfg);

// Exact expected perimeter at steps 0..n for the 2-d process: dynamic
// programming over translation classes of animals with exact rational path
// probabilities.  n is capped at 8 (9-site animals, 9910 classes).
std::vector<BigRat> perimeter_expectation_exact(int n, int d);

struct ExponentFit {
  double alpha;     // fitted exponent in p ~ K * n^alpha
  double k;         // fitted prefactor
  double alpha_se;  // least-squares standard error of alpha
  double residual;  // rms residual in ln space
  int points;       // window size actually fitted
};

// Least-squares fit of ln p against ln n over the top decade of n (indices
// i >= max(1, N/10) for series of length N+1).  series[i] is the value at
// n = i; values inside the window must be positive.
ExponentFit exponent_fit(const std::vector<double>& series);

}  // namespace latcomm
