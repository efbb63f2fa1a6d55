#pragma once

#include <array>
#include <cstdint>

#include "heraldsim/conditioning.hpp"
#include "heraldsim/detector.hpp"
#include "heraldsim/rng.hpp"

namespace heraldsim::mc {

/// Event-level simulation setup. pair_cap bounds the sampled pair number;
/// -1 derives it from a 1e-15 geometric tail bound, far below statistical
/// resolution at any realistic trial count.
struct McConfig {
  std::uint64_t trials = 1'000'000;
  std::uint64_t seed = 42;
  SqueezingParam chi;
  TwoPortConfig cfg;
  int pair_cap = -1;
};

struct McEstimate {
  double fidelity_hat = 0.0;
  double fidelity_se = 0.0;
  double herald_prob_hat = 0.0;
  double herald_prob_se = 0.0;
  std::uint64_t herald_count = 0;
  std::array<std::uint64_t, 4> signature_counts{}; // indexed by Signature::index()

  bool operator==(const McEstimate&) const = default;
};

/// Samples the pair number n with probability (1 - chi^2) chi^(2n) by
/// inverse CDF, capped at pair_cap (excess mass <= the pair_cap tail bound).
int sample_pair_number(SqueezingParam chi, CounterRng& rng, int pair_cap);

/// One heralding attempt with n photon pairs: each herald-arm photon is
/// independently reflected with probability cfg.reflectivity and survives
/// its detector's loss; a detector clicks iff at least one photon survived
/// at it or its dark-count draw fired.
Signature simulate_trial(int n, const TwoPortConfig& cfg, CounterRng& rng);

/// Number of trials per RNG stream. Each block draws from a CounterRng
/// keyed on (seed, block index) and blocks are reduced in index order, so
/// the estimate is identical for any worker count.
constexpr std::uint64_t kBlockSize = 1u << 16;

/// Full Monte Carlo run. Fidelity is estimated as the fraction of heralded
/// trials whose pair number was exactly 1; standard errors are binomial.
/// Throws ZeroHeraldsError if no trial heralded. max_workers = 0 uses
/// thread_cap().
McEstimate run(const McConfig& mc, std::size_t max_workers = 0);

} // namespace heraldsim::mc
