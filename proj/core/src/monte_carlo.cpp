#include "heraldsim/monte_carlo.hpp"

#include <cmath>
#include <vector>

#include "heraldsim/errors.hpp"
#include "heraldsim/threads.hpp"

namespace heraldsim::mc {

namespace {

constexpr double kPairCapTailBound = 1e-15;

struct BlockTally {
  std::array<std::uint64_t, 4> signature_counts{};
  std::uint64_t herald_count = 0;
  std::uint64_t herald_single_pair = 0;
};

double binomial_se(double p, std::uint64_t n) {
  return n == 0 ? 0.0 : std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

} // namespace

int sample_pair_number(SqueezingParam chi, CounterRng& rng, int pair_cap) {
  const double u = rng.uniform();
  const double chi2 = chi.chi * chi.chi;
  // Inverse CDF walk along the geometric law, capped at pair_cap.
  double term = 1.0 - chi2;
  double cum = term;
  int n = 0;
  while (u >= cum && n < pair_cap) {
    term *= chi2;
    cum += term;
    ++n;
  }
  return n;
}

Signature simulate_trial(int n, const TwoPortConfig& cfg, CounterRng& rng) {
  int survivors_reflected = 0;
  int survivors_transmitted = 0;
  for (int k = 0; k < n; ++k) {
    const bool reflected = rng.bernoulli(cfg.reflectivity);
    const DetectorParams& det = reflected ? cfg.detector_reflected : cfg.detector_transmitted;
    if (!rng.bernoulli(det.loss)) {
      if (reflected) ++survivors_reflected;
      else ++survivors_transmitted;
    }
  }
  const bool dark1 = rng.bernoulli(cfg.detector_reflected.dark_count);
  const bool dark2 = rng.bernoulli(cfg.detector_transmitted.dark_count);
  return Signature{survivors_reflected >= 1 || dark1,
                   survivors_transmitted >= 1 || dark2};
}

McEstimate run(const McConfig& mc, std::size_t max_workers) {
  if (mc.trials < 1) throw InvalidParameterError("trials must be >= 1");
  validate(mc.chi);
  validate(mc.cfg);
  int pair_cap = mc.pair_cap;
  if (pair_cap < 0) pair_cap = auto_cutoff(mc.chi, kPairCapTailBound);

  const std::uint64_t blocks = (mc.trials + kBlockSize - 1) / kBlockSize;
  std::vector<BlockTally> tallies(blocks);

  parallel_for_indexed(blocks, max_workers, [&](std::size_t b) {
    CounterRng rng(mc.seed, b);
    const std::uint64_t begin = static_cast<std::uint64_t>(b) * kBlockSize;
    const std::uint64_t end = std::min(begin + kBlockSize, mc.trials);
    BlockTally tally;
    for (std::uint64_t t = begin; t < end; ++t) {
      const int n = sample_pair_number(mc.chi, rng, pair_cap);
      const Signature sig = simulate_trial(n, mc.cfg, rng);
      ++tally.signature_counts[static_cast<std::size_t>(sig.index())];
      if (sig == Signature::herald()) {
        ++tally.herald_count;
        if (n == 1) ++tally.herald_single_pair;
      }
    }
    tallies[b] = tally;
  });

  // Reduce in block order.
  McEstimate est;
  std::uint64_t herald_single = 0;
  for (const BlockTally& tally : tallies) {
    for (std::size_t s = 0; s < 4; ++s) est.signature_counts[s] += tally.signature_counts[s];
    est.herald_count += tally.herald_count;
    herald_single += tally.herald_single_pair;
  }

  if (est.herald_count == 0) {
    throw ZeroHeraldsError("no trial produced the herald signature in " +
                           std::to_string(mc.trials) + " trials");
  }

  est.herald_prob_hat = static_cast<double>(est.herald_count) / static_cast<double>(mc.trials);
  est.herald_prob_se = binomial_se(est.herald_prob_hat, mc.trials);
  est.fidelity_hat = static_cast<double>(herald_single) / static_cast<double>(est.herald_count);
  est.fidelity_se = binomial_se(est.fidelity_hat, est.herald_count);
  return est;
}

} // namespace heraldsim::mc
