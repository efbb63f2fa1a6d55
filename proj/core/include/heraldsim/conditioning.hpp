#pragma once

#include <vector>

#include "heraldsim/detector.hpp"

namespace heraldsim {

/// Down-conversion strength chi in [0, 1). The pair-number distribution of
/// the source is geometric: P(n pairs) = (1 - chi^2) chi^(2n).
struct SqueezingParam {
  double chi = 0.0;
};

void validate(SqueezingParam chi);

/// Unnormalized diagonal Fock-basis weights of the heralded state. The trace
/// is the heralding probability over the truncated support; tail_bound is a
/// certified upper bound on the trace mass omitted beyond `cutoff`.
struct ConditionalState {
  int cutoff = 0;
  std::vector<double> weights;
  double tail_bound = 0.0;

  double trace() const;
};

/// Single-point evaluation result: fidelity of the heralded state against
/// the one-photon target, heralding probability per attempt, and the
/// truncation certificate, together with the inputs that produced them.
struct PreparationReport {
  double fidelity = 0.0;
  double herald_probability = 0.0;
  int cutoff = 0;
  double truncation_error = 0.0;
  TwoPortConfig config;
  SqueezingParam chi;
};

/// Pair-number distribution (1 - chi^2) chi^(2n) for n = 0..cutoff.
std::vector<double> pair_number_weights(SqueezingParam chi, int cutoff);

/// Smallest N whose geometric tail chi^(2(N+1)) / (1 - chi^2) is <= tolerance.
/// Every signature probability is <= 1, so this bounds everything omitted
/// from the truncated sums. chi = 0 returns 0 (the tail is exactly zero).
int auto_cutoff(SqueezingParam chi, double tolerance);

/// Heralded conditional state: weights[n] = (1 - chi^2) chi^(2n) P_herald(n),
/// truncated at max(1, auto_cutoff(chi, tolerance)) so the one-photon weight
/// always exists. tail_bound = chi^(2(cutoff+1)).
ConditionalState conditional_state(SqueezingParam chi, const TwoPortConfig& cfg,
                                   double tolerance);

constexpr double kDefaultTolerance = 1e-12;

/// Ratio of degenerate-herald detection: the trace must exceed this multiple
/// of the tail bound for the fidelity to be numerically meaningful.
constexpr double kDegenerateTraceFactor = 10.0;

/// Fidelity and heralding probability at one parameter point.
/// Throws DegenerateHeraldError when trace <= 10 * tail_bound (the herald
/// fires with probability indistinguishable from zero, e.g. chi = 0 with no
/// dark counts).
PreparationReport prepare(SqueezingParam chi, const TwoPortConfig& cfg,
                          double tolerance = kDefaultTolerance);

} // namespace heraldsim
