#pragma once

#include <array>
#include <vector>

namespace heraldsim {

/// Bucket (non-number-resolving) detector: it only distinguishes "no click"
/// from "click". `loss` is the per-photon probability that an arriving photon
/// is NOT registered (detection efficiency is 1 - loss); `dark_count` is the
/// probability of a spurious click within one heralding window, independent
/// of photon arrivals.
struct DetectorParams {
  double loss = 0.0;
  double dark_count = 0.0;
};

/// Beamsplitter with a bucket detector on each output port. `reflectivity`
/// is the probability that a single photon is routed to the reflected port.
/// The two detectors may differ; the textbook case uses identical ones.
struct TwoPortConfig {
  double reflectivity = 0.5;
  DetectorParams detector_reflected;
  DetectorParams detector_transmitted;
};

/// Joint click/no-click outcome of the two detectors. The herald signature
/// is a click on the reflected port with the transmitted port silent.
struct Signature {
  bool reflected_clicked = false;
  bool transmitted_clicked = false;

  static constexpr Signature herald() { return {true, false}; }
  static constexpr std::array<Signature, 4> all() {
    return {Signature{false, false}, Signature{false, true},
            Signature{true, false}, Signature{true, true}};
  }

  /// Dense index in [0, 4) matching the order of all().
  constexpr int index() const {
    return (reflected_clicked ? 2 : 0) + (transmitted_clicked ? 1 : 0);
  }

  constexpr bool operator==(const Signature&) const = default;
};

/// Diagonal POVM of the two-port measurement: probs[s][n] is the probability
/// of observing signature s given n incident photons, for n = 0..cutoff.
/// For every n the four entries sum to 1 (completeness).
struct SignatureTable {
  int cutoff = 0;
  std::array<std::vector<double>, 4> probs;

  const std::vector<double>& column(Signature s) const { return probs[s.index()]; }
  const std::vector<double>& herald_column() const { return probs[Signature::herald().index()]; }
};

void validate(const DetectorParams& det);
void validate(const TwoPortConfig& cfg);

/// Probability that a bucket detector clicks when `photons_arriving` photons
/// reach it: 1 - loss^i * (1 - dark_count), with the 0^0 = 1 convention so
/// that zero photons click only via a dark count.
double single_detector_click_prob(int photons_arriving, const DetectorParams& det);

/// Exact probability of `sig` for an n-photon Fock state on the two-port
/// network: a binomial sum over the number of reflected photons, each term
/// weighted by the click-or-silence factor of each detector.
double signature_prob(int n, Signature sig, const TwoPortConfig& cfg);

/// Herald-signature probabilities for n = 0..cutoff.
std::vector<double> herald_column(const TwoPortConfig& cfg, int cutoff);

/// All four POVM columns for n = 0..cutoff.
SignatureTable herald_prob_table(const TwoPortConfig& cfg, int cutoff);

} // namespace heraldsim
