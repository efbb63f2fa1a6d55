#include "heraldsim/detector.hpp"

#include <cmath>
#include <string>

#include "heraldsim/errors.hpp"

namespace heraldsim {

namespace {

void check_probability(double value, const char* name) {
  if (!(value >= 0.0 && value <= 1.0) || !std::isfinite(value)) {
    throw InvalidParameterError(std::string(name) + " must lie in [0,1], got " +
                                std::to_string(value));
  }
}

// Integer power by repeated multiplication; gives 0^0 = 1 so that the
// silence factor loss^i stays continuous at i = 0 and loss = 0.
double pow_int(double base, int exp) {
  double r = 1.0;
  for (int k = 0; k < exp; ++k) r *= base;
  return r;
}

double silence_factor(int photons, const DetectorParams& det) {
  return pow_int(det.loss, photons) * (1.0 - det.dark_count);
}

// Routing weight times the click-or-silence factor for one port receiving
// `photons` of the n incident photons.
double port_term(double route_prob, int photons, const DetectorParams& det,
                 bool clicked) {
  double silent = silence_factor(photons, det);
  return pow_int(route_prob, photons) * (clicked ? 1.0 - silent : silent);
}

} // namespace

void validate(const DetectorParams& det) {
  check_probability(det.loss, "loss");
  check_probability(det.dark_count, "dark_count");
}

void validate(const TwoPortConfig& cfg) {
  check_probability(cfg.reflectivity, "reflectivity");
  validate(cfg.detector_reflected);
  validate(cfg.detector_transmitted);
}

double single_detector_click_prob(int photons_arriving, const DetectorParams& det) {
  if (photons_arriving < 0) {
    throw InvalidParameterError("photons_arriving must be >= 0");
  }
  validate(det);
  return 1.0 - silence_factor(photons_arriving, det);
}

double signature_prob(int n, Signature sig, const TwoPortConfig& cfg) {
  if (n < 0) throw InvalidParameterError("photon number must be >= 0");
  validate(cfg);

  const double eta = cfg.reflectivity;

  // Sum over i = number of reflected photons, pairing i with n - i. The
  // pairing keeps the eta <-> 1 - eta mirror identity bit-exact for
  // identical detectors: swapping ports maps each pair onto itself.
  double binom = 1.0; // C(n, i), multiplicative recurrence
  double sum = 0.0;
  for (int i = 0; 2 * i <= n; ++i) {
    if (i > 0) binom = binom * static_cast<double>(n - i + 1) / static_cast<double>(i);
    const int j = n - i;
    const double lo = binom * (port_term(eta, i, cfg.detector_reflected, sig.reflected_clicked) *
                               port_term(1.0 - eta, j, cfg.detector_transmitted, sig.transmitted_clicked));
    if (i == j) {
      sum += lo;
      break;
    }
    const double hi = binom * (port_term(eta, j, cfg.detector_reflected, sig.reflected_clicked) *
                               port_term(1.0 - eta, i, cfg.detector_transmitted, sig.transmitted_clicked));
    sum += lo + hi;
  }
  return sum;
}

std::vector<double> herald_column(const TwoPortConfig& cfg, int cutoff) {
  if (cutoff < 0) throw InvalidParameterError("cutoff must be >= 0");
  std::vector<double> col(static_cast<std::size_t>(cutoff) + 1);
  for (int n = 0; n <= cutoff; ++n) {
    col[static_cast<std::size_t>(n)] = signature_prob(n, Signature::herald(), cfg);
  }
  return col;
}

SignatureTable herald_prob_table(const TwoPortConfig& cfg, int cutoff) {
  if (cutoff < 0) throw InvalidParameterError("cutoff must be >= 0");
  SignatureTable table;
  table.cutoff = cutoff;
  for (Signature sig : Signature::all()) {
    auto& col = table.probs[static_cast<std::size_t>(sig.index())];
    col.resize(static_cast<std::size_t>(cutoff) + 1);
    for (int n = 0; n <= cutoff; ++n) {
      col[static_cast<std::size_t>(n)] = signature_prob(n, sig, cfg);
    }
  }
  return table;
}

} // namespace heraldsim
