#include "heraldsim/conditioning.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "heraldsim/errors.hpp"

namespace heraldsim {

void validate(SqueezingParam chi) {
  if (!(chi.chi >= 0.0 && chi.chi < 1.0) || !std::isfinite(chi.chi)) {
    throw InvalidParameterError("chi must lie in [0,1), got " + std::to_string(chi.chi));
  }
}

double ConditionalState::trace() const {
  double t = 0.0;
  for (double w : weights) t += w;
  return t;
}

std::vector<double> pair_number_weights(SqueezingParam chi, int cutoff) {
  validate(chi);
  if (cutoff < 0) throw InvalidParameterError("cutoff must be >= 0");
  const double chi2 = chi.chi * chi.chi;
  std::vector<double> w(static_cast<std::size_t>(cutoff) + 1);
  double term = 1.0 - chi2;
  for (int n = 0; n <= cutoff; ++n) {
    w[static_cast<std::size_t>(n)] = term;
    term *= chi2;
  }
  return w;
}

int auto_cutoff(SqueezingParam chi, double tolerance) {
  validate(chi);
  if (!(tolerance > 0.0)) throw InvalidParameterError("tolerance must be > 0");
  if (chi.chi == 0.0) return 0;

  const double chi2 = chi.chi * chi.chi;
  const double norm = 1.0 - chi2;
  auto tail = [&](int n) { return std::pow(chi2, n + 1) / norm; };

  // Closed-form estimate, then exact local adjustment.
  double est = std::log(tolerance * norm) / std::log(chi2) - 1.0;
  int n = static_cast<int>(std::max(0.0, std::ceil(est)));
  while (tail(n) > tolerance) ++n;
  while (n > 0 && tail(n - 1) <= tolerance) --n;
  return n;
}

ConditionalState conditional_state(SqueezingParam chi, const TwoPortConfig& cfg,
                                   double tolerance) {
  validate(chi);
  validate(cfg);

  // Floor the cutoff at 1 so the one-photon weight is always present.
  const int cutoff = std::max(1, auto_cutoff(chi, tolerance));

  ConditionalState state;
  state.cutoff = cutoff;
  state.weights = pair_number_weights(chi, cutoff);
  const std::vector<double> herald = herald_column(cfg, cutoff);
  for (std::size_t n = 0; n < state.weights.size(); ++n) {
    state.weights[n] *= herald[n];
  }
  // (1-chi^2) * sum_{n>cutoff} chi^(2n) * P(n) <= chi^(2(cutoff+1)) since
  // every P(n) <= 1.
  state.tail_bound = std::pow(chi.chi * chi.chi, cutoff + 1);
  return state;
}

PreparationReport prepare(SqueezingParam chi, const TwoPortConfig& cfg,
                          double tolerance) {
  const ConditionalState state = conditional_state(chi, cfg, tolerance);
  const double trace = state.trace();
  if (trace <= kDegenerateTraceFactor * state.tail_bound) {
    throw DegenerateHeraldError(
        "herald probability " + std::to_string(trace) +
        " is indistinguishable from zero at truncation bound " +
        std::to_string(state.tail_bound));
  }

  PreparationReport report;
  report.fidelity = state.weights[1] / trace;
  report.herald_probability = trace;
  report.cutoff = state.cutoff;
  report.truncation_error = state.tail_bound;
  report.config = cfg;
  report.chi = chi;
  return report;
}

} // namespace heraldsim
