#include "heraldsim/analysis.hpp"

#include <cmath>
#include <ctime>
#include <string>

#include "heraldsim/errors.hpp"
#include "heraldsim/threads.hpp"
#include "heraldsim/version.hpp"

namespace heraldsim {

namespace {

struct PointEval {
  double herald_prob = 0.0;
  std::optional<double> fidelity;
};

// Same degeneracy threshold as prepare(), but degenerate points are data
// here, not errors.
PointEval eval_point(SqueezingParam chi, const TwoPortConfig& cfg, double tolerance) {
  const ConditionalState state = conditional_state(chi, cfg, tolerance);
  const double trace = state.trace();
  PointEval out;
  out.herald_prob = trace;
  if (trace > kDegenerateTraceFactor * state.tail_bound) {
    out.fidelity = state.weights[1] / trace;
  }
  return out;
}

TwoPortConfig apply_axis(TwoPortConfig cfg, SweepParam param, double value) {
  switch (param) {
  case SweepParam::EtaRef:
    cfg.reflectivity = value;
    break;
  case SweepParam::Loss:
    cfg.detector_reflected.loss = value;
    cfg.detector_transmitted.loss = value;
    break;
  case SweepParam::Dark:
    cfg.detector_reflected.dark_count = value;
    cfg.detector_transmitted.dark_count = value;
    break;
  }
  return cfg;
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

} // namespace

const char* to_string(SweepParam p) {
  switch (p) {
  case SweepParam::EtaRef: return "eta_ref";
  case SweepParam::Loss: return "loss";
  case SweepParam::Dark: return "dark";
  }
  return "?";
}

std::optional<SweepParam> sweep_param_from_string(const std::string& name) {
  if (name == "eta_ref") return SweepParam::EtaRef;
  if (name == "loss") return SweepParam::Loss;
  if (name == "dark") return SweepParam::Dark;
  return std::nullopt;
}

std::vector<double> axis_values(const AxisSpec& axis) {
  std::vector<double> values(static_cast<std::size_t>(axis.points));
  const int last = axis.points - 1;
  if (axis.log_spacing) {
    const double la = std::log(axis.start);
    const double lb = std::log(axis.stop);
    for (int k = 0; k <= last; ++k) {
      if (k == 0) values[0] = axis.start;
      else if (k == last) values[static_cast<std::size_t>(last)] = axis.stop;
      else values[static_cast<std::size_t>(k)] = std::exp(la + (lb - la) * k / last);
    }
  } else {
    for (int k = 0; k <= last; ++k) {
      values[static_cast<std::size_t>(k)] =
          k == last ? axis.stop : axis.start + (axis.stop - axis.start) * k / last;
    }
  }
  return values;
}

void validate(const SweepGrid& grid) {
  if (grid.axes.empty() || grid.axes.size() > 2) {
    throw InvalidParameterError("sweep grid needs one or two axes");
  }
  if (grid.axes.size() == 2 && grid.axes[0].param == grid.axes[1].param) {
    throw InvalidParameterError("sweep axes must differ");
  }
  for (const AxisSpec& axis : grid.axes) {
    if (axis.points < 2) throw InvalidParameterError("axis needs at least 2 points");
    if (!std::isfinite(axis.start) || !std::isfinite(axis.stop) || axis.start > axis.stop) {
      throw InvalidParameterError("axis range must satisfy start <= stop");
    }
    if (axis.start < 0.0 || axis.stop > 1.0) {
      throw InvalidParameterError(std::string(to_string(axis.param)) +
                                  " axis must stay within [0,1]");
    }
    if (axis.log_spacing && !(axis.start > 0.0)) {
      throw InvalidParameterError("log spacing requires start > 0");
    }
  }
  validate(grid.chi);
  validate(grid.base);
}

SweepResult sweep(const SweepGrid& grid, double tolerance) {
  validate(grid);
  if (!(tolerance > 0.0)) throw InvalidParameterError("tolerance must be > 0");

  std::vector<std::vector<double>> coords;
  coords.reserve(grid.axes.size());
  for (const AxisSpec& axis : grid.axes) coords.push_back(axis_values(axis));

  const std::size_t inner = coords.size() == 2 ? coords[1].size() : 1;
  const std::size_t total = coords[0].size() * inner;

  SweepResult result;
  result.grid = grid;
  result.tolerance = tolerance;
  result.timestamp = utc_timestamp();
  result.version = kVersion;
  result.records.resize(total);

  parallel_for_indexed(total, 0, [&](std::size_t idx) {
    const std::size_t i0 = idx / inner;
    const std::size_t i1 = idx % inner;
    TwoPortConfig cfg = apply_axis(grid.base, grid.axes[0].param, coords[0][i0]);
    SweepRecord rec;
    rec.axis_values.push_back(coords[0][i0]);
    if (coords.size() == 2) {
      cfg = apply_axis(cfg, grid.axes[1].param, coords[1][i1]);
      rec.axis_values.push_back(coords[1][i1]);
    }
    const PointEval pt = eval_point(grid.chi, cfg, tolerance);
    rec.herald_prob = pt.herald_prob;
    rec.fidelity = pt.fidelity;
    rec.degenerate = !pt.fidelity.has_value();
    result.records[idx] = std::move(rec);
  });
  return result;
}

TradeoffCurve tradeoff_curve(SqueezingParam chi, const DetectorParams& det,
                             const std::vector<double>& eta_ref_grid,
                             double tolerance) {
  validate(chi);
  validate(det);
  TradeoffCurve curve;
  curve.points.reserve(eta_ref_grid.size());
  for (double eta : eta_ref_grid) {
    const TwoPortConfig cfg{eta, det, det};
    const PointEval pt = eval_point(chi, cfg, tolerance);
    if (!pt.fidelity) {
      ++curve.degenerate_omitted;
      continue;
    }
    curve.points.push_back({eta, *pt.fidelity, pt.herald_prob});
  }
  return curve;
}

OptimumReport optimize_eta_ref(SqueezingParam chi, const DetectorParams& det,
                               double refinement_tolerance, double tolerance) {
  validate(chi);
  validate(det);
  if (!(refinement_tolerance > 0.0)) {
    throw InvalidParameterError("refinement tolerance must be > 0");
  }

  double best_eta = 0.0;
  double best_f = -1.0;
  auto eval = [&](double eta) -> double {
    const TwoPortConfig cfg{eta, det, det};
    const PointEval pt = eval_point(chi, cfg, tolerance);
    if (!pt.fidelity) return -1.0;
    if (*pt.fidelity > best_f) {
      best_f = *pt.fidelity;
      best_eta = eta;
    }
    return *pt.fidelity;
  };

  // Coarse scan over (0, 1]; no unimodality assumption is made, the dense
  // scan is what localizes the global maximum.
  std::vector<double> scan(kCoarseScanPoints);
  for (int k = 1; k <= kCoarseScanPoints; ++k) {
    scan[static_cast<std::size_t>(k - 1)] =
        static_cast<double>(k) / kCoarseScanPoints;
  }
  int best_k = -1;
  double coarse_best = -1.0;
  for (int k = 1; k <= kCoarseScanPoints; ++k) {
    const double f = eval(scan[static_cast<std::size_t>(k - 1)]);
    if (f > coarse_best) {
      coarse_best = f;
      best_k = k;
    }
  }
  if (best_k < 0 || coarse_best < 0.0) {
    throw AllDegenerateError("every scanned eta_ref point was degenerate");
  }

  const double lo = scan[static_cast<std::size_t>(std::max(1, best_k - 1) - 1)];
  const double hi = scan[static_cast<std::size_t>(std::min(kCoarseScanPoints, best_k + 1) - 1)];

  // Golden-section refinement between the bracketing coarse neighbors.
  constexpr double kGolden = 0.6180339887498949;
  double a = lo;
  double b = hi;
  double c = b - kGolden * (b - a);
  double d = a + kGolden * (b - a);
  double fc = eval(c);
  double fd = eval(d);
  while (b - a > refinement_tolerance) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kGolden * (b - a);
      fc = eval(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kGolden * (b - a);
      fd = eval(d);
    }
  }
  eval(0.5 * (a + b));

  OptimumReport report;
  report.eta_ref_star = best_eta;
  report.fidelity_star = best_f;
  report.bracket_lo = lo;
  report.bracket_hi = hi;
  report.refinement_tolerance = refinement_tolerance;
  report.interior = best_eta > scan.front() && best_eta < 1.0;
  return report;
}

SweepGrid splitting_ratio_grid(SqueezingParam chi) {
  SweepGrid grid;
  grid.axes = {AxisSpec{SweepParam::EtaRef, 0.01, 1.0, 100, false}};
  grid.chi = chi;
  grid.base = TwoPortConfig{0.5, {}, {}};
  return grid;
}

SweepGrid loss_grid(SqueezingParam chi, double eta_ref) {
  SweepGrid grid;
  grid.axes = {AxisSpec{SweepParam::Loss, 0.0, 0.99, 100, false}};
  grid.chi = chi;
  grid.base = TwoPortConfig{eta_ref, {}, {}};
  return grid;
}

SweepGrid dark_count_surface_grid(SqueezingParam chi) {
  SweepGrid grid;
  grid.axes = {AxisSpec{SweepParam::Dark, 1e-8, 1e-2, 50, true},
               AxisSpec{SweepParam::EtaRef, 0.01, 1.0, 50, false}};
  grid.chi = chi;
  grid.base = TwoPortConfig{0.5, {}, {}};
  return grid;
}

} // namespace heraldsim
