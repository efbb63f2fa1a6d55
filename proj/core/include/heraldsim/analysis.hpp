#pragma once

#include <optional>
#include <string>
#include <vector>

#include "heraldsim/conditioning.hpp"
#include "heraldsim/detector.hpp"

namespace heraldsim {

enum class SweepParam { EtaRef, Loss, Dark };

const char* to_string(SweepParam p);
std::optional<SweepParam> sweep_param_from_string(const std::string& name);

struct AxisSpec {
  SweepParam param = SweepParam::EtaRef;
  double start = 0.0;
  double stop = 1.0;
  int points = 2;
  bool log_spacing = false;
};

/// One or two swept parameters; `base` and `chi` hold the fixed values for
/// everything not swept. Loss and dark-count axes apply to both detectors.
struct SweepGrid {
  std::vector<AxisSpec> axes;
  SqueezingParam chi;
  TwoPortConfig base;
};

struct SweepRecord {
  std::vector<double> axis_values;       // one entry per axis, in axis order
  std::optional<double> fidelity;        // absent on degenerate points
  double herald_prob = 0.0;
  bool degenerate = false;
};

struct SweepResult {
  SweepGrid grid;
  std::vector<SweepRecord> records;      // row-major, first axis slowest
  double tolerance = kDefaultTolerance;
  std::string timestamp;                 // UTC, ISO 8601
  std::string version;
};

struct TradeoffPoint {
  double eta_ref = 0.0;
  double fidelity = 0.0;
  double herald_prob = 0.0;
};

struct TradeoffCurve {
  std::vector<TradeoffPoint> points;
  int degenerate_omitted = 0;
};

struct OptimumReport {
  double eta_ref_star = 0.0;
  double fidelity_star = 0.0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  double refinement_tolerance = 0.0;
  bool interior = false;                 // optimum strictly inside (0, 1)
};

/// Grid coordinates of one axis. Log spacing is geometric and requires
/// start > 0.
std::vector<double> axis_values(const AxisSpec& axis);

void validate(const SweepGrid& grid);

/// Evaluates fidelity and heralding probability on every grid point.
/// Degenerate points are recorded and flagged, not errors. Points are
/// evaluated concurrently (capped by HERALD_SIM_THREADS) with output in
/// grid order.
SweepResult sweep(const SweepGrid& grid, double tolerance = kDefaultTolerance);

/// Fidelity/success-probability trade-off along an eta_ref grid at fixed
/// detector parameters. Degenerate points are dropped and counted.
TradeoffCurve tradeoff_curve(SqueezingParam chi, const DetectorParams& det,
                             const std::vector<double>& eta_ref_grid,
                             double tolerance = kDefaultTolerance);

constexpr int kCoarseScanPoints = 1024;
constexpr double kDefaultRefineTolerance = 1e-6;

/// Maximizes fidelity over the splitting ratio: coarse scan of 1024 points
/// in (0, 1], then golden-section refinement between the neighbors of the
/// best coarse point. Unimodality is not assumed; the dense coarse scan is
/// what guards against straying to a local maximum. With no dark counts the
/// supremum sits at eta_ref -> 0 and the report returns the smallest scanned
/// point flagged non-interior. Throws AllDegenerateError if every point is
/// degenerate.
OptimumReport optimize_eta_ref(SqueezingParam chi, const DetectorParams& det,
                               double refinement_tolerance = kDefaultRefineTolerance,
                               double tolerance = kDefaultTolerance);

/// Preset sweep grids: fidelity vs splitting ratio (100 linear points
/// in [0.01, 1] with ideal detectors), vs loss at a fixed splitting ratio
/// (100 linear points in [0, 0.99]), and the 2-D dark-count / splitting-ratio
/// surface (50 log points in [1e-8, 1e-2] x 50 linear points in [0.01, 1]).
SweepGrid splitting_ratio_grid(SqueezingParam chi);
SweepGrid loss_grid(SqueezingParam chi, double eta_ref);
SweepGrid dark_count_surface_grid(SqueezingParam chi);

} // namespace heraldsim
