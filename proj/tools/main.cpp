// heraldsim command-line tool: single-point fidelity evaluation, parameter
// sweeps, splitting-ratio optimization, and Monte Carlo cross-checks for a
// heralded single-photon source with an asymmetric two-port detector.
//
// Exit codes: 0 success / PASS, 1 invalid input, 2 degenerate herald or
// zero Monte Carlo heralds, 3 mc-check FAIL.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include <heraldsim/analysis.hpp>
#include <heraldsim/conditioning.hpp>
#include <heraldsim/errors.hpp>
#include <heraldsim/monte_carlo.hpp>
#include <heraldsim/version.hpp>

namespace {

using json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitDegenerate = 2;
constexpr int kExitMcFail = 3;

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Shared --chi/--eta-ref/--loss/--dark/...; every subcommand takes them.
struct CommonOpts {
  double chi = 0.1;
  double eta_ref = 0.5;
  double loss = 0.0;
  double dark = 0.0;
  double tolerance = heraldsim::kDefaultTolerance;
  std::string format;
  std::string output = "stdout";

  heraldsim::SqueezingParam squeezing() const { return {chi}; }
  heraldsim::DetectorParams detector() const { return {loss, dark}; }
  heraldsim::TwoPortConfig two_port() const {
    return {eta_ref, detector(), detector()};
  }
};

void add_common_flags(CLI::App* cmd, CommonOpts& opts, const std::string& default_format) {
  opts.format = default_format;
  cmd->add_option("--chi", opts.chi, "Down-conversion strength in [0,1)")
      ->capture_default_str();
  cmd->add_option("--eta-ref", opts.eta_ref, "Beamsplitter reflectivity in [0,1]")
      ->capture_default_str();
  cmd->add_option("--loss", opts.loss, "Per-photon detector loss probability in [0,1]")
      ->capture_default_str();
  cmd->add_option("--dark", opts.dark, "Dark-count probability per heralding window in [0,1]")
      ->capture_default_str();
  cmd->add_option("--tolerance", opts.tolerance, "Certified truncation tolerance")
      ->capture_default_str();
  cmd->add_option("--format", opts.format, "Output format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  cmd->add_option("--output", opts.output, "Output path, or 'stdout'")
      ->capture_default_str();
}

// Writes to stdout or to a file; file contents are byte-identical to what
// stdout would have received.
class OutputTarget {
public:
  explicit OutputTarget(const std::string& destination) {
    if (destination != "stdout" && !destination.empty()) {
      file_ = std::make_unique<std::ofstream>(destination, std::ios::binary);
      if (!*file_) {
        throw heraldsim::InvalidParameterError("cannot open output file: " + destination);
      }
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

private:
  std::unique_ptr<std::ofstream> file_;
};

void emit(const std::string& format, const json& object,
          const std::vector<std::string>& csv_header,
          const std::vector<std::vector<std::string>>& csv_rows,
          std::ostream& os) {
  if (format == "json") {
    os << object.dump(2) << "\n";
    return;
  }
  for (std::size_t i = 0; i < csv_header.size(); ++i) {
    os << (i ? "," : "") << csv_header[i];
  }
  os << "\n";
  for (const auto& row : csv_rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      os << (i ? "," : "") << row[i];
    }
    os << "\n";
  }
}

int cmd_fidelity(const CommonOpts& opts) {
  const heraldsim::PreparationReport report =
      heraldsim::prepare(opts.squeezing(), opts.two_port(), opts.tolerance);

  json obj{{"chi", opts.chi},
           {"eta_ref", opts.eta_ref},
           {"loss", opts.loss},
           {"dark", opts.dark},
           {"tolerance", opts.tolerance},
           {"fidelity", report.fidelity},
           {"herald_prob", report.herald_probability},
           {"cutoff", report.cutoff},
           {"truncation_error", report.truncation_error}};
  OutputTarget out(opts.output);
  emit(opts.format, obj,
       {"chi", "eta_ref", "loss", "dark", "tolerance", "fidelity", "herald_prob",
        "cutoff", "truncation_error"},
       {{g17(opts.chi), g17(opts.eta_ref), g17(opts.loss), g17(opts.dark),
         g17(opts.tolerance), g17(report.fidelity), g17(report.herald_probability),
         std::to_string(report.cutoff), g17(report.truncation_error)}},
       out.stream());
  return kExitOk;
}

struct AxisFlags {
  std::string name;
  double from = 0.0;
  double to = 1.0;
  int points = 2;
  bool log_spacing = false;
};

heraldsim::AxisSpec to_axis_spec(const AxisFlags& flags) {
  const auto param = heraldsim::sweep_param_from_string(flags.name);
  if (!param) {
    throw heraldsim::InvalidParameterError(
        "unknown sweep axis '" + flags.name + "' (expected eta_ref, loss or dark)");
  }
  return {*param, flags.from, flags.to, flags.points, flags.log_spacing};
}

int cmd_sweep(const CommonOpts& opts, const AxisFlags& axis1, const AxisFlags& axis2,
              bool has_second_axis, bool no_timestamp) {
  heraldsim::SweepGrid grid;
  grid.axes.push_back(to_axis_spec(axis1));
  if (has_second_axis) grid.axes.push_back(to_axis_spec(axis2));
  grid.chi = opts.squeezing();
  grid.base = opts.two_port();

  const heraldsim::SweepResult result = heraldsim::sweep(grid, opts.tolerance);

  std::vector<std::string> header;
  for (const auto& axis : grid.axes) header.emplace_back(heraldsim::to_string(axis.param));
  header.insert(header.end(), {"fidelity", "herald_prob", "status"});

  json records = json::array();
  std::vector<std::vector<std::string>> rows;
  rows.reserve(result.records.size());
  std::size_t degenerate = 0;
  for (const auto& rec : result.records) {
    std::vector<std::string> row;
    json obj;
    for (std::size_t a = 0; a < rec.axis_values.size(); ++a) {
      row.push_back(g17(rec.axis_values[a]));
      obj[header[a]] = rec.axis_values[a];
    }
    if (rec.fidelity) {
      row.push_back(g17(*rec.fidelity));
      obj["fidelity"] = *rec.fidelity;
    } else {
      row.emplace_back();
      ++degenerate;
    }
    row.push_back(g17(rec.herald_prob));
    obj["herald_prob"] = rec.herald_prob;
    row.push_back(rec.degenerate ? "degenerate" : "ok");
    obj["status"] = rec.degenerate ? "degenerate" : "ok";
    rows.push_back(std::move(row));
    records.push_back(std::move(obj));
  }

  OutputTarget out(opts.output);
  emit(opts.format, records, header, rows, out.stream());

  std::cerr << "sweep: chi=" << g17(opts.chi) << " tolerance=" << g17(opts.tolerance)
            << " points=" << result.records.size() << " degenerate=" << degenerate
            << " version=" << result.version << "\n";
  if (!no_timestamp) std::cerr << "generated: " << result.timestamp << "\n";
  return kExitOk;
}

int cmd_optimize(const CommonOpts& opts, double refine_tol) {
  const heraldsim::OptimumReport report = heraldsim::optimize_eta_ref(
      opts.squeezing(), opts.detector(), refine_tol, opts.tolerance);

  json obj{{"chi", opts.chi},
           {"loss", opts.loss},
           {"dark", opts.dark},
           {"eta_ref_star", report.eta_ref_star},
           {"fidelity_star", report.fidelity_star},
           {"bracket_lo", report.bracket_lo},
           {"bracket_hi", report.bracket_hi},
           {"refinement_tolerance", report.refinement_tolerance},
           {"interior", report.interior}};
  OutputTarget out(opts.output);
  emit(opts.format, obj,
       {"chi", "loss", "dark", "eta_ref_star", "fidelity_star", "bracket_lo",
        "bracket_hi", "refinement_tolerance", "interior"},
       {{g17(opts.chi), g17(opts.loss), g17(opts.dark), g17(report.eta_ref_star),
         g17(report.fidelity_star), g17(report.bracket_lo), g17(report.bracket_hi),
         g17(report.refinement_tolerance), report.interior ? "true" : "false"}},
       out.stream());
  return kExitOk;
}

int cmd_mc_check(const CommonOpts& opts, std::uint64_t trials, std::uint64_t seed) {
  const heraldsim::PreparationReport analytic =
      heraldsim::prepare(opts.squeezing(), opts.two_port(), opts.tolerance);

  heraldsim::mc::McConfig mc;
  mc.trials = trials;
  mc.seed = seed;
  mc.chi = opts.squeezing();
  mc.cfg = opts.two_port();
  const heraldsim::mc::McEstimate est = heraldsim::mc::run(mc);

  const double fid_z = est.fidelity_se > 0.0
                           ? (est.fidelity_hat - analytic.fidelity) / est.fidelity_se
                           : (est.fidelity_hat == analytic.fidelity ? 0.0 : 1e9);
  const double her_z = est.herald_prob_se > 0.0
                           ? (est.herald_prob_hat - analytic.herald_probability) / est.herald_prob_se
                           : (est.herald_prob_hat == analytic.herald_probability ? 0.0 : 1e9);
  const bool pass = std::abs(fid_z) <= 5.0 && std::abs(her_z) <= 5.0;
  const char* verdict = pass ? "PASS" : "FAIL";

  json obj{{"chi", opts.chi},
           {"eta_ref", opts.eta_ref},
           {"loss", opts.loss},
           {"dark", opts.dark},
           {"trials", trials},
           {"seed", seed},
           {"analytic_fidelity", analytic.fidelity},
           {"mc_fidelity", est.fidelity_hat},
           {"fidelity_se", est.fidelity_se},
           {"fidelity_z", fid_z},
           {"analytic_herald_prob", analytic.herald_probability},
           {"mc_herald_prob", est.herald_prob_hat},
           {"herald_prob_se", est.herald_prob_se},
           {"herald_prob_z", her_z},
           {"herald_count", est.herald_count},
           {"verdict", verdict}};
  OutputTarget out(opts.output);
  emit(opts.format, obj,
       {"quantity", "analytic", "estimate", "std_error", "z_score", "verdict"},
       {{"fidelity", g17(analytic.fidelity), g17(est.fidelity_hat), g17(est.fidelity_se),
         g17(fid_z), verdict},
        {"herald_prob", g17(analytic.herald_probability), g17(est.herald_prob_hat),
         g17(est.herald_prob_se), g17(her_z), verdict}},
       out.stream());

  std::cerr << "mc-check: " << verdict << " (fidelity z=" << g17(fid_z)
            << ", herald_prob z=" << g17(her_z) << ", 5-sigma gate)\n";
  return pass ? kExitOk : kExitMcFail;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"heralded single-photon source simulator (asymmetric two-port detection)"};
  app.set_version_flag("--version", heraldsim::kVersion);
  app.require_subcommand(1);

  CommonOpts fid_opts;
  auto* fid = app.add_subcommand(
      "fidelity", "Fidelity and heralding probability at one parameter point");
  add_common_flags(fid, fid_opts, "json");

  CommonOpts sweep_opts;
  AxisFlags axis1{"eta_ref", 0.01, 1.0, 100, false};
  AxisFlags axis2{"", 0.01, 1.0, 50, false};
  bool no_timestamp = false;
  auto* swp = app.add_subcommand(
      "sweep", "Fidelity/heralding-probability table over a 1-D or 2-D parameter grid");
  add_common_flags(swp, sweep_opts, "csv");
  swp->add_option("--axis", axis1.name, "Swept parameter: eta_ref, loss or dark")
      ->capture_default_str();
  swp->add_option("--from", axis1.from, "Axis start")->capture_default_str();
  swp->add_option("--to", axis1.to, "Axis stop")->capture_default_str();
  swp->add_option("--points", axis1.points, "Axis point count")->capture_default_str();
  swp->add_flag("--log", axis1.log_spacing, "Logarithmic axis spacing");
  auto* axis2_opt = swp->add_option("--axis2", axis2.name, "Optional second swept parameter");
  swp->add_option("--from2", axis2.from, "Second axis start")->needs(axis2_opt);
  swp->add_option("--to2", axis2.to, "Second axis stop")->needs(axis2_opt);
  swp->add_option("--points2", axis2.points, "Second axis point count")->needs(axis2_opt);
  swp->add_flag("--log2", axis2.log_spacing, "Logarithmic second axis")->needs(axis2_opt);
  swp->add_flag("--no-timestamp", no_timestamp, "Suppress the timestamp note on stderr");

  CommonOpts opt_opts;
  double refine_tol = heraldsim::kDefaultRefineTolerance;
  auto* opt = app.add_subcommand(
      "optimize", "Find the splitting ratio maximizing fidelity");
  add_common_flags(opt, opt_opts, "json");
  opt->get_option("--eta-ref")->group(""); // optimization variable; hidden
  opt->add_option("--refine-tol", refine_tol,
                  "Golden-section refinement tolerance on eta_ref")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  CommonOpts mc_opts;
  std::uint64_t trials = 1'000'000;
  std::uint64_t seed = 42;
  auto* mcc = app.add_subcommand(
      "mc-check", "Cross-check analytic results against event-level Monte Carlo");
  add_common_flags(mcc, mc_opts, "json");
  mcc->add_option("--trials", trials, "Number of Monte Carlo trials")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  mcc->add_option("--seed", seed, "RNG seed")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    if (fid->parsed()) return cmd_fidelity(fid_opts);
    if (swp->parsed()) return cmd_sweep(sweep_opts, axis1, axis2, axis2_opt->count() > 0, no_timestamp);
    if (opt->parsed()) return cmd_optimize(opt_opts, refine_tol);
    if (mcc->parsed()) return cmd_mc_check(mc_opts, trials, seed);
  } catch (const heraldsim::InvalidParameterError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const heraldsim::DegenerateHeraldError& e) {
    std::cerr << "error: degenerate herald: " << e.what() << "\n";
    return kExitDegenerate;
  } catch (const heraldsim::ZeroHeraldsError& e) {
    std::cerr << "error: zero heralds: " << e.what() << "\n";
    return kExitDegenerate;
  } catch (const heraldsim::AllDegenerateError& e) {
    std::cerr << "error: all scanned points degenerate: " << e.what() << "\n";
    return kExitDegenerate;
  }
  return kExitInvalid;
}
