#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cylnls/diagnostics.hpp"
#include "cylnls/integrator.hpp"

namespace cylnls {

enum class ExperimentName {
  LinearDecay,
  SmallDataScatter,
  LongRangeNonscatter,
  FracOracle,
};

std::string to_string(ExperimentName name);

struct InitialData {
  std::string family = "GAUSSIAN";
  double width = 1.0;
  double center = 0.0;
  std::string torus_profile = "CONSTANT";  // CONSTANT or SINGLE_MODE
  int torus_mode = 1;                      // k0 for SINGLE_MODE
};

struct ExperimentSpec {
  ExperimentName name = ExperimentName::LinearDecay;
  int d = 1;
  double L_y = 0.0;
  int N_y = 0;
  int N_x = 0;
  SimConfig sim;
  InitialData initial;
  double s_offset = 0.01;      // s = (d/2)(1 - 1/p) + s_offset for |J|^s
  double lightcone_K = 1.0;
  double snapshot_spacing = 0.5;  // dense-trapezoid spacing (long-range run)
  int frac_nodes = 200;
  double frac_band = 5.0;         // band limit of the oracle test fields
  std::string out_dir = "out";
  std::uint64_t seed = 0;
  bool seed_set = false;

  double j_exponent() const;  // the s actually used, recorded in reports
};

/// Spec with the documented defaults of the named experiment filled in.
ExperimentSpec default_spec(ExperimentName name);

/// Parse `key = value` text with [section] headers and # comments. Unknown
/// keys, malformed lines, and out-of-range values throw ConfigError with the
/// key name and line number. Missing keys fall back to the experiment's
/// documented defaults (the experiment name itself is mandatory).
ExperimentSpec parse_config(const std::string& path);
ExperimentSpec parse_config_text(const std::string& text,
                                 const std::string& origin = "<memory>");

struct CheckResult {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  std::string relation;  // ">=", "<=", "within"
  bool passed = false;
};

enum class Verdict { Pass, Fail, FailedPrecondition };

std::string to_string(Verdict v);

struct ExperimentReport {
  ExperimentSpec spec;
  Verdict verdict = Verdict::Fail;
  std::vector<CheckResult> checks;
  std::vector<NormSeries> series;
  std::vector<std::string> notes;  // flags, warnings, recorded constants
};

/// Execute the named experiment, write one CSV per series plus report.txt
/// into spec.out_dir (atomically), and return the report. Reruns with the
/// same spec and seed are byte-identical. Trajectory flags downgrade the
/// verdict to FAILED_PRECONDITION instead of crashing.
ExperimentReport run_experiment(const ExperimentSpec& spec);

/// The resolved spec as deterministic `key = value` lines (defaults filled).
std::string render_spec(const ExperimentSpec& spec);

}  // namespace cylnls
