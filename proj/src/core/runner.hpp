// Sweep execution: dispatches a parsed scenario to the physics modules,
// converts results to the requested output unit system, and reports per-row
// convergence.  Rows always come back in sweep order; the worker count comes
// from the DISPERSIA_WORKERS environment variable (default 1).
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "core/scenario.hpp"

namespace dsp {

struct ResultRow {
  double sweep = 0.0;         // output units
  Vec3 force = Vec3::Zero();  // output units; lifshitz reports pressure in z
  double error = 0.0;
  bool converged = false;
};

struct RunOptions {
  std::optional<double> rel_tol;   // overrides the scenario tolerance
  std::optional<bool> si_output;   // overrides the output unit system only
};

struct RunOutput {
  std::vector<ResultRow> rows;
  bool all_converged = false;
  UnitSystem output_units;
  double rel_tol = 1e-6;  // the tolerance actually used
};

RunOutput run_scenario(const Scenario& s, const RunOptions& options = {});

// Human-readable closed-form asymptotes relevant to the scenario (the
// `limits` subcommand).
std::string limits_text(const Scenario& s);

}  // namespace dsp
