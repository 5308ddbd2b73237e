// dispersia command-line front end.  Thin shell over the C API:
//   dispersia run <scenario.json> [--out file.csv] [--rel-tol X]
//                 [--units si|natural]
//   dispersia validate <scenario.json>
//   dispersia limits <scenario.json>
// `run` writes CSV (stdout by default) and exits 0 only when every sweep row
// converged; `validate` parses and reports all problems; `limits` prints the
// closed-form asymptotes applicable to the scenario.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "dispersia.h"

namespace {

int read_file(const std::string& path, std::string* out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "error: cannot open '" << path << "'\n";
    return 1;
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  *out = ss.str();
  return 0;
}

struct ScenarioHandle {
  dsp_scenario* s = nullptr;
  ~ScenarioHandle() { dsp_scenario_free(s); }
};

int parse_scenario_file(const std::string& path, ScenarioHandle* h) {
  std::string text;
  if (read_file(path, &text) != 0) return 1;
  dsp_status st = dsp_scenario_parse(text.c_str(), &h->s);
  if (st != DSP_OK) {
    std::cerr << "error: " << dsp_last_error() << "\n";
    return (st == DSP_ERR_PARSE || st == DSP_ERR_VALIDATION) ? 2 : 1;
  }
  return 0;
}

int apply_overrides(dsp_scenario* s, double rel_tol, const std::string& units) {
  if (rel_tol > 0.0 && dsp_scenario_set_rel_tol(s, rel_tol) != DSP_OK) {
    std::cerr << "error: " << dsp_last_error() << "\n";
    return 1;
  }
  if (!units.empty() &&
      dsp_scenario_set_output_units(s, units == "si" ? 1 : 0) != DSP_OK) {
    std::cerr << "error: " << dsp_last_error() << "\n";
    return 1;
  }
  return 0;
}

int cmd_run(const std::string& path, const std::string& out_path,
            double rel_tol, const std::string& units) {
  ScenarioHandle h;
  if (int rc = parse_scenario_file(path, &h)) return rc;
  if (apply_overrides(h.s, rel_tol, units) != 0) return 1;

  char* csv = nullptr;
  int all_converged = 0;
  dsp_status st = dsp_scenario_run_csv(h.s, &csv, &all_converged);
  if (st != DSP_OK) {
    std::cerr << "error: " << dsp_last_error() << "\n";
    return 1;
  }
  std::unique_ptr<char, void (*)(char*)> guard(csv, dsp_string_free);

  if (out_path.empty()) {
    std::cout << csv;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot write '" << out_path << "'\n";
      return 1;
    }
    out << csv;
  }
  if (!all_converged) {
    std::cerr << "warning: one or more sweep rows did not converge\n";
    return 3;
  }
  return 0;
}

int cmd_validate(const std::string& path) {
  ScenarioHandle h;
  if (int rc = parse_scenario_file(path, &h)) return rc;
  std::cout << "ok: " << path << " is a valid scenario\n";
  return 0;
}

int cmd_limits(const std::string& path, double rel_tol) {
  ScenarioHandle h;
  if (int rc = parse_scenario_file(path, &h)) return rc;
  if (apply_overrides(h.s, rel_tol, "") != 0) return 1;
  char* text = nullptr;
  if (dsp_scenario_limits_text(h.s, &text) != DSP_OK) {
    std::cerr << "error: " << dsp_last_error() << "\n";
    return 1;
  }
  std::unique_ptr<char, void (*)(char*)> guard(text, dsp_string_free);
  std::cout << text;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{std::string("dispersia ") + dsp_version() +
               " -- dispersive ground-state forces from "
               "imaginary-frequency response"};
  app.require_subcommand(1);

  std::string scenario_path, out_path, units;
  double rel_tol = 0.0;

  auto add_units = [&units](CLI::App* cmd) {
    cmd->add_option("--units", units,
                    "Output unit system override: si or natural")
        ->check(CLI::IsMember({"si", "natural"}));
  };

  CLI::App* run = app.add_subcommand("run", "Run the sweep and emit CSV");
  run->add_option("scenario", scenario_path, "Scenario JSON file")->required();
  run->add_option("--out", out_path, "Write CSV here instead of stdout");
  run->add_option("--rel-tol", rel_tol,
                  "Relative tolerance override (0 < tol < 1)");
  add_units(run);

  CLI::App* validate =
      app.add_subcommand("validate", "Parse and check a scenario file");
  validate->add_option("scenario", scenario_path, "Scenario JSON file")
      ->required();

  CLI::App* limits = app.add_subcommand(
      "limits", "Print closed-form asymptotes for the scenario");
  limits->add_option("scenario", scenario_path, "Scenario JSON file")
      ->required();
  limits->add_option("--rel-tol", rel_tol,
                     "Relative tolerance override (0 < tol < 1)");

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) return cmd_run(scenario_path, out_path, rel_tol, units);
  if (validate->parsed()) return cmd_validate(scenario_path);
  if (limits->parsed()) return cmd_limits(scenario_path, rel_tol);
  return 1;
}
