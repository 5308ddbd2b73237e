// Declarative scenario files (JSON) describing one sweep of one computation
// kind.  Parsing resolves every named model, converts all declared inputs to
// the internal natural units, and reports *all* semantic problems at once.
// The exact grammar is documented in the repository README.
#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "core/born_voxel.hpp"
#include "core/layers.hpp"
#include "core/materials.hpp"
#include "core/planar_forces.hpp"
#include "core/units.hpp"

namespace dsp {

enum class ScenarioKind {
  cp_atom,
  cp_medium_atom,
  micro_object,
  lifshitz,
  vdw,
  born_body,
  crossing,
};

const char* scenario_kind_name(ScenarioKind k);

struct SweepSpec {
  std::string variable;        // "z", "d", or "rho"
  std::vector<double> values;  // declared units, strictly increasing, > 0
};

struct CpAtomConfig {
  Polarizability alpha;
  LayerStack stack;
};

struct CpMediumAtomConfig {
  Polarizability alpha;
  double eta = 0.0;
  LayerStack stack;
};

struct MicroObjectConfig {
  Susceptibility chi;
  double volume = 0.0;
  MicroShape shape = MicroShape::isolated;
  bool weak_limit = false;
  LayerStack stack;
};

struct LifshitzConfig {
  LayerStack left;
  LayerStack right;
};

struct VdwConfig {
  Polarizability alpha1;
  Polarizability alpha2;
  // Environment: vacuum or a homogeneous bulk medium.
  std::optional<Material> bulk;
};

struct BornBodyConfig {
  LayerStack stack;
  VoxelBody body;   // centers are relative to the body reference point
  Vec3 reference = Vec3::Zero();  // sweep sets its height z
  bool exact = true;
};

struct CrossingConfig {
  LayerStack stack;  // empty stack = free space host
  // Both bodies' centers are stored relative to their local origins; body 1
  // sits at body1_reference, body 2 at body1_reference + rho * axis.
  VoxelBody body1;
  VoxelBody body2;
  Vec3 body1_reference = Vec3::Zero();
  Vec3 axis = Vec3::UnitX();
};

struct Scenario {
  ScenarioKind kind = ScenarioKind::cp_atom;
  UnitSystem units;
  double rel_tol = 1e-6;
  SweepSpec sweep;     // values in declared units
  std::variant<CpAtomConfig, CpMediumAtomConfig, MicroObjectConfig,
               LifshitzConfig, VdwConfig, BornBodyConfig, CrossingConfig>
      config;
  std::vector<std::string> approximations;  // flags echoed in CSV metadata
  std::string source_text;                  // raw file bytes (hashed in CSV)
};

// Throws ParseError (syntax, with line/column) or ValidationError (semantics,
// with the full issue list).
Scenario parse_scenario(const std::string& text);

// Loads a voxel-center list file: header lines "pitch <value>" and
// "material <name>", then one "x y z" center per line; '#' comments allowed.
// Returns centers in file units plus the declared pitch and material name.
struct VoxelFileData {
  double pitch = 0.0;
  std::string material;
  std::vector<Vec3> centers;
};
VoxelFileData read_voxel_file(const std::string& text);

}  // namespace dsp
