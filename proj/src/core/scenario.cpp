#include "core/scenario.hpp"

#include <cmath>
#include <cstddef>
#include <fstream>
#include <map>
#include <sstream>
#include <utility>

#include <json.hpp>

namespace dsp {
namespace {

using nlohmann::json;

const char* kKindNames[] = {"cp-atom",   "cp-medium-atom", "micro-object",
                            "lifshitz",  "vdw",            "born-body",
                            "crossing"};

std::pair<int, int> line_column(const std::string& text, std::size_t byte) {
  int line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

// Collects every semantic problem instead of stopping at the first.
struct Issues {
  std::vector<std::string> list;
  void add(const std::string& ctx, const std::string& what) {
    list.push_back(ctx.empty() ? what : ctx + ": " + what);
  }
  bool empty() const { return list.empty(); }
};

double require_number(const json& o, const char* key, const std::string& ctx,
                      Issues& issues, double fallback = 0.0) {
  if (!o.contains(key)) {
    issues.add(ctx, std::string("missing required number '") + key + "'");
    return fallback;
  }
  if (!o.at(key).is_number()) {
    issues.add(ctx, std::string("'") + key + "' must be a number");
    return fallback;
  }
  return o.at(key).get<double>();
}

double optional_number(const json& o, const char* key, double fallback,
                       const std::string& ctx, Issues& issues) {
  if (!o.contains(key)) return fallback;
  if (!o.at(key).is_number()) {
    issues.add(ctx, std::string("'") + key + "' must be a number");
    return fallback;
  }
  return o.at(key).get<double>();
}

std::string require_string(const json& o, const char* key,
                           const std::string& ctx, Issues& issues) {
  if (!o.contains(key) || !o.at(key).is_string()) {
    issues.add(ctx, std::string("missing required string '") + key + "'");
    return {};
  }
  return o.at(key).get<std::string>();
}

std::optional<Vec3> parse_vec3(const json& v, const std::string& ctx,
                               Issues& issues) {
  if (!v.is_array() || v.size() != 3 || !v[0].is_number() ||
      !v[1].is_number() || !v[2].is_number()) {
    issues.add(ctx, "expected an array of three numbers");
    return std::nullopt;
  }
  return Vec3(v[0].get<double>(), v[1].get<double>(), v[2].get<double>());
}

// Named-model registry resolved from the scenario's materials /
// polarizabilities / susceptibilities blocks (all stored in natural units).
struct Models {
  std::map<std::string, Polarizability> alphas;
  std::map<std::string, Material> materials;
  std::map<std::string, Susceptibility> chis;
};

Polarizability parse_polarizability(const json& o, const UnitSystem& u,
                                    const std::string& ctx, Issues& issues) {
  std::vector<OscillatorTerm> terms;
  double scale = 1.0;
  if (o.contains("alpha0")) {
    scale = u.polarizability_in(require_number(o, "alpha0", ctx, issues));
    double w0 = u.frequency_in(require_number(o, "omega0", ctx, issues, 1.0));
    double g = u.frequency_in(optional_number(o, "gamma", 0.0, ctx, issues));
    terms.push_back({w0, w0, g});
  } else if (o.contains("terms") && o.at("terms").is_array()) {
    scale =
        u.polarizability_in(optional_number(o, "scale", 1.0, ctx, issues));
    for (const auto& t : o.at("terms")) {
      OscillatorTerm term;
      term.coupling = u.frequency_in(require_number(t, "coupling", ctx, issues));
      term.resonance =
          u.frequency_in(require_number(t, "resonance", ctx, issues, 1.0));
      term.gamma = u.frequency_in(optional_number(t, "gamma", 0.0, ctx, issues));
      terms.push_back(term);
    }
  } else {
    issues.add(ctx, "expected either {alpha0, omega0[, gamma]} or "
                    "{scale, terms:[{coupling, resonance[, gamma]}]}");
  }
  if (terms.empty()) terms.push_back({1.0, 1.0, 0.0});
  try {
    return Polarizability(scale, std::move(terms));
  } catch (const Error& e) {
    issues.add(ctx, e.what());
    return Polarizability(0.0, {{1.0, 1.0, 0.0}});
  }
}

Material parse_material(const json& o, const std::string& name,
                        const UnitSystem& u, const std::string& ctx,
                        Issues& issues) {
  try {
    if (o.contains("table")) {
      const json& t = o.at("table");
      if (!t.contains("xi") || !t.contains("eps") || !t.at("xi").is_array() ||
          !t.at("eps").is_array()) {
        issues.add(ctx, "table needs 'xi' and 'eps' arrays");
        return Material::vacuum(name);
      }
      std::vector<double> xi, eps;
      for (const auto& v : t.at("xi"))
        xi.push_back(u.frequency_in(v.get<double>()));
      for (const auto& v : t.at("eps")) eps.push_back(v.get<double>());
      return Material::table(name, std::move(xi), std::move(eps));
    }
    auto read_terms = [&](const char* key) {
      std::vector<LorentzTerm> terms;
      if (!o.contains(key)) return terms;
      for (const auto& t : o.at(key)) {
        LorentzTerm term;
        term.plasma = u.frequency_in(require_number(t, "wp", ctx, issues));
        term.resonance =
            u.frequency_in(require_number(t, "omega0", ctx, issues, 1.0));
        term.gamma =
            u.frequency_in(optional_number(t, "gamma", 0.0, ctx, issues));
        terms.push_back(term);
      }
      return terms;
    };
    std::vector<LorentzTerm> eps = read_terms("eps");
    std::vector<LorentzTerm> mu = read_terms("mu");
    if (eps.empty() && mu.empty()) {
      issues.add(ctx, "expected 'eps' (and optionally 'mu') oscillator "
                      "arrays or a 'table' block");
      return Material::vacuum(name);
    }
    return Material::lorentz_model(name, std::move(eps), std::move(mu));
  } catch (const Error& e) {
    issues.add(ctx, e.what());
    return Material::vacuum(name);
  } catch (const json::exception& e) {
    issues.add(ctx, e.what());
    return Material::vacuum(name);
  }
}

Susceptibility parse_susceptibility(const json& o, const Models& models,
                                    const UnitSystem& u, const std::string& ctx,
                                    Issues& issues) {
  Susceptibility fallback =
      Susceptibility::direct({{0.0, 1.0, 0.0}}, 0.0);
  try {
    if (o.contains("eta")) {
      double eta = u.density_in(require_number(o, "eta", ctx, issues));
      std::string ref = require_string(o, "polarizability", ctx, issues);
      auto it = models.alphas.find(ref);
      if (it == models.alphas.end()) {
        issues.add(ctx, "unknown polarizability reference '" + ref + "'");
        return fallback;
      }
      return clausius_mosotti(eta, it->second);
    }
    if (o.contains("terms") && o.at("terms").is_array()) {
      std::vector<Susceptibility::DirectTerm> terms;
      for (const auto& t : o.at("terms")) {
        Susceptibility::DirectTerm term;
        term.amplitude = require_number(t, "amplitude", ctx, issues);
        term.resonance =
            u.frequency_in(require_number(t, "resonance", ctx, issues, 1.0));
        term.gamma =
            u.frequency_in(optional_number(t, "gamma", 0.0, ctx, issues));
        terms.push_back(term);
      }
      double scale = optional_number(o, "scale", 1.0, ctx, issues);
      return Susceptibility::direct(std::move(terms), scale);
    }
    issues.add(ctx, "expected {eta, polarizability} or "
                    "{terms:[{amplitude, resonance[, gamma]}][, scale]}");
  } catch (const Error& e) {
    issues.add(ctx, e.what());
  } catch (const json::exception& e) {
    issues.add(ctx, e.what());
  }
  return fallback;
}

LayerStack parse_stack(const json& arr, const Models& models,
                       const UnitSystem& u, const std::string& ctx,
                       Issues& issues) {
  if (!arr.is_array()) {
    issues.add(ctx, "stack must be an array of layers");
    return LayerStack::vacuum_gap();
  }
  if (arr.empty()) return LayerStack::vacuum_gap();
  std::vector<Layer> layers;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const json& e = arr[i];
    std::string lctx = ctx + "[" + std::to_string(i) + "]";
    if (e.is_string()) {
      if (e.get<std::string>() == "mirror") {
        layers.push_back({Material::mirror(), 0.0, true});
      } else {
        issues.add(lctx, "unknown stack keyword '" + e.get<std::string>() +
                             "' (only \"mirror\" is recognized)");
      }
      continue;
    }
    if (!e.is_object()) {
      issues.add(lctx, "stack entry must be \"mirror\" or an object");
      continue;
    }
    std::string name = require_string(e, "material", lctx, issues);
    auto it = models.materials.find(name);
    if (it == models.materials.end()) {
      issues.add(lctx, "unknown material reference '" + name + "'");
      continue;
    }
    bool half_space = e.contains("halfspace") &&
                      e.at("halfspace").is_boolean() &&
                      e.at("halfspace").get<bool>();
    double thickness =
        half_space ? 0.0
                   : u.length_in(require_number(e, "thickness", lctx, issues,
                                                1.0));
    layers.push_back({it->second, thickness, half_space});
  }
  if (layers.size() != arr.size()) return LayerStack::vacuum_gap();
  try {
    return LayerStack::from_layers(std::move(layers));
  } catch (const Error& e) {
    issues.add(ctx, e.what());
    return LayerStack::vacuum_gap();
  }
}

struct BodySpec {
  VoxelBody body;      // centers relative to `reference`
  Vec3 reference = Vec3::Zero();
};

std::optional<BodySpec> parse_body(const json& o, const Models& models,
                                   const UnitSystem& u, const std::string& ctx,
                                   Issues& issues) {
  if (!o.is_object()) {
    issues.add(ctx, "body must be an object");
    return std::nullopt;
  }
  std::string type = require_string(o, "type", ctx, issues);
  auto find_chi = [&](const std::string& name) -> const Susceptibility* {
    auto it = models.chis.find(name);
    if (it == models.chis.end()) {
      issues.add(ctx, "unknown susceptibility reference '" + name + "'");
      return nullptr;
    }
    return &it->second;
  };
  try {
    if (type == "box" || type == "sphere") {
      Vec3 center = Vec3::Zero();
      if (o.contains("center")) {
        auto c = parse_vec3(o.at("center"), ctx + ".center", issues);
        if (c)
          center = Vec3(u.length_in(c->x()), u.length_in(c->y()),
                        u.length_in(c->z()));
      }
      double pitch = u.length_in(require_number(o, "pitch", ctx, issues, 1.0));
      const Susceptibility* chi =
          find_chi(require_string(o, "susceptibility", ctx, issues));
      if (!chi) return std::nullopt;
      VoxelBody b;
      if (type == "box") {
        std::array<int, 3> counts = {1, 1, 1};
        if (o.contains("counts") && o.at("counts").is_array() &&
            o.at("counts").size() == 3) {
          for (int k = 0; k < 3; ++k)
            counts[k] = o.at("counts")[k].get<int>();
        } else {
          issues.add(ctx, "box needs 'counts' = [nx, ny, nz]");
        }
        b = VoxelBody::box(Vec3::Zero(), counts, pitch, *chi);
      } else {
        double radius =
            u.length_in(require_number(o, "radius", ctx, issues, 1.0));
        b = VoxelBody::sphere(Vec3::Zero(), radius, pitch, *chi);
      }
      return BodySpec{std::move(b), center};
    }
    if (type == "file") {
      std::string path = require_string(o, "path", ctx, issues);
      std::ifstream in(path);
      if (!in) {
        issues.add(ctx, "cannot open voxel file '" + path + "'");
        return std::nullopt;
      }
      std::stringstream buf;
      buf << in.rdbuf();
      VoxelFileData data = read_voxel_file(buf.str());
      const Susceptibility* chi = find_chi(data.material);
      if (!chi) return std::nullopt;
      VoxelBody b;
      b.pitch = u.length_in(data.pitch);
      b.susceptibilities.push_back(*chi);
      Vec3 centroid = Vec3::Zero();
      for (const auto& c : data.centers) centroid += c;
      if (!data.centers.empty())
        centroid /= static_cast<double>(data.centers.size());
      for (const auto& c : data.centers) {
        Vec3 rel = c - centroid;
        b.centers.push_back(Vec3(u.length_in(rel.x()), u.length_in(rel.y()),
                                 u.length_in(rel.z())));
      }
      Vec3 ref(u.length_in(centroid.x()), u.length_in(centroid.y()),
               u.length_in(centroid.z()));
      if (o.contains("center")) {
        auto c = parse_vec3(o.at("center"), ctx + ".center", issues);
        if (c)
          ref = Vec3(u.length_in(c->x()), u.length_in(c->y()),
                     u.length_in(c->z()));
      }
      return BodySpec{std::move(b), ref};
    }
  } catch (const Error& e) {
    issues.add(ctx, e.what());
    return std::nullopt;
  } catch (const json::exception& e) {
    issues.add(ctx, e.what());
    return std::nullopt;
  }
  issues.add(ctx, "body 'type' must be box, sphere, or file");
  return std::nullopt;
}

SweepSpec parse_sweep(const json& j, ScenarioKind kind, const std::string& ctx,
                      Issues& issues) {
  SweepSpec sweep;
  const char* expected = (kind == ScenarioKind::lifshitz)  ? "d"
                         : (kind == ScenarioKind::vdw ||
                            kind == ScenarioKind::crossing)
                             ? "rho"
                             : "z";
  if (!j.contains("sweep") || !j.at("sweep").is_object()) {
    issues.add(ctx, "missing 'sweep' block");
    sweep.variable = expected;
    return sweep;
  }
  const json& s = j.at("sweep");
  sweep.variable = s.contains("variable") && s.at("variable").is_string()
                       ? s.at("variable").get<std::string>()
                       : expected;
  if (sweep.variable != expected) {
    issues.add(ctx, "sweep variable '" + sweep.variable + "' not valid for "
                        "kind '" + std::string(scenario_kind_name(kind)) +
                        "' (expected '" + expected + "')");
  }
  if (s.contains("values")) {
    if (!s.at("values").is_array()) {
      issues.add(ctx, "'values' must be an array of numbers");
      return sweep;
    }
    for (const auto& v : s.at("values")) {
      if (!v.is_number()) {
        issues.add(ctx, "'values' must be an array of numbers");
        return sweep;
      }
      sweep.values.push_back(v.get<double>());
    }
  } else {
    double from = require_number(s, "from", ctx, issues, 1.0);
    double to = require_number(s, "to", ctx, issues, 2.0);
    int points = static_cast<int>(optional_number(s, "points", 10, ctx, issues));
    std::string spacing = s.contains("spacing") && s.at("spacing").is_string()
                              ? s.at("spacing").get<std::string>()
                              : "log";
    if (points < 2) {
      issues.add(ctx, "'points' must be >= 2");
      points = 2;
    }
    if (spacing != "log" && spacing != "linear") {
      issues.add(ctx, "'spacing' must be \"log\" or \"linear\"");
      spacing = "log";
    }
    if (!(from > 0.0) || !(to > from)) {
      issues.add(ctx, "sweep range needs 0 < from < to");
    } else {
      for (int i = 0; i < points; ++i) {
        double t = static_cast<double>(i) / (points - 1);
        sweep.values.push_back(spacing == "log"
                                   ? from * std::pow(to / from, t)
                                   : from + (to - from) * t);
      }
    }
  }
  if (sweep.values.empty()) {
    issues.add(ctx, "sweep grid is empty");
  } else {
    bool ok = sweep.values.front() > 0.0;
    for (std::size_t i = 1; ok && i < sweep.values.size(); ++i)
      ok = sweep.values[i] > sweep.values[i - 1];
    if (!ok)
      issues.add(ctx, "sweep grid must be strictly increasing and positive");
  }
  return sweep;
}

const Polarizability* find_alpha(const Models& m, const std::string& name,
                                 const std::string& ctx, Issues& issues) {
  auto it = m.alphas.find(name);
  if (it == m.alphas.end()) {
    issues.add(ctx, "unknown polarizability reference '" + name + "'");
    return nullptr;
  }
  return &it->second;
}

}  // namespace

const char* scenario_kind_name(ScenarioKind k) {
  return kKindNames[static_cast<int>(k)];
}

VoxelFileData read_voxel_file(const std::string& text) {
  VoxelFileData data;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  bool have_pitch = false;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;  // blank
    if (first == "pitch") {
      if (!(ls >> data.pitch) || !(data.pitch > 0.0))
        throw ParseError(lineno, 1, "voxel file: bad pitch value");
      have_pitch = true;
    } else if (first == "material") {
      if (!(ls >> data.material))
        throw ParseError(lineno, 1, "voxel file: missing material name");
    } else {
      double x, y, z;
      std::istringstream cs(line);
      if (!(cs >> x >> y >> z))
        throw ParseError(lineno, 1,
                         "voxel file: expected 'x y z' center coordinates");
      data.centers.push_back(Vec3(x, y, z));
    }
  }
  std::vector<std::string> issues;
  if (!have_pitch) issues.push_back("voxel file: missing 'pitch' header");
  if (data.material.empty())
    issues.push_back("voxel file: missing 'material' header");
  if (data.centers.empty()) issues.push_back("voxel file: no voxel centers");
  if (!issues.empty()) throw ValidationError(std::move(issues));
  return data;
}

Scenario parse_scenario(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    auto [line, col] = line_column(text, e.byte > 0 ? e.byte - 1 : 0);
    throw ParseError(line, col, e.what());
  }
  if (!j.is_object())
    throw ParseError(1, 1, "scenario must be a JSON object");

  Issues issues;
  Scenario sc;
  sc.source_text = text;

  // kind
  std::string kind = require_string(j, "kind", "scenario", issues);
  bool kind_ok = false;
  for (int k = 0; k < 7; ++k) {
    if (kind == kKindNames[k]) {
      sc.kind = static_cast<ScenarioKind>(k);
      kind_ok = true;
      break;
    }
  }
  if (!kind_ok && !kind.empty())
    issues.add("scenario", "unknown kind '" + kind + "'");

  // units
  if (j.contains("units")) {
    const json& u = j.at("units");
    std::string system = require_string(u, "system", "units", issues);
    if (system == "si") {
      sc.units.is_si = true;
      sc.units.omega_ref = require_number(u, "omega_ref", "units", issues, 1.0);
      if (!(sc.units.omega_ref > 0.0))
        issues.add("units", "'omega_ref' must be > 0");
    } else if (system != "natural" && !system.empty()) {
      issues.add("units", "'system' must be \"si\" or \"natural\"");
    }
  }

  sc.rel_tol = optional_number(j, "rel_tol", 1e-6, "scenario", issues);
  if (!(sc.rel_tol > 0.0) || sc.rel_tol >= 1.0) {
    issues.add("scenario", "'rel_tol' must be in (0, 1)");
    sc.rel_tol = 1e-6;
  }

  // named model blocks
  Models models;
  auto parse_block = [&](const char* key, auto&& fn) {
    if (!j.contains(key)) return;
    if (!j.at(key).is_object()) {
      issues.add(key, "must be an object of named entries");
      return;
    }
    for (const auto& [name, val] : j.at(key).items()) fn(name, val);
  };
  parse_block("polarizabilities", [&](const std::string& n, const json& v) {
    models.alphas.emplace(
        n, parse_polarizability(v, sc.units, "polarizabilities." + n, issues));
  });
  parse_block("materials", [&](const std::string& n, const json& v) {
    models.materials.emplace(
        n, parse_material(v, n, sc.units, "materials." + n, issues));
  });
  parse_block("susceptibilities", [&](const std::string& n, const json& v) {
    models.chis.emplace(n, parse_susceptibility(v, models, sc.units,
                                                "susceptibilities." + n,
                                                issues));
  });

  sc.sweep = parse_sweep(j, sc.kind, "sweep", issues);

  auto stack_of = [&](const char* key) {
    if (!j.contains(key)) {
      issues.add("scenario", std::string("missing '") + key + "' stack");
      return LayerStack::vacuum_gap();
    }
    return parse_stack(j.at(key), models, sc.units, key, issues);
  };

  switch (sc.kind) {
    case ScenarioKind::cp_atom: {
      CpAtomConfig cfg;
      std::string atom = require_string(j, "atom", "scenario", issues);
      if (const Polarizability* a =
              find_alpha(models, atom, "scenario.atom", issues))
        cfg.alpha = *a;
      cfg.stack = stack_of("stack");
      sc.config = std::move(cfg);
      break;
    }
    case ScenarioKind::cp_medium_atom: {
      CpMediumAtomConfig cfg;
      std::string atom = require_string(j, "atom", "scenario", issues);
      if (const Polarizability* a =
              find_alpha(models, atom, "scenario.atom", issues))
        cfg.alpha = *a;
      cfg.eta = sc.units.density_in(
          require_number(j, "eta", "scenario", issues, 0.0));
      if (!(cfg.eta >= 0.0)) issues.add("scenario", "'eta' must be >= 0");
      cfg.stack = stack_of("stack");
      sc.config = std::move(cfg);
      break;
    }
    case ScenarioKind::micro_object: {
      MicroObjectConfig cfg;
      if (!j.contains("object") || !j.at("object").is_object()) {
        issues.add("scenario", "missing 'object' block");
      } else {
        const json& o = j.at("object");
        std::string chi = require_string(o, "susceptibility", "object", issues);
        auto it = models.chis.find(chi);
        if (it == models.chis.end()) {
          issues.add("object", "unknown susceptibility reference '" + chi +
                                   "'");
        } else {
          cfg.chi = it->second;
        }
        cfg.volume =
            sc.units.volume_in(require_number(o, "volume", "object", issues,
                                              1.0));
        if (!(cfg.volume > 0.0)) issues.add("object", "'volume' must be > 0");
        std::string shape = o.contains("shape") && o.at("shape").is_string()
                                ? o.at("shape").get<std::string>()
                                : "isolated";
        if (shape == "isolated") {
          cfg.shape = MicroShape::isolated;
        } else if (shape == "embedded") {
          cfg.shape = MicroShape::embedded;
        } else {
          issues.add("object", "'shape' must be \"isolated\" or \"embedded\"");
        }
        if (o.contains("weak") && o.at("weak").is_boolean())
          cfg.weak_limit = o.at("weak").get<bool>();
      }
      cfg.stack = stack_of("stack");
      sc.approximations.push_back("scattering-tensor-constant-over-volume");
      sc.config = std::move(cfg);
      break;
    }
    case ScenarioKind::lifshitz: {
      LifshitzConfig cfg;
      cfg.left = stack_of("left");
      cfg.right = stack_of("right");
      sc.config = std::move(cfg);
      break;
    }
    case ScenarioKind::vdw: {
      VdwConfig cfg;
      std::string a1 = require_string(j, "atom1", "scenario", issues);
      std::string a2 = require_string(j, "atom2", "scenario", issues);
      if (const Polarizability* a =
              find_alpha(models, a1, "scenario.atom1", issues))
        cfg.alpha1 = *a;
      if (const Polarizability* a =
              find_alpha(models, a2, "scenario.atom2", issues))
        cfg.alpha2 = *a;
      if (j.contains("environment")) {
        const json& e = j.at("environment");
        if (e.is_string() && e.get<std::string>() == "free") {
          // vacuum, nothing to do
        } else if (e.is_object() && e.contains("bulk") &&
                   e.at("bulk").is_string()) {
          std::string m = e.at("bulk").get<std::string>();
          auto it = models.materials.find(m);
          if (it == models.materials.end()) {
            issues.add("environment", "unknown material reference '" + m +
                                          "'");
          } else {
            cfg.bulk = it->second;
          }
        } else {
          issues.add("environment",
                     "must be \"free\" or {\"bulk\": \"<material>\"}");
        }
      }
      sc.config = std::move(cfg);
      break;
    }
    case ScenarioKind::born_body: {
      BornBodyConfig cfg;
      cfg.stack = stack_of("stack");
      if (!j.contains("body")) {
        issues.add("scenario", "missing 'body' block");
      } else if (auto spec =
                     parse_body(j.at("body"), models, sc.units, "body",
                                issues)) {
        cfg.body = std::move(spec->body);
        cfg.reference = spec->reference;
      }
      std::string mode = j.contains("mode") && j.at("mode").is_string()
                             ? j.at("mode").get<std::string>()
                             : "exact";
      if (mode == "exact") {
        cfg.exact = true;
      } else if (mode == "linear") {
        cfg.exact = false;
      } else {
        issues.add("scenario", "'mode' must be \"exact\" or \"linear\"");
      }
      sc.approximations.push_back("voxel-self-term=spherical-exclusion");
      sc.approximations.push_back(
          "coincidence-subtraction=host-bulk+local-field-diagonal");
      sc.config = std::move(cfg);
      break;
    }
    case ScenarioKind::crossing: {
      CrossingConfig cfg;
      if (j.contains("host") && j.at("host").is_string()) {
        if (j.at("host").get<std::string>() != "free")
          issues.add("host", "must be \"free\" or a stack array");
      } else if (j.contains("host")) {
        cfg.stack = parse_stack(j.at("host"), models, sc.units, "host",
                                issues);
      }
      auto b1 = j.contains("body1")
                    ? parse_body(j.at("body1"), models, sc.units, "body1",
                                 issues)
                    : std::nullopt;
      auto b2 = j.contains("body2")
                    ? parse_body(j.at("body2"), models, sc.units, "body2",
                                 issues)
                    : std::nullopt;
      if (!j.contains("body1")) issues.add("scenario", "missing 'body1'");
      if (!j.contains("body2")) issues.add("scenario", "missing 'body2'");
      if (b1) {
        cfg.body1 = std::move(b1->body);
        cfg.body1_reference = b1->reference;
      }
      if (b2) cfg.body2 = std::move(b2->body);
      if (j.contains("axis")) {
        if (auto a = parse_vec3(j.at("axis"), "axis", issues)) {
          if (a->norm() > 0.0) {
            cfg.axis = a->normalized();
          } else {
            issues.add("axis", "must be a nonzero direction");
          }
        }
      }
      sc.approximations.push_back("crossing=bilinear-host-tensor");
      sc.config = std::move(cfg);
      break;
    }
  }

  if (!issues.empty()) throw ValidationError(std::move(issues.list));
  return sc;
}

}  // namespace dsp
