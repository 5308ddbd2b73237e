// C ABI over the C++ core: opaque handles wrap core objects, every entry
// point traps exceptions and converts them to stable status codes, and the
// failure message is stored per thread for dsp_last_error().
#include "dispersia.h"

#include <cstring>
#include <exception>
#include <new>
#include <string>
#include <utility>
#include <vector>

#include "core/born_voxel.hpp"
#include "core/csv.hpp"
#include "core/errors.hpp"
#include "core/layers.hpp"
#include "core/materials.hpp"
#include "core/pair_vdw.hpp"
#include "core/planar_forces.hpp"
#include "core/providers.hpp"
#include "core/runner.hpp"
#include "core/scenario.hpp"
#include "core/version.hpp"

namespace {

thread_local std::string g_last_error;

dsp_status fail(dsp_status code, std::string msg) {
  g_last_error = std::move(msg);
  return code;
}

dsp_status map_exception() {
  try {
    throw;
  } catch (const dsp::Error& e) {
    dsp_status code = DSP_ERR_INTERNAL;
    switch (e.code()) {
      case dsp::ErrorCode::invalid_argument: code = DSP_ERR_INVALID_ARGUMENT; break;
      case dsp::ErrorCode::causality: code = DSP_ERR_CAUSALITY; break;
      case dsp::ErrorCode::quadrature: code = DSP_ERR_QUADRATURE; break;
      case dsp::ErrorCode::singular_system: code = DSP_ERR_SINGULAR_SYSTEM; break;
      case dsp::ErrorCode::separation: code = DSP_ERR_SEPARATION; break;
      case dsp::ErrorCode::parse: code = DSP_ERR_PARSE; break;
      case dsp::ErrorCode::validation: code = DSP_ERR_VALIDATION; break;
      case dsp::ErrorCode::io: code = DSP_ERR_IO; break;
      case dsp::ErrorCode::internal: code = DSP_ERR_INTERNAL; break;
    }
    return fail(code, e.what());
  } catch (const std::bad_alloc&) {
    return fail(DSP_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(DSP_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(DSP_ERR_INTERNAL, "unknown error");
  }
}

dsp_status ok() {
  g_last_error.clear();
  return DSP_OK;
}

std::vector<dsp::OscillatorTerm> oscillator_terms(const double* couplings,
                                                  const double* resonances,
                                                  const double* gammas,
                                                  size_t n) {
  std::vector<dsp::OscillatorTerm> terms(n);
  for (size_t k = 0; k < n; ++k) {
    terms[k] = {couplings[k], resonances[k], gammas ? gammas[k] : 0.0};
  }
  return terms;
}

std::vector<dsp::LorentzTerm> lorentz_terms(const double* wp, const double* w0,
                                            const double* gamma, size_t n) {
  std::vector<dsp::LorentzTerm> terms(n);
  for (size_t k = 0; k < n; ++k) {
    terms[k] = {wp[k], w0[k], gamma ? gamma[k] : 0.0};
  }
  return terms;
}

dsp::Vec3 to_vec(const double v[3]) { return dsp::Vec3(v[0], v[1], v[2]); }

dsp::QuadratureSpec spec_with(double rel_tol) {
  dsp::QuadratureSpec s;
  if (rel_tol > 0.0) s.rel_tol = rel_tol;
  return s;
}

void store_force(const dsp::ForceResult& r, double out_force[3],
                 double* out_err, int* out_converged) {
  if (out_force) {
    out_force[0] = r.force.x();
    out_force[1] = r.force.y();
    out_force[2] = r.force.z();
  }
  if (out_err) *out_err = r.error_estimate;
  if (out_converged) *out_converged = r.converged ? 1 : 0;
}

char* dup_string(const std::string& s) {
  char* p = static_cast<char*>(::operator new(s.size() + 1));
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

}  // namespace

struct dsp_polarizability { dsp::Polarizability v; };
struct dsp_material { dsp::Material v; };
struct dsp_susceptibility { dsp::Susceptibility v; };
struct dsp_stack { dsp::LayerStack v; };
struct dsp_provider { std::unique_ptr<dsp::GreenProvider> v; };
struct dsp_body { dsp::VoxelBody v; };
struct dsp_scenario {
  dsp::Scenario sc;
  dsp::RunOptions opts;
};

extern "C" {

const char* dsp_version(void) { return dsp::kVersion; }

const char* dsp_last_error(void) { return g_last_error.c_str(); }

// ------------------------------------------------------------------ models

dsp_status dsp_polarizability_create(double scale, const double* couplings,
                                     const double* resonances,
                                     const double* gammas, size_t n_terms,
                                     dsp_polarizability** out) {
  if (!out || !couplings || !resonances)
    return fail(DSP_ERR_NULL_ARGUMENT, "null argument");
  try {
    auto terms = oscillator_terms(couplings, resonances, gammas, n_terms);
    *out = new dsp_polarizability{dsp::Polarizability(scale, std::move(terms))};
    return ok();
  } catch (...) {
    return map_exception();
  }
}

dsp_status dsp_polarizability_eval(const dsp_polarizability* a, double xi,
                                   double* out_alpha) {
  if (!a || !out_alpha) return fail(DSP_ERR_NULL_ARGUMENT, "null argument");
  try {
    *out_alpha = a->v.at(xi);
    return ok();
  } catch (...) {
    return map_exception();
  }
}

void dsp_polarizability_free(dsp_polarizability* a) { delete a; }

dsp_status dsp_material_lorentz(const char* label, const double* eps_wp,
                                const double* eps_w0, const double* eps_gamma,
                                size_t n_eps, const double* mu_wp,
                                const double* mu_w0, const double* mu_gamma,
                                size_t n_mu, dsp_material** out) {
  if (!out || (n_eps && (!eps_wp || !eps_w0)) || (n_mu && (!mu_wp || !mu_w0)))
    return fail(DSP_ERR_NULL_ARGUMENT, "null argument");
  try {
    auto eps = lorentz_terms(eps_wp, eps_w0, eps_gamma, n_eps);
    auto mu = lorentz_terms(mu_wp, mu_w0, mu_gamma, n_mu);
    *out = new dsp_material{dsp::Material::lorentz_model(
        label ? label : "material", std::move(eps), std::move(mu))};
    return ok();
  } catch (...) {
    return map_exception();
  }
}

dsp_status dsp_material_table(const char* label, const double* xi,
                              const double* eps, size_t n,
                              dsp_material** out) {
  if (!out || !xi || !eps) return fail(DSP_ERR_NULL_ARGUMENT, "null argument");
  try {
    *out = new dsp_material{dsp::Material::table(
        label ? label : "table", std::vector<double>(xi, xi + n),
        std::vector<double>(eps, eps + n))};
    return ok();
  } catch (...) {
    return map_exception();
  }
}

dsp_status dsp_material_mirror(dsp_material** out) {
  if (!out) return fail(DSP_ERR_NULL_ARGUMENT, "null argument");
  *out = new dsp_material{dsp::Material::mirror()};
  return ok();
}

dsp_status dsp_material_eval(const dsp_material* m, double xi, double* out_eps,
                             double* out_mu) {
  if (!m) return fail(DSP_ERR_NULL_ARGUMENT, "null argument");
  try {
    if (out_eps) *out_eps = m->v.eps(xi);
    if (out_mu) *out_mu = m->v.mu(xi);
    return ok();
  } catch (...) {
    return map_exception();
  }
}

void dsp_material_free(dsp_material* m) { delete m; }

dsp_status dsp_susceptibility_local_field(double eta,
                                          const dsp_polarizability* alpha,
                                          dsp_susceptibility** out) {
  if (!alpha || !out) return fail(DSP_ERR_NULL_ARGUMENT, "null argument");
  try {
    *out = new dsp_susceptibility{dsp::clausius_mosotti(eta, alpha->v)};
    return ok();
  } catch (...) {
    return map_exception();
  }
}

dsp_status dsp_susceptibility_direct(const double* amplitudes,
                                     const double* resonances,
                                     const double* gammas, size_t n_terms,
                                     double scale, dsp_susceptibility** out) {
  if (!out || !amplitudes || !resonances)
    return fail(DSP_ERR_NULL_ARGUMENT, "null argument");
  try {
    std::vector<dsp::Susceptibility::DirectTerm> terms(n_terms);
    for (size_t k = 0; k < n_terms; ++k) {
      terms[k] = {amplitudes[k], resonances[k], gammas ? gammas[k] : 0.0};
    }
    *out = new dsp_susceptibility{
        dsp::Susceptibility::direct(std::move(terms), scale)};
    return ok();
  } catch (...) {
    return map_exception();
  }
}

dsp_status dsp_susceptibility_eval(const dsp_susceptibility* s, double xi,
                                   double* out_chi) {
  if (!s || !out_chi) return fail(DSP_ERR_NULL_ARGUMENT, "null argument");
  try {
    *out_chi = s->v.chi(xi);
    return ok();
  } catch (...) {
    return map_exception();
  }
}

void dsp_susceptibility_free(dsp_susceptibility* s) { delete s; }

// ------------------------------------------------------------------ stacks

dsp_status dsp_stack_mirror(dsp_stack** out) {
  if (!out) return fail(DSP_ERR_NULL_ARGUMENT, "null argument");
  *out = new dsp_stack{dsp::LayerStack::mirror()};
  return ok();
}

dsp_status dsp_stack_half_space(const dsp_material* m, dsp_stack** out) {
  if (!m || !out) return fail(DSP_ERR_NULL_ARGUMENT, "null argument");
  try {
    *out = new dsp_stack{dsp::LayerStack::half_space(m->v)};
    return ok();
  } catch (...) {
    return map_exception();
  }
}

dsp_status dsp_stack_film(const dsp_material* film, double thickness,
                          const dsp_material* substrate, dsp_stack** out) {
  if (!film || !out) return fail(DSP_ERR_NULL_ARGUMENT, "null argument");
  try {
    std::vector<dsp::Layer> layers;
    layers.push_back({film->v, thickness, false});
    if (substrate) {
      layers.push_back({substrate->v, 0.0, true});
    } else {
      layers.push_back({dsp::Material::mirror(), 0.0, true});
    }
    *out = new dsp_stack{dsp::LayerStack::from_layers(std::move(layers))};
    return ok();
  } catch (...) {
    return map_exception();
  }
}

dsp_status dsp_stack_reflection(const dsp_stack* s, double xi, double kappa,
                                double* out_rs, double* out_rp) {
  if (!s) return fail(DSP_ERR_NULL_ARGUMENT, "null argument");
  try {
    dsp::ReflexPair r = dsp::stack_reflection_kappa(s->v, xi, kappa);
    if (out_rs) *out_rs = r.rs;
    if (out_rp) *out_rp = r.rp;
    return ok();
  } catch (...) {
    return map_exception();
  }
}

void dsp_stack_free(dsp_stack* s) { delete s; }

// --------------------------------------------------------------- providers

dsp_status dsp_provider_free_space(dsp_provider** out) {
  if (!out) return fail(DSP_ERR_NULL_ARGUMENT, "null argument");
  *out = new dsp_provider{dsp::make_free_space_provider()};
  return ok();
}

dsp_status dsp_provider_bulk(const dsp_material* medium, dsp_provider** out) {
  if (!medium || !out) return fail(DSP_ERR_NULL_ARGUMENT, "null argument");
  try {
    *out = new dsp_provider{dsp::make_bulk_provider(medium->v)};
    return ok();
  } catch (...) {
    return map_exception();
  }
}

dsp_status dsp_provider_planar(const dsp_stack* stack, double rel_tol,
                               dsp_provider** out) {
  if (!stack || !out) return fail(DSP_ERR_NULL_ARGUMENT, "null argument");
  try {
    *out = new dsp_provider{
        dsp::make_planar_provider(stack->v, spec_with(rel_tol))};
    return ok();
  } catch (...) {
    return map_exception();
  }
}

dsp_status dsp_provider_eval(const dsp_provider* p, const double r1[3],
                             const double r2[3], double xi,
                             double out_tensor[9]) {
  if (!p || !r1 || !r2 || !out_tensor)
    return fail(DSP_ERR_NULL_ARGUMENT, "null argument");
  try {
    dsp::GreenTensor3 g = p->v->eval(to_vec(r1), to_vec(r2), xi);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) out_tensor[3 * i + j] = g.t(i, j);
    return ok();
  } catch (...) {
    return map_exception();
  }
}

dsp_status dsp_provider_scattering_trace(const dsp_provider* p,
                                         const double r[3], double xi,
                                         double* out_trace) {
  if (!p || !r || !out_trace) return fail(DSP_ERR_NULL_ARGUMENT, "null argument");
  try {
    *out_trace = p->v->scattering_coincident(to_vec(r), xi).t.trace();
    return ok();
  } catch (...) {
    return map_exception();
  }
}

void dsp_provider_free(dsp_provider* p) { delete p; }

// ------------------------------------------------------------------ forces

dsp_status dsp_cp_force_atom(const dsp_polarizability* alpha,
                             const dsp_stack* stack, double z, double rel_tol,
                             double out_force[3], double* out_err,
                             int* out_converged) {
  if (!alpha || !stack) return fail(DSP_ERR_NULL_ARGUMENT, "null argument");
  try {
    store_force(dsp::cp_force_atom(alpha->v, stack->v, z, spec_with(rel_tol)),
                out_force, out_err, out_converged);
    return ok();
  } catch (...) {
    return map_exception();
  }
}

dsp_status dsp_cp_force_medium_atom(const dsp_polarizability* alpha,
                                    double eta, const dsp_stack* stack,
                                    double z, double rel_tol,
                                    double out_force[3], double* out_err,
                                    int* out_converged) {
  if (!alpha || !stack) return fail(DSP_ERR_NULL_ARGUMENT, "null argument");
  try {
    store_force(dsp::cp_force_medium_atom(alpha->v, eta, stack->v, z,
                                          spec_with(rel_tol)),
                out_force, out_err, out_converged);
    return ok();
  } catch (...) {
    return map_exception();
  }
}

dsp_status dsp_micro_object_force(const dsp_susceptibility* chi, double volume,
                                  int shape, int weak, const dsp_stack* stack,
                                  double z, double rel_tol,
                                  double out_force[3], double* out_err,
                                  int* out_converged) {
  if (!chi || !stack) return fail(DSP_ERR_NULL_ARGUMENT, "null argument");
  if (shape != 0 && shape != 1)
    return fail(DSP_ERR_INVALID_ARGUMENT, "shape must be 0 or 1");
  try {
    store_force(
        dsp::micro_object_force(
            chi->v, volume,
            shape ? dsp::MicroShape::embedded : dsp::MicroShape::isolated,
            weak != 0, stack->v, z, spec_with(rel_tol)),
        out_force, out_err, out_converged);
    return ok();
  } catch (...) {
    return map_exception();
  }
}

dsp_status dsp_lifshitz_pressure(const dsp_stack* left, double d,
                                 const dsp_stack* right, double rel_tol,
                                 double* out_pressure, double* out_err,
                                 int* out_converged) {
  if (!left || !right || !out_pressure)
    return fail(DSP_ERR_NULL_ARGUMENT, "null argument");
  try {
    dsp::ForceResult r =
        dsp::lifshitz_pressure(left->v, d, right->v, spec_with(rel_tol));
    *out_pressure = r.force.z();
    if (out_err) *out_err = r.error_estimate;
    if (out_converged) *out_converged = r.converged ? 1 : 0;
    return ok();
  } catch (...) {
    return map_exception();
  }
}

dsp_status dsp_vdw_force(const dsp_polarizability* a1,
                         const dsp_polarizability* a2, const dsp_provider* env,
                         const double r1[3], const double r2[3],
                         double rel_tol, double out_force[3], double* out_err,
                         int* out_converged) {
  if (!a1 || !a2 || !env || !r1 || !r2)
    return fail(DSP_ERR_NULL_ARGUMENT, "null argument");
  try {
    store_force(dsp::vdw_force(a1->v, a2->v, *env->v, to_vec(r1), to_vec(r2),
                               spec_with(rel_tol)),
                out_force, out_err, out_converged);
    return ok();
  } catch (...) {
    return map_exception();
  }
}

dsp_status dsp_vdw_c6(const dsp_polarizability* a1,
                      const dsp_polarizability* a2, double rel_tol,
                      double* out_c6) {
  if (!a1 || !a2 || !out_c6) return fail(DSP_ERR_NULL_ARGUMENT, "null argument");
  try {
    *out_c6 = dsp::vdw_c6(a1->v, a2->v, spec_with(rel_tol));
    return ok();
  } catch (...) {
    return map_exception();
  }
}

// ------------------------------------------------------------ voxel bodies

dsp_status dsp_body_create(const dsp_susceptibility* chi,
                           const double* centers_xyz, size_t n_voxels,
                           double pitch, dsp_body** out) {
  if (!chi || !centers_xyz || !out)
    return fail(DSP_ERR_NULL_ARGUMENT, "null argument");
  try {
    dsp::VoxelBody body;
    body.pitch = pitch;
    body.centers.reserve(n_voxels);
    for (size_t i = 0; i < n_voxels; ++i) {
      body.centers.push_back(to_vec(centers_xyz + 3 * i));
    }
    body.susceptibilities = {chi->v};
    body.validate();
    *out = new dsp_body{std::move(body)};
    return ok();
  } catch (...) {
    return map_exception();
  }
}

dsp_status dsp_body_box(const dsp_susceptibility* chi, const double center[3],
                        const int counts[3], double pitch, dsp_body** out) {
  if (!chi || !center || !counts || !out)
    return fail(DSP_ERR_NULL_ARGUMENT, "null argument");
  try {
    dsp::VoxelBody body = dsp::VoxelBody::box(
        to_vec(center), {counts[0], counts[1], counts[2]}, pitch, chi->v);
    body.validate();
    *out = new dsp_body{std::move(body)};
    return ok();
  } catch (...) {
    return map_exception();
  }
}

dsp_status dsp_body_sphere(const dsp_susceptibility* chi,
                           const double center[3], double radius, double pitch,
                           dsp_body** out) {
  if (!chi || !center || !out)
    return fail(DSP_ERR_NULL_ARGUMENT, "null argument");
  try {
    dsp::VoxelBody body =
        dsp::VoxelBody::sphere(to_vec(center), radius, pitch, chi->v);
    body.validate();
    *out = new dsp_body{std::move(body)};
    return ok();
  } catch (...) {
    return map_exception();
  }
}

dsp_status dsp_body_force(const dsp_provider* host, const dsp_body* body,
                          int exact, double rel_tol, double out_force[3],
                          double* out_err, int* out_converged) {
  if (!host || !body) return fail(DSP_ERR_NULL_ARGUMENT, "null argument");
  try {
    dsp::ForceResult r =
        exact ? dsp::body_force_exact(*host->v, body->v, spec_with(rel_tol))
              : dsp::body_force_linear(*host->v, body->v, spec_with(rel_tol));
    store_force(r, out_force, out_err, out_converged);
    return ok();
  } catch (...) {
    return map_exception();
  }
}

dsp_status dsp_crossing_force(const dsp_provider* host, const dsp_body* body1,
                              const dsp_body* body2, double rel_tol,
                              double out_force[3], double* out_err,
                              int* out_converged) {
  if (!host || !body1 || !body2)
    return fail(DSP_ERR_NULL_ARGUMENT, "null argument");
  try {
    store_force(dsp::crossing_force(*host->v, body1->v, body2->v,
                                    spec_with(rel_tol)),
                out_force, out_err, out_converged);
    return ok();
  } catch (...) {
    return map_exception();
  }
}

dsp_status dsp_dyson_reciprocity(const dsp_provider* host,
                                 const dsp_body* body, double xi,
                                 double* out_max_asymmetry) {
  if (!host || !body || !out_max_asymmetry)
    return fail(DSP_ERR_NULL_ARGUMENT, "null argument");
  try {
    dsp::DysonSolution sol = dsp::solve_dyson(*host->v, body->v, xi);
    double worst = 0.0;
    const std::size_t n = sol.size();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        dsp::Mat3 gij = sol.block(i, j);
        dsp::Mat3 gji = sol.block(j, i);
        double denom = gij.norm();
        if (denom == 0.0) denom = 1.0;
        double asym = (gij - gji.transpose()).norm() / denom;
        if (asym > worst) worst = asym;
      }
    }
    *out_max_asymmetry = worst;
    return ok();
  } catch (...) {
    return map_exception();
  }
}

void dsp_body_free(dsp_body* b) { delete b; }

// -------------------------------------------------------- scenario pipeline

dsp_status dsp_scenario_parse(const char* text, dsp_scenario** out) {
  if (!text || !out) return fail(DSP_ERR_NULL_ARGUMENT, "null argument");
  try {
    auto* s = new dsp_scenario{dsp::parse_scenario(text), {}};
    *out = s;
    return ok();
  } catch (...) {
    return map_exception();
  }
}

dsp_status dsp_scenario_set_rel_tol(dsp_scenario* s, double rel_tol) {
  if (!s) return fail(DSP_ERR_NULL_ARGUMENT, "null argument");
  if (!(rel_tol > 0.0) || rel_tol >= 1.0)
    return fail(DSP_ERR_INVALID_ARGUMENT, "rel_tol must be in (0, 1)");
  s->opts.rel_tol = rel_tol;
  return ok();
}

dsp_status dsp_scenario_set_output_units(dsp_scenario* s, int si) {
  if (!s) return fail(DSP_ERR_NULL_ARGUMENT, "null argument");
  s->opts.si_output = (si != 0);
  return ok();
}

dsp_status dsp_scenario_run_csv(const dsp_scenario* s, char** out_csv,
                                int* out_all_converged) {
  if (!s || !out_csv) return fail(DSP_ERR_NULL_ARGUMENT, "null argument");
  try {
    dsp::RunOutput r = dsp::run_scenario(s->sc, s->opts);
    *out_csv = dup_string(dsp::emit_csv(s->sc, r));
    if (out_all_converged) *out_all_converged = r.all_converged ? 1 : 0;
    return ok();
  } catch (...) {
    return map_exception();
  }
}

dsp_status dsp_scenario_limits_text(const dsp_scenario* s, char** out_text) {
  if (!s || !out_text) return fail(DSP_ERR_NULL_ARGUMENT, "null argument");
  try {
    *out_text = dup_string(dsp::limits_text(s->sc));
    return ok();
  } catch (...) {
    return map_exception();
  }
}

void dsp_scenario_free(dsp_scenario* s) { delete s; }

void dsp_string_free(char* s) { ::operator delete(s); }

}  // extern "C"
