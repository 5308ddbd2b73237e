#include "core/planar_forces.hpp"

#include <cmath>
#include <functional>

#include "core/planar_green.hpp"

namespace dsp {
namespace {

constexpr double kPi = 3.14159265358979323846;

ForceResult zero_force(const char* why) {
  ForceResult f;
  f.converged = true;
  f.note = why;
  return f;
}

void check_z(double z) {
  if (!(z > 0.0)) {
    throw Error(ErrorCode::invalid_argument, "wall distance must be > 0");
  }
}

// Shared driver: F_z = prefactor * IntInt weight(xi) * kernel(xi, k) with the
// inner integral over k in [xi, inf).
ForceResult planar_force_double(
    const LayerStack& stack, double z, const QuadratureSpec& spec,
    const std::function<double(double)>& weight,
    const std::function<double(double, double, const ReflexPair&)>& kernel,
    double prefactor) {
  QuadratureSpec s = spec;
  s.scale_hint = std::min(1.0, 1.0 / (2.0 * z));
  s.inner_scale_hint = 1.0 / (2.0 * z);

  IntegralResult ir = integrate_double(
      [&](double xi, double k) {
        ReflexPair r = stack_reflection_kappa(stack, xi, k);
        return weight(xi) * k * std::exp(-2.0 * k * z) * kernel(xi, k, r);
      },
      [](double xi) { return xi; }, s);

  ForceResult f;
  f.force = Vec3(0.0, 0.0, prefactor * ir.value);
  f.error_estimate = std::abs(prefactor) * ir.error_estimate;
  f.evaluations = ir.evaluations;
  f.converged = ir.converged;
  for (auto& [dec, v] : ir.decade_breakdown)
    f.decade_breakdown.emplace_back(dec, prefactor * v);
  return f;
}

double full_kernel(double xi, double k, const ReflexPair& r) {
  return xi * xi * (r.rs - r.rp) - 2.0 * (k * k - xi * xi) * r.rp;
}

double screened_kernel(double xi, double /*k*/, const ReflexPair& r) {
  return xi * xi * (r.rs - r.rp);
}

}  // namespace

ForceResult cp_force_atom(const Polarizability& alpha, const LayerStack& stack,
                          double z, const QuadratureSpec& spec) {
  check_z(z);
  if (stack.is_empty()) return zero_force("no wall: zero scattering part");
  return planar_force_double(
      stack, z, spec, [&](double xi) { return alpha.at(xi); }, full_kernel,
      1.0 / (4.0 * kPi * kPi));
}

ForceResult cp_force_atom_nonretarded_check(const Polarizability& alpha,
                                            const LayerStack& stack, double z,
                                            const QuadratureSpec& spec) {
  check_z(z);
  if (stack.is_empty()) return zero_force("no wall");
  if (stack.layers().size() != 1) {
    throw Error(ErrorCode::invalid_argument,
                "the short-distance asymptote is defined for a bare "
                "half-space or mirror");
  }
  const Material& m = stack.layers()[0].material;
  bool mirror = m.kind() == Material::Kind::mirror;
  if (!mirror && m.kind() == Material::Kind::equal_reflection) {
    throw Error(ErrorCode::invalid_argument,
                "asymptote undefined for the equal-reflection test marker");
  }

  IntegralResult ir = integrate_semiinfinite(
      [&](double xi) {
        double ratio =
            mirror ? 1.0 : (m.eps(xi) - 1.0) / (m.eps(xi) + 1.0);
        return alpha.at(xi) * ratio;
      },
      0.0, spec);

  double pref = -3.0 / (16.0 * kPi * kPi * z * z * z * z);
  ForceResult f;
  f.force = Vec3(0.0, 0.0, pref * ir.value);
  f.error_estimate = std::abs(pref) * ir.error_estimate;
  f.evaluations = ir.evaluations;
  f.converged = ir.converged;
  f.note = "short-distance z^-4 asymptote";
  return f;
}

double cp_retarded_asymptote(double alpha_static, double z) {
  return -3.0 * alpha_static / (8.0 * kPi * kPi * z * z * z * z * z);
}

ForceResult cp_force_medium_atom(const Polarizability& alpha, double eta,
                                 const LayerStack& stack, double z,
                                 const QuadratureSpec& spec) {
  check_z(z);
  clausius_mosotti(eta, alpha);  // medium must satisfy the passivity gate
  if (stack.is_empty()) return zero_force("no wall");
  return planar_force_double(
      stack, z, spec, [&](double xi) { return alpha.at(xi); }, screened_kernel,
      1.0 / (4.0 * kPi * kPi));
}

ForceResult cp_force_medium_atom_assembled(const Polarizability& alpha,
                                           double eta, const LayerStack& stack,
                                           double z,
                                           const QuadratureSpec& spec) {
  check_z(z);
  clausius_mosotti(eta, alpha);
  if (stack.is_empty()) return zero_force("no wall");

  QuadratureSpec outer = spec;
  outer.scale_hint = std::min(1.0, 1.0 / (2.0 * z));
  QuadratureSpec inner = spec;
  inner.rel_tol = 0.1 * spec.rel_tol;

  double max_inner_err = 0.0;
  long inner_evals = 0;
  bool inner_ok = true;
  auto integrand = [&](double xi) {
    ScalarQuad pxx = xi2_dz_gxx(stack, z, xi, inner);
    ScalarQuad pzz = xi2_dz_gzz(stack, z, xi, inner);
    inner_evals += pxx.quad.evaluations + pzz.quad.evaluations;
    inner_ok = inner_ok && pxx.quad.converged && pzz.quad.converged;
    max_inner_err = std::max(
        max_inner_err, (pxx.quad.error_estimate / (8.0 * kPi) +
                        pzz.quad.error_estimate / (4.0 * kPi)));
    return alpha.at(xi) * (pxx.value - 0.5 * pzz.value);
  };
  IntegralResult ir = integrate_semiinfinite(integrand, 0.0, outer);

  double pref = -1.0 / kPi;
  ForceResult f;
  f.force = Vec3(0.0, 0.0, pref * ir.value);
  f.error_estimate =
      std::abs(pref) * (ir.error_estimate + max_inner_err);
  f.evaluations = ir.evaluations + inner_evals;
  f.converged = ir.converged && inner_ok;
  f.note = "assembled from tensor-component derivatives";
  return f;
}

ForceResult micro_object_force(const Susceptibility& chi, double volume,
                               MicroShape shape, bool weak_limit,
                               const LayerStack& stack, double z,
                               const QuadratureSpec& spec) {
  check_z(z);
  if (!(volume > 0.0)) {
    throw Error(ErrorCode::invalid_argument, "object volume must be > 0");
  }
  if (stack.is_empty()) return zero_force("no wall");

  auto weight = [&](double xi) {
    return weak_limit ? chi.weak_chi(xi) : chi.chi(xi);
  };
  double pref = volume / (4.0 * kPi * kPi);
  ForceResult f =
      shape == MicroShape::isolated
          ? planar_force_double(stack, z, spec, weight, full_kernel, pref)
          : planar_force_double(stack, z, spec, weight, screened_kernel, pref);
  f.note = shape == MicroShape::isolated
               ? (weak_limit ? "isolated, weak-superposition weight"
                             : "isolated, local-field weight")
               : (weak_limit ? "embedded, weak-superposition weight"
                             : "embedded, local-field weight");
  return f;
}

ForceResult lifshitz_pressure(const LayerStack& left, double d,
                              const LayerStack& right,
                              const QuadratureSpec& spec) {
  if (!(d > 0.0)) {
    throw Error(ErrorCode::invalid_argument, "gap width must be > 0");
  }
  if (left.is_empty() || right.is_empty())
    return zero_force("one side is vacuum: no pressure");

  QuadratureSpec s = spec;
  s.scale_hint = std::min(1.0, 1.0 / (2.0 * d));
  s.inner_scale_hint = 1.0 / (2.0 * d);

  IntegralResult ir = integrate_double(
      [&](double xi, double k) {
        ReflexPair rl = stack_reflection_kappa(left, xi, k);
        ReflexPair rr = stack_reflection_kappa(right, xi, k);
        double e = std::exp(-2.0 * k * d);
        double xs = rl.rs * rr.rs * e;
        double xp = rl.rp * rr.rp * e;
        return k * k * (xs / (1.0 - xs) + xp / (1.0 - xp));
      },
      [](double xi) { return xi; }, s);

  double pref = -1.0 / (2.0 * kPi * kPi);
  ForceResult f;
  f.force = Vec3(0.0, 0.0, pref * ir.value);
  f.error_estimate = std::abs(pref) * ir.error_estimate;
  f.evaluations = ir.evaluations;
  f.converged = ir.converged;
  for (auto& [dec, v] : ir.decade_breakdown)
    f.decade_breakdown.emplace_back(dec, pref * v);
  f.note = "pressure per unit area in force.z";
  return f;
}

double lifshitz_mirror_asymptote(double d) {
  return -kPi * kPi / (240.0 * d * d * d * d);
}

}  // namespace dsp
