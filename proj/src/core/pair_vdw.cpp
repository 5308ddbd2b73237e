#include "core/pair_vdw.hpp"

#include <cmath>

#include "core/free_green.hpp"

namespace dsp {
namespace {

constexpr double kPi = 3.14159265358979323846;

// xi^4-weighted radial derivative of the product-trace kernel, written so
// that no negative power of u appears (stable down to xi = 0):
//   xi^4 dTr[G.G]/drho =
//     -e^{-2u}/(16 pi^2 rho^7 n^4) (4u^5 + 12u^4 + 32u^3 + 64u^2 + 72u + 36),
// u = n xi rho, n the medium's refractive index at i xi.
double xi4_dtr_gg(double rho, double xi, double n) {
  double u = n * xi * rho;
  double poly =
      36.0 + u * (72.0 + u * (64.0 + u * (32.0 + u * (12.0 + u * 4.0))));
  double r = rho;
  double r7 = r * r * r * r * r * r * r;
  double n4 = n * n * n * n;
  return -std::exp(-2.0 * u) * poly / (16.0 * kPi * kPi * r7 * n4);
}

// Tr[G(r1,r2).G(r2,r1)] = squared Frobenius norm of G(r1,r2), using the
// reciprocity G(r2,r1) = G(r1,r2)^T that every provider satisfies by
// construction.
double product_trace(const GreenProvider& env, const Vec3& a, const Vec3& b,
                     double xi) {
  return env.eval(a, b, xi).t.squaredNorm();
}

}  // namespace

ForceResult pair_dispersion_force(const std::function<double(double)>& w1,
                                  const std::function<double(double)>& w2,
                                  const GreenProvider& env, const Vec3& r1,
                                  const Vec3& r2, const QuadratureSpec& spec,
                                  GradientMode mode) {
  Vec3 d = r1 - r2;
  double rho = d.norm();
  if (!(rho > 0.0)) {
    throw Error(ErrorCode::invalid_argument,
                "pair force requires distinct positions");
  }

  QuadratureSpec s = spec;
  s.scale_hint = std::min(1.0, 1.0 / (2.0 * rho));

  ForceResult f;
  if (mode == GradientMode::automatic && env.translation_invariant()) {
    IntegralResult ir = integrate_semiinfinite(
        [&](double xi) {
          double n = env.refractive_index(xi);
          return w1(xi) * w2(xi) * xi4_dtr_gg(rho, xi, n);
        },
        0.0, s);
    double pref = 1.0 / (2.0 * kPi);
    f.force = pref * ir.value * (d / rho);
    f.error_estimate = pref * ir.error_estimate;
    f.evaluations = ir.evaluations;
    f.converged = ir.converged;
    for (auto& [dec, v] : ir.decade_breakdown)
      f.decade_breakdown.emplace_back(dec, pref * v);
    f.note = "closed-form radial gradient";
    return f;
  }

  // Finite-difference gradient (Richardson-extrapolated central differences,
  // base step 1e-4 * rho) inside the xi-integrand, one axis at a time.
  const double h = 1e-4 * rho;
  bool all_ok = true;
  double err_sum = 0.0;
  for (int axis = 0; axis < 3; ++axis) {
    IntegralResult ir = integrate_semiinfinite(
        [&](double xi) {
          auto tr_at = [&](double step) {
            Vec3 p = r1;
            p[axis] += step;
            return product_trace(env, p, r2, xi);
          };
          double d_h = (tr_at(h) - tr_at(-h)) / (2.0 * h);
          double d_h2 = (tr_at(0.5 * h) - tr_at(-0.5 * h)) / h;
          double grad = (4.0 * d_h2 - d_h) / 3.0;
          double x2 = xi * xi;
          return x2 * x2 * w1(xi) * w2(xi) * grad;
        },
        0.0, s);
    double pref = 1.0 / (2.0 * kPi);
    f.force[axis] = pref * ir.value;
    err_sum += pref * ir.error_estimate;
    f.evaluations += ir.evaluations;
    all_ok = all_ok && ir.converged;
  }
  f.error_estimate = err_sum;
  f.converged = all_ok;
  f.note = "finite-difference gradient";
  return f;
}

ForceResult vdw_force(const Polarizability& a1, const Polarizability& a2,
                      const GreenProvider& env, const Vec3& r1, const Vec3& r2,
                      const QuadratureSpec& spec, GradientMode mode) {
  return pair_dispersion_force([&](double xi) { return a1.at(xi); },
                               [&](double xi) { return a2.at(xi); }, env, r1,
                               r2, spec, mode);
}

double vdw_c6(const Polarizability& a1, const Polarizability& a2,
              const QuadratureSpec& spec) {
  IntegralResult ir = integrate_semiinfinite(
      [&](double xi) { return a1.at(xi) * a2.at(xi); }, 0.0, spec);
  return 3.0 * ir.value / (16.0 * kPi * kPi * kPi);
}

double vdw_retarded_asymptote(double alpha1_static, double alpha2_static,
                              double rho) {
  double r2 = rho * rho;
  double r8 = r2 * r2 * r2 * r2;
  return -161.0 * alpha1_static * alpha2_static /
         (64.0 * kPi * kPi * kPi * r8);
}

}  // namespace dsp
