#include "core/planar_green.hpp"

#include <cmath>

#include "core/free_green.hpp"

namespace dsp {
namespace {

constexpr double kPi = 3.14159265358979323846;

void check_zxi(double z, double xi) {
  if (!(z > 0.0)) {
    throw Error(ErrorCode::invalid_argument, "evaluation height z must be > 0");
  }
  if (!(xi > 0.0)) {
    throw Error(ErrorCode::invalid_argument,
                "coincident scattering tensors require xi > 0 (they grow like "
                "1/xi^2 toward the static limit)");
  }
}

QuadratureSpec kappa_spec(const QuadratureSpec& spec, double z) {
  QuadratureSpec s = spec;
  s.scale_hint = 1.0 / (2.0 * z);
  return s;
}

// One-wall kappa integral of e^{-2 k z} * w(k) past k = xi.
template <typename W>
IntegralResult wall_integral(const LayerStack& stack, double z, double xi,
                             const QuadratureSpec& spec, const W& weight) {
  return integrate_semiinfinite(
      [&](double k) {
        ReflexPair r = stack_reflection_kappa(stack, xi, k);
        return std::exp(-2.0 * k * z) * weight(k, r);
      },
      xi, kappa_spec(spec, z));
}

}  // namespace

ScalarQuad scattering_green_trace(const LayerStack& stack, double z, double xi,
                                  const QuadratureSpec& spec) {
  check_zxi(z, xi);
  if (stack.is_empty()) return {};
  IntegralResult q = wall_integral(
      stack, z, xi, spec, [xi](double k, const ReflexPair& r) {
        return (r.rs - r.rp) - 2.0 * (k * k - xi * xi) / (xi * xi) * r.rp;
      });
  return {q.value / (4.0 * kPi), q};
}

GreenTensor3 scattering_green_coincident(const LayerStack& stack, double z,
                                         double xi,
                                         const QuadratureSpec& spec) {
  check_zxi(z, xi);
  GreenTensor3 g;
  g.xi = xi;
  g.kind = GreenTensor3::Kind::scattering_coincident;
  g.note = "bulk part removed; wall reflection only";
  if (stack.is_empty()) return g;

  IntegralResult qxx = wall_integral(
      stack, z, xi, spec, [xi](double k, const ReflexPair& r) {
        return r.rs - (k * k) / (xi * xi) * r.rp;
      });
  IntegralResult qzz =
      wall_integral(stack, z, xi, spec, [xi](double k, const ReflexPair& r) {
        return (k * k - xi * xi) * r.rp;
      });
  double gxx = qxx.value / (8.0 * kPi);
  double gzz = -qzz.value / (4.0 * kPi * xi * xi);
  g.t = Vec3(gxx, gxx, gzz).asDiagonal();
  return g;
}

ScalarQuad xi2_dz_gxx(const LayerStack& stack, double z, double xi,
                      const QuadratureSpec& spec) {
  if (stack.is_empty()) return {};
  IntegralResult q = wall_integral(
      stack, z, xi, spec, [xi](double k, const ReflexPair& r) {
        return -2.0 * k * (xi * xi * r.rs - k * k * r.rp);
      });
  return {q.value / (8.0 * kPi), q};
}

ScalarQuad xi2_dz_gzz(const LayerStack& stack, double z, double xi,
                      const QuadratureSpec& spec) {
  if (stack.is_empty()) return {};
  IntegralResult q = wall_integral(
      stack, z, xi, spec, [xi](double k, const ReflexPair& r) {
        return 2.0 * k * (k * k - xi * xi) * r.rp;
      });
  return {q.value / (4.0 * kPi), q};
}

ScalarQuad xi2_dz_trace(const LayerStack& stack, double z, double xi,
                        const QuadratureSpec& spec) {
  if (stack.is_empty()) return {};
  IntegralResult q = wall_integral(
      stack, z, xi, spec, [xi](double k, const ReflexPair& r) {
        return -2.0 * k *
               (xi * xi * (r.rs - r.rp) - 2.0 * (k * k - xi * xi) * r.rp);
      });
  return {q.value / (4.0 * kPi), q};
}

GreenTensor3 scattering_green_gap(const LayerStack& left, double d,
                                  const LayerStack& right, double z, double xi,
                                  const QuadratureSpec& spec) {
  if (!(d > 0.0) || !(z > 0.0) || !(z < d)) {
    throw Error(ErrorCode::invalid_argument,
                "gap evaluation requires 0 < z < d");
  }
  if (!(xi > 0.0)) {
    throw Error(ErrorCode::invalid_argument, "gap tensor requires xi > 0");
  }
  GreenTensor3 g;
  g.xi = xi;
  g.kind = GreenTensor3::Kind::gap;
  g.note = "two-sided multiple-reflection assembly";
  if (left.is_empty() && right.is_empty()) return g;

  QuadratureSpec s = spec;
  s.scale_hint = 1.0 / (2.0 * std::min({z, d - z, d}));

  auto xx_integrand = [&](double k) {
    ReflexPair rl = stack_reflection_kappa(left, xi, k);
    ReflexPair rr = stack_reflection_kappa(right, xi, k);
    double el = std::exp(-2.0 * k * z);          // round trip to the left wall
    double er = std::exp(-2.0 * k * (d - z));    // ... to the right wall
    double ed = std::exp(-2.0 * k * d);          // full cavity round trip
    double ds = 1.0 - rl.rs * rr.rs * ed;
    double dp = 1.0 - rl.rp * rr.rp * ed;
    double s_part =
        (rl.rs * el + rr.rs * er + 2.0 * rl.rs * rr.rs * ed) / ds;
    double p_part =
        (rl.rp * el + rr.rp * er - 2.0 * rl.rp * rr.rp * ed) / dp;
    return s_part - (k * k) / (xi * xi) * p_part;
  };
  auto zz_integrand = [&](double k) {
    ReflexPair rl = stack_reflection_kappa(left, xi, k);
    ReflexPair rr = stack_reflection_kappa(right, xi, k);
    double el = std::exp(-2.0 * k * z);
    double er = std::exp(-2.0 * k * (d - z));
    double ed = std::exp(-2.0 * k * d);
    double dp = 1.0 - rl.rp * rr.rp * ed;
    return (k * k - xi * xi) *
           (rl.rp * el + rr.rp * er + 2.0 * rl.rp * rr.rp * ed) / dp;
  };

  IntegralResult qxx = integrate_semiinfinite(xx_integrand, xi, s);
  IntegralResult qzz = integrate_semiinfinite(zz_integrand, xi, s);
  double gxx = qxx.value / (8.0 * kPi);
  double gzz = -qzz.value / (4.0 * kPi * xi * xi);
  g.t = Vec3(gxx, gxx, gzz).asDiagonal();
  return g;
}

GreenTensor3 scattering_green_points(const LayerStack& stack, const Vec3& r1,
                                     const Vec3& r2, double xi,
                                     const QuadratureSpec& spec) {
  if (!(r1.z() > 0.0) || !(r2.z() > 0.0)) {
    throw Error(ErrorCode::invalid_argument,
                "both points must lie above the wall (z > 0)");
  }
  if (!(xi > 0.0)) {
    throw Error(ErrorCode::invalid_argument, "requires xi > 0");
  }
  GreenTensor3 g;
  g.xi = xi;
  g.kind = GreenTensor3::Kind::points;
  if (stack.is_empty()) return g;

  if (stack.is_single_mirror()) {
    // Exact image source: mirror r2 through the wall and flip the lateral
    // source orientations.
    Vec3 image(r2.x(), r2.y(), -r2.z());
    GreenTensor3 g0 = free_space_green_iw(r1, image, xi);
    Mat3 flip = Vec3(-1.0, -1.0, 1.0).asDiagonal();
    g.t = g0.t * flip;
    g.note = "ideal-mirror image form";
    return g;
  }

  const double bigz = r1.z() + r2.z();
  const double dx = r1.x() - r2.x();
  const double dy = r1.y() - r2.y();
  const double rho = std::hypot(dx, dy);

  QuadratureSpec s = spec;
  s.scale_hint = 1.0 / bigz;

  // Five radial kernels; J_n = std::cyl_bessel_j(n, q*rho).
  auto kern = [&](int n, bool p_pol, int extra_q) {
    return integrate_semiinfinite(
        [&, n, p_pol, extra_q](double q) {
          double kap = std::sqrt(q * q + xi * xi);
          ReflexPair r = generalized_reflection(stack, xi, q);
          double jn = rho > 0.0 ? std::cyl_bessel_j(n, q * rho)
                                : (n == 0 ? 1.0 : 0.0);
          double base = std::exp(-kap * bigz) * jn;
          double amp = p_pol ? r.rp : r.rs;
          double qfac = q / kap;
          for (int e = 0; e < extra_q; ++e) qfac *= q;
          return base * amp * qfac;
        },
        0.0, s);
  };

  double s0 = kern(0, false, 0).value;                  // (q/kap) r_s J0
  double s2 = rho > 0.0 ? kern(2, false, 0).value : 0.0;
  // (q kap) r_p Jn  ==  (q/kap) * kap^2 r_p Jn
  auto kern_p = [&](int n) {
    return integrate_semiinfinite(
        [&, n](double q) {
          double kap = std::sqrt(q * q + xi * xi);
          ReflexPair r = generalized_reflection(stack, xi, q);
          double jn = rho > 0.0 ? std::cyl_bessel_j(n, q * rho)
                                : (n == 0 ? 1.0 : 0.0);
          return std::exp(-kap * bigz) * jn * r.rp * q * kap;
        },
        0.0, s);
  };
  double p0 = kern_p(0).value;
  double p2 = rho > 0.0 ? kern_p(2).value : 0.0;
  double pz = kern(0, true, 2).value;                   // (q^3/kap) r_p J0
  double cross = 0.0;                                   // q^2 r_p J1
  if (rho > 0.0) {
    cross = integrate_semiinfinite(
                [&](double q) {
                  double kap = std::sqrt(q * q + xi * xi);
                  ReflexPair r = generalized_reflection(stack, xi, q);
                  return std::exp(-kap * bigz) *
                         std::cyl_bessel_j(1, q * rho) * r.rp * q * q;
                },
                0.0, s)
                .value;
  }

  const double xi2 = xi * xi;
  double g_rr = (s0 + s2 - (p0 - p2) / xi2) / (8.0 * kPi);
  double g_tt = (s0 - s2 - (p0 + p2) / xi2) / (8.0 * kPi);
  double g_zz = -pz / (4.0 * kPi * xi2);
  double g_zr = cross / (4.0 * kPi * xi2);  // z-row, rho-column; g_rz = -g_zr

  // Assemble in Cartesian axes from the (rho-hat, t-hat, z-hat) basis.
  Vec3 rh = rho > 0.0 ? Vec3(dx / rho, dy / rho, 0.0) : Vec3(1.0, 0.0, 0.0);
  Vec3 th(-rh.y(), rh.x(), 0.0);
  Vec3 zh(0.0, 0.0, 1.0);
  g.t = g_rr * (rh * rh.transpose()) + g_tt * (th * th.transpose()) +
        g_zz * (zh * zh.transpose()) + g_zr * (zh * rh.transpose()) -
        g_zr * (rh * zh.transpose());
  g.note = "Sommerfeld q-integral assembly";
  return g;
}

}  // namespace dsp
