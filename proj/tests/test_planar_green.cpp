// Planar scattering Green tensors: frozen high-precision oracles, internal
// consistency (trace vs components), the ideal-mirror closed form, gap
// reductions, refinement stability, and the image-source fast path against
// the general Sommerfeld integrals.
#include <doctest.h>

#include <cmath>

#include "../tests/reference/reference_values.hpp"
#include "core/layers.hpp"
#include "core/planar_green.hpp"

using dsp::GreenTensor3;
using dsp::LayerStack;
using dsp::Material;
using dsp::QuadratureSpec;
using dsp::Vec3;
using dsp::scattering_green_coincident;
using dsp::scattering_green_gap;
using dsp::scattering_green_points;
using dsp::scattering_green_trace;

namespace {

constexpr double kPi = 3.14159265358979323846;

LayerStack eps2_wall() {
  return LayerStack::half_space(
      Material::lorentz_model("eps2", {{1.0, 1.0, 0.0}}));
}

QuadratureSpec tight() {
  QuadratureSpec s;
  s.rel_tol = 1e-10;
  return s;
}

// Exact coincident scattering trace above an ideal mirror:
//   Tr G^(S)(z) = -(e^{-u}/(8 pi z)) (2 + 4/u + 4/u^2),  u = 2 xi z.
double mirror_trace_exact(double z, double xi) {
  double u = 2.0 * xi * z;
  return -(std::exp(-u) / (8.0 * kPi * z)) *
         (2.0 + 4.0 / u + 4.0 / (u * u));
}

}  // namespace

TEST_CASE("frozen oracle: eps(0)=2 wall, z=0.7, xi=0.9") {
  GreenTensor3 g = scattering_green_coincident(eps2_wall(), 0.7, 0.9, tight());
  CHECK(g.gxx() == doctest::Approx(kRefGxxEps2Z07Xi09).epsilon(1e-8));
  CHECK(g.gyy() == doctest::Approx(kRefGxxEps2Z07Xi09).epsilon(1e-8));
  CHECK(g.gzz() == doctest::Approx(kRefGzzEps2Z07Xi09).epsilon(1e-8));
  CHECK(g.trace() == doctest::Approx(kRefTraceGsEps2Z07Xi09).epsilon(1e-8));
  // In-plane isotropy: all off-diagonals vanish at coincidence.
  CHECK(std::abs(g.t(0, 1)) < 1e-14);
  CHECK(std::abs(g.t(0, 2)) < 1e-14);
  CHECK(std::abs(g.t(2, 0)) < 1e-14);
}

TEST_CASE("trace equals 2 gxx + gzz and matches the direct trace integral") {
  auto tr = scattering_green_trace(eps2_wall(), 0.7, 0.9, tight());
  GreenTensor3 g = scattering_green_coincident(eps2_wall(), 0.7, 0.9, tight());
  CHECK(tr.value ==
        doctest::Approx(2.0 * g.gxx() + g.gzz()).epsilon(1e-10));
  CHECK(tr.quad.converged);
}

TEST_CASE("mirror coincident trace matches the closed form") {
  LayerStack mirror = LayerStack::mirror();
  for (double z : {0.3, 1.0, 2.5}) {
    for (double xi : {0.25, 0.5, 1.5}) {
      auto tr = scattering_green_trace(mirror, z, xi, tight());
      CHECK(tr.value ==
            doctest::Approx(mirror_trace_exact(z, xi)).epsilon(1e-9));
    }
  }
  // Frozen spot value z=1, xi=0.5.
  auto tr = scattering_green_trace(mirror, 1.0, 0.5, tight());
  CHECK(tr.value == doctest::Approx(kRefTraceGsMirrorZ1Xi05).epsilon(1e-9));
}

TEST_CASE("tolerance-refinement stability: 10x tighter changes < 1e-8") {
  QuadratureSpec s1 = tight();
  s1.rel_tol = 1e-8;
  QuadratureSpec s2 = tight();
  s2.rel_tol = 1e-9;
  auto a = scattering_green_trace(eps2_wall(), 0.4, 1.3, s1);
  auto b = scattering_green_trace(eps2_wall(), 0.4, 1.3, s2);
  CHECK(std::abs(a.value - b.value) <= 1e-8 * std::abs(b.value) + 1e-16);
}

TEST_CASE("gap reductions: one empty side reproduces the single wall") {
  LayerStack wall = eps2_wall();
  LayerStack none = LayerStack::vacuum_gap();
  double d = 2.0, z = 0.6, xi = 0.8;
  // Left wall only.
  GreenTensor3 gap = scattering_green_gap(wall, d, none, z, xi, tight());
  GreenTensor3 one = scattering_green_coincident(wall, z, xi, tight());
  CHECK(gap.gxx() == doctest::Approx(one.gxx()).epsilon(1e-9));
  CHECK(gap.gzz() == doctest::Approx(one.gzz()).epsilon(1e-9));
  // Right wall only: mirror geometry about the midplane -> distance to the
  // right wall is d - z.
  GreenTensor3 gap_r = scattering_green_gap(none, d, wall, z, xi, tight());
  GreenTensor3 one_r = scattering_green_coincident(wall, d - z, xi, tight());
  CHECK(gap_r.gxx() == doctest::Approx(one_r.gxx()).epsilon(1e-9));
  CHECK(gap_r.gzz() == doctest::Approx(one_r.gzz()).epsilon(1e-9));
}

TEST_CASE("mirror gap matches the exact image-source lattice") {
  // Between two ideal mirrors the scattering tensor is an exact sum over
  // image sources.  Images made by an odd number of reflections sit at
  // separations |2 m d - 2 z| (m in Z) and carry the flip diag(-1,-1,1);
  // even ones sit at 2|m|d (m != 0) and carry the identity.  With
  //   g_T(s) =  e^{-u} (1 + 1/u + 1/u^2) / (4 pi s),
  //   g_L(s) = -e^{-u} (2/u + 2/u^2)     / (4 pi s),   u = xi s,
  // the components are gxx = -sum_odd g_T + sum_even g_T and
  // gzz = sum_odd g_L + sum_even g_L.  This pins the s/p channel split of
  // the round-trip denominators, not just the trace.
  LayerStack mirror = LayerStack::mirror();
  double d = 1.2, z = 0.5, xi = 0.7;
  auto g_t = [&](double s) {
    double u = xi * s;
    return std::exp(-u) * (1.0 + 1.0 / u + 1.0 / (u * u)) / (4.0 * kPi * s);
  };
  auto g_l = [&](double s) {
    double u = xi * s;
    return -std::exp(-u) * (2.0 / u + 2.0 / (u * u)) / (4.0 * kPi * s);
  };
  double xx = 0.0, zz = 0.0;
  for (int m = -40; m <= 40; ++m) {
    double s_odd = std::abs(2.0 * m * d - 2.0 * z);
    xx -= g_t(s_odd);
    zz += g_l(s_odd);
    if (m != 0) {
      double s_even = 2.0 * std::abs(m) * d;
      xx += g_t(s_even);
      zz += g_l(s_even);
    }
  }
  GreenTensor3 g = scattering_green_gap(mirror, d, mirror, z, xi, tight());
  CHECK(g.gxx() == doctest::Approx(xx).epsilon(1e-9));
  CHECK(g.gzz() == doctest::Approx(zz).epsilon(1e-9));
  CHECK(g.trace() == doctest::Approx(2.0 * xx + zz).epsilon(1e-9));
}

TEST_CASE("noncoincident mirror: image fast path is exactly reciprocal") {
  LayerStack mirror = LayerStack::mirror();
  Vec3 r1(0.2, -0.1, 0.8), r2(-0.3, 0.4, 0.5);
  double xi = 1.1;
  GreenTensor3 g12 = scattering_green_points(mirror, r1, r2, xi, tight());
  GreenTensor3 g21 = scattering_green_points(mirror, r2, r1, xi, tight());
  CHECK((g12.t - g21.t.transpose()).norm() == 0.0);  // bit-exact image path
}

TEST_CASE("Sommerfeld route is reciprocal for a general stack") {
  // The Bessel-kernel assembly (J0/J1/J2 combinations) must satisfy
  // G(r1, r2) = G(r2, r1)^T; this catches sign errors in the J1 cross terms.
  LayerStack wall = eps2_wall();
  Vec3 r1(0.2, -0.1, 0.8), r2(-0.4, 0.3, 0.45);
  double xi = 0.9;
  GreenTensor3 g12 = scattering_green_points(wall, r1, r2, xi, tight());
  GreenTensor3 g21 = scattering_green_points(wall, r2, r1, xi, tight());
  double scale = g12.t.norm();
  CHECK((g12.t - g21.t.transpose()).norm() / scale < 1e-8);
}

TEST_CASE("Sommerfeld route approaches the image closed form for a dense wall") {
  // A constant-eps wall with eps = 1e6 reflects within O(1/sqrt(eps)) of the
  // ideal mirror, so the generic q-integral route evaluated on it must land
  // within ~0.3% of the mirror image tensor -- an independent check that the
  // two noncoincident evaluation paths agree.
  double w0 = 1e8;
  Material dense = Material::lorentz_model(
      "dense", {{std::sqrt(1e6 - 1.0) * w0, w0, 0.0}});
  LayerStack dense_wall = LayerStack::half_space(dense);
  LayerStack mirror = LayerStack::mirror();
  Vec3 r1(0.15, 0.05, 0.7), r2(-0.2, 0.1, 0.9);
  double xi = 0.8;
  GreenTensor3 somm = scattering_green_points(dense_wall, r1, r2, xi, tight());
  GreenTensor3 img = scattering_green_points(mirror, r1, r2, xi, tight());
  CHECK((somm.t - img.t).norm() / img.t.norm() < 3e-3);
}

TEST_CASE("noncoincident limit matches the coincident integrals") {
  // The scattering part is smooth at coincidence: shrinking the separation
  // reproduces the coincident components.
  LayerStack wall = eps2_wall();
  double xi = 0.9, z = 0.7;
  Vec3 ra(0.0, 0.0, z), rb(1e-4, 0.0, z);
  GreenTensor3 two = scattering_green_points(wall, ra, rb, xi, tight());
  GreenTensor3 co = scattering_green_coincident(wall, z, xi, tight());
  CHECK(two.gxx() == doctest::Approx(co.gxx()).epsilon(1e-5));
  CHECK(two.gzz() == doctest::Approx(co.gzz()).epsilon(1e-5));

  LayerStack mirror = LayerStack::mirror();
  Vec3 ma(0.0, 0.0, 0.9), mb(0.0, 0.0, 0.9 + 1e-6);
  GreenTensor3 img = scattering_green_points(mirror, ma, mb, 0.6, tight());
  GreenTensor3 mco = scattering_green_coincident(mirror, 0.9, 0.6, tight());
  CHECK(img.gxx() == doctest::Approx(mco.gxx()).epsilon(1e-5));
  CHECK(img.gzz() == doctest::Approx(mco.gzz()).epsilon(1e-5));
}

TEST_CASE("scattering part decays with height") {
  LayerStack wall = eps2_wall();
  double xi = 1.0;
  double t1 = std::abs(scattering_green_trace(wall, 0.5, xi, tight()).value);
  double t2 = std::abs(scattering_green_trace(wall, 1.0, xi, tight()).value);
  double t3 = std::abs(scattering_green_trace(wall, 2.0, xi, tight()).value);
  CHECK(t2 < t1);
  CHECK(t3 < t2);
}
