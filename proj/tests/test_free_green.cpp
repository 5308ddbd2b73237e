// Unbounded-medium Green tensors: closed-form spot values, symmetry and
// reciprocity, the plane-wave (Weyl) decomposition cross-check, dielectric
// rescaling, and the pair-interaction kernel with its radial derivative.
#include <doctest.h>

#include <cmath>

#include "core/free_green.hpp"
#include "core/materials.hpp"
#include "core/quadrature.hpp"

using dsp::GreenTensor3;
using dsp::Mat3;
using dsp::Material;
using dsp::Vec3;
using dsp::bulk_green_iw;
using dsp::dtr_gg_drho;
using dsp::free_space_green_iw;
using dsp::tr_gg;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("vacuum tensor along z at u = 1: component closed forms") {
  // rho = 1, xi = 1 (u = 1): A = 3, B = -7; transverse g = 3 e^{-1}/(4 pi),
  // longitudinal g = (A + B) e^{-1}/(4 pi) = -e^{-1}/pi.
  GreenTensor3 g =
      free_space_green_iw(Vec3(0, 0, 1), Vec3(0, 0, 0), 1.0);
  double e1 = std::exp(-1.0);
  CHECK(g.gxx() == doctest::Approx(3.0 * e1 / (4.0 * kPi)).epsilon(1e-13));
  CHECK(g.gyy() == doctest::Approx(3.0 * e1 / (4.0 * kPi)).epsilon(1e-13));
  CHECK(g.gxx() == doctest::Approx(0.08782474728647875).epsilon(1e-12));
  CHECK(g.gzz() == doctest::Approx(-e1 / kPi).epsilon(1e-13));
  // Off-diagonals vanish for axial separation.
  CHECK(std::abs(g.t(0, 1)) < 1e-15);
  CHECK(std::abs(g.t(0, 2)) < 1e-15);
}

TEST_CASE("symmetry and reciprocity at a generic orientation") {
  Vec3 r1(0.3, -0.2, 0.9), r2(-0.5, 0.4, 0.1);
  double xi = 0.7;
  GreenTensor3 g12 = free_space_green_iw(r1, r2, xi);
  GreenTensor3 g21 = free_space_green_iw(r2, r1, xi);
  // Each tensor is symmetric; swapping arguments transposes (here: equal).
  CHECK((g12.t - g12.t.transpose()).norm() < 1e-16);
  CHECK((g12.t - g21.t.transpose()).norm() < 1e-16);
}

TEST_CASE("rotation equivariance: R G(R r) R^T = G(r)") {
  double xi = 1.3;
  Vec3 d(0.8, 0.0, 0.0);
  // Rotate by 90 degrees about z: d -> (0, 0.8, 0).
  Mat3 rot;
  rot << 0, -1, 0, 1, 0, 0, 0, 0, 1;
  GreenTensor3 ga = free_space_green_iw(d, Vec3::Zero(), xi);
  GreenTensor3 gb = free_space_green_iw(rot * d, Vec3::Zero(), xi);
  CHECK((rot * ga.t * rot.transpose() - gb.t).norm() < 1e-14);
}

TEST_CASE("plane-wave decomposition cross-check of the trace") {
  // Two checks: (a) the tensor trace equals (3A + B) e^{-u}/(4 pi rho) built
  // from the scalar parts; (b) the scalar kernel obeys the angular-spectrum
  // (Sommerfeld) identity  e^{-xi rho}/(4 pi rho) =
  //   (1/4 pi) Int_0^inf dq q e^{-kappa rho}/kappa,  kappa = sqrt(q^2+xi^2),
  // evaluated here by quadrature -- the identity underlying every planar
  // decomposition in the library.
  double rho = 0.9, xi = 1.1, u = xi * rho;
  GreenTensor3 g = free_space_green_iw(Vec3(0, 0, rho), Vec3::Zero(), xi);
  double A = 1.0 + 1.0 / u + 1.0 / (u * u);
  double B = -(1.0 + 3.0 / u + 3.0 / (u * u));
  double expect = (3.0 * A + B) * std::exp(-u) / (4.0 * kPi * rho);
  CHECK(g.trace() == doctest::Approx(expect).epsilon(1e-13));

  // Scalar Weyl identity underlying the angular spectrum (numerical dq
  // integral vs closed form).
  dsp::QuadratureSpec spec;
  spec.rel_tol = 1e-10;
  auto f = [&](double q) {
    double kap = std::hypot(q, xi);
    return q * std::exp(-kap * rho) / kap / (4.0 * kPi);
  };
  auto r = dsp::integrate_semiinfinite(f, 0.0, spec);
  REQUIRE(r.converged);
  CHECK(r.value ==
        doctest::Approx(std::exp(-u) / (4.0 * kPi * rho)).epsilon(1e-9));
}

TEST_CASE("bulk medium rescales retardation with no overall prefactor") {
  // eps = 4 (constant): u -> 2 u. Transverse component at rho, xi equals the
  // vacuum transverse value at the same rho with xi' = 2 xi.
  double w0 = 1e8;
  Material m4 =
      Material::lorentz_model("eps4", {{std::sqrt(3.0) * w0, w0, 0.0}});
  double rho = 0.7, xi = 0.8;
  GreenTensor3 gb = bulk_green_iw(m4, Vec3(0, 0, rho), Vec3::Zero(), xi);
  GreenTensor3 gv = free_space_green_iw(Vec3(0, 0, rho), Vec3::Zero(), 2.0 * xi);
  CHECK(gb.gxx() == doctest::Approx(gv.gxx()).epsilon(1e-10));
  CHECK(gb.gzz() == doctest::Approx(gv.gzz()).epsilon(1e-10));
  CHECK(gb.trace() == doctest::Approx(gv.trace()).epsilon(1e-10));
}

TEST_CASE("pair kernel closed form matches the explicit tensor product") {
  double rho = 1.7, xi = 0.6;
  GreenTensor3 g = free_space_green_iw(Vec3(0, 0, rho), Vec3::Zero(), xi);
  double t_explicit = (g.t * g.t).trace();
  CHECK(tr_gg(rho, xi) == doctest::Approx(t_explicit).epsilon(1e-12));
}

TEST_CASE("pair kernel derivative matches finite differences") {
  double rho = 1.3, xi = 0.9, h = 1e-6;
  double fd = (tr_gg(rho + h, xi) - tr_gg(rho - h, xi)) / (2.0 * h);
  CHECK(dtr_gg_drho(rho, xi) == doctest::Approx(fd).epsilon(1e-7));
}

TEST_CASE("pair kernel static limit: xi^4 tr_gg -> 6/(16 pi^2 rho^6)") {
  // tr_gg itself diverges like 1/xi^4 at small xi (the 6/u^4 term), so the
  // finite static limit lives in the xi^4-weighted kernel; the residual
  // deviation is O((xi rho)^2).
  double rho = 2.1, xi = 1e-4;
  double expect = 6.0 / (16.0 * kPi * kPi * std::pow(rho, 6));
  CHECK(std::pow(xi, 4) * tr_gg(rho, xi) ==
        doctest::Approx(expect).epsilon(1e-6));
}

TEST_CASE("exponential decay at large u") {
  double g1 = std::abs(free_space_green_iw(Vec3(0, 0, 5.0), Vec3::Zero(), 4.0)
                           .trace());
  double g2 = std::abs(free_space_green_iw(Vec3(0, 0, 6.0), Vec3::Zero(), 4.0)
                           .trace());
  // One extra unit of rho at xi = 4 should suppress by roughly e^{-4}.
  CHECK(g2 / g1 < std::exp(-3.5));
}
