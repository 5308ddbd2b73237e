// Voxelized-body solver: host recovery at zero susceptibility, the one-voxel
// local-field closed form, block reciprocity, multiple-scattering (quadratic)
// content of exact - linear, crossing-term reduction to the pair force, grid
// refinement, and the validity / passivity guards.
#include <doctest.h>

#include <array>
#include <cmath>
#include <random>
#include <vector>

#include "core/born_voxel.hpp"
#include "core/errors.hpp"
#include "core/providers.hpp"

using dsp::DysonSolution;
using dsp::ForceResult;
using dsp::GreenProvider;
using dsp::LayerStack;
using dsp::Mat3;
using dsp::Material;
using dsp::MicroShape;
using dsp::Polarizability;
using dsp::QuadratureSpec;
using dsp::Susceptibility;
using dsp::Vec3;
using dsp::VoxelBody;
using dsp::body_force_exact;
using dsp::body_force_linear;
using dsp::crossing_force;
using dsp::kMaxVoxels;
using dsp::make_free_space_provider;
using dsp::make_planar_provider;
using dsp::micro_object_force;
using dsp::solve_dyson;
using dsp::vdw_force;

namespace {

QuadratureSpec spec(double tol = 1e-7) {
  QuadratureSpec s;
  s.rel_tol = tol;
  return s;
}

Susceptibility chi_direct(double chi0) {
  return Susceptibility::direct({{chi0, 1.0, 0.0}});
}

std::unique_ptr<GreenProvider> mirror_host() {
  return make_planar_provider(LayerStack::mirror(), spec(1e-9));
}

// Random voxel cloud with min pairwise distance >= pitch, all z >= z_floor.
VoxelBody random_cloud(int n, double pitch, double z_floor, unsigned seed,
                       Susceptibility chi) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  VoxelBody body;
  body.pitch = pitch;
  body.susceptibilities = {std::move(chi)};
  while (static_cast<int>(body.centers.size()) < n) {
    Vec3 c(u(rng), u(rng), z_floor + u(rng));
    bool ok = true;
    for (const auto& p : body.centers) {
      if ((p - c).norm() < pitch * 1.05) {
        ok = false;
        break;
      }
    }
    if (ok) body.centers.push_back(c);
  }
  return body;
}

double max_block_asymmetry(const DysonSolution& sol) {
  double worst = 0.0;
  for (std::size_t i = 0; i < sol.size(); ++i) {
    for (std::size_t j = i + 1; j < sol.size(); ++j) {
      Mat3 gij = sol.block(i, j);
      Mat3 gji = sol.block(j, i);
      double denom = gij.norm();
      if (denom == 0.0) denom = 1.0;
      worst = std::max(worst, (gij - gji.transpose()).norm() / denom);
    }
  }
  return worst;
}

}  // namespace

TEST_CASE("zero susceptibility recovers the host tensor exactly") {
  auto host = mirror_host();
  VoxelBody body = VoxelBody::box(Vec3(0, 0, 1.0), {2, 2, 2}, 0.1,
                                  chi_direct(0.0));
  DysonSolution sol = solve_dyson(*host, body, 0.7);
  for (std::size_t i = 0; i < body.size(); ++i) {
    for (std::size_t j = 0; j < body.size(); ++j) {
      Mat3 expect =
          (i == j)
              ? host->scattering_coincident(body.centers[i], 0.7).t
              : host->eval(body.centers[i], body.centers[j], 0.7).t;
      CHECK((sol.block(i, j) - expect).norm() <= 1e-13 * expect.norm());
    }
  }
  CHECK(sol.residual() < 1e-14);
}

TEST_CASE("one-voxel solve reproduces the [1 + chi/3]^-1 closed form") {
  auto host = mirror_host();
  double chi0 = 0.3, z = 1.0, xi = 0.8;
  VoxelBody body;
  body.pitch = 0.04;
  body.centers = {Vec3(0, 0, z)};
  body.susceptibilities = {chi_direct(chi0)};
  DysonSolution sol = solve_dyson(*host, body, xi);
  Mat3 gs = host->scattering_coincident(Vec3(0, 0, z), xi).t;
  double chi_xi = body.susceptibilities[0].chi(xi);
  Mat3 expect = gs / (1.0 + chi_xi / 3.0);
  CHECK((sol.block(0, 0) - expect).norm() <= 1e-12 * expect.norm());
}

TEST_CASE("one-voxel exact force matches the small-object closed form") {
  // A single voxel with local-field susceptibility chi: the dense solve
  // carries weight chi/(1+chi/3) = eta*alpha, i.e. the weak-limit small-
  // object force; agreement is limited only by the pitch/4 gradient stencil.
  auto host = mirror_host();
  double z = 1.0, pitch = z / 30.0;
  Polarizability a(0.01, {{1.0, 1.0, 0.0}});
  Susceptibility chi = dsp::clausius_mosotti(30.0, a);  // chi(0) ~ 0.33
  VoxelBody body;
  body.pitch = pitch;
  body.centers = {Vec3(0, 0, z)};
  body.susceptibilities = {chi};
  ForceResult exact = body_force_exact(*host, body, spec(1e-8));
  REQUIRE(exact.converged);
  ForceResult small = micro_object_force(chi, body.voxel_volume(),
                                         MicroShape::isolated, true,
                                         LayerStack::mirror(), z, spec(1e-8));
  REQUIRE(small.converged);
  CHECK(exact.force.z() ==
        doctest::Approx(small.force.z()).epsilon(1e-3));
}

TEST_CASE("block reciprocity on random 20-voxel bodies") {
  // Free-space host.
  {
    auto host = make_free_space_provider();
    for (unsigned seed : {11u, 22u, 33u}) {
      VoxelBody body = random_cloud(20, 0.05, 1.0, seed, chi_direct(0.4));
      DysonSolution sol = solve_dyson(*host, body, 0.9);
      CHECK(max_block_asymmetry(sol) < 1e-12);
      CHECK(sol.residual() < 1e-10);
    }
  }
  // Mirror host (image closed form, bit-exact reciprocal host blocks).
  {
    auto host = mirror_host();
    VoxelBody body = random_cloud(20, 0.05, 0.5, 44u, chi_direct(0.4));
    DysonSolution sol = solve_dyson(*host, body, 0.6);
    CHECK(max_block_asymmetry(sol) < 1e-12);
  }
}

TEST_CASE("exact - linear deviation scales quadratically in chi") {
  // Two-voxel body over a mirror: multiple scattering enters at O(chi^2).
  auto host = mirror_host();
  std::vector<double> lx, ly;
  for (double chi0 : {1e-3, 1e-2, 1e-1}) {
    VoxelBody body = VoxelBody::box(Vec3(0, 0, 1.0), {1, 1, 2}, 0.1,
                                    chi_direct(chi0));
    ForceResult exact = body_force_exact(*host, body, spec(1e-9));
    ForceResult linear = body_force_linear(*host, body, spec(1e-9));
    REQUIRE(exact.converged);
    REQUIRE(linear.converged);
    double dev = std::abs(exact.force.z() - linear.force.z());
    CHECK(dev > 0.0);
    lx.push_back(std::log(chi0));
    ly.push_back(std::log(dev));
  }
  double slope = (ly.back() - ly.front()) / (lx.back() - lx.front());
  CHECK(slope == doctest::Approx(2.0).epsilon(0.075));
}

TEST_CASE("linear path is exactly linear in chi") {
  auto host = mirror_host();
  VoxelBody b1 = VoxelBody::box(Vec3(0, 0, 1.0), {2, 1, 1}, 0.08,
                                chi_direct(0.02));
  VoxelBody b2 = b1;
  b2.susceptibilities = {chi_direct(0.02).scaled(3.0)};
  ForceResult f1 = body_force_linear(*host, b1, spec(1e-9));
  ForceResult f2 = body_force_linear(*host, b2, spec(1e-9));
  CHECK(f2.force.z() == doctest::Approx(3.0 * f1.force.z()).epsilon(1e-9));
}

TEST_CASE("attraction toward the mirror and sign flip with chi") {
  auto host = mirror_host();
  VoxelBody pos = VoxelBody::box(Vec3(0, 0, 1.0), {1, 1, 2}, 0.1,
                                 chi_direct(0.1));
  VoxelBody neg = VoxelBody::box(Vec3(0, 0, 1.0), {1, 1, 2}, 0.1,
                                 chi_direct(-0.1));
  ForceResult fp = body_force_exact(*host, pos, spec());
  ForceResult fn = body_force_exact(*host, neg, spec());
  CHECK(fp.force.z() < 0.0);  // polarizable matter is attracted
  CHECK(fn.force.z() > 0.0);  // anti-polarizable marker repelled
}

TEST_CASE("grid refinement converges at second order") {
  // Same physical column (0.2 long) resolved with 2, 4, then 8 voxels:
  // successive force differences should shrink by ~4x (pitch^2 stencil +
  // discretization).  Accept the ratio in [0.15, 0.6].
  auto host = mirror_host();
  auto force_at = [&](int n) {
    double pitch = 0.2 / n;
    VoxelBody body = VoxelBody::box(Vec3(0, 0, 1.0), {1, 1, n}, pitch,
                                    chi_direct(0.2));
    ForceResult f = body_force_exact(*host, body, spec(1e-8));
    REQUIRE(f.converged);
    return f.force.z();
  };
  double f2 = force_at(2), f4 = force_at(4), f8 = force_at(8);
  double ratio = std::abs(f8 - f4) / std::abs(f4 - f2);
  CHECK(ratio > 0.15);
  CHECK(ratio < 0.6);
}

TEST_CASE("crossing force equals the pair force for single-voxel weak bodies") {
  auto host = make_free_space_provider();
  double chi0 = 0.05, pitch = 0.05, rho = 1.5;
  VoxelBody b1, b2;
  b1.pitch = b2.pitch = pitch;
  b1.centers = {Vec3(0, 0, 0)};
  b2.centers = {Vec3(rho, 0, 0)};
  b1.susceptibilities = {chi_direct(chi0)};
  b2.susceptibilities = {chi_direct(chi0)};
  ForceResult cross = crossing_force(*host, b1, b2, spec(1e-9));
  REQUIRE(cross.converged);
  // Equivalent atom: alpha(i xi) = chi(i xi) * dV.
  double dv = pitch * pitch * pitch;
  Polarizability eq(chi0 * dv, {{1.0, 1.0, 0.0}});
  ForceResult pair = vdw_force(eq, eq, *host, Vec3(0, 0, 0), Vec3(rho, 0, 0),
                               spec(1e-9));
  REQUIRE(pair.converged);
  CHECK(std::abs(cross.force.x() - pair.force.x()) <=
        1e-8 * std::abs(pair.force.x()));
}

TEST_CASE("crossing force is antisymmetric under body exchange") {
  auto host = make_free_space_provider();
  VoxelBody b1 = VoxelBody::box(Vec3(0, 0, 0), {1, 1, 2}, 0.05,
                                chi_direct(0.1));
  VoxelBody b2 = VoxelBody::box(Vec3(1.2, 0.3, 0), {2, 1, 1}, 0.05,
                                chi_direct(0.07));
  ForceResult f12 = crossing_force(*host, b1, b2, spec(1e-8));
  ForceResult f21 = crossing_force(*host, b2, b1, spec(1e-8));
  CHECK((f12.force + f21.force).norm() <= 1e-10 * f12.force.norm());
}

TEST_CASE("separation gate: bodies closer than 3 pitches are rejected") {
  auto host = make_free_space_provider();
  VoxelBody b1, b2;
  b1.pitch = b2.pitch = 0.1;
  b1.centers = {Vec3(0, 0, 0)};
  b2.centers = {Vec3(0.25, 0, 0)};  // 2.5 pitches away
  b1.susceptibilities = {chi_direct(0.1)};
  b2.susceptibilities = {chi_direct(0.1)};
  CHECK_THROWS_AS(crossing_force(*host, b1, b2, spec()),
                  dsp::SeparationTooSmall);
}

TEST_CASE("wall clearance: voxels must keep half a pitch of vacuum") {
  auto host = mirror_host();
  VoxelBody body;
  body.pitch = 0.2;
  body.centers = {Vec3(0, 0, 0.05)};  // < pitch/2 above the wall
  body.susceptibilities = {chi_direct(0.1)};
  CHECK_THROWS_AS(body_force_exact(*host, body, spec()),
                  dsp::SeparationTooSmall);
}

TEST_CASE("body validation: passivity gate and size limits") {
  VoxelBody body;
  body.pitch = 0.1;
  body.centers = {Vec3(0, 0, 1)};
  body.susceptibilities = {chi_direct(-3.5)};  // 1 + chi/3 < 0 at xi = 0
  CHECK_THROWS_AS(body.validate(), dsp::CausalityViolation);

  VoxelBody big;
  big.pitch = 0.1;
  big.susceptibilities = {chi_direct(0.1)};
  for (std::size_t i = 0; i < kMaxVoxels + 1; ++i) {
    big.centers.push_back(Vec3(0.2 * static_cast<double>(i), 0, 1));
  }
  CHECK_THROWS_AS(big.validate(), dsp::ValidationError);

  VoxelBody overlap;
  overlap.pitch = 0.1;
  overlap.susceptibilities = {chi_direct(0.1)};
  overlap.centers = {Vec3(0, 0, 1), Vec3(0.05, 0, 1)};  // closer than pitch
  CHECK_THROWS_AS(overlap.validate(), dsp::ValidationError);
}

TEST_CASE("sphere generator stays within radius and respects the grid") {
  VoxelBody s = VoxelBody::sphere(Vec3(0, 0, 2.0), 0.25, 0.1, chi_direct(0.1));
  CHECK(s.size() > 4);
  for (const auto& c : s.centers) {
    CHECK((c - Vec3(0, 0, 2.0)).norm() <= 0.25 * (1.0 + 1e-9));
  }
  s.validate();
}

TEST_CASE("per-voxel susceptibilities are honored") {
  // Voxel 1 is inert (chi = 0) next to one polarizable voxel.  In free space
  // the host scattering part vanishes, so solving the 2x2 block system by
  // hand gives
  //   X00 = 0,
  //   X01 = G(s0,s1) / (1 + chi_0/3),
  //   X11 = -xi^2 chi_0 dV G(s1,s0) G(s0,s1) / (1 + chi_0/3):
  // rows at the polarizable voxel carry the cavity-field dressing
  // (1 + chi_0/3), and the only scattering path into the inert voxel is
  // s1 -> s0 -> s1.
  auto host = make_free_space_provider();
  double xi = 0.5, chi0 = 0.2, pitch = 0.1;
  VoxelBody body;
  body.pitch = pitch;
  body.centers = {Vec3(0, 0, 1.0), Vec3(0, 0, 1.1)};
  body.susceptibilities = {chi_direct(chi0), chi_direct(0.0)};
  DysonSolution sol = solve_dyson(*host, body, xi);

  Mat3 g01 = host->eval(body.centers[0], body.centers[1], xi).t;
  Mat3 g10 = host->eval(body.centers[1], body.centers[0], xi).t;
  double chi_xi = body.susceptibilities[0].chi(xi);
  double dress = 1.0 + chi_xi / 3.0;
  double w = chi_xi * body.voxel_volume();
  Mat3 expect11 = -xi * xi * w * g10 * g01 / dress;
  Mat3 expect01 = g01 / dress;
  CHECK((sol.block(1, 1) - expect11).norm() <= 1e-12 * expect11.norm());
  CHECK(sol.block(0, 0).norm() <= 1e-14);
  CHECK((sol.block(0, 1) - expect01).norm() <= 1e-13 * expect01.norm());
}
