// Two-atom dispersion forces mediated by an arbitrary environment:
//   F1 = (1/2 pi) Int_0^inf dxi xi^4 alpha1(i xi) alpha2(i xi)
//          grad_1 Tr[ G(r1, r2, i xi) . G(r2, r1, i xi) ]
// (natural units; force on atom 1, attraction points from 1 toward 2).
// Translation-invariant environments (free space, bulk) use the closed-form
// radial derivative of the product-trace kernel; planar environments fall
// back to Richardson-extrapolated central differences of the full tensors
// inside the xi-integrand (step 1e-4 * rho, one extrapolation level).
#pragma once

#include <functional>

#include "core/materials.hpp"
#include "core/planar_forces.hpp"
#include "core/providers.hpp"

namespace dsp {

enum class GradientMode { automatic, finite_difference };

ForceResult vdw_force(const Polarizability& a1, const Polarizability& a2,
                      const GreenProvider& env, const Vec3& r1, const Vec3& r2,
                      const QuadratureSpec& spec,
                      GradientMode mode = GradientMode::automatic);

// London dispersion coefficient C6 = (3/16 pi^3) Int alpha1 alpha2 dxi; the
// short-distance potential is -C6/rho^6 (force magnitude 6 C6/rho^7).
double vdw_c6(const Polarizability& a1, const Polarizability& a2,
              const QuadratureSpec& spec);

// Long-distance closed form -161 alpha1(0) alpha2(0) / (64 pi^3 rho^8):
// the radial force component in free space.
double vdw_retarded_asymptote(double alpha1_static, double alpha2_static,
                              double rho);

// Generalized pair kernel shared with the crossing-term force between weak
// bodies: the two weights are arbitrary functions of xi (for a voxel pair,
// delta-chi(i xi) times the voxel volume).
ForceResult pair_dispersion_force(const std::function<double(double)>& w1,
                                  const std::function<double(double)>& w2,
                                  const GreenProvider& env, const Vec3& r1,
                                  const Vec3& r2, const QuadratureSpec& spec,
                                  GradientMode mode = GradientMode::automatic);

}  // namespace dsp
