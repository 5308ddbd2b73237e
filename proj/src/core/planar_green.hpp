// Scattering part of the Green tensor for planar multilayer walls at
// imaginary frequency (natural units).  A wall occupying z <= 0 reflects the
// angular spectrum with composed amplitudes r_s, r_p; after Wick rotation the
// perpendicular wavenumber becomes i*kappa with kappa = sqrt(q^2 + xi^2)
// real, so every integrand below is real and exponentially damped.
//
// Coincident points at height z (kappa-substituted, q dq = kappa dkappa):
//   g_zz = -(1/4 pi xi^2) Int_xi^inf dk (k^2 - xi^2) e^{-2kz} r_p
//   g_xx = g_yy = (1/8 pi) Int_xi^inf dk e^{-2kz} [ r_s - (k^2/xi^2) r_p ]
//   Tr   = (1/4 pi) Int_xi^inf dk e^{-2kz}
//            [ (r_s - r_p) - 2 (k^2 - xi^2)/xi^2 * r_p ]          (= 2g_xx+g_zz)
// Off-diagonal components vanish by in-plane isotropy.
//
// The xi2_dz_* variants carry the analytic z-derivative (extra factor -2k)
// and a factor xi^2 folded into the integrand, which keeps force integrands
// finite as xi -> 0; they are the building blocks of all planar forces.
#pragma once

#include "core/green_types.hpp"
#include "core/layers.hpp"
#include "core/quadrature.hpp"

namespace dsp {

struct ScalarQuad {
  double value = 0.0;
  IntegralResult quad;
};

GreenTensor3 scattering_green_coincident(const LayerStack& stack, double z,
                                         double xi,
                                         const QuadratureSpec& spec);

ScalarQuad scattering_green_trace(const LayerStack& stack, double z, double xi,
                                  const QuadratureSpec& spec);

// xi^2 * d/dz of g_xx, g_zz and the trace at coincident points.
ScalarQuad xi2_dz_gxx(const LayerStack& stack, double z, double xi,
                      const QuadratureSpec& spec);
ScalarQuad xi2_dz_gzz(const LayerStack& stack, double z, double xi,
                      const QuadratureSpec& spec);
ScalarQuad xi2_dz_trace(const LayerStack& stack, double z, double xi,
                        const QuadratureSpec& spec);

// Two-sided gap: left wall below z = 0, right wall above z = d, evaluation at
// 0 < z < d.  Multiple reflections enter through the round-trip denominators
// D_sigma = 1 - r_left r_right e^{-2 kappa d}; either side may be an empty
// stack, reproducing the one-wall result.
GreenTensor3 scattering_green_gap(const LayerStack& left, double d,
                                  const LayerStack& right, double z, double xi,
                                  const QuadratureSpec& spec);

// Scattering part between two distinct points above the wall (z1, z2 > 0).
// General stacks use Sommerfeld-type q-integrals with Bessel kernels
// J_0, J_1, J_2(q rho); an ideal-mirror stack takes the exact image-source
// closed form G0(r1 - mirror(r2)) . diag(-1,-1,+1) instead.
GreenTensor3 scattering_green_points(const LayerStack& stack, const Vec3& r1,
                                     const Vec3& r2, double xi,
                                     const QuadratureSpec& spec);

}  // namespace dsp
