// Closed-form dyadic Green tensors of unbounded media at imaginary frequency
// (natural units, c = 1).  For separation rho = |r1 - r2| and u = xi*rho the
// vacuum tensor is
//   G(i xi) = e^{-u}/(4 pi rho) [ A(u) 1 + B(u) rhat rhat ],
//   A = 1 + 1/u + 1/u^2,   B = -(1 + 3/u + 3/u^2),
// real, symmetric, and exponentially decaying.  A homogeneous dielectric
// rescales the retardation phase, u -> sqrt(eps(i xi)) * u, with no overall
// eps prefactor (the wave operator curl curl - eps (i xi/c)^2 has a unit
// delta source in this convention).
//
// Also provided: the pair-interaction kernel Tr[G.G] and its radial
// derivative in closed form,
//   Tr[G.G] = e^{-2u}/(16 pi^2 rho^2) (2 + 4/u + 10/u^2 + 12/u^3 + 6/u^4),
// which drives the two-atom force integrals.
#pragma once

#include "core/green_types.hpp"
#include "core/materials.hpp"

namespace dsp {

// Scalar transverse/longitudinal parts: G = g_t (1 - rhat rhat) + g_l
// rhat rhat with g_t = e^{-u} A/(4 pi rho), g_l = e^{-u}(A+B)/(4 pi rho).
double free_green_transverse(double rho, double u);
double free_green_longitudinal(double rho, double u);

// Full vacuum tensor; r1 != r2, xi > 0.
GreenTensor3 free_space_green_iw(const Vec3& r1, const Vec3& r2, double xi);

// Homogeneous-dielectric tensor: vacuum form with u -> sqrt(eps(i xi)) u.
GreenTensor3 bulk_green_iw(const Material& medium, const Vec3& r1,
                           const Vec3& r2, double xi);

// Tr[G(rho).G(rho)] for the unbounded medium with effective frequency
// xi_eff = sqrt(eps) * xi (vacuum: xi_eff = xi), and its d/drho.
double tr_gg(double rho, double xi_eff);
double dtr_gg_drho(double rho, double xi_eff);

}  // namespace dsp
