// Physical force quantities for planar geometries, assembled from the
// imaginary-frequency integrals (natural units hbar = c = eps0 = mu0 = 1;
// polarizabilities are volumes, alpha/eps0 in SI terms).
//
// Atom at height z above a wall:
//   F_z(z) = (1/4 pi^2) Int_0^inf dxi alpha(i xi)
//              Int_xi^inf dk k e^{-2kz} [ xi^2 (r_s - r_p) - 2(k^2 - xi^2) r_p ]
// which is the negative xi-integrated gradient of the coincident scattering
// trace; negative values mean attraction toward the wall.  The screened
// (medium-embedded) per-atom variant keeps only xi^2 (r_s - r_p) in the
// bracket.  Micro-object forces reuse the same kernels with the local-field
// weight chi(i xi) [derived from (1 + chi/3) * eta*alpha under the local-field
// relation] and a volume factor.  The wall-wall pressure is the standard
// round-trip mode sum
//   P(d) = -(1/2 pi^2) Int dxi Int_xi^inf dk k^2
//            sum_{s,p}  r- r+ e^{-2kd} / (1 - r- r+ e^{-2kd}).
#pragma once

#include <string>
#include <vector>

#include "core/green_types.hpp"
#include "core/layers.hpp"
#include "core/materials.hpp"
#include "core/quadrature.hpp"

namespace dsp {

struct ForceResult {
  Vec3 force = Vec3::Zero();
  double error_estimate = 0.0;
  long evaluations = 0;
  bool converged = false;
  std::vector<std::pair<int, double>> decade_breakdown;  // xi-decade -> F_z
  std::string note;
};

// Force on an isolated ground-state atom at height z above the stack.
ForceResult cp_force_atom(const Polarizability& alpha, const LayerStack& stack,
                          double z, const QuadratureSpec& spec);

// Small-distance asymptote -(3/16 pi^2 z^4) Int alpha (eps-1)/(eps+1) dxi for
// a bare half-space (or mirror, where the ratio is 1); for comparison against
// cp_force_atom, not a replacement for it.
ForceResult cp_force_atom_nonretarded_check(const Polarizability& alpha,
                                            const LayerStack& stack, double z,
                                            const QuadratureSpec& spec);

// Large-distance asymptote -3 alpha(0) / (8 pi^2 z^5) over an ideal mirror.
double cp_retarded_asymptote(double alpha_static, double z);

// Screened per-atom force for an atom embedded in a dilute medium of number
// density eta facing the wall.  eta enters only through the passivity gate;
// the leading-order force itself depends on alpha alone.
ForceResult cp_force_medium_atom(const Polarizability& alpha, double eta,
                                 const LayerStack& stack, double z,
                                 const QuadratureSpec& spec);

// Same quantity assembled from the tensor-component derivatives
// (-1/pi) Int dxi alpha [ xi^2 dz g_xx - xi^2 dz g_zz / 2 ]: an independent
// evaluation path that must agree with cp_force_medium_atom.
ForceResult cp_force_medium_atom_assembled(const Polarizability& alpha,
                                           double eta, const LayerStack& stack,
                                           double z,
                                           const QuadratureSpec& spec);

enum class MicroShape { isolated, embedded };

// Force on a small object of volume V at height z, assumed small enough that
// the scattering tensor is constant across it (V enters purely as a scale).
// weak_limit replaces the local-field susceptibility by the bare
// superposition weight eta*alpha, dropping the (1 + chi/3) enhancement.
ForceResult micro_object_force(const Susceptibility& chi, double volume,
                               MicroShape shape, bool weak_limit,
                               const LayerStack& stack, double z,
                               const QuadratureSpec& spec);

// Pressure between two walls separated by a vacuum gap d (per unit area,
// reported in force.z(); negative = attraction).
ForceResult lifshitz_pressure(const LayerStack& left, double d,
                              const LayerStack& right,
                              const QuadratureSpec& spec);

double lifshitz_mirror_asymptote(double d);  // -pi^2/(240 d^4)

}  // namespace dsp
