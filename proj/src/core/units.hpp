// Unit handling.  All core computations run in natural units
// hbar = c = eps0 = mu0 = 1 with a user-declared reference angular frequency
// omega_ref; the derived length unit is L0 = c/omega_ref.  Polarizabilities
// are carried as volumes (alpha/eps0 in SI), number densities as inverse
// volumes.  SI conversion happens only at the scenario/CSV boundary, which
// keeps quadrature internals free of 1e-40-scale prefactors.
#pragma once

namespace dsp {

namespace si {
inline constexpr double c = 299792458.0;            // m/s
inline constexpr double hbar = 1.054571817e-34;     // J s
inline constexpr double eps0 = 8.8541878128e-12;    // F/m
}  // namespace si

struct UnitSystem {
  bool is_si = false;        // false: inputs/outputs already natural
  double omega_ref = 1.0;    // rad/s; defines L0 = c/omega_ref when is_si

  double length_unit() const { return si::c / omega_ref; }  // meters per unit

  // --- SI -> natural -------------------------------------------------------
  double length_in(double meters) const {
    return is_si ? meters / length_unit() : meters;
  }
  double frequency_in(double rad_per_s) const {
    return is_si ? rad_per_s / omega_ref : rad_per_s;
  }
  // SI polarizability (C m^2/V) -> natural volume: (alpha/eps0) / L0^3.
  double polarizability_in(double alpha_si) const {
    if (!is_si) return alpha_si;
    double l0 = length_unit();
    return alpha_si / si::eps0 / (l0 * l0 * l0);
  }
  double density_in(double per_m3) const {
    if (!is_si) return per_m3;
    double l0 = length_unit();
    return per_m3 * l0 * l0 * l0;
  }
  double volume_in(double m3) const {
    if (!is_si) return m3;
    double l0 = length_unit();
    return m3 / (l0 * l0 * l0);
  }

  // --- natural -> SI -------------------------------------------------------
  // Natural force unit: hbar * omega_ref^2 / c  (Newtons).
  double force_out(double f_nat) const {
    return is_si ? f_nat * si::hbar * omega_ref * omega_ref / si::c : f_nat;
  }
  // Natural pressure unit: hbar * omega_ref^4 / c^3  (N/m^2).
  double pressure_out(double p_nat) const {
    if (!is_si) return p_nat;
    double w2 = omega_ref * omega_ref;
    return p_nat * si::hbar * w2 * w2 / (si::c * si::c * si::c);
  }
  double length_out(double l_nat) const {
    return is_si ? l_nat * length_unit() : l_nat;
  }
};

}  // namespace dsp
