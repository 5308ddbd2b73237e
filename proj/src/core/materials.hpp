// Material response on the imaginary frequency axis.  Everything here is
// purely real: for omega = i*xi a passive oscillator model gives
//   alpha(i xi) = a0 * sum_k W_k^2 / (w_k^2 + xi^2 + g_k*xi),
// positive and strictly decreasing in xi; permittivity and permeability
// models have the same structure plus the vacuum constant 1.  Damping g_k is
// accepted for completeness but is zero by default -- on this axis it only
// shifts xi^2 -> xi^2 + g*xi and no poles are ever crossed.
#pragma once

#include <memory>
#include <string>
#include <vector>

#include "core/errors.hpp"

namespace dsp {

// ------------------------------------------------------------ polarizability

struct OscillatorTerm {
  double coupling;    // W_k  (angular frequency)
  double resonance;   // w_k  (angular frequency, > 0)
  double gamma = 0.0; // damping; irrelevant on the imaginary axis at gamma=0
};

class Polarizability {
 public:
  // Null atom: alpha identically zero (placeholder for containers/configs).
  Polarizability() : scale_(0.0), terms_{{1.0, 1.0, 0.0}} {}
  Polarizability(double strength_scale, std::vector<OscillatorTerm> terms);

  // alpha(i xi); xi must be >= 0.
  double at(double xi) const;
  double static_value() const { return at(0.0); }
  double strength_scale() const { return scale_; }
  const std::vector<OscillatorTerm>& terms() const { return terms_; }

 private:
  double scale_;
  std::vector<OscillatorTerm> terms_;
};

// ----------------------------------------------------------------- materials

struct LorentzTerm {
  double plasma;      // w_p: contributes w_p^2/(w0^2 + xi^2 + g*xi)
  double resonance;   // w0 > 0
  double gamma = 0.0;
};

// A planar-stack medium.  Besides Drude-Lorentz models this supports three
// special kinds: an ideal mirror (reflection marker r_p=+1, r_s=-1, exact
// limit of eps -> inf), a tabulated eps(i xi) interpolated monotonically, and
// a test-only marker whose interfaces reflect r_s = r_p = 1/2.
class Material {
 public:
  enum class Kind { lorentz, mirror, table, equal_reflection };

  static Material vacuum(std::string label = "vacuum");
  static Material lorentz_model(std::string label, std::vector<LorentzTerm> eps,
                                std::vector<LorentzTerm> mu = {});
  static Material mirror(std::string label = "mirror");
  // Tabulated eps(i xi): xi strictly increasing, eps >= 1 and non-increasing.
  // Below the first node the value is held; above the last it decays to 1
  // like 1/xi^2 (matching the universal high-frequency falloff).
  static Material table(std::string label, std::vector<double> xi,
                        std::vector<double> eps);
  static Material equal_reflection_marker();

  Kind kind() const { return kind_; }
  const std::string& label() const { return label_; }
  bool is_vacuum() const;

  double eps(double xi) const;  // xi >= 0; mirror: huge sentinel, unused
  double mu(double xi) const;

 private:
  Material() = default;
  Kind kind_ = Kind::lorentz;
  std::string label_;
  std::vector<LorentzTerm> eps_terms_;
  std::vector<LorentzTerm> mu_terms_;
  // table data (shared so Material stays cheaply copyable)
  struct Table;
  std::shared_ptr<const Table> table_;
};

// ------------------------------------------------------------ susceptibility

// chi_M(i xi) of a body/medium.  Either derived from (density, polarizability)
// through the local-field relation chi = y/(1 - y/3), y = eta*alpha/eps0
// (volume-units polarizability), or given directly as an oscillator sum.
// The derived form retains (eta, alpha) so the weak-superposition limit
// (chi -> eta*alpha) stays available downstream.
class Susceptibility {
 public:
  // Direct model: chi(i xi) = scale * sum_k a_k w_k^2/(w_k^2 + xi^2 + g xi).
  struct DirectTerm {
    double amplitude;
    double resonance;
    double gamma = 0.0;
  };
  // Null medium: chi identically zero (placeholder for containers/configs).
  Susceptibility() = default;
  static Susceptibility direct(std::vector<DirectTerm> terms,
                               double scale = 1.0);

  double chi(double xi) const;           // xi >= 0
  double static_value() const { return chi(0.0); }

  bool from_local_field() const { return alpha_ != nullptr; }
  double density() const;                          // requires from_local_field
  double weak_chi(double xi) const;                // eta*alpha(i xi)
  const Polarizability& base_polarizability() const;

  // A copy whose chi is multiplied pointwise by `factor` (direct models only;
  // used by convergence studies that sweep the coupling strength).
  Susceptibility scaled(double factor) const;

 private:
  friend Susceptibility clausius_mosotti(double, const Polarizability&);
  double scale_ = 1.0;
  std::vector<DirectTerm> terms_;
  double eta_ = 0.0;
  std::shared_ptr<const Polarizability> alpha_;
};

// Local-field relation with its passivity gate: requires
// eta*alpha(0)/3 < 1 (volume-units alpha); throws CausalityViolation with the
// offending gate value otherwise.
Susceptibility clausius_mosotti(double eta, const Polarizability& alpha);

// Pointwise inverse of the local-field relation: given chi, returns
// y = eta*alpha/eps0 = chi/(1 + chi/3).  Requires chi > -3.
double polarizability_from_chi(double chi);

}  // namespace dsp
