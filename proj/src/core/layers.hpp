// Planar multilayer stacks and their s/p reflection amplitudes on the
// imaginary frequency axis.  Conventions (natural units, c = 1):
//   - the evaluation region z > 0 is vacuum; the stack lists the wall from
//     its vacuum-facing surface inward, ending in a half-space;
//   - per-medium decay constant kappa_j = sqrt(q^2 + eps_j*mu_j*xi^2), real
//     and positive for every passive medium -- there is no propagating /
//     evanescent split on this axis;
//   - interface amplitudes r_s = (mu_b ka - mu_a kb)/(mu_b ka + mu_a kb),
//     r_p = (eps_b ka - eps_a kb)/(eps_b ka + eps_a kb) for light incident
//     from medium a onto medium b;
//   - finite layers compose by the standard recursion
//     r = (r_top + r_rest e^{-2 kappa d})/(1 + r_top r_rest e^{-2 kappa d}).
// An ideal mirror reflects (r_s, r_p) = (-1, +1) and terminates the stack.
#pragma once

#include <optional>
#include <vector>

#include "core/materials.hpp"

namespace dsp {

struct ReflexPair {
  double rs = 0.0;
  double rp = 0.0;
};

struct Layer {
  Material material;
  double thickness = 0.0;  // ignored when half_space
  bool half_space = false;
};

class LayerStack {
 public:
  // Empty stack: no wall at all (all reflections vanish).
  static LayerStack vacuum_gap();
  static LayerStack half_space(Material m);
  static LayerStack mirror();
  static LayerStack equal_reflection_test();
  // General stack, outermost (vacuum-facing) layer first; the last entry must
  // be a half-space or a mirror, interior thicknesses must be > 0.
  static LayerStack from_layers(std::vector<Layer> layers);

  const std::vector<Layer>& layers() const { return layers_; }
  bool is_empty() const { return layers_.empty(); }
  bool is_single_mirror() const {
    return layers_.size() == 1 &&
           layers_[0].material.kind() == Material::Kind::mirror;
  }

 private:
  std::vector<Layer> layers_;
};

// Single-interface amplitudes, light incident from `a` onto `b`; xi >= 0,
// q >= 0 (not both zero).  Mirror as `b` gives (-1, +1) regardless of `a`.
ReflexPair fresnel_iw(const Material& a, const Material& b, double xi,
                      double q);

// Composed amplitudes of the whole stack for vacuum-side incidence.
ReflexPair generalized_reflection(const LayerStack& stack, double xi, double q);

// Same, parameterized by the vacuum-side decay constant kappa >= xi
// (q = sqrt(kappa^2 - xi^2)); this is the variable the force integrals use.
ReflexPair stack_reflection_kappa(const LayerStack& stack, double xi,
                                  double kappa);

}  // namespace dsp
