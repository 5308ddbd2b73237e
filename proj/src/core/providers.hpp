// Green-tensor providers: a uniform interface over the environments a pair of
// atoms or a voxelized body can sit in (free space, homogeneous bulk medium,
// planar wall).  Each provider exposes the full tensor between distinct
// points plus its translation-noninvariant scattering part, which is what
// survives the coincidence-limit regularization in force formulas.
#pragma once

#include <memory>

#include "core/green_types.hpp"
#include "core/layers.hpp"
#include "core/quadrature.hpp"

namespace dsp {

class GreenProvider {
 public:
  enum class Kind { free_space, bulk, planar };

  virtual ~GreenProvider() = default;

  virtual Kind kind() const = 0;
  virtual bool translation_invariant() const = 0;
  // Effective refractive index sqrt(eps*mu) of the embedding medium (1 for
  // free space and planar vacuum regions); used by closed-form pair kernels.
  virtual double refractive_index(double /*xi*/) const { return 1.0; }

  // Full tensor between distinct points.
  virtual GreenTensor3 eval(const Vec3& r1, const Vec3& r2,
                            double xi) const = 0;
  // Scattering part between (possibly distinct) points; zero for
  // translation-invariant environments.
  virtual GreenTensor3 scattering(const Vec3& r1, const Vec3& r2,
                                  double xi) const = 0;
  // Scattering part at coincident points (finite everywhere it is defined).
  virtual GreenTensor3 scattering_coincident(const Vec3& r,
                                             double xi) const = 0;
};

std::unique_ptr<GreenProvider> make_free_space_provider();
std::unique_ptr<GreenProvider> make_bulk_provider(Material medium);
std::unique_ptr<GreenProvider> make_planar_provider(LayerStack stack,
                                                    QuadratureSpec spec);

// Planar providers expose their stack for force-code fast paths.
const LayerStack* provider_stack(const GreenProvider& p);

}  // namespace dsp
