#include "core/providers.hpp"

#include <cmath>

#include "core/free_green.hpp"
#include "core/planar_green.hpp"

namespace dsp {
namespace {

GreenTensor3 zero_tensor(double xi) {
  GreenTensor3 g;
  g.xi = xi;
  return g;
}

class FreeSpaceProvider final : public GreenProvider {
 public:
  Kind kind() const override { return Kind::free_space; }
  bool translation_invariant() const override { return true; }
  GreenTensor3 eval(const Vec3& r1, const Vec3& r2, double xi) const override {
    return free_space_green_iw(r1, r2, xi);
  }
  GreenTensor3 scattering(const Vec3&, const Vec3&, double xi) const override {
    return zero_tensor(xi);
  }
  GreenTensor3 scattering_coincident(const Vec3&, double xi) const override {
    return zero_tensor(xi);
  }
};

class BulkProvider final : public GreenProvider {
 public:
  explicit BulkProvider(Material m) : medium_(std::move(m)) {}
  Kind kind() const override { return Kind::bulk; }
  bool translation_invariant() const override { return true; }
  double refractive_index(double xi) const override {
    return std::sqrt(medium_.eps(xi) * medium_.mu(xi));
  }
  GreenTensor3 eval(const Vec3& r1, const Vec3& r2, double xi) const override {
    return bulk_green_iw(medium_, r1, r2, xi);
  }
  GreenTensor3 scattering(const Vec3&, const Vec3&, double xi) const override {
    return zero_tensor(xi);
  }
  GreenTensor3 scattering_coincident(const Vec3&, double xi) const override {
    return zero_tensor(xi);
  }

 private:
  Material medium_;
};

class PlanarProvider final : public GreenProvider {
 public:
  PlanarProvider(LayerStack stack, QuadratureSpec spec)
      : stack_(std::move(stack)), spec_(spec) {}
  Kind kind() const override { return Kind::planar; }
  bool translation_invariant() const override { return stack_.is_empty(); }
  GreenTensor3 eval(const Vec3& r1, const Vec3& r2, double xi) const override {
    GreenTensor3 g = free_space_green_iw(r1, r2, xi);
    GreenTensor3 sc = scattering_green_points(stack_, r1, r2, xi, spec_);
    g.t += sc.t;
    g.kind = GreenTensor3::Kind::points;
    g.note = "vacuum part + wall scattering";
    return g;
  }
  GreenTensor3 scattering(const Vec3& r1, const Vec3& r2,
                          double xi) const override {
    return scattering_green_points(stack_, r1, r2, xi, spec_);
  }
  GreenTensor3 scattering_coincident(const Vec3& r, double xi) const override {
    return dsp::scattering_green_coincident(stack_, r.z(), xi, spec_);
  }
  const LayerStack& stack() const { return stack_; }

 private:
  LayerStack stack_;
  QuadratureSpec spec_;
};

}  // namespace

std::unique_ptr<GreenProvider> make_free_space_provider() {
  return std::make_unique<FreeSpaceProvider>();
}

std::unique_ptr<GreenProvider> make_bulk_provider(Material medium) {
  return std::make_unique<BulkProvider>(std::move(medium));
}

std::unique_ptr<GreenProvider> make_planar_provider(LayerStack stack,
                                                    QuadratureSpec spec) {
  return std::make_unique<PlanarProvider>(std::move(stack), spec);
}

const LayerStack* provider_stack(const GreenProvider& p) {
  if (p.kind() != GreenProvider::Kind::planar) return nullptr;
  return &static_cast<const PlanarProvider&>(p).stack();
}

}  // namespace dsp
