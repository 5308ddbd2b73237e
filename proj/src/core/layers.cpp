#include "core/layers.hpp"

#include <cmath>

namespace dsp {

LayerStack LayerStack::vacuum_gap() { return LayerStack{}; }

LayerStack LayerStack::half_space(Material m) {
  LayerStack s;
  s.layers_.push_back(Layer{std::move(m), 0.0, true});
  return s;
}

LayerStack LayerStack::mirror() {
  LayerStack s;
  s.layers_.push_back(Layer{Material::mirror(), 0.0, true});
  return s;
}

LayerStack LayerStack::equal_reflection_test() {
  LayerStack s;
  s.layers_.push_back(Layer{Material::equal_reflection_marker(), 0.0, true});
  return s;
}

LayerStack LayerStack::from_layers(std::vector<Layer> layers) {
  if (layers.empty()) return vacuum_gap();
  for (size_t i = 0; i < layers.size(); ++i) {
    const Layer& l = layers[i];
    bool mirror = l.material.kind() == Material::Kind::mirror;
    if (i + 1 == layers.size()) {
      if (!l.half_space && !mirror) {
        throw Error(ErrorCode::invalid_argument,
                    "deepest stack entry must be a half-space (or a mirror)");
      }
    } else {
      if (l.half_space) {
        throw Error(ErrorCode::invalid_argument,
                    "only the deepest stack entry may be a half-space");
      }
      if (!(l.thickness > 0.0)) {
        throw Error(ErrorCode::invalid_argument,
                    "interior layer thicknesses must be > 0");
      }
      if (mirror) {
        throw Error(ErrorCode::invalid_argument,
                    "a mirror terminates the stack; layers behind it are "
                    "unreachable");
      }
    }
  }
  LayerStack s;
  s.layers_ = std::move(layers);
  return s;
}

namespace {

double kappa_of(const Material& m, double xi, double q) {
  // vacuum-safe: eps = mu = 1 when the material is vacuum-like
  double em = m.eps(xi) * m.mu(xi);
  return std::sqrt(q * q + em * xi * xi);
}

}  // namespace

ReflexPair fresnel_iw(const Material& a, const Material& b, double xi,
                      double q) {
  if (!(xi >= 0.0) || !(q >= 0.0) || (xi == 0.0 && q == 0.0)) {
    throw Error(ErrorCode::invalid_argument,
                "fresnel_iw requires xi >= 0, q >= 0, not both zero");
  }
  if (b.kind() == Material::Kind::mirror) return {-1.0, 1.0};
  if (b.kind() == Material::Kind::equal_reflection) return {0.5, 0.5};
  if (a.kind() == Material::Kind::mirror ||
      a.kind() == Material::Kind::equal_reflection) {
    throw Error(ErrorCode::invalid_argument,
                "reflection markers cannot act as the incidence medium");
  }
  double ea = a.eps(xi), ma = a.mu(xi);
  double eb = b.eps(xi), mb = b.mu(xi);
  double ka = std::sqrt(q * q + ea * ma * xi * xi);
  double kb = std::sqrt(q * q + eb * mb * xi * xi);
  return {(mb * ka - ma * kb) / (mb * ka + ma * kb),
          (eb * ka - ea * kb) / (eb * ka + ea * kb)};
}

ReflexPair generalized_reflection(const LayerStack& stack, double xi,
                                  double q) {
  const auto& layers = stack.layers();
  if (layers.empty()) return {0.0, 0.0};

  // Media chain: index 0 = vacuum, i >= 1 = layers[i-1].
  const Material vac = Material::vacuum();
  auto medium = [&](size_t i) -> const Material& {
    return i == 0 ? vac : layers[i - 1].material;
  };
  size_t n_media = layers.size() + 1;

  // Reflection looking down into medium j+1 from medium j, composed from the
  // deepest interface upward.
  ReflexPair r = fresnel_iw(medium(n_media - 2), medium(n_media - 1), xi, q);
  for (size_t j = n_media - 2; j >= 1; --j) {
    // medium j is a finite layer (index j-1 in the layer list)
    const Layer& lay = layers[j - 1];
    double kap = kappa_of(lay.material, xi, q);
    double ph = std::exp(-2.0 * kap * lay.thickness);
    ReflexPair top = fresnel_iw(medium(j - 1), medium(j), xi, q);
    ReflexPair out;
    out.rs = (top.rs + r.rs * ph) / (1.0 + top.rs * r.rs * ph);
    out.rp = (top.rp + r.rp * ph) / (1.0 + top.rp * r.rp * ph);
    r = out;
  }
  return r;
}

ReflexPair stack_reflection_kappa(const LayerStack& stack, double xi,
                                  double kappa) {
  double q2 = kappa * kappa - xi * xi;
  double q = q2 > 0.0 ? std::sqrt(q2) : 0.0;
  return generalized_reflection(stack, xi, q);
}

}  // namespace dsp
