#include "core/materials.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace dsp {

namespace {
void require_nonnegative_xi(double xi) {
  if (!(xi >= 0.0)) {
    throw Error(ErrorCode::invalid_argument,
                "imaginary frequency xi must be >= 0");
  }
}

double lorentz_sum(const std::vector<LorentzTerm>& terms, double xi) {
  double s = 0.0;
  for (const auto& t : terms) {
    s += t.plasma * t.plasma /
         (t.resonance * t.resonance + xi * xi + t.gamma * xi);
  }
  return s;
}
}  // namespace

// ------------------------------------------------------------ polarizability

Polarizability::Polarizability(double strength_scale,
                               std::vector<OscillatorTerm> terms)
    : scale_(strength_scale), terms_(std::move(terms)) {
  if (!(scale_ > 0.0)) {
    throw Error(ErrorCode::invalid_argument,
                "polarizability strength scale must be > 0");
  }
  if (terms_.empty()) {
    throw Error(ErrorCode::invalid_argument,
                "polarizability needs at least one oscillator term");
  }
  for (const auto& t : terms_) {
    if (!(t.resonance > 0.0) || !(t.coupling * t.coupling > 0.0) ||
        t.gamma < 0.0) {
      throw Error(ErrorCode::invalid_argument,
                  "oscillator terms require resonance > 0, coupling != 0, "
                  "gamma >= 0");
    }
  }
}

double Polarizability::at(double xi) const {
  require_nonnegative_xi(xi);
  double s = 0.0;
  for (const auto& t : terms_) {
    s += t.coupling * t.coupling /
         (t.resonance * t.resonance + xi * xi + t.gamma * xi);
  }
  return scale_ * s;
}

// ----------------------------------------------------------------- materials

// Monotone (Fritsch-Carlson) cubic Hermite interpolation for tabulated
// eps(i xi).  Monotone data in, monotone interpolant out -- no overshoot, so
// the eps >= 1, non-increasing invariants survive interpolation.
struct Material::Table {
  std::vector<double> x, y, d;  // nodes, values, endpoint-adjusted slopes

  Table(std::vector<double> xi, std::vector<double> eps)
      : x(std::move(xi)), y(std::move(eps)) {
    size_t n = x.size();
    std::vector<double> delta(n - 1);
    for (size_t i = 0; i + 1 < n; ++i) {
      delta[i] = (y[i + 1] - y[i]) / (x[i + 1] - x[i]);
    }
    d.assign(n, 0.0);
    if (n == 2) {
      d[0] = d[1] = delta[0];
    } else {
      d[0] = delta[0];
      d[n - 1] = delta[n - 2];
      for (size_t i = 1; i + 1 < n; ++i) {
        if (delta[i - 1] * delta[i] <= 0.0) {
          d[i] = 0.0;
        } else {
          // weighted harmonic mean keeps the interpolant monotone
          double w1 = 2.0 * (x[i + 1] - x[i]) + (x[i] - x[i - 1]);
          double w2 = (x[i + 1] - x[i]) + 2.0 * (x[i] - x[i - 1]);
          d[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
        }
      }
      // clamp endpoint slopes (Fritsch-Carlson boundary treatment)
      for (size_t e : {size_t{0}, n - 1}) {
        size_t seg = (e == 0) ? 0 : n - 2;
        if (delta[seg] == 0.0) {
          d[e] = 0.0;
        } else if (d[e] / delta[seg] < 0.0) {
          d[e] = 0.0;
        } else if (std::abs(d[e]) > 3.0 * std::abs(delta[seg])) {
          d[e] = 3.0 * delta[seg];
        }
      }
    }
  }

  double eval(double q) const {
    if (q <= x.front()) return y.front();
    if (q >= x.back()) {
      // 1/xi^2 tail toward vacuum
      double tail = (y.back() - 1.0) * x.back() * x.back() / (q * q);
      return 1.0 + tail;
    }
    size_t i =
        std::upper_bound(x.begin(), x.end(), q) - x.begin() - 1;
    double h = x[i + 1] - x[i];
    double t = (q - x[i]) / h;
    double t2 = t * t, t3 = t2 * t;
    return y[i] * (2 * t3 - 3 * t2 + 1) + h * d[i] * (t3 - 2 * t2 + t) +
           y[i + 1] * (-2 * t3 + 3 * t2) + h * d[i + 1] * (t3 - t2);
  }
};

Material Material::vacuum(std::string label) {
  Material m;
  m.kind_ = Kind::lorentz;
  m.label_ = std::move(label);
  return m;
}

Material Material::lorentz_model(std::string label,
                                 std::vector<LorentzTerm> eps,
                                 std::vector<LorentzTerm> mu) {
  for (const auto* list : {&eps, &mu}) {
    for (const auto& t : *list) {
      if (!(t.resonance > 0.0) || t.gamma < 0.0) {
        throw Error(ErrorCode::invalid_argument,
                    "Lorentz terms require resonance > 0 and gamma >= 0");
      }
    }
  }
  Material m;
  m.kind_ = Kind::lorentz;
  m.label_ = std::move(label);
  m.eps_terms_ = std::move(eps);
  m.mu_terms_ = std::move(mu);
  return m;
}

Material Material::mirror(std::string label) {
  Material m;
  m.kind_ = Kind::mirror;
  m.label_ = std::move(label);
  return m;
}

Material Material::table(std::string label, std::vector<double> xi,
                         std::vector<double> eps) {
  if (xi.size() != eps.size() || xi.size() < 2) {
    throw Error(ErrorCode::invalid_argument,
                "tabulated material needs matching xi/eps lists, size >= 2");
  }
  for (size_t i = 0; i < xi.size(); ++i) {
    if (!(xi[i] >= 0.0) || (i > 0 && !(xi[i] > xi[i - 1]))) {
      throw Error(ErrorCode::invalid_argument,
                  "tabulated xi values must be >= 0 and strictly increasing");
    }
    if (!(eps[i] >= 1.0)) {
      throw Error(ErrorCode::invalid_argument,
                  "tabulated eps(i xi) must be >= 1 (passive medium)");
    }
    if (i > 0 && eps[i] > eps[i - 1]) {
      throw Error(ErrorCode::invalid_argument,
                  "tabulated eps(i xi) must be non-increasing in xi");
    }
  }
  Material m;
  m.kind_ = Kind::table;
  m.label_ = std::move(label);
  m.table_ = std::make_shared<const Table>(std::move(xi), std::move(eps));
  return m;
}

Material Material::equal_reflection_marker() {
  Material m;
  m.kind_ = Kind::equal_reflection;
  m.label_ = "equal-reflection-marker";
  return m;
}

bool Material::is_vacuum() const {
  return kind_ == Kind::lorentz && eps_terms_.empty() && mu_terms_.empty();
}

double Material::eps(double xi) const {
  require_nonnegative_xi(xi);
  switch (kind_) {
    case Kind::lorentz:
      return 1.0 + lorentz_sum(eps_terms_, xi);
    case Kind::table:
      return table_->eval(xi);
    case Kind::mirror:
    case Kind::equal_reflection:
      throw Error(ErrorCode::invalid_argument,
                  "reflection-marker materials have no pointwise eps");
  }
  return 1.0;
}

double Material::mu(double xi) const {
  require_nonnegative_xi(xi);
  switch (kind_) {
    case Kind::lorentz:
      return 1.0 + lorentz_sum(mu_terms_, xi);
    case Kind::table:
      return 1.0;
    case Kind::mirror:
    case Kind::equal_reflection:
      throw Error(ErrorCode::invalid_argument,
                  "reflection-marker materials have no pointwise mu");
  }
  return 1.0;
}

// ------------------------------------------------------------ susceptibility

Susceptibility Susceptibility::direct(std::vector<DirectTerm> terms,
                                      double scale) {
  for (const auto& t : terms) {
    if (!(t.resonance > 0.0) || t.gamma < 0.0) {
      throw Error(ErrorCode::invalid_argument,
                  "susceptibility terms require resonance > 0, gamma >= 0");
    }
  }
  Susceptibility s;
  s.terms_ = std::move(terms);
  s.scale_ = scale;
  return s;
}

double Susceptibility::chi(double xi) const {
  require_nonnegative_xi(xi);
  if (alpha_) {
    double y = eta_ * alpha_->at(xi);
    return y / (1.0 - y / 3.0);
  }
  double s = 0.0;
  for (const auto& t : terms_) {
    s += t.amplitude * t.resonance * t.resonance /
         (t.resonance * t.resonance + xi * xi + t.gamma * xi);
  }
  return scale_ * s;
}

double Susceptibility::density() const {
  if (!alpha_) {
    throw Error(ErrorCode::invalid_argument,
                "susceptibility was not built from (density, polarizability)");
  }
  return eta_;
}

double Susceptibility::weak_chi(double xi) const {
  if (!alpha_) {
    throw Error(ErrorCode::invalid_argument,
                "weak-superposition limit requires a local-field "
                "susceptibility built from (density, polarizability)");
  }
  return eta_ * alpha_->at(xi);
}

const Polarizability& Susceptibility::base_polarizability() const {
  if (!alpha_) {
    throw Error(ErrorCode::invalid_argument,
                "susceptibility was not built from (density, polarizability)");
  }
  return *alpha_;
}

Susceptibility Susceptibility::scaled(double factor) const {
  if (alpha_) {
    throw Error(ErrorCode::invalid_argument,
                "scaled() applies to direct susceptibility models only");
  }
  Susceptibility s = *this;
  s.scale_ *= factor;
  return s;
}

Susceptibility clausius_mosotti(double eta, const Polarizability& alpha) {
  if (eta < 0.0) {
    throw Error(ErrorCode::invalid_argument, "number density must be >= 0");
  }
  double gate = eta * alpha.static_value() / 3.0;
  if (!(gate < 1.0)) {
    throw CausalityViolation(
        gate, "local-field gate violated: eta*alpha(0)/3 = " +
                  std::to_string(gate) + " must be < 1 for a passive medium");
  }
  Susceptibility s;
  s.eta_ = eta;
  s.alpha_ = std::make_shared<const Polarizability>(alpha);
  return s;
}

double polarizability_from_chi(double chi) {
  if (!(chi > -3.0)) {
    throw Error(ErrorCode::invalid_argument,
                "susceptibility value must satisfy chi > -3");
  }
  return chi / (1.0 + chi / 3.0);
}

}  // namespace dsp
