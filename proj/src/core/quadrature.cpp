#include "core/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <queue>

namespace dsp {
namespace {

// 15-point Kronrod extension of the 7-point Gauss rule on [-1, 1].
// Positive abscissae (descending); even indices are Kronrod-only nodes,
// odd indices (plus the center) carry the embedded Gauss rule.
constexpr double kXgk[8] = {
    0.99145537112081263920685469752633,
    0.94910791234275852452618968404785,
    0.86486442335976907278971278864093,
    0.74153118559939443986386477328079,
    0.58608723546769113029414483825873,
    0.40584515137739716690660641207696,
    0.20778495500789846760068940377324,
    0.0};
constexpr double kWgk[8] = {
    0.02293532201052922496373200805897,
    0.06309209262997855329070066318921,
    0.10479001032225018383987632254152,
    0.14065325971552591874518959051024,
    0.16900472663926790282658342659855,
    0.19035057806478540991325640242101,
    0.20443294007529889241416199923465,
    0.20948214108472782801299917489171};
constexpr double kWg[4] = {
    0.12948496616886969327061143267908,
    0.27970539148927666790146777142378,
    0.38183005050511894495036977548898,
    0.41795918367346938775510204081633};

struct PanelEstimate {
  double kronrod = 0.0;
  double err = 0.0;  // |K15 - G7|
};

// One 7/15 panel over [lo, hi].
template <typename F>
PanelEstimate gk15(const F& f, double lo, double hi, long& evals) {
  const double c = 0.5 * (lo + hi);
  const double h = 0.5 * (hi - lo);
  double fc = f(c);
  if (!std::isfinite(fc)) fc = 0.0;
  double kron = kWgk[7] * fc;
  double gauss = kWg[3] * fc;
  evals += 15;
  for (int j = 0; j < 7; ++j) {
    double f1 = f(c - h * kXgk[j]);
    double f2 = f(c + h * kXgk[j]);
    if (!std::isfinite(f1)) f1 = 0.0;
    if (!std::isfinite(f2)) f2 = 0.0;
    kron += kWgk[j] * (f1 + f2);
    if (j % 2 == 1) gauss += kWg[j / 2] * (f1 + f2);
  }
  kron *= h;
  gauss *= h;
  return {kron, std::abs(kron - gauss)};
}

struct Interval {
  double lo, hi, value, err;
  long index;        // creation order, for deterministic tie-breaking
  bool splittable;
};

struct WorseError {
  bool operator()(const Interval& a, const Interval& b) const {
    if (a.err != b.err) return a.err < b.err;
    return a.index > b.index;  // equal errors: older interval first
  }
};

// Adaptive engine over a finite interval.  `to_x` maps the integration
// variable onto the reporting axis used for the per-decade breakdown.
template <typename F, typename ToX>
IntegralResult adapt(const F& f, double lo, double hi,
                     const QuadratureSpec& spec, const ToX& to_x) {
  IntegralResult res;

  std::priority_queue<Interval, std::vector<Interval>, WorseError> active;
  std::vector<Interval> finished;
  long next_index = 0;

  auto push = [&](double a, double b) {
    PanelEstimate p = gk15(f, a, b, res.evaluations);
    // A panel stays splittable until its width reaches a few ulps of its
    // endpoints; stopping earlier stalls refinement near endpoint
    // singularities long before double precision is exhausted.
    double limit = std::max(4.0 * std::numeric_limits<double>::epsilon() *
                                std::max(std::abs(a), std::abs(b)),
                            1e-300);
    Interval iv{a, b, p.kronrod, p.err, next_index++, (b - a) > limit};
    if (iv.splittable)
      active.push(iv);
    else
      finished.push_back(iv);
  };

  push(lo, hi);
  double total = active.empty() ? finished.back().value : active.top().value;
  double total_err = active.empty() ? finished.back().err : active.top().err;
  double prev_total = std::numeric_limits<double>::quiet_NaN();

  int subdivisions = 0;
  while (subdivisions < spec.max_subdivisions && !active.empty()) {
    double tol = std::max(spec.abs_tol, spec.rel_tol * std::abs(total));
    bool met = total_err <= tol;
    bool agreed = std::isfinite(prev_total) &&
                  std::abs(total - prev_total) <= tol;
    if (met && agreed) {
      res.converged = true;
      break;
    }
    if (met && active.empty()) break;

    Interval worst = active.top();
    active.pop();
    prev_total = total;
    total -= worst.value;
    total_err -= worst.err;
    double mid = 0.5 * (worst.lo + worst.hi);
    push(worst.lo, mid);
    push(mid, worst.hi);
    ++subdivisions;

    // Recompute the running totals incrementally from the two new panels.
    // (They were added by push(); pull their contributions from the queue's
    // copies via the last two created indices -- instead, simply rebuild.)
    total = 0.0;
    total_err = 0.0;
    {
      // Rebuilding from the queue requires iteration; keep a side list.
      // For simplicity and determinism, rebuild from both containers.
      std::vector<Interval> tmp;
      tmp.reserve(active.size());
      while (!active.empty()) {
        tmp.push_back(active.top());
        active.pop();
      }
      for (const Interval& iv : tmp) {
        total += iv.value;
        total_err += iv.err;
        active.push(iv);
      }
      for (const Interval& iv : finished) {
        total += iv.value;
        total_err += iv.err;
      }
    }
  }

  // Final convergence check when the loop exited on tolerance in the last
  // iteration without re-entering, or on an immediately converged integrand.
  if (!res.converged) {
    double tol = std::max(spec.abs_tol, spec.rel_tol * std::abs(total));
    if (total_err <= tol && std::isfinite(prev_total) &&
        std::abs(total - prev_total) <= tol) {
      res.converged = true;
    }
  }

  // Drain for the breakdown and final sums.
  while (!active.empty()) {
    finished.push_back(active.top());
    active.pop();
  }
  double value = 0.0, err = 0.0;
  std::vector<std::pair<int, double>> decades;
  for (const Interval& iv : finished) {
    value += iv.value;
    err += iv.err;
    double xm = to_x(0.5 * (iv.lo + iv.hi));
    int dec = 0;
    if (xm > 0)
      dec = std::clamp(static_cast<int>(std::floor(std::log10(xm))), -12, 12);
    auto it = std::find_if(decades.begin(), decades.end(),
                           [dec](const auto& p) { return p.first == dec; });
    if (it == decades.end())
      decades.emplace_back(dec, iv.value);
    else
      it->second += iv.value;
  }
  std::sort(decades.begin(), decades.end());
  res.value = value;
  res.error_estimate = err;
  res.decade_breakdown = std::move(decades);
  return res;
}

IntegralResult de_semiinfinite(const std::function<double(double)>& f,
                               double a, const QuadratureSpec& spec) {
  // exp-sinh: x = a + s*exp((pi/2) sinh t),  dx = s*(pi/2) cosh t * exp(...).
  const double s = spec.scale_hint > 0 ? spec.scale_hint : 1.0;
  const double half_pi = 1.5707963267948966;
  IntegralResult res;

  auto g = [&](double t) {
    double e = half_pi * std::sinh(t);
    if (e > 700.0) return 0.0;  // x out of double range; integrand ~ 0
    double x = a + s * std::exp(e);
    double w = s * half_pi * std::cosh(t) * std::exp(e);
    double fv = f(x);
    ++res.evaluations;
    if (!std::isfinite(fv)) return 0.0;
    double term = fv * w;
    return std::isfinite(term) ? term : 0.0;
  };

  const double t_cap = 7.5;
  double prev1 = std::numeric_limits<double>::quiet_NaN();  // I at level-1
  double prev2 = std::numeric_limits<double>::quiet_NaN();  // I at level-2
  double h = 1.0;
  double integral = 0.0;
  double sum = 0.0;  // running node sum (refined levels reuse prior nodes)

  for (int level = 0; level <= 12; ++level) {
    if (level == 0) {
      sum = g(0.0);
      for (int side = -1; side <= 1; side += 2) {
        int quiet = 0;
        for (int k = 1; k * h <= t_cap; ++k) {
          double term = g(side * k * h);
          sum += term;
          if (std::abs(term) <= 1e-18 * (std::abs(sum) + 1e-300)) {
            if (++quiet >= 3) break;
          } else {
            quiet = 0;
          }
        }
      }
    } else {
      h *= 0.5;
      // add the new odd-multiple nodes of the finer grid
      for (int side = -1; side <= 1; side += 2) {
        int quiet = 0;
        for (int k = 1; k * h <= t_cap; k += 2) {
          double term = g(side * k * h);
          sum += term;
          if (std::abs(term) <= 1e-18 * (std::abs(sum) + 1e-300)) {
            if (++quiet >= 3) break;
          } else {
            quiet = 0;
          }
        }
      }
    }
    integral = h * sum;
    double tol = std::max(spec.abs_tol, spec.rel_tol * std::abs(integral));
    double d1 = std::abs(integral - prev1);
    double d2 = std::abs(prev1 - prev2);
    if (std::isfinite(prev1)) res.error_estimate = d1;
    if (std::isfinite(prev1) && std::isfinite(prev2) && d1 <= tol &&
        d2 <= tol) {
      res.converged = true;
      break;
    }
    prev2 = prev1;
    prev1 = integral;
  }
  res.value = integral;
  return res;
}

}  // namespace

IntegralResult integrate_interval(const std::function<double(double)>& f,
                                  double a, double b,
                                  const QuadratureSpec& spec) {
  if (a == b) {
    IntegralResult r;
    r.converged = true;
    return r;
  }
  return adapt(f, a, b, spec, [](double x) { return x; });
}

IntegralResult integrate_semiinfinite(const std::function<double(double)>& f,
                                      double a, const QuadratureSpec& spec) {
  if (spec.rule == QuadRule::double_exponential) {
    return de_semiinfinite(f, a, spec);
  }
  const double s = spec.scale_hint > 0 ? spec.scale_hint : 1.0;
  auto mapped = [&](double t) {
    double om = 1.0 - t;
    double x = a + s * t / om;
    double w = s / (om * om);
    double fv = f(x);
    double term = fv * w;
    return std::isfinite(term) ? term : 0.0;
  };
  auto to_x = [&](double t) { return a + s * t / (1.0 - t); };
  return adapt(mapped, 0.0, 1.0, spec, to_x);
}

IntegralResult integrate_double(
    const std::function<double(double, double)>& f,
    const std::function<double(double)>& inner_lower,
    const QuadratureSpec& spec) {
  QuadratureSpec inner_spec = spec;
  inner_spec.rel_tol = 0.1 * spec.rel_tol;
  inner_spec.abs_tol = 0.0;
  inner_spec.scale_hint = spec.inner_scale_hint;

  double max_inner_err = 0.0;
  long inner_evals = 0;
  bool inner_ok = true;

  auto outer_f = [&](double x) {
    IntegralResult inner = integrate_semiinfinite(
        [&](double y) { return f(x, y); }, inner_lower(x), inner_spec);
    inner_evals += inner.evaluations;
    if (!inner.converged) inner_ok = false;
    max_inner_err = std::max(max_inner_err, inner.error_estimate);
    return inner.value;
  };

  IntegralResult outer = integrate_semiinfinite(outer_f, 0.0, spec);
  outer.evaluations += inner_evals;
  outer.error_estimate += max_inner_err;
  outer.converged = outer.converged && inner_ok;
  return outer;
}

std::pair<IntegralResult, IntegralResult> integrate_dual_rule(
    const std::function<double(double)>& f, double a,
    const QuadratureSpec& spec) {
  QuadratureSpec gk = spec;
  gk.rule = QuadRule::gauss_kronrod;
  QuadratureSpec de = spec;
  de.rule = QuadRule::double_exponential;
  return {integrate_semiinfinite(f, a, gk), integrate_semiinfinite(f, a, de)};
}

}  // namespace dsp
