#include "core/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <sstream>
#include <thread>

#include "core/born_voxel.hpp"
#include "core/pair_vdw.hpp"
#include "core/planar_forces.hpp"
#include "core/providers.hpp"

namespace dsp {
namespace {

constexpr double kPi = 3.14159265358979323846;

int worker_count(std::size_t jobs) {
  long n = 1;
  if (const char* env = std::getenv("DISPERSIA_WORKERS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && v >= 1) n = std::min(v, 64L);
  }
  return static_cast<int>(std::min<long>(n, static_cast<long>(jobs)));
}

VoxelBody translate_body(const VoxelBody& rel, const Vec3& offset) {
  VoxelBody b = rel;
  for (auto& c : b.centers) c += offset;
  return b;
}

// Natural-units result for one sweep point.
struct PointResult {
  Vec3 force = Vec3::Zero();
  double err = 0.0;
  bool converged = false;
};

PointResult compute_point(const Scenario& sc, double x, double rel_tol) {
  QuadratureSpec spec;
  spec.rel_tol = rel_tol;
  PointResult out;
  auto take = [&](const ForceResult& f) {
    out.force = f.force;
    out.err = f.error_estimate;
    out.converged = f.converged;
  };

  if (const auto* cfg = std::get_if<CpAtomConfig>(&sc.config)) {
    take(cp_force_atom(cfg->alpha, cfg->stack, x, spec));
  } else if (const auto* cfg = std::get_if<CpMediumAtomConfig>(&sc.config)) {
    take(cp_force_medium_atom(cfg->alpha, cfg->eta, cfg->stack, x, spec));
  } else if (const auto* cfg = std::get_if<MicroObjectConfig>(&sc.config)) {
    take(micro_object_force(cfg->chi, cfg->volume, cfg->shape,
                            cfg->weak_limit, cfg->stack, x, spec));
  } else if (const auto* cfg = std::get_if<LifshitzConfig>(&sc.config)) {
    take(lifshitz_pressure(cfg->left, x, cfg->right, spec));
  } else if (const auto* cfg = std::get_if<VdwConfig>(&sc.config)) {
    auto env = cfg->bulk ? make_bulk_provider(*cfg->bulk)
                         : make_free_space_provider();
    // Atom 2 at the origin, atom 1 at (rho, 0, 0); force reported on atom 1,
    // so attraction shows as a negative x component.
    take(vdw_force(cfg->alpha1, cfg->alpha2, *env, Vec3(x, 0.0, 0.0),
                   Vec3::Zero(), spec));
  } else if (const auto* cfg = std::get_if<BornBodyConfig>(&sc.config)) {
    auto host = cfg->stack.is_empty()
                    ? make_free_space_provider()
                    : make_planar_provider(cfg->stack,
                                           spec.with_rel_tol(0.1 * rel_tol));
    Vec3 offset(cfg->reference.x(), cfg->reference.y(), x);
    VoxelBody body = translate_body(cfg->body, offset);
    take(cfg->exact ? body_force_exact(*host, body, spec)
                    : body_force_linear(*host, body, spec));
  } else if (const auto* cfg = std::get_if<CrossingConfig>(&sc.config)) {
    auto host = cfg->stack.is_empty()
                    ? make_free_space_provider()
                    : make_planar_provider(cfg->stack,
                                           spec.with_rel_tol(0.1 * rel_tol));
    VoxelBody b1 = translate_body(cfg->body1, cfg->body1_reference);
    VoxelBody b2 =
        translate_body(cfg->body2, cfg->body1_reference + x * cfg->axis);
    take(crossing_force(*host, b1, b2, spec));
  }
  return out;
}

std::string fmt(double v) {
  std::ostringstream o;
  o.precision(12);
  o << v;
  return o.str();
}

}  // namespace

RunOutput run_scenario(const Scenario& sc, const RunOptions& options) {
  RunOutput out;
  out.rel_tol = options.rel_tol.value_or(sc.rel_tol);
  out.output_units = sc.units;
  if (options.si_output) out.output_units.is_si = *options.si_output;

  const std::size_t n = sc.sweep.values.size();
  out.rows.assign(n, ResultRow{});
  const bool pressure = sc.kind == ScenarioKind::lifshitz;

  auto work = [&](std::size_t first, std::size_t stride) {
    for (std::size_t i = first; i < n; i += stride) {
      double declared = sc.sweep.values[i];
      double x = sc.units.length_in(declared);
      ResultRow row;
      row.sweep = out.output_units.length_out(x);
      try {
        PointResult p = compute_point(sc, x, out.rel_tol);
        for (int a = 0; a < 3; ++a)
          row.force[a] = pressure ? out.output_units.pressure_out(p.force[a])
                                  : out.output_units.force_out(p.force[a]);
        row.error = pressure ? out.output_units.pressure_out(p.err)
                             : out.output_units.force_out(p.err);
        row.converged = p.converged;
      } catch (const std::exception&) {
        row.force = Vec3::Zero();
        row.error = std::numeric_limits<double>::infinity();
        row.converged = false;
      }
      out.rows[i] = row;
    }
  };

  int workers = worker_count(n);
  if (workers <= 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w)
      pool.emplace_back(work, static_cast<std::size_t>(w),
                        static_cast<std::size_t>(workers));
    for (auto& t : pool) t.join();
  }

  out.all_converged = !out.rows.empty();
  for (const auto& r : out.rows) out.all_converged &= r.converged;
  return out;
}

std::string limits_text(const Scenario& sc) {
  std::ostringstream o;
  o << "kind: " << scenario_kind_name(sc.kind) << "\n";
  o << "sweep: " << sc.sweep.variable << " in ["
    << fmt(sc.sweep.values.front()) << ", " << fmt(sc.sweep.values.back())
    << "] (" << sc.sweep.values.size() << " points, declared units)\n";
  o << "all values below are in natural units (hbar = c = eps0 = 1)\n";

  QuadratureSpec spec;
  spec.rel_tol = 1e-8;

  auto planar_limits = [&](const Polarizability& a, const LayerStack& stack,
                           double weight_scale, const char* label) {
    double c5 = 3.0 * weight_scale * a.static_value() / (8.0 * kPi * kPi);
    o << label << " ideal-mirror long-distance asymptote: F_z ~ -" << fmt(c5)
      << " / z^5\n";
    if (stack.is_empty()) return;
    try {
      ForceResult nr = cp_force_atom_nonretarded_check(a, stack, 1.0, spec);
      double c4 = -weight_scale * nr.force.z();
      o << label << " short-distance asymptote:          F_z ~ -" << fmt(c4)
        << " / z^4\n";
    } catch (const Error&) {
      o << label << " short-distance asymptote: n/a for this stack\n";
    }
  };

  if (const auto* cfg = std::get_if<CpAtomConfig>(&sc.config)) {
    planar_limits(cfg->alpha, cfg->stack, 1.0, "atom");
  } else if (const auto* cfg = std::get_if<CpMediumAtomConfig>(&sc.config)) {
    o << "screened per-atom force; unscreened reference asymptotes:\n";
    planar_limits(cfg->alpha, cfg->stack, 1.0, "atom");
  } else if (const auto* cfg = std::get_if<MicroObjectConfig>(&sc.config)) {
    double w0 = cfg->weak_limit ? (cfg->chi.from_local_field()
                                       ? cfg->chi.weak_chi(0.0)
                                       : cfg->chi.static_value())
                                : cfg->chi.static_value();
    double c5 = 3.0 * cfg->volume * w0 / (8.0 * kPi * kPi);
    o << "static weight chi-like(0) = " << fmt(w0) << ", volume = "
      << fmt(cfg->volume) << "\n";
    o << "ideal-mirror long-distance asymptote: F_z ~ -" << fmt(c5)
      << " / z^5\n";
  } else if (std::get_if<LifshitzConfig>(&sc.config)) {
    double c = kPi * kPi / 240.0;
    o << "ideal-mirror pressure: P(d) = -" << fmt(c) << " / d^4\n";
    o << "  at d = " << fmt(sc.sweep.values.front()) << ": "
      << fmt(-c / std::pow(sc.sweep.values.front(), 4)) << "\n";
    o << "  at d = " << fmt(sc.sweep.values.back()) << ": "
      << fmt(-c / std::pow(sc.sweep.values.back(), 4)) << "\n";
  } else if (const auto* cfg = std::get_if<VdwConfig>(&sc.config)) {
    double c6 = vdw_c6(cfg->alpha1, cfg->alpha2, spec);
    double a10 = cfg->alpha1.static_value();
    double a20 = cfg->alpha2.static_value();
    o << "London coefficient C6 = " << fmt(c6)
      << "  (short range: F ~ -6 C6 / rho^7)\n";
    double c8 = 161.0 * a10 * a20 / (64.0 * kPi * kPi * kPi);
    o << "retarded coefficient = " << fmt(c8)
      << "  (long range: F ~ -" << fmt(c8) << " / rho^8)\n";
    if (cfg->bulk) o << "bulk environment: both asymptotes screened by the "
                        "medium response\n";
  } else if (const auto* cfg = std::get_if<BornBodyConfig>(&sc.config)) {
    double w = 0.0;
    for (std::size_t i = 0; i < cfg->body.size(); ++i)
      w += cfg->body.susceptibility_at(i).chi(0.0) * cfg->body.voxel_volume();
    double c5 = 3.0 * w / (8.0 * kPi * kPi);
    o << "single-scattering static weight sum chi(0) dV = " << fmt(w) << "\n";
    o << "ideal-mirror long-distance reference: F_z ~ -" << fmt(c5)
      << " / z^5\n";
  } else if (const auto* cfg = std::get_if<CrossingConfig>(&sc.config)) {
    double dv1 = cfg->body1.voxel_volume();
    double dv2 = cfg->body2.voxel_volume();
    IntegralResult ir = integrate_semiinfinite(
        [&](double xi) {
          double w1 = 0.0, w2 = 0.0;
          for (std::size_t i = 0; i < cfg->body1.size(); ++i)
            w1 += cfg->body1.susceptibility_at(i).chi(xi) * dv1;
          for (std::size_t i = 0; i < cfg->body2.size(); ++i)
            w2 += cfg->body2.susceptibility_at(i).chi(xi) * dv2;
          return w1 * w2;
        },
        0.0, spec);
    double c6 = 3.0 * ir.value / (16.0 * kPi * kPi * kPi);
    o << "aggregate crossing C6 (point-body limit) = " << fmt(c6)
      << "  (short range: F ~ -6 C6 / rho^7)\n";
  }
  return o.str();
}

}  // namespace dsp
