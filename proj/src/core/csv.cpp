#include "core/csv.hpp"

#include <charconv>
#include <cstdio>
#include <sstream>

#include "core/version.hpp"

namespace dsp {

std::uint64_t fnv1a64(const std::string& data) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string format_shortest(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v,
                           std::chars_format::scientific);
  return std::string(buf, res.ptr);
}

std::string emit_csv(const Scenario& sc, const RunOutput& out) {
  std::ostringstream o;
  char hash[32];
  std::snprintf(hash, sizeof(hash), "%016llx",
                static_cast<unsigned long long>(fnv1a64(sc.source_text)));

  o << "# dispersia " << kVersion << "\n";
  o << "# scenario-hash: 0x" << hash << "\n";
  o << "# kind: " << scenario_kind_name(sc.kind) << "\n";
  o << "# sweep: " << sc.sweep.variable << "\n";
  if (out.output_units.is_si) {
    o << "# units: si (sweep m; force N; pressure N/m^2; omega_ref "
      << format_shortest(out.output_units.omega_ref) << " rad/s)\n";
  } else {
    o << "# units: natural (hbar = c = eps0 = mu0 = 1)\n";
  }
  o << "# rel-tol: " << format_shortest(out.rel_tol) << "\n";
  if (!sc.approximations.empty()) {
    o << "# approx:";
    for (const auto& a : sc.approximations) o << " " << a;
    o << "\n";
  }
  o << "sweep,Fx,Fy,Fz,err,converged\n";
  for (const auto& r : out.rows) {
    o << format_shortest(r.sweep) << "," << format_shortest(r.force.x())
      << "," << format_shortest(r.force.y()) << ","
      << format_shortest(r.force.z()) << "," << format_shortest(r.error)
      << "," << (r.converged ? "1" : "0") << "\n";
  }
  return o.str();
}

}  // namespace dsp
