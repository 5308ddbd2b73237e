#include "core/born_voxel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <string>

namespace dsp {
namespace {

constexpr double kPi = 3.14159265358979323846;

std::string fmt(double v) {
  std::ostringstream o;
  o << v;
  return o.str();
}

Mat3 identity3() { return Mat3::Identity(); }

// Distance from the wall for planar hosts (wall occupies z <= 0); returns
// +inf for translation-invariant hosts.
double min_wall_distance(const GreenProvider& host, const VoxelBody& body) {
  if (provider_stack(host) == nullptr)
    return std::numeric_limits<double>::infinity();
  double zmin = std::numeric_limits<double>::infinity();
  for (const auto& c : body.centers) zmin = std::min(zmin, c.z());
  return zmin;
}

QuadratureSpec body_spec(const GreenProvider& host, const VoxelBody& body,
                         const QuadratureSpec& spec) {
  QuadratureSpec s = spec;
  double z = min_wall_distance(host, body);
  if (std::isfinite(z) && z > 0.0)
    s.scale_hint = std::min(1.0, 1.0 / (2.0 * z));
  return s;
}

void check_wall_clearance(const GreenProvider& host, const VoxelBody& body) {
  double z = min_wall_distance(host, body);
  if (z < 0.5 * body.pitch * (1.0 - 1e-12)) {
    throw SeparationTooSmall(
        "voxel body reaches into the wall (lowest center at z = " + fmt(z) +
        ", need >= pitch/2 = " + fmt(0.5 * body.pitch) + ")");
  }
}

// Shared driver for the exact and first-order body forces: integrates the
// three components of the xi^2-weighted gradient accumulator over xi. A
// first pass on the magnitude sets an absolute-tolerance floor so that
// components that vanish by symmetry converge instead of chasing roundoff.
template <typename Accum>
ForceResult integrate_body_force(const Accum& accum, const QuadratureSpec& s,
                                 const char* note) {
  std::map<double, Vec3> cache;
  auto density = [&](double xi) -> Vec3 {
    auto it = cache.find(xi);
    if (it != cache.end()) return it->second;
    Vec3 g = accum(xi);
    cache.emplace(xi, g);
    return g;
  };

  IntegralResult mag = integrate_semiinfinite(
      [&](double xi) { return xi * xi * density(xi).norm(); }, 0.0, s);
  double floor = std::max(0.0, mag.value) * s.rel_tol;

  ForceResult f;
  f.converged = mag.converged;
  f.evaluations = mag.evaluations;
  const double pref = -1.0 / (2.0 * kPi);
  for (int axis = 0; axis < 3; ++axis) {
    QuadratureSpec sa = s;
    sa.abs_tol = std::max(s.abs_tol, 0.5 * floor);
    IntegralResult ir = integrate_semiinfinite(
        [&](double xi) { return xi * xi * density(xi)[axis]; }, 0.0, sa);
    f.force[axis] = pref * ir.value;
    f.error_estimate += std::abs(pref) * ir.error_estimate;
    f.evaluations += ir.evaluations;
    f.converged = f.converged && ir.converged;
    if (axis == 2) {
      for (auto& [dec, v] : ir.decade_breakdown)
        f.decade_breakdown.emplace_back(dec, pref * v);
    }
  }
  f.note = note;
  return f;
}

}  // namespace

void VoxelBody::validate() const {
  std::vector<std::string> issues;
  if (!(pitch > 0.0)) issues.push_back("voxel pitch must be > 0");
  if (centers.empty()) issues.push_back("voxel body has no voxels");
  if (centers.size() > kMaxVoxels)
    issues.push_back("voxel count " + std::to_string(centers.size()) +
                     " exceeds the dense-solve limit " +
                     std::to_string(kMaxVoxels));
  if (susceptibilities.empty() ||
      (susceptibilities.size() != 1 &&
       susceptibilities.size() != centers.size()))
    issues.push_back(
        "susceptibility list must have one entry (uniform) or one entry per "
        "voxel");
  if (pitch > 0.0 && centers.size() > 1) {
    double min2 = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < centers.size(); ++i)
      for (std::size_t j = i + 1; j < centers.size(); ++j)
        min2 = std::min(min2, (centers[i] - centers[j]).squaredNorm());
    double dmin = std::sqrt(min2);
    if (dmin < pitch * (1.0 - 1e-9))
      issues.push_back("voxel centers must be at least one pitch apart (min "
                       "distance " +
                       fmt(dmin) + ", pitch " + fmt(pitch) + ")");
  }
  if (!issues.empty()) throw ValidationError(std::move(issues));

  for (const auto& s : susceptibilities) {
    double c0 = s.chi(0.0);
    if (!(1.0 + c0 / 3.0 > 0.0))
      throw CausalityViolation(
          -c0 / 3.0, "voxel susceptibility fails the local-field gate: chi(0) "
                     "= " + fmt(c0) + " has 1 + chi/3 <= 0");
  }
}

VoxelBody VoxelBody::box(const Vec3& center, const std::array<int, 3>& counts,
                         double pitch, Susceptibility chi) {
  if (counts[0] <= 0 || counts[1] <= 0 || counts[2] <= 0)
    throw Error(ErrorCode::invalid_argument,
                "box voxel counts must be positive");
  if (!(pitch > 0.0))
    throw Error(ErrorCode::invalid_argument, "voxel pitch must be > 0");
  VoxelBody b;
  b.pitch = pitch;
  b.susceptibilities.push_back(std::move(chi));
  b.centers.reserve(static_cast<std::size_t>(counts[0]) * counts[1] *
                    counts[2]);
  for (int ix = 0; ix < counts[0]; ++ix)
    for (int iy = 0; iy < counts[1]; ++iy)
      for (int iz = 0; iz < counts[2]; ++iz) {
        Vec3 off(pitch * (ix - 0.5 * (counts[0] - 1)),
                 pitch * (iy - 0.5 * (counts[1] - 1)),
                 pitch * (iz - 0.5 * (counts[2] - 1)));
        b.centers.push_back(center + off);
      }
  return b;
}

VoxelBody VoxelBody::sphere(const Vec3& center, double radius, double pitch,
                            Susceptibility chi) {
  if (!(radius > 0.0))
    throw Error(ErrorCode::invalid_argument, "sphere radius must be > 0");
  if (!(pitch > 0.0))
    throw Error(ErrorCode::invalid_argument, "voxel pitch must be > 0");
  VoxelBody b;
  b.pitch = pitch;
  b.susceptibilities.push_back(std::move(chi));
  int m = static_cast<int>(std::floor(radius / pitch));
  double r2 = radius * radius * (1.0 + 1e-12);
  for (int ix = -m; ix <= m; ++ix)
    for (int iy = -m; iy <= m; ++iy)
      for (int iz = -m; iz <= m; ++iz) {
        Vec3 off(pitch * ix, pitch * iy, pitch * iz);
        if (off.squaredNorm() <= r2) b.centers.push_back(center + off);
      }
  return b;
}

DysonSolution::DysonSolution(const GreenProvider& host, const VoxelBody& body,
                             double xi)
    : host_(&host),
      body_(&body),
      xi_(xi),
      k2_(-xi * xi),
      dv_(body.voxel_volume()),
      n_(body.size()) {
  if (!(xi > 0.0))
    throw Error(ErrorCode::invalid_argument,
                "imaginary frequency must be > 0");
  body.validate();

  chi_.resize(n_);
  for (std::size_t i = 0; i < n_; ++i)
    chi_[i] = body.susceptibility_at(i).chi(xi);

  const Eigen::Index n3 = static_cast<Eigen::Index>(3 * n_);
  Eigen::MatrixXd gh = Eigen::MatrixXd::Zero(n3, n3);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i + 1; j < n_; ++j) {
      Mat3 g = host.eval(body.centers[i], body.centers[j], xi).t;
      gh.block<3, 3>(3 * i, 3 * j) = g;
      gh.block<3, 3>(3 * j, 3 * i) = g.transpose();
    }
  sdiag_.resize(n_);
  for (std::size_t i = 0; i < n_; ++i)
    sdiag_[i] = host.scattering_coincident(body.centers[i], xi).t;

  // System matrix: local-field diagonal (1 + chi_i/3) 1 minus the hollow
  // coupling, with columns carrying the source-voxel weight chi_j dV.
  Eigen::MatrixXd a = (-k2_) * gh;
  for (std::size_t j = 0; j < n_; ++j)
    a.middleCols(3 * j, 3) *= chi_[j] * dv_;
  for (std::size_t i = 0; i < n_; ++i)
    a.block<3, 3>(3 * i, 3 * i) = (1.0 + chi_[i] / 3.0) * identity3();

  lu_.compute(a);
  rcond_ = lu_.rcond();
  if (!std::isfinite(rcond_) || rcond_ < 1e-12)
    throw SingularSystem(rcond_,
                         "voxel interaction matrix is near-singular "
                         "(reciprocal condition " +
                             fmt(rcond_) + ")");

  double gn = gh.norm();
  if (gn > 0.0) {
    xtilde_ = lu_.solve(gh);
    Eigen::MatrixXd r = gh - a * xtilde_;
    double rel = r.norm() / gn;
    if (rel > 1e-14) {
      xtilde_ += lu_.solve(r);
      rel = (gh - a * xtilde_).norm() / gn;
    }
    residual_ = rel;
    if (!(residual_ < 1e-10))
      throw SingularSystem(rcond_,
                           "voxel solve residual " + fmt(residual_) +
                               " exceeds 1e-10 (reciprocal condition " +
                               fmt(rcond_) + ")");
  } else {
    xtilde_ = Eigen::MatrixXd::Zero(n3, n3);
    residual_ = 0.0;
  }
}

Mat3 DysonSolution::block(std::size_t i, std::size_t j) const {
  if (i >= n_ || j >= n_)
    throw Error(ErrorCode::invalid_argument, "voxel index out of range");
  Mat3 b = xtilde_.block<3, 3>(3 * i, 3 * j);
  if (i == j) b += sdiag_[i] / (1.0 + chi_[i] / 3.0);
  return b;
}

double DysonSolution::scattering_trace(std::size_t i, const Vec3& r) const {
  if (i >= n_)
    throw Error(ErrorCode::invalid_argument, "voxel index out of range");
  const auto& centers = body_->centers;

  Eigen::MatrixXd b(static_cast<Eigen::Index>(3 * n_), 3);
  for (std::size_t m = 0; m < n_; ++m) {
    Mat3 g = (m == i) ? host_->scattering(centers[m], r, xi_).t
                      : host_->eval(centers[m], r, xi_).t;
    b.middleRows(3 * m, 3) = g;
  }
  Eigen::MatrixXd y = lu_.solve(b);

  double acc = host_->scattering_coincident(r, xi_).t.trace();
  for (std::size_t j = 0; j < n_; ++j) {
    if (j == i) continue;
    Mat3 grj = host_->eval(r, centers[j], xi_).t;
    acc += k2_ * chi_[j] * dv_ *
           (grj * y.middleRows(3 * j, 3)).trace();
  }
  return acc / (1.0 + chi_[i] / 3.0);
}

Vec3 DysonSolution::scattering_trace_gradient(std::size_t i) const {
  if (i >= n_)
    throw Error(ErrorCode::invalid_argument, "voxel index out of range");
  double h = 0.25 * body_->pitch;
  Vec3 g;
  for (int axis = 0; axis < 3; ++axis) {
    Vec3 p = body_->centers[i];
    Vec3 m = p;
    p[axis] += h;
    m[axis] -= h;
    g[axis] = (scattering_trace(i, p) - scattering_trace(i, m)) / (2.0 * h);
  }
  return g;
}

DysonSolution solve_dyson(const GreenProvider& host, const VoxelBody& body,
                          double xi) {
  return DysonSolution(host, body, xi);
}

ForceResult body_force_exact(const GreenProvider& host, const VoxelBody& body,
                             const QuadratureSpec& spec) {
  body.validate();
  check_wall_clearance(host, body);
  double dv = body.voxel_volume();
  auto accum = [&](double xi) -> Vec3 {
    DysonSolution sol(host, body, xi);
    Vec3 g = Vec3::Zero();
    for (std::size_t i = 0; i < body.size(); ++i)
      g += body.susceptibility_at(i).chi(xi) * dv *
           sol.scattering_trace_gradient(i);
    return g;
  };
  return integrate_body_force(accum, body_spec(host, body, spec),
                              "dressed volume-integral force");
}

ForceResult body_force_linear(const GreenProvider& host, const VoxelBody& body,
                              const QuadratureSpec& spec) {
  body.validate();
  check_wall_clearance(host, body);
  double dv = body.voxel_volume();
  double h = 0.25 * body.pitch;
  auto bare_trace = [&](const Vec3& r, double xi) {
    return host.scattering_coincident(r, xi).t.trace();
  };
  auto accum = [&, h](double xi) -> Vec3 {
    Vec3 g = Vec3::Zero();
    for (std::size_t i = 0; i < body.size(); ++i) {
      Vec3 gi;
      for (int axis = 0; axis < 3; ++axis) {
        Vec3 p = body.centers[i];
        Vec3 m = p;
        p[axis] += h;
        m[axis] -= h;
        gi[axis] = (bare_trace(p, xi) - bare_trace(m, xi)) / (2.0 * h);
      }
      g += body.susceptibility_at(i).chi(xi) * dv * gi;
    }
    return g;
  };
  return integrate_body_force(accum, body_spec(host, body, spec),
                              "single-scattering volume-integral force");
}

ForceResult crossing_force(const GreenProvider& host, const VoxelBody& body1,
                           const VoxelBody& body2, const QuadratureSpec& spec,
                           GradientMode mode) {
  body1.validate();
  body2.validate();

  double min2 = std::numeric_limits<double>::infinity();
  for (const auto& c1 : body1.centers)
    for (const auto& c2 : body2.centers)
      min2 = std::min(min2, (c1 - c2).squaredNorm());
  double dmin = std::sqrt(min2);
  double gate = 3.0 * std::max(body1.pitch, body2.pitch);
  if (dmin < gate * (1.0 - 1e-12))
    throw SeparationTooSmall("bodies are too close for the voxel-pair "
                             "kernel: min center separation " +
                             fmt(dmin) + " < 3 x pitch = " + fmt(gate));

  double dv1 = body1.voxel_volume();
  double dv2 = body2.voxel_volume();
  ForceResult total;
  total.converged = true;
  for (std::size_t i = 0; i < body1.size(); ++i) {
    const Susceptibility& s1 = body1.susceptibility_at(i);
    auto w1 = [&s1, dv1](double xi) { return s1.chi(xi) * dv1; };
    for (std::size_t j = 0; j < body2.size(); ++j) {
      const Susceptibility& s2 = body2.susceptibility_at(j);
      auto w2 = [&s2, dv2](double xi) { return s2.chi(xi) * dv2; };
      ForceResult fr =
          pair_dispersion_force(w1, w2, host, body1.centers[i],
                                body2.centers[j], spec, mode);
      total.force += fr.force;
      total.error_estimate += fr.error_estimate;
      total.evaluations += fr.evaluations;
      total.converged = total.converged && fr.converged;
    }
  }
  total.note = "pairwise crossing-term sum";
  return total;
}

}  // namespace dsp
