#include "core/free_green.hpp"

#include <cmath>

namespace dsp {

namespace {
constexpr double kPi = 3.14159265358979323846;

void check_points(const Vec3& r1, const Vec3& r2, double xi) {
  if (!(xi > 0.0)) {
    throw Error(ErrorCode::invalid_argument,
                "free-space Green tensor requires xi > 0");
  }
  if ((r1 - r2).squaredNorm() == 0.0) {
    throw Error(ErrorCode::invalid_argument,
                "free-space Green tensor is singular at coincident points");
  }
}

GreenTensor3 closed_form(const Vec3& r1, const Vec3& r2, double xi,
                         double n_refr, GreenTensor3::Kind kind) {
  Vec3 d = r1 - r2;
  double rho = d.norm();
  double u = n_refr * xi * rho;
  double a = 1.0 + 1.0 / u + 1.0 / (u * u);
  double b = -(1.0 + 3.0 / u + 3.0 / (u * u));
  double pref = std::exp(-u) / (4.0 * kPi * rho);
  Vec3 rhat = d / rho;
  GreenTensor3 g;
  g.t = pref * (a * Mat3::Identity() + b * (rhat * rhat.transpose()));
  g.xi = xi;
  g.kind = kind;
  return g;
}
}  // namespace

double free_green_transverse(double rho, double u) {
  double a = 1.0 + 1.0 / u + 1.0 / (u * u);
  return std::exp(-u) * a / (4.0 * kPi * rho);
}

double free_green_longitudinal(double rho, double u) {
  // A + B = -2/u - 2/u^2
  double ab = -2.0 / u - 2.0 / (u * u);
  return std::exp(-u) * ab / (4.0 * kPi * rho);
}

GreenTensor3 free_space_green_iw(const Vec3& r1, const Vec3& r2, double xi) {
  check_points(r1, r2, xi);
  return closed_form(r1, r2, xi, 1.0, GreenTensor3::Kind::free_space);
}

GreenTensor3 bulk_green_iw(const Material& medium, const Vec3& r1,
                           const Vec3& r2, double xi) {
  check_points(r1, r2, xi);
  double n = std::sqrt(medium.eps(xi) * medium.mu(xi));
  GreenTensor3 g = closed_form(r1, r2, xi, n, GreenTensor3::Kind::bulk);
  g.note = "retardation-rescaled unbounded-medium form";
  return g;
}

double tr_gg(double rho, double xi_eff) {
  double u = xi_eff * rho;
  double iu = 1.0 / u;
  double poly = 2.0 + iu * (4.0 + iu * (10.0 + iu * (12.0 + iu * 6.0)));
  return std::exp(-2.0 * u) * poly / (16.0 * kPi * kPi * rho * rho);
}

double dtr_gg_drho(double rho, double xi_eff) {
  double u = xi_eff * rho;
  double iu = 1.0 / u;
  double poly =
      4.0 + iu * (12.0 + iu * (32.0 + iu * (64.0 + iu * (72.0 + iu * 36.0))));
  double x3 = xi_eff * xi_eff * xi_eff;
  return -x3 * std::exp(-2.0 * u) * poly * iu * iu / (16.0 * kPi * kPi);
}

}  // namespace dsp
