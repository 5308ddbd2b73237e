// Voxelized dielectric bodies: a dense multiple-scattering (collocation)
// solve for the environment-dressed Green tensor sampled over the body, the
// volume-integral force on the body (exact and first-order variants), and
// the bilinear crossing force between two weakly susceptible bodies.
//
// Discretization: cubic voxels of volume dV = pitch^3, one collocation point
// per voxel at its center. The self-term of the singular kernel is handled
// with a spherical exclusion volume, which turns into the local-field
// diagonal factor (1 + chi/3); the remaining principal-value self-integral
// is taken as zero at this order.
#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <vector>

#include <Eigen/Dense>

#include "core/errors.hpp"
#include "core/green_types.hpp"
#include "core/materials.hpp"
#include "core/pair_vdw.hpp"
#include "core/planar_forces.hpp"
#include "core/providers.hpp"
#include "core/quadrature.hpp"

namespace dsp {

// Dense direct solves only: desk-scale verification tool, not a production
// coupled-dipole code.
inline constexpr std::size_t kMaxVoxels = 2000;

struct VoxelBody {
  std::vector<Vec3> centers;
  double pitch = 0.0;
  // One entry (uniform body) or one entry per voxel.
  std::vector<Susceptibility> susceptibilities;

  std::size_t size() const { return centers.size(); }
  double voxel_volume() const { return pitch * pitch * pitch; }
  const Susceptibility& susceptibility_at(std::size_t i) const {
    return susceptibilities.size() == 1 ? susceptibilities.front()
                                        : susceptibilities[i];
  }

  // Throws ValidationError / CausalityViolation; called by every solver
  // entry point.
  void validate() const;

  // Axis-aligned block of counts[0] x counts[1] x counts[2] voxels centered
  // on `center`.
  static VoxelBody box(const Vec3& center, const std::array<int, 3>& counts,
                       double pitch, Susceptibility chi);
  // All voxels of a cubic grid (aligned to `center`) whose centers lie
  // within `radius`.
  static VoxelBody sphere(const Vec3& center, double radius, double pitch,
                          Susceptibility chi);
};

// Solved multiple-scattering system at one imaginary frequency. Holds the
// interior matrix (3N x 3N, blocks = dressed Green tensor between voxel
// centers, diagonal blocks regularized to their scattering part) plus the
// factorized system matrix, which is reused to evaluate the dressed
// scattering trace at off-center points without another solve.
class DysonSolution {
 public:
  DysonSolution(const GreenProvider& host, const VoxelBody& body, double xi);

  double xi() const { return xi_; }
  std::size_t size() const { return n_; }

  // Dressed Green tensor block between voxel centers i and j; the i == j
  // block is the coincidence-regularized (scattering) value.
  Mat3 block(std::size_t i, std::size_t j) const;

  // Relative residual of the linear solve (after one refinement step) and
  // the reciprocal condition estimate of the system matrix.
  double residual() const { return residual_; }
  double condition_reciprocal() const { return rcond_; }

  // Tr of the dressed scattering tensor at a point r inside voxel `i`
  // (coincidence limit, host-bulk part subtracted), reconstructed from the
  // stored factorization.
  double scattering_trace(std::size_t i, const Vec3& r) const;

  // Central-difference gradient of scattering_trace about the center of
  // voxel `i` (step = pitch/4).
  Vec3 scattering_trace_gradient(std::size_t i) const;

 private:
  const GreenProvider* host_;
  const VoxelBody* body_;
  double xi_ = 0.0;
  double k2_ = 0.0;  // squared wavenumber on the imaginary axis: -xi^2
  double dv_ = 0.0;
  std::size_t n_ = 0;
  std::vector<double> chi_;   // chi_i(i xi)
  std::vector<Mat3> sdiag_;   // host scattering tensor at each center
  Eigen::MatrixXd xtilde_;    // solved hollow interior matrix
  Eigen::PartialPivLU<Eigen::MatrixXd> lu_;
  double residual_ = 0.0;
  double rcond_ = 0.0;
};

DysonSolution solve_dyson(const GreenProvider& host, const VoxelBody& body,
                          double xi);

// Exact body force: F = -(1/2 pi) Int dxi xi^2 Sum_i chi_i dV grad Tr of the
// dressed scattering tensor at voxel i (gradient by the pitch/4 stencil).
ForceResult body_force_exact(const GreenProvider& host, const VoxelBody& body,
                             const QuadratureSpec& spec);

// First-order (single-scattering) body force: same stencil and quadrature,
// but with the bare host scattering trace -- no dense solve. The difference
// exact - linear isolates the multiple-scattering content.
ForceResult body_force_linear(const GreenProvider& host, const VoxelBody& body,
                              const QuadratureSpec& spec);

// Force on body 1 from the interference (crossing) term, bilinear in the two
// bodies' susceptibilities: a pairwise sum of the two-point dispersion kernel
// with weights chi dV. Requires min center separation >= 3 x pitch.
ForceResult crossing_force(const GreenProvider& host, const VoxelBody& body1,
                           const VoxelBody& body2, const QuadratureSpec& spec,
                           GradientMode mode = GradientMode::automatic);

}  // namespace dsp
