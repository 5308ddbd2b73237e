// Shared value type for imaginary-frequency Green tensors.  Values are always
// purely real on this axis; `note` records which regularization produced the
// value (e.g. coincident scattering part, hollow-body reconstruction).
#pragma once

#include <Eigen/Dense>
#include <string>

namespace dsp {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

struct GreenTensor3 {
  enum class Kind { scattering_coincident, gap, free_space, bulk, points };

  Mat3 t = Mat3::Zero();
  double xi = 0.0;
  Kind kind = Kind::free_space;
  std::string note;  // regularization / assembly metadata

  double gxx() const { return t(0, 0); }
  double gyy() const { return t(1, 1); }
  double gzz() const { return t(2, 2); }
  double trace() const { return t.trace(); }
};

}  // namespace dsp
