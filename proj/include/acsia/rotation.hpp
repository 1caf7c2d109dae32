// SPDX-License-Identifier: Apache-2.0
//
// Real-valued view of complex scalar channels: a complex gain h*e^{j*phi}
// acts on an interleaved (Re, Im) pair as h times a 2x2 rotation.

#pragma once

#include <Eigen/Dense>

namespace acsia {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;
using CVec = Eigen::VectorXcd;

/// [[cos phi, -sin phi], [sin phi, cos phi]]. Throws std::invalid_argument
/// for a non-finite angle.
Eigen::Matrix2d rotation_matrix(double phi);

/// One phase applied to every complex slot of an S-symbol extension.
///
/// The dense view is the 2S x 2S block-diagonal matrix with the 2x2 rotation
/// repeated along the diagonal, matching the interleaved layout
/// (Re x[0], Im x[0], Re x[1], Im x[1], ...). Products and inverses stay in
/// the rotation group, so the class stores only the angle.
class ExtendedRotation {
 public:
  ExtendedRotation(double phase, int extension);

  double phase() const { return phase_; }
  int extension() const { return extension_; }
  int dim() const { return 2 * extension_; }

  Mat matrix() const;

  /// Rotates every column of `m` (2S rows) slot by slot.
  Mat apply(const Mat& m) const;
  Vec apply(const Vec& v) const;

  ExtendedRotation inverse() const { return {-phase_, extension_}; }

  /// Composition; both operands must share the extension.
  ExtendedRotation operator*(const ExtendedRotation& rhs) const;

 private:
  double phase_;
  int extension_;
};

inline ExtendedRotation extend_rotation(double phi, int extension) {
  return {phi, extension};
}

/// Interleaves a complex S-vector into 2S reals, (Re, Im) per slot.
Vec lift(const CVec& z);

/// Inverse of lift(). Throws std::invalid_argument on odd length.
CVec unlift(const Vec& x);

}  // namespace acsia
