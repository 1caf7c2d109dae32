// SPDX-License-Identifier: Apache-2.0

#include "acsia/rotation.hpp"

#include <cmath>
#include <stdexcept>

namespace acsia {

Eigen::Matrix2d rotation_matrix(double phi) {
  if (!std::isfinite(phi)) throw std::invalid_argument("rotation_matrix: non-finite angle");
  const double c = std::cos(phi);
  const double s = std::sin(phi);
  Eigen::Matrix2d u;
  u << c, -s, s, c;
  return u;
}

ExtendedRotation::ExtendedRotation(double phase, int extension)
    : phase_(phase), extension_(extension) {
  if (!std::isfinite(phase)) throw std::invalid_argument("ExtendedRotation: non-finite phase");
  if (extension < 1) throw std::invalid_argument("ExtendedRotation: extension must be >= 1");
}

Mat ExtendedRotation::matrix() const {
  const Eigen::Matrix2d u = rotation_matrix(phase_);
  Mat m = Mat::Zero(dim(), dim());
  for (int k = 0; k < extension_; ++k) m.block<2, 2>(2 * k, 2 * k) = u;
  return m;
}

Mat ExtendedRotation::apply(const Mat& m) const {
  if (m.rows() != dim()) throw std::invalid_argument("ExtendedRotation::apply: row count mismatch");
  const double c = std::cos(phase_);
  const double s = std::sin(phase_);
  Mat out(m.rows(), m.cols());
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (int k = 0; k < extension_; ++k) {
      const double re = m(2 * k, j);
      const double im = m(2 * k + 1, j);
      out(2 * k, j) = c * re - s * im;
      out(2 * k + 1, j) = s * re + c * im;
    }
  }
  return out;
}

Vec ExtendedRotation::apply(const Vec& v) const {
  return apply(Mat(v)).col(0);
}

ExtendedRotation ExtendedRotation::operator*(const ExtendedRotation& rhs) const {
  if (rhs.extension_ != extension_)
    throw std::invalid_argument("ExtendedRotation: extension mismatch in product");
  return {phase_ + rhs.phase_, extension_};
}

Vec lift(const CVec& z) {
  Vec x(2 * z.size());
  for (Eigen::Index k = 0; k < z.size(); ++k) {
    x(2 * k) = z(k).real();
    x(2 * k + 1) = z(k).imag();
  }
  return x;
}

CVec unlift(const Vec& x) {
  if (x.size() % 2 != 0) throw std::invalid_argument("unlift: odd-length real vector");
  CVec z(x.size() / 2);
  for (Eigen::Index k = 0; k < z.size(); ++k) z(k) = {x(2 * k), x(2 * k + 1)};
  return z;
}

}  // namespace acsia
