// SPDX-License-Identifier: Apache-2.0

#include "acsia/verify.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace acsia {

namespace {

void require_match(const BeamformerSet& set, const ChannelMatrix& ch) {
  if (set.num_tx() != ch.num_tx() || set.num_rx() != ch.num_rx())
    throw std::invalid_argument("beamformer set built for a " + std::to_string(set.num_rx()) + "x" +
                                std::to_string(set.num_tx()) + " channel, got " +
                                std::to_string(ch.num_rx()) + "x" + std::to_string(ch.num_tx()));
}

Vec image(const BeamformerSet& set, const ChannelMatrix& ch, int rx, StreamRef s) {
  return ch.rotation(rx, s.tx, set.extension()).apply(set.column(s));
}

Mat images(const BeamformerSet& set, const ChannelMatrix& ch, int rx, const std::vector<StreamRef>& refs) {
  Mat m(set.dim(), static_cast<Eigen::Index>(refs.size()));
  for (std::size_t k = 0; k < refs.size(); ++k) m.col(static_cast<Eigen::Index>(k)) = image(set, ch, rx, refs[k]);
  return m;
}

Mat orthonormal_basis(const Mat& m) {
  if (m.cols() == 0) return m;
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeThinU);
  Eigen::Index rank = 0;
  for (Eigen::Index k = 0; k < svd.singularValues().size(); ++k)
    if (svd.singularValues()(k) > kDependentThreshold) ++rank;
  return svd.matrixU().leftCols(rank);
}

}  // namespace

const char* to_string(RankStatus status) {
  switch (status) {
    case RankStatus::Independent: return "independent";
    case RankStatus::Indeterminate: return "indeterminate";
    case RankStatus::Dependent: return "dependent";
  }
  return "unknown";
}

RankStatus classify_rank(double smallest_singular_value) {
  if (smallest_singular_value > kIndependentThreshold) return RankStatus::Independent;
  if (smallest_singular_value < kDependentThreshold) return RankStatus::Dependent;
  return RankStatus::Indeterminate;
}

Mat ReceiverColumns::stacked() const {
  Mat m(desired_images.rows(), desired_images.cols() + interference_basis.cols());
  m << desired_images, interference_basis;
  return m;
}

ReceiverColumns receiver_columns(const BeamformerSet& set, const ChannelMatrix& ch, int rx) {
  require_match(set, ch);
  if (rx < 0 || rx >= set.num_rx()) throw std::out_of_range("receiver_columns: receiver index");

  std::vector<StreamRef> duplicates;
  for (const auto& a : set.alignments())
    if (a.rx == rx) duplicates.push_back(a.lhs);

  ReceiverColumns out;
  out.rx = rx;
  for (const StreamRef s : set.all_streams()) {
    if (set.info(s).rx == rx) {
      out.desired.push_back(s);
    } else if (!set.cancelled_at(rx, s) &&
               std::find(duplicates.begin(), duplicates.end(), s) == duplicates.end()) {
      out.interference.push_back(s);
    }
  }
  out.desired_images = images(set, ch, rx, out.desired);
  out.interference_basis = images(set, ch, rx, out.interference);
  return out;
}

double alignment_residual(const BeamformerSet& set, const ChannelMatrix& ch) {
  require_match(set, ch);
  double worst = 0.0;
  for (const auto& a : set.alignments()) {
    const Vec lhs = image(set, ch, a.rx, a.lhs);
    const Vec rhs = image(set, ch, a.rx, a.rhs);
    double r = (lhs - rhs).norm();
    if (a.up_to_sign) r = std::min(r, (lhs + rhs).norm());
    worst = std::max(worst, r);
  }
  return worst;
}

bool IndependenceReport::all_independent() const {
  return std::all_of(receivers.begin(), receivers.end(),
                     [](const auto& r) { return r.status == RankStatus::Independent; });
}

IndependenceReport independence_margin(const BeamformerSet& set, const ChannelMatrix& ch) {
  require_match(set, ch);
  IndependenceReport report;
  for (int rx = 0; rx < set.num_rx(); ++rx) {
    const ReceiverColumns cols = receiver_columns(set, ch, rx);
    const Mat m = cols.stacked();

    ReceiverIndependence r;
    r.rx = rx;
    r.rows = static_cast<int>(m.rows());
    r.cols = static_cast<int>(m.cols());
    const Vec sv = Eigen::JacobiSVD<Mat>(m).singularValues();
    r.singular_values.assign(sv.data(), sv.data() + sv.size());
    // more columns than rows: the missing singular values are exactly zero
    for (Eigen::Index k = sv.size(); k < m.cols(); ++k) r.singular_values.push_back(0.0);
    r.numerical_rank = static_cast<int>(std::count_if(
        r.singular_values.begin(), r.singular_values.end(), [](double s) { return s > kDependentThreshold; }));
    r.status = classify_rank(r.smallest_singular_value());

    const Mat qd = orthonormal_basis(cols.desired_images);
    const Mat qi = orthonormal_basis(cols.interference_basis);
    if (qd.cols() == 0 || qi.cols() == 0) {
      r.min_principal_angle = kPi / 2;
    } else {
      const Vec cosines = Eigen::JacobiSVD<Mat>(qd.transpose() * qi).singularValues();
      r.min_principal_angle = std::acos(std::clamp(cosines(0), -1.0, 1.0));
    }
    report.receivers.push_back(std::move(r));
  }
  return report;
}

}  // namespace acsia
