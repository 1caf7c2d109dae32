// SPDX-License-Identifier: Apache-2.0

#include "acsia/lemmas.hpp"

#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>

#include "acsia/conditions.hpp"

namespace acsia {

RealCombination solve_phasor_combination(double alpha, double beta) {
  // [cos a  cos b] [c1]   [1]
  // [sin a  sin b] [c2] = [0],   det = sin(b - a)
  const double det = std::sin(beta - alpha);
  if (std::abs(det) <= kPhaseTolerance)
    throw std::domain_error("solve_phasor_combination: sin(alpha - beta) vanishes");
  return {std::sin(beta) / det, -std::sin(alpha) / det};
}

double phasor_combination_residual(double alpha, double beta, RealCombination c) {
  return std::abs(1.0 - c.c1 * std::polar(1.0, alpha) - c.c2 * std::polar(1.0, beta));
}

ContainmentDemo demonstrate_double_alignment(const ChannelMatrix& ch, std::uint64_t seed,
                                             ContainmentOptions opts) {
  if (ch.num_rx() != 3 || ch.num_tx() != 3)
    throw std::invalid_argument("demonstrate_double_alignment: expected a 3x3 channel");
  if (opts.extension < 1 || opts.streams_tx2 < 1 || opts.streams_tx3 < 1)
    throw std::invalid_argument("demonstrate_double_alignment: sizes must be >= 1");
  const auto phi = [&ch](int r, int t) { return ch.phase(r - 1, t - 1); };
  const double cycle = phi(1, 3) - phi(2, 3) + phi(2, 1) - phi(1, 2) + phi(3, 2) - phi(3, 1);
  if (std::abs(std::sin(cycle)) <= kPhaseTolerance)
    throw std::domain_error("demonstrate_double_alignment: six-phase cycle has zero sine");

  const int n = 2 * opts.extension;
  const auto rot = [n](double a) { return ExtendedRotation(a, n / 2); };
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const auto draw = [&](Eigen::Index rows, Eigen::Index cols) {
    Mat m(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j)
      for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = gauss(rng);
    return m;
  };

  ContainmentDemo demo;
  demo.extension = opts.extension;
  const Mat v3 = draw(n, opts.streams_tx3).colwise().normalized();
  const Vec a = draw(opts.streams_tx3, 1).col(0);
  const Vec b = draw(opts.streams_tx2, 1).col(0);

  // alignment at receiver 2 fixes the vector
  const Vec v11 = rot(phi(2, 3) - phi(2, 1)).apply(Vec(v3 * a));

  // alignment at receiver 3 is met by solving for transmitter 2's first
  // column; b(0) is a.s. nonzero
  Mat v2 = draw(n, opts.streams_tx2).colwise().normalized();
  const Vec target = rot(phi(3, 1) - phi(3, 2)).apply(v11);
  const Vec rest = v2.rightCols(opts.streams_tx2 - 1) * b.tail(opts.streams_tx2 - 1);
  v2.col(0) = (target - rest) / b(0);

  demo.alignment_residual = std::max(
      (rot(phi(2, 1)).apply(v11) - rot(phi(2, 3)).apply(Vec(v3 * a))).norm(),
      (rot(phi(3, 1)).apply(v11) - rot(phi(3, 2)).apply(Vec(v2 * b))).norm());

  demo.alpha = phi(1, 3) - phi(2, 3) + phi(2, 1) - phi(1, 1);
  demo.beta = phi(1, 2) - phi(3, 2) + phi(3, 1) - phi(1, 1);
  demo.c = solve_phasor_combination(demo.alpha, demo.beta);

  const Vec a_prime = demo.c.c1 * a;
  const Vec b_prime = demo.c.c2 * b;
  const Vec predicted = rot(phi(1, 3)).apply(Vec(v3 * a_prime)) + rot(phi(1, 2)).apply(Vec(v2 * b_prime));
  demo.containment_residual = (rot(phi(1, 1)).apply(v11) - predicted).norm();

  demo.a.assign(a.data(), a.data() + a.size());
  demo.b.assign(b.data(), b.data() + b.size());
  demo.a_prime.assign(a_prime.data(), a_prime.data() + a_prime.size());
  demo.b_prime.assign(b_prime.data(), b_prime.data() + b_prime.size());
  return demo;
}

}  // namespace acsia
