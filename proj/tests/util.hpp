#pragma once

// Deterministic random inputs for the tests. Every generator takes the
// engine by reference so a test controls its whole stream with one seed and
// failures reproduce exactly.

#include <gmean/linalg.hpp>
#include <gmean/types.hpp>

#include <cmath>
#include <random>

namespace testgen {

using gmean::DenseMatrix;
using gmean::DenseVector;
using gmean::Index;

inline DenseMatrix<double> random_gaussian(Index rows, Index cols, std::mt19937& rng) {
  std::normal_distribution<double> dist(0.0, 1.0);
  DenseMatrix<double> m(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) m(i, j) = dist(rng);
  return m;
}

inline DenseMatrix<double> random_orthogonal(Index n, std::mt19937& rng) {
  Eigen::HouseholderQR<DenseMatrix<double>> qr(random_gaussian(n, n, rng));
  return qr.householderQ() * DenseMatrix<double>::Identity(n, n);
}

// SPD with eigenvalues log-uniform in [lo, hi].
inline gmean::SpdMatrix<double> random_spd(Index n, std::mt19937& rng, double lo = 0.5, double hi = 2.0) {
  std::uniform_real_distribution<double> dist(std::log(lo), std::log(hi));
  DenseMatrix<double> q = random_orthogonal(n, rng);
  DenseVector<double> lam(n);
  for (Index i = 0; i < n; ++i) lam(i) = std::exp(dist(rng));
  return gmean::SpdMatrix<double>(gmean::symmetrized(q * lam.asDiagonal() * q.transpose()));
}

inline DenseMatrix<double> random_symmetric(Index n, std::mt19937& rng) {
  return gmean::symmetrized(random_gaussian(n, n, rng));
}

// Invertible with singular values in [0.5, 2], so congruences stay tame.
inline DenseMatrix<double> random_invertible(Index n, std::mt19937& rng) {
  std::uniform_real_distribution<double> dist(std::log(0.5), std::log(2.0));
  DenseMatrix<double> u = random_orthogonal(n, rng);
  DenseMatrix<double> v = random_orthogonal(n, rng);
  DenseVector<double> s(n);
  for (Index i = 0; i < n; ++i) s(i) = std::exp(dist(rng));
  return u * s.asDiagonal() * v.transpose();
}

// Symmetric circulant SPD: first row (r_0, r_1, ..., r_{n-1}) with
// r_j = r_{n-j} and r_0 dominant enough to force positive eigenvalues.
inline gmean::SpdMatrix<double> random_circulant_spd(Index n, std::mt19937& rng) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  DenseVector<double> r = DenseVector<double>::Zero(n);
  double sum_abs = 0;
  for (Index j = 1; j <= n / 2; ++j) {
    const double v = dist(rng);
    r(j) = v;
    r(n - j) = v;
  }
  for (Index j = 1; j < n; ++j) sum_abs += std::abs(r(j));
  r(0) = 1.0 + 1.25 * sum_abs;
  DenseMatrix<double> m(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) m(i, j) = r((j - i + n) % n);
  return gmean::SpdMatrix<double>(gmean::symmetrized(m));
}

inline DenseMatrix<double> rotation2(double angle) {
  DenseMatrix<double> r(2, 2);
  r << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
  return r;
}

}  // namespace testgen
