#pragma once

// Direct (non-iterative) evaluation of the geometric mean A # B and of the
// geodesic point A #_t B of two SPD matrices.

#include <gmean/linalg.hpp>
#include <gmean/types.hpp>

#include <cmath>

namespace gmean {

/// Square root of a symmetric positive definite matrix through its
/// eigendecomposition; exponent -1/2 is also accepted.
template <typename Scalar>
DenseMatrix<Scalar> spd_power_eig(const DenseMatrix<Scalar>& a, Scalar p) {
  EigDecomposition<Scalar> eig = sym_eig(a);
  if (eig.values(0) <= Scalar(0))
    throw NotPositiveDefinite("matrix power needs a positive spectrum");
  DenseVector<Scalar> d = eig.values.array().pow(p).matrix();
  return symmetrized(eig.vectors * d.asDiagonal() * eig.vectors.transpose());
}

template <typename Scalar>
struct SwapResult {
  SpdMatrix<Scalar> a;
  SpdMatrix<Scalar> b;
  GeodesicParameter<Scalar> t;
  bool swapped;
};

/// Order the pair so the better-conditioned matrix comes first; the geodesic
/// parameter flips to 1 - t when the operands swap. Ties keep the order.
template <typename Scalar>
SwapResult<Scalar> condition_swap(const SpdMatrix<Scalar>& a, const SpdMatrix<Scalar>& b,
                                  GeodesicParameter<Scalar> t = GeodesicParameter<Scalar>()) {
  if (a.n() != b.n()) throw DimensionMismatch("condition_swap: size mismatch");
  if (condition_2norm(a) > condition_2norm(b))
    return {b, a, GeodesicParameter<Scalar>(Scalar(1) - t.value()), true};
  return {a, b, t, false};
}

/// Geodesic point A #_t B through one Cholesky factorization of each operand
/// and one symmetric eigendecomposition:
///   with V = R_a^{-T} b R_a^{-1} = U D U^T,  A #_t B = R_a^T U D^t U^T R_a.
/// V is assembled as X^T X with the triangular X = R_b R_a^{-1}, and the
/// operands are condition-ordered first.
template <typename Scalar>
SpdMatrix<Scalar> gmean_cholesky_schur(const SpdMatrix<Scalar>& a, const SpdMatrix<Scalar>& b,
                                       GeodesicParameter<Scalar> t = GeodesicParameter<Scalar>()) {
  SwapResult<Scalar> s = condition_swap(a, b, t);
  const DenseMatrix<Scalar>& ra = s.a.cholesky_upper().matrix();
  // X R_a = R_b.
  DenseMatrix<Scalar> x =
      solve_triangular(s.a.cholesky_upper(), s.b.cholesky_upper().matrix(), Side::Right, false);
  EigDecomposition<Scalar> eig = sym_eig(symmetrized(x.transpose() * x));
  if (eig.values(0) <= Scalar(0))
    throw NotPositiveDefinite("congruence-reduced operand lost positivity");
  DenseVector<Scalar> dt(eig.values.size());
  const Scalar tt = s.t.value();
  for (Index i = 0; i < dt.size(); ++i) dt(i) = std::exp(tt * std::log(eig.values(i)));
  DenseMatrix<Scalar> core = eig.vectors * dt.asDiagonal() * eig.vectors.transpose();
  return SpdMatrix<Scalar>(symmetrized(ra.transpose() * core * ra));
}

/// Reference evaluation A^{1/2} (A^{-1/2} B A^{-1/2})^{1/2} A^{1/2} built
/// from two eigendecomposition square roots. Deliberately shares no code
/// path with gmean_cholesky_schur so the two can check each other.
template <typename Scalar>
SpdMatrix<Scalar> gmean_reference(const SpdMatrix<Scalar>& a, const SpdMatrix<Scalar>& b) {
  if (a.n() != b.n()) throw DimensionMismatch("gmean_reference: size mismatch");
  DenseMatrix<Scalar> sa = spd_power_eig(a.matrix(), Scalar(0.5));
  DenseMatrix<Scalar> isa = spd_power_eig(a.matrix(), Scalar(-0.5));
  DenseMatrix<Scalar> inner = spd_power_eig(symmetrized(isa * b.matrix() * isa), Scalar(0.5));
  return SpdMatrix<Scalar>(symmetrized(sa * inner * sa));
}

/// Closed form for 2 x 2 operands:
///   A # B = sqrt(alpha beta / det(C)) C,  C = A/alpha + B/beta,
/// with alpha = sqrt(det A), beta = sqrt(det B).
template <typename Scalar>
SpdMatrix<Scalar> gmean_2x2_closed(const SpdMatrix<Scalar>& a, const SpdMatrix<Scalar>& b) {
  if (a.n() != 2 || b.n() != 2) throw DimensionMismatch("gmean_2x2_closed needs 2 x 2 operands");
  const Scalar alpha = std::sqrt(a.matrix().determinant());
  const Scalar beta = std::sqrt(b.matrix().determinant());
  DenseMatrix<Scalar> c = a.matrix() / alpha + b.matrix() / beta;
  const Scalar scale = std::sqrt(alpha * beta / c.determinant());
  return SpdMatrix<Scalar>(symmetrized(scale * c));
}

}  // namespace gmean
