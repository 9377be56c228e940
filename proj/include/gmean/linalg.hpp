#pragma once

// Dense linear-algebra primitives used by the mean algorithms. Factorization
// work is delegated to Eigen; the contracts (residual bounds, ordering,
// error signalling) are fixed here.

#include <gmean/types.hpp>

#include <cmath>
#include <random>

namespace gmean {

enum class Side { Left, Right };

/// Upper Cholesky factor R with R^T R = a.
template <typename Scalar>
UpperTriangular<Scalar> cholesky(const SpdMatrix<Scalar>& a) {
  return UpperTriangular<Scalar>(a.cholesky_upper());
}

/// Cholesky of a raw symmetric matrix; positivity failures throw.
template <typename Scalar>
UpperTriangular<Scalar> cholesky(const DenseMatrix<Scalar>& a) {
  return cholesky(SpdMatrix<Scalar>(a));
}

/// Eigendecomposition of a symmetric matrix, eigenvalues ascending.
template <typename Scalar>
EigDecomposition<Scalar> sym_eig(const DenseMatrix<Scalar>& a) {
  if (a.rows() != a.cols() || a.rows() < 1)
    throw DimensionMismatch("sym_eig needs a square matrix");
  if (!is_numerically_symmetric(a)) throw NotSymmetric("sym_eig needs a symmetric matrix");
  Eigen::SelfAdjointEigenSolver<DenseMatrix<Scalar>> es(symmetrized(a));
  if (es.info() != Eigen::Success) throw NoConvergence("symmetric eigensolver did not converge");
  return {es.eigenvalues(), es.eigenvectors()};
}

/// Solve op(R) X = B (Side::Left) or X op(R) = B (Side::Right) with R upper
/// triangular and op(R) = R or R^T.
template <typename Scalar>
DenseMatrix<Scalar> solve_triangular(const UpperTriangular<Scalar>& r, const DenseMatrix<Scalar>& b,
                                     Side side, bool transposed) {
  const DenseMatrix<Scalar>& rm = r.matrix();
  for (Index i = 0; i < rm.rows(); ++i)
    if (rm(i, i) == Scalar(0)) throw SingularFactor("triangular solve hit a zero pivot");
  const Index need = side == Side::Left ? b.rows() : b.cols();
  if (need != rm.rows()) throw DimensionMismatch("triangular solve: size mismatch");
  auto tri = rm.template triangularView<Eigen::Upper>();
  auto tri_t = rm.transpose().template triangularView<Eigen::Lower>();
  // The right-sided cases solve the transposed left-sided system instead of
  // relying on Eigen's in-place right solves.
  DenseMatrix<Scalar> x;
  if (side == Side::Left) {
    if (transposed)
      x = tri_t.solve(b);
    else
      x = tri.solve(b);
  } else {
    DenseMatrix<Scalar> bt = b.transpose();
    if (transposed)
      x = tri.solve(bt).transpose();
    else
      x = tri_t.solve(bt).transpose();
  }
  return x;
}

/// Inverse of an SPD matrix via its Cholesky factorization, symmetrized.
template <typename Scalar>
SpdMatrix<Scalar> inverse_spd(const SpdMatrix<Scalar>& a) {
  const Index n = a.n();
  const DenseMatrix<Scalar> id = DenseMatrix<Scalar>::Identity(n, n);
  DenseMatrix<Scalar> rinv = solve_triangular(a.cholesky_upper(), id, Side::Left, false);
  return SpdMatrix<Scalar>(symmetrized(rinv * rinv.transpose()));
}

template <typename Scalar>
struct SingularValues {
  Scalar max;
  Scalar min;
};

/// Extreme singular values (sigma_max, sigma_min).
template <typename Scalar>
SingularValues<Scalar> svd_values(const DenseMatrix<Scalar>& m) {
  Eigen::JacobiSVD<DenseMatrix<Scalar>> svd(m);
  const auto& s = svd.singularValues();
  return {s(0), s(s.size() - 1)};
}

template <typename Scalar>
struct Svd {
  DenseMatrix<Scalar> u;
  DenseVector<Scalar> singular_values;  // descending
  DenseMatrix<Scalar> v;                // m = u * diag(singular_values) * v^T
};

/// Full singular value decomposition.
template <typename Scalar>
Svd<Scalar> svd(const DenseMatrix<Scalar>& m) {
  Eigen::JacobiSVD<DenseMatrix<Scalar>> s(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return {s.matrixU(), s.singularValues(), s.matrixV()};
}

/// Dominant eigenvalue magnitude by the power method with a Rayleigh-quotient
/// stopping test. Intended for matrices with a real dominant eigenvalue
/// (products of SPD matrices); a failure to settle signals clustered extremes.
template <typename Scalar>
Scalar spectral_radius(const DenseMatrix<Scalar>& m, Scalar tol = Scalar(1e-12), int maxit = 500) {
  if (m.rows() != m.cols() || m.rows() < 1)
    throw DimensionMismatch("spectral_radius needs a square matrix");
  if (!(tol > Scalar(0)) || maxit < 1) throw ParamOutOfRange("spectral_radius: bad tol or maxit");
  const Index n = m.rows();
  // Fixed-seed start vector: deterministic and almost surely not orthogonal
  // to the dominant eigenvector.
  std::mt19937 rng(0x9e3779b9u);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  DenseVector<Scalar> v(n);
  for (Index i = 0; i < n; ++i) v(i) = Scalar(unif(rng));
  v.normalize();
  Scalar theta_prev = std::numeric_limits<Scalar>::quiet_NaN();
  for (int it = 0; it < maxit; ++it) {
    DenseVector<Scalar> w = m * v;
    const Scalar theta = v.dot(w);
    const Scalar nw = w.norm();
    if (nw == Scalar(0)) return Scalar(0);  // nilpotent direction: radius 0 estimate
    v = w / nw;
    if (it > 0 && std::abs(theta - theta_prev) <= tol * std::abs(theta)) return std::abs(theta);
    theta_prev = theta;
  }
  throw NoConvergence("power method did not settle within maxit");
}

inline constexpr Index kKronDimLimit = 1024;  // matches the conditioning limit of n = 32

/// Kronecker product with the convention (I (x) P) vec(X) = vec(P X) and
/// (Q^T (x) I) vec(X) = vec(X Q) for column-stacked vec.
template <typename Scalar>
DenseMatrix<Scalar> kron(const DenseMatrix<Scalar>& a, const DenseMatrix<Scalar>& b) {
  if (a.rows() * b.rows() > kKronDimLimit || a.cols() * b.cols() > kKronDimLimit)
    throw SizeOverflow("kron result exceeds the configured dimension limit");
  DenseMatrix<Scalar> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

/// Column-stacking vectorization.
template <typename Scalar>
DenseVector<Scalar> vec(const DenseMatrix<Scalar>& m) {
  return Eigen::Map<const DenseVector<Scalar>>(m.data(), m.size());
}

template <typename Scalar>
DenseMatrix<Scalar> unvec(const DenseVector<Scalar>& v, Index rows, Index cols) {
  if (v.size() != rows * cols) throw DimensionMismatch("unvec: size mismatch");
  return Eigen::Map<const DenseMatrix<Scalar>>(v.data(), rows, cols);
}

/// Eigenvalues of a^{-1} b (all real and positive), ascending, computed from
/// the SPD-congruent form R_a^{-T} b R_a^{-1}.
template <typename Scalar>
DenseVector<Scalar> spd_pencil_eigenvalues(const SpdMatrix<Scalar>& a, const SpdMatrix<Scalar>& b) {
  if (a.n() != b.n()) throw DimensionMismatch("pencil eigenvalues: size mismatch");
  UpperTriangular<Scalar> ra(a.cholesky_upper());
  // W = R_a^{-T} b R_a^{-1}: solve R_a^T y = b, then w R_a = y.
  DenseMatrix<Scalar> y = solve_triangular(ra, b.matrix(), Side::Left, true);
  DenseMatrix<Scalar> w = solve_triangular(ra, y, Side::Right, false);
  return sym_eig(symmetrized(w)).values;
}

/// Two-norm condition number of an SPD matrix.
template <typename Scalar>
Scalar condition_2norm(const SpdMatrix<Scalar>& a) {
  DenseVector<Scalar> ev = sym_eig(a.matrix()).values;
  return ev(ev.size() - 1) / ev(0);
}

}  // namespace gmean
