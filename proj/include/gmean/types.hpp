#pragma once

// Core dense types and the error taxonomy shared by the whole library.
// Everything is templated on the scalar type; double is the primary
// instantiation.

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

namespace gmean {

using Index = Eigen::Index;

template <typename Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using DenseVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class NotPositiveDefinite : public Error {
 public:
  using Error::Error;
};

class NotSymmetric : public Error {
 public:
  using Error::Error;
};

class NoConvergence : public Error {
 public:
  using Error::Error;
};

class SingularFactor : public Error {
 public:
  using Error::Error;
};

class SizeOverflow : public Error {
 public:
  using Error::Error;
};

class ModulusOutOfRange : public Error {
 public:
  using Error::Error;
};

class ParamOutOfRange : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class UnknownAlgorithm : public Error {
 public:
  using Error::Error;
};

class InvalidMatrix : public Error {
 public:
  using Error::Error;
};

/// (m + m^T)/2, evaluated.
template <typename Derived>
DenseMatrix<typename Derived::Scalar> symmetrized(const Eigen::MatrixBase<Derived>& m) {
  return (m + m.transpose()) / typename Derived::Scalar(2);
}

/// Symmetry to working accuracy: max |a_ij - a_ji| <= 8 eps max |a_ij|.
template <typename Derived>
bool is_numerically_symmetric(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  if (m.rows() != m.cols()) return false;
  const Scalar scale = m.cwiseAbs().maxCoeff();
  const Scalar skew = (m - m.transpose().eval()).cwiseAbs().maxCoeff();
  return skew <= Scalar(8) * std::numeric_limits<Scalar>::epsilon() * scale;
}

/// Upper-triangular factor with positive diagonal and an exactly-zero
/// strict lower part.
template <typename Scalar>
class UpperTriangular {
 public:
  explicit UpperTriangular(DenseMatrix<Scalar> r) : r_(std::move(r)) {
    if (r_.rows() != r_.cols() || r_.rows() < 1)
      throw DimensionMismatch("triangular factor must be square and non-empty");
    if (!r_.allFinite()) throw InvalidMatrix("triangular factor has non-finite entries");
    for (Index j = 0; j < r_.cols(); ++j)
      for (Index i = j + 1; i < r_.rows(); ++i)
        if (r_(i, j) != Scalar(0))
          throw InvalidMatrix("strict lower part of a triangular factor must be zero");
    for (Index i = 0; i < r_.rows(); ++i)
      if (!(r_(i, i) > Scalar(0)))
        throw SingularFactor("triangular factor needs a positive diagonal");
  }

  Index n() const { return r_.rows(); }
  const DenseMatrix<Scalar>& matrix() const { return r_; }

 private:
  DenseMatrix<Scalar> r_;
};

/// Symmetric positive definite matrix. Construction checks symmetry to
/// working accuracy, symmetrizes exactly, and proves positivity by running
/// a Cholesky factorization; the upper factor is kept for reuse.
template <typename Scalar>
class SpdMatrix {
 public:
  explicit SpdMatrix(const DenseMatrix<Scalar>& m) : m_(checked(m)), chol_upper_(factor(m_)) {}

  Index n() const { return m_.rows(); }
  const DenseMatrix<Scalar>& matrix() const { return m_; }

  /// Upper Cholesky factor R with R^T R = matrix().
  const UpperTriangular<Scalar>& cholesky_upper() const { return chol_upper_; }

 private:
  static DenseMatrix<Scalar> checked(const DenseMatrix<Scalar>& m) {
    if (m.rows() != m.cols() || m.rows() < 1)
      throw DimensionMismatch("spd matrix must be square and non-empty");
    if (!m.allFinite()) throw InvalidMatrix("spd matrix has non-finite entries");
    if (!is_numerically_symmetric(m)) throw NotSymmetric("matrix is not symmetric to working accuracy");
    return symmetrized(m);
  }

  static UpperTriangular<Scalar> factor(const DenseMatrix<Scalar>& m) {
    Eigen::LLT<DenseMatrix<Scalar>> llt(m);
    if (llt.info() != Eigen::Success)
      throw NotPositiveDefinite("Cholesky factorization failed: matrix is not positive definite");
    return UpperTriangular<Scalar>(llt.matrixU());
  }

  DenseMatrix<Scalar> m_;
  UpperTriangular<Scalar> chol_upper_;
};

/// Symmetric eigendecomposition a = vectors * diag(values) * vectors^T,
/// eigenvalues in ascending order.
template <typename Scalar>
struct EigDecomposition {
  DenseVector<Scalar> values;
  DenseMatrix<Scalar> vectors;
};

/// Position t in [0, 1] along the geodesic from the first matrix (t = 0)
/// to the second (t = 1).
template <typename Scalar = double>
class GeodesicParameter {
 public:
  GeodesicParameter() : t_(Scalar(1) / Scalar(2)) {}
  explicit GeodesicParameter(Scalar t) : t_(t) {
    if (!(t >= Scalar(0) && t <= Scalar(1)))
      throw ParamOutOfRange("geodesic parameter must lie in [0, 1]");
  }
  Scalar value() const { return t_; }

 private:
  Scalar t_;
};

}  // namespace gmean
