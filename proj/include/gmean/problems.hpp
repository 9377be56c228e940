#pragma once

// Benchmark problem families with known exact means. Each generator returns
// a named case; when an exact mean is attached it is re-validated through the
// fixed-point residual || G A^{-1} G - B || / || B || before anything
// downstream is allowed to measure errors against it.

#include <gmean/conditioning.hpp>
#include <gmean/direct.hpp>
#include <gmean/iterations.hpp>
#include <gmean/types.hpp>

#include <cmath>
#include <map>
#include <optional>
#include <sstream>
#include <string>

namespace gmean {

template <typename Scalar>
struct ProblemCase {
  std::string name;
  SpdMatrix<Scalar> a;
  SpdMatrix<Scalar> b;
  std::optional<SpdMatrix<Scalar>> exact;
  std::map<std::string, Scalar> meta;
};

template <typename Scalar>
DenseMatrix<Scalar> hilbert_matrix(Index n) {
  if (n < 1) throw ParamOutOfRange("hilbert_matrix needs n >= 1");
  DenseMatrix<Scalar> m(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) m(i, j) = Scalar(1) / Scalar(i + j + 1);
  return m;
}

template <typename Scalar>
Scalar riccati_residual(const SpdMatrix<Scalar>& a, const SpdMatrix<Scalar>& b,
                        const DenseMatrix<Scalar>& g) {
  Eigen::LLT<DenseMatrix<Scalar>> llt(a.matrix());
  DenseMatrix<Scalar> r = g * llt.solve(g) - b.matrix();
  return r.norm() / b.matrix().norm();
}

/// Rejects a case whose attached exact mean fails || G A^{-1} G - B ||.
/// The tolerance scales with a cheap overestimate of the relative condition
/// number, so ill-conditioned congruence cases are not rejected for noise
/// their own conditioning guarantees, and with sqrt(eps) of the scalar so the
/// same generators validate in float and long double.
template <typename Scalar>
void check_exact_mean(const ProblemCase<Scalar>& c) {
  if (!c.exact) return;
  const Scalar upper = cond_bounds(c.a, c.b).second;
  const Scalar pair_norm =
      std::sqrt(c.a.matrix().squaredNorm() + c.b.matrix().squaredNorm());
  const Scalar kappa_proxy = std::max(Scalar(1), upper * pair_norm / c.exact->matrix().norm());
  const Scalar res = riccati_residual(c.a, c.b, c.exact->matrix());
  if (!(res <= std::sqrt(std::numeric_limits<Scalar>::epsilon()) * kappa_proxy))
    throw InvalidMatrix("problem case '" + c.name + "' has an exact mean failing its residual check");
}

namespace detail {

template <typename Scalar>
std::string format_param(Scalar v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace detail

/// Fixed 2x2 family: a = [[2,1],[1,2]], b = [[x,1],[1,2]] with exact mean
/// [[(1+sqrt(6x-3))/2, 1],[1, 2]]. The eigenvalues of A^{-1}B are 1 and
/// (2x-1)/3, so x tunes the difficulty knob directly.
template <typename Scalar>
ProblemCase<Scalar> gen_test1(Scalar x) {
  if (!(x > Scalar(0.5))) throw ParamOutOfRange("gen_test1 needs x > 1/2");
  DenseMatrix<Scalar> a(2, 2), b(2, 2), g(2, 2);
  a << Scalar(2), Scalar(1), Scalar(1), Scalar(2);
  b << x, Scalar(1), Scalar(1), Scalar(2);
  g << (Scalar(1) + std::sqrt(Scalar(6) * x - Scalar(3))) / Scalar(2), Scalar(1), Scalar(1), Scalar(2);
  ProblemCase<Scalar> c{"test1-x" + detail::format_param(x), SpdMatrix<Scalar>(a),
                        SpdMatrix<Scalar>(b), SpdMatrix<Scalar>(g), {}};
  c.meta["x"] = x;
  c.meta["pencil_ratio"] = (Scalar(2) * x - Scalar(1)) / Scalar(3);
  check_exact_mean(c);
  return c;
}

/// Hilbert congruence family: a = M M^T, b = M D M^T with M = Hilbert(n) and
/// D diagonal linearly spaced on [1, t]; the exact mean is M D^{1/2} M^T.
/// Growing t makes the pair progressively ill conditioned.
template <typename Scalar>
ProblemCase<Scalar> gen_test2(Index n, Scalar t) {
  if (n < 2) throw ParamOutOfRange("gen_test2 needs n >= 2");
  if (!(t >= Scalar(1))) throw ParamOutOfRange("gen_test2 needs t >= 1");
  DenseMatrix<Scalar> m = hilbert_matrix<Scalar>(n);
  DenseVector<Scalar> d(n), dh(n);
  for (Index i = 0; i < n; ++i) {
    d(i) = Scalar(1) + (t - Scalar(1)) * Scalar(i) / Scalar(n - 1);
    dh(i) = std::sqrt(d(i));
  }
  DenseMatrix<Scalar> a = symmetrized(m * m.transpose());
  DenseMatrix<Scalar> b = symmetrized(m * d.asDiagonal() * m.transpose());
  DenseMatrix<Scalar> g = symmetrized(m * dh.asDiagonal() * m.transpose());
  ProblemCase<Scalar> c{
      "test2-n" + detail::format_param(Scalar(n)) + "-t" + detail::format_param(t),
      SpdMatrix<Scalar>(a), SpdMatrix<Scalar>(b), SpdMatrix<Scalar>(g), {}};
  c.meta["n"] = Scalar(n);
  c.meta["t"] = t;
  check_exact_mean(c);
  return c;
}

/// Same congruence construction with D logarithmically spaced between 1 and
/// 10^{-t}. The meta map records the predicted instability radius
/// 10^{t/2}; values above kInstabilityThreshold mark cases where the
/// one-sequence averaging variants diverge while the coupled form does not.
template <typename Scalar>
ProblemCase<Scalar> gen_test3(Index n, Scalar t) {
  if (n < 2) throw ParamOutOfRange("gen_test3 needs n >= 2");
  if (!(t >= Scalar(0))) throw ParamOutOfRange("gen_test3 needs t >= 0");
  DenseMatrix<Scalar> m = hilbert_matrix<Scalar>(n);
  DenseVector<Scalar> d(n), dh(n);
  for (Index i = 0; i < n; ++i) {
    d(i) = std::pow(Scalar(10), -t * Scalar(i) / Scalar(n - 1));
    dh(i) = std::sqrt(d(i));
  }
  DenseMatrix<Scalar> a = symmetrized(m * m.transpose());
  DenseMatrix<Scalar> b = symmetrized(m * d.asDiagonal() * m.transpose());
  DenseMatrix<Scalar> g = symmetrized(m * dh.asDiagonal() * m.transpose());
  ProblemCase<Scalar> c{
      "test3-n" + detail::format_param(Scalar(n)) + "-t" + detail::format_param(t),
      SpdMatrix<Scalar>(a), SpdMatrix<Scalar>(b), SpdMatrix<Scalar>(g), {}};
  c.meta["n"] = Scalar(n);
  c.meta["t"] = t;
  c.meta["instability_radius"] = instability_radius(c.a, c.b);
  check_exact_mean(c);
  return c;
}

}  // namespace gmean
