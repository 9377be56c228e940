#pragma once

// Sensitivity of the mean map (A, B) -> A # B. The Frechet derivative in the
// vec basis is
//   vec(D) = (I (x) Z^{-1} + Z^{-1} (x) I)^{-1} vec(H)
//          + (I (x) Z     + Z     (x) I)^{-1} vec(K),
// with Z = (B A^{-1})^{1/2}; both Kronecker matrices use Z itself (not Z^T),
// valid through the similarity A Z^T A^{-1} = Z. The matrices are built and
// inverted densely at size n^2, so everything here is limited to small n.

#include <gmean/direct.hpp>
#include <gmean/linalg.hpp>
#include <gmean/types.hpp>

#include <cmath>
#include <utility>

namespace gmean {

template <typename Scalar>
struct FrechetRep {
  DenseMatrix<Scalar> z;   // (B A^{-1})^{1/2}, positive real spectrum
  DenseMatrix<Scalar> m1;  // (I (x) Z^{-1} + Z^{-1} (x) I)^{-1}
  DenseMatrix<Scalar> m2;  // (I (x) Z + Z (x) I)^{-1}
};

template <typename Scalar>
struct CondReport {
  Scalar kappa_abs = 0;  // ||[M1 M2]||_2
  Scalar kappa_rel = 0;  // kappa_abs * ||[A B]||_F / ||A # B||_F
  Scalar lower = 0;      // max(rho(Z), rho(Z^{-1})) / 2
  Scalar upper = 0;      // min(mu2(A), mu2(B)) * sqrt(rho(B^{-1}A) + rho(A^{-1}B)) / 2
  Scalar alpha = 1;      // suggested scaling of A
  Scalar beta = 1;       // suggested scaling of B, alpha * beta = 1
};

namespace detail {

// Z through the congruence W = R_A^{-T} B R_A^{-1}: Z = R_A^T W^{1/2} R_A^{-T}.
// Stable for ill-conditioned A where forming B A^{-1} directly is not.
template <typename Scalar>
DenseMatrix<Scalar> frechet_z(const SpdMatrix<Scalar>& a, const SpdMatrix<Scalar>& b) {
  const UpperTriangular<Scalar>& ra = a.cholesky_upper();
  DenseMatrix<Scalar> y = solve_triangular(ra, b.matrix(), Side::Left, true);
  DenseMatrix<Scalar> w = symmetrized(solve_triangular(ra, y, Side::Right, false));
  DenseMatrix<Scalar> wh = spd_power_eig(w, Scalar(0.5));
  DenseMatrix<Scalar> rhs = wh * ra.matrix();
  // Z = R_A^T W^{1/2} R_A^{-T} row by row: Z R_A^T = R_A^T W^{1/2}, i.e.
  // R_A Z^T = (R_A^T W^{1/2})^T = W^{1/2} R_A.
  return solve_triangular(ra, rhs, Side::Left, false).transpose();
}

template <typename Scalar>
DenseMatrix<Scalar> kron_pair_inverse(const DenseMatrix<Scalar>& z) {
  const Index n = z.rows();
  DenseMatrix<Scalar> id = DenseMatrix<Scalar>::Identity(n, n);
  DenseMatrix<Scalar> s = kron(id, z) + kron(z, id);
  Eigen::PartialPivLU<DenseMatrix<Scalar>> lu(s);
  DenseMatrix<Scalar> inv = lu.inverse();
  if (!inv.allFinite()) throw SingularFactor("conditioning: Kronecker system is singular");
  return inv;
}

}  // namespace detail

/// Explicit Frechet representation at (a, b). Sizes are limited by the
/// Kronecker dimension cap (n^2 <= kKronDimLimit, i.e. n <= 32 by default).
template <typename Scalar>
FrechetRep<Scalar> frechet_rep(const SpdMatrix<Scalar>& a, const SpdMatrix<Scalar>& b) {
  if (a.n() != b.n()) throw DimensionMismatch("frechet_rep: size mismatch");
  FrechetRep<Scalar> rep;
  rep.z = detail::frechet_z(a, b);
  Eigen::PartialPivLU<DenseMatrix<Scalar>> lu(rep.z);
  DenseMatrix<Scalar> zinv = lu.inverse();
  if (!zinv.allFinite()) throw SingularFactor("frechet_rep: Z is singular");
  rep.m1 = detail::kron_pair_inverse(zinv);
  rep.m2 = detail::kron_pair_inverse(rep.z);
  return rep;
}

/// Directional derivative D of the mean map at (a, b) along (h, k).
template <typename Scalar>
DenseMatrix<Scalar> frechet_apply(const FrechetRep<Scalar>& rep, const DenseMatrix<Scalar>& h,
                                  const DenseMatrix<Scalar>& k) {
  const Index n = rep.z.rows();
  if (h.rows() != n || h.cols() != n || k.rows() != n || k.cols() != n)
    throw DimensionMismatch("frechet_apply: direction size mismatch");
  DenseVector<Scalar> d = rep.m1 * vec(h) + rep.m2 * vec(k);
  return unvec(d, n, n);
}

template <typename Scalar>
DenseMatrix<Scalar> frechet_apply(const SpdMatrix<Scalar>& a, const SpdMatrix<Scalar>& b,
                                  const DenseMatrix<Scalar>& h, const DenseMatrix<Scalar>& k) {
  return frechet_apply(frechet_rep(a, b), h, k);
}

/// Eigenvalue bounds on the condition number that avoid the n^2-sized
/// construction entirely: rho(Z) = sqrt(lambda_max), rho(Z^{-1}) =
/// 1/sqrt(lambda_min) over the pencil eigenvalues of A^{-1} B.
template <typename Scalar>
std::pair<Scalar, Scalar> cond_bounds(const SpdMatrix<Scalar>& a, const SpdMatrix<Scalar>& b) {
  DenseVector<Scalar> lam = spd_pencil_eigenvalues(a, b);
  const Scalar rho_z = std::sqrt(lam(lam.size() - 1));
  const Scalar rho_zi = Scalar(1) / std::sqrt(lam(0));
  const Scalar lower = std::max(rho_z, rho_zi) / Scalar(2);
  const Scalar mu = std::min(condition_2norm(a), condition_2norm(b));
  const Scalar upper =
      mu * std::sqrt(lam(lam.size() - 1) + Scalar(1) / lam(0)) / Scalar(2);
  return {lower, upper};
}

/// Pre-scaling (alpha A, beta B) balancing rho(Z) against rho(Z^{-1}), with
/// alpha beta = 1: alpha = (lambda_min lambda_max)^{1/4} over A^{-1} B. The
/// extreme eigenvalues are estimated by power iterations on B^{-1}A and
/// A^{-1}B, falling back to the exact pencil eigenvalues when the power
/// method does not settle.
template <typename Scalar>
std::pair<Scalar, Scalar> optimal_scaling(const SpdMatrix<Scalar>& a, const SpdMatrix<Scalar>& b) {
  if (a.n() != b.n()) throw DimensionMismatch("optimal_scaling: size mismatch");
  Scalar lam_max, lam_min;
  try {
    Eigen::LLT<DenseMatrix<Scalar>> la(a.matrix()), lb(b.matrix());
    lam_max = spectral_radius<Scalar>(la.solve(b.matrix()));
    lam_min = Scalar(1) / spectral_radius<Scalar>(lb.solve(a.matrix()));
  } catch (const NoConvergence&) {
    DenseVector<Scalar> lam = spd_pencil_eigenvalues(a, b);
    lam_min = lam(0);
    lam_max = lam(lam.size() - 1);
  }
  const Scalar alpha = std::pow(lam_min * lam_max, Scalar(0.25));
  return {alpha, Scalar(1) / alpha};
}

/// Exact condition numbers from the dense Kronecker representation, plus the
/// eigenvalue bounds and the suggested balancing scaling.
/// kappa_abs = ||[M1 M2]||_2 via power iteration on M1 M1^T + M2 M2^T.
template <typename Scalar>
CondReport<Scalar> cond_exact(const SpdMatrix<Scalar>& a, const SpdMatrix<Scalar>& b) {
  FrechetRep<Scalar> rep = frechet_rep(a, b);
  DenseMatrix<Scalar> product = rep.m1 * rep.m1.transpose() + rep.m2 * rep.m2.transpose();
  Scalar lam_top;
  try {
    lam_top = spectral_radius<Scalar>(product);
  } catch (const NoConvergence&) {
    EigDecomposition<Scalar> eig = sym_eig(symmetrized(product));
    lam_top = eig.values(eig.values.size() - 1);
  }
  CondReport<Scalar> report;
  report.kappa_abs = std::sqrt(lam_top);
  const DenseMatrix<Scalar> g = gmean_cholesky_schur(a, b).matrix();
  const Scalar pair_norm = std::sqrt(a.matrix().squaredNorm() + b.matrix().squaredNorm());
  report.kappa_rel = report.kappa_abs * pair_norm / g.norm();
  std::tie(report.lower, report.upper) = cond_bounds(a, b);
  std::tie(report.alpha, report.beta) = optimal_scaling(a, b);
  return report;
}

}  // namespace gmean
