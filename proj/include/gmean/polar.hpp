#pragma once

// Geometric mean through the orthogonal polar factor: with A = R_A^T R_A and
// B = R_B^T R_B, the polar factor U of R_B R_A^{-1} gives
// A # B = R_B^T U R_A. The polar factor itself comes from a scaled Newton
// iteration or from an SVD.

#include <gmean/iterations.hpp>
#include <gmean/linalg.hpp>
#include <gmean/types.hpp>

#include <cmath>
#include <limits>
#include <optional>
#include <vector>

namespace gmean {

enum class PolarMethod { Newton, Svd };
// Per-step Newton multipliers: Optimal uses the extreme singular values,
// gamma = (sigma_1 sigma_n)^{-1/2}; Approximate the Frobenius proxy
// gamma = (||Z^{-1}||_F / ||Z||_F)^{1/2}.
enum class PolarScaling { None, Optimal, Approximate };

template <typename Scalar>
struct PolarConfig {
  PolarMethod method = PolarMethod::Newton;
  PolarScaling scaling = PolarScaling::Optimal;
  Scalar tol = Scalar(1e-14);
  int maxit = 60;
  bool record_iterates = false;

  void validate() const {
    if (!(tol > Scalar(0) && tol < Scalar(1))) throw ParamOutOfRange("polar tol must be in (0, 1)");
    if (maxit < 1 || maxit > 1000000) throw ParamOutOfRange("polar maxit must be in [1, 1e6]");
  }
};

template <typename Scalar>
struct PolarFactorResult {
  DenseMatrix<Scalar> u;
  std::vector<IterStep<Scalar>> steps;
  // Z_0, Z_1, ... when record_iterates is set (Z_0 is the input matrix).
  std::vector<DenseMatrix<Scalar>> iterates;
};

/// Orthogonal polar factor U of a square nonsingular M = U H (H symmetric
/// positive definite). Newton:
///   Z_0 = M,  Z_{k+1} = (gamma_k Z_k + (gamma_k Z_k)^{-T})/2,
/// stopping when ||Z_{k+1} - Z_k||_F <= tol ||Z_{k+1}||_F. The SVD route
/// returns Q_1 Q_2^T directly. Either way the result must satisfy
/// ||U^T U - I||_F <= 10 n tol or NoConvergence is thrown.
template <typename Scalar>
PolarFactorResult<Scalar> polar_factor(const DenseMatrix<Scalar>& m, const PolarConfig<Scalar>& cfg = {}) {
  cfg.validate();
  if (m.rows() != m.cols() || m.rows() == 0) throw DimensionMismatch("polar_factor needs a square matrix");
  if (!m.allFinite()) throw InvalidMatrix("polar_factor: input has non-finite entries");
  const Index n = m.rows();
  detail::StepClock clock;
  PolarFactorResult<Scalar> out;

  if (cfg.method == PolarMethod::Svd) {
    Svd<Scalar> s = svd(m);
    if (s.singular_values(s.singular_values.size() - 1) <= Scalar(0)) throw SingularFactor("polar_factor: singular input");
    out.u = s.u * s.v.transpose();
    IterStep<Scalar> step;
    step.k = 0;
    step.gamma = Scalar(1);
    step.seconds = clock.seconds();
    out.steps.push_back(step);
    if (cfg.record_iterates) out.iterates.push_back(out.u);
  } else {
    detail::StagnationGuard<Scalar> guard;
    DenseMatrix<Scalar> z = m, z_prev;
    bool converged = false;
    for (int k = 0;; ++k) {
      IterStep<Scalar> step;
      step.k = k;
      if (k > 0) step.rel_update = detail::rel_diff(z, z_prev);
      step.seconds = clock.seconds();
      if (cfg.record_iterates) out.iterates.push_back(z);
      if (k > 0 && (step.rel_update <= cfg.tol || guard.stalled(step.rel_update))) {
        out.steps.push_back(step);
        converged = true;
        break;
      }
      if (k == cfg.maxit) {
        out.steps.push_back(step);
        break;
      }
      Eigen::PartialPivLU<DenseMatrix<Scalar>> lu(z);
      DenseMatrix<Scalar> zinv = lu.inverse();
      if (!zinv.allFinite()) throw SingularFactor("polar_factor: iterate not invertible");
      Scalar gamma = Scalar(1);
      if (cfg.scaling == PolarScaling::Optimal) {
        SingularValues<Scalar> sv = svd_values(z);
        if (sv.min <= Scalar(0)) throw SingularFactor("polar_factor: singular input");
        gamma = Scalar(1) / std::sqrt(sv.max * sv.min);
      } else if (cfg.scaling == PolarScaling::Approximate) {
        gamma = std::sqrt(zinv.norm() / z.norm());
      }
      step.gamma = gamma;
      out.steps.push_back(step);
      z_prev = z;
      z = (gamma * z + zinv.transpose() / gamma) / Scalar(2);
    }
    if (!converged) throw NoConvergence("polar_factor: Newton iteration did not settle");
    out.u = z;
  }

  const Scalar orth = (out.u.transpose() * out.u - DenseMatrix<Scalar>::Identity(n, n)).norm();
  if (!(orth <= Scalar(10) * Scalar(n) * cfg.tol))
    throw NoConvergence("polar_factor: result failed the orthogonality check");
  return out;
}

template <typename Scalar>
struct GmeanPolarResult {
  SpdMatrix<Scalar> value;
  // Per-step rows over the Newton iterates Z_k; rel_error measures the
  // intermediate mean R_B^T Z_k R_A against the supplied reference.
  std::vector<IterStep<Scalar>> steps;
  bool swapped = false;
};

/// Geometric mean via the polar factor, with per-step intermediate means
/// exposed for tracing. Arguments are swapped first when cond(a) > cond(b)
/// so that the inverted Cholesky factor belongs to the better-conditioned
/// matrix (the mean is symmetric in its arguments).
template <typename Scalar>
GmeanPolarResult<Scalar> gmean_polar_detailed(
    const SpdMatrix<Scalar>& a, const SpdMatrix<Scalar>& b, PolarConfig<Scalar> cfg = {},
    const std::optional<DenseMatrix<Scalar>>& reference = std::nullopt) {
  if (a.n() != b.n()) throw DimensionMismatch("gmean_polar: size mismatch");
  SwapResult<Scalar> s = condition_swap(a, b);
  const UpperTriangular<Scalar> ra = s.a.cholesky_upper();
  const UpperTriangular<Scalar> rb = s.b.cholesky_upper();
  // M = R_B R_A^{-1} from the right triangular solve M R_A = R_B.
  DenseMatrix<Scalar> m = solve_triangular(ra, rb.matrix(), Side::Right, false);
  cfg.record_iterates = true;
  PolarFactorResult<Scalar> pf = polar_factor(m, cfg);

  GmeanPolarResult<Scalar> out{
      SpdMatrix<Scalar>(symmetrized(rb.matrix().transpose() * pf.u * ra.matrix())),
      {},
      s.swapped};
  out.steps = pf.steps;
  for (std::size_t i = 0; i < out.steps.size() && i < pf.iterates.size(); ++i) {
    DenseMatrix<Scalar> mean_i = symmetrized(rb.matrix().transpose() * pf.iterates[i] * ra.matrix());
    out.steps[i].rel_error = detail::rel_error_vs(reference, mean_i);
  }
  return out;
}

/// Geometric mean via the polar factor of R_B R_A^{-1}.
template <typename Scalar>
SpdMatrix<Scalar> gmean_polar(const SpdMatrix<Scalar>& a, const SpdMatrix<Scalar>& b,
                              const PolarConfig<Scalar>& cfg = {}) {
  return gmean_polar_detailed(a, b, cfg).value;
}

/// Certificate from the characterization of the mean: for A = C^T C and
/// B = D^T D and an orthogonal U, the product C^T U D equals A # B exactly
/// when it is symmetric positive definite. Returns whether it is, to a
/// relative symmetry tolerance.
template <typename Scalar>
bool verify_polar_char(const DenseMatrix<Scalar>& c, const DenseMatrix<Scalar>& d,
                       const DenseMatrix<Scalar>& u, Scalar tol = Scalar(1e-8)) {
  if (c.rows() != c.cols() || d.rows() != d.cols() || u.rows() != u.cols() || c.rows() != d.rows() ||
      c.rows() != u.rows())
    throw DimensionMismatch("verify_polar_char needs square matrices of one size");
  DenseMatrix<Scalar> g = c.transpose() * u * d;
  const Scalar asym = (g - g.transpose()).norm();
  if (!(asym <= tol * g.norm())) return false;
  Eigen::LLT<DenseMatrix<Scalar>> llt(symmetrized(g));
  return llt.info() == Eigen::Success;
}

}  // namespace gmean
