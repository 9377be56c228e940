#pragma once

// Quadratically convergent fixed-point iterations for the matrix geometric
// mean: the coupled arithmetic/harmonic averaging pair, its two uncoupled
// one-sequence variants, the three-terms recurrence, the sign-based coupled
// iteration with determinantal or spectral scaling, and a cyclic-reduction
// scheme. Scalar helpers give the closed-form rational iterates used by the
// equivalence tests.

#include <gmean/linalg.hpp>
#include <gmean/types.hpp>

#include <chrono>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

namespace gmean {

enum class Scaling { None, Determinantal, Spectral };
enum class IterStatus { Converged, NoConvergence, Diverged };
enum class StartMatrix { A, B };
// One-sequence variants of the averaging pair: the arithmetic form updates
// X <- (X + A X^{-1} B)/2, the harmonic form X <- 2 (X^{-1} + B^{-1} X A^{-1})^{-1}.
enum class UncoupledForm { Arithmetic, Harmonic };

template <typename Scalar>
struct IterConfig {
  Scalar tol = Scalar(1e-14);
  int maxit = 100;
  Scaling scaling = Scaling::None;
  bool record_iterates = false;
  // When set, every step records its relative error against this matrix.
  std::optional<DenseMatrix<Scalar>> reference;

  void validate() const {
    if (!(tol > Scalar(0) && tol < Scalar(1))) throw ParamOutOfRange("iteration tol must be in (0, 1)");
    if (maxit < 1 || maxit > 1000000) throw ParamOutOfRange("iteration maxit must be in [1, 1e6]");
  }
};

template <typename Scalar>
struct IterStep {
  int k = 0;
  Scalar gamma = std::numeric_limits<Scalar>::quiet_NaN();
  Scalar rel_update = std::numeric_limits<Scalar>::quiet_NaN();
  Scalar coupling_gap = std::numeric_limits<Scalar>::quiet_NaN();
  Scalar rel_error = std::numeric_limits<Scalar>::quiet_NaN();
  double seconds = 0.0;  // wall clock since iteration start
};

template <typename Scalar>
struct IterTrace {
  std::vector<IterStep<Scalar>> steps;
  IterStatus status = IterStatus::NoConvergence;
  // Filled only when IterConfig::record_iterates is set.
  std::vector<DenseMatrix<Scalar>> primary;
  std::vector<DenseMatrix<Scalar>> secondary;
};

template <typename Scalar>
struct IterResult {
  DenseMatrix<Scalar> value;  // symmetrized final iterate
  IterTrace<Scalar> trace;
};

template <typename Scalar>
struct ConvergenceBound {
  Scalar sigma;
  Scalar rho;
};

namespace detail {

template <typename Scalar>
Scalar rel_diff(const DenseMatrix<Scalar>& x, const DenseMatrix<Scalar>& base) {
  const Scalar nb = base.norm();
  if (nb == Scalar(0)) return x.norm() == Scalar(0) ? Scalar(0) : std::numeric_limits<Scalar>::infinity();
  return (x - base).norm() / nb;
}

template <typename Scalar>
Scalar rel_error_vs(const std::optional<DenseMatrix<Scalar>>& ref, const DenseMatrix<Scalar>& x) {
  if (!ref) return std::numeric_limits<Scalar>::quiet_NaN();
  return (x - *ref).norm() / ref->norm();
}

template <typename Scalar>
DenseMatrix<Scalar> spd_inverse_raw(const DenseMatrix<Scalar>& m) {
  Eigen::LLT<DenseMatrix<Scalar>> llt(symmetrized(m));
  if (llt.info() != Eigen::Success)
    throw NotPositiveDefinite("iterate lost positive definiteness");
  return symmetrized(llt.solve(DenseMatrix<Scalar>::Identity(m.rows(), m.cols())));
}

template <typename Scalar>
Scalar log_abs_det(const DenseMatrix<Scalar>& m) {
  return m.householderQr().logAbsDeterminant();
}

class StepClock {
 public:
  StepClock() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

// Stops once the relative update stays below machine epsilon twice in a row:
// the iterate has reached its floor and cannot improve.
template <typename Scalar>
class StagnationGuard {
 public:
  bool stalled(Scalar rel_update) {
    const bool tiny = rel_update < std::numeric_limits<Scalar>::epsilon();
    const bool out = tiny && prev_tiny_;
    prev_tiny_ = tiny;
    return out;
  }

 private:
  bool prev_tiny_ = false;
};

}  // namespace detail

/// Coupled arithmetic/harmonic averaging:
///   A_{k+1} = (A_k + B_k)/2,  B_{k+1} = 2 (A_k^{-1} + B_k^{-1})^{-1},
/// both sequences converging to A # B from opposite sides. Stops when the
/// coupling gap ||A_k - B_k||_F / ||A_k||_F falls below tol and returns the
/// midpoint (A_k + B_k)/2 of the final bracket. The scaling setting is not
/// used: this iteration runs unscaled.
template <typename Scalar>
IterResult<Scalar> averaging_coupled(const SpdMatrix<Scalar>& a, const SpdMatrix<Scalar>& b,
                                     const IterConfig<Scalar>& cfg = {}) {
  cfg.validate();
  if (a.n() != b.n()) throw DimensionMismatch("averaging_coupled: size mismatch");
  detail::StepClock clock;
  detail::StagnationGuard<Scalar> guard;
  IterResult<Scalar> out;
  DenseMatrix<Scalar> x = a.matrix(), y = b.matrix(), x_prev;
  for (int k = 0;; ++k) {
    IterStep<Scalar> step;
    step.k = k;
    step.gamma = Scalar(1);
    step.coupling_gap = detail::rel_diff(y, x);
    if (k > 0) step.rel_update = detail::rel_diff(x, x_prev);
    step.rel_error = detail::rel_error_vs(cfg.reference, x);
    step.seconds = clock.seconds();
    out.trace.steps.push_back(step);
    if (cfg.record_iterates) {
      out.trace.primary.push_back(x);
      out.trace.secondary.push_back(y);
    }
    const bool done = step.coupling_gap <= cfg.tol || (k > 0 && guard.stalled(step.rel_update));
    if (done) {
      out.trace.status = IterStatus::Converged;
      break;
    }
    if (k == cfg.maxit) {
      out.trace.status = IterStatus::NoConvergence;
      break;
    }
    x_prev = x;
    DenseMatrix<Scalar> xn = symmetrized((x + y) / Scalar(2));
    DenseMatrix<Scalar> yn =
        Scalar(2) * detail::spd_inverse_raw<Scalar>(detail::spd_inverse_raw(x) + detail::spd_inverse_raw(y));
    x = xn;
    y = symmetrized(yn);
  }
  out.value = symmetrized((x + y) / Scalar(2));
  return out;
}

/// One-sequence averaging variant. Deliberately applies the printed update
/// without per-step symmetrization: when the extreme eigenvalue ratio of
/// (B A^{-1})^{1/2} exceeds 3 the fixed point is repelling for the one-term
/// recurrence and the trace must show the error growing again after its
/// minimum. Divergence detection arms once the relative update has decayed
/// below a tenth of its first value and fires when the update later exceeds
/// 200x its running minimum. The attainable floor scales with the operand
/// conditioning, so both levels are relative: on the ill-conditioned
/// congruence families, stable runs wobble inside a ~25x band around their
/// update floor while unstable ones regrow past 1e4x, so the factor
/// separates the two regimes with an order of magnitude of margin each way.
template <typename Scalar>
IterResult<Scalar> averaging_uncoupled(const SpdMatrix<Scalar>& a, const SpdMatrix<Scalar>& b,
                                       const IterConfig<Scalar>& cfg = {},
                                       StartMatrix start = StartMatrix::A,
                                       UncoupledForm form = UncoupledForm::Arithmetic) {
  cfg.validate();
  if (a.n() != b.n()) throw DimensionMismatch("averaging_uncoupled: size mismatch");
  detail::StepClock clock;
  detail::StagnationGuard<Scalar> guard;
  IterResult<Scalar> out;
  const DenseMatrix<Scalar> ainv = inverse_spd(a).matrix();
  const DenseMatrix<Scalar> binv = inverse_spd(b).matrix();
  DenseMatrix<Scalar> x = (start == StartMatrix::A) ? a.matrix() : b.matrix();
  DenseMatrix<Scalar> x_prev;
  Scalar arm_level = std::numeric_limits<Scalar>::quiet_NaN();
  Scalar min_update = std::numeric_limits<Scalar>::infinity();
  bool armed = false;
  for (int k = 0;; ++k) {
    IterStep<Scalar> step;
    step.k = k;
    step.gamma = Scalar(1);
    if (k > 0) step.rel_update = detail::rel_diff(x, x_prev);
    step.rel_error = detail::rel_error_vs(cfg.reference, x);
    step.seconds = clock.seconds();
    out.trace.steps.push_back(step);
    if (cfg.record_iterates) out.trace.primary.push_back(x);
    if (k > 0 && !x.allFinite()) {
      out.trace.status = IterStatus::Diverged;
      x = x_prev;
      break;
    }
    if (k > 0 && (step.rel_update <= cfg.tol || guard.stalled(step.rel_update))) {
      out.trace.status = IterStatus::Converged;
      break;
    }
    if (k == 1) arm_level = step.rel_update / Scalar(10);
    if (k > 1) {
      if (step.rel_update < arm_level) armed = true;
      if (armed) {
        min_update = std::min(min_update, step.rel_update);
        if (step.rel_update > Scalar(200) * min_update) {
          out.trace.status = IterStatus::Diverged;
          break;
        }
      }
    }
    if (k == cfg.maxit) {
      out.trace.status = IterStatus::NoConvergence;
      break;
    }
    x_prev = x;
    Eigen::PartialPivLU<DenseMatrix<Scalar>> lu(x);
    DenseMatrix<Scalar> xinv = lu.inverse();
    if (form == UncoupledForm::Arithmetic) {
      x = (x + a.matrix() * xinv * b.matrix()) / Scalar(2);
    } else {
      DenseMatrix<Scalar> s = xinv + binv * x * ainv;
      x = Scalar(2) * Eigen::PartialPivLU<DenseMatrix<Scalar>>(s).inverse();
    }
  }
  out.value = symmetrized(x);
  return out;
}

/// Three-terms recurrence equivalent to the averaging A-sequence:
///   A_0 = A,  A_1 = (A + B)/2,
///   A_{k+2} = (A_{k+1} + 2 A_k - A_k A_{k+1}^{-1} A_k)/2.
/// Determinantal scaling balances the determinants of the eliminated pair
/// before each average. With gamma_k = (det(A # B) / det A_k)^(1/n) the
/// first step becomes A_1 = (gamma_0 A + B / gamma_0)/2 and the general one
///   A_{k+2} = (gamma_{k+1}/2) (A_{k+1} + (2 gamma_k / gamma_{k+1}^2) A_k
///                              - (gamma_k / gamma_{k+1})^2 A_k A_{k+1}^{-1} A_k),
/// which reproduces the determinant-scaled coupled sequence exactly; folding
/// the gammas into a single factor would shift the limit off the mean. Each
/// row records the gamma of its own iterate. Spectral scaling is not defined
/// for this recurrence.
template <typename Scalar>
IterResult<Scalar> three_terms(const SpdMatrix<Scalar>& a, const SpdMatrix<Scalar>& b,
                               const IterConfig<Scalar>& cfg = {}) {
  cfg.validate();
  if (a.n() != b.n()) throw DimensionMismatch("three_terms: size mismatch");
  if (cfg.scaling == Scaling::Spectral)
    throw ParamOutOfRange("three_terms supports scaling none or determinantal");
  const bool scaled = cfg.scaling == Scaling::Determinantal;
  const Index n = a.n();
  const Scalar log_dab = detail::log_abs_det(a.matrix()) + detail::log_abs_det(b.matrix());
  auto gamma_of = [&](const DenseMatrix<Scalar>& m) -> Scalar {
    if (!scaled) return Scalar(1);
    return std::exp(-(Scalar(2) * detail::log_abs_det(m) - log_dab) / Scalar(2 * n));
  };

  detail::StepClock clock;
  detail::StagnationGuard<Scalar> guard;
  IterResult<Scalar> out;
  DenseMatrix<Scalar> prev = a.matrix();   // A_k
  Scalar gamma_prev = gamma_of(prev);      // gamma_k
  DenseMatrix<Scalar> cur =
      symmetrized((gamma_prev * a.matrix() + b.matrix() / gamma_prev) / Scalar(2));  // A_{k+1}
  Scalar gamma_cur = gamma_of(cur);        // gamma_{k+1}

  auto push = [&](int k, Scalar gamma, const DenseMatrix<Scalar>& m, Scalar rel_update) {
    IterStep<Scalar> step;
    step.k = k;
    step.gamma = gamma;
    step.rel_update = rel_update;
    step.rel_error = detail::rel_error_vs(cfg.reference, m);
    step.seconds = clock.seconds();
    out.trace.steps.push_back(step);
    if (cfg.record_iterates) out.trace.primary.push_back(m);
  };

  push(0, gamma_prev, prev, std::numeric_limits<Scalar>::quiet_NaN());
  out.trace.status = IterStatus::NoConvergence;
  for (int k = 1;; ++k) {
    const Scalar rel_update = detail::rel_diff(cur, prev);
    push(k, gamma_cur, cur, rel_update);
    if (rel_update <= cfg.tol || guard.stalled(rel_update)) {
      out.trace.status = IterStatus::Converged;
      break;
    }
    if (k == cfg.maxit) break;
    Eigen::PartialPivLU<DenseMatrix<Scalar>> lu(cur);
    DenseMatrix<Scalar> self_term = symmetrized(prev * lu.solve(prev));
    const Scalar r = gamma_prev / gamma_cur;
    DenseMatrix<Scalar> next = symmetrized(
        (gamma_cur / Scalar(2)) * (cur + (Scalar(2) * r / gamma_cur) * prev - (r * r) * self_term));
    prev = cur;
    gamma_prev = gamma_cur;
    cur = next;
    gamma_cur = gamma_of(cur);
    if (!cur.allFinite()) {
      out.trace.status = IterStatus::Diverged;
      cur = prev;
      break;
    }
  }
  out.value = symmetrized(cur);
  return out;
}

/// Coupled sign-based iteration:
///   X_0 = B, Y_0 = A^{-1},
///   X_{k+1} = (gamma_k X_k + (gamma_k Y_k)^{-1})/2,
///   Y_{k+1} = (gamma_k Y_k + (gamma_k X_k)^{-1})/2,
/// with X_k -> A # B and Y_k -> (A # B)^{-1}. gamma_k = 1 (none),
/// |det X_k det Y_k|^{-1/(2n)} (determinantal), or
/// sqrt(rho((X_k Y_k)^{-1}) / rho(X_k Y_k)) (spectral; the power-method
/// estimates use tol 1e-6 and maxit 50 and fall back to the determinantal
/// factor for a step where they do not settle). Stops when the bracket gap
/// ||X_k - Y_k^{-1}||_F / ||X_k||_F falls below tol.
template <typename Scalar>
IterResult<Scalar> sign_scaled(const SpdMatrix<Scalar>& a, const SpdMatrix<Scalar>& b,
                               const IterConfig<Scalar>& cfg = {}) {
  cfg.validate();
  if (a.n() != b.n()) throw DimensionMismatch("sign_scaled: size mismatch");
  const Index n = a.n();
  detail::StepClock clock;
  detail::StagnationGuard<Scalar> guard;
  IterResult<Scalar> out;
  DenseMatrix<Scalar> x = b.matrix();
  DenseMatrix<Scalar> y = inverse_spd(a).matrix();
  DenseMatrix<Scalar> x_prev;
  auto gamma_det = [&](const DenseMatrix<Scalar>& xm, const DenseMatrix<Scalar>& ym) -> Scalar {
    return std::exp(-(detail::log_abs_det(xm) + detail::log_abs_det(ym)) / Scalar(2 * n));
  };
  for (int k = 0;; ++k) {
    DenseMatrix<Scalar> xinv = detail::spd_inverse_raw(x);
    DenseMatrix<Scalar> yinv = detail::spd_inverse_raw(y);
    IterStep<Scalar> step;
    step.k = k;
    step.coupling_gap = detail::rel_diff(yinv, x);
    if (k > 0) step.rel_update = detail::rel_diff(x, x_prev);
    step.rel_error = detail::rel_error_vs(cfg.reference, x);
    step.seconds = clock.seconds();
    if (cfg.record_iterates) {
      out.trace.primary.push_back(x);
      out.trace.secondary.push_back(y);
    }
    if (step.coupling_gap <= cfg.tol || (k > 0 && guard.stalled(step.rel_update))) {
      out.trace.steps.push_back(step);
      out.trace.status = IterStatus::Converged;
      break;
    }
    if (k == cfg.maxit) {
      out.trace.steps.push_back(step);
      out.trace.status = IterStatus::NoConvergence;
      break;
    }
    Scalar gamma = Scalar(1);
    if (cfg.scaling == Scaling::Determinantal) {
      gamma = gamma_det(x, y);
    } else if (cfg.scaling == Scaling::Spectral) {
      try {
        const Scalar rho_fwd = spectral_radius<Scalar>(x * y, Scalar(1e-6), 50);
        const Scalar rho_inv = spectral_radius<Scalar>(yinv * xinv, Scalar(1e-6), 50);
        gamma = std::sqrt(rho_inv / rho_fwd);
      } catch (const NoConvergence&) {
        gamma = gamma_det(x, y);
      }
    }
    step.gamma = gamma;
    out.trace.steps.push_back(step);
    x_prev = x;
    DenseMatrix<Scalar> xn = symmetrized((gamma * x + yinv / gamma) / Scalar(2));
    DenseMatrix<Scalar> yn = symmetrized((gamma * y + xinv / gamma) / Scalar(2));
    x = xn;
    y = yn;
  }
  out.value = symmetrized(x);
  return out;
}

/// Cyclic-reduction iteration:
///   P_0 = (A - B)/4, Q_0 = (A + B)/2,
///   P_{k+1} = -P_k Q_k^{-1} P_k,  Q_{k+1} = Q_k - 2 P_k Q_k^{-1} P_k,
/// with Q_k -> A # B. Stops when ||P_k||_F / ||Q_k||_F (recorded in the
/// coupling-gap column) falls below tol. Runs unscaled.
template <typename Scalar>
IterResult<Scalar> pcr(const SpdMatrix<Scalar>& a, const SpdMatrix<Scalar>& b,
                       const IterConfig<Scalar>& cfg = {}) {
  cfg.validate();
  if (a.n() != b.n()) throw DimensionMismatch("pcr: size mismatch");
  detail::StepClock clock;
  detail::StagnationGuard<Scalar> guard;
  IterResult<Scalar> out;
  DenseMatrix<Scalar> p = symmetrized((a.matrix() - b.matrix()) / Scalar(4));
  DenseMatrix<Scalar> q = symmetrized((a.matrix() + b.matrix()) / Scalar(2));
  DenseMatrix<Scalar> q_prev;
  for (int k = 0;; ++k) {
    IterStep<Scalar> step;
    step.k = k;
    step.gamma = Scalar(1);
    step.coupling_gap = p.norm() / q.norm();
    if (k > 0) step.rel_update = detail::rel_diff(q, q_prev);
    step.rel_error = detail::rel_error_vs(cfg.reference, q);
    step.seconds = clock.seconds();
    out.trace.steps.push_back(step);
    if (cfg.record_iterates) {
      out.trace.primary.push_back(q);
      out.trace.secondary.push_back(p);
    }
    if (step.coupling_gap <= cfg.tol || (k > 0 && guard.stalled(step.rel_update))) {
      out.trace.status = IterStatus::Converged;
      break;
    }
    if (k == cfg.maxit) {
      out.trace.status = IterStatus::NoConvergence;
      break;
    }
    q_prev = q;
    Eigen::LLT<DenseMatrix<Scalar>> llt(q);
    if (llt.info() != Eigen::Success) throw NotPositiveDefinite("cyclic reduction iterate lost positivity");
    DenseMatrix<Scalar> t = symmetrized(p * llt.solve(p));
    p = -t;
    q = symmetrized(q - Scalar(2) * t);
  }
  out.value = symmetrized(q);
  return out;
}

/// Convergence parameters of the unscaled quadratic iterations:
///   sigma = max |(lambda - 1)/(lambda + 1)| over eigenvalues of A^{-1} B,
///   rho   = sigma / (1 + sqrt(1 - sigma^2)),
/// with step-k errors behaving like rho^(2^k).
template <typename Scalar>
ConvergenceBound<Scalar> convergence_bound(const SpdMatrix<Scalar>& a, const SpdMatrix<Scalar>& b) {
  DenseVector<Scalar> lam = spd_pencil_eigenvalues(a, b);
  Scalar sigma = Scalar(0);
  for (Index i = 0; i < lam.size(); ++i)
    sigma = std::max(sigma, std::abs((lam(i) - Scalar(1)) / (lam(i) + Scalar(1))));
  const Scalar rho = sigma / (Scalar(1) + std::sqrt(Scalar(1) - sigma * sigma));
  return {sigma, rho};
}

// Divergence of the one-sequence averaging variants is predicted when the
// eigenvalue ratio returned by instability_radius exceeds this threshold
// (equivalently, when the fixed-point derivative (ratio - 1)/2 exceeds 1).
inline constexpr double kInstabilityThreshold = 3.0;

/// Extreme eigenvalue ratio lambda_max/lambda_min of Z = (B A^{-1})^{1/2}.
/// Values above kInstabilityThreshold predict divergence of
/// averaging_uncoupled.
template <typename Scalar>
Scalar instability_radius(const SpdMatrix<Scalar>& a, const SpdMatrix<Scalar>& b) {
  DenseVector<Scalar> lam = spd_pencil_eigenvalues(a, b);
  return std::sqrt(lam(lam.size() - 1) / lam(0));
}

/// Closed form of the rational iterate
///   g_k(z) = ((1+z)^k + (1-z)^k) / ((1+z)^k - (1-z)^k)
/// evaluated stably through q = ((1-z)/(1+z))^k as (1+q)/(1-q).
template <typename Scalar>
Scalar scalar_pade_iterate(Scalar z, int k) {
  if (!(z > Scalar(0))) throw ParamOutOfRange("scalar_pade_iterate needs z > 0");
  if (k < 1) throw ParamOutOfRange("scalar_pade_iterate needs k >= 1");
  const Scalar q = std::pow((Scalar(1) - z) / (Scalar(1) + z), Scalar(k));
  return (Scalar(1) + q) / (Scalar(1) - q);
}

/// Partial convergent t_N of the scalar continued-fraction expansion of
/// sqrt(a b); equals sqrt(a b) * g_{2N+2}(sqrt(a/b)), so the averaging
/// iterates satisfy A_k = t_{2^{k-1} - 1} for k >= 1.
template <typename Scalar>
Scalar scalar_cf_convergent(Scalar a, Scalar b, int n) {
  if (!(a > Scalar(0)) || !(b > Scalar(0))) throw ParamOutOfRange("scalar_cf_convergent needs a, b > 0");
  if (n < 0) throw ParamOutOfRange("scalar_cf_convergent needs N >= 0");
  const Scalar g = std::sqrt(a * b);
  const Scalar z = std::sqrt(a / b);
  if (z == Scalar(1)) return g;
  return g * scalar_pade_iterate(z, 2 * n + 2);
}

}  // namespace gmean
