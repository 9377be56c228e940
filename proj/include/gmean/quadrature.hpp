#pragma once

// Quadrature routes to the geometric mean: the Gauss-Chebyshev rule on the
// integral representation of A # B, and the elliptic-node rational rule
//   S_N = B ( (-2 K' sqrt(m) / (pi N)) sum_j (omega_j^2 A - B)^{-1} cn_j dn_j ) A
// whose nodes live on the imaginary axis, t_j = (j - 1/2) (K'/N) i. Jacobi's
// imaginary transformation turns every node quantity into a real one:
// with v_j = (j - 1/2) K'/N and s, c, d the real-argument elliptic values at
// the complementary modulus k' = sqrt(1 - 1/gamma),
//   omega_j^2 = -m (s/c)^2 < 0,   cn(t_j) dn(t_j) = d/c^2 > 0,
// so every summand is the inverse of the negative definite omega_j^2 A - B
// and the negative prefactor makes the total positive definite.

#include <gmean/iterations.hpp>
#include <gmean/linalg.hpp>
#include <gmean/types.hpp>

#include <cmath>
#include <numbers>
#include <vector>

namespace gmean {

template <typename Scalar>
struct ChebyshevRule {
  int n_nodes = 0;
  std::vector<Scalar> nodes;  // cos((2k+1) pi / (2N)), k = 0..N-1
};

template <typename Scalar>
ChebyshevRule<Scalar> chebyshev_rule(int n_nodes) {
  if (n_nodes < 1) throw ParamOutOfRange("chebyshev_rule needs N >= 1");
  ChebyshevRule<Scalar> rule;
  rule.n_nodes = n_nodes;
  rule.nodes.reserve(static_cast<std::size_t>(n_nodes));
  for (int k = 0; k < n_nodes; ++k)
    rule.nodes.push_back(std::cos((Scalar(2 * k + 1)) * std::numbers::pi_v<Scalar> / Scalar(2 * n_nodes)));
  return rule;
}

/// Gauss-Chebyshev approximation
///   T_N(A, B) = B ( (2/N) sum_k ((1 + x_k) A + (1 - x_k) B)^{-1} ) A
/// converging linearly to A # B; T_1 is the harmonic mean and
/// T_{2^{k-1}} equals the harmonic-side iterate B_k of coupled averaging.
/// Summation runs in fixed node order for reproducibility.
template <typename Scalar>
SpdMatrix<Scalar> gauss_chebyshev_mean(const SpdMatrix<Scalar>& a, const SpdMatrix<Scalar>& b, int n_nodes) {
  if (a.n() != b.n()) throw DimensionMismatch("gauss_chebyshev_mean: size mismatch");
  ChebyshevRule<Scalar> rule = chebyshev_rule<Scalar>(n_nodes);
  const Index n = a.n();
  DenseMatrix<Scalar> sum = DenseMatrix<Scalar>::Zero(n, n);
  const DenseMatrix<Scalar> id = DenseMatrix<Scalar>::Identity(n, n);
  for (Scalar x : rule.nodes) {
    DenseMatrix<Scalar> summand = (Scalar(1) + x) * a.matrix() + (Scalar(1) - x) * b.matrix();
    Eigen::LLT<DenseMatrix<Scalar>> llt(summand);
    if (llt.info() != Eigen::Success)
      throw NotPositiveDefinite("gauss_chebyshev_mean: node combination failed to factor");
    sum += llt.solve(id);
  }
  sum *= Scalar(2) / Scalar(n_nodes);
  return SpdMatrix<Scalar>(symmetrized(b.matrix() * sum * a.matrix()));
}

/// Complete elliptic integral of the first kind K(k), modulus convention
/// K(k) = integral of 1/sqrt(1 - k^2 sin^2 t) over [0, pi/2], evaluated by
/// the arithmetic-geometric mean: K = pi / (2 agm(1, sqrt(1 - k^2))).
template <typename Scalar>
Scalar elliptic_K(Scalar k) {
  if (!(k >= Scalar(0) && k < Scalar(1))) throw ModulusOutOfRange("elliptic_K needs 0 <= k < 1");
  Scalar a = Scalar(1);
  Scalar b = std::sqrt((Scalar(1) - k) * (Scalar(1) + k));
  for (int i = 0; i < 64; ++i) {
    const Scalar an = (a + b) / Scalar(2);
    const Scalar bn = std::sqrt(a * b);
    a = an;
    b = bn;
    if (std::abs(a - b) <= std::numeric_limits<Scalar>::epsilon() * a) break;
  }
  return std::numbers::pi_v<Scalar> / (Scalar(2) * a);
}

template <typename Scalar>
struct JacobiElliptic {
  Scalar sn, cn, dn;
};

/// Jacobi elliptic functions sn, cn, dn at real argument u and modulus k,
/// by the descending Landen transformation: run the AGM
/// a_{i+1} = (a_i + b_i)/2, b_{i+1} = sqrt(a_i b_i), c_{i+1} = (a_i - b_i)/2
/// from (1, k', k) until c vanishes, seed phi_N = 2^N a_N u, and unwind
/// phi_{i-1} = (phi_i + asin(c_i sin(phi_i) / a_i)) / 2. Then sn = sin
/// phi_0, cn = cos phi_0, and dn = sqrt(k'^2 + k^2 cn^2), a cancellation-free
/// rewrite of sqrt(1 - k^2 sn^2) that stays exact through the quarter period
/// where the classical ratio cos(phi_0)/cos(phi_1 - phi_0) degenerates to 0/0.
template <typename Scalar>
JacobiElliptic<Scalar> jacobi_sn_cn_dn(Scalar u, Scalar k) {
  if (!(k >= Scalar(0) && k < Scalar(1))) throw ModulusOutOfRange("jacobi_sn_cn_dn needs 0 <= k < 1");
  if (k < Scalar(1e-12)) return {std::sin(u), std::cos(u), Scalar(1)};
  constexpr int kMaxLevels = 64;
  Scalar a[kMaxLevels], c[kMaxLevels];
  a[0] = Scalar(1);
  c[0] = k;
  const Scalar kp_sq = (Scalar(1) - k) * (Scalar(1) + k);
  Scalar b = std::sqrt(kp_sq);
  int levels = 0;
  for (int i = 1; i < kMaxLevels; ++i) {
    a[i] = (a[i - 1] + b) / Scalar(2);
    c[i] = (a[i - 1] - b) / Scalar(2);
    b = std::sqrt(a[i - 1] * b);
    levels = i;
    if (c[i] <= std::numeric_limits<Scalar>::epsilon() * a[i]) break;
  }
  Scalar phi = std::ldexp(a[levels] * u, levels);
  for (int i = levels; i >= 1; --i)
    phi = (phi + std::asin(std::clamp(c[i] * std::sin(phi) / a[i], Scalar(-1), Scalar(1)))) / Scalar(2);
  const Scalar sn = std::sin(phi);
  const Scalar cn = std::cos(phi);
  const Scalar dn = std::sqrt(kp_sq + k * k * cn * cn);
  return {sn, cn, dn};
}

template <typename Scalar>
struct EllipticRule {
  Scalar m = 1, M = 1;       // extreme eigenvalues of A^{-1} B
  Scalar gamma = 1;          // M / m
  Scalar Kp = 0;             // complete elliptic integral K(k') with k' = sqrt(1 - 1/gamma)
  int n_nodes = 0;
  bool degenerate = false;   // gamma at 1: the rule is exact with zero nodes
  std::vector<Scalar> nodes;      // v_j = (j - 1/2) K'/N, the imaginary parts of t_j
  std::vector<Scalar> sn, cn, dn; // real-argument elliptic values at modulus k'
  std::vector<Scalar> omega_sq;   // omega(t_j)^2 = -m (sn/cn)^2, all negative
  std::vector<Scalar> weights;    // cn(t_j) dn(t_j) = dn/cn^2, all positive
  Scalar prefactor = 0;           // -2 K' sqrt(m) / (pi N), negative
};

/// Node and weight generation for the elliptic rational rule on spectra in
/// [m, M]. Node magnitudes increase strictly with j.
template <typename Scalar>
EllipticRule<Scalar> minimax_rule(Scalar m, Scalar M, int n_nodes) {
  if (!(m > Scalar(0)) || !(M >= m)) throw ParamOutOfRange("minimax_rule needs 0 < m <= M");
  if (n_nodes < 1) throw ParamOutOfRange("minimax_rule needs N >= 1");
  EllipticRule<Scalar> rule;
  rule.m = m;
  rule.M = M;
  rule.gamma = M / m;
  rule.n_nodes = n_nodes;
  if (rule.gamma <= Scalar(1) + Scalar(1e-12)) {
    rule.degenerate = true;
    return rule;
  }
  const Scalar kprime = std::sqrt(Scalar(1) - Scalar(1) / rule.gamma);
  rule.Kp = elliptic_K(kprime);
  rule.prefactor = Scalar(-2) * rule.Kp * std::sqrt(m) / (std::numbers::pi_v<Scalar> * Scalar(n_nodes));
  for (int j = 1; j <= n_nodes; ++j) {
    const Scalar v = (Scalar(j) - Scalar(0.5)) * rule.Kp / Scalar(n_nodes);
    JacobiElliptic<Scalar> e = jacobi_sn_cn_dn(v, kprime);
    rule.nodes.push_back(v);
    rule.sn.push_back(e.sn);
    rule.cn.push_back(e.cn);
    rule.dn.push_back(e.dn);
    rule.omega_sq.push_back(-m * (e.sn / e.cn) * (e.sn / e.cn));
    rule.weights.push_back(e.dn / (e.cn * e.cn));
  }
  return rule;
}

/// Elliptic rational approximation S_N of A # B; coincides with the relative
/// minimax approximant of the inverse square root applied to the pencil, so
/// the error decays like exp(-2 pi^2 N / (ln gamma + 3)). The extreme pencil
/// eigenvalues come from the congruent SPD form R_A^{-T} B R_A^{-1}.
template <typename Scalar>
SpdMatrix<Scalar> minimax_mean(const SpdMatrix<Scalar>& a, const SpdMatrix<Scalar>& b, int n_nodes) {
  if (a.n() != b.n()) throw DimensionMismatch("minimax_mean: size mismatch");
  DenseVector<Scalar> lam = spd_pencil_eigenvalues(a, b);
  EllipticRule<Scalar> rule = minimax_rule<Scalar>(lam(0), lam(lam.size() - 1), n_nodes);
  if (rule.degenerate) return SpdMatrix<Scalar>(symmetrized(std::sqrt(rule.m) * a.matrix()));
  const Index n = a.n();
  DenseMatrix<Scalar> sum = DenseMatrix<Scalar>::Zero(n, n);
  const DenseMatrix<Scalar> id = DenseMatrix<Scalar>::Identity(n, n);
  for (int j = 0; j < n_nodes; ++j) {
    // (omega^2 A - B)^{-1} = -(|omega^2| A + B)^{-1}, the latter SPD.
    DenseMatrix<Scalar> summand = -rule.omega_sq[j] * a.matrix() + b.matrix();
    Eigen::LLT<DenseMatrix<Scalar>> llt(summand);
    if (llt.info() != Eigen::Success)
      throw NotPositiveDefinite("minimax_mean: node combination failed to factor");
    sum -= rule.weights[j] * llt.solve(id);
  }
  sum *= rule.prefactor;
  return SpdMatrix<Scalar>(symmetrized(b.matrix() * sum * a.matrix()));
}

/// Linear rate of the Gauss-Chebyshev error in the node count.
template <typename Scalar>
Scalar gc_rate(const SpdMatrix<Scalar>& a, const SpdMatrix<Scalar>& b) {
  return convergence_bound(a, b).rho;
}

/// Decay model exp(-2 pi^2 N / (ln gamma + 3)) for the elliptic rule.
template <typename Scalar>
Scalar minimax_bound(Scalar gamma, int n_nodes) {
  if (!(gamma >= Scalar(1))) throw ParamOutOfRange("minimax_bound needs gamma >= 1");
  if (n_nodes < 1) throw ParamOutOfRange("minimax_bound needs N >= 1");
  return std::exp(Scalar(-2) * std::numbers::pi_v<Scalar> * std::numbers::pi_v<Scalar> * Scalar(n_nodes) /
                  (std::log(gamma) + Scalar(3)));
}

}  // namespace gmean
