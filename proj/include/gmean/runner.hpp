#pragma once

// String-keyed dispatch over every mean algorithm plus the benchmark suites,
// shared by the command line tool and the tests. Works in double, the
// precision the tool ships in.
//
// Algorithm ids:
//   chol-schur        direct Cholesky/eigenvalue method (honors the geodesic t)
//   avg               coupled arithmetic/harmonic averaging
//   avg-uncoupled-a   one-sequence variant, X <- (X + A X^{-1} B)/2 from X0 = A
//   avg-uncoupled-b   one-sequence variant, X <- 2(X^{-1} + B^{-1} X A^{-1})^{-1} from X0 = B
//   three-terms       three-terms recurrence (optional determinantal scaling)
//   sign              sign iteration, scaling from options (default none)
//   sign-spectral     sign iteration, spectral scaling
//   sign-det          sign iteration, determinantal scaling
//   pcr               cyclic-reduction iteration
//   polar             polar Newton on R_B R_A^{-1} (scaling from options)
//   polar-svd         polar factor through the SVD
//   gc:N              Gauss-Chebyshev quadrature, one row per node count 1..N
//   minimax:N         elliptic minimax quadrature, one row per node count 1..N
//   cond              condition numbers instead of a mean (see below)
//
// For gc/minimax the ":N" suffix is optional; without it the node count
// comes from RunOptions. The cond row reuses the CSV shape: rel_error holds
// kappa_rel and gamma holds kappa_abs, and the 2x2 result matrix is
// [[kappa_abs, kappa_rel], [lower, upper]].

#include <gmean/conditioning.hpp>
#include <gmean/direct.hpp>
#include <gmean/io.hpp>
#include <gmean/iterations.hpp>
#include <gmean/polar.hpp>
#include <gmean/problems.hpp>
#include <gmean/quadrature.hpp>
#include <gmean/types.hpp>

#include <optional>
#include <string>
#include <vector>

namespace gmean {

struct RunOptions {
  double t = 0.5;       // geodesic parameter, honored by chol-schur only
  double tol = 1e-14;
  int maxit = 100;
  int nodes = 16;       // node count for bare "gc" / "minimax"
  std::string scaling;  // "", none, det, spectral (sign/three-terms); none, optimal, approx (polar)
  // When false the error column is left NaN instead of computing a reference
  // mean for a case that has no exact one attached.
  bool want_error = true;
};

struct RunResult {
  std::vector<TraceRow> rows;
  DenseMatrix<double> value;
  IterStatus status = IterStatus::Converged;
  // True when the error column was measured against gmean_reference because
  // the case carried no exact mean.
  bool oracle_reference = false;
};

inline int exit_code_for(IterStatus s) { return s == IterStatus::Converged ? 0 : 2; }

namespace detail {

inline Scaling parse_iter_scaling(const std::string& s) {
  if (s.empty() || s == "none") return Scaling::None;
  if (s == "det" || s == "determinantal") return Scaling::Determinantal;
  if (s == "spectral") return Scaling::Spectral;
  throw ParamOutOfRange("unknown scaling '" + s + "' (expected none, det or spectral)");
}

inline PolarScaling parse_polar_scaling(const std::string& s) {
  if (s.empty() || s == "optimal") return PolarScaling::Optimal;
  if (s == "approx" || s == "approximate") return PolarScaling::Approximate;
  if (s == "none") return PolarScaling::None;
  throw ParamOutOfRange("unknown scaling '" + s + "' (expected none, optimal or approx)");
}

inline int parse_node_suffix(const std::string& alg, const std::string& suffix, int fallback) {
  if (suffix.empty()) return fallback;
  try {
    size_t used = 0;
    const int n = std::stoi(suffix, &used);
    if (used != suffix.size() || n < 1) throw std::invalid_argument("");
    return n;
  } catch (const std::exception&) {
    throw UnknownAlgorithm("bad node count in algorithm id '" + alg + "'");
  }
}

inline void append_iter_rows(RunResult& out, const ProblemCase<double>& c, const std::string& alg,
                             const IterResult<double>& r) {
  for (const IterStep<double>& s : r.trace.steps)
    out.rows.push_back({c.name, alg, s.k, s.rel_error, s.gamma, s.seconds});
  out.value = r.value;
  out.status = r.trace.status;
}

}  // namespace detail

inline RunResult run_case(const ProblemCase<double>& c, const std::string& alg,
                          const RunOptions& opt = {}) {
  RunResult out;
  std::optional<DenseMatrix<double>> reference;
  // Iterations and quadratures always target the midpoint mean; chol-schur
  // follows the requested t, so its error column only makes sense at t = 1/2.
  if (alg != "chol-schur" || opt.t == 0.5) {
    if (c.exact) {
      reference = c.exact->matrix();
    } else if (opt.want_error) {
      reference = gmean_reference(c.a, c.b).matrix();
      out.oracle_reference = true;
    }
  }

  const auto colon = alg.find(':');
  const std::string head = alg.substr(0, colon);
  const std::string suffix = colon == std::string::npos ? "" : alg.substr(colon + 1);

  IterConfig<double> cfg;
  cfg.tol = opt.tol;
  cfg.maxit = opt.maxit;
  cfg.reference = reference;

  detail::StepClock clock;
  if (alg == "chol-schur") {
    DenseMatrix<double> g = gmean_cholesky_schur(c.a, c.b, GeodesicParameter<double>(opt.t)).matrix();
    double err = std::numeric_limits<double>::quiet_NaN();
    if (reference) err = (g - *reference).norm() / reference->norm();
    out.rows.push_back({c.name, alg, 0, err, std::numeric_limits<double>::quiet_NaN(), clock.seconds()});
    out.value = g;
  } else if (alg == "avg") {
    detail::append_iter_rows(out, c, alg, averaging_coupled(c.a, c.b, cfg));
  } else if (alg == "avg-uncoupled-a") {
    detail::append_iter_rows(out, c, alg,
                             averaging_uncoupled(c.a, c.b, cfg, StartMatrix::A, UncoupledForm::Arithmetic));
  } else if (alg == "avg-uncoupled-b") {
    detail::append_iter_rows(out, c, alg,
                             averaging_uncoupled(c.a, c.b, cfg, StartMatrix::B, UncoupledForm::Harmonic));
  } else if (alg == "three-terms") {
    cfg.scaling = detail::parse_iter_scaling(opt.scaling);
    detail::append_iter_rows(out, c, alg, three_terms(c.a, c.b, cfg));
  } else if (alg == "sign" || alg == "sign-spectral" || alg == "sign-det") {
    cfg.scaling = alg == "sign-spectral"  ? Scaling::Spectral
                  : alg == "sign-det"     ? Scaling::Determinantal
                                          : detail::parse_iter_scaling(opt.scaling);
    detail::append_iter_rows(out, c, alg, sign_scaled(c.a, c.b, cfg));
  } else if (alg == "pcr") {
    detail::append_iter_rows(out, c, alg, pcr(c.a, c.b, cfg));
  } else if (alg == "polar" || alg == "polar-svd") {
    PolarConfig<double> pc;
    pc.method = alg == "polar-svd" ? PolarMethod::Svd : PolarMethod::Newton;
    pc.scaling = alg == "polar-svd" ? PolarScaling::None : detail::parse_polar_scaling(opt.scaling);
    pc.tol = opt.tol;
    pc.maxit = opt.maxit;
    GmeanPolarResult<double> r = gmean_polar_detailed(c.a, c.b, pc, reference);
    for (const IterStep<double>& s : r.steps)
      out.rows.push_back({c.name, alg, s.k, s.rel_error, s.gamma, s.seconds});
    out.value = r.value.matrix();
    out.status = IterStatus::Converged;
  } else if (head == "gc" || head == "minimax") {
    const int n_nodes = detail::parse_node_suffix(alg, suffix, opt.nodes);
    for (int k = 1; k <= n_nodes; ++k) {
      DenseMatrix<double> g = (head == "gc") ? gauss_chebyshev_mean(c.a, c.b, k).matrix()
                                             : minimax_mean(c.a, c.b, k).matrix();
      double err = std::numeric_limits<double>::quiet_NaN();
      if (reference) err = (g - *reference).norm() / reference->norm();
      out.rows.push_back({c.name, alg, k, err, std::numeric_limits<double>::quiet_NaN(), clock.seconds()});
      if (k == n_nodes) out.value = g;
    }
  } else if (alg == "cond") {
    CondReport<double> rep = cond_exact(c.a, c.b);
    out.rows.push_back({c.name, alg, 0, rep.kappa_rel, rep.kappa_abs, clock.seconds()});
    DenseMatrix<double> m(2, 2);
    m << rep.kappa_abs, rep.kappa_rel, rep.lower, rep.upper;
    out.value = m;
  } else {
    throw UnknownAlgorithm("unknown algorithm id '" + alg + "'");
  }
  return out;
}

/// Fixed benchmark suites. Cases and algorithms run in the listed order and
/// rows are emitted per (case, algorithm) pair, so output order is
/// deterministic.
inline std::vector<TraceRow> bench_suite(const std::string& suite) {
  std::vector<ProblemCase<double>> cases;
  std::vector<std::string> algs;
  if (suite == "test1") {
    cases = {gen_test1<double>(10), gen_test1<double>(1000)};
    algs = {"avg", "sign-spectral", "polar", "gc:128", "minimax:16"};
  } else if (suite == "test2") {
    cases = {gen_test2<double>(5, 1e2), gen_test2<double>(5, 1e4)};
    algs = {"chol-schur", "avg", "sign-spectral", "polar", "minimax:24"};
  } else if (suite == "test3") {
    cases = {gen_test3<double>(5, 0.5), gen_test3<double>(5, 1.5)};
    algs = {"avg", "avg-uncoupled-a"};
  } else {
    throw ParamOutOfRange("unknown suite '" + suite + "' (expected test1, test2 or test3)");
  }
  std::vector<TraceRow> rows;
  for (const ProblemCase<double>& c : cases)
    for (const std::string& alg : algs) {
      RunResult r = run_case(c, alg);
      rows.insert(rows.end(), r.rows.begin(), r.rows.end());
    }
  return rows;
}

}  // namespace gmean
