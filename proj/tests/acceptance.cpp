// Acceptance gate: eight end-to-end criteria over the whole library, each
// printing one [PASS]/[FAIL] line with the measured numbers. Run with a
// criterion number 1..8 or "all" (default). Exit code is the failure count.

#include <gmean/gmean.hpp>

#include "oracles.hpp"
#include "util.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using gmean::DenseMatrix;
using gmean::SpdMatrix;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void fail(const std::string& msg) {
    pass = false;
    if (!detail.str().empty()) detail << "; ";
    detail << msg;
  }
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

double rel_err(const DenseMatrix<double>& x, const DenseMatrix<double>& y) {
  return (x - y).norm() / y.norm();
}

double elapsed_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double min_eigenvalue(const DenseMatrix<double>& m) {
  return gmean::sym_eig(gmean::symmetrized(m)).values(0);
}

// Pairs whose pencil spread keeps every iteration in its recordable regime
// for at least five steps.
std::pair<SpdMatrix<double>, SpdMatrix<double>> slow_pair(std::mt19937& rng) {
  return {testgen::random_spd(4, rng, 0.5, 2.0), testgen::random_spd(4, rng, 5.0, 40.0)};
}

// ---------------------------------------------------------------------------
// 1: every algorithm family hits 1e-11 on the 2x2 family at three
// difficulties, within the step budgets, in under a second total.

Outcome criterion1() {
  Outcome out;
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<std::string> algs = {"chol-schur", "avg",   "three-terms", "sign-det",
                                         "sign-spectral", "pcr", "polar",       "gc:256",
                                         "minimax:12"};
  double worst = 0;
  std::string worst_cell;
  for (double x : {2.0, 10.0, 1000.0}) {
    const auto c = gmean::gen_test1(x);
    for (const std::string& alg : algs) {
      const auto r = gmean::run_case(c, alg);
      const double err = r.rows.back().rel_error;
      if (!(err <= 1e-11)) {
        std::string msg = alg + " on x=" + fmt(x) + ": rel err " + fmt(err) + " > 1e-11";
        // The 12-node elliptic rule equioscillates at 3.23e-11 on this
        // spread; that is the rule's optimum, not a defect of the solver.
        if (alg == "minimax:12" && x == 1000.0)
          msg += " (equioscillation level of the 12-node rule at this spread)";
        out.fail(msg);
      }
      if (err > worst) {
        worst = err;
        worst_cell = alg + "@x=" + fmt(x);
      }
      const bool iterative = alg == "avg" || alg == "three-terms" || alg == "sign-det" ||
                             alg == "sign-spectral" || alg == "pcr" || alg == "polar";
      if (iterative) {
        const int cap = alg == "sign-spectral" ? 12 : 60;
        if (r.rows.back().step > cap)
          out.fail(alg + " on x=" + fmt(x) + ": " + std::to_string(r.rows.back().step) +
                   " steps > " + std::to_string(cap));
      }
      if (r.status != gmean::IterStatus::Converged)
        out.fail(alg + " on x=" + fmt(x) + " did not converge");
    }
  }
  const double secs = elapsed_since(t0);
  if (secs >= 1.0) out.fail("grid took " + fmt(secs) + " s >= 1 s");
  if (out.pass)
    out.detail << "27 cells <= 1e-11 (worst " << fmt(worst) << " at " << worst_cell << "), "
               << fmt(secs) << " s";
  else
    out.detail << " [grid worst " << fmt(worst) << " at " << worst_cell << ", " << fmt(secs)
               << " s]";
  return out;
}

// ---------------------------------------------------------------------------
// 2: the iteration families are the same object in different coordinates:
// sign tracks the coupled pair, cyclic reduction interleaves it, the polar
// Newton iterates are its Cholesky conjugation, and the doubled Chebyshev
// rule walks its harmonic side.

Outcome criterion2() {
  Outcome out;
  std::mt19937 rng(92001);
  double worst_sign = 0, worst_pcr = 0, worst_polar = 0, worst_gc = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const auto [a, b] = slow_pair(rng);

    gmean::IterConfig<double> cfg;
    cfg.tol = 1e-18;
    cfg.maxit = 20;
    cfg.record_iterates = true;
    const auto avg = gmean::averaging_coupled(a, b, cfg);
    if (avg.trace.primary.size() < 7) {
      out.fail("trial " + std::to_string(trial) + ": averaging recorded fewer than 7 iterates");
      continue;
    }

    const auto sign = gmean::sign_scaled(a, b, cfg);
    const auto cyc = gmean::pcr(a, b, cfg);
    const auto& ra = a.cholesky_upper();
    const DenseMatrix<double> m =
        gmean::solve_triangular(ra, b.cholesky_upper().matrix(), gmean::Side::Right, false);
    gmean::PolarConfig<double> pc;
    pc.scaling = gmean::PolarScaling::None;
    pc.tol = 1e-15;
    pc.maxit = 25;
    pc.record_iterates = true;
    const auto pf = gmean::polar_factor(m, pc);
    const DenseMatrix<double> rbt_inv =
        b.cholesky_upper().matrix().transpose().partialPivLu().inverse();
    const DenseMatrix<double> ra_inv = ra.matrix().partialPivLu().inverse();

    for (std::size_t k = 1; k <= 5; ++k) {
      const DenseMatrix<double>& ak = avg.trace.primary[k];
      const DenseMatrix<double>& bk = avg.trace.secondary[k];

      if (k < sign.trace.primary.size()) {
        worst_sign = std::max(worst_sign, rel_err(sign.trace.primary[k], ak));
        const DenseMatrix<double> bk_inv = gmean::inverse_spd(SpdMatrix<double>(bk)).matrix();
        worst_sign = std::max(worst_sign, rel_err(sign.trace.secondary[k], bk_inv));
      }
      if (k < cyc.trace.primary.size())
        worst_pcr = std::max(worst_pcr, rel_err(cyc.trace.primary[k], avg.trace.primary[k + 1]));
      if (k < pf.iterates.size()) {
        const DenseMatrix<double> zk = rbt_inv * ak * ra_inv;
        worst_polar = std::max(worst_polar, rel_err(pf.iterates[k], zk));
      }
      const DenseMatrix<double> tk = gmean::gauss_chebyshev_mean(a, b, 1 << (k - 1)).matrix();
      worst_gc = std::max(worst_gc, rel_err(tk, bk));
    }
  }
  if (!(worst_sign <= 1e-13)) out.fail("sign vs averaging " + fmt(worst_sign) + " > 1e-13");
  if (!(worst_pcr <= 1e-13)) out.fail("pcr vs averaging " + fmt(worst_pcr) + " > 1e-13");
  if (!(worst_polar <= 1e-11)) out.fail("polar vs averaging " + fmt(worst_polar) + " > 1e-11");
  if (!(worst_gc <= 1e-8)) out.fail("chebyshev vs averaging " + fmt(worst_gc) + " > 1e-8");
  if (out.pass)
    out.detail << "50 pairs, k=1..5: sign " << fmt(worst_sign) << ", pcr " << fmt(worst_pcr)
               << ", polar " << fmt(worst_polar) << ", chebyshev " << fmt(worst_gc);
  return out;
}

// ---------------------------------------------------------------------------
// 3: scalar Newton square-root steps equal exact-rational diagonal-strip
// approximants, and the rational iterate composes under both index parities.

Outcome criterion3() {
  Outcome out;
  double worst = 0, worst_comp = 0;
  for (double z : {0.5, 2.0, 10.0}) {
    double x = 1.0;
    for (int k = 1; k <= 4; ++k) {
      x = 0.5 * (x + z / x);
      const int m = 1 << (k - 1);
      const double table = oracle::to_double(oracle::pade_sqrt_eval(m, m - 1, oracle::Rational(z)));
      const double err = std::abs(x - table) / std::abs(x);
      worst = std::max(worst, err);
      if (!(err <= 1e-14))
        out.fail("z=" + fmt(z) + " k=" + std::to_string(k) + ": Newton vs table " + fmt(err));
    }
    const double g4 = gmean::scalar_pade_iterate(z, 4);
    const double g6 = gmean::scalar_pade_iterate(z, 6);
    const double c22 = std::abs(gmean::scalar_pade_iterate(gmean::scalar_pade_iterate(z, 2), 2) - g4) / g4;
    const double c23 = std::abs(gmean::scalar_pade_iterate(gmean::scalar_pade_iterate(z, 3), 2) - g6) / g6;
    const double c32 = std::abs(gmean::scalar_pade_iterate(1.0 / gmean::scalar_pade_iterate(z, 2), 3) - g6) / g6;
    worst_comp = std::max({worst_comp, c22, c23, c32});
    if (!(c22 <= 1e-13 && c23 <= 1e-13 && c32 <= 1e-13))
      out.fail("composition at z=" + fmt(z) + ": " + fmt(c22) + "/" + fmt(c23) + "/" + fmt(c32));
  }
  if (out.pass)
    out.detail << "Newton vs exact rational table " << fmt(worst) << " (<= 1e-14), composition "
               << fmt(worst_comp) << " (<= 1e-13)";
  return out;
}

// ---------------------------------------------------------------------------
// 4: measured orders match the theory on the x=10 case: the averaging error
// is quadratic with a small constant, and the Chebyshev log-error slope is
// the predicted linear rate.

Outcome criterion4() {
  Outcome out;
  const auto c = gmean::gen_test1(10.0);

  gmean::IterConfig<double> cfg;
  cfg.tol = 1e-15;
  cfg.maxit = 40;
  cfg.reference = c.exact->matrix();
  const auto avg = gmean::averaging_coupled(c.a, c.b, cfg);
  double worst_ratio = 0;
  int checked = 0;
  for (std::size_t i = 0; i + 1 < avg.trace.steps.size(); ++i) {
    const double e0 = avg.trace.steps[i].rel_error;
    const double e1 = avg.trace.steps[i + 1].rel_error;
    if (!(e0 < 0.1) || !(e1 > 1e-15)) continue;
    ++checked;
    worst_ratio = std::max(worst_ratio, e1 / (e0 * e0));
    if (!(e1 <= 5.0 * e0 * e0))
      out.fail("step " + std::to_string(avg.trace.steps[i].k) + ": e+ = " + fmt(e1) + " > 5 e^2 = " +
                fmt(5.0 * e0 * e0));
  }
  if (checked == 0) out.fail("no quadratic-regime steps observed");

  // Least-squares slope of ln E_N against N for the Chebyshev rule.
  const double rho = gmean::gc_rate(c.a, c.b);
  const double target = 2.0 * std::log(rho);
  double sn = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int n = 2; n <= 14; ++n) {
    const double e = rel_err(gmean::gauss_chebyshev_mean(c.a, c.b, n).matrix(), c.exact->matrix());
    sn += 1;
    sx += n;
    sy += std::log(e);
    sxx += double(n) * n;
    sxy += n * std::log(e);
  }
  const double slope = (sn * sxy - sx * sy) / (sn * sxx - sx * sx);
  if (!(std::abs(slope - target) <= 0.25 * std::abs(target)))
    out.fail("chebyshev slope " + fmt(slope) + " vs 2 ln rho " + fmt(target) + " off by more than 25%");
  if (out.pass)
    out.detail << "quadratic ratio e+/e^2 <= " << fmt(worst_ratio) << " (cap 5) over " << checked
               << " steps; chebyshev slope " << fmt(slope) << " vs " << fmt(target);
  return out;
}

// ---------------------------------------------------------------------------
// 5: on the hard x=1000 case the elliptic rule crushes the Chebyshev rule at
// a tenth of the nodes, and its error falls monotonically in N.

Outcome criterion5() {
  Outcome out;
  const auto c = gmean::gen_test1(1000.0);
  const DenseMatrix<double>& g = c.exact->matrix();
  const double mini10 = rel_err(gmean::minimax_mean(c.a, c.b, 10).matrix(), g);
  const double gc100 = rel_err(gmean::gauss_chebyshev_mean(c.a, c.b, 100).matrix(), g);
  if (!(mini10 < gc100))
    out.fail("minimax:10 " + fmt(mini10) + " not below gc:100 " + fmt(gc100));
  std::vector<double> errs;
  for (int n = 4; n <= 12; n += 2) errs.push_back(rel_err(gmean::minimax_mean(c.a, c.b, n).matrix(), g));
  for (std::size_t i = 0; i + 1 < errs.size(); ++i)
    if (!(errs[i + 1] < errs[i]))
      out.fail("E(" + std::to_string(6 + 2 * int(i)) + ") = " + fmt(errs[i + 1]) +
               " not below E(" + std::to_string(4 + 2 * int(i)) + ") = " + fmt(errs[i]));
  if (out.pass)
    out.detail << "minimax:10 " << fmt(mini10) << " < gc:100 " << fmt(gc100) << "; E(4..12) = "
               << fmt(errs[0]) << " .. " << fmt(errs[4]) << " strictly decreasing";
  return out;
}

// ---------------------------------------------------------------------------
// 6: the condition estimator is quantitatively right: the hard congruence
// case lands near its known condition number, the eigenvalue bounds bracket
// the exact value everywhere, and the derivative matches finite differences.

Outcome criterion6() {
  Outcome out;
  const auto hard = gmean::gen_test2<double>(5, 100.0);
  const double kappa = gmean::cond_exact(hard.a, hard.b).kappa_abs;
  const double anchor = 1.5e6;
  if (!(kappa >= anchor / 3 && kappa <= anchor * 3))
    out.fail("kappa_abs " + fmt(kappa) + " not within factor 3 of " + fmt(anchor));

  std::mt19937 rng(92006);
  int sandwiched = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const gmean::Index n = 2 + trial % 2;
    const SpdMatrix<double> a = testgen::random_spd(n, rng, 0.2, 5.0);
    const SpdMatrix<double> b = testgen::random_spd(n, rng, 0.2, 5.0);
    const auto rep = gmean::cond_exact(a, b);
    if (rep.lower <= rep.kappa_abs * (1 + 1e-9) && rep.kappa_abs <= rep.upper * (1 + 1e-9))
      ++sandwiched;
    else
      out.fail("pair " + std::to_string(trial) + ": " + fmt(rep.lower) + " <= " +
               fmt(rep.kappa_abs) + " <= " + fmt(rep.upper) + " violated");
  }

  double worst_fd = 0;
  const double delta = 1e-5;
  for (int trial = 0; trial < 5; ++trial) {
    const SpdMatrix<double> a = testgen::random_spd(3, rng, 0.5, 2.0);
    const SpdMatrix<double> b = testgen::random_spd(3, rng, 0.5, 2.0);
    DenseMatrix<double> h = testgen::random_symmetric(3, rng);
    DenseMatrix<double> k = testgen::random_symmetric(3, rng);
    h /= h.norm();
    k /= k.norm();
    const DenseMatrix<double> d = gmean::frechet_apply(a, b, h, k);
    const DenseMatrix<double> ap = a.matrix() + delta * h, am = a.matrix() - delta * h;
    const DenseMatrix<double> bp = b.matrix() + delta * k, bm = b.matrix() - delta * k;
    const DenseMatrix<double> fd =
        (gmean::gmean_cholesky_schur(SpdMatrix<double>(ap), SpdMatrix<double>(bp)).matrix() -
         gmean::gmean_cholesky_schur(SpdMatrix<double>(am), SpdMatrix<double>(bm)).matrix()) /
        (2 * delta);
    worst_fd = std::max(worst_fd, (d - fd).norm());
  }
  if (!(worst_fd <= 1e-6)) out.fail("derivative vs central differences " + fmt(worst_fd) + " > 1e-6");
  if (out.pass)
    out.detail << "kappa_abs " << fmt(kappa) << " vs " << fmt(anchor) << "; bounds bracket "
               << sandwiched << "/200 pairs; derivative vs differences " << fmt(worst_fd);
  return out;
}

// ---------------------------------------------------------------------------
// 7: the instability radius separates the regimes it claims to: below the
// threshold the one-sequence iteration keeps its error at the floor, above
// it the error blows up while the coupled form stays put.

Outcome criterion7() {
  Outcome out;
  gmean::RunOptions opt;
  opt.tol = 1e-18;
  opt.maxit = 45;

  // The floor is noisy, so anchor at the first step within 10x of the run
  // minimum rather than at the literal argmin, which noise can push to the
  // end of the window.
  const auto floor_entry = [](const std::vector<gmean::TraceRow>& rows) {
    double lo = rows[0].rel_error;
    for (const auto& r : rows) lo = std::min(lo, r.rel_error);
    std::size_t first = 0;
    while (rows[first].rel_error > 10.0 * lo) ++first;
    double worst = 0;
    for (std::size_t i = first; i < rows.size(); ++i)
      worst = std::max(worst, rows[i].rel_error / lo);
    return std::tuple<std::size_t, double>{rows.size() - 1 - first, worst};
  };

  const auto mild = gmean::gen_test3<double>(5, 0.5);
  const auto mild_run = gmean::run_case(mild, "avg-uncoupled-a", opt);
  if (mild_run.status == gmean::IterStatus::Diverged) out.fail("t=0.5 one-sequence run diverged");
  {
    const auto [steps_after, worst] = floor_entry(mild_run.rows);
    if (steps_after < 20)
      out.fail("t=0.5: only " + std::to_string(steps_after) + " steps at the floor");
    if (!(worst <= 100.0))
      out.fail("t=0.5: error climbed to " + fmt(worst) + "x its floor");
    else if (out.pass)
      out.detail << "t=0.5 floor held (<= " << fmt(worst) << "x over " << steps_after << " steps)";
  }

  const auto harsh = gmean::gen_test3<double>(5, 1.5);
  const auto harsh_run = gmean::run_case(harsh, "avg-uncoupled-a", opt);
  if (harsh_run.status != gmean::IterStatus::Diverged) out.fail("t=1.5 one-sequence run did not diverge");
  {
    const auto& rows = harsh_run.rows;
    std::size_t arg = 0;
    for (std::size_t i = 1; i < rows.size(); ++i)
      if (rows[i].rel_error < rows[arg].rel_error) arg = i;
    double blow = 0;
    for (std::size_t i = arg; i < rows.size(); ++i)
      blow = std::max(blow, rows[i].rel_error / rows[arg].rel_error);
    if (!(blow >= 100.0))
      out.fail("t=1.5: error grew only " + fmt(blow) + "x after its minimum");
    else
      out.detail << "; t=1.5 diverged (" << fmt(blow) << "x climb)";
  }

  const auto coupled = gmean::run_case(harsh, "avg", opt);
  {
    const auto [steps_after, worst] = floor_entry(coupled.rows);
    (void)steps_after;
    if (!(worst <= 100.0))
      out.fail("t=1.5 coupled: error climbed to " + fmt(worst) + "x its floor");
    else
      out.detail << "; coupled stayed at " << fmt(worst) << "x floor";
  }

  for (double t : {0.5, 1.5}) {
    const auto c = gmean::gen_test3<double>(5, t);
    const double radius = c.meta.at("instability_radius");
    const double predicted = std::pow(10.0, t / 2);
    if (!(std::abs(radius - predicted) <= 0.1 * predicted))
      out.fail("radius(t=" + fmt(t) + ") = " + fmt(radius) + " not within 10% of " + fmt(predicted));
    const bool flagged = radius > gmean::kInstabilityThreshold;
    if (flagged != (t > 1.0))
      out.fail("radius(t=" + fmt(t) + ") lands on the wrong side of the threshold");
  }
  if (out.pass) out.detail << "; radii track 10^(t/2) within 10%";
  return out;
}

// ---------------------------------------------------------------------------
// 8: the defining algebraic identities of the mean hold across sizes, along
// with the Loewner bracket between the harmonic and arithmetic means.

Outcome criterion8() {
  Outcome out;
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937 rng(92008);
  double worst = 0;
  std::string worst_name;
  const auto track = [&](const char* name, double v, double tol, Outcome& o) {
    if (v > worst) {
      worst = v;
      worst_name = name;
    }
    if (!(v <= tol)) o.fail(std::string(name) + " " + fmt(v) + " > " + fmt(tol));
  };

  for (int trial = 0; trial < 200; ++trial) {
    const gmean::Index n = 2 + trial % 7;
    const SpdMatrix<double> a = testgen::random_spd(n, rng, 0.2, 5.0);
    const SpdMatrix<double> b = testgen::random_spd(n, rng, 0.2, 5.0);
    const DenseMatrix<double> g = gmean_cholesky_schur(a, b).matrix();

    track("commutativity", rel_err(gmean::gmean_cholesky_schur(b, a).matrix(), g), 1e-9, out);
    track("fixed-point residual", gmean::riccati_residual(a, b, g), 1e-9, out);

    const DenseMatrix<double> s = testgen::random_invertible(static_cast<int>(n), rng);
    const DenseMatrix<double> sas = gmean::symmetrized(s.transpose() * a.matrix() * s);
    const DenseMatrix<double> sbs = gmean::symmetrized(s.transpose() * b.matrix() * s);
    const DenseMatrix<double> lhs =
        gmean::gmean_cholesky_schur(SpdMatrix<double>(sas), SpdMatrix<double>(sbs)).matrix();
    const DenseMatrix<double> rhs = s.transpose() * g * s;
    track("congruence", rel_err(lhs, rhs), 1e-8, out);

    const double alpha = 0.37, beta = 4.2;
    const DenseMatrix<double> aa = alpha * a.matrix();
    const DenseMatrix<double> bb = beta * b.matrix();
    const DenseMatrix<double> scaled =
        gmean::gmean_cholesky_schur(SpdMatrix<double>(aa), SpdMatrix<double>(bb)).matrix();
    track("scaling", rel_err(scaled, DenseMatrix<double>(std::sqrt(alpha * beta) * g)), 1e-9, out);

    const gmean::GeodesicParameter<double> tq(0.25), tq1(0.75);
    track("geodesic symmetry",
          rel_err(gmean::gmean_cholesky_schur(b, a, tq1).matrix(),
                  gmean::gmean_cholesky_schur(a, b, tq).matrix()),
          1e-9, out);

    const double det_g = g.determinant();
    const double det_ab = std::sqrt(a.matrix().determinant() * b.matrix().determinant());
    track("determinant", std::abs(det_g - det_ab) / det_ab, 1e-9, out);

    const DenseMatrix<double> arith = (a.matrix() + b.matrix()) / 2;
    const DenseMatrix<double> hsum =
        gmean::inverse_spd(a).matrix() + gmean::inverse_spd(b).matrix();
    const DenseMatrix<double> harm = 2.0 * gmean::inverse_spd(SpdMatrix<double>(hsum)).matrix();
    const double slack = 1e-9 * g.norm();
    if (min_eigenvalue(arith - g) < -slack)
      out.fail("arithmetic mean fails to dominate at trial " + std::to_string(trial));
    if (min_eigenvalue(g - harm) < -slack)
      out.fail("harmonic mean fails to stay below at trial " + std::to_string(trial));
  }
  const double secs = elapsed_since(t0);
  if (secs >= 30.0) out.fail("took " + fmt(secs) + " s >= 30 s");
  if (out.pass)
    out.detail << "200 pairs n=2..8: six identities hold (worst " << fmt(worst) << " from "
               << worst_name << "), Loewner bracket holds, " << fmt(secs) << " s";
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string which = argc > 1 ? argv[1] : "all";
  const std::vector<std::pair<int, std::function<Outcome()>>> table = {
      {1, criterion1}, {2, criterion2}, {3, criterion3}, {4, criterion4},
      {5, criterion5}, {6, criterion6}, {7, criterion7}, {8, criterion8}};
  int failures = 0;
  bool matched = false;
  for (const auto& [id, fn] : table) {
    if (which != "all" && which != std::to_string(id)) continue;
    matched = true;
    Outcome r;
    try {
      r = fn();
    } catch (const std::exception& e) {
      r.pass = false;
      r.detail.str("");
      r.detail << "exception: " << e.what();
    }
    std::cout << (r.pass ? "[PASS]" : "[FAIL]") << " criterion " << id << ": " << r.detail.str()
              << '\n';
    if (!r.pass) ++failures;
  }
  if (!matched) {
    std::cerr << "usage: acceptance [1..8|all]\n";
    return 64;
  }
  return failures;
}
