// Command line front end: means, geodesic points, condition numbers and
// per-step convergence traces for pairs of symmetric positive definite
// matrices, either loaded from files or drawn from the built-in benchmark
// families.
//
// Exit codes: 0 converged, 1 usage or input error, 2 iteration failed to
// converge or diverged.

#include <CLI11.hpp>
#include <gmean/gmean.hpp>

#include <cmath>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>

namespace {

struct CaseInputs {
  std::string a_file, b_file, exact_file;
  std::string gen;
  double x = 10;
  long long n = 5;
  double tgen = std::numeric_limits<double>::quiet_NaN();
};

void add_case_options(CLI::App* cmd, CaseInputs& in) {
  cmd->add_option("A", in.a_file, "matrix file for A");
  cmd->add_option("B", in.b_file, "matrix file for B");
  cmd->add_option("--exact", in.exact_file, "matrix file with the known exact mean");
  cmd->add_option("--gen", in.gen, "built-in family instead of files: test1, test2 or test3");
  cmd->add_option("--x", in.x, "test1 parameter x > 1/2 (default 10)");
  cmd->add_option("--n", in.n, "test2/test3 size n >= 2 (default 5)");
  cmd->add_option("--tgen", in.tgen, "test2/test3 parameter t (defaults 100 / 0.5)");
}

gmean::ProblemCase<double> build_case(const CaseInputs& in) {
  if (!in.gen.empty()) {
    if (!in.a_file.empty() || !in.b_file.empty())
      throw CLI::ValidationError("--gen cannot be combined with matrix files");
    if (in.gen == "test1") return gmean::gen_test1<double>(in.x);
    if (in.gen == "test2")
      return gmean::gen_test2<double>(in.n, std::isnan(in.tgen) ? 100.0 : in.tgen);
    if (in.gen == "test3")
      return gmean::gen_test3<double>(in.n, std::isnan(in.tgen) ? 0.5 : in.tgen);
    throw CLI::ValidationError("unknown generator '" + in.gen + "' (expected test1, test2 or test3)");
  }
  if (in.a_file.empty() || in.b_file.empty())
    throw CLI::ValidationError("need matrix files A and B (or --gen)");
  gmean::ProblemCase<double> c{"cli",
                               gmean::SpdMatrix<double>(gmean::read_matrix_file(in.a_file)),
                               gmean::SpdMatrix<double>(gmean::read_matrix_file(in.b_file)),
                               std::nullopt,
                               {}};
  if (!in.exact_file.empty()) {
    c.exact = gmean::SpdMatrix<double>(gmean::read_matrix_file(in.exact_file));
    gmean::check_exact_mean(c);
  }
  return c;
}

void emit_matrix(const gmean::DenseMatrix<double>& m, const std::string& out_file) {
  if (out_file.empty())
    gmean::write_matrix(std::cout, m);
  else
    gmean::write_matrix_file(out_file, m);
}

void emit_csv(const std::vector<gmean::TraceRow>& rows, const std::string& out_file) {
  if (out_file.empty())
    gmean::write_trace_csv(std::cout, rows);
  else
    gmean::write_trace_csv_file(out_file, rows);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"geometric means of symmetric positive definite matrix pairs"};
  app.require_subcommand(1);

  CaseInputs in;
  gmean::RunOptions opt;
  std::string alg = "chol-schur";
  std::string out_file, suite;

  CLI::App* mean = app.add_subcommand("mean", "compute the mean (or the geodesic point for --t)");
  CLI::App* trace = app.add_subcommand("trace", "per-step convergence trace of one case, as CSV");
  CLI::App* cond = app.add_subcommand("cond", "condition numbers and bounds of the mean map");
  CLI::App* bench = app.add_subcommand("bench", "run a fixed benchmark suite, as CSV");

  for (CLI::App* cmd : {mean, trace, cond}) add_case_options(cmd, in);
  for (CLI::App* cmd : {mean, trace}) {
    cmd->add_option("--alg", alg,
                    "algorithm id: chol-schur, avg, avg-uncoupled-a, avg-uncoupled-b, three-terms, "
                    "sign, sign-spectral, sign-det, pcr, polar, polar-svd, gc:N, minimax:N, cond");
    cmd->add_option("--t", opt.t, "geodesic parameter in [0, 1], chol-schur only (default 0.5)");
    cmd->add_option("--tol", opt.tol, "iteration tolerance (default 1e-14)");
    cmd->add_option("--maxit", opt.maxit, "iteration cap (default 100)");
    cmd->add_option("--nodes", opt.nodes, "node count for bare gc/minimax ids (default 16)");
    cmd->add_option("--scaling", opt.scaling,
                    "scaling: none|det|spectral (sign, three-terms), none|optimal|approx (polar)");
  }
  mean->add_option("-o,--output", out_file, "write the result matrix here instead of stdout");
  cond->add_option("-o,--output", out_file, "write [[kappa_abs, kappa_rel],[lower, upper]] here");
  trace->add_option("--out", out_file, "write the CSV here instead of stdout");
  bench->add_option("--suite", suite, "suite name: test1, test2 or test3")->required();
  bench->add_option("--out", out_file, "write the CSV here instead of stdout");

  try {
    app.parse(argc, argv);

    if (mean->parsed()) {
      opt.want_error = false;
      gmean::RunResult r = gmean::run_case(build_case(in), alg, opt);
      emit_matrix(r.value, out_file);
      return gmean::exit_code_for(r.status);
    }
    if (trace->parsed()) {
      gmean::RunResult r = gmean::run_case(build_case(in), alg, opt);
      if (r.oracle_reference)
        std::cerr << "note: no exact mean attached; errors are relative to the built-in reference\n";
      emit_csv(r.rows, out_file);
      return gmean::exit_code_for(r.status);
    }
    if (cond->parsed()) {
      gmean::ProblemCase<double> c = build_case(in);
      gmean::CondReport<double> rep = gmean::cond_exact(c.a, c.b);
      std::cout << std::scientific << std::setprecision(16);
      std::cout << "kappa_abs " << rep.kappa_abs << '\n'
                << "kappa_rel " << rep.kappa_rel << '\n'
                << "lower " << rep.lower << '\n'
                << "upper " << rep.upper << '\n'
                << "alpha " << rep.alpha << '\n'
                << "beta " << rep.beta << '\n';
      if (!out_file.empty()) {
        gmean::DenseMatrix<double> m(2, 2);
        m << rep.kappa_abs, rep.kappa_rel, rep.lower, rep.upper;
        gmean::write_matrix_file(out_file, m);
      }
      return 0;
    }
    emit_csv(gmean::bench_suite(suite), out_file);
    return 0;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const gmean::NoConvergence& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const gmean::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
