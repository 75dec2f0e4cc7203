// Command-line surface: single-point reports, parameter sweeps, figure-data
// emission and the self-verification suite.
//
// Exit codes: 0 success, 1 verification failure, 2 usage error, 3 I/O error.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qcorr/correlations.hpp"
#include "qcorr/sweep.hpp"
#include "qcorr/verify.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

qcorr::Scheme parse_scheme(const std::string& text) {
  if (text == "pure") return qcorr::Scheme::pure_split;
  if (text == "mixed") return qcorr::Scheme::traced_pair;
  throw std::invalid_argument("scheme must be 'pure' or 'mixed'");
}

qcorr::OutputFormat parse_format(const std::string& text) {
  if (text == "csv") return qcorr::OutputFormat::csv;
  if (text == "json") return qcorr::OutputFormat::json;
  throw std::invalid_argument("format must be 'csv' or 'json'");
}

// Writes to the path or to stdout when the path is empty.
int write_output(const std::string& path, const std::string& payload) {
  if (path.empty()) {
    std::cout << payload;
    return kExitOk;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot open output file '" << path << "'\n";
    return kExitIo;
  }
  out << payload;
  if (!out) {
    std::cerr << "error: write to '" << path << "' failed\n";
    return kExitIo;
  }
  return kExitOk;
}

// The overlap comes either from --s or from --omega (folded to [1/2, 1]).
qcorr::Overlap resolve_overlap(const std::optional<double>& s,
                               const std::optional<double>& omega) {
  if (s.has_value() == omega.has_value())
    throw std::invalid_argument("exactly one of --s and --omega is required");
  if (s) return qcorr::Overlap(*s);
  const auto conv = qcorr::overlap_from_omega(*omega);
  if (conv.reflected)
    std::cerr << "note: omega < 1/2 folded to " << qcorr::format_double(conv.overlap.omega())
              << " (mirrored state)\n";
  return conv.overlap;
}

void print_point(const qcorr::CorrelationReport& rep, std::ostream& os) {
  using qcorr::format_double;
  const qcorr::PartitionSpec& p = rep.partition;
  os << "scheme        = " << qcorr::to_string(p.scheme()) << '\n';
  os << "n             = " << p.n() << '\n';
  if (p.has_k()) os << "k             = " << p.k() << '\n';
  os << "s             = " << format_double(rep.s) << '\n';
  os << "omega         = " << format_double(0.5 * (1.0 + rep.s)) << '\n';
  os << "branch        = " << qcorr::to_string(rep.branch) << '\n';
  os << "closest_param = " << format_double(rep.closest.value) << '\n';
  os << "T2            = " << format_double(rep.t2) << '\n';
  os << "D2            = " << format_double(rep.d2) << '\n';
  os << "C2            = " << format_double(rep.c2) << '\n';
  os << "L2            = " << format_double(rep.l2) << '\n';
  os << "residual      = " << format_double(rep.residual) << '\n';
  if (rep.branch == qcorr::Branch::tie && rep.branch_values) {
    const qcorr::MixedBranchValues& bv = *rep.branch_values;
    os << "tie: minus branch (canonical) C2 = " << format_double(bv.c2_minus)
       << ", plus branch C2 = " << format_double(bv.c2_plus) << '\n';
    os << "tie: L2 minus = " << format_double(bv.l2_minus)
       << ", plus = " << format_double(bv.l2_plus) << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"closed-form pairwise correlations of the balanced multi-qubit family, "
               "with a numerical-minimization verifier"};
  app.require_subcommand(1);

  int threads = 0;
  app.add_option("--threads", threads, "cap the OpenMP thread count (0 = default)");

  // ---- point ----
  auto* point = app.add_subcommand("point", "report T2/D2/C2/L2 at one (scheme, n[, k], s)");
  std::string point_scheme;
  int point_n = 2;
  std::optional<int> point_k;
  std::optional<double> point_s, point_omega;
  point->add_option("--scheme", point_scheme, "pure | mixed")->required();
  point->add_option("--n", point_n, "total qubit count (>= 2)")->required();
  point->add_option("--k", point_k, "block size for the pure scheme (1 <= k <= n-1)");
  point->add_option("--s", point_s, "overlap in [0,1]");
  point->add_option("--omega", point_omega, "amplitude parameter in [0,1]; converted to s");

  // ---- sweep ----
  auto* sweep = app.add_subcommand("sweep", "evaluate a report per point of an s grid");
  std::string sweep_scheme, sweep_format = "csv", sweep_out;
  int sweep_n = 2, sweep_steps = 2;
  std::optional<int> sweep_k;
  double sweep_s0 = 0.0, sweep_s1 = 1.0;
  sweep->add_option("--scheme", sweep_scheme, "pure | mixed")->required();
  sweep->add_option("--n", sweep_n, "total qubit count (>= 2)")->required();
  sweep->add_option("--k", sweep_k, "block size for the pure scheme");
  sweep->add_option("--s-start", sweep_s0, "grid start (default 0)");
  sweep->add_option("--s-end", sweep_s1, "grid end (default 1)");
  sweep->add_option("--steps", sweep_steps, "grid size including both endpoints (>= 2)")
      ->required();
  sweep->add_option("--format", sweep_format, "csv | json (default csv)");
  sweep->add_option("--out", sweep_out, "output path (default stdout)");

  // ---- plotdata ----
  auto* plot = app.add_subcommand("plotdata", "figure table: quantity versus s, one column per n");
  std::string plot_quantity, plot_out;
  std::vector<int> plot_nlist;
  int plot_steps = 201;
  plot->add_option("--quantity", plot_quantity, "T2 | D2 | C2 | L2")->required();
  plot->add_option("--n-list", plot_nlist, "qubit counts, e.g. --n-list 2 3 4")
      ->required()
      ->expected(-1);
  plot->add_option("--steps", plot_steps, "grid size (default 201)");
  plot->add_option("--out", plot_out, "output path (default stdout)");

  // ---- verify ----
  auto* verify = app.add_subcommand("verify", "run the closed-form self-verification suite");
  int verify_grid = 9, verify_starts = 32;
  std::uint64_t verify_seed = 42;
  std::optional<double> verify_tol;
  verify->add_option("--grid", verify_grid, "interior s samples per n (default 9)");
  verify->add_option("--seed", verify_seed, "oracle seed (default 42)");
  verify->add_option("--starts", verify_starts, "oracle multi-starts (default 32)");
  verify->add_option("--tolerance", verify_tol,
                     "override the oracle-equivalence tolerances "
                     "(defaults: 1e-6 product, 1e-5 classical)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

#ifdef _OPENMP
  if (threads > 0) omp_set_num_threads(threads);
#endif

  try {
    if (*point) {
      const qcorr::Scheme scheme = parse_scheme(point_scheme);
      const qcorr::Overlap ov = resolve_overlap(point_s, point_omega);
      if (scheme == qcorr::Scheme::pure_split && !point_k)
        throw std::invalid_argument("k is required for the pure scheme");
      if (scheme == qcorr::Scheme::traced_pair && point_k)
        throw std::invalid_argument("k is only valid for the pure scheme");
      const qcorr::PartitionSpec part = scheme == qcorr::Scheme::pure_split
                                            ? qcorr::PartitionSpec::pure_split(point_n, *point_k)
                                            : qcorr::PartitionSpec::traced_pair(point_n);
      print_point(qcorr::report(part, ov), std::cout);
      return kExitOk;
    }

    if (*sweep) {
      qcorr::SweepConfig cfg;
      cfg.scheme = parse_scheme(sweep_scheme);
      cfg.n = sweep_n;
      cfg.k = sweep_k;
      cfg.s_start = sweep_s0;
      cfg.s_end = sweep_s1;
      cfg.steps = sweep_steps;
      cfg.validate();
      const auto rows = qcorr::evaluate_sweep(cfg);
      const std::string payload = parse_format(sweep_format) == qcorr::OutputFormat::csv
                                      ? qcorr::to_csv(rows)
                                      : qcorr::to_json(rows);
      return write_output(sweep_out, payload);
    }

    if (*plot) {
      qcorr::Quantity q;
      if (plot_quantity == "T2")
        q = qcorr::Quantity::t2;
      else if (plot_quantity == "D2")
        q = qcorr::Quantity::d2;
      else if (plot_quantity == "C2")
        q = qcorr::Quantity::c2;
      else if (plot_quantity == "L2")
        q = qcorr::Quantity::l2;
      else
        throw std::invalid_argument("quantity must be one of T2, D2, C2, L2");
      return write_output(plot_out, qcorr::plotdata_table(plot_nlist, q, plot_steps));
    }

    if (*verify) {
      qcorr::VerifyOptions opt;
      if (verify_grid < 1) throw std::invalid_argument("grid must be >= 1");
      opt.s_samples = verify_grid;
      opt.seed = verify_seed;
      opt.starts = verify_starts;
      if (verify_tol) {
        opt.product_tol = *verify_tol;
        opt.classical_tol = *verify_tol;
      }
      const qcorr::VerifySummary summary = qcorr::run_verification(opt);
      qcorr::print_summary(summary, std::cout);
      return summary.all_passed() ? kExitOk : kExitVerifyFailed;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  }
  return kExitOk;
}
