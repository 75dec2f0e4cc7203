#include "qcorr/verify.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

#include "qcorr/correlations.hpp"
#include "qcorr/oracle.hpp"
#include "qcorr/states.hpp"

namespace qcorr {

namespace {

// Tr(rho_a rho_b) in coefficient space.
double trace_product(const FanoMatrix& a, const FanoMatrix& b) {
  double sum = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) sum += a.r[i][j] * b.r[i][j];
  return 0.25 * sum;
}

std::string point_label(Scheme scheme, int n, int k, double s) {
  std::ostringstream os;
  os << to_string(scheme) << " n=" << n;
  if (scheme == Scheme::pure_split) os << " k=" << k;
  os << " s=" << s;
  return os.str();
}

struct StatePoint {
  Scheme scheme;
  int n;
  int k;  // 0 for traced pair
  double s;
  FanoMatrix fano;
};

// Interior grid i/(samples+1) plus the endpoints 0 and 1.
std::vector<double> s_grid(int samples, bool endpoints) {
  std::vector<double> grid;
  if (endpoints) grid.push_back(0.0);
  for (int i = 1; i <= samples; ++i)
    grid.push_back(static_cast<double>(i) / (samples + 1));
  if (endpoints) grid.push_back(1.0);
  return grid;
}

std::vector<StatePoint> make_states(const VerifyOptions& opt, bool endpoints,
                                    bool all_k) {
  std::vector<StatePoint> states;
  for (int n = opt.n_min; n <= opt.n_max; ++n) {
    for (double s : s_grid(opt.s_samples, endpoints)) {
      const Overlap ov(s);
      states.push_back({Scheme::traced_pair, n, 0, s, mixed_pair_fano(n, ov)});
      const int k_hi = all_k ? n - 1 : n / 2;
      for (int k = 1; k <= k_hi; ++k)
        states.push_back({Scheme::pure_split, n, k, s, pure_partition_fano(n, k, ov)});
    }
  }
  if (opt.mutate_state)
    for (auto& st : states) opt.mutate_state(st.fano);
  return states;
}

CheckResult check_additivity(const VerifyOptions& opt) {
  CheckResult res{"additivity", 0, true, ""};
  for (int n = opt.n_min; n <= opt.n_max && res.passed; ++n) {
    for (double s : s_grid(opt.s_samples, true)) {
      std::vector<PartitionSpec> parts{PartitionSpec::traced_pair(n)};
      for (int k = 1; k <= n - 1; ++k) parts.push_back(PartitionSpec::pure_split(n, k));
      for (const auto& p : parts) {
        const CorrelationReport rep = report(p, Overlap(s));
        ++res.cases;
        if (std::abs(rep.residual) > 1e-12) {
          res.passed = false;
          res.first_failure = point_label(p.scheme(), n, p.has_k() ? p.k() : 0, s) +
                              ": |residual| = " + std::to_string(std::abs(rep.residual));
          break;
        }
      }
      if (!res.passed) break;
    }
  }
  return res;
}

CheckResult check_scheme_agreement(const VerifyOptions& opt) {
  CheckResult res{"scheme-agreement-n2", 0, true, ""};
  for (double s : s_grid(opt.s_samples, true)) {
    const CorrelationReport pure = report(PartitionSpec::pure_split(2, 1), Overlap(s));
    const CorrelationReport mixed = report(PartitionSpec::traced_pair(2), Overlap(s));
    ++res.cases;
    const double diff =
        std::max({std::abs(pure.t2 - mixed.t2), std::abs(pure.d2 - mixed.d2),
                  std::abs(pure.c2 - mixed.c2), std::abs(pure.l2 - mixed.l2)});
    if (diff > 1e-12) {
      res.passed = false;
      res.first_failure = "s=" + std::to_string(s) + ": component diff " + std::to_string(diff);
      return res;
    }
  }
  return res;
}

CheckResult check_branch_point(const VerifyOptions& opt) {
  CheckResult res{"branch-point-n3", 0, true, ""};
  auto fail = [&res](const std::string& msg) {
    res.passed = false;
    if (res.first_failure.empty()) res.first_failure = msg;
  };

  const double s_star = std::sqrt(2.0) - 1.0;
  const CorrelationReport rep = report(PartitionSpec::traced_pair(3), Overlap(s_star));
  const KSpectrum ks = k_spectrum(mixed_pair_fano(3, Overlap(s_star)));
  ++res.cases;
  if (std::abs(ks.lambda1 - ks.lambda3) > 1e-9)
    fail("lambda1 != lambda3 at the n=3 tie point");
  ++res.cases;
  if (!rep.branch_values) {
    fail("traced-pair report is missing branch values");
    return res;
  }
  if (std::abs(rep.branch_values->d2_minus - rep.branch_values->d2_plus) > 1e-9)
    fail("discord branches disagree at the n=3 tie point");
  ++res.cases;
  const double jump = rep.branch_values->c2_plus - rep.branch_values->c2_minus;
  if (std::abs(jump - 0.171) > 0.01)
    fail("classical-correlation jump " + std::to_string(jump) + " outside 0.171 +- 0.01");

  // branch flips exactly once on [0,1] for every n in range
  for (int n = opt.n_min; n <= opt.n_max; ++n) {
    ++res.cases;
    int flips = 0;
    Branch prev = branch_select(n, Overlap(0.0));
    for (int i = 1; i <= 1000; ++i) {
      const Branch b = branch_select(n, Overlap(i / 1000.0));
      if (b != Branch::tie && prev != Branch::tie && b != prev) ++flips;
      if (b != Branch::tie) prev = b;
    }
    if (flips > 1) fail("branch flips " + std::to_string(flips) + " times for n=" + std::to_string(n));
  }
  return res;
}

CheckResult check_fixed_points(const VerifyOptions& opt,
                               const std::vector<StatePoint>& states) {
  (void)opt;
  CheckResult res{"classical-fixed-point", 0, true, ""};
  for (const auto& st : states) {
    std::vector<FanoMatrix> chis;
    if (st.scheme == Scheme::pure_split) {
      chis.push_back(closest_classical_pure(st.n, st.k, Overlap(st.s)));
    } else {
      FanoMatrix chi_minus = FanoMatrix::identity();
      chi_minus.r[3][0] = chi_minus.r[0][3] = st.fano.r[3][0];
      chi_minus.r[3][3] = st.fano.r[3][3];
      FanoMatrix chi_plus = FanoMatrix::identity();
      chi_plus.r[0][3] = st.fano.r[0][3];
      chi_plus.r[1][1] = st.fano.r[1][1];
      chis.push_back(chi_minus);
      chis.push_back(chi_plus);
    }
    for (const auto& chi : chis) {
      ++res.cases;
      const double defect = std::abs(trace_product(st.fano, chi) - trace_product(chi, chi));
      if (defect > 1e-12) {
        res.passed = false;
        res.first_failure =
            point_label(st.scheme, st.n, st.k, st.s) + ": fixed-point defect " + std::to_string(defect);
        return res;
      }
    }
  }
  return res;
}

CheckResult check_density_validity(const VerifyOptions& opt,
                                   const std::vector<StatePoint>& states) {
  (void)opt;
  CheckResult res{"density-validity", 0, true, ""};
  for (const auto& st : states) {
    std::vector<FanoMatrix> family{st.fano};
    const ClosestStateParam param =
        st.scheme == Scheme::pure_split
            ? closest_product_pure(st.fano).first
            : cardano_c3(st.fano.r[3][0], st.fano.r[3][3]);
    family.push_back(symmetric_product_state(param.value));

    FanoMatrix chi_minus = FanoMatrix::identity();
    chi_minus.r[3][0] = chi_minus.r[0][3] = st.fano.r[3][0];
    chi_minus.r[3][3] = st.fano.r[3][3];
    family.push_back(chi_minus);
    if (st.scheme == Scheme::traced_pair) {
      FanoMatrix chi_plus = FanoMatrix::identity();
      chi_plus.r[0][3] = st.fano.r[0][3];
      chi_plus.r[1][1] = st.fano.r[1][1];
      family.push_back(chi_plus);
      FanoMatrix pi_plus = FanoMatrix::identity();
      pi_plus.r[0][3] = st.fano.r[0][3];
      family.push_back(pi_plus);
    }

    for (const auto& f : family) {
      ++res.cases;
      const DensityValidity verdict = validate_density(fano_to_density(f));
      if (!verdict.ok()) {
        res.passed = false;
        res.first_failure =
            point_label(st.scheme, st.n, st.k, st.s) + ": " + verdict.describe();
        return res;
      }
    }
  }
  return res;
}

// The closed forms below are evaluated from (scheme, n, k, s), never from the
// state table the oracle sees, so an injected coefficient error shows up as a
// closed-vs-oracle disagreement.

CheckResult check_oracle_product(const VerifyOptions& opt,
                                 const std::vector<StatePoint>& states) {
  CheckResult res{"oracle-product-equivalence", 0, true, ""};
  OracleOptions oopt;
  oopt.starts = opt.starts;
  oopt.seed = opt.seed;
  oopt.parallel = opt.parallel;
  for (const auto& st : states) {
    ++res.cases;
    const Overlap ov(st.s);
    const auto [param, pi] = st.scheme == Scheme::pure_split
                                 ? closest_product_pure(pure_partition_fano(st.n, st.k, ov))
                                 : closest_product_mixed(st.n, ov);
    const FanoMatrix formula_state = st.scheme == Scheme::pure_split
                                         ? pure_partition_fano(st.n, st.k, ov)
                                         : mixed_pair_fano(st.n, ov);
    const double closed = hs_distance_sq(formula_state, pi);
    const double numeric = nearest_product_numeric(st.fano, oopt).min_distance_sq;
    if (numeric - closed < -1e-8 || numeric - closed > opt.product_tol) {
      res.passed = false;
      res.first_failure = point_label(st.scheme, st.n, st.k, st.s) + ": closed " +
                          std::to_string(closed) + " vs oracle " + std::to_string(numeric);
      return res;
    }
  }
  return res;
}

CheckResult check_oracle_classical(const VerifyOptions& opt,
                                   const std::vector<StatePoint>& states) {
  CheckResult res{"oracle-classical-equivalence", 0, true, ""};
  OracleOptions oopt;
  oopt.starts = opt.starts;
  oopt.seed = opt.seed;
  oopt.parallel = opt.parallel;
  for (const auto& st : states) {
    ++res.cases;
    const Overlap ov(st.s);
    const double closed = st.scheme == Scheme::pure_split
                              ? discord_pure(st.n, st.k, ov)
                              : discord_mixed(st.n, ov).first;
    const double numeric = nearest_classical_numeric(st.fano, oopt).min_distance_sq;
    if (numeric - closed < -1e-8 || numeric - closed > opt.classical_tol) {
      res.passed = false;
      res.first_failure = point_label(st.scheme, st.n, st.k, st.s) + ": closed D2 " +
                          std::to_string(closed) + " vs oracle " + std::to_string(numeric);
      return res;
    }
  }
  return res;
}

}  // namespace

bool VerifySummary::all_passed() const {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

VerifySummary run_verification(const VerifyOptions& opt) {
  VerifySummary summary;
  summary.checks.push_back(check_additivity(opt));
  summary.checks.push_back(check_scheme_agreement(opt));
  summary.checks.push_back(check_branch_point(opt));

  // dense grid with endpoints for the structural checks
  const std::vector<StatePoint> dense = make_states(opt, true, true);
  summary.checks.push_back(check_fixed_points(opt, dense));
  summary.checks.push_back(check_density_validity(opt, dense));

  // interior grid, k up to n/2, for the minimization checks
  const std::vector<StatePoint> interior = make_states(opt, false, false);
  summary.checks.push_back(check_oracle_product(opt, interior));
  summary.checks.push_back(check_oracle_classical(opt, interior));
  return summary;
}

void print_summary(const VerifySummary& summary, std::ostream& os) {
  for (const auto& c : summary.checks) {
    os << (c.passed ? "PASS" : "FAIL") << "  " << c.name << "  (" << c.cases << " cases)";
    if (!c.passed) os << "  first failure: " << c.first_failure;
    os << '\n';
  }
  os << (summary.all_passed() ? "all checks passed" : "verification FAILED") << '\n';
}

}  // namespace qcorr
