#include "qcorr/sweep.hpp"

#include <cstdio>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace qcorr {

namespace {

PartitionSpec partition_of(const SweepConfig& cfg) {
  return cfg.scheme == Scheme::pure_split ? PartitionSpec::pure_split(cfg.n, *cfg.k)
                                          : PartitionSpec::traced_pair(cfg.n);
}

}  // namespace

const char* to_string(Quantity q) {
  switch (q) {
    case Quantity::t2:
      return "T2";
    case Quantity::d2:
      return "D2";
    case Quantity::c2:
      return "C2";
    case Quantity::l2:
      return "L2";
  }
  return "?";
}

void SweepConfig::validate() const {
  if (n < 2) throw std::invalid_argument("n must be >= 2");
  if (scheme == Scheme::pure_split) {
    if (!k.has_value()) throw std::invalid_argument("k is required for the pure scheme");
    if (*k < 1 || *k > n - 1) throw std::invalid_argument("k must satisfy 1 <= k <= n-1");
  } else if (k.has_value()) {
    throw std::invalid_argument("k is only valid for the pure scheme");
  }
  if (!(s_start >= 0.0 && s_start <= s_end && s_end <= 1.0))
    throw std::invalid_argument("s range must satisfy 0 <= s_start <= s_end <= 1");
  if (steps < 2) throw std::invalid_argument("steps must be >= 2");
}

std::vector<double> sweep_grid(double s_start, double s_end, int steps) {
  std::vector<double> grid(static_cast<std::size_t>(steps));
  const double span = s_end - s_start;
  for (int i = 0; i < steps; ++i)
    grid[static_cast<std::size_t>(i)] = s_start + i * span / (steps - 1);
  return grid;
}

std::vector<CorrelationReport> evaluate_points(const std::vector<PartitionSpec>& parts,
                                               const std::vector<double>& s_values,
                                               bool parallel) {
  if (parts.size() != s_values.size())
    throw std::invalid_argument("evaluate_points: size mismatch");

  // Slots are written by grid index, so the assembled output does not depend
  // on the parallelism degree.
  std::vector<std::optional<CorrelationReport>> slots(parts.size());
  const auto count = static_cast<std::ptrdiff_t>(parts.size());
  if (parallel) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
      const auto u = static_cast<std::size_t>(i);
      slots[u] = report(parts[u], Overlap(s_values[u]));
    }
  } else {
    for (std::ptrdiff_t i = 0; i < count; ++i) {
      const auto u = static_cast<std::size_t>(i);
      slots[u] = report(parts[u], Overlap(s_values[u]));
    }
  }

  std::vector<CorrelationReport> rows;
  rows.reserve(slots.size());
  for (auto& slot : slots) rows.push_back(std::move(*slot));
  return rows;
}

std::vector<CorrelationReport> evaluate_sweep(const SweepConfig& cfg, bool parallel) {
  cfg.validate();
  const PartitionSpec part = partition_of(cfg);
  const std::vector<double> grid = sweep_grid(cfg.s_start, cfg.s_end, cfg.steps);
  return evaluate_points(std::vector<PartitionSpec>(grid.size(), part), grid, parallel);
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string to_csv(const std::vector<CorrelationReport>& rows) {
  std::string out = "scheme,n,k,s,omega,branch,closest_param,T2,D2,C2,L2,residual\n";
  for (const auto& row : rows) {
    const PartitionSpec& p = row.partition;
    out += to_string(p.scheme());
    out += ',';
    out += std::to_string(p.n());
    out += ',';
    if (p.has_k()) out += std::to_string(p.k());
    out += ',';
    out += format_double(row.s);
    out += ',';
    out += format_double(0.5 * (1.0 + row.s));
    out += ',';
    out += to_string(row.branch);
    out += ',';
    out += format_double(row.closest.value);
    out += ',';
    out += format_double(row.t2);
    out += ',';
    out += format_double(row.d2);
    out += ',';
    out += format_double(row.c2);
    out += ',';
    out += format_double(row.l2);
    out += ',';
    out += format_double(row.residual);
    out += '\n';
  }
  return out;
}

std::string to_json(const std::vector<CorrelationReport>& rows) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& row : rows) {
    const PartitionSpec& p = row.partition;
    nlohmann::ordered_json obj;
    obj["scheme"] = to_string(p.scheme());
    obj["n"] = p.n();
    if (p.has_k())
      obj["k"] = p.k();
    else
      obj["k"] = nullptr;
    obj["s"] = row.s;
    obj["omega"] = 0.5 * (1.0 + row.s);
    obj["branch"] = to_string(row.branch);
    obj["closest_param"] = row.closest.value;
    obj["T2"] = row.t2;
    obj["D2"] = row.d2;
    obj["C2"] = row.c2;
    obj["L2"] = row.l2;
    obj["residual"] = row.residual;
    if (row.branch_values) {
      const MixedBranchValues& bv = *row.branch_values;
      obj["branches"] = {{"D2_minus", bv.d2_minus}, {"D2_plus", bv.d2_plus},
                         {"C2_minus", bv.c2_minus}, {"C2_plus", bv.c2_plus},
                         {"L2_minus", bv.l2_minus}, {"L2_plus", bv.l2_plus}};
    }
    arr.push_back(std::move(obj));
  }
  return arr.dump(2) + "\n";
}

std::string plotdata_table(const std::vector<int>& n_list, Quantity q, int steps,
                           bool parallel) {
  if (n_list.empty()) throw std::invalid_argument("n list must not be empty");
  for (int n : n_list)
    if (n < 2) throw std::invalid_argument("n must be >= 2");
  if (steps < 2) throw std::invalid_argument("steps must be >= 2");

  const int figure = q == Quantity::t2 ? 1 : q == Quantity::d2 ? 2 : q == Quantity::c2 ? 3 : 4;
  const std::vector<double> grid = sweep_grid(0.0, 1.0, steps);

  std::vector<std::vector<CorrelationReport>> columns;
  columns.reserve(n_list.size());
  for (int n : n_list) {
    SweepConfig cfg;
    cfg.scheme = Scheme::traced_pair;
    cfg.n = n;
    cfg.steps = steps;
    columns.push_back(evaluate_sweep(cfg, parallel));
  }

  std::string out = "# figure " + std::to_string(figure) + ": " +
                    std::string(to_string(q)) +
                    " of the traced two-qubit state versus the overlap s\n";
  out += "s";
  for (int n : n_list) out += "," + std::string(to_string(q)) + "(n=" + std::to_string(n) + ")";
  out += '\n';
  for (std::size_t i = 0; i < grid.size(); ++i) {
    out += format_double(grid[i]);
    for (std::size_t c = 0; c < columns.size(); ++c) {
      const CorrelationReport& row = columns[c][i];
      const double v = q == Quantity::t2   ? row.t2
                       : q == Quantity::d2 ? row.d2
                       : q == Quantity::c2 ? row.c2
                                           : row.l2;
      out += ',';
      out += format_double(v);
    }
    out += '\n';
  }
  return out;
}

}  // namespace qcorr
