#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qcorr/correlations.hpp"

namespace qcorr {

enum class OutputFormat { csv, json };

enum class Quantity { t2, d2, c2, l2 };

const char* to_string(Quantity q);

/// One sweep: a fixed (scheme, n[, k]) evaluated on an inclusive s grid.
struct SweepConfig {
  Scheme scheme = Scheme::traced_pair;
  int n = 2;
  std::optional<int> k;  // present iff scheme == pure_split
  double s_start = 0.0;
  double s_end = 1.0;
  int steps = 2;

  /// Throws std::invalid_argument naming the violated constraint.
  void validate() const;
};

/// Inclusive grid s_i = s_start + i (s_end - s_start) / (steps - 1).
std::vector<double> sweep_grid(double s_start, double s_end, int steps);

/// Evaluates a report per grid point.  parallel = true uses the OpenMP
/// kernel; false is the serial reference.  Rows are stored in grid order, so
/// the output is identical either way.
std::vector<CorrelationReport> evaluate_sweep(const SweepConfig& cfg, bool parallel = true);

/// One report per (partition, s) pair; the two vectors must have equal size.
std::vector<CorrelationReport> evaluate_points(const std::vector<PartitionSpec>& parts,
                                               const std::vector<double>& s_values,
                                               bool parallel = true);

/// Decimal, 17 significant digits, '.' separator, no locale; lossless for
/// round-tripping doubles.
std::string format_double(double x);

/// CSV with the fixed column schema
///   scheme,n,k,s,omega,branch,closest_param,T2,D2,C2,L2,residual
/// (header row included, LF newlines, k empty for the traced-pair scheme).
std::string to_csv(const std::vector<CorrelationReport>& rows);

/// The same rows as a JSON array of objects (keys in schema order).
std::string to_json(const std::vector<CorrelationReport>& rows);

/// Plot table for the traced-pair scheme: first column s, one column per n.
/// Includes a header comment naming the figure the quantity reproduces
/// (T2 -> figure 1, D2 -> 2, C2 -> 3, L2 -> 4).
std::string plotdata_table(const std::vector<int>& n_list, Quantity q, int steps,
                           bool parallel = true);

}  // namespace qcorr
