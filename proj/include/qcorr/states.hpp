#pragma once

#include "qcorr/fano.hpp"

namespace qcorr {

/// Overlap s in [0,1] between the two branch coherent states; the single
/// real knob of the state family.  Related to the amplitude parameter by
/// s = 2*omega - 1.
class Overlap {
 public:
  /// Throws std::domain_error outside [0,1] (or non-finite).
  explicit Overlap(double s);

  double s() const { return s_; }
  double omega() const { return 0.5 * (1.0 + s_); }

 private:
  double s_;
};

struct OmegaConversion {
  Overlap overlap;
  bool reflected;  // true when omega < 1/2 was mapped through omega -> 1-omega
};

/// Converts the amplitude parameter omega in [0,1] to the canonical overlap.
/// Values below 1/2 describe the mirrored state and are folded to 1-omega.
/// Throws std::domain_error outside [0,1].
OmegaConversion overlap_from_omega(double omega);

enum class Scheme { pure_split, traced_pair };

const char* to_string(Scheme s);

/// Which bipartition of the n-qubit state is analyzed: a k | n-k block split
/// (pure two-"qubit" state) or the two-qubit reduction by partial trace.
class PartitionSpec {
 public:
  /// Requires n >= 2 and 1 <= k <= n-1; throws std::invalid_argument.
  static PartitionSpec pure_split(int n, int k);
  /// Requires n >= 2; throws std::invalid_argument.
  static PartitionSpec traced_pair(int n);

  Scheme scheme() const { return scheme_; }
  int n() const { return n_; }
  bool has_k() const { return scheme_ == Scheme::pure_split; }
  int k() const;  // throws std::logic_error for the traced-pair scheme

 private:
  PartitionSpec(Scheme scheme, int n, int k) : scheme_(scheme), n_(n), k_(k) {}
  Scheme scheme_;
  int n_;
  int k_;
};

/// Eigenvalues of the k-block marginal of the split state; sum to 1.
struct SchmidtPair {
  double lambda_plus;
  double lambda_minus;
};

/// Weights of the rank-2 form of the traced two-qubit state; sum to 1.
struct MixedSpectrum {
  double p_plus;
  double p_minus;
};

/// x^e for integer e >= 0 by repeated multiplication; pow_int(x, 0) == 1
/// exactly, including x == 0.
double pow_int(double x, int e);

/// lambda_pm = (1/2) (1 +- (s^k + s^(n-k)) / (1 + s^n)).
SchmidtPair schmidt_coefficients(int n, int k, Overlap s);

/// Coefficient table of the pure k | n-k split state:
///   r30 = r03 = (s^k + s^(n-k)) / (1 + s^n),
///   r11 = -r22 = sqrt((1 - s^2k)(1 - s^2(n-k))) / (1 + s^n),  r33 = 1.
/// The result is pure (purity 1) and symmetric under k <-> n-k.
FanoMatrix pure_partition_fano(int n, int k, Overlap s);

/// Coefficient table of the two-qubit reduction.  With N2 = 1/(2 + 2 s^n):
///   r11 = 2 N2 (1 - s^2),       r22 = -2 N2 (1 - s^2) s^(n-2),
///   r33 = 2 N2 (s^2 + s^(n-2)), r03 = r30 = 2 N2 (s + s^(n-1)).
FanoMatrix mixed_pair_fano(int n, Overlap s);

/// p_pm = (1 +- s^(n-2))(1 +- s^2) / (2 (1 + s^n)); the nonzero eigenvalues
/// of the traced two-qubit state.
MixedSpectrum mixed_pair_spectrum(int n, Overlap s);

}  // namespace qcorr
