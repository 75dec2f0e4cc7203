#pragma once

#include <optional>
#include <utility>

#include "qcorr/states.hpp"

namespace qcorr {

/// Which eigenvalue ordering of the K matrix holds.  Minus: lambda1 <= lambda3
/// (closest classical state diagonal along the z axes); Plus: lambda1 >= lambda3;
/// Tie: equal within 1e-12 on the selection expression.
enum class Branch { minus, plus, tie };

const char* to_string(Branch b);

inline constexpr double kBranchTol = 1e-12;

/// Eigenvalues of K = x x^T + R R^T for states with a z-axis local Bloch
/// vector and diagonal correlation block: lambda1 = r11^2, lambda2 = r22^2,
/// lambda3 = r30^2 + r33^2.
struct KSpectrum {
  double lambda1;
  double lambda2;
  double lambda3;
  double lambda_max;
};

/// Parameter of the closest product state: a3 (pure scheme, a3^3 = r30) or
/// c3 (mixed scheme, root of c^3 + c(1 - r33) - r30 = 0).  delta is the
/// Cardano discriminant, used by the mixed scheme only.
struct ClosestStateParam {
  double value = 0.0;
  double delta = 0.0;
};

/// Both branch evaluations, exposed for the traced-pair scheme so the
/// two-valued classical correlation at a tie is not hidden.
struct MixedBranchValues {
  double d2_minus;
  double d2_plus;
  double c2_minus;
  double c2_plus;
  double l2_minus;
  double l2_plus;
};

/// All four correlation measures for one (scheme, n, k, s), the branch tag,
/// the closest-product parameter and the additivity residual t2-d2-c2+l2
/// (always computed from the four values, never assumed zero).
struct CorrelationReport {
  PartitionSpec partition;
  double s;
  double t2;
  double d2;
  double c2;
  double l2;
  Branch branch;
  ClosestStateParam closest;
  double residual;
  std::optional<MixedBranchValues> branch_values;  // traced-pair scheme only
};

/// Product state with coefficients {1; t on (3,0),(0,3); t^2 on (3,3)} --
/// equal z-polarized factors.
FanoMatrix symmetric_product_state(double t);

// ---- pure k | n-k scheme -------------------------------------------------

/// a3 = cbrt(r30) and the product state it parameterizes.
/// Expects the pure-scheme coefficient structure.
std::pair<ClosestStateParam, FanoMatrix> closest_product_pure(const FanoMatrix& f);

/// T2 = (1/4)[2(r03^2 - a3^2) + r11^2 + r22^2 + (r33^2 - a3^4)];
/// equals purity(rho) - purity(pi).
double total_pure(int n, int k, Overlap s);

/// D2 = 2 lambda+ lambda-.
double discord_pure(int n, int k, Overlap s);

/// Closest classical state: coefficients {1; r30 on (3,0),(0,3); r33 on (3,3)}.
FanoMatrix closest_classical_pure(int n, int k, Overlap s);

/// C2 = (1/4)[2(r03^2 - a3^2) + (r33^2 - a3^4)].  Signed; may be negative.
double classical_pure(int n, int k, Overlap s);

/// Identically zero for the pure scheme.
double l2_pure(int n, int k, Overlap s);

// ---- shared --------------------------------------------------------------

/// K spectrum for either scheme.  Throws std::invalid_argument when the
/// coefficient table has entries outside the symmetric-parity pattern
/// (slots (0,0), (3,0)=(0,3), (1,1), (2,2), (3,3)); general tables need the
/// full eigensolver in the oracle.  lambda_max ties break toward lambda3.
KSpectrum k_spectrum(const FanoMatrix& f);

// ---- traced-pair scheme --------------------------------------------------

/// Unique real root of c^3 + c(1 - r33) - r30 = 0 by Cardano's formula,
/// delta = r30^2 + (4/27)(1 - r33)^3.  Requires 0 <= r33 <= 1 so that
/// delta >= 0; tiny negative delta from rounding is clamped, anything below
/// -1e-15 is rejected with std::domain_error.
ClosestStateParam cardano_c3(double r30, double r33);

std::pair<ClosestStateParam, FanoMatrix> closest_product_mixed(int n, Overlap s);

/// T2 = (1/4)[2(r03^2 - c3^2) + r11^2 + r22^2 + (r33^2 - c3^4)].
double total_mixed(int n, Overlap s);

/// Sign of (s^2 + 1)(1 + s^(n-2)) - 2(1 - s^2): positive selects Minus
/// (lambda1 <= lambda3), negative selects Plus, |.| <= 1e-12 is a Tie.
Branch branch_select(int n, Overlap s);

/// Minus branch: (1/4)(lambda1 + lambda2); Plus: (1/4)(lambda2 + lambda3).
/// At a tie both agree and the minus form is returned as canonical.
std::pair<double, Branch> discord_mixed(int n, Overlap s);

/// Minus/tie: {1; r30 on (3,0),(0,3); r33 on (3,3)};
/// Plus: {1; r03 on (0,3); r11 on (1,1)}.
std::pair<FanoMatrix, Branch> closest_classical_mixed(int n, Overlap s);

/// Minus: (1/4)[2(r03^2 - c3^2) + (r33^2 - c3^4)] (signed, may be negative);
/// Plus: (1/4) r11^2.
std::pair<double, Branch> classical_mixed(int n, Overlap s);

/// Minus: exactly 0; Plus: (1/4)[2 c3^2 + c3^4 - r03^2].
std::pair<double, Branch> l2_mixed(int n, Overlap s);

// ---- aggregate -----------------------------------------------------------

CorrelationReport report(const PartitionSpec& p, Overlap s);

}  // namespace qcorr
