#pragma once

#include <array>
#include <complex>
#include <string>

namespace qcorr {

using Complex = std::complex<double>;

/// 2x2 Pauli matrix sigma_alpha, alpha in {0,1,2,3} (0 = identity).
/// Standard phase convention: sigma_2 has entries -i, +i.
/// Throws std::out_of_range for alpha outside {0,1,2,3}.
const std::array<std::array<Complex, 2>, 2>& pauli_matrix(int alpha);

/// Real coefficient table of a two-qubit operator in the Pauli tensor basis:
///   rho = (1/4) sum_{ab} r[a][b] sigma_a (x) sigma_b,   r[a][b] = Tr(rho sigma_a (x) sigma_b).
/// Physical states have r[0][0] = 1 and |r[a][b]| <= 1.
struct FanoMatrix {
  std::array<std::array<double, 4>, 4> r{};

  /// Coefficients of the maximally mixed state (r[0][0] = 1, rest 0).
  static FanoMatrix identity();

  double& at(int a, int b) { return r[a][b]; }
  double at(int a, int b) const { return r[a][b]; }
};

/// Concrete 4x4 complex matrix in the computational product basis |00>, |01>, |10>, |11>.
struct DensityMatrix4 {
  std::array<std::array<Complex, 4>, 4> m{};
};

/// Expand a coefficient table into the concrete 4x4 matrix.
/// Hermitian by construction since the coefficients are real.
DensityMatrix4 fano_to_density(const FanoMatrix& f);

/// Inverse conversion, r[a][b] = Tr(d sigma_a (x) sigma_b).
/// Throws std::invalid_argument when d is non-Hermitian beyond 1e-9 entrywise.
FanoMatrix density_to_fano(const DensityMatrix4& d);

/// Squared Hilbert-Schmidt distance, (1/4) sum (a_r - b_r)^2.
/// Equals Tr[(A - B)^2] for the corresponding matrices.
double hs_distance_sq(const FanoMatrix& a, const FanoMatrix& b);

/// Tr(rho^2) = (1/4) sum r^2.  In [1/4, 1] for physical states.
double purity(const FanoMatrix& f);

/// Antisymmetric part of the linear relative entropy: purity(a) - purity(b),
/// i.e. the linear-entropy difference S2(b) - S2(a).
double s_minus(const FanoMatrix& a, const FanoMatrix& b);

/// Result of checking the density-matrix invariants.  Instead of failing,
/// reports which invariant is violated and by how much.
struct DensityValidity {
  enum class Kind { ok, hermiticity, trace, negativity };
  Kind kind = Kind::ok;
  double magnitude = 0.0;  // size of the worst violation

  bool ok() const { return kind == Kind::ok; }
  std::string describe() const;
};

/// Checks Hermiticity (1e-12 entrywise), unit trace (1e-12) and spectrum
/// >= -1e-12 via a 4x4 Hermitian eigensolver.
DensityValidity validate_density(const DensityMatrix4& d);

/// Eigenvalues of a (presumed Hermitian) 4x4 matrix, sorted descending.
std::array<double, 4> hermitian4_eigenvalues(const DensityMatrix4& d);

}  // namespace qcorr
