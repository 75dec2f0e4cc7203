#pragma once

#include <array>
#include <cstdint>

#include "qcorr/fano.hpp"

namespace qcorr {

/// Bloch vectors of the two factors of a product state; norms <= 1.
struct ProductParam {
  std::array<double, 3> a{};
  std::array<double, 3> b{};
};

/// Parameters of a state invariant under a projective measurement on the
/// first qubit: u is the measured basis direction, v0/v1 the eigenbases of
/// the conditional second-qubit states for the two outcomes, p the joint
/// outcome distribution.  Setting v0 = v1 recovers states diagonal in a
/// fixed product basis.
struct ClassicalParam {
  std::array<double, 3> u{0.0, 0.0, 1.0};
  std::array<double, 3> v0{0.0, 0.0, 1.0};
  std::array<double, 3> v1{0.0, 0.0, 1.0};
  std::array<double, 4> p{0.25, 0.25, 0.25, 0.25};
};

template <typename Param>
struct OracleResult {
  double min_distance_sq = 0.0;
  Param argmin{};
  int starts = 0;
  double converged_fraction = 0.0;  // fraction of starts that met the tolerance
};

struct OracleOptions {
  int starts = 32;
  double tol = 1e-10;        // convergence tolerance on the objective spread
  int max_iterations = 10000;
  std::uint64_t seed = 42;
  bool parallel = true;      // false selects the serial reference path
};

/// Coefficients of the product state rho_a (x) rho_b:
/// r[i][0] = a_i, r[0][j] = b_j, r[i][j] = a_i b_j.
FanoMatrix product_fano(const ProductParam& p);

/// Coefficients of sum_ij p_ij P_i(u) (x) P_j(v_i) with P_0/1(w) = (I +- w.sigma)/2.
/// Directions are normalized internally; near-zero vectors fall back to the z axis.
FanoMatrix classical_fano(const ClassicalParam& c);

/// Minimizes hs_distance_sq(f, product(a,b)) by multi-start Nelder-Mead over
/// the Bloch-ball box (norms above 1 projected back).  Requires starts >= 8.
/// Deterministic for a fixed seed, independent of the parallel flag.
OracleResult<ProductParam> nearest_product_numeric(const FanoMatrix& f,
                                                   const OracleOptions& opt = {});

/// Minimizes hs_distance_sq over the classical family.  Requires starts >= 16.
OracleResult<ClassicalParam> nearest_classical_numeric(const FanoMatrix& f,
                                                       const OracleOptions& opt = {});

/// Eigenvalues of a real symmetric 3x3 matrix, sorted descending, via the
/// trigonometric solution of the characteristic cubic.
/// Throws std::invalid_argument when asymmetric beyond 1e-12.
std::array<double, 3> sym3_eigenvalues(const std::array<std::array<double, 3>, 3>& k);

/// |d/dt hs_distance_sq(f, {1; t; t; t^2})| at t0 by central finite
/// differences with step 1e-5.  Near zero iff t0 is the stationary product
/// parameter of f.
double stationarity_check(const FanoMatrix& f, double t0);

}  // namespace qcorr
