#include "qcorr/correlations.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qcorr {

namespace {

constexpr double kPatternTol = 1e-12;

// sign(x) |x|^(1/3); arguments that would underflow are treated as zero.
double cube_root(double x) {
  if (std::abs(x) < 1e-300) return 0.0;
  return std::cbrt(x);
}

double pure_total_from(const FanoMatrix& f, double a3) {
  const double a2 = a3 * a3;
  return 0.25 * (2.0 * (f.r[0][3] * f.r[0][3] - a2) + f.r[1][1] * f.r[1][1] +
                 f.r[2][2] * f.r[2][2] + (f.r[3][3] * f.r[3][3] - a2 * a2));
}

double classical_minus_from(const FanoMatrix& f, double c3) {
  const double c2 = c3 * c3;
  return 0.25 * (2.0 * (f.r[0][3] * f.r[0][3] - c2) + (f.r[3][3] * f.r[3][3] - c2 * c2));
}

FanoMatrix classical_minus_state(const FanoMatrix& f) {
  FanoMatrix chi = FanoMatrix::identity();
  chi.r[3][0] = chi.r[0][3] = f.r[3][0];
  chi.r[3][3] = f.r[3][3];
  return chi;
}

FanoMatrix classical_plus_state(const FanoMatrix& f) {
  FanoMatrix chi = FanoMatrix::identity();
  chi.r[0][3] = f.r[0][3];
  chi.r[1][1] = f.r[1][1];
  return chi;
}

}  // namespace

const char* to_string(Branch b) {
  switch (b) {
    case Branch::minus:
      return "minus";
    case Branch::plus:
      return "plus";
    case Branch::tie:
      return "tie";
  }
  return "?";
}

FanoMatrix symmetric_product_state(double t) {
  FanoMatrix f = FanoMatrix::identity();
  f.r[3][0] = f.r[0][3] = t;
  f.r[3][3] = t * t;
  return f;
}

std::pair<ClosestStateParam, FanoMatrix> closest_product_pure(const FanoMatrix& f) {
  const double a3 = cube_root(f.r[3][0]);
  return {ClosestStateParam{a3, 0.0}, symmetric_product_state(a3)};
}

double total_pure(int n, int k, Overlap s) {
  const FanoMatrix f = pure_partition_fano(n, k, s);
  return pure_total_from(f, cube_root(f.r[3][0]));
}

double discord_pure(int n, int k, Overlap s) {
  const SchmidtPair sp = schmidt_coefficients(n, k, s);
  return 2.0 * sp.lambda_plus * sp.lambda_minus;
}

FanoMatrix closest_classical_pure(int n, int k, Overlap s) {
  return classical_minus_state(pure_partition_fano(n, k, s));
}

double classical_pure(int n, int k, Overlap s) {
  const FanoMatrix f = pure_partition_fano(n, k, s);
  return classical_minus_from(f, cube_root(f.r[3][0]));
}

double l2_pure(int n, int k, Overlap s) {
  (void)PartitionSpec::pure_split(n, k);
  (void)s;
  return 0.0;
}

KSpectrum k_spectrum(const FanoMatrix& f) {
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      const bool allowed = (a == 0 && b == 0) || (a == 3 && b == 0) || (a == 0 && b == 3) ||
                           (a == b && a >= 1);
      if (!allowed && std::abs(f.r[a][b]) > kPatternTol)
        throw std::invalid_argument(
            "k_spectrum: coefficient outside the symmetric-parity pattern at (" +
            std::to_string(a) + "," + std::to_string(b) + ")");
    }
  }
  if (std::abs(f.r[3][0] - f.r[0][3]) > kPatternTol)
    throw std::invalid_argument("k_spectrum: r30 != r03, state lacks exchange symmetry");

  KSpectrum ks{};
  ks.lambda1 = f.r[1][1] * f.r[1][1];
  ks.lambda2 = f.r[2][2] * f.r[2][2];
  ks.lambda3 = f.r[3][0] * f.r[3][0] + f.r[3][3] * f.r[3][3];
  // ties break toward the (3,3)-axis eigenvalue
  const double m12 = std::max(ks.lambda1, ks.lambda2);
  ks.lambda_max = (ks.lambda3 >= m12) ? ks.lambda3 : m12;
  return ks;
}

ClosestStateParam cardano_c3(double r30, double r33) {
  if (!(r33 >= 0.0 && r33 <= 1.0 + 1e-12))
    throw std::domain_error("cardano_c3: r33 must lie in [0,1], got " + std::to_string(r33));
  const double one_minus = 1.0 - r33;
  double delta = r30 * r30 + (4.0 / 27.0) * one_minus * one_minus * one_minus;
  if (delta < -1e-15)
    throw std::domain_error("cardano_c3: negative discriminant " + std::to_string(delta));
  if (delta < 0.0) delta = 0.0;

  // c3 = cbrt(u) - cbrt(v) with u,v = (sqrt(delta) +- r30)/2.  Evaluating v
  // by subtraction cancels catastrophically when r33 is near 1; the product
  // identity u v = ((1 - r33)/3)^3 gives cbrt(v) = (1 - r33)/(3 cbrt(u)).
  const double magnitude = std::abs(r30);
  if (magnitude == 0.0) return {0.0, delta};
  const double u = 0.5 * (std::sqrt(delta) + magnitude);
  const double cbrt_u = cube_root(u);
  const double root = (cbrt_u < 1e-150) ? 0.0 : cbrt_u - one_minus / (3.0 * cbrt_u);
  return {std::copysign(root, r30), delta};
}

std::pair<ClosestStateParam, FanoMatrix> closest_product_mixed(int n, Overlap s) {
  const FanoMatrix f = mixed_pair_fano(n, s);
  const ClosestStateParam c = cardano_c3(f.r[3][0], f.r[3][3]);
  return {c, symmetric_product_state(c.value)};
}

double total_mixed(int n, Overlap s) {
  const FanoMatrix f = mixed_pair_fano(n, s);
  return pure_total_from(f, cardano_c3(f.r[3][0], f.r[3][3]).value);
}

Branch branch_select(int n, Overlap s) {
  (void)PartitionSpec::traced_pair(n);
  const double sv = s.s();
  const double expr =
      (sv * sv + 1.0) * (1.0 + pow_int(sv, n - 2)) - 2.0 * (1.0 - sv * sv);
  if (expr > kBranchTol) return Branch::minus;
  if (expr < -kBranchTol) return Branch::plus;
  return Branch::tie;
}

std::pair<double, Branch> discord_mixed(int n, Overlap s) {
  const Branch b = branch_select(n, s);
  const KSpectrum ks = k_spectrum(mixed_pair_fano(n, s));
  const double value = (b == Branch::plus) ? 0.25 * (ks.lambda2 + ks.lambda3)
                                           : 0.25 * (ks.lambda1 + ks.lambda2);
  return {value, b};
}

std::pair<FanoMatrix, Branch> closest_classical_mixed(int n, Overlap s) {
  const Branch b = branch_select(n, s);
  const FanoMatrix f = mixed_pair_fano(n, s);
  return {(b == Branch::plus) ? classical_plus_state(f) : classical_minus_state(f), b};
}

std::pair<double, Branch> classical_mixed(int n, Overlap s) {
  const Branch b = branch_select(n, s);
  const FanoMatrix f = mixed_pair_fano(n, s);
  if (b == Branch::plus) return {0.25 * f.r[1][1] * f.r[1][1], b};
  return {classical_minus_from(f, cardano_c3(f.r[3][0], f.r[3][3]).value), b};
}

std::pair<double, Branch> l2_mixed(int n, Overlap s) {
  const Branch b = branch_select(n, s);
  if (b != Branch::plus) return {0.0, b};
  const FanoMatrix f = mixed_pair_fano(n, s);
  const double c3 = cardano_c3(f.r[3][0], f.r[3][3]).value;
  const double c2 = c3 * c3;
  return {0.25 * (2.0 * c2 + c2 * c2 - f.r[0][3] * f.r[0][3]), b};
}

CorrelationReport report(const PartitionSpec& p, Overlap s) {
  if (p.scheme() == Scheme::pure_split) {
    const int n = p.n();
    const int k = p.k();
    const FanoMatrix f = pure_partition_fano(n, k, s);
    const auto [param, pi] = closest_product_pure(f);
    const double t2 = pure_total_from(f, param.value);
    const double d2 = discord_pure(n, k, s);
    const double c2 = classical_minus_from(f, param.value);
    const double l2 = 0.0;

    // lambda3 >= lambda1 always holds here; equality only at s = 0.
    const KSpectrum ks = k_spectrum(f);
    const Branch b =
        (ks.lambda3 - ks.lambda1 > kBranchTol) ? Branch::minus : Branch::tie;

    CorrelationReport rep{p,  s.s(), t2, d2, c2, l2, b, param,
                          0.0, std::nullopt};
    rep.residual = rep.t2 - rep.d2 - rep.c2 + rep.l2;
    return rep;
  }

  const int n = p.n();
  const FanoMatrix f = mixed_pair_fano(n, s);
  const ClosestStateParam param = cardano_c3(f.r[3][0], f.r[3][3]);
  const double t2 = pure_total_from(f, param.value);
  const KSpectrum ks = k_spectrum(f);
  const double c3 = param.value;

  MixedBranchValues bv{};
  bv.d2_minus = 0.25 * (ks.lambda1 + ks.lambda2);
  bv.d2_plus = 0.25 * (ks.lambda2 + ks.lambda3);
  bv.c2_minus = classical_minus_from(f, c3);
  bv.c2_plus = 0.25 * f.r[1][1] * f.r[1][1];
  bv.l2_minus = 0.0;
  bv.l2_plus = 0.25 * (2.0 * c3 * c3 + c3 * c3 * c3 * c3 - f.r[0][3] * f.r[0][3]);

  const Branch b = branch_select(n, s);
  const bool plus = (b == Branch::plus);
  CorrelationReport rep{p,
                        s.s(),
                        t2,
                        plus ? bv.d2_plus : bv.d2_minus,
                        plus ? bv.c2_plus : bv.c2_minus,
                        plus ? bv.l2_plus : bv.l2_minus,
                        b,
                        param,
                        0.0,
                        bv};
  rep.residual = rep.t2 - rep.d2 - rep.c2 + rep.l2;
  return rep;
}

}  // namespace qcorr
