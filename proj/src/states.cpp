#include "qcorr/states.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qcorr {

Overlap::Overlap(double s) : s_(s) {
  if (!std::isfinite(s) || s < 0.0 || s > 1.0)
    throw std::domain_error("overlap s must lie in [0,1], got " + std::to_string(s));
}

OmegaConversion overlap_from_omega(double omega) {
  if (!std::isfinite(omega) || omega < 0.0 || omega > 1.0)
    throw std::domain_error("omega must lie in [0,1], got " + std::to_string(omega));
  const bool reflected = omega < 0.5;
  const double folded = reflected ? 1.0 - omega : omega;
  return {Overlap(2.0 * folded - 1.0), reflected};
}

const char* to_string(Scheme s) {
  return s == Scheme::pure_split ? "pure" : "mixed";
}

PartitionSpec PartitionSpec::pure_split(int n, int k) {
  if (n < 2) throw std::invalid_argument("pure_split: n must be >= 2");
  if (k < 1 || k > n - 1)
    throw std::invalid_argument("pure_split: k must satisfy 1 <= k <= n-1");
  return PartitionSpec(Scheme::pure_split, n, k);
}

PartitionSpec PartitionSpec::traced_pair(int n) {
  if (n < 2) throw std::invalid_argument("traced_pair: n must be >= 2");
  return PartitionSpec(Scheme::traced_pair, n, 0);
}

int PartitionSpec::k() const {
  if (scheme_ != Scheme::pure_split)
    throw std::logic_error("PartitionSpec: k is only defined for the pure split");
  return k_;
}

double pow_int(double x, int e) {
  double acc = 1.0;
  for (int i = 0; i < e; ++i) acc *= x;
  return acc;
}

SchmidtPair schmidt_coefficients(int n, int k, Overlap s) {
  (void)PartitionSpec::pure_split(n, k);  // validate
  const double sv = s.s();
  const double x = (pow_int(sv, k) + pow_int(sv, n - k)) / (1.0 + pow_int(sv, n));
  return {0.5 * (1.0 + x), 0.5 * (1.0 - x)};
}

FanoMatrix pure_partition_fano(int n, int k, Overlap s) {
  (void)PartitionSpec::pure_split(n, k);
  const double sv = s.s();
  const double denom = 1.0 + pow_int(sv, n);
  FanoMatrix f = FanoMatrix::identity();
  f.r[3][0] = f.r[0][3] = (pow_int(sv, k) + pow_int(sv, n - k)) / denom;
  f.r[1][1] =
      std::sqrt((1.0 - pow_int(sv, 2 * k)) * (1.0 - pow_int(sv, 2 * (n - k)))) / denom;
  f.r[2][2] = -f.r[1][1];
  f.r[3][3] = 1.0;
  return f;
}

FanoMatrix mixed_pair_fano(int n, Overlap s) {
  (void)PartitionSpec::traced_pair(n);
  const double sv = s.s();
  const double two_n2 = 1.0 / (1.0 + pow_int(sv, n));  // 2 N^2
  FanoMatrix f = FanoMatrix::identity();
  f.r[1][1] = two_n2 * (1.0 - sv * sv);
  f.r[2][2] = -two_n2 * (1.0 - sv * sv) * pow_int(sv, n - 2);
  f.r[3][3] = two_n2 * (sv * sv + pow_int(sv, n - 2));
  f.r[0][3] = f.r[3][0] = two_n2 * (sv + pow_int(sv, n - 1));
  return f;
}

MixedSpectrum mixed_pair_spectrum(int n, Overlap s) {
  (void)PartitionSpec::traced_pair(n);
  const double sv = s.s();
  const double norm = 2.0 * (1.0 + pow_int(sv, n));
  const double sm = pow_int(sv, n - 2);
  return {(1.0 + sm) * (1.0 + sv * sv) / norm, (1.0 - sm) * (1.0 - sv * sv) / norm};
}

}  // namespace qcorr
