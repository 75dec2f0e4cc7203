#include <cmath>

#include <doctest.h>

#include "qcorr/states.hpp"
#include "support/reference.hpp"

using namespace qcorr;

TEST_CASE("pow_int conventions") {
  CHECK(pow_int(0.0, 0) == 1.0);
  CHECK(pow_int(0.5, 3) == 0.125);
  CHECK(pow_int(1.0, 17) == 1.0);
  CHECK(pow_int(0.0, 2) == 0.0);
}

TEST_CASE("Overlap validates its range") {
  CHECK_THROWS_AS(Overlap(-0.001), std::domain_error);
  CHECK_THROWS_AS(Overlap(1.001), std::domain_error);
  CHECK_THROWS_AS(Overlap(std::nan("")), std::domain_error);
  CHECK(Overlap(0.5).omega() == doctest::Approx(0.75));
}

TEST_CASE("overlap_from_omega") {
  CHECK(overlap_from_omega(1.0).overlap.s() == 1.0);
  CHECK(overlap_from_omega(0.5).overlap.s() == 0.0);
  CHECK(overlap_from_omega(0.75).overlap.s() == 0.5);
  const auto folded = overlap_from_omega(0.25);
  CHECK(folded.reflected);
  CHECK(folded.overlap.s() == 0.5);
  CHECK_FALSE(overlap_from_omega(0.75).reflected);
  CHECK_THROWS_AS(overlap_from_omega(-0.1), std::domain_error);
  CHECK_THROWS_AS(overlap_from_omega(1.1), std::domain_error);
}

TEST_CASE("PartitionSpec invariants") {
  CHECK_THROWS_AS(PartitionSpec::pure_split(1, 1), std::invalid_argument);
  CHECK_THROWS_AS(PartitionSpec::pure_split(3, 0), std::invalid_argument);
  CHECK_THROWS_AS(PartitionSpec::pure_split(3, 3), std::invalid_argument);
  CHECK_THROWS_AS(PartitionSpec::traced_pair(1), std::invalid_argument);
  const PartitionSpec p = PartitionSpec::pure_split(5, 2);
  CHECK(p.k() == 2);
  CHECK_THROWS_AS(PartitionSpec::traced_pair(4).k(), std::logic_error);
}

TEST_CASE("schmidt_coefficients: anchors") {
  const SchmidtPair balanced = schmidt_coefficients(2, 1, Overlap(0.0));
  CHECK(balanced.lambda_plus == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(balanced.lambda_minus == doctest::Approx(0.5).epsilon(1e-15));

  const SchmidtPair product = schmidt_coefficients(4, 2, Overlap(1.0));
  CHECK(product.lambda_plus == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(product.lambda_minus == doctest::Approx(0.0).epsilon(1e-15));

  const SchmidtPair mid = schmidt_coefficients(4, 2, Overlap(0.5));
  CHECK(mid.lambda_plus == doctest::Approx(0.73529411764705888).epsilon(1e-12));
  CHECK(mid.lambda_minus == doctest::Approx(0.26470588235294112).epsilon(1e-12));
}

TEST_CASE("schmidt_coefficients: normalization and ordering across the grid") {
  for (int n = 2; n <= 8; ++n)
    for (int k = 1; k < n; ++k)
      for (int i = 0; i <= 10; ++i) {
        const SchmidtPair sp = schmidt_coefficients(n, k, Overlap(i / 10.0));
        CHECK(std::abs(sp.lambda_plus + sp.lambda_minus - 1.0) < 1e-14);
        CHECK(sp.lambda_plus >= sp.lambda_minus);
        CHECK(sp.lambda_minus >= 0.0);
      }
}

TEST_CASE("schmidt_coefficients against the brute-force marginal spectrum") {
  for (int n = 2; n <= 7; ++n)
    for (int k = 1; k < n; ++k)
      for (double s : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        const SchmidtPair sp = schmidt_coefficients(n, k, Overlap(s));
        const auto [lp, lm] = testref::split_marginal_eigenvalues(n, k, s);
        CHECK(sp.lambda_plus == doctest::Approx(lp).epsilon(1e-12));
        CHECK(sp.lambda_minus == doctest::Approx(lm).epsilon(1e-12));
      }
}

TEST_CASE("pure_partition_fano: anchors") {
  const FanoMatrix ghz = pure_partition_fano(2, 1, Overlap(0.0));
  CHECK(ghz.r[3][0] == 0.0);
  CHECK(ghz.r[1][1] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(ghz.r[2][2] == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(ghz.r[3][3] == 1.0);

  const FanoMatrix product = pure_partition_fano(3, 1, Overlap(1.0));
  CHECK(product.r[3][0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(product.r[1][1] == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(product.r[2][2] == doctest::Approx(0.0).epsilon(1e-15));

  const FanoMatrix mid = pure_partition_fano(4, 1, Overlap(0.5));
  CHECK(mid.r[3][0] == doctest::Approx(0.58823529411764708).epsilon(1e-12));
  CHECK(mid.r[1][1] == doctest::Approx(0.80868982852161886).epsilon(1e-12));
  CHECK(mid.r[2][2] == doctest::Approx(-0.80868982852161886).epsilon(1e-12));
  CHECK(mid.r[3][3] == 1.0);
}

TEST_CASE("pure_partition_fano: structural invariants") {
  for (int n = 2; n <= 8; ++n)
    for (int k = 1; k < n; ++k)
      for (int i = 0; i <= 10; ++i) {
        const Overlap s(i / 10.0);
        const FanoMatrix f = pure_partition_fano(n, k, s);

        CHECK(purity(f) == doctest::Approx(1.0).epsilon(1e-12));

        // k <-> n-k symmetry is exact: the formulas commute termwise
        const FanoMatrix g = pure_partition_fano(n, n - k, s);
        for (int a = 0; a < 4; ++a)
          for (int b = 0; b < 4; ++b) CHECK(f.r[a][b] == g.r[a][b]);

        // exchange symmetry and parity pattern
        for (int a = 0; a < 4; ++a)
          for (int b = 0; b < 4; ++b) {
            CHECK(f.r[a][b] == f.r[b][a]);
            const bool one_transverse = ((a == 1 || a == 2) != (b == 1 || b == 2));
            if (one_transverse) CHECK(f.r[a][b] == 0.0);
          }

        // r11^2 = 4 lambda+ lambda-
        const SchmidtPair sp = schmidt_coefficients(n, k, s);
        CHECK(f.r[1][1] * f.r[1][1] ==
              doctest::Approx(4.0 * sp.lambda_plus * sp.lambda_minus).epsilon(1e-13));
        CHECK(f.r[3][0] == doctest::Approx(sp.lambda_plus - sp.lambda_minus).epsilon(1e-14));
      }
}

TEST_CASE("mixed_pair_fano: anchors") {
  const FanoMatrix f = mixed_pair_fano(3, Overlap(0.5));
  CHECK(f.r[1][1] == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(f.r[2][2] == doctest::Approx(-1.0 / 3.0).epsilon(1e-12));
  CHECK(f.r[3][3] == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(f.r[0][3] == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(f.r[3][0] == f.r[0][3]);

  const FanoMatrix ghz = mixed_pair_fano(5, Overlap(0.0));
  CHECK(ghz.r[1][1] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(ghz.r[2][2] == 0.0);
  CHECK(ghz.r[3][3] == 0.0);
  CHECK(ghz.r[0][3] == 0.0);

  const FanoMatrix product = mixed_pair_fano(4, Overlap(1.0));
  CHECK(product.r[3][3] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(product.r[0][3] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(product.r[1][1] == 0.0);
  CHECK(product.r[2][2] == 0.0);
}

TEST_CASE("mixed_pair_fano against the brute-force partial trace") {
  for (int n = 2; n <= 8; ++n)
    for (double s : {0.0, 0.2, 0.4142135623730951, 0.6, 0.8, 1.0}) {
      const FanoMatrix formula = mixed_pair_fano(n, Overlap(s));
      const FanoMatrix brute = density_to_fano(testref::reduced_pair(n, s));
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
          CHECK(formula.r[a][b] == doctest::Approx(brute.r[a][b]).epsilon(1e-12));
    }
}

TEST_CASE("n=2: the traced pair coincides with the split state") {
  for (int i = 0; i <= 20; ++i) {
    const Overlap s(i / 20.0);
    const FanoMatrix a = pure_partition_fano(2, 1, s);
    const FanoMatrix b = mixed_pair_fano(2, s);
    for (int p = 0; p < 4; ++p)
      for (int q = 0; q < 4; ++q) CHECK(std::abs(a.r[p][q] - b.r[p][q]) < 1e-14);
  }
}

TEST_CASE("mixed_pair_spectrum") {
  const MixedSpectrum mid = mixed_pair_spectrum(3, Overlap(0.5));
  CHECK(mid.p_plus == doctest::Approx(5.0 / 6.0).epsilon(1e-12));
  CHECK(mid.p_minus == doctest::Approx(1.0 / 6.0).epsilon(1e-12));

  const MixedSpectrum even = mixed_pair_spectrum(3, Overlap(0.0));
  CHECK(even.p_plus == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(even.p_minus == doctest::Approx(0.5).epsilon(1e-15));

  const MixedSpectrum pure = mixed_pair_spectrum(4, Overlap(1.0));
  CHECK(pure.p_plus == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(pure.p_minus == doctest::Approx(0.0).epsilon(1e-15));

  for (int n = 2; n <= 9; ++n)
    for (int i = 0; i <= 10; ++i) {
      const Overlap s(i / 10.0);
      const MixedSpectrum sp = mixed_pair_spectrum(n, s);
      CHECK(std::abs(sp.p_plus + sp.p_minus - 1.0) < 1e-14);
      CHECK(sp.p_minus >= 0.0);

      const auto eig = hermitian4_eigenvalues(fano_to_density(mixed_pair_fano(n, s)));
      CHECK(std::abs(eig[0] - std::max(sp.p_plus, sp.p_minus)) < 1e-10);
      CHECK(std::abs(eig[1] - std::min(sp.p_plus, sp.p_minus)) < 1e-10);
      CHECK(std::abs(eig[2]) < 1e-10);
      CHECK(std::abs(eig[3]) < 1e-10);
    }
}

TEST_CASE("constructed states are valid densities across the grid") {
  for (int n = 2; n <= 10; ++n)
    for (int i = 0; i <= 20; ++i) {
      const Overlap s(i / 20.0);
      CHECK(validate_density(fano_to_density(mixed_pair_fano(n, s))).ok());
      for (int k = 1; k < n; ++k)
        CHECK(validate_density(fano_to_density(pure_partition_fano(n, k, s))).ok());
    }
}
