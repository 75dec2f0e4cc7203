#include <cmath>
#include <random>

#include <doctest.h>

#include "qcorr/correlations.hpp"
#include "qcorr/oracle.hpp"
#include "support/reference.hpp"

using namespace qcorr;

namespace {

OracleOptions fast_options() {
  OracleOptions opt;
  opt.starts = 16;
  return opt;
}

}  // namespace

TEST_CASE("product_fano structure") {
  ProductParam p{{0.1, 0.2, 0.3}, {-0.4, 0.0, 0.5}};
  const FanoMatrix f = product_fano(p);
  CHECK(f.r[0][0] == 1.0);
  CHECK(f.r[1][0] == 0.1);
  CHECK(f.r[0][3] == 0.5);
  CHECK(f.r[2][3] == doctest::Approx(0.2 * 0.5));
  CHECK(f.r[3][1] == doctest::Approx(0.3 * -0.4));
}

TEST_CASE("classical_fano always yields a valid density") {
  std::mt19937_64 eng(31337);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    ClassicalParam c;
    for (int i = 0; i < 3; ++i) {
      c.u[i] = unit(eng);
      c.v0[i] = unit(eng);
      c.v1[i] = unit(eng);
    }
    double total = 0.0;
    for (double& p : c.p) {
      const double draw = unit(eng);
      p = draw * draw;
      total += p;
    }
    for (double& p : c.p) p /= total;
    CHECK(validate_density(fano_to_density(classical_fano(c))).ok());
  }
}

TEST_CASE("classical_fano reproduces product-basis-diagonal tables") {
  // z-diagonal family: moments (mu_u, mu_v, mu_uv) from the simplex
  ClassicalParam c;
  c.u = c.v0 = c.v1 = {0.0, 0.0, 1.0};
  c.p = {0.5, 0.2, 0.2, 0.1};
  const FanoMatrix f = classical_fano(c);
  const double mu_u = 0.5 + 0.2 - 0.2 - 0.1;
  const double mu_v = 0.5 - 0.2 + 0.2 - 0.1;
  const double mu_uv = 0.5 - 0.2 - 0.2 + 0.1;
  CHECK(f.r[3][0] == doctest::Approx(mu_u).epsilon(1e-15));
  CHECK(f.r[0][3] == doctest::Approx(mu_v).epsilon(1e-15));
  CHECK(f.r[3][3] == doctest::Approx(mu_uv).epsilon(1e-15));
  CHECK(f.r[1][1] == 0.0);
  CHECK(validate_density(fano_to_density(f)).ok());

  // conditional bases give states that are NOT diagonal in any fixed
  // product basis; the plus-branch closest state is one of them
  const FanoMatrix rho = mixed_pair_fano(3, Overlap(0.3));
  ClassicalParam plus;
  plus.u = {1.0, 0.0, 0.0};
  const double r03 = rho.r[0][3];
  const double r11 = rho.r[1][1];
  const double norm = std::sqrt(r03 * r03 + r11 * r11);
  plus.v0 = {r11 / norm, 0.0, r03 / norm};
  plus.v1 = {-r11 / norm, 0.0, r03 / norm};
  plus.p = {0.25 * (1 + norm), 0.25 * (1 - norm), 0.25 * (1 + norm), 0.25 * (1 - norm)};
  const FanoMatrix chi = classical_fano(plus);
  const auto [expected, branch] = closest_classical_mixed(3, Overlap(0.3));
  CHECK(branch == Branch::plus);
  CHECK(hs_distance_sq(chi, expected) < 1e-28);
}

TEST_CASE("nearest_product_numeric validates its options") {
  const FanoMatrix f = mixed_pair_fano(3, Overlap(0.5));
  OracleOptions opt;
  opt.starts = 7;
  CHECK_THROWS_AS(nearest_product_numeric(f, opt), std::invalid_argument);
  opt.starts = 15;
  CHECK_THROWS_AS(nearest_classical_numeric(f, opt), std::invalid_argument);
  opt.starts = 32;
  opt.tol = 0.0;
  CHECK_THROWS_AS(nearest_product_numeric(f, opt), std::invalid_argument);
}

TEST_CASE("starved iteration budgets report non-convergence without failing") {
  const FanoMatrix f = mixed_pair_fano(4, Overlap(0.45));
  OracleOptions opt;
  opt.starts = 16;
  opt.max_iterations = 3;
  const auto res = nearest_classical_numeric(f, opt);
  CHECK(res.converged_fraction < 1.0);
  CHECK(res.min_distance_sq >= 0.0);
}

TEST_CASE("nearest_product_numeric anchors") {
  const FanoMatrix bell = pure_partition_fano(2, 1, Overlap(0.0));
  const auto res = nearest_product_numeric(bell, fast_options());
  CHECK(res.min_distance_sq == doctest::Approx(0.75).epsilon(1e-6));
  // the minimum is quartically flat along a_i = R_ii b_i, so the argmin
  // localizes only to about tol^(1/4)
  for (int i = 0; i < 3; ++i) {
    CHECK(std::abs(res.argmin.a[i]) < 1e-2);
    CHECK(std::abs(res.argmin.b[i]) < 1e-2);
  }
  CHECK(res.starts == 16);
  CHECK(res.converged_fraction > 0.0);

  // product input sits at distance zero
  const FanoMatrix product = symmetric_product_state(0.37);
  CHECK(nearest_product_numeric(product, fast_options()).min_distance_sq < 1e-10);

  const FanoMatrix mid = mixed_pair_fano(3, Overlap(0.5));
  const auto mid_res = nearest_product_numeric(mid, fast_options());
  CHECK(mid_res.min_distance_sq == doctest::Approx(0.1450670600680023).epsilon(1e-5));
  CHECK(std::abs(mid_res.argmin.a[2] - 0.7474152503958118) < 1e-4);
  CHECK(std::abs(mid_res.argmin.b[2] - 0.7474152503958118) < 1e-4);
  CHECK(std::abs(mid_res.argmin.a[0]) < 1e-4);
  CHECK(std::abs(mid_res.argmin.a[1]) < 1e-4);
}

TEST_CASE("nearest_classical_numeric anchors") {
  const FanoMatrix bell = pure_partition_fano(2, 1, Overlap(0.0));
  CHECK(nearest_classical_numeric(bell, fast_options()).min_distance_sq ==
        doctest::Approx(0.5).epsilon(1e-5));

  const FanoMatrix minus_point = mixed_pair_fano(3, Overlap(0.5));
  CHECK(nearest_classical_numeric(minus_point, fast_options()).min_distance_sq ==
        doctest::Approx(0.1388888888888889).epsilon(1e-5));

  // plus branch: the minimum must match the plus-branch discord
  const FanoMatrix plus_point = mixed_pair_fano(3, Overlap(0.3));
  CHECK(nearest_classical_numeric(plus_point, fast_options()).min_distance_sq ==
        doctest::Approx(0.089769267745553619).epsilon(1e-5));

  // all three closest-classical forms belong to the family (distance ~ 0)
  const auto [chi_minus, bm] = closest_classical_mixed(3, Overlap(0.5));
  CHECK(nearest_classical_numeric(chi_minus, fast_options()).min_distance_sq < 1e-10);
  const auto [chi_plus, bp] = closest_classical_mixed(3, Overlap(0.3));
  CHECK(nearest_classical_numeric(chi_plus, fast_options()).min_distance_sq < 1e-10);
  const FanoMatrix chi_pure = closest_classical_pure(4, 2, Overlap(0.6));
  CHECK(nearest_classical_numeric(chi_pure, fast_options()).min_distance_sq < 1e-10);
}

TEST_CASE("oracle determinism: fixed seed, parallel == serial") {
  const FanoMatrix f = mixed_pair_fano(4, Overlap(0.35));

  OracleOptions serial = fast_options();
  serial.parallel = false;
  OracleOptions parallel = fast_options();
  parallel.parallel = true;

  const auto a = nearest_classical_numeric(f, serial);
  const auto b = nearest_classical_numeric(f, parallel);
  CHECK(a.min_distance_sq == b.min_distance_sq);  // bitwise
  for (int i = 0; i < 3; ++i) {
    CHECK(a.argmin.u[i] == b.argmin.u[i]);
    CHECK(a.argmin.v0[i] == b.argmin.v0[i]);
    CHECK(a.argmin.v1[i] == b.argmin.v1[i]);
  }
  for (int i = 0; i < 4; ++i) CHECK(a.argmin.p[i] == b.argmin.p[i]);
  CHECK(a.converged_fraction == b.converged_fraction);

  const auto c = nearest_product_numeric(f, serial);
  const auto d = nearest_product_numeric(f, parallel);
  CHECK(c.min_distance_sq == d.min_distance_sq);
  for (int i = 0; i < 3; ++i) {
    CHECK(c.argmin.a[i] == d.argmin.a[i]);
    CHECK(c.argmin.b[i] == d.argmin.b[i]);
  }

  // and repeat runs are bit-reproducible
  const auto e = nearest_classical_numeric(f, parallel);
  CHECK(e.min_distance_sq == b.min_distance_sq);
}

TEST_CASE("oracle brackets the closed form on a spot grid") {
  for (int n : {2, 3, 4}) {
    for (double s : {0.2, 0.45, 0.7}) {
      const Overlap ov(s);
      const FanoMatrix f = mixed_pair_fano(n, ov);
      const auto [param, pi] = closest_product_mixed(n, ov);
      const double closed = hs_distance_sq(f, pi);
      const double numeric = nearest_product_numeric(f, fast_options()).min_distance_sq;
      CHECK(numeric >= closed - 1e-8);
      CHECK(numeric <= closed + 1e-6);

      const double d2 = discord_mixed(n, ov).first;
      const double numeric_chi = nearest_classical_numeric(f, fast_options()).min_distance_sq;
      CHECK(numeric_chi >= d2 - 1e-8);
      CHECK(numeric_chi <= d2 + 1e-5);
    }
  }
}

TEST_CASE("sym3_eigenvalues") {
  const std::array<std::array<double, 3>, 3> eye{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
  const auto flat = sym3_eigenvalues(eye);
  CHECK(flat[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(flat[2] == doctest::Approx(1.0).epsilon(1e-15));

  const std::array<std::array<double, 3>, 3> diag{
      {{0.444444, 0, 0}, {0, 0.111111, 0}, {0, 0, 0.888889}}};
  const auto sorted = sym3_eigenvalues(diag);
  CHECK(sorted[0] == doctest::Approx(0.888889).epsilon(1e-15));
  CHECK(sorted[1] == doctest::Approx(0.444444).epsilon(1e-15));
  CHECK(sorted[2] == doctest::Approx(0.111111).epsilon(1e-15));

  std::array<std::array<double, 3>, 3> asym = eye;
  asym[0][1] = 0.1;
  CHECK_THROWS_AS(sym3_eigenvalues(asym), std::invalid_argument);

  // K = x x^T + R R^T assembled from raw coefficients matches the
  // closed-form spectrum
  const FanoMatrix f = mixed_pair_fano(3, Overlap(0.5));
  std::array<double, 3> x{0.0, 0.0, f.r[3][0]};
  std::array<std::array<double, 3>, 3> k{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      k[i][j] = x[i] * x[j];
      for (int m = 0; m < 3; ++m) k[i][j] += f.r[i + 1][m + 1] * f.r[j + 1][m + 1];
    }
  const auto eig = sym3_eigenvalues(k);
  const KSpectrum ks = k_spectrum(f);
  CHECK(eig[0] == doctest::Approx(ks.lambda3).epsilon(1e-10));
  CHECK(eig[1] == doctest::Approx(ks.lambda1).epsilon(1e-10));
  CHECK(eig[2] == doctest::Approx(ks.lambda2).epsilon(1e-10));
}

TEST_CASE("sym3_eigenvalues: characteristic-polynomial property") {
  std::mt19937_64 eng(4242);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::array<std::array<double, 3>, 3> k{};
    for (int i = 0; i < 3; ++i)
      for (int j = i; j < 3; ++j) k[i][j] = k[j][i] = unit(eng);
    const auto eig = sym3_eigenvalues(k);

    const double tr = k[0][0] + k[1][1] + k[2][2];
    const double minors = k[0][0] * k[1][1] - k[0][1] * k[1][0] + k[0][0] * k[2][2] -
                          k[0][2] * k[2][0] + k[1][1] * k[2][2] - k[1][2] * k[2][1];
    const double det = k[0][0] * (k[1][1] * k[2][2] - k[1][2] * k[2][1]) -
                       k[0][1] * (k[1][0] * k[2][2] - k[1][2] * k[2][0]) +
                       k[0][2] * (k[1][0] * k[2][1] - k[1][1] * k[2][0]);

    CHECK(eig[0] + eig[1] + eig[2] == doctest::Approx(tr).epsilon(1e-10));
    CHECK(eig[0] * eig[1] + eig[0] * eig[2] + eig[1] * eig[2] ==
          doctest::Approx(minors).epsilon(1e-9));
    CHECK(eig[0] * eig[1] * eig[2] == doctest::Approx(det).epsilon(1e-9));
    CHECK(eig[0] >= eig[1]);
    CHECK(eig[1] >= eig[2]);
  }
}

TEST_CASE("stationarity_check") {
  const FanoMatrix mixed = mixed_pair_fano(3, Overlap(0.5));
  CHECK(stationarity_check(mixed, 0.7474152503958118) < 1e-8);
  CHECK(stationarity_check(mixed, 0.5) > 1e-3);

  const FanoMatrix pure = pure_partition_fano(2, 1, Overlap(0.5));
  CHECK(stationarity_check(pure, 0.92831776672255584) < 1e-8);
}
