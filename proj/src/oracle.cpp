#include "qcorr/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include "qcorr/correlations.hpp"

namespace qcorr {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Uniform double in [-1, 1) from the raw engine output; avoids
// std::uniform_real_distribution so streams are identical everywhere.
double uniform_pm1(std::mt19937_64& eng) {
  const double u = static_cast<double>(eng() >> 11) * 0x1.0p-53;  // [0,1)
  return 2.0 * u - 1.0;
}

void project_ball(std::array<double, 3>& v) {
  const double n2 = v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
  if (n2 > 1.0) {
    const double inv = 1.0 / std::sqrt(n2);
    for (double& x : v) x *= inv;
  }
}

std::array<double, 3> normalized_direction(const double* v) {
  const double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
  if (n < 1e-12) return {0.0, 0.0, 1.0};
  return {v[0] / n, v[1] / n, v[2] / n};
}

ProductParam product_from_raw(const double* x) {
  ProductParam p{{x[0], x[1], x[2]}, {x[3], x[4], x[5]}};
  project_ball(p.a);
  project_ball(p.b);
  return p;
}

ClassicalParam classical_from_raw(const double* x) {
  ClassicalParam c;
  c.u = normalized_direction(x);
  c.v0 = normalized_direction(x + 3);
  c.v1 = normalized_direction(x + 6);
  double total = 0.0;
  for (int i = 0; i < 4; ++i) total += x[9 + i] * x[9 + i];
  if (total < 1e-300) {
    c.p = {0.25, 0.25, 0.25, 0.25};
  } else {
    for (int i = 0; i < 4; ++i) c.p[i] = x[9 + i] * x[9 + i] / total;
  }
  return c;
}

struct NmOutcome {
  std::vector<double> x;
  double fx = 0.0;
  bool converged = false;
};

// Standard Nelder-Mead (reflection 1, expansion 2, contraction 1/2,
// shrink 1/2).  Converges when the objective spread over the simplex
// drops below tol.
NmOutcome nelder_mead(const std::function<double(const double*)>& f,
                      std::vector<double> x0, double step, double tol, int max_iter) {
  const std::size_t dim = x0.size();
  std::vector<std::vector<double>> verts(dim + 1, x0);
  for (std::size_t i = 0; i < dim; ++i) verts[i + 1][i] += step;
  std::vector<double> fv(dim + 1);
  for (std::size_t i = 0; i <= dim; ++i) fv[i] = f(verts[i].data());

  std::vector<std::size_t> order(dim + 1);
  std::vector<double> centroid(dim), xr(dim), xe(dim), xc(dim);
  bool converged = false;

  for (int iter = 0; iter < max_iter; ++iter) {
    for (std::size_t i = 0; i <= dim; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
    const std::size_t best = order[0];
    const std::size_t worst = order[dim];
    const std::size_t second = order[dim - 1];

    if (fv[worst] - fv[best] <= tol) {
      converged = true;
      break;
    }

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t i = 0; i <= dim; ++i) {
      if (i == worst) continue;
      for (std::size_t d = 0; d < dim; ++d) centroid[d] += verts[i][d];
    }
    for (double& c : centroid) c /= static_cast<double>(dim);

    for (std::size_t d = 0; d < dim; ++d) xr[d] = 2.0 * centroid[d] - verts[worst][d];
    const double fr = f(xr.data());

    if (fr < fv[best]) {
      for (std::size_t d = 0; d < dim; ++d) xe[d] = centroid[d] + 2.0 * (xr[d] - centroid[d]);
      const double fe = f(xe.data());
      if (fe < fr) {
        verts[worst] = xe;
        fv[worst] = fe;
      } else {
        verts[worst] = xr;
        fv[worst] = fr;
      }
    } else if (fr < fv[second]) {
      verts[worst] = xr;
      fv[worst] = fr;
    } else {
      const bool outside = fr < fv[worst];
      const std::vector<double>& toward = outside ? xr : verts[worst];
      for (std::size_t d = 0; d < dim; ++d) xc[d] = centroid[d] + 0.5 * (toward[d] - centroid[d]);
      const double fc = f(xc.data());
      if (fc < (outside ? fr : fv[worst])) {
        verts[worst] = xc;
        fv[worst] = fc;
      } else {
        for (std::size_t i = 0; i <= dim; ++i) {
          if (i == best) continue;
          for (std::size_t d = 0; d < dim; ++d)
            verts[i][d] = verts[best][d] + 0.5 * (verts[i][d] - verts[best][d]);
          fv[i] = f(verts[i].data());
        }
      }
    }
  }

  std::size_t best = 0;
  for (std::size_t i = 1; i <= dim; ++i)
    if (fv[i] < fv[best]) best = i;
  return {verts[best], fv[best], converged};
}

// One multi-start run: every start depends only on (seed, index), so the
// serial and parallel paths give identical results.  A fresh simplex is
// re-seeded at the best vertex until the objective stops improving; the
// simplex-spread criterion alone can fire early inside curved valleys.
NmOutcome run_start(const std::function<double(const double*)>& objective, int dim,
                    std::uint64_t seed, int index, double tol, int max_iter) {
  std::mt19937_64 eng(splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(index) + 1)));
  std::vector<double> x0(dim);
  for (double& x : x0) x = uniform_pm1(eng);

  NmOutcome best = nelder_mead(objective, std::move(x0), 0.25, tol, max_iter);
  double step = 0.05;
  for (int round = 0; round < 6; ++round) {
    NmOutcome next = nelder_mead(objective, best.x, step, tol, max_iter);
    next.converged = next.converged || best.converged;
    const double gain = best.fx - next.fx;
    if (next.fx < best.fx) best = std::move(next);
    if (gain <= tol) break;
    step = std::max(step * 0.5, 1e-4);
  }
  return best;
}

// The search objective may carry shepherding terms (see the ball penalty in
// the product search), so the reported distance is re-evaluated through the
// decoded parameters.
template <typename Param>
OracleResult<Param> multistart(const std::function<double(const double*)>& objective,
                               int dim, const OracleOptions& opt,
                               Param (*decode)(const double*),
                               const std::function<double(const Param&)>& distance) {
  std::vector<NmOutcome> outcomes(static_cast<std::size_t>(opt.starts));
  if (opt.parallel) {
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < opt.starts; ++i)
      outcomes[i] = run_start(objective, dim, opt.seed, i, opt.tol, opt.max_iterations);
  } else {
    for (int i = 0; i < opt.starts; ++i)
      outcomes[i] = run_start(objective, dim, opt.seed, i, opt.tol, opt.max_iterations);
  }

  std::size_t best = 0;
  int converged = 0;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    if (outcomes[i].converged) ++converged;
    if (outcomes[i].fx < outcomes[best].fx) best = i;
  }

  OracleResult<Param> result;
  result.argmin = decode(outcomes[best].x.data());
  result.min_distance_sq = distance(result.argmin);
  result.starts = opt.starts;
  result.converged_fraction = static_cast<double>(converged) / opt.starts;
  return result;
}

}  // namespace

FanoMatrix product_fano(const ProductParam& p) {
  FanoMatrix f = FanoMatrix::identity();
  for (int i = 0; i < 3; ++i) {
    f.r[i + 1][0] = p.a[i];
    f.r[0][i + 1] = p.b[i];
    for (int j = 0; j < 3; ++j) f.r[i + 1][j + 1] = p.a[i] * p.b[j];
  }
  return f;
}

FanoMatrix classical_fano(const ClassicalParam& c) {
  const auto u = normalized_direction(c.u.data());
  const auto v0 = normalized_direction(c.v0.data());
  const auto v1 = normalized_direction(c.v1.data());
  const double w0 = c.p[0] + c.p[1];
  const double w1 = c.p[2] + c.p[3];
  const double m0 = c.p[0] - c.p[1];
  const double m1 = c.p[2] - c.p[3];

  FanoMatrix f = FanoMatrix::identity();
  for (int i = 0; i < 3; ++i) {
    f.r[i + 1][0] = (w0 - w1) * u[i];
    f.r[0][i + 1] = m0 * v0[i] + m1 * v1[i];
    for (int j = 0; j < 3; ++j) f.r[i + 1][j + 1] = u[i] * (m0 * v0[j] - m1 * v1[j]);
  }
  return f;
}

OracleResult<ProductParam> nearest_product_numeric(const FanoMatrix& f,
                                                   const OracleOptions& opt) {
  if (opt.starts < 8)
    throw std::invalid_argument("nearest_product_numeric: starts must be >= 8");
  if (!(opt.tol > 0.0))
    throw std::invalid_argument("nearest_product_numeric: tol must be positive");

  // Outside the Bloch ball the projected objective is constant along rays;
  // the quadratic term restores a slope there so the simplex cannot settle
  // on the boundary plateau.  It vanishes on the feasible set.
  auto excess = [](const double* v) {
    const double norm = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    return norm > 1.0 ? norm - 1.0 : 0.0;
  };
  auto objective = [&f, &excess](const double* x) {
    const double ea = excess(x);
    const double eb = excess(x + 3);
    return hs_distance_sq(f, product_fano(product_from_raw(x))) +
           1e-3 * (ea * ea + eb * eb);
  };
  const std::function<double(const ProductParam&)> distance =
      [&f](const ProductParam& p) { return hs_distance_sq(f, product_fano(p)); };
  return multistart<ProductParam>(objective, 6, opt, &product_from_raw, distance);
}

OracleResult<ClassicalParam> nearest_classical_numeric(const FanoMatrix& f,
                                                       const OracleOptions& opt) {
  if (opt.starts < 16)
    throw std::invalid_argument("nearest_classical_numeric: starts must be >= 16");
  if (!(opt.tol > 0.0))
    throw std::invalid_argument("nearest_classical_numeric: tol must be positive");

  auto objective = [&f](const double* x) {
    return hs_distance_sq(f, classical_fano(classical_from_raw(x)));
  };
  const std::function<double(const ClassicalParam&)> distance =
      [&f](const ClassicalParam& c) { return hs_distance_sq(f, classical_fano(c)); };
  return multistart<ClassicalParam>(objective, 13, opt, &classical_from_raw, distance);
}

std::array<double, 3> sym3_eigenvalues(const std::array<std::array<double, 3>, 3>& k) {
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (std::abs(k[i][j] - k[j][i]) > 1e-12)
        throw std::invalid_argument("sym3_eigenvalues: matrix is not symmetric");

  const double p1 = k[0][1] * k[0][1] + k[0][2] * k[0][2] + k[1][2] * k[1][2];
  std::array<double, 3> eig{};
  if (p1 == 0.0) {
    eig = {k[0][0], k[1][1], k[2][2]};
    std::sort(eig.begin(), eig.end(), std::greater<>());
    return eig;
  }

  const double q = (k[0][0] + k[1][1] + k[2][2]) / 3.0;
  const double p2 = (k[0][0] - q) * (k[0][0] - q) + (k[1][1] - q) * (k[1][1] - q) +
                    (k[2][2] - q) * (k[2][2] - q) + 2.0 * p1;
  const double p = std::sqrt(p2 / 6.0);
  if (p < 1e-300) return {q, q, q};

  std::array<std::array<double, 3>, 3> b{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) b[i][j] = (k[i][j] - (i == j ? q : 0.0)) / p;
  const double detb = b[0][0] * (b[1][1] * b[2][2] - b[1][2] * b[2][1]) -
                      b[0][1] * (b[1][0] * b[2][2] - b[1][2] * b[2][0]) +
                      b[0][2] * (b[1][0] * b[2][1] - b[1][1] * b[2][0]);
  const double r = std::clamp(detb / 2.0, -1.0, 1.0);
  const double phi = std::acos(r) / 3.0;

  constexpr double two_pi_3 = 2.0 * std::numbers::pi / 3.0;
  const double e1 = q + 2.0 * p * std::cos(phi);
  const double e3 = q + 2.0 * p * std::cos(phi + two_pi_3);
  const double e2 = 3.0 * q - e1 - e3;
  eig = {e1, e2, e3};
  std::sort(eig.begin(), eig.end(), std::greater<>());
  return eig;
}

double stationarity_check(const FanoMatrix& f, double t0) {
  constexpr double h = 1e-5;
  const double fwd = hs_distance_sq(f, symmetric_product_state(t0 + h));
  const double bwd = hs_distance_sq(f, symmetric_product_state(t0 - h));
  return std::abs(fwd - bwd) / (2.0 * h);
}

}  // namespace qcorr
