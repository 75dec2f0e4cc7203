#include "qcorr/fano.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace qcorr {

namespace {

constexpr double kHermTolStrict = 1e-12;  // validate_density
constexpr double kHermTolReject = 1e-9;   // density_to_fano rejection
constexpr double kTraceTol = 1e-12;
constexpr double kNegativityTol = -1e-12;

using Pauli2 = std::array<std::array<Complex, 2>, 2>;

const std::array<Pauli2, 4> kPauli = {{
    {{{Complex(1, 0), Complex(0, 0)}, {Complex(0, 0), Complex(1, 0)}}},
    {{{Complex(0, 0), Complex(1, 0)}, {Complex(1, 0), Complex(0, 0)}}},
    {{{Complex(0, 0), Complex(0, -1)}, {Complex(0, 1), Complex(0, 0)}}},
    {{{Complex(1, 0), Complex(0, 0)}, {Complex(0, 0), Complex(-1, 0)}}},
}};

// Cyclic Jacobi sweeps for a small real symmetric matrix.  Converges
// quadratically; enough sweeps for backward error near machine epsilon.
template <std::size_t N>
std::array<double, N> jacobi_eigenvalues(std::array<std::array<double, N>, N> a) {
  constexpr int kMaxSweeps = 60;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < N; ++p)
      for (std::size_t q = p + 1; q < N; ++q) off += a[p][q] * a[p][q];
    if (off < std::numeric_limits<double>::epsilon() * std::numeric_limits<double>::epsilon())
      break;

    for (std::size_t p = 0; p < N; ++p) {
      for (std::size_t q = p + 1; q < N; ++q) {
        const double apq = a[p][q];
        if (std::abs(apq) < 1e-300) continue;

        const double theta = 0.5 * (a[q][q] - a[p][p]) / apq;
        double t = 1.0 / (std::abs(theta) + std::sqrt(1.0 + theta * theta));
        if (theta < 0.0) t = -t;
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const double tau = s / (1.0 + c);

        const double delta = t * apq;
        a[p][p] -= delta;
        a[q][q] += delta;
        a[p][q] = 0.0;
        a[q][p] = 0.0;
        for (std::size_t r = 0; r < N; ++r) {
          if (r == p || r == q) continue;
          const double arp = a[r][p];
          const double arq = a[r][q];
          a[r][p] = arp - s * (arq + tau * arp);
          a[p][r] = a[r][p];
          a[r][q] = arq + s * (arp - tau * arq);
          a[q][r] = a[r][q];
        }
      }
    }
  }
  std::array<double, N> eig{};
  for (std::size_t i = 0; i < N; ++i) eig[i] = a[i][i];
  std::sort(eig.begin(), eig.end(), std::greater<>());
  return eig;
}

double max_hermiticity_defect(const DensityMatrix4& d) {
  double worst = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      worst = std::max(worst, std::abs(d.m[i][j] - std::conj(d.m[j][i])));
  return worst;
}

}  // namespace

const std::array<std::array<Complex, 2>, 2>& pauli_matrix(int alpha) {
  if (alpha < 0 || alpha > 3)
    throw std::out_of_range("pauli_matrix: index must be in {0,1,2,3}");
  return kPauli[static_cast<std::size_t>(alpha)];
}

FanoMatrix FanoMatrix::identity() {
  FanoMatrix f;
  f.r[0][0] = 1.0;
  return f;
}

DensityMatrix4 fano_to_density(const FanoMatrix& f) {
  DensityMatrix4 d;
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      const double coeff = f.r[a][b];
      if (coeff == 0.0) continue;
      const auto& sa = kPauli[a];
      const auto& sb = kPauli[b];
      for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 2; ++k)
          for (int j = 0; j < 2; ++j)
            for (int l = 0; l < 2; ++l)
              d.m[2 * i + j][2 * k + l] += 0.25 * coeff * sa[i][k] * sb[j][l];
    }
  }
  return d;
}

FanoMatrix density_to_fano(const DensityMatrix4& d) {
  const double defect = max_hermiticity_defect(d);
  if (defect > kHermTolReject)
    throw std::invalid_argument("density_to_fano: input is not Hermitian (defect " +
                                std::to_string(defect) + ")");
  FanoMatrix f;
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      const auto& sa = kPauli[a];
      const auto& sb = kPauli[b];
      Complex tr = 0.0;
      // Tr(d sigma_a (x) sigma_b) = sum_{ijkl} d[ij][kl] (sa (x) sb)[kl][ij]
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
          for (int k = 0; k < 2; ++k)
            for (int l = 0; l < 2; ++l)
              tr += d.m[2 * i + j][2 * k + l] * sa[k][i] * sb[l][j];
      f.r[a][b] = tr.real();
    }
  }
  return f;
}

double hs_distance_sq(const FanoMatrix& a, const FanoMatrix& b) {
  double sum = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const double d = a.r[i][j] - b.r[i][j];
      sum += d * d;
    }
  return 0.25 * sum;
}

double purity(const FanoMatrix& f) {
  double sum = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) sum += f.r[i][j] * f.r[i][j];
  return 0.25 * sum;
}

double s_minus(const FanoMatrix& a, const FanoMatrix& b) {
  return purity(a) - purity(b);
}

std::array<double, 4> hermitian4_eigenvalues(const DensityMatrix4& d) {
  // Embed H = A + iB into the real symmetric [[A, -B], [B, A]]; each
  // eigenvalue of H appears twice in the embedding.
  std::array<std::array<double, 8>, 8> em{};
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      const Complex h = 0.5 * (d.m[i][j] + std::conj(d.m[j][i]));  // symmetrize
      em[i][j] = h.real();
      em[i + 4][j + 4] = h.real();
      em[i][j + 4] = -h.imag();
      em[i + 4][j] = h.imag();
    }
  }
  const auto all = jacobi_eigenvalues<8>(em);
  return {all[0], all[2], all[4], all[6]};
}

std::string DensityValidity::describe() const {
  switch (kind) {
    case Kind::ok:
      return "ok";
    case Kind::hermiticity:
      return "hermiticity violated by " + std::to_string(magnitude);
    case Kind::trace:
      return "trace deviates from 1 by " + std::to_string(magnitude);
    case Kind::negativity:
      return "negative eigenvalue " + std::to_string(magnitude);
  }
  return "unknown";
}

DensityValidity validate_density(const DensityMatrix4& d) {
  const double herm = max_hermiticity_defect(d);
  if (herm > kHermTolStrict)
    return {DensityValidity::Kind::hermiticity, herm};

  Complex tr = 0.0;
  for (int i = 0; i < 4; ++i) tr += d.m[i][i];
  const double trace_defect = std::abs(tr - Complex(1.0, 0.0));
  if (trace_defect > kTraceTol)
    return {DensityValidity::Kind::trace, trace_defect};

  const auto eig = hermitian4_eigenvalues(d);
  if (eig[3] < kNegativityTol)
    return {DensityValidity::Kind::negativity, eig[3]};

  return {};
}

}  // namespace qcorr
