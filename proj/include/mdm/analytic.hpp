#pragma once

// Closed forms for the Bloch u-family and related one-off evaluations.

#include <boost/math/tools/minima.hpp>

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <vector>

#include "mdm/errors.hpp"

namespace mdm {

/// Eigenvalue on the sector with d flipped spins of the mean of rho^{(x)m}
/// under the Bloch u-family:
///   2^-m G(5/2-u) G(2+m-d-u) G(1+d-u) / (G(5/2+m/2-u) G(2+m/2-u) G(1-u)).
inline double ks_eigenvalue(int m, int d, double u) {
  if (m < 1) throw DomainError("ks_eigenvalue: m must be >= 1");
  if (d < 0 || d > m / 2) throw DomainError("ks_eigenvalue: d out of range");
  if (!(u < 1)) throw DomainError("ks_eigenvalue: u must be < 1");
  const double hm = 0.5 * m;
  const double log_value = -m * std::numbers::ln2 + std::lgamma(2.5 - u) + std::lgamma(2.0 + m - d - u) +
                           std::lgamma(1.0 + d - u) - std::lgamma(2.5 + hm - u) - std::lgamma(2.0 + hm - u) -
                           std::lgamma(1.0 - u);
  return std::exp(log_value);
}

/// Dimension of the d-th sector: (m-2d+1)^2 C(m+1,d) / (m+1).
inline std::uint64_t ks_multiplicity(int m, int d) {
  if (m < 1) throw DomainError("ks_multiplicity: m must be >= 1");
  if (d < 0 || d > m / 2) throw DomainError("ks_multiplicity: d out of range");
  if (m > 60) throw DomainError("ks_multiplicity: m too large");
  std::uint64_t binom = 1;  // C(m+1, d), exact at every step
  for (int i = 1; i <= d; ++i) binom = binom * static_cast<std::uint64_t>(m + 2 - i) / static_cast<std::uint64_t>(i);
  const auto w = static_cast<std::uint64_t>(m - 2 * d + 1);
  const std::uint64_t num = w * w * binom;
  if (num % static_cast<std::uint64_t>(m + 1) != 0) throw Error("ks_multiplicity: non-integer result");
  return num / static_cast<std::uint64_t>(m + 1);
}

/// f(t) = (1+t)^{2-2u} / (2^{2-2u} t^{1/2-u})
struct MonotoneFunction {
  double u = 0.5;

  double operator()(double t) const {
    if (!(t > 0)) throw DomainError("MonotoneFunction: t must be positive");
    return std::exp((2 - 2 * u) * std::log1p(t) - (2 - 2 * u) * std::numbers::ln2 - (0.5 - u) * std::log(t));
  }
};

struct MonotoneScan {
  bool is_monotone = true;
  std::optional<double> argmin;  // interior minimizer, refined between grid neighbours
};

inline MonotoneScan monotone_scan(double u, std::span<const double> grid) {
  if (grid.size() < 2) throw DomainError("monotone_scan: need at least two grid points");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0)) throw DomainError("monotone_scan: grid must be positive");
    if (i > 0 && !(grid[i] > grid[i - 1])) throw DomainError("monotone_scan: grid must be strictly increasing");
  }
  const MonotoneFunction f{u};
  std::vector<double> y(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) y[i] = f(grid[i]);
  MonotoneScan out;
  std::size_t best = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    // relative slack absorbs rounding on flat stretches
    if (i > 0 && y[i] < y[i - 1] * (1 - 1e-14)) out.is_monotone = false;
    if (y[i] < y[best]) best = i;
  }
  if (best > 0 && best + 1 < grid.size()) {
    const auto r = boost::math::tools::brent_find_minima(f, grid[best - 1], grid[best + 1], 52);
    out.argmin = r.first;
  }
  return out;
}

/// Gauss-Legendre nodes and weights on [-1, 1].
inline std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n) {
  if (n < 1) throw DomainError("gauss_legendre: n must be >= 1");
  std::vector<double> x(n), w(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1, p1 = z;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1;
      dp = n * (z * p1 - p0) / (z * z - 1);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = w[n - 1 - i] = 2 / ((1 - z * z) * dp * dp);
  }
  return {x, w};
}

struct MarginalExpectations {
  double a = 0, b = 0, c = 0, normalization = 0;
};

/// Moments of 15 (1-a) sqrt(a) / (4 pi sqrt(b) sqrt(c)) on the simplex a+b+c=1.
/// With a = t^2, b = (1-a) sin^2(th), c = (1-a) cos^2(th) the density becomes
/// 15 t^2 (1-t^2) / pi on [0,1] x [0,pi/2], free of endpoint singularities.
inline MarginalExpectations maximal_marginal_expectations(int quadrature_points) {
  if (quadrature_points < 64) throw DomainError("maximal_marginal_expectations: need at least 64 points");
  const auto [x, w] = gauss_legendre(quadrature_points);
  MarginalExpectations out;
  const double half_pi = std::numbers::pi / 2;
  for (int i = 0; i < quadrature_points; ++i) {
    const double t = 0.5 * (x[i] + 1);
    const double wt = 0.5 * w[i];
    const double a = t * t;
    for (int j = 0; j < quadrature_points; ++j) {
      const double th = half_pi * 0.5 * (x[j] + 1);
      const double wth = half_pi * 0.5 * w[j];
      const double s = std::sin(th);
      const double b = (1 - a) * s * s;
      const double c = 1 - a - b;
      const double dens = 15 * a * (1 - a) / std::numbers::pi * wt * wth;
      out.normalization += dens;
      out.a += a * dens;
      out.b += b * dens;
      out.c += c * dens;
    }
  }
  return out;
}

}  // namespace mdm
