#pragma once

// Probability laws over density matrices and their samplers.
//
//   ZHSL     rho = U diag(e) U^dagger, U Haar on U(N), e ~ Dirichlet(1 - q_i)
//   Bloch    qubit states with radial density ~ r^2 (1 - r^2)^{-u}, u < 1,
//            isotropic direction
//   Product  ordered tensor product of independent draws

#include <cmath>
#include <cstddef>
#include <numbers>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "mdm/errors.hpp"
#include "mdm/random.hpp"
#include "mdm/tensor_core.hpp"

namespace mdm {

struct ZhslMeasure {
  std::size_t n = 2;
  std::vector<double> q;  // one Dirichlet exponent per eigenvalue; alpha_i = 1 - q_i

  bool symmetric() const {
    for (double v : q)
      if (v != q.front()) return false;
    return true;
  }
  friend bool operator==(const ZhslMeasure&, const ZhslMeasure&) = default;
};

struct BlochMeasure {
  double u = 0.0;
  friend bool operator==(const BlochMeasure&, const BlochMeasure&) = default;
};

struct MeasureSpec;

struct ProductMeasure {
  std::vector<MeasureSpec> factors;
  friend bool operator==(const ProductMeasure&, const ProductMeasure&);
};

struct MeasureSpec {
  std::variant<ZhslMeasure, BlochMeasure, ProductMeasure> law;

  static MeasureSpec zhsl(std::size_t n, double q = 0.0) {
    return make(ZhslMeasure{n, std::vector<double>(n, q)});
  }
  static MeasureSpec zhsl(std::vector<double> q) {
    const std::size_t n = q.size();
    return make(ZhslMeasure{n, std::move(q)});
  }
  static MeasureSpec bloch(double u) { return make(BlochMeasure{u}); }
  static MeasureSpec product(std::vector<MeasureSpec> factors) { return make(ProductMeasure{std::move(factors)}); }

  void validate() const {
    std::visit(
        [](const auto& m) {
          using T = std::decay_t<decltype(m)>;
          if constexpr (std::is_same_v<T, ZhslMeasure>) {
            if (m.n < 2) throw DomainError("zhsl measure: n must be >= 2");
            if (m.q.size() != m.n) throw DomainError("zhsl measure: q must have n entries");
            for (double v : m.q)
              if (!(v < 1.0)) throw DomainError("zhsl measure: every q must be < 1");
          } else if constexpr (std::is_same_v<T, BlochMeasure>) {
            if (!(m.u < 1.0)) throw DomainError("bloch measure: u must be < 1");
          } else {
            if (m.factors.empty()) throw DomainError("product measure: no factors");
            for (const auto& f : m.factors) f.validate();
          }
        },
        law);
  }

  /// Local Hilbert-space dimension of one draw.
  std::size_t dimension() const {
    return std::visit(
        [](const auto& m) -> std::size_t {
          using T = std::decay_t<decltype(m)>;
          if constexpr (std::is_same_v<T, ZhslMeasure>) {
            return m.n;
          } else if constexpr (std::is_same_v<T, BlochMeasure>) {
            return 2;
          } else {
            std::size_t d = 1;
            for (const auto& f : m.factors) d *= f.dimension();
            return d;
          }
        },
        law);
  }

  /// Subsystem dimensions in draw order (products are flattened).
  std::vector<std::size_t> factor_dimensions() const {
    if (const auto* p = std::get_if<ProductMeasure>(&law)) {
      std::vector<std::size_t> out;
      for (const auto& f : p->factors) {
        auto sub = f.factor_dimensions();
        out.insert(out.end(), sub.begin(), sub.end());
      }
      return out;
    }
    return {dimension()};
  }

  friend bool operator==(const MeasureSpec&, const MeasureSpec&) = default;

 private:
  template <class T>
  static MeasureSpec make(T law) {
    MeasureSpec s{std::move(law)};
    s.validate();
    return s;
  }
};

inline bool operator==(const ProductMeasure& a, const ProductMeasure& b) { return a.factors == b.factors; }

/// Haar-distributed unitary: complex Ginibre matrix, QR, then the phases of
/// R's diagonal are moved into Q so the law is exactly Haar.
inline ComplexMatrix sample_haar_unitary(std::size_t n, RandomStream& rng) {
  if (n < 2) throw DomainError("sample_haar_unitary: n must be >= 2");
  std::normal_distribution<double> normal(0.0, std::numbers::sqrt2 / 2);
  const auto dim = static_cast<Index>(n);
  ComplexMatrix z(dim, dim);
  for (Index r = 0; r < dim; ++r)
    for (Index c = 0; c < dim; ++c) {
      const double re = normal(rng);
      const double im = normal(rng);
      z(r, c) = Complex(re, im);
    }
  Eigen::HouseholderQR<ComplexMatrix> qr(z);
  ComplexMatrix q = qr.householderQ();
  const auto& packed = qr.matrixQR();
  for (Index c = 0; c < dim; ++c) {
    const Complex d = packed(c, c);
    const double a = std::abs(d);
    if (a > 0) q.col(c) *= d / a;
  }
  return q;
}

/// SU(2) element from Euler-Rodrigues parameters drawn with the invariant
/// density sin^2(chi) sin(theta) on (chi, theta, phi) in [0,pi]x[0,pi]x[0,2pi).
inline ComplexMatrix sample_haar_unitary_euler(RandomStream& rng) {
  double chi = 0;
  for (;;) {
    chi = std::numbers::pi * rng.uniform();
    const double s = std::sin(chi);
    if (rng.uniform() < s * s) break;
  }
  const double theta = std::acos(1.0 - 2.0 * rng.uniform());
  const double phi = 2.0 * std::numbers::pi * rng.uniform();
  const double a = std::cos(chi);
  const double b = std::sin(chi) * std::cos(theta);
  const double c = std::sin(chi) * std::sin(theta) * std::cos(phi);
  const double d = std::sin(chi) * std::sin(theta) * std::sin(phi);
  ComplexMatrix u(2, 2);
  u << Complex(a, b), Complex(c, d), Complex(-c, d), Complex(a, -b);
  return u;
}

/// Point on the simplex with Dirichlet(1 - q_1, ..., 1 - q_N) law, via
/// normalized Gamma variates.
inline Eigen::VectorXd sample_simplex(std::span<const double> q, RandomStream& rng) {
  const auto n = static_cast<Index>(q.size());
  if (n < 1) throw DomainError("sample_simplex: empty parameter vector");
  for (double v : q)
    if (!(v < 1.0)) throw DomainError("sample_simplex: every q must be < 1");
  Eigen::VectorXd e(n);
  for (;;) {
    double sum = 0;
    for (Index i = 0; i < n; ++i) {
      std::gamma_distribution<double> gamma(1.0 - q[static_cast<std::size_t>(i)], 1.0);
      e(i) = gamma(rng);
      sum += e(i);
    }
    if (sum > 0 && std::isfinite(sum)) return e / sum;
  }
}

inline Eigen::VectorXd sample_simplex(std::size_t n, double q, RandomStream& rng) {
  const std::vector<double> qs(n, q);
  return sample_simplex(qs, rng);
}

/// Bloch radius for the u-family: s = r^2 ~ Beta(3/2, 1 - u).
inline double sample_bloch_radius(double u, RandomStream& rng) {
  if (!(u < 1.0)) throw DomainError("sample_bloch_radius: u must be < 1");
  std::gamma_distribution<double> ga(1.5, 1.0);
  std::gamma_distribution<double> gb(1.0 - u, 1.0);
  for (;;) {
    const double x = ga(rng);
    const double y = gb(rng);
    if (x + y > 0) return std::sqrt(x / (x + y));
  }
}

namespace detail {

inline ComplexMatrix draw_matrix(const MeasureSpec& spec, RandomStream& rng) {
  return std::visit(
      [&rng](const auto& m) -> ComplexMatrix {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, ZhslMeasure>) {
          const ComplexMatrix u = sample_haar_unitary(m.n, rng);
          const Eigen::VectorXd e = sample_simplex(m.q, rng);
          return u * e.cast<Complex>().asDiagonal() * u.adjoint();
        } else if constexpr (std::is_same_v<T, BlochMeasure>) {
          const double r = sample_bloch_radius(m.u, rng);
          const double cos_theta = 1.0 - 2.0 * rng.uniform();
          const double phi = 2.0 * std::numbers::pi * rng.uniform();
          return DensityMatrix::from_bloch(r, std::acos(cos_theta), phi).matrix();
        } else {
          ComplexMatrix out = draw_matrix(m.factors.front(), rng);
          for (std::size_t i = 1; i < m.factors.size(); ++i) {
            out = tensor_product(out, draw_matrix(m.factors[i], rng), std::numeric_limits<std::size_t>::max());
          }
          return out;
        }
      },
      spec.law);
}

}  // namespace detail

/// One density matrix drawn from the measure.
inline DensityMatrix sample_density(const MeasureSpec& spec, RandomStream& rng) {
  return DensityMatrix::trusted(detail::draw_matrix(spec, rng));
}

}  // namespace mdm
