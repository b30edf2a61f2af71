#pragma once

// Degenerate eigenspaces, symbolic r + s/pi matrices and the v -> infinity
// selection rule.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "mdm/continued_fraction.hpp"
#include "mdm/errors.hpp"
#include "mdm/mc_mean.hpp"
#include "mdm/rational.hpp"
#include "mdm/tensor_core.hpp"

namespace mdm {

/// r + s / pi; with pi replaced by a free parameter v the value is r + s / v.
struct SymbolicEntry {
  Rational r = 0;
  Rational s = 0;

  double value(double v = std::numbers::pi) const { return to_double(r) + to_double(s) / v; }
  bool is_zero() const { return r == 0 && s == 0; }
  friend bool operator==(const SymbolicEntry&, const SymbolicEntry&) = default;
};

class SymbolicMatrix {
 public:
  SymbolicMatrix() = default;
  explicit SymbolicMatrix(Index dim) : dim_(dim), data_(static_cast<std::size_t>(dim * dim)) {
    if (dim < 0) throw DimensionError("SymbolicMatrix: negative dimension");
  }

  static SymbolicMatrix from_rational(const RationalMatrix& m) {
    if (m.rows() != m.cols()) throw DimensionError("SymbolicMatrix: not square");
    SymbolicMatrix out(m.rows());
    for (Index r = 0; r < m.rows(); ++r)
      for (Index c = 0; c < m.cols(); ++c) out(r, c).r = m(r, c);
    return out;
  }

  Index dim() const { return dim_; }
  SymbolicEntry& operator()(Index r, Index c) { return data_[static_cast<std::size_t>(r * dim_ + c)]; }
  const SymbolicEntry& operator()(Index r, Index c) const { return data_[static_cast<std::size_t>(r * dim_ + c)]; }

  /// Sets (r,c) and its mirror (c,r).
  void set_symmetric(Index r, Index c, const SymbolicEntry& e) {
    (*this)(r, c) = e;
    (*this)(c, r) = e;
  }

  RationalMatrix rational_part() const { return part(&SymbolicEntry::r); }
  RationalMatrix pi_part() const { return part(&SymbolicEntry::s); }

  bool is_symmetric() const {
    for (Index r = 0; r < dim_; ++r)
      for (Index c = r + 1; c < dim_; ++c)
        if ((*this)(r, c) != (*this)(c, r)) return false;
    return true;
  }

  friend bool operator==(const SymbolicMatrix&, const SymbolicMatrix&) = default;

 private:
  RationalMatrix part(Rational SymbolicEntry::*field) const {
    RationalMatrix out(dim_, dim_);
    for (Index r = 0; r < dim_; ++r)
      for (Index c = 0; c < dim_; ++c) out(r, c) = (*this)(r, c).*field;
    return out;
  }

  Index dim_ = 0;
  std::vector<SymbolicEntry> data_;
};

/// Drops every 1/pi term (the v -> infinity limit).
inline RationalMatrix selection_rule(const SymbolicMatrix& sym) { return sym.rational_part(); }

/// Numeric matrix with entries r + s / v.
inline ComplexMatrix substitute_v(const SymbolicMatrix& sym, double v) {
  if (v == 0.0) throw DomainError("substitute_v: v must be nonzero");
  if (!std::isfinite(v)) throw DomainError("substitute_v: v must be finite");
  ComplexMatrix out(sym.dim(), sym.dim());
  for (Index r = 0; r < sym.dim(); ++r)
    for (Index c = 0; c < sym.dim(); ++c) out(r, c) = sym(r, c).value(v);
  return out;
}

struct EigenCluster {
  double value = 0;
  std::size_t multiplicity = 0;
  ComplexMatrix basis;  // orthonormal columns
};

struct SpectralDecomposition {
  std::vector<EigenCluster> clusters;  // ascending
  double cluster_tol = 1e-9;
  // Some adjacent gap fell in (tol, 3 tol): the clustering depends on the tolerance.
  bool unstable = false;

  std::vector<std::size_t> multiplicities() const {
    std::vector<std::size_t> out;
    for (const auto& c : clusters) out.push_back(c.multiplicity);
    return out;
  }
  std::vector<double> values() const {
    std::vector<double> out;
    for (const auto& c : clusters) out.push_back(c.value);
    return out;
  }
  std::size_t dimension() const {
    std::size_t d = 0;
    for (const auto& c : clusters) d += c.multiplicity;
    return d;
  }
};

/// Groups adjacent eigenvalues whose gap is <= tol.
inline SpectralDecomposition cluster_spectrum(const Eigensystem& eig, double tol = 1e-9) {
  if (!(tol >= 0)) throw DomainError("cluster_spectrum: negative tolerance");
  const Index n = eig.values.size();
  if (eig.vectors.cols() != n) throw DimensionError("cluster_spectrum: vector count differs from value count");
  for (Index i = 1; i < n; ++i)
    if (eig.values(i) < eig.values(i - 1)) throw DomainError("cluster_spectrum: eigenvalues are not sorted");
  SpectralDecomposition out;
  out.cluster_tol = tol;
  Index start = 0;
  for (Index i = 1; i <= n; ++i) {
    if (i < n) {
      const double gap = eig.values(i) - eig.values(i - 1);
      if (gap <= tol) continue;
      if (gap < 3 * tol) out.unstable = true;
    }
    EigenCluster c;
    c.multiplicity = static_cast<std::size_t>(i - start);
    c.value = eig.values.segment(start, i - start).mean();
    Eigen::HouseholderQR<ComplexMatrix> qr(eig.vectors.middleCols(start, i - start));
    c.basis = qr.householderQ() * ComplexMatrix::Identity(eig.vectors.rows(), i - start);
    out.clusters.push_back(std::move(c));
    start = i;
  }
  return out;
}

inline SpectralDecomposition decompose(const ComplexMatrix& h, double cluster_tol = 1e-9, double herm_tol = 1e-10) {
  return cluster_spectrum(hermitian_eig(h, herm_tol), cluster_tol);
}

/// ||P_a - P_b||_2 for the orthogonal projectors onto span(a) and span(b).
inline double subspace_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows()) throw DimensionError("subspace_distance: ambient dimensions differ");
  const ComplexMatrix diff = a * a.adjoint() - b * b.adjoint();
  if (diff.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(diff, Eigen::EigenvaluesOnly);
  return std::min(1.0, solver.eigenvalues().cwiseAbs().maxCoeff());
}

/// ||M x - lambda x||_2
inline double eigenvector_check(const ComplexMatrix& m, const ComplexVector& x, double lambda) {
  if (m.rows() != m.cols() || m.cols() != x.size()) throw DimensionError("eigenvector_check: dimension mismatch");
  return (m * x - lambda * x).norm();
}

// Exact spectra ----------------------------------------------------------

struct ExactEigenvalue {
  Rational value;
  std::size_t multiplicity = 0;
  friend bool operator==(const ExactEigenvalue&, const ExactEigenvalue&) = default;
};

/// Number of independent eigenvectors of m for eigenvalue lambda, exactly.
inline std::size_t exact_nullity(const RationalMatrix& m, const Rational& lambda) {
  RationalMatrix shifted = m;
  for (Index i = 0; i < m.rows(); ++i) shifted(i, i) -= lambda;
  return static_cast<std::size_t>(m.rows() - rank(std::move(shifted)));
}

/// Spectrum of a symmetric rational matrix whose eigenvalues are all rational.
/// Candidates come from a floating eigendecomposition; every value and
/// multiplicity is then certified by an exact rank computation. Throws if the
/// spectrum is not fully accounted for by rationals with denominator <= max_den.
inline std::vector<ExactEigenvalue> exact_spectrum(const RationalMatrix& m, const BigInt& max_den = BigInt(10000000),
                                                   double cluster_tol = 1e-9) {
  if (m.rows() != m.cols()) throw DimensionError("exact_spectrum: not square");
  if (!m.is_symmetric()) throw DomainError("exact_spectrum: matrix is not symmetric");
  const auto dec = decompose(m.to_complex(), cluster_tol);
  std::vector<ExactEigenvalue> out;
  std::size_t total = 0;
  for (const auto& c : dec.clusters) {
    const auto guess = best_rational(c.value, max_den, 1e-10 * std::max(1.0, std::abs(c.value)));
    if (!guess) throw Error("exact_spectrum: no rational candidate near " + std::to_string(c.value));
    const auto k = exact_nullity(m, *guess);
    if (k != c.multiplicity) {
      throw Error("exact_spectrum: eigenvalue " + to_string(*guess) + " certified with multiplicity " +
                  std::to_string(k) + ", numerics suggested " + std::to_string(c.multiplicity));
    }
    out.push_back({*guess, k});
    total += k;
  }
  if (total != static_cast<std::size_t>(m.rows())) throw Error("exact_spectrum: multiplicities do not add up");
  return out;
}

// Rational / pi reconstruction -------------------------------------------

enum class FitStatus { rational, pi_multiple, unresolved };

inline const char* to_string(FitStatus s) {
  switch (s) {
    case FitStatus::rational: return "rational";
    case FitStatus::pi_multiple: return "pi";
    case FitStatus::unresolved: return "unresolved";
  }
  return "?";
}

struct EntryFit {
  FitStatus status = FitStatus::unresolved;
  SymbolicEntry entry;
};

struct EntryModelFit {
  Index dim = 0;
  std::vector<EntryFit> entries;  // row-major

  const EntryFit& operator()(Index r, Index c) const { return entries[static_cast<std::size_t>(r * dim + c)]; }
  std::size_t count(FitStatus s) const {
    return static_cast<std::size_t>(std::count_if(entries.begin(), entries.end(), [s](const EntryFit& e) { return e.status == s; }));
  }
  /// The reconstructed matrix, if every entry resolved.
  std::optional<SymbolicMatrix> matrix() const {
    SymbolicMatrix out(dim);
    for (Index r = 0; r < dim; ++r)
      for (Index c = 0; c < dim; ++c) {
        const auto& e = (*this)(r, c);
        if (e.status == FitStatus::unresolved) return std::nullopt;
        out(r, c) = e.entry;
      }
    return out;
  }
};

namespace detail {

/// Accepts the first convergent within 3 sigma provided it is the last one
/// with denominator <= max_den, i.e. no finer rational in range competes.
inline std::optional<Rational> unambiguous_rational(double x, double sigma, const BigInt& max_den) {
  const auto cs = convergents(x, max_den);
  for (std::size_t i = 0; i < cs.size(); ++i) {
    if (std::abs(to_double(cs[i]) - x) <= 3 * sigma) {
      if (i + 1 < cs.size()) return std::nullopt;
      return cs[i];
    }
  }
  return std::nullopt;
}

}  // namespace detail

/// Per-entry reconstruction of x = r (rational) or x = s / pi from a numeric
/// matrix with per-entry standard errors.
inline EntryModelFit entry_model_fit(const ComplexMatrix& values, const Eigen::MatrixXd& stderr, const BigInt& max_den) {
  if (values.rows() != values.cols() || stderr.rows() != values.rows() || stderr.cols() != values.cols()) {
    throw DimensionError("entry_model_fit: dimension mismatch");
  }
  EntryModelFit out;
  out.dim = values.rows();
  out.entries.resize(static_cast<std::size_t>(values.size()));
  constexpr double eps = std::numeric_limits<double>::epsilon();
  for (Index r = 0; r < values.rows(); ++r)
    for (Index c = 0; c < values.cols(); ++c) {
      auto& fit = out.entries[static_cast<std::size_t>(r * out.dim + c)];
      const double x = values(r, c).real();
      const double sigma = std::max(stderr(r, c), 4 * eps * std::abs(x));
      if (std::abs(values(r, c).imag()) > 3 * sigma + 4 * eps) continue;
      if (auto q = detail::unambiguous_rational(x, sigma, max_den)) {
        fit.status = FitStatus::rational;
        fit.entry.r = *q;
      } else if (auto s = detail::unambiguous_rational(x * std::numbers::pi, sigma * std::numbers::pi, max_den)) {
        fit.status = FitStatus::pi_multiple;
        fit.entry.s = *s;
      }
    }
  return out;
}

inline EntryModelFit entry_model_fit(const MeanEstimate& est, const BigInt& max_den) {
  return entry_model_fit(est.mean, est.stderr, max_den);
}

}  // namespace mdm
