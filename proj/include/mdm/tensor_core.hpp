#pragma once

// Dense complex linear algebra on tensor-product spaces.
//
// Basis convention: for subsystems with dimensions (d_0, ..., d_{k-1}) the
// basis vector e_{i_0} (x) ... (x) e_{i_{k-1}} has linear index
// ((i_0 * d_1 + i_1) * d_2 + ...), i.e. the first subsystem is the most
// significant digit. Kronecker products follow the same row-major rule.

#include <Eigen/Dense>

#include <algorithm>
#include <complex>
#include <cstddef>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "mdm/errors.hpp"
#include "mdm/permutation.hpp"

namespace mdm {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using Index = Eigen::Index;

inline constexpr std::size_t kDefaultDimensionCap = 4096;

namespace detail {

inline std::size_t checked_product(std::size_t a, std::size_t b, std::size_t cap, const char* what) {
  if (a != 0 && b > std::numeric_limits<std::size_t>::max() / a) {
    throw DimensionError(std::string(what) + ": dimension overflow");
  }
  const std::size_t p = a * b;
  if (p > cap) {
    throw DimensionError(std::string(what) + ": dimension " + std::to_string(p) + " exceeds cap " +
                         std::to_string(cap));
  }
  return p;
}

inline std::size_t checked_power(std::size_t base, int exponent, std::size_t cap, const char* what) {
  std::size_t p = 1;
  for (int i = 0; i < exponent; ++i) p = checked_product(p, base, cap, what);
  return p;
}

/// Maps an index in the original subsystem order to its index after
/// reordering, where new position p holds old subsystem perm[p].
inline std::vector<std::size_t> reorder_index_map(std::span<const std::size_t> dims,
                                                  std::span<const std::size_t> perm) {
  const std::size_t k = dims.size();
  if (perm.size() != k) throw DomainError("reorder: permutation length does not match subsystem count");
  std::vector<char> seen(k, 0);
  for (auto p : perm) {
    if (p >= k || seen[p]) throw DomainError("reorder: invalid subsystem permutation");
    seen[p] = 1;
  }
  std::size_t total = 1;
  for (auto d : dims) total *= d;

  // Stride of old subsystem j inside the new layout.
  std::vector<std::size_t> new_stride(k);
  std::size_t s = 1;
  for (std::size_t p = k; p-- > 0;) {
    new_stride[perm[p]] = s;
    s *= dims[perm[p]];
  }
  std::vector<std::size_t> map(total);
  std::vector<std::size_t> digit(k, 0);
  for (std::size_t old = 0; old < total; ++old) {
    std::size_t idx = 0;
    for (std::size_t j = 0; j < k; ++j) idx += digit[j] * new_stride[j];
    map[old] = idx;
    for (std::size_t j = k; j-- > 0;) {
      if (++digit[j] < dims[j]) break;
      digit[j] = 0;
    }
  }
  return map;
}

template <class Matrix>
Matrix zero_like(Index rows, Index cols) {
  return Matrix::Zero(rows, cols);
}

}  // namespace detail

/// Kronecker product a (x) b; entry ((ia*rows_b + ib), (ja*cols_b + jb)) = a(ia,ja) b(ib,jb).
/// Works for Eigen matrices and RationalMatrix alike.
template <class Matrix>
Matrix tensor_product(const Matrix& a, const Matrix& b, std::size_t cap = kDefaultDimensionCap) {
  const auto rows = detail::checked_product(static_cast<std::size_t>(a.rows()), static_cast<std::size_t>(b.rows()),
                                            cap, "tensor_product");
  const auto cols = detail::checked_product(static_cast<std::size_t>(a.cols()), static_cast<std::size_t>(b.cols()),
                                            cap, "tensor_product");
  Matrix out = detail::zero_like<Matrix>(static_cast<Index>(rows), static_cast<Index>(cols));
  for (Index ia = 0; ia < a.rows(); ++ia)
    for (Index ja = 0; ja < a.cols(); ++ja) {
      const auto& v = a(ia, ja);
      if (v == typename Matrix::Scalar(0)) continue;
      for (Index ib = 0; ib < b.rows(); ++ib)
        for (Index jb = 0; jb < b.cols(); ++jb) out(ia * b.rows() + ib, ja * b.cols() + jb) = v * b(ib, jb);
    }
  return out;
}

/// m-fold Kronecker power.
template <class Matrix>
Matrix kron_power(const Matrix& a, int m, std::size_t cap = kDefaultDimensionCap) {
  if (m < 1) throw DomainError("tensor_power: m must be >= 1");
  detail::checked_power(static_cast<std::size_t>(std::max(a.rows(), a.cols())), m, cap, "tensor_power");
  Matrix out = a;
  for (int i = 1; i < m; ++i) out = tensor_product(out, a, cap);
  return out;
}

/// Conjugation by the subsystem permutation: new position p holds old subsystem perm[p].
template <class Matrix>
Matrix reorder_subsystems(const Matrix& rho, std::span<const std::size_t> dims, std::span<const std::size_t> perm) {
  std::size_t total = 1;
  for (auto d : dims) total *= d;
  if (rho.rows() != rho.cols() || static_cast<std::size_t>(rho.rows()) != total) {
    throw DimensionError("reorder_subsystems: product of dims does not match matrix dimension");
  }
  const auto map = detail::reorder_index_map(dims, perm);
  Matrix out = detail::zero_like<Matrix>(rho.rows(), rho.cols());
  for (std::size_t r = 0; r < total; ++r)
    for (std::size_t c = 0; c < total; ++c) out(map[r], map[c]) = rho(r, c);
  return out;
}

/// Reduced matrix on the kept subsystems (0-based indices, any order; the
/// result keeps them in ascending order).
template <class Matrix>
Matrix partial_trace(const Matrix& rho, std::span<const std::size_t> dims, std::span<const std::size_t> keep) {
  std::size_t total = 1;
  for (auto d : dims) total *= d;
  if (rho.rows() != rho.cols() || static_cast<std::size_t>(rho.rows()) != total) {
    throw DimensionError("partial_trace: product of dims does not match matrix dimension");
  }
  if (keep.empty()) throw DomainError("partial_trace: keep set is empty");
  std::vector<std::size_t> kept(keep.begin(), keep.end());
  std::sort(kept.begin(), kept.end());
  if (std::adjacent_find(kept.begin(), kept.end()) != kept.end() || kept.back() >= dims.size()) {
    throw DomainError("partial_trace: invalid keep set");
  }
  std::vector<std::size_t> perm = kept;
  std::size_t kept_dim = 1;
  for (auto k : kept) kept_dim *= dims[k];
  for (std::size_t j = 0; j < dims.size(); ++j)
    if (!std::binary_search(kept.begin(), kept.end(), j)) perm.push_back(j);
  const std::size_t traced_dim = total / kept_dim;

  const auto map = detail::reorder_index_map(dims, perm);
  std::vector<std::size_t> inverse(total);
  for (std::size_t i = 0; i < total; ++i) inverse[map[i]] = i;

  Matrix out = detail::zero_like<Matrix>(static_cast<Index>(kept_dim), static_cast<Index>(kept_dim));
  for (std::size_t a = 0; a < kept_dim; ++a)
    for (std::size_t b = 0; b < kept_dim; ++b)
      for (std::size_t t = 0; t < traced_dim; ++t)
        out(a, b) += rho(inverse[a * traced_dim + t], inverse[b * traced_dim + t]);
  return out;
}

/// Subsystem dimensions and tensor power of a (possibly composite) scenario.
struct Scenario {
  std::vector<std::size_t> factors;
  int power = 1;

  Scenario() = default;
  Scenario(std::vector<std::size_t> f, int m) : factors(std::move(f)), power(m) { validate(); }

  void validate(std::size_t cap = kDefaultDimensionCap) const {
    if (factors.empty()) throw DomainError("Scenario: no factors");
    for (auto n : factors)
      if (n < 2) throw DomainError("Scenario: every factor dimension must be >= 2");
    if (power < 1) throw DomainError("Scenario: power must be >= 1");
    total_dimension(cap);
  }

  std::size_t local_dimension() const {
    std::size_t d = 1;
    for (auto n : factors) d *= n;
    return d;
  }

  std::size_t total_dimension(std::size_t cap = kDefaultDimensionCap) const {
    std::size_t local = 1;
    for (auto n : factors) local = detail::checked_product(local, n, cap, "Scenario");
    return detail::checked_power(local, power, cap, "Scenario");
  }

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Linear index of basis vector e_{i_0} (x) ... (x) e_{i_{m-1}} on (C^n)^{(x)m}.
inline std::size_t basis_index(std::span<const int> digits, std::size_t n) {
  std::size_t idx = 0;
  for (int d : digits) idx = idx * n + static_cast<std::size_t>(d);
  return idx;
}

/// Image of each basis index under V_sigma: the factor in slot k moves to slot sigma(k).
inline std::vector<std::size_t> permutation_action(const Permutation& sigma, std::size_t n,
                                                   std::size_t cap = kDefaultDimensionCap) {
  const int m = sigma.size();
  const std::size_t dim = detail::checked_power(n, m, cap, "permutation_operator");
  std::vector<std::size_t> out(dim);
  std::vector<int> digits(m, 0), moved(m, 0);
  for (std::size_t i = 0; i < dim; ++i) {
    for (int k = 0; k < m; ++k) moved[sigma(k)] = digits[k];
    out[i] = basis_index(moved, n);
    for (int k = m; k-- > 0;) {
      if (++digits[k] < static_cast<int>(n)) break;
      digits[k] = 0;
    }
  }
  return out;
}

/// V_sigma on (C^n)^{(x)m}: e_{i_1} (x) ... (x) e_{i_m} -> e_{i_{s^-1(1)}} (x) ... (x) e_{i_{s^-1(m)}}.
inline ComplexMatrix permutation_operator(const Permutation& sigma, std::size_t n,
                                          std::size_t cap = kDefaultDimensionCap) {
  const auto action = permutation_action(sigma, n, cap);
  const auto dim = static_cast<Index>(action.size());
  ComplexMatrix v = ComplexMatrix::Zero(dim, dim);
  for (Index i = 0; i < dim; ++i) v(static_cast<Index>(action[i]), i) = 1.0;
  return v;
}

inline double max_abs(const ComplexMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

inline double hermiticity_defect(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  return max_abs(m - m.adjoint());
}

struct Eigensystem {
  Eigen::VectorXd values;  // ascending
  ComplexMatrix vectors;   // orthonormal columns
};

/// Hermitian eigendecomposition; eigenvectors of (numerically) repeated
/// eigenvalues are re-orthonormalized within their cluster.
inline Eigensystem hermitian_eig(const ComplexMatrix& h, double tol = 1e-10) {
  if (h.rows() != h.cols()) throw DimensionError("hermitian_eig: matrix is not square");
  const double defect = hermiticity_defect(h);
  if (!(defect <= tol)) {
    throw DomainError("hermitian_eig: input is not Hermitian (defect " + std::to_string(defect) + ")");
  }
  const ComplexMatrix sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
  if (solver.info() != Eigen::Success) throw Error("hermitian_eig: eigensolver did not converge");
  Eigensystem out{solver.eigenvalues(), solver.eigenvectors()};

  const double scale = std::max(1.0, out.values.cwiseAbs().maxCoeff());
  const double merge = 64 * std::numeric_limits<double>::epsilon() * scale * static_cast<double>(h.rows());
  Index start = 0;
  for (Index i = 1; i <= out.values.size(); ++i) {
    if (i < out.values.size() && out.values(i) - out.values(i - 1) <= merge) continue;
    if (i - start > 1) {
      auto block = out.vectors.middleCols(start, i - start);
      Eigen::HouseholderQR<ComplexMatrix> qr(block);
      ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(h.rows(), i - start);
      out.vectors.middleCols(start, i - start) = q;
    }
    start = i;
  }
  return out;
}

/// Validation tolerances for density matrices.
struct DensityTolerances {
  double hermiticity = 1e-10;
  double psd = 1e-10;
};

/// Hermitian, unit-trace, positive semidefinite complex matrix.
class DensityMatrix {
 public:
  explicit DensityMatrix(ComplexMatrix mat, DensityTolerances tol = {}) : mat_(std::move(mat)), tol_(tol) {
    if (auto problem = validation_error(mat_, tol_); !problem.empty()) throw DomainError("DensityMatrix: " + problem);
  }

  /// Wraps a matrix that is valid by construction (sampler output, tensor
  /// powers of valid states) without re-running the eigenvalue check.
  static DensityMatrix trusted(ComplexMatrix mat, DensityTolerances tol = {}) {
    return DensityMatrix(std::move(mat), tol, TrustedTag{});
  }

  static DensityMatrix maximally_mixed(Index n) {
    return trusted(ComplexMatrix::Identity(n, n) / static_cast<double>(n));
  }

  /// Qubit state from Bloch coordinates: r in [0,1], theta in [0,pi], phi in [0,2pi).
  static DensityMatrix from_bloch(double r, double theta, double phi) {
    if (!(r >= 0.0 && r <= 1.0)) throw DomainError("from_bloch: radius outside [0,1]");
    const double x = r * std::sin(theta) * std::cos(phi);
    const double y = r * std::sin(theta) * std::sin(phi);
    const double z = r * std::cos(theta);
    ComplexMatrix m(2, 2);
    m << Complex(1 + z, 0), Complex(x, -y), Complex(x, y), Complex(1 - z, 0);
    return trusted(0.5 * m);
  }

  /// Empty string when valid, otherwise a description of the first failure.
  static std::string validation_error(const ComplexMatrix& m, DensityTolerances tol) {
    if (m.rows() != m.cols() || m.rows() == 0) return "matrix is not square";
    if (!m.allFinite()) return "non-finite entries";
    if (hermiticity_defect(m) > tol.hermiticity) return "not Hermitian";
    if (std::abs(m.trace() - Complex(1.0)) > tol.hermiticity) return "trace differs from 1";
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
    if (solver.eigenvalues().minCoeff() < -tol.psd) return "not positive semidefinite";
    return {};
  }

  const ComplexMatrix& matrix() const { return mat_; }
  Index dim() const { return mat_.rows(); }
  DensityTolerances tolerances() const { return tol_; }

 private:
  struct TrustedTag {};
  DensityMatrix(ComplexMatrix mat, DensityTolerances tol, TrustedTag) : mat_(std::move(mat)), tol_(tol) {}

  ComplexMatrix mat_;
  DensityTolerances tol_;
};

inline DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b,
                                    std::size_t cap = kDefaultDimensionCap) {
  return DensityMatrix::trusted(tensor_product(a.matrix(), b.matrix(), cap), a.tolerances());
}

inline DensityMatrix tensor_power(const DensityMatrix& rho, int m, std::size_t cap = kDefaultDimensionCap) {
  return DensityMatrix::trusted(kron_power(rho.matrix(), m, cap), rho.tolerances());
}

inline DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::size_t> dims,
                                   std::span<const std::size_t> keep) {
  return DensityMatrix::trusted(partial_trace(rho.matrix(), dims, keep), rho.tolerances());
}

inline DensityMatrix reorder_subsystems(const DensityMatrix& rho, std::span<const std::size_t> dims,
                                        std::span<const std::size_t> perm) {
  return DensityMatrix::trusted(reorder_subsystems(rho.matrix(), dims, perm), rho.tolerances());
}

}  // namespace mdm
