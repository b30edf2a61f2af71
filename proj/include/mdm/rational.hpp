#pragma once

// Exact rational scalars and small dense rational matrices.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "mdm/errors.hpp"

namespace mdm {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational make_rational(long long num, long long den = 1) {
  if (den == 0) throw DomainError("Rational: zero denominator");
  return Rational(BigInt(num), BigInt(den));
}

/// "p/q", "p", or "-p/q"; surrounding whitespace is ignored.
inline Rational parse_rational(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  auto is_int = [](std::string_view s) {
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s)
      if (c < '0' || c > '9') return false;
    return true;
  };
  auto to_big = [](std::string_view s) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    return BigInt(std::string(s));
  };
  const auto slash = text.find('/');
  std::string_view num = trim(text.substr(0, slash));
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : trim(text.substr(slash + 1));
  if (!is_int(num) || !is_int(den)) {
    throw DomainError("not a rational literal: '" + std::string(text) + "'");
  }
  BigInt d = to_big(den);
  if (d == 0) throw DomainError("rational literal with zero denominator: '" + std::string(text) + "'");
  return Rational(to_big(num), d);
}

inline std::string to_string(const Rational& r) { return r.str(); }

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

/// Dense row-major matrix of exact rationals.
class RationalMatrix {
 public:
  using Index = Eigen::Index;
  using Scalar = Rational;

  RationalMatrix() = default;
  RationalMatrix(Index rows, Index cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows * cols)) {
    if (rows < 0 || cols < 0) throw DimensionError("RationalMatrix: negative dimension");
  }

  static RationalMatrix Zero(Index rows, Index cols) { return RationalMatrix(rows, cols); }
  static RationalMatrix Identity(Index n) {
    RationalMatrix m(n, n);
    for (Index i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  Index rows() const { return rows_; }
  Index cols() const { return cols_; }

  Rational& operator()(Index r, Index c) { return data_[static_cast<std::size_t>(r * cols_ + c)]; }
  const Rational& operator()(Index r, Index c) const { return data_[static_cast<std::size_t>(r * cols_ + c)]; }

  const std::vector<Rational>& data() const { return data_; }

  Rational trace() const {
    Rational t = 0;
    for (Index i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
  }

  RationalMatrix transpose() const {
    RationalMatrix t(cols_, rows_);
    for (Index r = 0; r < rows_; ++r)
      for (Index c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  bool is_symmetric() const {
    if (rows_ != cols_) return false;
    for (Index r = 0; r < rows_; ++r)
      for (Index c = r + 1; c < cols_; ++c)
        if ((*this)(r, c) != (*this)(c, r)) return false;
    return true;
  }

  Eigen::MatrixXcd to_complex() const {
    Eigen::MatrixXcd m(rows_, cols_);
    for (Index r = 0; r < rows_; ++r)
      for (Index c = 0; c < cols_; ++c) m(r, c) = to_double((*this)(r, c));
    return m;
  }

  RationalMatrix& operator+=(const RationalMatrix& o) {
    check_same(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  RationalMatrix& operator-=(const RationalMatrix& o) {
    check_same(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  RationalMatrix& operator*=(const Rational& s) {
    for (auto& v : data_) v *= s;
    return *this;
  }

  friend RationalMatrix operator+(RationalMatrix a, const RationalMatrix& b) { return a += b; }
  friend RationalMatrix operator-(RationalMatrix a, const RationalMatrix& b) { return a -= b; }
  friend RationalMatrix operator*(RationalMatrix a, const Rational& s) { return a *= s; }
  friend RationalMatrix operator*(const Rational& s, RationalMatrix a) { return a *= s; }

  friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
    if (a.cols_ != b.rows_) throw DimensionError("RationalMatrix: product dimension mismatch");
    RationalMatrix out(a.rows_, b.cols_);
    for (Index r = 0; r < a.rows_; ++r)
      for (Index k = 0; k < a.cols_; ++k) {
        const Rational& v = a(r, k);
        if (v == 0) continue;
        for (Index c = 0; c < b.cols_; ++c)
          if (b(k, c) != 0) out(r, c) += v * b(k, c);
      }
    return out;
  }

  friend bool operator==(const RationalMatrix& a, const RationalMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  void check_same(const RationalMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionError("RationalMatrix: shape mismatch");
  }

  Index rows_ = 0;
  Index cols_ = 0;
  std::vector<Rational> data_;
};

/// Rank by Gaussian elimination over Q; zero entries are skipped, so the
/// block-sparse matrices produced by the oracle stay cheap.
inline Eigen::Index rank(RationalMatrix a) {
  const auto rows = a.rows();
  const auto cols = a.cols();
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
    Eigen::Index p = r;
    while (p < rows && a(p, c) == 0) ++p;
    if (p == rows) continue;
    if (p != r)
      for (Eigen::Index j = c; j < cols; ++j) std::swap(a(p, j), a(r, j));
    for (Eigen::Index i = r + 1; i < rows; ++i) {
      if (a(i, c) == 0) continue;
      const Rational f = a(i, c) / a(r, c);
      for (Eigen::Index j = c; j < cols; ++j)
        if (a(r, j) != 0) a(i, j) -= f * a(r, j);
    }
    ++r;
  }
  return r;
}

/// Solves A x = b exactly for an integer matrix A using fraction-free (Bareiss)
/// elimination. Rank-deficient systems are allowed: free unknowns are set to
/// zero. Returns nullopt when the system is inconsistent.
inline std::optional<std::vector<Rational>> bareiss_solve(std::vector<std::vector<BigInt>> a,
                                                          const std::vector<Rational>& b) {
  const std::size_t rows = a.size();
  if (b.size() != rows) throw DimensionError("bareiss_solve: rhs length mismatch");
  const std::size_t cols = rows == 0 ? 0 : a.front().size();

  // Scale the right-hand side to integers and append it as an extra column.
  BigInt scale = 1;
  for (const auto& v : b) scale = boost::multiprecision::lcm(scale, boost::multiprecision::denominator(v));
  for (std::size_t i = 0; i < rows; ++i) {
    if (a[i].size() != cols) throw DimensionError("bareiss_solve: ragged matrix");
    const Rational scaled = b[i] * Rational(scale);
    a[i].push_back(boost::multiprecision::numerator(scaled));
  }

  BigInt prev = 1;
  std::vector<std::size_t> pivot_cols;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j <= cols; ++j) {
        a[i][j] = (a[r][c] * a[i][j] - a[i][c] * a[r][j]) / prev;
      }
      a[i][c] = 0;
    }
    prev = a[r][c];
    pivot_cols.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i)
    if (a[i][cols] != 0) return std::nullopt;

  std::vector<Rational> x(cols, Rational(0));
  for (std::size_t k = pivot_cols.size(); k-- > 0;) {
    const std::size_t c = pivot_cols[k];
    Rational acc = Rational(a[k][cols]);
    for (std::size_t j = c + 1; j < cols; ++j)
      if (a[k][j] != 0 && x[j] != 0) acc -= Rational(a[k][j]) * x[j];
    x[c] = acc / Rational(a[k][c]);
  }
  for (auto& v : x) v /= Rational(scale);
  return x;
}

}  // namespace mdm
