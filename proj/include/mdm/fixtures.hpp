#pragma once

// Published reference data: mean matrices, spectra, eigenvectors and partial
// entry lists, stored exactly. Positions in the builders below are 1-based to
// match the way the matrices are written out; stored indices are 0-based.

#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "mdm/errors.hpp"
#include "mdm/rational.hpp"
#include "mdm/spectral.hpp"

namespace mdm {

/// r + c sqrt(k) / (v sqrt 2), evaluated at v = pi unless stated otherwise.
struct SpectralValue {
  Rational r = 0;
  Rational c = 0;
  std::uint64_t radicand = 1;

  double value(double v = std::numbers::pi) const {
    return to_double(r) + to_double(c) * std::sqrt(static_cast<double>(radicand)) / (v * std::numbers::sqrt2);
  }
  bool is_rational() const { return c == 0; }
  friend bool operator==(const SpectralValue&, const SpectralValue&) = default;
};

struct SpectrumEntry {
  SpectralValue value;
  std::size_t multiplicity = 1;
};

struct EigenvectorSet {
  std::string label;
  SpectralValue eigenvalue;
  bool on_limit = false;  // eigenvectors of the selection-rule limit rather than the matrix itself
  std::vector<Eigen::VectorXd> vectors;
};

struct PartialEntry {
  Index row = 0, col = 0;
  SymbolicEntry value;
};

struct DiagonalCount {
  Rational value;
  std::size_t count = 0;
};

/// sum_i coeffs[i] y^{2i} = 0 with y = (center - scale * lambda) * pi.
struct EvenPolynomial {
  std::vector<BigInt> coeffs;
  Rational center;
  Rational scale;
};

struct Fixture {
  std::string id;
  std::string description;
  std::optional<SymbolicMatrix> matrix;
  std::vector<SpectrumEntry> spectrum;        // spectrum of the matrix (possibly partial)
  bool spectrum_complete = false;
  std::vector<SpectrumEntry> limit_spectrum;  // spectrum after the selection rule
  std::vector<double> decimals;               // eigenvalues known only as decimals
  std::vector<EigenvectorSet> eigenvectors;
  std::vector<PartialEntry> entries;
  std::vector<DiagonalCount> diagonal_counts;
  std::vector<EvenPolynomial> polynomials;
  std::vector<std::string> flags;
};

/// Sum of multiplicity * value: the rational part, and whether the
/// irrational parts cancel exactly.
struct SpectrumTrace {
  Rational rational;
  bool irrational_cancels = true;
};

inline SpectrumTrace spectrum_trace(const std::vector<SpectrumEntry>& spectrum) {
  SpectrumTrace out;
  std::map<std::uint64_t, Rational> by_radicand;
  for (const auto& e : spectrum) {
    out.rational += e.value.r * e.multiplicity;
    if (!e.value.is_rational()) by_radicand[e.value.radicand] += e.value.c * e.multiplicity;
  }
  for (const auto& [k, c] : by_radicand)
    if (c != 0) out.irrational_cancels = false;
  return out;
}

inline std::size_t spectrum_dimension(const std::vector<SpectrumEntry>& spectrum) {
  std::size_t d = 0;
  for (const auto& e : spectrum) d += e.multiplicity;
  return d;
}

namespace fixtures_detail {

inline Rational R(long long p, long long q = 1) { return make_rational(p, q); }
inline SpectralValue rat(long long p, long long q = 1) { return {R(p, q)}; }
inline SpectralValue irr(Rational r, Rational c, std::uint64_t k = 1) { return {std::move(r), std::move(c), k}; }
inline SymbolicEntry sym(Rational r, Rational s = 0) { return {std::move(r), std::move(s)}; }

/// Sparse vector from 1-based (position, value) pairs.
inline Eigen::VectorXd vec(Index dim, std::initializer_list<std::pair<int, double>> items) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(dim);
  for (const auto& [pos, val] : items) v(pos - 1) = val;
  return v;
}

inline RationalMatrix n2m2_matrix() {
  RationalMatrix m(4, 4);
  m(0, 0) = m(3, 3) = R(5, 18);
  m(1, 1) = m(2, 2) = R(2, 9);
  m(1, 2) = m(2, 1) = R(1, 18);
  return m;
}

inline RationalMatrix n2m3_matrix() {
  RationalMatrix m(8, 8);
  m(0, 0) = m(7, 7) = R(1, 6);
  for (int i = 1; i <= 6; ++i) m(i, i) = R(1, 9);
  for (auto [a, b] : {std::pair{2, 3}, {2, 5}, {3, 5}, {4, 6}, {4, 7}, {6, 7}}) m(a - 1, b - 1) = m(b - 1, a - 1) = R(1, 36);
  return m;
}

// Pattern of the 9x9 N=3, m=2 mean:
//   D, F diagonal values; O the rational off-diagonal; g, T = 10g/3, M = -2g the 1/pi slots.
inline constexpr const char* kNineByNine[9] = {
    "D0g00TgT0", "0FMO0MMM0", "gMFMT0O0g", "0OMF0MMM0", "00T0DgTg0",
    "TM0MgF0Og", "gMOMT0F0g", "TM0MgO0Fg", "00g00gggD",
};

/// The 9x9 matrix with Dirichlet parameter q: with A = 4 - 3q,
/// D = (3-2q)/(6A), F = (5-4q)/(12A), O = 1/(12A), g = 1/(216 pi A).
inline SymbolicMatrix nine_by_nine(const Rational& q) {
  const Rational a = 4 - 3 * q;
  const Rational gs = 1 / (216 * a);
  SymbolicMatrix m(9);
  for (int r = 0; r < 9; ++r)
    for (int c = 0; c < 9; ++c) {
      SymbolicEntry e;
      switch (kNineByNine[r][c]) {
        case 'D': e.r = (3 - 2 * q) / (6 * a); break;
        case 'F': e.r = (5 - 4 * q) / (12 * a); break;
        case 'O': e.r = 1 / (12 * a); break;
        case 'g': e.s = gs; break;
        case 'T': e.s = gs * R(10, 3); break;
        case 'M': e.s = gs * -2; break;
        default: break;
      }
      m(r, c) = e;
    }
  return m;
}

/// The same matrix with the literal values D = 1/8, F = 5/48, O = 1/48 and
/// g = 1/(864 pi).
inline SymbolicMatrix nine_by_nine_literal() {
  SymbolicMatrix m(9);
  for (int r = 0; r < 9; ++r)
    for (int c = 0; c < 9; ++c) {
      SymbolicEntry e;
      switch (kNineByNine[r][c]) {
        case 'D': e.r = R(1, 8); break;
        case 'F': e.r = R(5, 48); break;
        case 'O': e.r = R(1, 48); break;
        case 'g': e.s = R(1, 864); break;
        case 'T': e.s = R(10, 3 * 864); break;
        case 'M': e.s = R(-2, 864); break;
        default: break;
      }
      m(r, c) = e;
    }
  return m;
}

inline std::vector<SpectrumEntry> nine_by_nine_spectrum(const Rational& q) {
  const Rational a = 4 - 3 * q;
  const Rational mid = (3 - 2 * q) / (6 * a);
  const Rational c = 1 / (324 * a);
  return {
      {{R(1, 9) - 1 / (9 * a)}, 3},
      {{R(1, 9) + 1 / (18 * a)}, 2},
      {irr(mid, 7 * c), 1},        // lambda_6
      {irr(mid, -7 * c), 1},       // lambda_7
      {irr(mid, c, 331), 1},       // lambda_8
      {irr(mid, -c, 331), 1},      // lambda_9
  };
}

/// 27x27 N=3, m=3 rational part, placed by the monomial type of each cell:
/// E[a_{i1 j1} a_{i2 j2} a_{i3 j3}] for row (i1 i2 i3) and column (j1 j2 j3).
inline RationalMatrix n3m3_rational_part() {
  RationalMatrix m(27, 27);
  auto digits = [](int idx) { return std::array<int, 3>{idx / 9, (idx / 3) % 3, idx % 3}; };
  for (int row = 0; row < 27; ++row)
    for (int col = 0; col < 27; ++col) {
      const auto i = digits(row), j = digits(col);
      if (row == col) {
        const int distinct = 1 + (i[1] != i[0]) + (i[2] != i[0] && i[2] != i[1]);
        m(row, col) = distinct == 1 ? R(31, 600) : distinct == 2 ? R(11, 300) : R(37, 1200);
        continue;
      }
      std::vector<std::pair<int, int>> diag, off;
      for (int k = 0; k < 3; ++k) (i[k] == j[k] ? diag : off).emplace_back(i[k], j[k]);
      if (diag.size() == 1 && off.size() == 2 && off[0].first == off[1].second && off[0].second == off[1].first) {
        const int d = diag[0].first;
        // a_ii a_ij a_ji when the diagonal index is shared, a_ii a_jk a_kj otherwise
        m(row, col) = (d == off[0].first || d == off[0].second) ? R(3, 400) : R(7, 1200);
      } else if (off.size() == 3) {
        // a_ij a_jk a_ki: each index appears once as a row and once as a column label
        std::array<int, 3> rows{}, cols{};
        for (const auto& [a, b] : off) {
          ++rows[a];
          ++cols[b];
        }
        if (rows == std::array<int, 3>{1, 1, 1} && cols == std::array<int, 3>{1, 1, 1}) m(row, col) = R(1, 600);
      }
    }
  return m;
}

inline RationalMatrix n4m2_matrix(const Rational& q) {
  const Rational a = 5 - 4 * q;
  const Rational alpha = (2327 - 1620 * q) / (6480 * a), beta = (3947 - 3240 * q) / (12960 * a),
                 gamma = (1759 - 1440 * q) / (5760 * a), kappa = (971 - 864 * q) / (3456 * a),
                 eps = (1583 - 1080 * q) / (4320 * a), zeta = (2357 - 2160 * q) / (8640 * a),
                 eta = (299 - 180 * q) / (720 * a);
  const Rational diag[16] = {alpha, beta, gamma, kappa, beta, alpha, gamma, kappa,
                             gamma, gamma, eps,   zeta,  kappa, kappa, zeta,  eta};
  RationalMatrix m(16, 16);
  for (int i = 0; i < 16; ++i) m(i, i) = diag[i];
  auto put = [&m](int r, int c, const Rational& v) { m(r - 1, c - 1) = m(c - 1, r - 1) = v; };
  put(2, 5, 707 / (12960 * a));
  put(3, 9, 319 / (5760 * a));
  put(7, 10, 319 / (5760 * a));
  put(4, 13, 107 / (3456 * a));
  put(8, 14, 107 / (3456 * a));
  put(12, 15, 197 / (8640 * a));
  return m;
}

inline RationalMatrix n4m2_literal() {
  const Rational alpha = R(2327, 32400), beta = R(3947, 64800), gamma = R(1759, 28800), kappa = R(971, 17280),
                 eps = R(1583, 21600), zeta = R(2357, 43200), eta = R(299, 3600);
  const Rational diag[16] = {alpha, beta, gamma, kappa, beta, alpha, gamma, kappa,
                             gamma, gamma, eps,   zeta,  kappa, kappa, zeta,  eta};
  RationalMatrix m(16, 16);
  for (int i = 0; i < 16; ++i) m(i, i) = diag[i];
  auto put = [&m](int r, int c, const Rational& v) { m(r - 1, c - 1) = m(c - 1, r - 1) = v; };
  put(2, 5, R(707, 64800));
  put(3, 9, R(319, 28800));
  put(7, 10, R(319, 28800));
  put(4, 13, R(107, 17280));
  put(8, 14, R(107, 17280));
  put(12, 15, R(197, 43200));
  return m;
}

inline std::vector<SpectrumEntry> n4m2_spectrum(const Rational& q) {
  const Rational a = 5 - 4 * q;
  const Rational base = R(1, 16);
  return {
      {{base - 1 / (16 * a)}, 6},       {{base - 73 / (4320 * a)}, 1}, {{base - 1 / (1728 * a)}, 2},
      {{base + 151 / (3240 * a)}, 3},   {{base + 139 / (2880 * a)}, 2}, {{base + 233 / (4320 * a)}, 1},
      {{base + 37 / (360 * a)}, 1},
  };
}

/// Values a +- b and a +- c with the given radicands, each with multiplicity mult.
inline void add_quartet(std::vector<SpectrumEntry>& out, const Rational& centre, const Rational& c7,
                        const Rational& c331, std::size_t mult) {
  out.push_back({irr(centre, -c331, 331), mult});
  out.push_back({irr(centre, -c7 * 7), mult});
  out.push_back({irr(centre, c7 * 7), mult});
  out.push_back({irr(centre, c331, 331), mult});
}

inline std::vector<SpectrumEntry> n12_limit() {
  return {{rat(1, 360), 6}, {rat(1, 270), 27}, {rat(1, 240), 12}, {rat(1, 180), 54}, {rat(2, 225), 15}, {rat(1, 75), 30}};
}

inline std::vector<SpectrumEntry> n12_full() {
  std::vector<SpectrumEntry> s = {{rat(1, 360), 6}, {rat(1, 270), 27}, {rat(2, 225), 15},
                                  {rat(1, 240), 4}, {rat(1, 180), 18}, {rat(1, 75), 10}};
  add_quartet(s, R(1, 180), R(1, 29160), R(1, 29160), 9);
  add_quartet(s, R(1, 75), R(1, 12150), R(1, 12150), 5);
  add_quartet(s, R(1, 240), R(1, 38880), R(1, 38880), 2);
  return s;
}

inline Fixture make(const std::string& id) {
  const double s2 = std::numbers::sqrt2;
  const double s3 = std::sqrt(3.0);
  const double s6 = std::sqrt(6.0);
  const double s331 = std::sqrt(331.0);
  const double h = 1 / (2 * s2);
  Fixture f;
  f.id = id;

  if (id == "n2m2") {
    f.description = "N=2, m=2 mean (4x4)";
    f.matrix = SymbolicMatrix::from_rational(n2m2_matrix());
    f.spectrum = {{rat(1, 6), 1}, {rat(5, 18), 3}};
    f.spectrum_complete = true;
    f.limit_spectrum = f.spectrum;
  } else if (id == "n2m3") {
    f.description = "N=2, m=3 mean (8x8) with eigenvectors";
    f.matrix = SymbolicMatrix::from_rational(n2m3_matrix());
    f.spectrum = {{rat(1, 12), 4}, {rat(1, 6), 4}};
    f.spectrum_complete = true;
    f.limit_spectrum = f.spectrum;
    f.eigenvectors.push_back({"quadruplet 1/6", rat(1, 6), false,
                              {vec(8, {{8, 1}}), vec(8, {{4, 1 / s3}, {6, 1 / s3}, {7, 1 / s3}}),
                               vec(8, {{2, 1 / s3}, {3, 1 / s3}, {5, 1 / s3}}), vec(8, {{1, 1}})}});
    f.eigenvectors.push_back({"quadruplet 1/12", rat(1, 12), false,
                              {vec(8, {{4, -1 / s2}, {7, 1 / s2}}), vec(8, {{4, -1 / s6}, {6, s2 / s3}, {7, -1 / s6}}),
                               vec(8, {{2, -1 / s2}, {5, 1 / s2}}), vec(8, {{2, -1 / s6}, {3, s2 / s3}, {5, -1 / s6}})}});
  } else if (id == "n2m4.eigs") {
    f.description = "N=2, m=4 spectrum";
    f.spectrum = {{rat(1, 30), 2}, {rat(2, 45), 9}, {rat(8, 75), 5}};
    f.spectrum_complete = true;
    f.limit_spectrum = f.spectrum;
  } else if (id == "n2m5.eigs") {
    f.description = "N=2, m=5 spectrum";
    f.spectrum = {{rat(1, 60), 10}, {rat(1, 40), 16}, {rat(13, 180), 6}};
    f.spectrum_complete = true;
    f.limit_spectrum = f.spectrum;
  } else if (id == "n2m6.eigs") {
    f.description = "N=2, m=6 spectrum";
    f.spectrum = {{rat(1, 140), 5}, {rat(11, 1260), 27}, {rat(31, 2100), 25}, {rat(151, 2940), 7}};
    f.spectrum_complete = true;
    f.limit_spectrum = f.spectrum;
  } else if (id == "n3m2" || id == "n3m2.vecs") {
    f.description = id == "n3m2" ? "N=3, m=2 mean (9x9) with 1/pi entries" : "N=3, m=2 eigenvector sets";
    f.matrix = nine_by_nine_literal();
    f.spectrum = nine_by_nine_spectrum(0);
    f.spectrum_complete = true;
    f.limit_spectrum = {{rat(1, 12), 3}, {rat(1, 8), 6}};
    if (id == "n3m2.vecs") {
      const auto sp = nine_by_nine_spectrum(0);
      f.eigenvectors.push_back({"antitriplet", rat(1, 12), false,
                                {vec(9, {{6, -1 / s2}, {8, 1 / s2}}), vec(9, {{3, -1 / s2}, {7, 1 / s2}}),
                                 vec(9, {{2, -1 / s2}, {4, 1 / s2}})}});
      f.eigenvectors.push_back(
          {"doublet", rat(1, 8), false,
           {vec(9, {{2, 1 / (3 * s2)}, {4, 1 / (3 * s2)}, {9, 2 * s2 / 3}}),
            vec(9, {{1, 9 / s331}, {2, 26 / (3 * s331)}, {4, 26 / (3 * s331)}, {5, 9 / s331}, {9, -13 / (3 * s331)}})}});
      // The isolated vectors as listed belong to lambda_7, lambda_6, lambda_9, lambda_8.
      f.eigenvectors.push_back({"isolated 1", sp[3].value, false,
                                {vec(9, {{1, -0.5}, {3, -h}, {5, 0.5}, {6, h}, {7, -h}, {8, h}})}});
      f.eigenvectors.push_back({"isolated 2", sp[2].value, false,
                                {vec(9, {{1, 0.5}, {3, -h}, {5, -0.5}, {6, h}, {7, -h}, {8, h}})}});
      f.eigenvectors.push_back({"isolated 3", sp[5].value, false,
                                {vec(9, {{1, 13 / (2 * s331)}, {2, -6 / s331}, {3, -h}, {4, -6 / s331},
                                         {5, 13 / (2 * s331)}, {6, -h}, {7, -h}, {8, -h}, {9, 3 / s331}})}});
      f.eigenvectors.push_back({"isolated 4", sp[4].value, false,
                                {vec(9, {{1, 13 / (2 * s331)}, {2, -6 / s331}, {3, h}, {4, -6 / s331},
                                         {5, 13 / (2 * s331)}, {6, h}, {7, h}, {8, h}, {9, 3 / s331}})}});
      f.eigenvectors.push_back({"sextet", rat(1, 8), true,
                                {vec(9, {{9, 1}}), vec(9, {{6, 1 / s2}, {8, 1 / s2}}), vec(9, {{3, 1 / s2}, {7, 1 / s2}}),
                                 vec(9, {{5, 1}}), vec(9, {{2, 1 / s2}, {4, 1 / s2}}), vec(9, {{1, 1}})}});
    }
  } else if (id == "n3m3.partial") {
    f.description = "N=3, m=3 (27x27): full rational part, one known 1/pi entry, partial spectrum";
    SymbolicMatrix m = SymbolicMatrix::from_rational(n3m3_rational_part());
    m.set_symmetric(0, 2, sym(0, R(7, 8640)));
    f.matrix = m;
    f.flags.push_back("pi-part incomplete: only the (1,3) entry of the 24 with value 7/(8640 pi) is located");
    f.spectrum = {{rat(1, 60), 1}, {rat(7, 240), 4}, {rat(31, 600), 2}};
    for (const auto& c : {R(1, 720), R(1, 405)}) {
      f.spectrum.push_back({irr(R(7, 240), -c), 1});
      f.spectrum.push_back({irr(R(7, 240), c), 1});
    }
    f.spectrum.push_back({irr(R(7, 240), -R(1, 6480), 43), 1});
    f.spectrum.push_back({irr(R(7, 240), R(1, 6480), 43), 1});
    f.spectrum.push_back({irr(R(31, 600), -R(1, 162000), 2337181), 1});
    f.spectrum.push_back({irr(R(31, 600), R(1, 162000), 2337181), 1});
    f.decimals = {.0495426, .0496514, .0500807, .0515902, .0517431, .0532526, .0536819, .0537907};
    f.limit_spectrum = {{rat(1, 60), 1}, {rat(7, 240), 16}, {rat(31, 600), 10}};
    f.polynomials.push_back({{BigInt(5504), BigInt(-317043), BigInt(4986360), BigInt(-19131876)}, R(7), R(240)});
    f.polynomials.push_back({{BigInt("383127080633857021"), BigInt("-18544605647405907654"),
                              BigInt("4501753947892101744"), BigInt("-351843587054438400"), BigInt("8926168066560000")},
                             R(31),
                             R(600)});
    const double a = 1 / s6;
    f.eigenvectors.push_back({"isolated 1/60", rat(1, 60), true,
                              {vec(27, {{6, -a}, {8, a}, {12, a}, {16, -a}, {20, -a}, {22, a}})}});
  } else if (id == "n3m4.partial") {
    f.description = "N=3, m=4 (81x81): diagonal value counts and three 1/pi entries";
    f.diagonal_counts = {{R(7, 300), 3}, {R(11, 900), 18}, {R(17, 1200), 24}, {R(37, 3600), 36}};
    f.entries = {{0, 2, sym(0, R(41, 86400))}, {1, 2, sym(0, R(-43, 54000))}, {10, 11, sym(0, R(-37, 108000))}};
    f.limit_spectrum = {};
  } else if (id == "n4m2") {
    f.description = "N=4, m=2 mean (16x16)";
    f.matrix = SymbolicMatrix::from_rational(n4m2_literal());
    f.spectrum = {{rat(1, 20), 6},     {rat(1277, 21600), 1}, {rat(539, 8640), 2}, {rat(2327, 32400), 3},
                  {rat(1039, 14400), 2}, {rat(1583, 21600), 1}, {rat(299, 3600), 1}};
    f.spectrum_complete = true;
    f.limit_spectrum = f.spectrum;
    f.flags.push_back("not invariant under U(4) conjugation: the symmetric sector splits into six values");
  } else if (id == "n6m2.eigs") {
    f.description = "N=2x3, m=2 spectrum (36x36)";
    f.spectrum = {{rat(1, 72), 3}, {rat(1, 48), 2}, {rat(5, 216), 9}, {rat(5, 144), 6}};
    add_quartet(f.spectrum, R(1, 48), R(1, 7776), R(1, 7776), 1);
    add_quartet(f.spectrum, R(5, 144), R(5, 23328), R(5, 23328), 3);
    f.spectrum_complete = true;
    f.decimals = {.0203067, .0206307, .021036, .0213599, .0338445, .0343845, .0350599, .0355999};
    f.limit_spectrum = {{rat(1, 72), 3}, {rat(1, 48), 6}, {rat(5, 216), 9}, {rat(5, 144), 18}};
    f.flags.push_back("closed forms of the seven unnamed irrational values inferred from the decimals");
  } else if (id == "n12.232.eigs" || id == "n12.322.eigs") {
    f.description = id == "n12.232.eigs" ? "N=2x3x2, m=2 spectrum (144x144)" : "N=3x2x2, m=2 spectrum (144x144)";
    f.spectrum = n12_full();
    f.spectrum_complete = true;
    f.limit_spectrum = n12_limit();
    f.flags.push_back("limit spectrum differs from the product-measure factorization");
  } else if (id == "n5m2.diag") {
    f.description = "N=5, m=2 (25x25): first, second and sixth diagonal entries";
    f.entries = {{0, 0, sym(R(2, 45))}, {1, 1, sym(R(7, 180))}, {5, 5, sym(R(7, 180))}};
  } else if (id == "n4m3.partial") {
    f.description = "N=4, m=3 (64x64): three entries at q = 0";
    f.flags.push_back("(52,61) numerator printed as \"5026 - 2675\"; stored verbatim, excluded from checks");
    f.flags.push_back("not invariant under U(4) conjugation");
  } else {
    throw LookupError("unknown fixture id '" + id + "'");
  }
  return f;
}

}  // namespace fixtures_detail

inline std::vector<std::string> fixture_ids() {
  return {"n2m2", "n2m3", "n2m4.eigs", "n2m5.eigs", "n2m6.eigs", "n3m2", "n3m2.vecs", "n3m3.partial",
          "n3m4.partial", "n4m2", "n6m2.eigs", "n12.232.eigs", "n12.322.eigs", "n5m2.diag", "n4m3.partial"};
}

inline std::vector<std::string> dirichlet_family_ids() {
  return {"dirichlet.n2m2", "dirichlet.n2m3", "dirichlet.n3m2", "dirichlet.n4m2"};
}

inline Fixture fixture(const std::string& id) { return fixtures_detail::make(id); }

/// Dirichlet-q generalizations: matrices and spectra as exact functions of q.
inline Fixture dirichlet_family(const std::string& id, const Rational& q) {
  using namespace fixtures_detail;
  if (!(q < 1)) throw DomainError("dirichlet_family: q must be < 1");
  Fixture f;
  f.id = id;
  if (id == "dirichlet.n2m2") {
    const Rational a = 3 - 2 * q;
    f.description = "N=2, m=2 spectrum as a function of q";
    f.spectrum = {{{(1 - q) / (2 * a)}, 1}, {{(5 - 3 * q) / (6 * a)}, 3}};
  } else if (id == "dirichlet.n2m3") {
    const Rational a = 3 - 2 * q;
    f.description = "N=2, m=3 spectrum as a function of q";
    f.spectrum = {{{(1 - q) / (4 * a)}, 4}, {{(2 - q) / (4 * a)}, 4}};
  } else if (id == "dirichlet.n3m2") {
    f.description = "N=3, m=2 mean as a function of q";
    f.matrix = nine_by_nine(q);
    f.spectrum = nine_by_nine_spectrum(q);
    const Rational a = 4 - 3 * q;
    f.limit_spectrum = {{{R(1, 9) - 1 / (9 * a)}, 3}, {{(3 - 2 * q) / (6 * a)}, 6}};
  } else if (id == "dirichlet.n4m2") {
    f.description = "N=4, m=2 mean as a function of q";
    f.matrix = SymbolicMatrix::from_rational(n4m2_matrix(q));
    f.spectrum = n4m2_spectrum(q);
    f.limit_spectrum = f.spectrum;
  } else {
    throw LookupError("unknown Dirichlet family '" + id + "'");
  }
  f.spectrum_complete = true;
  if (f.limit_spectrum.empty()) f.limit_spectrum = f.spectrum;
  return f;
}

/// The three published N=4, m=3 entries (1-based (52,52), (52,61), (53,53)) at q.
/// The middle one uses the numerator exactly as printed.
inline std::vector<PartialEntry> n4m3_partial_entries(const Rational& q) {
  using fixtures_detail::R;
  const Rational den = (5 - 4 * q) * (3 - 2 * q);
  return {
      {51, 51, {(43581 + 10 * q * (2160 * q - 6283)) / (172800 * den), 0}},
      {51, 60, {Rational(5026 - 2675) / (172800 * den), 0}},
      {52, 52, {(58387 + 6 * q * (6480 * q - 15979)) / (311040 * den), 0}},
  };
}

}  // namespace mdm
