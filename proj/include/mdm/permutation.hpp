#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mdm/errors.hpp"

namespace mdm {

/// A permutation of {0, ..., m-1}, stored by images: sigma(i) = images[i].
class Permutation {
 public:
  Permutation() = default;

  explicit Permutation(std::vector<int> images) : images_(std::move(images)) {
    std::vector<char> seen(images_.size(), 0);
    for (int v : images_) {
      if (v < 0 || static_cast<std::size_t>(v) >= images_.size() || seen[v]) {
        throw DomainError("Permutation: images are not a bijection");
      }
      seen[v] = 1;
    }
  }

  static Permutation identity(int m) {
    std::vector<int> im(m);
    std::iota(im.begin(), im.end(), 0);
    return Permutation(std::move(im));
  }

  static Permutation transposition(int m, int a, int b) {
    auto p = identity(m);
    std::swap(p.images_.at(a), p.images_.at(b));
    return p;
  }

  /// Parses cycle notation with 1-based points, e.g. "(12)(34)", "(1,10)", "()".
  static Permutation from_cycle_notation(std::string_view text, int m);

  int size() const { return static_cast<int>(images_.size()); }
  int operator()(int i) const { return images_[i]; }
  std::span<const int> images() const { return images_; }

  bool is_identity() const {
    for (int i = 0; i < size(); ++i)
      if (images_[i] != i) return false;
    return true;
  }

  Permutation inverse() const {
    std::vector<int> inv(images_.size());
    for (int i = 0; i < size(); ++i) inv[images_[i]] = i;
    return Permutation(std::move(inv));
  }

  /// Composition (s * t)(i) = s(t(i)).
  friend Permutation operator*(const Permutation& s, const Permutation& t) {
    if (s.size() != t.size()) throw DomainError("Permutation: size mismatch in composition");
    std::vector<int> im(s.images_.size());
    for (int i = 0; i < s.size(); ++i) im[i] = s.images_[t.images_[i]];
    return Permutation(std::move(im));
  }

  /// Disjoint cycles, fixed points included, each starting at its smallest point.
  std::vector<std::vector<int>> cycles() const {
    std::vector<std::vector<int>> out;
    std::vector<char> seen(images_.size(), 0);
    for (int i = 0; i < size(); ++i) {
      if (seen[i]) continue;
      std::vector<int> cyc;
      for (int j = i; !seen[j]; j = images_[j]) {
        seen[j] = 1;
        cyc.push_back(j);
      }
      out.push_back(std::move(cyc));
    }
    return out;
  }

  int cycle_count() const { return static_cast<int>(cycles().size()); }

  /// Cycle lengths in non-increasing order (a partition of m).
  std::vector<int> cycle_type() const {
    std::vector<int> t;
    for (const auto& c : cycles()) t.push_back(static_cast<int>(c.size()));
    std::sort(t.begin(), t.end(), std::greater<>());
    return t;
  }

  /// 1-based cycle notation with fixed points omitted; identity is "()".
  std::string cycle_notation() const {
    std::string out;
    const bool commas = size() > 9;
    for (const auto& c : cycles()) {
      if (c.size() < 2) continue;
      out += '(';
      for (std::size_t k = 0; k < c.size(); ++k) {
        if (commas && k > 0) out += ',';
        out += std::to_string(c[k] + 1);
      }
      out += ')';
    }
    return out.empty() ? std::string("()") : out;
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> images_;
};

inline Permutation Permutation::from_cycle_notation(std::string_view text, int m) {
  std::vector<int> im(m);
  std::iota(im.begin(), im.end(), 0);
  std::size_t pos = 0;
  auto fail = [&] { throw DomainError("Permutation: malformed cycle notation '" + std::string(text) + "'"); };
  std::vector<char> used(m, 0);
  while (pos < text.size()) {
    if (text[pos] != '(') fail();
    ++pos;
    std::vector<int> cyc;
    std::string num;
    const bool commas = text.find(',') != std::string_view::npos;
    auto flush = [&] {
      if (num.empty()) return;
      int v = std::stoi(num) - 1;
      if (v < 0 || v >= m || used[v]) fail();
      used[v] = 1;
      cyc.push_back(v);
      num.clear();
    };
    while (pos < text.size() && text[pos] != ')') {
      char ch = text[pos++];
      if (ch == ',') {
        flush();
      } else if (ch >= '0' && ch <= '9') {
        num += ch;
        if (!commas) flush();
      } else if (ch != ' ') {
        fail();
      }
    }
    if (pos >= text.size()) fail();
    flush();
    ++pos;
    for (std::size_t k = 0; k < cyc.size(); ++k) im[cyc[k]] = cyc[(k + 1) % cyc.size()];
  }
  return Permutation(std::move(im));
}

/// All m! permutations in lexicographic order of their image vectors.
inline std::vector<Permutation> all_permutations(int m) {
  std::vector<int> im(m);
  std::iota(im.begin(), im.end(), 0);
  std::vector<Permutation> out;
  do {
    out.emplace_back(im);
  } while (std::next_permutation(im.begin(), im.end()));
  return out;
}

/// Partitions of m in reverse-lexicographic order, e.g. m=3: {3}, {2,1}, {1,1,1}.
inline std::vector<std::vector<int>> partitions(int m) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int remaining, int max_part) -> void {
    if (remaining == 0) {
      out.push_back(cur);
      return;
    }
    for (int p = std::min(remaining, max_part); p >= 1; --p) {
      cur.push_back(p);
      self(self, remaining - p, p);
      cur.pop_back();
    }
  };
  rec(rec, m, m);
  return out;
}

}  // namespace mdm
