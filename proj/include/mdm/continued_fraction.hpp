#pragma once

// Continued-fraction convergents of a double, computed exactly from the
// binary value so that no rounding enters the expansion itself.

#include <cmath>
#include <optional>
#include <vector>

#include "mdm/errors.hpp"
#include "mdm/rational.hpp"

namespace mdm {

/// Convergents p_k/q_k of x in order, stopping before the first one whose
/// denominator exceeds max_den (or when the expansion terminates).
inline std::vector<Rational> convergents(double x, const BigInt& max_den) {
  if (!std::isfinite(x)) throw DomainError("convergents: non-finite input");
  if (max_den < 1) throw DomainError("convergents: max_den must be >= 1");
  Rational rest(x);  // exact value of the double
  BigInt p_prev = 0, q_prev = 1, p = 1, q = 0;
  std::vector<Rational> out;
  for (;;) {
    BigInt a = boost::multiprecision::numerator(rest) / boost::multiprecision::denominator(rest);
    if (a * boost::multiprecision::denominator(rest) > boost::multiprecision::numerator(rest)) --a;  // floor
    const BigInt p_next = a * p + p_prev;
    const BigInt q_next = a * q + q_prev;
    if (q_next > max_den) break;
    out.emplace_back(p_next, q_next);
    p_prev = p;
    q_prev = q;
    p = p_next;
    q = q_next;
    const Rational frac = rest - Rational(a);
    if (frac == 0) break;
    rest = 1 / frac;
  }
  return out;
}

/// First convergent within tol of x, if any exists with denominator <= max_den.
inline std::optional<Rational> best_rational(double x, const BigInt& max_den, double tol) {
  for (const auto& c : convergents(x, max_den))
    if (std::abs(to_double(c) - x) <= tol) return c;
  return std::nullopt;
}

}  // namespace mdm
