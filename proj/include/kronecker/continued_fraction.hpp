#pragma once

/**
 * @file continued_fraction.hpp
 * @brief Continued fractions in dimension one: expansion of rationals,
 * eventually periodic descriptions, convergents, and the tail
 * classifications of limsup / liminf of g(alpha, N).
 *
 * Text syntax: "[a0;a1,a2,...]" for finite expansions and
 * "[a0;a1,...,(p1,...,pk)]" with the period in parentheses.
 */

#include <algorithm>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "kronecker/errors.hpp"
#include "kronecker/rational.hpp"

namespace kronecker {

enum class CFKind : std::uint8_t { finite, eventually_periodic };

struct CFDescription {
  CFKind kind = CFKind::finite;
  Integer a0 = 0;
  std::vector<Integer> preperiod;  // for finite: all quotients after a0
  std::vector<Integer> period;     // nonempty iff eventually periodic

  bool periodic() const noexcept { return kind == CFKind::eventually_periodic; }

  /// a_n for n >= 1, unrolling the period. Throws past the end of a finite
  /// expansion.
  const Integer& quotient(std::size_t n) const {
    detail::require(n >= 1, "partial quotient index starts at 1");
    if (n <= preperiod.size()) return preperiod[n - 1];
    detail::require(periodic(), "finite continued fraction has only " +
                                    std::to_string(preperiod.size()) + " partial quotients");
    return period[(n - 1 - preperiod.size()) % period.size()];
  }

  /// Number of quotients after a0, or 0 for an infinite expansion.
  std::size_t finite_length() const noexcept { return periodic() ? 0 : preperiod.size(); }

  friend bool operator==(const CFDescription&, const CFDescription&) = default;
};

struct Convergent {
  Integer a;
  Integer p;
  Integer q;
};

using ConvergentTable = std::vector<Convergent>;

namespace detail {

inline CFDescription expand_rational(const Rational& x) {
  CFDescription cf;
  Integer num = x.get_num();
  Integer den = x.get_den();
  mpz_fdiv_qr(cf.a0.get_mpz_t(), num.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  while (num != 0) {
    Integer a;
    Integer rem;
    mpz_fdiv_qr(a.get_mpz_t(), rem.get_mpz_t(), den.get_mpz_t(), num.get_mpz_t());
    cf.preperiod.push_back(a);
    den = num;
    num = rem;
  }
  return cf;
}

// Smallest primitive root of a cyclic word: [1,2,1,2] -> [1,2].
inline std::vector<Integer> primitive_period(const std::vector<Integer>& period) {
  const std::size_t len = period.size();
  for (std::size_t p = 1; p < len; ++p) {
    if (len % p) continue;
    bool repeats = true;
    for (std::size_t i = p; i < len && repeats; ++i) repeats = period[i] == period[i - p];
    if (repeats) return {period.begin(), period.begin() + static_cast<std::ptrdiff_t>(p)};
  }
  return period;
}

}  // namespace detail

/// Canonical form: primitive period, shortest preperiod, and for finite
/// expansions a last quotient >= 2 (a trailing 1 is folded into its
/// predecessor).
inline CFDescription normalize(CFDescription cf) {
  for (const auto& a : cf.preperiod) detail::require(a >= 1, "partial quotients must be >= 1");
  for (const auto& a : cf.period) detail::require(a >= 1, "partial quotients must be >= 1");
  if (cf.periodic()) {
    cf.period = detail::primitive_period(cf.period);
    while (!cf.preperiod.empty() && cf.preperiod.back() == cf.period.back()) {
      cf.preperiod.pop_back();
      std::rotate(cf.period.rbegin(), cf.period.rbegin() + 1, cf.period.rend());
    }
    return cf;
  }
  if (cf.preperiod.size() >= 1 && cf.preperiod.back() == 1) {
    cf.preperiod.pop_back();
    if (cf.preperiod.empty()) {
      cf.a0 += 1;
    } else {
      cf.preperiod.back() += 1;
    }
  }
  return cf;
}

inline CFDescription cf_expand(const Rational& x) {
  detail::require(x > 0 && x < 1, "cf_expand requires 0 < x < 1, got " + to_string(x));
  return detail::expand_rational(x);
}

/// Continued fraction of any rational (a0 = floor(x)).
inline CFDescription cf_of(const Rational& x) { return detail::expand_rational(x); }

/// Rows n = 1..count with p_n = a_n p_{n-1} + p_{n-2}, q_n likewise, from
/// p_{-1} = 1, p_0 = a0, q_{-1} = 0, q_0 = 1.
inline ConvergentTable cf_convergents(const CFDescription& cf, std::size_t count) {
  detail::require(count >= 1, "convergent count must be >= 1");
  detail::require(cf.periodic() || count <= cf.preperiod.size(),
                  "finite continued fraction has only " + std::to_string(cf.preperiod.size()) +
                      " partial quotients, " + std::to_string(count) + " requested");
  ConvergentTable out;
  out.reserve(count);
  Integer p_prev = 1, p = cf.a0;
  Integer q_prev = 0, q = 1;
  for (std::size_t n = 1; n <= count; ++n) {
    const Integer& a = cf.quotient(n);
    Integer p_next = a * p + p_prev;
    Integer q_next = a * q + q_prev;
    p_prev = std::move(p);
    q_prev = std::move(q);
    p = std::move(p_next);
    q = std::move(q_next);
    out.push_back({a, p, q});
  }
  return out;
}

/// Value of the convergent after `depth` partial quotients.
inline Rational cf_truncate(const CFDescription& cf, std::size_t depth) {
  if (depth == 0) return Rational(cf.a0);
  const auto table = cf_convergents(cf, depth);
  Rational out(table.back().p, table.back().q);
  out.canonicalize();
  return out;
}

inline bool golden_equivalent(const CFDescription& cf) {
  detail::require(cf.periodic(), "tail classification needs an eventually periodic expansion");
  const auto n = normalize(cf);
  return n.period.size() == 1 && n.period.front() == 1;
}

/// limsup g(alpha, N): 3 if a_n = 1 infinitely often, else 2.
inline int classify_limsup(const CFDescription& cf) {
  detail::require(cf.periodic(), "tail classification needs an eventually periodic expansion");
  for (const auto& a : cf.period) {
    if (a == 1) return 3;
  }
  return 2;
}

/// liminf g(alpha, N): 2 if alpha is equivalent to the golden ratio, else 1.
inline int classify_liminf(const CFDescription& cf) { return golden_equivalent(cf) ? 2 : 1; }

namespace detail {

inline std::vector<Integer> parse_quotient_list(std::string_view s, std::string_view whole) {
  std::vector<Integer> out;
  s = trim(s);
  if (s.empty()) return out;
  while (true) {
    const auto comma = s.find(',');
    const auto item = trim(s.substr(0, comma));
    require(is_integer_literal(item), "bad partial quotient '" + std::string(item) + "' in '" +
                                          std::string(whole) + "'");
    out.push_back(parse_integer_literal(item));
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return out;
}

}  // namespace detail

/// Parses "[0;1,1,2]" or "[0;3,(1,2)]". The result is normalized.
inline CFDescription parse_cf(std::string_view text) {
  auto s = detail::trim(text);
  detail::require(s.size() >= 2 && s.front() == '[' && s.back() == ']',
                  "continued fraction must look like [a0;a1,...]: '" + std::string(text) + "'");
  s = s.substr(1, s.size() - 2);
  CFDescription cf;
  const auto semi = s.find(';');
  cf.a0 = parse_integer(s.substr(0, semi));
  if (semi == std::string_view::npos) return cf;
  auto rest = s.substr(semi + 1);
  const auto open = rest.find('(');
  if (open != std::string_view::npos) {
    const auto close = rest.find(')');
    detail::require(close != std::string_view::npos && close > open &&
                        detail::trim(rest.substr(close + 1)).empty(),
                    "period must be a final parenthesized group: '" + std::string(text) + "'");
    auto head = detail::trim(rest.substr(0, open));
    if (!head.empty()) {
      detail::require(head.back() == ',', "missing comma before period: '" + std::string(text) + "'");
      head.remove_suffix(1);
    }
    cf.preperiod = detail::parse_quotient_list(head, text);
    cf.period = detail::parse_quotient_list(rest.substr(open + 1, close - open - 1), text);
    detail::require(!cf.period.empty(), "empty period in '" + std::string(text) + "'");
    cf.kind = CFKind::eventually_periodic;
  } else {
    cf.preperiod = detail::parse_quotient_list(rest, text);
  }
  return normalize(std::move(cf));
}

inline std::string to_string(const CFDescription& cf) {
  std::string out = "[" + cf.a0.get_str();
  const auto join = [](const std::vector<Integer>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) s += ',';
      s += v[i].get_str();
    }
    return s;
  };
  if (!cf.preperiod.empty() || cf.periodic()) out += ';';
  out += join(cf.preperiod);
  if (cf.periodic()) {
    if (!cf.preperiod.empty()) out += ',';
    out += "(" + join(cf.period) + ")";
  }
  return out + "]";
}

}  // namespace kronecker
