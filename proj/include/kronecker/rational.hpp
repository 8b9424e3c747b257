#pragma once

/**
 * @file rational.hpp
 * @brief Exact rational scalars and vectors.
 *
 * Scalars are GMP rationals, always kept canonical (lowest terms, positive
 * denominator). Text form is "p/q" or a bare integer on input; machine
 * output always uses "p/q".
 */

#include <gmpxx.h>

#include <cctype>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kronecker/errors.hpp"

namespace kronecker {

using Integer = mpz_class;
using Rational = mpq_class;

inline Integer floor(const Rational& x) {
  Integer out;
  mpz_fdiv_q(out.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return out;
}

/// Fractional part in [0,1).
inline Rational frac(const Rational& x) {
  Rational out = x - Rational(floor(x));
  out.canonicalize();
  return out;
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline bool is_integer_literal(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

inline Integer parse_integer_literal(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  return Integer(std::string(s), 10);
}

}  // namespace detail

inline Integer parse_integer(std::string_view text) {
  const auto s = detail::trim(text);
  detail::require(detail::is_integer_literal(s),
                  "not an integer literal: '" + std::string(text) + "'");
  return detail::parse_integer_literal(s);
}

/// Parses "p/q" or "p" (optional sign on p). Rejects zero denominators.
inline Rational parse_rational(std::string_view text) {
  const auto s = detail::trim(text);
  const auto slash = s.find('/');
  const auto num_text = detail::trim(s.substr(0, slash));
  if (!detail::is_integer_literal(num_text)) {
    detail::fail_validation("not a rational literal: '" + std::string(text) + "'");
  }
  Integer den = 1;
  if (slash != std::string_view::npos) {
    const auto den_text = detail::trim(s.substr(slash + 1));
    if (!detail::is_integer_literal(den_text) || den_text.front() == '-' ||
        den_text.front() == '+') {
      detail::fail_validation("not a rational literal: '" + std::string(text) + "'");
    }
    den = detail::parse_integer_literal(den_text);
    detail::require(den != 0, "zero denominator in '" + std::string(text) + "'");
  }
  Rational out(detail::parse_integer_literal(num_text), den);
  out.canonicalize();
  return out;
}

inline std::string to_string(const Rational& x) {
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

inline std::string to_string(const Integer& x) { return x.get_str(); }

/// A point of R^d with exact rational coordinates, d >= 1.
class RationalVector {
 public:
  explicit RationalVector(std::vector<Rational> coords) : coords_(std::move(coords)) {
    detail::require(!coords_.empty(), "rational vector must have dimension >= 1");
    for (auto& c : coords_) c.canonicalize();
  }
  RationalVector(std::initializer_list<Rational> coords)
      : RationalVector(std::vector<Rational>(coords)) {}

  std::size_t dim() const noexcept { return coords_.size(); }
  const Rational& operator[](std::size_t i) const { return coords_[i]; }
  std::span<const Rational> coords() const noexcept { return coords_; }
  auto begin() const noexcept { return coords_.begin(); }
  auto end() const noexcept { return coords_.end(); }

  /// Least common multiple of the coordinate denominators: the order of
  /// the vector in R^d / Z^d.
  Integer common_denominator() const {
    Integer out = 1;
    for (const auto& c : coords_) mpz_lcm(out.get_mpz_t(), out.get_mpz_t(), c.get_den_mpz_t());
    return out;
  }

  bool is_integral() const {
    for (const auto& c : coords_) {
      if (c.get_den() != 1) return false;
    }
    return true;
  }

  friend bool operator==(const RationalVector& a, const RationalVector& b) {
    return a.coords_ == b.coords_;
  }

 private:
  std::vector<Rational> coords_;
};

inline RationalVector operator+(const RationalVector& a, const RationalVector& b) {
  detail::require(a.dim() == b.dim(), "dimension mismatch in vector addition");
  std::vector<Rational> out;
  out.reserve(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) out.emplace_back(a[i] + b[i]);
  return RationalVector(std::move(out));
}

inline RationalVector operator*(const Integer& k, const RationalVector& v) {
  std::vector<Rational> out;
  out.reserve(v.dim());
  for (const auto& c : v) out.emplace_back(Rational(k) * c);
  return RationalVector(std::move(out));
}

/// Parses a comma-separated tuple such as "2/7,3/11" or "(2/7, 3/11)".
inline RationalVector parse_rational_vector(std::string_view text) {
  auto s = detail::trim(text);
  if (!s.empty() && s.front() == '(') {
    detail::require(s.back() == ')', "unbalanced parenthesis in '" + std::string(text) + "'");
    s = detail::trim(s.substr(1, s.size() - 2));
  }
  std::vector<Rational> coords;
  while (true) {
    const auto comma = s.find(',');
    coords.push_back(parse_rational(s.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return RationalVector(std::move(coords));
}

inline std::string to_string(const RationalVector& v) {
  std::string out;
  for (std::size_t i = 0; i < v.dim(); ++i) {
    if (i) out += ',';
    out += to_string(v[i]);
  }
  return out;
}

}  // namespace kronecker
