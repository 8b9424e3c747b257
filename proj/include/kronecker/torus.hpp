#pragma once

/**
 * @file torus.hpp
 * @brief Points of R^d / Z^d and exact torus distances.
 *
 * Only the L1, L2 and L-infinity norms are supported. All three are
 * monotone in each coordinate's absolute value, so the nearest lattice
 * translate is found coordinate-wise: each coordinate of x - y lies in
 * (-1, 1) and the optimal offset is its nearest integer.
 *
 * L2 distances are carried as their squares so every comparison stays in
 * exact rational arithmetic.
 */

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "kronecker/errors.hpp"
#include "kronecker/rational.hpp"

namespace kronecker {

enum class Norm : std::uint8_t { l1, l2, linf };

inline std::string to_string(Norm n) {
  switch (n) {
    case Norm::l1: return "l1";
    case Norm::l2: return "l2";
    case Norm::linf: return "linf";
  }
  return "?";
}

inline Norm parse_norm(std::string_view text) {
  std::string s;
  for (char c : detail::trim(text)) s += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (s == "l1") return Norm::l1;
  if (s == "l2") return Norm::l2;
  if (s == "linf" || s == "l-inf" || s == "inf" || s == "sup") return Norm::linf;
  detail::fail_validation("unknown norm '" + std::string(text) + "' (expected l1, l2 or linf)");
}

/// A point of the torus; every coordinate lies in [0,1).
class TorusPoint {
 public:
  explicit TorusPoint(std::vector<Rational> coords) : coords_(std::move(coords)) {
    detail::require(!coords_.empty(), "torus point must have dimension >= 1");
    for (auto& c : coords_) {
      c.canonicalize();
      detail::require(c >= 0 && c < 1, "torus coordinate outside [0,1): " + to_string(c));
    }
  }

  std::size_t dim() const noexcept { return coords_.size(); }
  const Rational& operator[](std::size_t i) const { return coords_[i]; }
  auto begin() const noexcept { return coords_.begin(); }
  auto end() const noexcept { return coords_.end(); }

  static TorusPoint origin(std::size_t d) { return TorusPoint(std::vector<Rational>(d, Rational(0))); }

  friend bool operator==(const TorusPoint& a, const TorusPoint& b) { return a.coords_ == b.coords_; }

 private:
  std::vector<Rational> coords_;
};

/// Exact distance tagged with its norm. For L2 `value` holds the squared
/// distance.
struct DistanceValue {
  Norm norm;
  Rational value;

  DistanceValue(Norm n, Rational v) : norm(n), value(std::move(v)) {
    value.canonicalize();
    detail::require(value >= 0, "distance must be nonnegative");
  }

  bool is_zero() const { return value == 0; }

  friend bool operator==(const DistanceValue& a, const DistanceValue& b) {
    return a.norm == b.norm && a.value == b.value;
  }
};

inline std::strong_ordering compare_distance(const DistanceValue& a, const DistanceValue& b) {
  detail::require(a.norm == b.norm, "cannot compare " + to_string(a.norm) + " distance with " +
                                        to_string(b.norm) + " distance");
  const int c = cmp(a.value, b.value);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

inline TorusPoint torus_reduce(const RationalVector& v) {
  std::vector<Rational> out;
  out.reserve(v.dim());
  for (const auto& c : v) out.push_back(frac(c));
  return TorusPoint(std::move(out));
}

namespace detail {

// Folds |x - y| for one coordinate onto [0, 1/2]: distance to the nearest
// integer of x - y, with x, y in [0,1).
inline Rational wrapped_gap(const Rational& x, const Rational& y) {
  Rational delta = abs(x - y);
  const Rational other = 1 - delta;
  return other < delta ? other : delta;
}

}  // namespace detail

inline DistanceValue torus_dist(const TorusPoint& x, const TorusPoint& y, Norm norm) {
  detail::require(x.dim() == y.dim(), "dimension mismatch: " + std::to_string(x.dim()) + " vs " +
                                          std::to_string(y.dim()));
  Rational acc = 0;
  for (std::size_t i = 0; i < x.dim(); ++i) {
    const Rational gap = detail::wrapped_gap(x[i], y[i]);
    switch (norm) {
      case Norm::l1: acc += gap; break;
      case Norm::l2: acc += gap * gap; break;
      case Norm::linf:
        if (gap > acc) acc = gap;
        break;
    }
  }
  return DistanceValue(norm, std::move(acc));
}

inline std::string to_string(const DistanceValue& d) { return to_string(d.value); }

}  // namespace kronecker
