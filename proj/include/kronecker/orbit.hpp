#pragma once

/**
 * @file orbit.hpp
 * @brief Integer kernel for the Kronecker orbit k*alpha mod Z^d.
 *
 * With L the common denominator of alpha, every orbit point is a_k / L with
 * integer numerators a_k in [0, L). All torus distances between orbit points
 * then share one denominator: L for L1 and L-infinity, L^2 for squared L2.
 * Comparisons reduce to integer comparisons on the numerators, which is
 * what the scans below do. Exact rationals are only built at the API
 * boundary.
 *
 * Two instantiations exist: a native one (int64 coordinates, __int128
 * distances) used whenever the numerators provably fit, and a GMP one for
 * everything else. `visit_orbit` picks between them.
 */

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "kronecker/errors.hpp"
#include "kronecker/rational.hpp"
#include "kronecker/torus.hpp"

namespace kronecker {

using int128 = __int128;

template <class Int>
struct wide_integer;

template <>
struct wide_integer<std::int64_t> {
  using type = int128;
};

template <>
struct wide_integer<Integer> {
  using type = Integer;
};

template <class Int>
using wide_integer_t = typename wide_integer<Int>::type;

namespace detail {

inline Integer to_integer(const int128& v) {
  const bool neg = v < 0;
  auto mag = static_cast<unsigned __int128>(neg ? -v : v);
  Integer hi = static_cast<unsigned long>(static_cast<std::uint64_t>(mag >> 64));
  Integer lo = static_cast<unsigned long>(static_cast<std::uint64_t>(mag));
  Integer out = (hi << 64) + lo;
  return neg ? Integer(-out) : out;
}

inline const Integer& to_integer(const Integer& v) { return v; }

template <class Int>
Int from_integer(const Integer& v);

template <>
inline std::int64_t from_integer<std::int64_t>(const Integer& v) {
  return static_cast<std::int64_t>(v.get_si());
}

template <>
inline Integer from_integer<Integer>(const Integer& v) {
  return v;
}

// Coordinate numerators are < 2^62, so sums of d of them and sums of d
// squares of values <= L/2 stay below 2^126 for the norms admitted here.
inline bool fits_native(const RationalVector& alpha, Norm norm) {
  const Integer period = alpha.common_denominator();
  const Integer native_limit = Integer(1) << 62;
  if (period >= native_limit) return false;
  const Integer wide_limit = Integer(1) << 126;
  const Integer d = static_cast<unsigned long>(alpha.dim());
  switch (norm) {
    case Norm::l1:
    case Norm::linf: return d * period < wide_limit;
    case Norm::l2: {
      const Integer half = period / 2 + 1;
      return d * half * half < wide_limit;
    }
  }
  return false;
}

}  // namespace detail

/// Orbit of alpha on the torus scaled by the common denominator L.
/// Positions are spans of `dim()` integers in [0, L).
template <class Int>
class ScaledOrbit {
 public:
  using value_type = Int;
  using distance_type = wide_integer_t<Int>;

  ScaledOrbit(const RationalVector& alpha, Norm norm)
      : norm_(norm), dim_(alpha.dim()), period_big_(alpha.common_denominator()) {
    period_ = detail::from_integer<Int>(period_big_);
    step_.reserve(dim_);
    for (const auto& c : alpha) {
      Integer scaled = Integer(c.get_num() * (period_big_ / c.get_den()));
      Integer reduced;
      mpz_fdiv_r(reduced.get_mpz_t(), scaled.get_mpz_t(), period_big_.get_mpz_t());
      step_.push_back(detail::from_integer<Int>(reduced));
    }
  }

  Norm norm() const noexcept { return norm_; }
  std::size_t dim() const noexcept { return dim_; }
  /// Common denominator L; the orbit has exactly L distinct points.
  const Integer& period() const noexcept { return period_big_; }

  std::vector<Int> origin() const { return std::vector<Int>(dim_, Int(0)); }

  /// Scaled position of q*alpha mod Z^d.
  std::vector<Int> position(std::uint64_t q) const {
    std::vector<Int> out(dim_);
    if constexpr (std::is_same_v<Int, std::int64_t>) {
      for (std::size_t i = 0; i < dim_; ++i) {
        out[i] = static_cast<std::int64_t>(static_cast<int128>(step_[i]) * q % period_);
      }
    } else {
      const Integer qq = static_cast<unsigned long>(q);
      for (std::size_t i = 0; i < dim_; ++i) {
        Integer t = step_[i] * qq;
        mpz_fdiv_r(out[i].get_mpz_t(), t.get_mpz_t(), period_.get_mpz_t());
      }
    }
    return out;
  }

  /// pos <- pos + alpha (mod Z^d).
  void advance(std::span<Int> pos) const {
    for (std::size_t i = 0; i < dim_; ++i) {
      pos[i] += step_[i];
      if (pos[i] >= period_) pos[i] -= period_;
    }
  }

  distance_type distance_to_origin(std::span<const Int> pos) const {
    distance_type acc = 0;
    for (std::size_t i = 0; i < dim_; ++i) {
      Int gap = period_ - pos[i];
      if (pos[i] < gap) gap = pos[i];
      accumulate(acc, gap);
    }
    return acc;
  }

  distance_type distance(std::span<const Int> a, std::span<const Int> b) const {
    distance_type acc = 0;
    for (std::size_t i = 0; i < dim_; ++i) {
      Int gap = a[i] >= b[i] ? Int(a[i] - b[i]) : Int(b[i] - a[i]);
      Int other = period_ - gap;
      if (other < gap) gap = std::move(other);
      accumulate(acc, gap);
    }
    return acc;
  }

  /// Exact value of a scaled distance: numerator / L, or / L^2 for L2.
  DistanceValue to_distance(const distance_type& scaled) const {
    Rational v(detail::to_integer(scaled), norm_ == Norm::l2 ? Integer(period_big_ * period_big_)
                                                             : period_big_);
    v.canonicalize();
    return DistanceValue(norm_, std::move(v));
  }

 private:
  void accumulate(distance_type& acc, const Int& gap) const {
    switch (norm_) {
      case Norm::l1: acc += distance_type(gap); break;
      case Norm::l2: {
        const distance_type g(gap);
        acc += g * g;
        break;
      }
      case Norm::linf:
        if (distance_type(gap) > acc) acc = distance_type(gap);
        break;
    }
  }

  Norm norm_;
  std::size_t dim_;
  Integer period_big_;
  Int period_;
  std::vector<Int> step_;
};

using NativeOrbit = ScaledOrbit<std::int64_t>;
using BigOrbit = ScaledOrbit<Integer>;

/// Calls `fn` with the narrowest exact orbit kernel for (alpha, norm).
template <class Fn>
decltype(auto) visit_orbit(const RationalVector& alpha, Norm norm, Fn&& fn) {
  if (detail::fits_native(alpha, norm)) return std::forward<Fn>(fn)(NativeOrbit(alpha, norm));
  return std::forward<Fn>(fn)(BigOrbit(alpha, norm));
}

/// Order of alpha on the torus: the number of distinct orbit points.
inline Integer orbit_period(const RationalVector& alpha) { return alpha.common_denominator(); }

/// dist(0, q*alpha mod Z^d).
inline DistanceValue orbit_distance(const RationalVector& alpha, std::uint64_t q, Norm norm) {
  detail::require(q >= 1, "orbit_distance requires q >= 1");
  return visit_orbit(alpha, norm, [&](const auto& orbit) {
    const auto pos = orbit.position(q);
    return orbit.to_distance(orbit.distance_to_origin(pos));
  });
}

}  // namespace kronecker
