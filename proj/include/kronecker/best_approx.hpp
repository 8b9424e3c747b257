#pragma once

/**
 * @file best_approx.hpp
 * @brief Best Diophantine approximations of a rational stand-in for an
 * irrational alpha, and checks of the growth inequalities they satisfy.
 *
 * Terms are the strict record minima of q -> dist(0, q*alpha mod Z^d) for
 * q = 1, 2, ..., q_max. Index n is 1-based in every report, matching the
 * usual q_1 = 1 convention.
 *
 * Horizon guard: q_max must stay below the period L of alpha (the common
 * denominator). Inside the guard no orbit point returns to the origin, so
 * every record distance is positive.
 */

#include <algorithm>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kronecker/errors.hpp"
#include "kronecker/orbit.hpp"
#include "kronecker/rational.hpp"
#include "kronecker/torus.hpp"

namespace kronecker {

struct BestApproxTerm {
  std::uint64_t q;
  DistanceValue r;
};

struct BestApproxSequence {
  RationalVector alpha;
  Norm norm;
  std::uint64_t q_max;
  std::vector<BestApproxTerm> terms;
  bool hit_zero = false;

  std::size_t size() const noexcept { return terms.size(); }
  /// q_n with 1-based n.
  std::uint64_t q(std::size_t n) const { return terms.at(n - 1).q; }
  const DistanceValue& r(std::size_t n) const { return terms.at(n - 1).r; }

  /// Number of terms with q_n <= bound; equivalently the 1-based index of
  /// the largest such term (0 if none).
  std::size_t count_at_most(std::uint64_t bound) const {
    return static_cast<std::size_t>(
        std::upper_bound(terms.begin(), terms.end(), bound,
                         [](std::uint64_t b, const BestApproxTerm& t) { return b < t.q; }) -
        terms.begin());
  }
};

enum class Quantifier : std::uint8_t { for_all, exists_infinitely };

inline std::string to_string(Quantifier q) {
  return q == Quantifier::for_all ? "for_all" : "exists_infinitely";
}

/// Outcome of checking an index-shifted inequality across a sequence.
/// Indices are 1-based; [first_checked, last_checked] is empty when
/// first_checked > last_checked.
struct InequalityReport {
  std::string inequality;
  std::uint64_t shift = 0;
  Quantifier quantifier = Quantifier::for_all;
  std::size_t first_checked = 1;
  std::size_t last_checked = 0;
  /// Indices n whose inequality needs terms beyond the scanned horizon.
  std::size_t unchecked = 0;
  std::vector<std::size_t> violations;
  std::vector<std::size_t> witnesses;
  bool passed = false;

  std::size_t checked_count() const {
    return last_checked >= first_checked ? last_checked - first_checked + 1 : 0;
  }
};

namespace detail {

template <class Orbit>
BestApproxSequence scan_best_approximations(const Orbit& orbit, const RationalVector& alpha,
                                            std::uint64_t q_max) {
  BestApproxSequence seq{alpha, orbit.norm(), q_max, {}, false};
  auto pos = orbit.position(1);
  typename Orbit::distance_type best{};
  for (std::uint64_t q = 1; q <= q_max; ++q) {
    auto dist = orbit.distance_to_origin(pos);
    if (q == 1 || dist < best) {
      best = dist;
      seq.terms.push_back({q, orbit.to_distance(best)});
      if (best == 0) {
        seq.hit_zero = true;
        break;
      }
    }
    orbit.advance(pos);
  }
  return seq;
}

}  // namespace detail

/// Throws unless N (or q_max) lies strictly below the orbit period of alpha.
inline void check_horizon_guard(const RationalVector& alpha, std::uint64_t horizon,
                                const char* what) {
  const Integer period = orbit_period(alpha);
  if (Integer(static_cast<unsigned long>(horizon)) >= period) {
    detail::fail_validation(std::string("horizon guard violated: ") + what + "=" +
                            std::to_string(horizon) + " must be < " + period.get_str() +
                            " (common denominator of alpha)");
  }
}

inline BestApproxSequence compute_best_approximations(const RationalVector& alpha, Norm norm,
                                                      std::uint64_t q_max) {
  detail::require(q_max >= 1, "q_max must be >= 1");
  detail::require(!alpha.is_integral(), "alpha is integral: every orbit point is the origin");
  check_horizon_guard(alpha, q_max, "q_max");
  return visit_orbit(alpha, norm, [&](const auto& orbit) {
    return detail::scan_best_approximations(orbit, alpha, q_max);
  });
}

/// Throws invariant_violation if the sequence breaks monotonicity.
inline void assert_monotone(const BestApproxSequence& seq) {
  for (std::size_t i = 1; i < seq.terms.size(); ++i) {
    if (seq.terms[i].q <= seq.terms[i - 1].q) {
      throw invariant_violation("best-approximation q-terms not strictly increasing at n=" +
                                std::to_string(i + 1));
    }
    if (compare_distance(seq.terms[i].r, seq.terms[i - 1].r) != std::strong_ordering::less) {
      throw invariant_violation("record distances not strictly decreasing at n=" +
                                std::to_string(i + 1));
    }
  }
  if (!seq.terms.empty() && seq.terms.front().q != 1) {
    throw invariant_violation("first best-approximation term must be q=1");
  }
}

/// q_{n+shift} >= q_{n+1} + q_n. In exists mode the satisfying indices are
/// collected as witnesses; failures are not violations there.
inline InequalityReport verify_sum_inequality(const BestApproxSequence& seq, std::uint64_t shift,
                                              Quantifier quantifier) {
  detail::require(shift >= 1, "shift must be >= 1");
  detail::require(seq.size() >= shift + 2, "sequence too short: " + std::to_string(seq.size()) +
                                               " terms, need at least shift+2 = " +
                                               std::to_string(shift + 2));
  InequalityReport rep;
  rep.inequality = "q[n+" + std::to_string(shift) + "] >= q[n+1] + q[n]";
  rep.shift = shift;
  rep.quantifier = quantifier;
  rep.first_checked = 1;
  rep.last_checked = seq.size() - shift;
  rep.unchecked = shift;
  for (std::size_t n = rep.first_checked; n <= rep.last_checked; ++n) {
    const bool holds = seq.q(n + shift) >= seq.q(n + 1) + seq.q(n);
    if (quantifier == Quantifier::for_all && !holds) rep.violations.push_back(n);
    if (quantifier == Quantifier::exists_infinitely && holds) rep.witnesses.push_back(n);
  }
  rep.passed = quantifier == Quantifier::for_all ? rep.violations.empty() : !rep.witnesses.empty();
  return rep;
}

/// Contact number of the unit ball, where the value is settled. L-infinity
/// gives 3^d - 1 (returned for d <= 40); L2 is tabulated for d <= 4.
inline std::optional<std::uint64_t> contact_number(Norm norm, std::uint64_t d) {
  detail::require(d >= 1, "dimension must be >= 1");
  switch (norm) {
    case Norm::linf: {
      if (d > 40) return std::nullopt;
      std::uint64_t p = 1;
      for (std::uint64_t i = 0; i < d; ++i) p *= 3;
      return p - 1;
    }
    case Norm::l2: {
      static constexpr std::uint64_t kissing[] = {2, 6, 12, 24};
      if (d <= 4) return kissing[d - 1];
      return std::nullopt;
    }
    case Norm::l1: return std::nullopt;
  }
  return std::nullopt;
}

/// Least T with q_{n+T} >= 2 q_n for every n with n+T inside the sequence.
inline std::uint64_t doubling_index(const BestApproxSequence& seq) {
  detail::require(seq.size() >= 2, "doubling_index needs at least 2 terms");
  const std::size_t len = seq.size();
  for (std::size_t t = 1; t < len; ++t) {
    bool ok = true;
    for (std::size_t n = 1; n + t <= len && ok; ++n) ok = seq.q(n + t) >= 2 * seq.q(n);
    if (ok) return t;
  }
  // unreachable: t = len-1 only checks q_len >= 2 q_1 = 2
  throw invariant_violation("doubling_index: no shift satisfied on a strictly increasing sequence");
}

/// r_{n+K} <= r_n / 2, on squares for L2 (r^2_{n+K} <= r^2_n / 4).
inline InequalityReport halving_check(const BestApproxSequence& seq, std::uint64_t k) {
  detail::require(k >= 1, "K must be >= 1");
  detail::require(seq.size() >= k + 1, "sequence too short: " + std::to_string(seq.size()) +
                                           " terms, need at least K+1 = " + std::to_string(k + 1));
  const Rational factor = seq.norm == Norm::l2 ? Rational(1, 4) : Rational(1, 2);
  InequalityReport rep;
  rep.inequality = seq.norm == Norm::l2 ? "r[n+" + std::to_string(k) + "]^2 <= r[n]^2 / 4"
                                        : "r[n+" + std::to_string(k) + "] <= r[n] / 2";
  rep.shift = k;
  rep.first_checked = 1;
  rep.last_checked = seq.size() - k;
  rep.unchecked = k;
  for (std::size_t n = rep.first_checked; n <= rep.last_checked; ++n) {
    if (seq.r(n + k).value > seq.r(n).value * factor) rep.violations.push_back(n);
  }
  rep.passed = rep.violations.empty();
  return rep;
}

/// q_{n+1} >= floor(r_{n-1} / r_n) * q_n, for n = 2 .. len-1. L-infinity only.
inline InequalityReport ratio_floor_check(const BestApproxSequence& seq) {
  detail::require(seq.norm == Norm::linf, "ratio_floor_check is defined for the linf norm only");
  detail::require(seq.size() >= 3, "ratio_floor_check needs at least 3 terms");
  InequalityReport rep;
  rep.inequality = "q[n+1] >= floor(r[n-1] / r[n]) * q[n]";
  rep.shift = 1;
  rep.first_checked = 2;
  rep.last_checked = seq.size() - 1;
  rep.unchecked = 1;
  for (std::size_t n = rep.first_checked; n <= rep.last_checked; ++n) {
    detail::require(!seq.r(n).is_zero(), "ratio_floor_check: zero record distance");
    const Integer ratio = floor(Rational(seq.r(n - 1).value / seq.r(n).value));
    const Integer bound = ratio * Integer(static_cast<unsigned long>(seq.q(n)));
    if (Integer(static_cast<unsigned long>(seq.q(n + 1))) < bound) rep.violations.push_back(n);
  }
  rep.passed = rep.violations.empty();
  return rep;
}

}  // namespace kronecker
