#pragma once

/**
 * @file gap_spectrum.hpp
 * @brief Nearest-neighbour distances D_q(N) in the first N+1 orbit points
 * and the count g(alpha, N) of their distinct values.
 *
 * Two independent routes are provided:
 *  - the oracle: direct enumeration of pairwise torus distances, either per
 *    query (`nearest_distance`) or maintained incrementally in N
 *    (`IncrementalSpectrum`);
 *  - the fast route through best approximations: D_q(N) is the record
 *    distance at the largest term <= max(q, N-q), and g(alpha, N) follows
 *    from the bracketing indices q_n <= N < q_{n+1}, 2q_m <= N < 2q_{m+1}.
 */

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kronecker/best_approx.hpp"
#include "kronecker/errors.hpp"
#include "kronecker/orbit.hpp"
#include "kronecker/torus.hpp"

namespace kronecker {

struct SpectrumEntry {
  DistanceValue value;
  std::uint64_t multiplicity;
};

struct GapSpectrum {
  RationalVector alpha;
  Norm norm;
  std::uint64_t n;
  std::vector<SpectrumEntry> entries;  // strictly increasing values
};

struct CountPoint {
  std::uint64_t n;
  std::uint64_t g;
};

struct CountSeries {
  RationalVector alpha;
  Norm norm;
  std::uint64_t n_lo;
  std::uint64_t n_hi;
  bool fast = false;
  std::vector<CountPoint> g_values;
  std::uint64_t window_max = 0;
  std::uint64_t window_min = 0;
};

/**
 * D_q(N) for every q <= N, kept current as points are appended.
 *
 * Appending point N+1 costs O(N d): one distance to each earlier point.
 * Distinct values are tracked in an ordered multiset so g is O(1) to read.
 */
template <class Orbit>
class IncrementalSpectrum {
 public:
  using value_type = typename Orbit::value_type;
  using distance_type = typename Orbit::distance_type;

  explicit IncrementalSpectrum(Orbit orbit) : orbit_(std::move(orbit)), current_(orbit_.origin()) {
    positions_.insert(positions_.end(), current_.begin(), current_.end());
    nearest_.emplace_back(std::nullopt);
  }

  const Orbit& orbit() const noexcept { return orbit_; }

  /// Largest N represented; starts at 0 (a single point, no distances yet).
  std::uint64_t n() const noexcept { return nearest_.size() - 1; }

  /// Appends the orbit point with index n()+1.
  void extend() {
    const std::size_t d = orbit_.dim();
    orbit_.advance(current_);
    const std::size_t k = nearest_.size();
    std::optional<distance_type> own;
    for (std::size_t q = 0; q < k; ++q) {
      const std::span<const value_type> pos(positions_.data() + q * d, d);
      distance_type dist = orbit_.distance(pos, current_);
      auto& slot = nearest_[q];
      if (!slot || dist < *slot) {
        if (slot) release(*slot);
        slot = dist;
        ++counts_[dist];
      }
      if (!own || dist < *own) own = std::move(dist);
    }
    positions_.insert(positions_.end(), current_.begin(), current_.end());
    ++counts_[*own];
    nearest_.emplace_back(std::move(own));
  }

  void extend_to(std::uint64_t target) {
    while (n() < target) extend();
  }

  /// g(alpha, N) at the current N (N >= 1).
  std::uint64_t distinct() const { return counts_.size(); }

  const distance_type& nearest(std::uint64_t q) const { return *nearest_.at(q); }

  const std::map<distance_type, std::uint64_t>& multiplicities() const noexcept { return counts_; }

 private:
  void release(const distance_type& v) {
    auto it = counts_.find(v);
    if (--it->second == 0) counts_.erase(it);
  }

  Orbit orbit_;
  std::vector<value_type> current_;
  std::vector<value_type> positions_;
  std::vector<std::optional<distance_type>> nearest_;
  std::map<distance_type, std::uint64_t> counts_;
};

namespace detail {

inline void check_spectrum_args(const RationalVector& alpha, std::uint64_t n) {
  require(n >= 1, "N must be >= 1");
  require(!alpha.is_integral(), "alpha is integral: every orbit point is the origin");
  check_horizon_guard(alpha, n, "N");
}

template <class Orbit>
typename Orbit::distance_type nearest_scaled(const Orbit& orbit, std::uint64_t q, std::uint64_t n) {
  const auto target = orbit.position(q);
  auto pos = orbit.origin();
  std::optional<typename Orbit::distance_type> best;
  for (std::uint64_t k = 0; k <= n; ++k) {
    if (k != q) {
      auto dist = orbit.distance(target, pos);
      if (!best || dist < *best) best = std::move(dist);
    }
    orbit.advance(pos);
  }
  return *best;
}

}  // namespace detail

/// Oracle D_q(N): minimum over k in [0, N], k != q, of the pairwise torus
/// distance between q*alpha and k*alpha.
inline DistanceValue nearest_distance(const RationalVector& alpha, Norm norm, std::uint64_t q,
                                      std::uint64_t n) {
  detail::check_spectrum_args(alpha, n);
  detail::require(q <= n, "q must lie in [0, N]");
  return visit_orbit(alpha, norm, [&](const auto& orbit) {
    return orbit.to_distance(detail::nearest_scaled(orbit, q, n));
  });
}

/// Fast D_q(N): the record distance at the largest term <= max(q, N-q).
inline const DistanceValue& nearest_distance_fast(const BestApproxSequence& seq, std::uint64_t q,
                                                  std::uint64_t n) {
  detail::require(n >= 1, "N must be >= 1");
  detail::require(q <= n, "q must lie in [0, N]");
  const std::uint64_t reach = std::max(q, n - q);
  detail::require(seq.q_max >= reach || seq.hit_zero,
                  "sequence horizon " + std::to_string(seq.q_max) + " is below max(q, N-q) = " +
                      std::to_string(reach));
  const std::size_t idx = seq.count_at_most(reach);
  detail::require(idx >= 1, "sequence has no terms");
  const auto& term = seq.terms[idx - 1];
  detail::require(!term.r.is_zero(),
                  "record distance reached zero before max(q, N-q): alpha is periodic inside "
                  "the requested range");
  return term.r;
}

inline GapSpectrum gap_spectrum(const RationalVector& alpha, Norm norm, std::uint64_t n) {
  detail::check_spectrum_args(alpha, n);
  return visit_orbit(alpha, norm, [&](const auto& orbit) {
    IncrementalSpectrum spectrum(orbit);
    spectrum.extend_to(n);
    GapSpectrum out{alpha, norm, n, {}};
    for (const auto& [value, count] : spectrum.multiplicities()) {
      out.entries.push_back({orbit.to_distance(value), count});
    }
    return out;
  });
}

inline std::uint64_t count_distinct(const GapSpectrum& spectrum) { return spectrum.entries.size(); }

/**
 * g(alpha, N) from the bracketing indices of N in the sequence:
 * n - m if 2 q_{m+1} = N + 1, else n - m + 1. N = 1 gives 1.
 *
 * The sequence must be scanned at least to N. When q_{m+1} lies beyond the
 * scan it exceeds q_max >= N, so 2 q_{m+1} > N + 1 and the second branch
 * applies.
 */
inline std::uint64_t chevallier_count(const BestApproxSequence& seq, std::uint64_t n) {
  detail::require(n >= 1, "N must be >= 1");
  if (n == 1) return 1;
  detail::require(seq.q_max >= n, "horizon insufficient to bracket N=" + std::to_string(n) +
                                      ": sequence scanned only to q_max=" +
                                      std::to_string(seq.q_max));
  const std::size_t upper = seq.count_at_most(n);
  const std::size_t lower = seq.count_at_most(n / 2);
  detail::require(lower >= 1, "no term with 2q <= N");
  if (seq.hit_zero) {
    detail::require(!seq.terms[upper - 1].r.is_zero(),
                    "record distance reached zero inside [1, N]: alpha is periodic there");
  }
  const bool boundary = lower < seq.size() && 2 * seq.q(lower + 1) == n + 1;
  return boundary ? upper - lower : upper - lower + 1;
}

/// g(alpha, N) for N in [n_lo, n_hi] via the sequence `seq`.
inline CountSeries window_stats(const BestApproxSequence& seq, std::uint64_t n_lo,
                                std::uint64_t n_hi) {
  detail::require(n_lo >= 2 && n_lo <= n_hi, "window must satisfy 2 <= N_lo <= N_hi");
  CountSeries out{seq.alpha, seq.norm, n_lo, n_hi, true, {}, 0, 0};
  out.window_min = std::numeric_limits<std::uint64_t>::max();
  for (std::uint64_t n = n_lo; n <= n_hi; ++n) {
    const auto g = chevallier_count(seq, n);
    out.g_values.push_back({n, g});
    out.window_max = std::max(out.window_max, g);
    out.window_min = std::min(out.window_min, g);
  }
  return out;
}

/// g(alpha, N) for N in [n_lo, n_hi], through the fast route (a sequence
/// scanned to n_hi) or the incremental oracle.
inline CountSeries window_stats(const RationalVector& alpha, Norm norm, std::uint64_t n_lo,
                                std::uint64_t n_hi, bool use_fast) {
  detail::require(n_lo >= 2 && n_lo <= n_hi, "window must satisfy 2 <= N_lo <= N_hi");
  detail::check_spectrum_args(alpha, n_hi);
  if (use_fast) return window_stats(compute_best_approximations(alpha, norm, n_hi), n_lo, n_hi);
  return visit_orbit(alpha, norm, [&](const auto& orbit) {
    CountSeries out{alpha, norm, n_lo, n_hi, false, {}, 0, std::numeric_limits<std::uint64_t>::max()};
    IncrementalSpectrum spectrum(orbit);
    for (std::uint64_t n = 1; n <= n_hi; ++n) {
      spectrum.extend();
      if (n < n_lo) continue;
      const auto g = spectrum.distinct();
      out.g_values.push_back({n, g});
      out.window_max = std::max(out.window_max, g);
      out.window_min = std::min(out.window_min, g);
    }
    return out;
  });
}

}  // namespace kronecker
