#pragma once

/**
 * @file search.hpp
 * @brief Randomized search for (alpha, N) with many distinct nearest
 * distances, and frequency reports of doubling failures q_{n+T} < 2 q_n.
 *
 * Both routines are deterministic in their seed: sample i always draws
 * from `substream(seed, i)` (see alpha.hpp), and results are ordered by
 * sample index. Forced alphas are evaluated first and do not consume
 * substreams.
 */

#include <cstdint>
#include <string>
#include <vector>

#include "kronecker/alpha.hpp"
#include "kronecker/best_approx.hpp"
#include "kronecker/errors.hpp"
#include "kronecker/gap_spectrum.hpp"

namespace kronecker {

struct Witness {
  RationalVector alpha;
  std::uint64_t n;
  Norm norm;
  std::uint64_t g;
  bool verified_by_oracle;
  /// Best approximations of alpha scanned to N.
  BestApproxSequence sequence;
};

struct SearchParams {
  std::size_t d = 2;
  Norm norm = Norm::linf;
  std::uint64_t target_g = 3;
  std::uint64_t budget = 200;
  std::uint64_t seed = 0;
  std::uint64_t n_max = 2000;
  std::uint64_t prime = default_prime;
  std::vector<RationalVector> forced;
};

inline std::uint64_t linf_bound(std::size_t d) { return (std::uint64_t{1} << d) + 1; }

namespace detail {

inline std::vector<RationalVector> sample_set(std::size_t d, std::uint64_t prime,
                                              std::uint64_t seed, std::uint64_t count,
                                              const std::vector<RationalVector>& forced) {
  std::vector<RationalVector> out;
  out.reserve(forced.size() + count);
  for (const auto& a : forced) {
    require(a.dim() == d, "forced alpha has dimension " + std::to_string(a.dim()) +
                              ", expected " + std::to_string(d));
    out.push_back(a);
  }
  for (std::uint64_t i = 0; i < count; ++i) out.push_back(random_alpha(d, prime, seed, i));
  return out;
}

}  // namespace detail

/**
 * For each sampled alpha, sweeps N = 2..n_max through the fast count and
 * takes the first N with g >= target_g. That candidate is re-counted by the
 * oracle spectrum; a disagreement or an L-infinity count above 2^d + 1
 * raises invariant_violation. At most one witness per alpha.
 */
inline std::vector<Witness> search_high_g(const SearchParams& params) {
  detail::require(params.d >= 1, "dimension must be >= 1");
  detail::require(params.budget >= 1, "budget must be >= 1");
  detail::require(params.n_max >= 2, "N_max must be >= 2");
  std::vector<Witness> found;
  for (auto& alpha : detail::sample_set(params.d, params.prime, params.seed, params.budget,
                                        params.forced)) {
    auto seq = compute_best_approximations(alpha, params.norm, params.n_max);
    for (std::uint64_t n = 2; n <= params.n_max; ++n) {
      const auto g = chevallier_count(seq, n);
      if (g < params.target_g) continue;
      const auto oracle = count_distinct(gap_spectrum(alpha, params.norm, n));
      if (oracle != g) {
        throw invariant_violation("fast count " + std::to_string(g) + " != oracle count " +
                                  std::to_string(oracle) + " at N=" + std::to_string(n) +
                                  " for alpha=" + to_string(alpha));
      }
      if (params.norm == Norm::linf && g > linf_bound(params.d)) {
        throw invariant_violation("g=" + std::to_string(g) + " exceeds 2^d+1 at N=" +
                                  std::to_string(n) + " for alpha=" + to_string(alpha));
      }
      auto prefix = seq;
      prefix.q_max = n;
      prefix.terms.erase(prefix.terms.begin() + static_cast<std::ptrdiff_t>(prefix.count_at_most(n)),
                         prefix.terms.end());
      found.push_back({alpha, n, params.norm, g, true, std::move(prefix)});
      break;
    }
  }
  return found;
}

struct SampleRow {
  std::size_t index;
  RationalVector alpha;
  bool forced;
  std::size_t terms;
  std::size_t checked;
  std::size_t witnesses;  // n with q_{n+T} < 2 q_n
};

struct SamplingParams {
  std::size_t d = 1;
  Norm norm = Norm::linf;
  std::uint64_t shift = 1;
  std::uint64_t samples = 10;
  std::uint64_t seed = 0;
  std::uint64_t q_max = 100'000;
  std::uint64_t prime = default_prime;
  std::vector<RationalVector> forced;
};

struct SamplingReport {
  SamplingParams params;
  std::vector<SampleRow> rows;
  std::size_t samples_with_witness = 0;
  double fraction_with_witness = 0.0;
  double mean_witness_rate = 0.0;  // mean over samples of witnesses / checked
};

inline SamplingReport sample_doubling_violations(const SamplingParams& params) {
  detail::require(params.samples >= 1, "samples must be >= 1");
  detail::require(params.shift >= 1, "T must be >= 1");
  SamplingReport rep{params, {}, 0, 0.0, 0.0};
  const auto alphas =
      detail::sample_set(params.d, params.prime, params.seed, params.samples, params.forced);
  double rate_sum = 0.0;
  std::size_t rated = 0;
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    const auto seq = compute_best_approximations(alphas[i], params.norm, params.q_max);
    SampleRow row{i, alphas[i], i < params.forced.size(), seq.size(), 0, 0};
    for (std::size_t n = 1; n + params.shift <= seq.size(); ++n) {
      ++row.checked;
      if (seq.q(n + params.shift) < 2 * seq.q(n)) ++row.witnesses;
    }
    if (row.witnesses > 0) ++rep.samples_with_witness;
    if (row.checked > 0) {
      rate_sum += static_cast<double>(row.witnesses) / static_cast<double>(row.checked);
      ++rated;
    }
    rep.rows.push_back(std::move(row));
  }
  rep.fraction_with_witness =
      static_cast<double>(rep.samples_with_witness) / static_cast<double>(rep.rows.size());
  rep.mean_witness_rate = rated ? rate_sum / static_cast<double>(rated) : 0.0;
  return rep;
}

}  // namespace kronecker
