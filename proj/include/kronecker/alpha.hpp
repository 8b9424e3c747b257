#pragma once

/**
 * @file alpha.hpp
 * @brief Reproducible constructions of alpha.
 *
 * Accepted spellings (see `parse_alpha_spec`):
 *   "2/7,3/11"                 explicit rationals
 *   "golden:depth=30"          convergent truncation of the golden ratio
 *   "sqrt2:depth=30"           convergent truncation of sqrt(2) - 1
 *   "random:prime=P,seed=S"    uniform over {1,...,P-1}/P per coordinate
 *
 * In dimension d the named constructors use one quadratic irrational per
 * coordinate: coordinate 0 is the purely periodic expansion [0;(a)] and
 * coordinate i >= 1 is [0;i+2,(a)], with a = 1 (golden) or a = 2 (sqrt2).
 * Each coordinate is truncated after `depth` partial quotients.
 *
 * Random substreams: sample i of a run seeded with S draws from
 * mt19937_64(splitmix64(S + 0x9E3779B97F4A7C15 * (i + 1))). Coordinates
 * are drawn in order by rejection sampling on the raw 64-bit output, so the
 * stream is identical across standard libraries.
 */

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "kronecker/continued_fraction.hpp"
#include "kronecker/errors.hpp"
#include "kronecker/rational.hpp"

namespace kronecker {

inline constexpr std::uint64_t default_prime = 1'000'003;

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

inline std::mt19937_64 substream(std::uint64_t seed, std::uint64_t index) {
  return std::mt19937_64(splitmix64(seed + 0x9E3779B97F4A7C15ULL * (index + 1)));
}

/// Uniform integer in [lo, hi], independent of the standard library's
/// distribution implementations.
inline std::uint64_t uniform_between(std::mt19937_64& rng, std::uint64_t lo, std::uint64_t hi) {
  const std::uint64_t range = hi - lo + 1;
  if (range == 0) return rng();
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % range;
  std::uint64_t v = rng();
  while (v >= limit) v = rng();
  return lo + v % range;
}

inline RationalVector random_alpha(std::size_t d, std::uint64_t prime, std::mt19937_64& rng) {
  detail::require(d >= 1, "dimension must be >= 1");
  detail::require(prime >= 2, "prime must be >= 2");
  std::vector<Rational> coords;
  coords.reserve(d);
  for (std::size_t i = 0; i < d; ++i) {
    const auto num = uniform_between(rng, 1, prime - 1);
    coords.emplace_back(Integer(static_cast<unsigned long>(num)),
                        Integer(static_cast<unsigned long>(prime)));
    coords.back().canonicalize();
  }
  return RationalVector(std::move(coords));
}

inline RationalVector random_alpha(std::size_t d, std::uint64_t prime, std::uint64_t seed,
                                   std::uint64_t index) {
  auto rng = substream(seed, index);
  return random_alpha(d, prime, rng);
}

namespace detail {

inline RationalVector quadratic_alpha(std::size_t d, std::size_t depth, int tail) {
  require(d >= 1, "dimension must be >= 1");
  require(depth >= 1, "depth must be >= 1");
  std::vector<Rational> coords;
  for (std::size_t i = 0; i < d; ++i) {
    CFDescription cf;
    cf.kind = CFKind::eventually_periodic;
    if (i > 0) cf.preperiod.push_back(static_cast<unsigned long>(i + 2));
    cf.period.push_back(tail);
    coords.push_back(cf_truncate(cf, depth));
  }
  return RationalVector(std::move(coords));
}

}  // namespace detail

inline RationalVector golden_alpha(std::size_t d, std::size_t depth) {
  return detail::quadratic_alpha(d, depth, 1);
}

inline RationalVector sqrt2_alpha(std::size_t d, std::size_t depth) {
  return detail::quadratic_alpha(d, depth, 2);
}

/// Expansion behind a named constructor's coordinate, for the 1-d
/// classifiers.
inline CFDescription named_cf(std::string_view name, std::size_t coordinate = 0) {
  CFDescription cf;
  cf.kind = CFKind::eventually_periodic;
  if (coordinate > 0) cf.preperiod.push_back(static_cast<unsigned long>(coordinate + 2));
  if (name == "golden") {
    cf.period = {1};
  } else if (name == "sqrt2") {
    cf.period = {2};
  } else {
    detail::fail_validation("no continued fraction for constructor '" + std::string(name) + "'");
  }
  return cf;
}

struct AlphaSpec {
  RationalVector alpha;
  std::string spelling;
  std::string kind;  // explicit, golden, sqrt2, random
  std::optional<std::size_t> depth;
};

namespace detail {

inline std::map<std::string, std::string> parse_params(std::string_view s, std::string_view whole) {
  std::map<std::string, std::string> out;
  s = trim(s);
  while (!s.empty()) {
    const auto comma = s.find(',');
    const auto item = trim(s.substr(0, comma));
    const auto eq = item.find('=');
    require(eq != std::string_view::npos, "expected key=value in '" + std::string(whole) + "'");
    out[std::string(trim(item.substr(0, eq)))] = std::string(trim(item.substr(eq + 1)));
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return out;
}

inline std::uint64_t parse_count(const std::string& value, const std::string& key) {
  require(!value.empty() && is_integer_literal(value) && value.front() != '-',
          "parameter " + key + " must be a nonnegative integer, got '" + value + "'");
  const Integer v(value);
  require(v.fits_ulong_p(), "parameter " + key + " out of range");
  return v.get_ui();
}

}  // namespace detail

/// `dim` is required by the named constructors; for explicit rationals it
/// is optional and, when given, must match the tuple length.
inline AlphaSpec parse_alpha_spec(std::string_view text, std::optional<std::size_t> dim) {
  const auto s = detail::trim(text);
  const auto colon = s.find(':');
  if (colon == std::string_view::npos) {
    auto alpha = parse_rational_vector(s);
    detail::require(!dim || *dim == alpha.dim(),
                    "alpha has dimension " + std::to_string(alpha.dim()) + " but --dim is " +
                        std::to_string(dim.value_or(0)));
    return {std::move(alpha), std::string(s), "explicit", std::nullopt};
  }
  const std::string name(detail::trim(s.substr(0, colon)));
  auto params = detail::parse_params(s.substr(colon + 1), text);
  const std::size_t d = dim.value_or(1);
  const auto take = [&](const std::string& key, std::optional<std::uint64_t> fallback) {
    auto it = params.find(key);
    if (it == params.end()) {
      detail::require(fallback.has_value(), "constructor '" + name + "' needs " + key + "=");
      return *fallback;
    }
    const auto v = detail::parse_count(it->second, key);
    params.erase(it);
    return v;
  };
  AlphaSpec out{RationalVector{Rational(0)}, std::string(s), name, std::nullopt};
  if (name == "golden" || name == "sqrt2") {
    const auto depth = take("depth", 30);
    out.alpha = name == "golden" ? golden_alpha(d, depth) : sqrt2_alpha(d, depth);
    out.depth = depth;
  } else if (name == "random") {
    const auto prime = take("prime", default_prime);
    const auto seed = take("seed", std::nullopt);
    out.alpha = random_alpha(d, prime, seed, 0);
  } else {
    detail::fail_validation("unknown alpha constructor '" + name + "'");
  }
  detail::require(params.empty(), "unknown parameter '" +
                                      (params.empty() ? std::string() : params.begin()->first) +
                                      "' for constructor '" + name + "'");
  return out;
}

}  // namespace kronecker
