#include <gtest/gtest.h>

#include <random>

#include "kronecker/kronecker.hpp"
#include "support/oracles.hpp"

namespace kronecker {
namespace {

using testing::reference_count;
using testing::reference_nearest;
using testing::sequence_from_q;

const RationalVector two_sevenths{Rational(2, 7)};

TEST(NearestDistance, Examples) {
  EXPECT_EQ(nearest_distance(two_sevenths, Norm::linf, 0, 3).value, Rational(1, 7));
  EXPECT_EQ(nearest_distance(two_sevenths, Norm::linf, 1, 3).value, Rational(2, 7));
  EXPECT_EQ(nearest_distance(RationalVector{Rational(499, 1000)}, Norm::linf, 0, 1).value,
            Rational(499, 1000));
  EXPECT_THROW(nearest_distance(two_sevenths, Norm::linf, 4, 3), validation_error);
  EXPECT_THROW(nearest_distance(two_sevenths, Norm::linf, 0, 7), validation_error);
}

TEST(NearestDistanceFast, Examples) {
  const auto seq = compute_best_approximations(two_sevenths, Norm::linf, 6);
  EXPECT_EQ(nearest_distance_fast(seq, 0, 3).value, Rational(1, 7));
  EXPECT_EQ(nearest_distance_fast(seq, 1, 3).value, Rational(2, 7));
  EXPECT_EQ(nearest_distance_fast(seq, 1, 1).value, Rational(2, 7));
  const auto short_seq = compute_best_approximations(two_sevenths, Norm::linf, 2);
  EXPECT_THROW(nearest_distance_fast(short_seq, 0, 3), validation_error);
}

TEST(GapSpectrum, Examples) {
  const auto s = gap_spectrum(two_sevenths, Norm::linf, 3);
  ASSERT_EQ(s.entries.size(), 2u);
  EXPECT_EQ(s.entries[0].value.value, Rational(1, 7));
  EXPECT_EQ(s.entries[0].multiplicity, 2u);
  EXPECT_EQ(s.entries[1].value.value, Rational(2, 7));
  EXPECT_EQ(s.entries[1].multiplicity, 2u);
  EXPECT_EQ(count_distinct(s), 2u);

  const auto single = gap_spectrum(RationalVector{Rational(499, 1000)}, Norm::l2, 1);
  ASSERT_EQ(single.entries.size(), 1u);
  EXPECT_EQ(single.entries[0].value.value, Rational(499 * 499, 1000 * 1000));
  EXPECT_EQ(single.entries[0].multiplicity, 2u);
  EXPECT_EQ(count_distinct(single), 1u);

  EXPECT_EQ(count_distinct(gap_spectrum(RationalVector{Rational(89, 144)}, Norm::linf, 10)), 2u);
}

TEST(GapSpectrum, GoldenFibonacciN) {
  const RationalVector alpha{Rational(89, 144)};
  const std::pair<std::uint64_t, std::uint64_t> expected[] = {{13, 3}, {21, 3}, {34, 3}, {55, 3}};
  for (const auto& [n, g] : expected) {
    EXPECT_EQ(count_distinct(gap_spectrum(alpha, Norm::linf, n)), g) << n;
    EXPECT_EQ(reference_count(alpha, Norm::linf, n), g) << n;
  }
}

TEST(GapSpectrum, MatchesPairwiseEnumeration) {
  std::mt19937_64 rng(4242);
  for (int i = 0; i < 1000; ++i) {
    const std::size_t d = 1 + i % 3;
    const Norm norm = testing::all_norms[(i / 3) % 3];
    const auto alpha = random_alpha(d, 10007, rng);
    const std::uint64_t n = 1 + i % 25;
    const auto s = gap_spectrum(alpha, norm, n);
    const auto ref = reference_nearest(alpha, norm, n);
    std::map<Rational, std::uint64_t> mult;
    for (const auto& v : ref) ++mult[v];
    ASSERT_EQ(s.entries.size(), mult.size());
    std::uint64_t total = 0;
    auto it = mult.begin();
    for (const auto& e : s.entries) {
      EXPECT_EQ(e.value.value, it->first);
      EXPECT_EQ(e.multiplicity, it->second);
      total += e.multiplicity;
      ++it;
    }
    EXPECT_EQ(total, n + 1);
  }
}

TEST(FastRoute, AgreesWithOracleOnRandomAlphas) {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 1000; ++i) {
    const std::size_t d = 1 + i % 3;
    const Norm norm = testing::all_norms[(i / 3) % 3];
    const auto alpha = random_alpha(d, default_prime, rng);
    const std::uint64_t n = 2 + i % 60;
    const auto seq = compute_best_approximations(alpha, norm, n);
    const auto ref = reference_nearest(alpha, norm, n);
    for (std::uint64_t q = 0; q <= n; ++q) {
      ASSERT_EQ(nearest_distance_fast(seq, q, n).value, ref[q]) << to_string(alpha) << " q=" << q;
    }
    std::set<Rational> distinct(ref.begin(), ref.end());
    ASSERT_EQ(chevallier_count(seq, n), distinct.size()) << to_string(alpha) << " N=" << n;
  }
}

TEST(IncrementalSpectrum, TracksOracleAsPointsAreAdded) {
  const auto alpha = random_alpha(2, default_prime, 17, 0);
  for (Norm norm : testing::all_norms) {
    IncrementalSpectrum spectrum(NativeOrbit(alpha, norm));
    const auto seq = compute_best_approximations(alpha, norm, 300);
    for (std::uint64_t n = 1; n <= 300; ++n) {
      spectrum.extend();
      ASSERT_EQ(spectrum.n(), n);
      if (n >= 2) {
        ASSERT_EQ(spectrum.distinct(), chevallier_count(seq, n)) << n;
      }
    }
  }
}

TEST(ChevallierCount, Examples) {
  const auto seq = compute_best_approximations(two_sevenths, Norm::linf, 6);
  EXPECT_EQ(chevallier_count(seq, 3), 2u);
  const auto fib = sequence_from_q({1, 2, 3, 5, 8, 13, 21});
  EXPECT_EQ(chevallier_count(fib, 10), 2u);
  EXPECT_EQ(chevallier_count(fib, 15), 2u);
  EXPECT_EQ(chevallier_count(fib, 1), 1u);

  const RationalVector golden{Rational(89, 144)};
  const auto gseq = compute_best_approximations(golden, Norm::linf, 100);
  for (std::uint64_t n : {10u, 15u}) {
    EXPECT_EQ(chevallier_count(gseq, n), 2u);
    EXPECT_EQ(reference_count(golden, Norm::linf, n), 2u);
  }
}

TEST(ChevallierCount, HorizonMustReachN) {
  const auto seq = compute_best_approximations(two_sevenths, Norm::linf, 3);
  EXPECT_THROW(chevallier_count(seq, 4), validation_error);
  EXPECT_THROW(chevallier_count(seq, 0), validation_error);
}

// Every (alpha, N) below N_max; used for the bound checks.
std::vector<std::uint64_t> counts(const RationalVector& alpha, Norm norm, std::uint64_t n_max) {
  const auto seq = compute_best_approximations(alpha, norm, n_max);
  std::vector<std::uint64_t> out;
  for (std::uint64_t n = 2; n <= n_max; ++n) out.push_back(chevallier_count(seq, n));
  return out;
}

TEST(Bounds, ThreeLengthsInOneDimension) {
  for (std::uint64_t i = 0; i < 20; ++i) {
    for (Norm norm : testing::all_norms) {
      for (auto g : counts(random_alpha(1, default_prime, 5, i), norm, 3000)) EXPECT_LE(g, 3u);
    }
  }
}

TEST(Bounds, SupNormBound) {
  for (std::size_t d = 1; d <= 3; ++d) {
    for (std::uint64_t i = 0; i < 5; ++i) {
      for (auto g : counts(random_alpha(d, default_prime, 6, i), Norm::linf, 3000)) {
        EXPECT_LE(g, linf_bound(d));
      }
    }
  }
}

TEST(Bounds, PlanarEuclideanAtMostFive) {
  for (std::uint64_t i = 0; i < 10; ++i) {
    for (auto g : counts(random_alpha(2, default_prime, 7, i), Norm::l2, 3000)) EXPECT_LE(g, 5u);
  }
}

TEST(Bounds, DoublingIndexPlusOne) {
  for (std::size_t d = 1; d <= 3; ++d) {
    for (std::uint64_t i = 0; i < 5; ++i) {
      const auto alpha = random_alpha(d, default_prime, 8, i);
      for (Norm norm : testing::all_norms) {
        const auto seq = compute_best_approximations(alpha, norm, 5000);
        const auto t = doubling_index(seq);
        for (std::uint64_t n = 2; n <= 5000; ++n) EXPECT_LE(chevallier_count(seq, n), t + 1);
      }
    }
  }
}

TEST(Bounds, WindowMinimumAtMostDoublingShift) {
  for (std::uint64_t i = 0; i < 10; ++i) {
    const auto alpha = random_alpha(2, default_prime, 9, i);
    const auto seq = compute_best_approximations(alpha, Norm::linf, 5000);
    const auto series = window_stats(seq, 2, 5000);
    std::size_t tested = 0;
    for (std::size_t t = 1; t < seq.size(); ++t) {
      for (std::size_t n = 1; n + t <= seq.size(); ++n) {
        const auto edge = 2 * seq.q(n + t) - 1;
        if (seq.q(n + t) >= 2 * seq.q(n) && edge >= 2 && edge <= 5000) {
          EXPECT_LE(series.window_min, t);
          ++tested;
          break;
        }
      }
    }
    EXPECT_GT(tested, 0u);
  }
}

TEST(Bounds, NormIndependenceInOneDimension) {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 1000; ++i) {
    const auto alpha = random_alpha(1, default_prime, rng);
    const std::uint64_t n = 2 + i % 200;
    const auto g = count_distinct(gap_spectrum(alpha, Norm::l1, n));
    EXPECT_EQ(count_distinct(gap_spectrum(alpha, Norm::l2, n)), g);
    EXPECT_EQ(count_distinct(gap_spectrum(alpha, Norm::linf, n)), g);
  }
}

TEST(WindowStats, QuadraticConstructors) {
  for (bool fast : {true, false}) {
    const auto golden = window_stats(golden_alpha(1, 30), Norm::linf, 100, 2000, fast);
    EXPECT_EQ(golden.window_min, 2u);
    EXPECT_EQ(golden.window_max, 3u);
    const auto sqrt2 = window_stats(sqrt2_alpha(1, 30), Norm::linf, 100, 2000, fast);
    EXPECT_EQ(sqrt2.window_min, 1u);
    EXPECT_EQ(sqrt2.window_max, 2u);
  }
}

TEST(WindowStats, SinglePointWindow) {
  const auto alpha = random_alpha(2, default_prime, 1, 0);
  for (std::uint64_t n : {2u, 17u, 400u}) {
    const auto w = window_stats(alpha, Norm::l2, n, n, true);
    const auto g = count_distinct(gap_spectrum(alpha, Norm::l2, n));
    EXPECT_EQ(w.window_min, g);
    EXPECT_EQ(w.window_max, g);
    ASSERT_EQ(w.g_values.size(), 1u);
  }
}

TEST(WindowStats, RoutesAgree) {
  const auto alpha = random_alpha(2, default_prime, 2, 3);
  const auto a = window_stats(alpha, Norm::linf, 2, 600, true);
  const auto b = window_stats(alpha, Norm::linf, 2, 600, false);
  ASSERT_EQ(a.g_values.size(), b.g_values.size());
  for (std::size_t i = 0; i < a.g_values.size(); ++i) EXPECT_EQ(a.g_values[i].g, b.g_values[i].g);
}

TEST(WindowStats, Contract) {
  EXPECT_THROW(window_stats(two_sevenths, Norm::linf, 1, 3, true), validation_error);
  EXPECT_THROW(window_stats(two_sevenths, Norm::linf, 4, 3, false), validation_error);
}

}  // namespace
}  // namespace kronecker
