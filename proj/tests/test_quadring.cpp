#include <gtest/gtest.h>

#include <random>
#include <set>

#include "acrn/error.hpp"
#include "acrn/quadring.hpp"

using namespace acrn;

namespace {

// Reference multiplication of a + b w (w^2 = -D) with plain 128-bit integers.
std::pair<int64_t, int64_t> ref_mul(int64_t a1, int64_t b1, int64_t a2, int64_t b2, int64_t D, int64_t m) {
  __int128 a = (__int128)a1 * a2 - (__int128)D * b1 * b2;
  __int128 b = (__int128)a1 * b2 + (__int128)a2 * b1;
  int64_t ra = (int64_t)(((a % m) + m) % m), rb = (int64_t)(((b % m) + m) % m);
  return {ra, rb};
}

std::set<int64_t> squares_mod(int64_t p) {
  std::set<int64_t> s;
  for (int64_t x = 0; x < p; ++x) s.insert(x * x % p);
  return s;
}

}  // namespace

TEST(Algebra, SmallestRamifiedCase) {
  auto alg = make_algebra(3, Kind::Ramified, 3, 6);
  RingElt pi = alg.uniformizer();
  EXPECT_EQ(alg.mul(pi, pi), alg.from_int(-3));
  EXPECT_EQ(alg.class_count(1), 3u);
  EXPECT_EQ(alg.valuation(alg.from_int(3)), 2);
}

TEST(Algebra, InertNeedsNonResidue) {
  auto sq = squares_mod(5);
  ASSERT_EQ(sq.count(3), 0u);  // -2 = 3 mod 5
  auto alg = make_algebra(5, Kind::Inert, 2, 4);
  RingElt w = alg.omega();
  EXPECT_EQ(alg.mul(w, w), alg.from_int(-2));
}

TEST(Algebra, SplitAcceptedWhenMinusDIsSquare) {
  ASSERT_EQ(2 * 2 % 5, 4);
  auto alg = make_algebra(5, Kind::Split, 1, 4);
  RingElt w = alg.omega();
  EXPECT_EQ(alg.mul(w, w), alg.from_int(-1));
  // projections of w are the two square roots of -1
  auto [v0, c0] = alg.split_component(w, 0);
  auto [v1, c1] = alg.split_component(w, 1);
  EXPECT_EQ(v0, 0);
  EXPECT_EQ(v1, 0);
  EXPECT_EQ((c0 + c1) % alg.coord_modulus(), 0);
}

TEST(Algebra, Rejections) {
  EXPECT_THROW(make_algebra(2, Kind::Inert, 1, 4), std::invalid_argument);
  EXPECT_THROW(make_algebra(9, Kind::Inert, 1, 4), std::invalid_argument);
  EXPECT_THROW(make_algebra(5, Kind::Inert, 1, 4), std::invalid_argument);
  EXPECT_THROW(make_algebra(5, Kind::Split, 2, 4), std::invalid_argument);
  EXPECT_THROW(make_algebra(3, Kind::Ramified, 9, 4), std::invalid_argument);
  EXPECT_THROW(make_algebra(3, Kind::Ramified, 2, 4), std::invalid_argument);
}

TEST(RingOps, ConjugateAndNorm) {
  auto alg = make_algebra(5, Kind::Inert, 2, 4);
  RingElt x = alg.make(3, 7);
  EXPECT_EQ(alg.conj(x), alg.make(3, -7));
  RingElt y = alg.add(alg.one(), alg.omega());
  auto [na, nb] = ref_mul(1, 1, 1, -1, 2, alg.coord_modulus());
  EXPECT_EQ(na, 3);
  EXPECT_EQ(nb, 0);
  EXPECT_EQ(alg.norm(y), alg.from_int(3));
}

TEST(RingOps, MultiplicationMatchesReference) {
  std::mt19937_64 rng(7);
  for (auto [p, kind, D] : {std::tuple{5, Kind::Inert, 2}, {3, Kind::Inert, 1}, {7, Kind::Inert, 1}}) {
    auto alg = make_algebra(p, kind, D, 5);
    int64_t m = alg.coord_modulus();
    for (int t = 0; t < 300; ++t) {
      int64_t a1 = rng() % m, b1 = rng() % m, a2 = rng() % m, b2 = rng() % m;
      if (a1 % p == 0 && b1 % p == 0) a1 += 1;
      if (a2 % p == 0 && b2 % p == 0) a2 += 1;
      auto [ra, rb] = ref_mul(a1, b1, a2, b2, D, m);
      EXPECT_EQ(alg.coordinates(alg.mul(alg.make(a1, b1), alg.make(a2, b2))), std::make_pair(ra, rb));
    }
  }
}

TEST(RingOps, TraceOfInverseUniformizerRamified) {
  auto alg = make_algebra(3, Kind::Ramified, 3, 6);
  RingElt pinv = alg.inv(alg.uniformizer());
  EXPECT_EQ(pinv, alg.pi_power(-1));
  EXPECT_TRUE(alg.is_zero(alg.trace(pinv)));
  EXPECT_EQ(alg.fractional_trace(pinv), QmodZ::zero());
}

TEST(RingOps, InverseOfZeroExhaustsPrecision) {
  auto alg = make_algebra(3, Kind::Inert, 1, 4);
  EXPECT_THROW(alg.inv(alg.zero()), PrecisionExhausted);
  RingElt tiny = alg.sub(alg.from_int(1), alg.from_int(1 + 81));
  EXPECT_THROW(alg.inv(tiny), PrecisionExhausted);
}

TEST(RingOps, InverseRoundTrip) {
  std::mt19937_64 rng(11);
  for (auto [p, kind, D] : {std::tuple{3, Kind::Ramified, 3}, {5, Kind::Ramified, 10}, {5, Kind::Inert, 2},
                            {5, Kind::Split, 1}, {7, Kind::Split, 3}}) {
    auto alg = make_algebra(p, kind, D, 6);
    for (int t = 0; t < 200; ++t) {
      RingElt x = alg.mul(alg.make(1 + rng() % 1000, rng() % 1000), alg.pi_power(static_cast<int>(rng() % 5) - 2));
      if (!alg.is_unit(alg.mul(x, alg.pi_power(-x.shift)))) continue;
      RingElt y = alg.mul(x, alg.inv(x));
      EXPECT_TRUE(alg.is_zero(alg.sub(y, alg.one())));
    }
  }
}

TEST(UnitEnumeration, CountsOnSpecCases) {
  EXPECT_EQ(enumerate_units(make_algebra(3, Kind::Inert, 1, 4), 2).size(), 72u);
  EXPECT_EQ(enumerate_units(make_algebra(3, Kind::Ramified, 3, 4), 2).size(), 6u);
  EXPECT_EQ(enumerate_units(make_algebra(5, Kind::Split, 1, 4), 1).size(), 16u);
}

TEST(UnitEnumeration, BruteForceCountsAndDedup) {
  // Reference: walk raw coordinate pairs, keep those with unit norm, dedup by
  // reduction. Independent of the key scheme.
  for (auto [p, kind, D] : {std::tuple{3, Kind::Inert, 1}, {5, Kind::Inert, 2}, {7, Kind::Inert, 1},
                            {3, Kind::Ramified, 3}, {5, Kind::Ramified, 5}, {7, Kind::Ramified, 7},
                            {3, Kind::Split, 2}, {5, Kind::Split, 1}, {7, Kind::Split, 3}}) {
    auto alg = make_algebra(p, kind, D, 8);
    for (int f = 1; f <= 4; ++f) {
      uint64_t expect = alg.unit_group_order(f);
      if (expect > 3'000'000) continue;
      auto units = enumerate_units(alg, f);
      EXPECT_EQ(units.size(), expect) << p << " " << kind_name(kind) << " f=" << f;
      if (f > 3) continue;
      // dedup oracle
      int64_t m = 1;
      for (int i = 0; i < f; ++i) m *= p;
      std::set<std::pair<int64_t, int64_t>> seen;
      for (int64_t a = 0; a < m; ++a)
        for (int64_t b = 0; b < m; ++b) {
          bool unit = kind == Kind::Ramified ? a % p != 0
                      : kind == Kind::Inert  ? (a * a + D * b * b) % p != 0
                                             : (a % p != 0 && b % p != 0);
          if (!unit) continue;
          RingElt x = alg.make(a, b);
          seen.insert({static_cast<int64_t>(alg.class_key(x, f)), 0});
        }
      EXPECT_EQ(seen.size(), expect);
      std::set<uint64_t> keys(units.keys().begin(), units.keys().end());
      EXPECT_EQ(keys.size(), expect);
    }
  }
}

TEST(UnitEnumeration, ClosedFormulaUpToSevenAndDepthFour) {
  for (int64_t p : {3, 5, 7}) {
    auto inert = make_algebra(p, Kind::Inert, p == 5 ? 2 : 1, 4);
    auto ram = make_algebra(p, Kind::Ramified, p, 4);
    auto split = make_algebra(p, Kind::Split, p == 5 ? 1 : (p == 3 ? 2 : 3), 4);
    for (int f = 1; f <= 4; ++f) {
      uint64_t pf1 = 1;
      for (int i = 1; i < f; ++i) pf1 *= p;
      EXPECT_EQ(enumerate_units(inert, f).size(), pf1 * pf1 * (p * p - 1));
      EXPECT_EQ(enumerate_units(ram, f).size(), (p - 1) * pf1);
      EXPECT_EQ(enumerate_units(split, f).size(), (p - 1) * pf1 * (p - 1) * pf1);
    }
  }
}

TEST(FractionalTrace, SpecExamples) {
  auto inert = make_algebra(3, Kind::Inert, 1, 4);
  EXPECT_EQ(inert.fractional_trace(inert.make(5, 7)), QmodZ::zero());
  EXPECT_EQ(inert.fractional_trace(inert.inv(inert.from_int(3))), QmodZ(2, 3));
  auto ram = make_algebra(3, Kind::Ramified, 3, 6);
  EXPECT_EQ(ram.fractional_trace(ram.pi_power(-1)), QmodZ::zero());
  // pi^-2 = -1/3, trace -2/3
  EXPECT_EQ(ram.pi_power(-2), ram.inv(ram.from_int(-3)));
  EXPECT_EQ(ram.fractional_trace(ram.pi_power(-2)), QmodZ(1, 3));
}

TEST(FractionalTrace, NeedsEnoughDigits) {
  auto alg = make_algebra(3, Kind::Inert, 1, 3);
  EXPECT_THROW(alg.fractional_trace(alg.make(1, 1, -4)), PrecisionExhausted);
}

TEST(Properties, NormMultiplicativeTraceAdditive) {
  std::mt19937_64 rng(3);
  for (auto [p, kind, D] : {std::tuple{3, Kind::Ramified, 3}, {5, Kind::Ramified, 5}, {7, Kind::Ramified, 14},
                            {3, Kind::Inert, 1}, {5, Kind::Inert, 2}, {5, Kind::Split, 1}, {7, Kind::Split, 3}}) {
    for (int N : {2, 5, 8}) {
      auto alg = make_algebra(p, kind, D, N);
      auto units = enumerate_units(alg, 1);
      auto rand_unit = [&] {
        RingElt u = units[rng() % units.size()];
        return alg.add(u, alg.mul(alg.make(rng() % 97, rng() % 97), alg.uniformizer()));
      };
      for (int t = 0; t < 100; ++t) {
        RingElt x = rand_unit(), y = rand_unit();
        EXPECT_TRUE(alg.is_zero(alg.sub(alg.norm(alg.mul(x, y)), alg.mul(alg.norm(x), alg.norm(y)))));
        EXPECT_TRUE(alg.is_zero(alg.sub(alg.trace(alg.add(x, y)), alg.add(alg.trace(x), alg.trace(y)))));
        EXPECT_TRUE(alg.in_base(alg.trace(x)));
        EXPECT_TRUE(alg.in_base(alg.norm(x)));
        EXPECT_EQ(alg.conj(alg.conj(x)), x);
        EXPECT_TRUE(alg.is_zero(alg.sub(alg.conj(alg.mul(x, y)), alg.mul(alg.conj(x), alg.conj(y)))));
        RingElt z = alg.from_int(static_cast<int64_t>(rng() % 50) + 1);
        EXPECT_TRUE(alg.is_zero(alg.sub(alg.conj(z), z)));
        // fractional trace ignores integral perturbations
        int k = 1 + static_cast<int>(rng() % std::max(1, N - 1));
        RingElt frac = alg.mul(x, alg.pi_power(-k));
        RingElt o = rand_unit();
        EXPECT_EQ(alg.fractional_trace(alg.add(frac, o)), alg.fractional_trace(frac));
      }
      if (kind != Kind::Split) {
        RingElt w = alg.omega();
        EXPECT_FALSE(alg.is_zero(alg.sub(alg.conj(w), w)));
      }
    }
  }
}

TEST(Properties, SplitConjugationSwaps) {
  auto alg = make_algebra(5, Kind::Split, 1, 4);
  RingElt x = alg.make(2, 3);
  EXPECT_EQ(alg.conj(x), alg.make(3, 2));
  EXPECT_THROW(alg.valuation(alg.make(5, 1)), std::invalid_argument);
}

TEST(Properties, UnitEnumerationPartitionsByIndex) {
  auto alg = make_algebra(5, Kind::Inert, 2, 4);
  auto units = enumerate_units(alg, 2);
  std::set<uint64_t> lo, hi;
  std::size_t mid = units.size() / 2;
  for (std::size_t i = 0; i < mid; ++i) lo.insert(alg.class_key(units[i], 2));
  for (std::size_t i = mid; i < units.size(); ++i) hi.insert(alg.class_key(units[i], 2));
  EXPECT_EQ(lo.size() + hi.size(), units.size());
  for (auto k : lo) EXPECT_EQ(hi.count(k), 0u);
  std::size_t n = 0;
  for (RingElt u : units) {
    EXPECT_TRUE(alg.is_unit(u));
    ++n;
  }
  EXPECT_EQ(n, units.size());
}

TEST(DebugDump, ResiduesAsDecimalStrings) {
  auto alg = make_algebra(5, Kind::Inert, 2, 4);
  std::string s = dump_json(alg, alg.make(3, 4));
  EXPECT_NE(s.find("\"a\":\"3\""), std::string::npos);
  EXPECT_NE(s.find("\"b\":\"4\""), std::string::npos);
}
