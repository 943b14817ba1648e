#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

#include "sqfield/counting.hpp"

using namespace sqfield;

namespace {

std::set<Elem> squares_by_squaring(const Field& f) {
  std::set<Elem> out;
  for (std::uint64_t k = 1; k < f.q(); ++k) {
    const Elem y = f.from_rank(k);
    out.insert(f.mul(y, y));
  }
  return out;
}

DigitBox random_box(std::uint32_t p, std::uint32_t r, std::mt19937_64& rng, bool uniform) {
  auto random_set = [&] {
    std::vector<std::uint32_t> v;
    for (std::uint32_t d = 0; d < p; ++d)
      if (rng() % 2) v.push_back(d);
    if (v.empty()) v.push_back(static_cast<std::uint32_t>(rng() % p));
    return DigitSet(p, v);
  };
  if (uniform) return DigitBox::uniform(r, random_set());
  std::vector<DigitSet> sets;
  for (std::uint32_t i = 0; i < r; ++i) sets.push_back(random_set());
  return DigitBox(p, sets);
}

}  // namespace

TEST(CountSquares, F9Examples) {
  const Field f = make_field(3, 2);
  const auto a = count_squares(f, DigitBox::uniform(2, DigitSet::parse(3, "1-2")));
  EXPECT_EQ(a.size_W, 4u);
  EXPECT_EQ(a.count_Q, 0u);
  EXPECT_EQ(a.char_sum, -4);
  EXPECT_EQ(a.deviation, Rational(2));

  const auto b = count_squares(f, DigitBox::uniform(2, DigitSet::parse(3, "0-1")));
  EXPECT_EQ(b.count_Q, 2u);
  EXPECT_EQ(b.count_Q0, 3u);
  EXPECT_EQ(b.char_sum, 1);
  EXPECT_EQ(b.deviation, Rational(0));
  EXPECT_TRUE(b.zero_in_W);
}

TEST(CountSquares, FullDigitSet) {
  for (auto [p, r] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{3, 3}, {5, 2}, {7, 3}, {13, 1}}) {
    const Field f = make_field(p, r);
    const auto rep = count_squares(f, DigitBox::uniform(r, DigitSet::full(p)));
    EXPECT_EQ(rep.count_Q, (f.q() - 1) / 2);
    EXPECT_EQ(rep.deviation, Rational(1, 2));
    EXPECT_EQ(rep.char_sum, 0);
  }
}

TEST(CountSquares, MatchesNaiveCountAndIdentities) {
  std::mt19937_64 rng(2024);
  for (std::uint32_t p : {3u, 5u, 7u, 11u, 13u}) {
    for (std::uint32_t r : {1u, 2u, 3u}) {
      const Field f = make_field(p, r);
      const auto squares = squares_by_squaring(f);
      const QuadraticCharacter chi(f);
      for (int trial = 0; trial < 30; ++trial) {
        const DigitBox box = random_box(p, r, rng, trial % 2 == 0);
        std::uint64_t naive = 0;
        bool zero = false;
        for (const Elem& x : enumerate(f, box)) {
          naive += squares.count(x);
          zero = zero || f.is_zero(x);
        }
        const auto rep = count_squares(chi, box);
        ASSERT_EQ(rep.count_Q, naive);
        ASSERT_EQ(rep.zero_in_W, zero);
        ASSERT_EQ(rep.count_Q0, rep.count_Q + (zero ? 1 : 0));
        ASSERT_EQ(rep.count_Q + rep.count_nonsquares + (zero ? 1 : 0), rep.size_W);
        // 2 |W ∩ Q| = |W| - [0 in W] + sum chi.
        ASSERT_EQ(2 * static_cast<std::int64_t>(rep.count_Q),
                  static_cast<std::int64_t>(rep.size_W) - (zero ? 1 : 0) + rep.char_sum);
        const Rational half_w(static_cast<std::int64_t>(rep.size_W), 2);
        ASSERT_EQ(rep.deviation, abs(Rational(static_cast<std::int64_t>(rep.count_Q)) - half_w));
        ASSERT_LE(rep.deviation, Rational(std::abs(rep.char_sum), 2) + Rational(1, 2));
      }
    }
  }
}

TEST(CountSquares, ShardedCountMatchesSerial) {
  const QuadraticCharacter chi(make_field(11, 3));
  const DigitBox box = DigitBox::parse(11, 3, "0-6|1,3,5,7|2-10");
  const auto a = count_squares(chi, box, kDefaultBudget, 1);
  const auto b = count_squares(chi, box, kDefaultBudget, 4);
  EXPECT_EQ(a.count_Q, b.count_Q);
  EXPECT_EQ(a.char_sum, b.char_sum);
  EXPECT_EQ(a.deviation, b.deviation);
}

TEST(CountSquares, BudgetRefusal) {
  const QuadraticCharacter chi(make_field(13, 3));
  EXPECT_THROW(count_squares(chi, DigitBox::uniform(3, DigitSet::full(13)), 1000), BudgetExceeded);
}

TEST(Estimate, FullFieldCoversOneHalf) {
  const QuadraticCharacter chi(make_field(101, 3));
  const auto e = estimate_square_fraction(chi, DigitBox::uniform(3, DigitSet::full(101)), 200000, 9);
  EXPECT_LE(e.ci_low, 0.5);
  EXPECT_GE(e.ci_high, 0.5);
  EXPECT_FALSE(e.caveat);
}

TEST(Estimate, SingletonSquare) {
  const Field f = make_field(7, 2);
  const QuadraticCharacter chi(f);
  // 2 = 3^2 mod 7, so the element 2 + 0x is a square.
  const auto e = estimate_square_fraction(chi, DigitBox::parse(7, 2, "2|0"), 500, 1);
  EXPECT_EQ(e.estimate, 1.0);
  EXPECT_EQ(e.hits, 500u);
}

TEST(Estimate, CoversExactFractionOnSameInstance) {
  const QuadraticCharacter chi(make_field(13, 2));
  const DigitBox box = DigitBox::uniform(2, DigitSet::parse(13, "1-7"));
  const auto exact = count_squares(chi, box);
  const double frac = static_cast<double>(exact.count_Q) / static_cast<double>(exact.size_W);
  const auto e = estimate_square_fraction(chi, box, 50000, 3);
  EXPECT_LE(e.ci_low, frac);
  EXPECT_GE(e.ci_high, frac);
  const auto again = estimate_square_fraction(chi, box, 50000, 3);
  EXPECT_EQ(e.hits, again.hits);
}

TEST(Estimate, LargeFieldAgainstExactCount) {
  // |D| = 40 in F_{101^3}: 10^5 samples against the exact fraction from
  // enumeration, tolerance five standard errors.
  const DigitSet d = DigitSet::range(101, 0, 40);
  const QuadraticCharacter big(make_field(101, 3));
  const auto exact = count_squares(big, DigitBox::uniform(3, d));
  EXPECT_EQ(exact.count_Q, 32158u);
  const double frac = static_cast<double>(exact.count_Q) / static_cast<double>(exact.size_W);
  const double sigma = std::sqrt(frac * (1 - frac) / 1e5);
  const auto e = estimate_square_fraction(big, DigitBox::uniform(3, d), 100000, 17);
  EXPECT_NEAR(e.estimate, frac, 5 * sigma);

  // The F_{101^2} twin has its own deviation (790 of 1600) and is not a
  // 5-sigma proxy for the cubic fraction.
  const auto twin = count_squares(QuadraticCharacter(make_field(101, 2)), DigitBox::uniform(2, d));
  EXPECT_EQ(twin.count_Q, 790u);
  EXPECT_GT(std::abs(static_cast<double>(twin.count_Q) / 1600 - frac), 5 * sigma);
}

TEST(Estimate, RejectsTinySamples) {
  const QuadraticCharacter chi(make_field(5, 1));
  EXPECT_THROW(estimate_square_fraction(chi, DigitBox::uniform(1, DigitSet::full(5)), 99, 1), DomainError);
}
