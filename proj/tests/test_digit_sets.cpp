#include <gtest/gtest.h>

#include <set>
#include <vector>

#include "sqfield/digit_sets.hpp"

using namespace sqfield;

namespace {

Elem poly(const Field& f, std::vector<std::int64_t> c) { return f.from_poly(c); }

}  // namespace

TEST(DigitSet, ParseAndPrint) {
  const DigitSet d = DigitSet::parse(11, "0-4,7,9");
  EXPECT_EQ(d.size(), 7u);
  EXPECT_TRUE(d.contains(3));
  EXPECT_FALSE(d.contains(5));
  EXPECT_FALSE(d.contains(40));
  EXPECT_EQ(d.to_string(), "0-4,7,9");
  EXPECT_EQ(DigitSet::parse(11, "9,7,0-4,3").to_string(), "0-4,7,9");
  EXPECT_EQ(DigitSet::range(7, 5, 4).to_string(), "0-1,5-6");
  EXPECT_EQ(DigitSet::full(5).size(), 5u);
}

TEST(DigitSet, ParseErrors) {
  EXPECT_THROW(DigitSet::parse(5, ""), ParseError);
  EXPECT_THROW(DigitSet::parse(5, "0-9"), ParseError);
  EXPECT_THROW(DigitSet::parse(5, "3-1"), ParseError);
  EXPECT_THROW(DigitSet::parse(5, "1;2"), ParseError);
  EXPECT_THROW(DigitSet::parse(5, "a"), ParseError);
  EXPECT_THROW(DigitSet(5, {}), DomainError);
  EXPECT_THROW(DigitBox::parse(5, 3, "0|1"), ParseError);
}

TEST(DigitBox, PerCoordinateParse) {
  const DigitBox b = DigitBox::parse(5, 2, "0-2|1,3");
  EXPECT_FALSE(b.uniform());
  EXPECT_EQ(b.size(), 6u);
  EXPECT_FALSE(b.contains_zero());
  EXPECT_EQ(b.to_string(), "0-2|1,3");
  EXPECT_TRUE(DigitBox::parse(5, 2, "0,4").contains_zero());
}

TEST(Enumerate, F9Examples) {
  const Field f = make_field(3, 2);
  const auto w = enumerate(f, DigitBox::uniform(2, DigitSet::parse(3, "1-2")));
  const std::vector<Elem> want = {poly(f, {1, 1}), poly(f, {1, 2}), poly(f, {2, 1}), poly(f, {2, 2})};
  EXPECT_EQ(w, want);
  const auto unit = enumerate(f, IntervalBox::cube(3, {0, 0}, 1));
  ASSERT_EQ(unit.size(), 1u);
  EXPECT_EQ(unit[0], poly(f, {1, 1}));
}

TEST(Enumerate, FullDigitsGiveWholeField) {
  const Field f = make_field(5, 3);
  const auto w = enumerate(f, DigitBox::uniform(3, DigitSet::full(5)));
  EXPECT_EQ(std::set<Elem>(w.begin(), w.end()).size(), 125u);
  for (std::size_t k = 0; k < w.size(); ++k) EXPECT_EQ(f.rank(w[k]), k);
}

TEST(Enumerate, SizeDistinctnessAndZero) {
  std::mt19937_64 rng(5);
  for (auto [p, r] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{3, 4}, {5, 3}, {5, 6}, {7, 2}}) {
    const Field f = make_field(p, r);
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<DigitSet> sets;
      for (std::uint32_t i = 0; i < r; ++i) {
        std::vector<std::uint32_t> v;
        for (std::uint32_t d = 0; d < p; ++d)
          if (rng() % 2) v.push_back(d);
        if (v.empty()) v.push_back(static_cast<std::uint32_t>(rng() % p));
        sets.emplace_back(p, v);
      }
      const DigitBox box(p, sets);
      const auto w = enumerate(f, box);
      ASSERT_EQ(w.size(), box.size());
      ASSERT_EQ(std::set<Elem>(w.begin(), w.end()).size(), w.size());
      const bool has_zero = std::find(w.begin(), w.end(), f.zero()) != w.end();
      ASSERT_EQ(has_zero, box.contains_zero());
      // Lexicographic coordinate order.
      for (std::size_t k = 1; k < w.size(); ++k) ASSERT_LT(f.coords(w[k - 1]), f.coords(w[k]));
    }
  }
}

TEST(Enumerate, NormalizedBasisScalesPointwise) {
  const Field f = make_field(5, 3);
  const std::vector<Elem> basis = {poly(f, {2, 1}), poly(f, {0, 3, 1}), poly(f, {1, 0, 3})};
  const Field g = f.with_basis(basis);
  const Field n = g.normalized_basis();
  const Elem inv_a1 = f.inv(basis[0]);
  const DigitBox box = DigitBox::parse(5, 3, "0-2|1,4|3");
  const auto wg = enumerate(g, box);
  const auto wn = enumerate(n, box);
  ASSERT_EQ(wg.size(), wn.size());
  for (std::size_t k = 0; k < wg.size(); ++k) EXPECT_EQ(wn[k], f.mul(inv_a1, wg[k]));
}

TEST(Enumerate, BudgetRefusal) {
  const Field f = make_field(7, 3);
  const DigitBox box = DigitBox::uniform(3, DigitSet::full(7));
  EXPECT_THROW(enumerate(f, box, 100), BudgetExceeded);
  try {
    enumerate(f, box, 100);
  } catch (const BudgetExceeded& e) {
    EXPECT_NE(std::string(e.what()).find("Monte-Carlo"), std::string::npos);
  }
  EXPECT_THROW(enumerate(make_field(7, 2), box), DomainError);
}

TEST(Shard, ConcatenationReproducesEnumeration) {
  const Field f = make_field(7, 2);
  const DigitBox box = DigitBox::parse(7, 2, "1,3-5|0-6");
  std::vector<Elem> joined;
  for (const auto& s : shard(box)) {
    const auto part = enumerate(f, s);
    joined.insert(joined.end(), part.begin(), part.end());
  }
  EXPECT_EQ(joined, enumerate(f, box));
}

TEST(Sampling, DeterministicAndInsideBox) {
  const Field f = make_field(11, 3);
  const DigitBox box = DigitBox::parse(11, 3, "0-3|5|2,9");
  const auto a = sample_uniform(f, box, 500, 42);
  const auto b = sample_uniform(f, box, 500, 42);
  EXPECT_EQ(a, b);
  EXPECT_NE(a, sample_uniform(f, box, 500, 43));
  const auto w = enumerate(f, box);
  const std::set<Elem> members(w.begin(), w.end());
  for (const Elem& x : a) EXPECT_TRUE(members.count(x));
  const auto single = sample_uniform(f, DigitBox::parse(11, 3, "4|7|1"), 50, 1);
  for (const Elem& x : single) EXPECT_EQ(x, poly(f, {4, 7, 1}));
  EXPECT_THROW(sample_uniform(f, box, 0, 1), DomainError);
}

TEST(SplitBox, F9Example) {
  const Field f = make_field(3, 2);
  const auto [u, v] = split_box(DigitBox::uniform(2, DigitSet::parse(3, "1-2")), 1);
  EXPECT_EQ(enumerate(f, u), (std::vector<Elem>{f.constant(1), f.constant(2)}));
  EXPECT_EQ(enumerate(f, v), (std::vector<Elem>{poly(f, {0, 1}), poly(f, {0, 2})}));
}

TEST(SplitBox, SumDecomposition) {
  const Field f = make_field(5, 4);
  const DigitBox box = DigitBox::parse(5, 4, "0,2|1-3|4|0-1");
  const auto w = enumerate(f, box);
  const std::set<Elem> ws(w.begin(), w.end());
  for (std::uint32_t k = 1; k < 4; ++k) {
    const auto [u, v] = split_box(box, k);
    EXPECT_EQ(u.size() * v.size(), box.size());
    std::set<Elem> sums;
    for (const Elem& a : enumerate(f, u))
      for (const Elem& b : enumerate(f, v)) sums.insert(f.add(a, b));
    EXPECT_EQ(sums, ws);
  }
  const auto [u3, v3] = split_box(box, 3);
  for (std::uint32_t i = 1; i < 4; ++i) EXPECT_EQ(u3.digits(i).to_string(), "0");
  EXPECT_THROW(split_box(box, 0), DomainError);
  EXPECT_THROW(split_box(box, 4), DomainError);
}

TEST(IntervalBox, DigitsWrapModP) {
  const IntervalBox b(7, {5, -1}, {4, 2});
  EXPECT_EQ(b.size(), 8u);
  EXPECT_EQ(b.to_digit_box().to_string(), "0-2,6|0-1");
  EXPECT_FALSE(b.is_cube());
  EXPECT_EQ(b.to_string(), "N=(5,-1) H=(4,2)");
  EXPECT_THROW(IntervalBox(7, {0}, {8}), DomainError);
}
