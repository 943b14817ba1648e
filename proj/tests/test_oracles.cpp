#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <random>
#include <set>

#include "sqfield/oracles.hpp"

using namespace sqfield;

namespace {

Elem poly(const Field& f, std::vector<std::int64_t> c) { return f.from_poly(c); }

std::vector<Elem> all_elements(const Field& f) {
  std::vector<Elem> out;
  for (std::uint64_t k = 0; k < f.q(); ++k) out.push_back(f.from_rank(k));
  return out;
}

// Floating evaluation of |sum_xi chi((xi+a)(xi+b)^{s-1})| from complex values.
long double lemmaD_float(const MultChar& chi, const Elem& a, const Elem& b) {
  const Field& f = chi.field();
  std::complex<long double> total = 0;
  for (std::uint32_t xi = 0; xi < f.p(); ++xi) {
    const Elem c = f.constant(xi);
    total += chi.value(f.mul(f.add(c, a), f.pow(f.add(c, b), chi.order() - 1)));
  }
  return std::abs(total);
}

// Quadruple loop, the definition of multiplicative energy.
std::uint64_t energy_by_quadruples(const Field& f, const std::vector<Elem>& B) {
  std::uint64_t e = 0;
  for (const Elem& a : B)
    for (const Elem& b : B)
      for (const Elem& c : B)
        for (const Elem& d : B) e += f.mul(a, b) == f.mul(c, d);
  return e;
}

}  // namespace

TEST(LemmaD, F9Example) {
  const Field f = make_field(3, 2);
  const LemmaReport rep = lemmaD_check(f, f.generator_x(), poly(f, {1, 1}), 2);
  EXPECT_EQ(rep.verdict, Verdict::pass);
  EXPECT_EQ(rep.lhs_exact, "-1");
  EXPECT_EQ(rep.rhs.upper_string(10), "5.196152423");
}

TEST(LemmaD, RefusesConjugatesAndNonGenerators) {
  const Field f = make_field(3, 2);
  EXPECT_EQ(lemmaD_check(f, poly(f, {1, 1}), poly(f, {1, 2}), 2).verdict, Verdict::skip_hypothesis);
  EXPECT_EQ(lemmaD_check(f, f.one(), poly(f, {1, 2}), 2).verdict, Verdict::skip_hypothesis);
  EXPECT_THROW(lemmaD_check(f, f.generator_x(), poly(f, {1, 1}), 3), DomainError);
}

TEST(LemmaD, ExhaustiveF25AndSwapSymmetry) {
  const Field f = make_field(5, 2);
  const MultChar chi = make_char(f, 2, 1);
  std::vector<Elem> gens;
  for (const Elem& a : all_elements(f))
    if (f.is_generator(a)) gens.push_back(a);
  ASSERT_EQ(gens.size(), 20u);
  int checked = 0;
  for (const Elem& a : gens)
    for (const Elem& b : gens) {
      const auto rep = lemmaD_check(chi, a, b);
      if (f.are_conjugate(a, b)) {
        EXPECT_EQ(rep.verdict, Verdict::skip_hypothesis);
        continue;
      }
      ++checked;
      EXPECT_EQ(rep.verdict, Verdict::pass);
      EXPECT_EQ(rep.lhs_exact, lemmaD_check(chi, b, a).lhs_exact);
    }
  EXPECT_EQ(checked, 20 * 18);
}

TEST(LemmaD, HigherOrderMatchesFloatingEvaluation) {
  for (auto [p, r, s] : std::vector<std::tuple<std::uint32_t, std::uint32_t, std::uint64_t>>{
           {5, 2, 3}, {5, 2, 4}, {3, 3, 13}, {7, 2, 8}}) {
    const Field f = make_field(p, r);
    const MultChar chi = make_char(f, s, 1);
    std::vector<Elem> gens;
    for (const Elem& a : all_elements(f))
      if (f.is_generator(a)) gens.push_back(a);
    for (std::size_t i = 0; i < gens.size(); i += 3)
      for (std::size_t j = 0; j < gens.size(); j += 2) {
        if (f.are_conjugate(gens[i], gens[j])) continue;
        const auto rep = lemmaD_check(chi, gens[i], gens[j]);
        ASSERT_EQ(rep.verdict, Verdict::pass);
        ASSERT_NEAR(static_cast<double>(rep.lhs.mid()), static_cast<double>(lemmaD_float(chi, gens[i], gens[j])), 1e-9);
      }
  }
}

TEST(LemmaE, Examples) {
  const Field f = make_field(3, 2);
  const MultChar chi = make_char(f, 2, 1);
  const std::vector<MultChar> one = {chi};
  const std::vector<Elem> shift = {poly(f, {2, 1})};
  const auto single = lemmaE_check(one, shift);
  EXPECT_EQ(single.lhs_exact, "0");
  EXPECT_EQ(single.rhs.upper(), 1.0);

  const std::vector<MultChar> two = {chi, chi};
  const std::vector<Elem> shifts = {f.zero(), f.one()};
  const auto rep = lemmaE_check(two, shifts);
  EXPECT_EQ(rep.verdict, Verdict::pass);
  EXPECT_EQ(rep.lhs_exact, "-1");
  EXPECT_EQ(rep.rhs.upper(), 4.0);

  const std::vector<MultChar> principal = {make_char(f, 1, 0), make_char(f, 4, 0)};
  EXPECT_EQ(lemmaE_check(principal, shifts).verdict, Verdict::skip_hypothesis);
  const std::vector<Elem> repeated = {f.one(), f.one()};
  EXPECT_EQ(lemmaE_check(two, repeated).verdict, Verdict::skip_hypothesis);
}

TEST(LemmaE, MixedOrdersMatchFloatingProduct) {
  const Field f = make_field(5, 2);
  std::mt19937_64 rng(8);
  const std::vector<std::uint64_t> orders = {1, 2, 3, 4, 6, 8, 12, 24};
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t t = 1 + rng() % 4;
    std::vector<MultChar> chars;
    std::vector<Elem> shifts;
    std::set<std::uint64_t> used;
    while (shifts.size() < t) {
      const auto k = rng() % f.q();
      if (used.insert(k).second) shifts.push_back(f.from_rank(k));
    }
    for (std::size_t i = 0; i < t; ++i) {
      const auto s = orders[rng() % orders.size()];
      chars.push_back(make_char(f, s, 1 + rng() % s));
    }
    std::complex<long double> total = 0;
    for (const Elem& a : all_elements(f)) {
      std::complex<long double> prod = 1;
      for (std::size_t i = 0; i < t; ++i) prod *= chars[i].value(f.add(a, shifts[i]));
      total += prod;
    }
    const auto rep = lemmaE_check(chars, shifts);
    if (rep.verdict == Verdict::skip_hypothesis) continue;
    ASSERT_EQ(rep.verdict, Verdict::pass);
    ASSERT_NEAR(static_cast<double>(rep.lhs.mid()), static_cast<double>(std::abs(total)), 1e-9);
  }
}

TEST(Lemma1, Examples) {
  const Field f = make_field(3, 2);
  const QuadraticCharacter chi(f);
  const std::vector<Elem> U = {f.one(), f.constant(2)};
  const std::vector<Elem> V = {f.generator_x(), poly(f, {0, 2})};
  const auto rep = lemma1_check(chi, U, V, 1);
  EXPECT_EQ(rep.lhs_exact, "-4");
  EXPECT_EQ(rep.lhs.upper(), 4.0);
  EXPECT_EQ(rep.rhs.upper_string(20).substr(0, 18), "12.961481396815720");
  EXPECT_EQ(rep.verdict, Verdict::pass);

  EXPECT_EQ(lemma1_rhs(25, 3, 4, 2).upper_string(20).substr(0, 18), "25.243693594101560");
  const auto whole = lemma1_check(chi, {f.zero()}, all_elements(f), 1);
  EXPECT_EQ(whole.lhs_exact, "0");
}

TEST(Lemma1, RandomSetsAgainstDirectSum) {
  std::mt19937_64 rng(99);
  for (auto [p, r] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{3, 4}, {5, 3}, {7, 2}}) {
    const Field f = make_field(p, r);
    const QuadraticCharacter chi(f);
    for (int trial = 0; trial < 30; ++trial) {
      std::vector<Elem> U, V;
      for (int i = 0, n = 1 + rng() % 20; i < n; ++i) U.push_back(f.from_rank(rng() % f.q()));
      for (int i = 0, n = 1 + rng() % 20; i < n; ++i) V.push_back(f.from_rank(rng() % f.q()));
      const std::set<Elem> us(U.begin(), U.end()), vs(V.begin(), V.end());
      std::int64_t direct = 0;
      for (const Elem& u : us)
        for (const Elem& v : vs) direct += quad_char(f, f.add(u, v));
      for (std::uint32_t nu = 1; nu <= 3; ++nu) {
        const auto rep = lemma1_check(chi, U, V, nu);
        ASSERT_EQ(rep.lhs_exact, std::to_string(direct));
        ASSERT_EQ(rep.verdict, Verdict::pass);
      }
    }
  }
}

TEST(Partition, F9Example) {
  const Field f = make_field(3, 2);
  const auto part = subfield_partition(f, DigitSet::parse(3, "0-1"));
  ASSERT_EQ(part.parts.size(), 2u);
  EXPECT_EQ(part.parts.at(1), (std::vector<std::vector<std::uint32_t>>{{0}}));
  EXPECT_EQ(part.parts.at(2), (std::vector<std::vector<std::uint32_t>>{{1}}));
  const auto no_zero = subfield_partition(f, DigitSet::parse(3, "1-2"));
  EXPECT_EQ(no_zero.cardinality(1), 0u);
  EXPECT_EQ(partition_check(f, DigitSet::parse(3, "1-2")).verdict, Verdict::pass);
}

TEST(Partition, PrimeDegreeKeysAndBasisInvariance) {
  const Field f = make_field(5, 3);
  for (const char* spec : {"0-4", "1,3", "0,2-3"}) {
    const auto part = subfield_partition(f, DigitSet::parse(5, spec));
    for (const auto& [d, tuples] : part.parts) EXPECT_TRUE(d == 1 || d == 3);
    EXPECT_EQ(partition_check(f, DigitSet::parse(5, spec)).verdict, Verdict::pass);
  }
  // Two bases with the same a_1 and the same span of b_j.
  const Elem a1 = poly(f, {2, 1});
  const std::vector<Elem> b1 = {a1, f.mul(a1, f.generator_x()), f.mul(a1, poly(f, {0, 0, 1}))};
  const std::vector<Elem> b2 = {a1, f.mul(a1, poly(f, {0, 1, 1})), f.mul(a1, poly(f, {0, 1, 2}))};
  const DigitSet D = DigitSet::parse(5, "0-2");
  const auto p1 = subfield_partition(f.with_basis(b1), D);
  const auto p2 = subfield_partition(f.with_basis(b2), D);
  for (std::uint32_t d : {1u, 3u}) EXPECT_EQ(p1.cardinality(d), p2.cardinality(d));
}

TEST(Partition, SmallFieldsAllPass) {
  for (auto [p, r] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{3, 4}, {5, 4}, {7, 2}, {3, 3}}) {
    const Field f = make_field(p, r);
    for (std::uint32_t a = 0; a < p; ++a)
      for (std::uint32_t len = 1; a + len <= p; ++len) {
        const auto rep = partition_check(f, DigitSet::range(p, a, len));
        ASSERT_EQ(rep.verdict, Verdict::pass) << rep.note;
      }
  }
}

TEST(Energy, Examples) {
  const Field f5 = make_field(5, 1);
  const std::vector<Elem> one = {f5.one()};
  EXPECT_EQ(energy_count(f5, std::span<const Elem>(one)).energy, 1u);
  const std::vector<Elem> b = {f5.constant(1), f5.constant(2)};
  EXPECT_EQ(energy_count(f5, std::span<const Elem>(b)).energy, 6u);
}

TEST(Energy, MatchesQuadrupleLoopAndScaling) {
  const Field f = make_field(11, 2);
  for (std::int64_t n1 : {0, 3, 9})
    for (std::int64_t n2 : {0, 5}) {
      const IntervalBox box = IntervalBox::cube(11, {n1, n2}, 3);
      const auto elems = enumerate(f, box);
      const auto rep = energy_count(f, box);
      EXPECT_EQ(rep.energy, energy_by_quadruples(f, elems));
      EXPECT_GE(rep.energy, rep.trivial_lower);
      EXPECT_TRUE(rep.within_hypothesis);
      std::vector<Elem> scaled;
      for (const Elem& x : elems) scaled.push_back(f.mul(poly(f, {2, 7}), x));
      EXPECT_EQ(energy_count(f, std::span<const Elem>(scaled)).energy, rep.energy);
    }
  EXPECT_FALSE(energy_count(f, IntervalBox(11, {0, 0}, {2, 3})).within_hypothesis);
  EXPECT_FALSE(energy_count(f, IntervalBox::cube(11, {0, 0}, 4)).within_hypothesis);
}

TEST(DeltaH, UnitBoxesInPrimeField) {
  const Field f = make_field(7, 1);
  const auto res = delta_H(make_char(f, 2, 1), 1);
  EXPECT_EQ(res.value.upper(), 1.0);
  EXPECT_EQ(res.boxes, 14u);
}

TEST(DeltaH, F25ByIndependentSearch) {
  const Field f = make_field(5, 2);
  const QuadraticCharacter chi(f);
  long double best = 0;
  for (std::int64_t n1 = 0; n1 < 5; ++n1)
    for (std::int64_t n2 = 0; n2 < 5; ++n2)
      for (std::uint32_t h1 = 2; h1 <= 4; ++h1)
        for (std::uint32_t h2 = 2; h2 <= 4; ++h2) {
          std::int64_t s = 0;
          std::uint64_t size = 0;
          for (std::uint32_t i = 1; i <= h1; ++i)
            for (std::uint32_t j = 1; j <= h2; ++j) {
              s += chi(poly(f, {n1 + i, n2 + j}));
              ++size;
            }
          best = std::max(best, std::abs(static_cast<long double>(s)) / size);
        }
  const auto res = delta_H(make_char(f, 2, 1), 2);
  EXPECT_EQ(res.boxes, 225u);
  EXPECT_NEAR(static_cast<double>(res.value.mid()), static_cast<double>(best), 1e-15);
  EXPECT_LE(res.value.upper(), 1.0);
  EXPECT_THROW(delta_H(make_char(f, 2, 1), 3), DomainError);
}
