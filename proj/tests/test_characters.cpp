#include <gtest/gtest.h>

#include <set>
#include <vector>

#include "sqfield/characters.hpp"

using namespace sqfield;

namespace {

std::vector<Elem> all_elements(const Field& f) {
  std::vector<Elem> out;
  for (std::uint64_t k = 0; k < f.q(); ++k) out.push_back(f.from_rank(k));
  return out;
}

// Squares computed by squaring every nonzero element.
std::set<Elem> squares_by_squaring(const Field& f) {
  std::set<Elem> out;
  for (const Elem& y : all_elements(f))
    if (!f.is_zero(y)) out.insert(f.mul(y, y));
  return out;
}

}  // namespace

TEST(QuadChar, PrimeFieldExamples) {
  const Field f = make_field(5, 1);
  EXPECT_EQ(quad_char(f, f.constant(4)), 1);
  EXPECT_EQ(quad_char(f, f.constant(2)), -1);
  EXPECT_EQ(quad_char(f, f.zero()), 0);
}

TEST(QuadChar, F9Squares) {
  const Field f = make_field(3, 2);
  const QuadraticCharacter chi(f);
  const Elem x = f.generator_x();
  EXPECT_EQ(chi(x), 1);
  EXPECT_EQ(chi(f.add(f.one(), x)), -1);
  const std::set<Elem> expected = {f.one(), f.constant(2), x, f.scale(x, 2)};
  std::set<Elem> q;
  for (const Elem& a : all_elements(f))
    if (chi(a) == 1) q.insert(a);
  EXPECT_EQ(q, expected);
}

TEST(QuadChar, AgreesWithExhaustiveSquaring) {
  for (auto [p, r] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{
           {3, 1}, {3, 2}, {3, 3}, {3, 4}, {3, 5}, {5, 2}, {5, 3}, {7, 2}, {11, 1}, {13, 2}}) {
    const Field f = make_field(p, r);
    const auto squares = squares_by_squaring(f);
    ASSERT_EQ(squares.size(), (f.q() - 1) / 2);
    const QuadraticCharacter table(f);
    const QuadraticCharacter euler(f, 0);
    ASSERT_TRUE(table.tabulated());
    ASSERT_FALSE(euler.tabulated());
    for (const Elem& a : all_elements(f)) {
      const int want = f.is_zero(a) ? 0 : (squares.count(a) ? 1 : -1);
      ASSERT_EQ(table(a), want);
      ASSERT_EQ(euler(a), want);
      ASSERT_EQ(quad_char(f, a), want);
    }
  }
}

TEST(MultChar, PrincipalCharacter) {
  const Field f = make_field(7, 1);
  const MultChar chi = make_char(f, 1, 0);
  EXPECT_TRUE(chi.is_principal());
  for (std::uint64_t k = 1; k < 7; ++k) EXPECT_EQ(chi.exponent(f.from_rank(k)), 0u);
  EXPECT_EQ(chi.exponent(f.zero()), std::nullopt);
}

TEST(MultChar, CubicCharacterOnF7) {
  const Field f = make_field(7, 1);
  const MultChar chi = make_char(f, 3, 1);
  ASSERT_TRUE(chi.generator());
  EXPECT_EQ(*chi.generator(), f.constant(3));
  EXPECT_EQ(chi.exponent(f.constant(3)), 1u);
  const auto v = chi.value(f.constant(3));
  EXPECT_NEAR(static_cast<double>(v.real()), -0.5, 1e-15);
  EXPECT_NEAR(static_cast<double>(v.imag()), std::sqrt(3.0) / 2, 1e-15);
}

TEST(MultChar, GeneratorOfF9) {
  const Field f = make_field(3, 2);
  const MultChar chi = make_char(f, 8, 1);
  EXPECT_EQ(*chi.generator(), f.add(f.one(), f.generator_x()));
}

TEST(MultChar, QuadraticOrderMatchesQuadChar) {
  const Field f = make_field(3, 2);
  const MultChar chi = make_char(f, 2, 1);
  for (const Elem& a : all_elements(f)) {
    const auto e = chi.exponent(a);
    const int v = e ? (*e == 0 ? 1 : -1) : 0;
    EXPECT_EQ(v, quad_char(f, a));
  }
}

TEST(MultChar, Multiplicative) {
  for (auto [p, r] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{3, 2}, {5, 2}, {3, 3}, {7, 2}, {13, 1}}) {
    const Field f = make_field(p, r);
    const auto els = all_elements(f);
    for (std::uint64_t s = 1; s < f.q(); ++s) {
      if ((f.q() - 1) % s != 0) continue;
      for (std::uint64_t j : {std::uint64_t{1}, s - 1}) {
        const MultChar chi = make_char(f, s, j);
        for (const Elem& a : els) {
          if (f.is_zero(a)) continue;
          for (const Elem& b : els) {
            if (f.is_zero(b)) continue;
            ASSERT_EQ(*chi.exponent(f.mul(a, b)), (*chi.exponent(a) + *chi.exponent(b)) % s);
          }
        }
      }
    }
  }
}

TEST(MultChar, MultiplicativeOnF729) {
  const Field f = make_field(3, 6);
  const MultChar chi = make_char(f, f.q() - 1, 1);
  for (std::uint64_t i = 1; i < f.q(); ++i)
    for (std::uint64_t k = 1; k < f.q(); k += 7) {
      const Elem a = f.from_rank(i), b = f.from_rank(k);
      ASSERT_EQ(chi.dlog(f.mul(a, b)), (chi.dlog(a) + chi.dlog(b)) % (f.q() - 1));
    }
}

TEST(MultChar, Errors) {
  const Field f = make_field(3, 2);
  EXPECT_THROW(make_char(f, 3, 1), DomainError);
  EXPECT_THROW(make_char(f, 0, 1), DomainError);
  EXPECT_THROW(make_char(f, 4, 1, 8), DomainError);  // above the table cap
  EXPECT_NO_THROW(make_char(f, 2, 1, 8));             // quadratic needs no table
}

TEST(CharSum, Orthogonality) {
  for (auto [p, r] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{3, 2}, {5, 2}, {3, 3}, {7, 2}, {11, 1}}) {
    const Field f = make_field(p, r);
    const auto els = all_elements(f);
    for (std::uint64_t s = 1; s < f.q(); ++s) {
      if ((f.q() - 1) % s != 0) continue;
      for (std::uint64_t j = 0; j < s; ++j) {
        const CycloSum sum = char_sum(make_char(f, s, j), els);
        if (j == 0) {
          EXPECT_EQ(sum.as_integer(), static_cast<std::int64_t>(f.q() - 1));
        } else {
          const ZeroTest z = sum.zero_test();
          EXPECT_TRUE(z.zero) << "q=" << f.q() << " s=" << s << " j=" << j;
          EXPECT_LT(sum.magnitude_interval().upper(), 1e-40);
        }
      }
    }
  }
}

TEST(CharSum, F9DigitSetExample) {
  const Field f = make_field(3, 2);
  const std::vector<Elem> w = {f.from_poly(std::vector<std::int64_t>{1, 1}), f.from_poly(std::vector<std::int64_t>{1, 2}),
                               f.from_poly(std::vector<std::int64_t>{2, 1}), f.from_poly(std::vector<std::int64_t>{2, 2})};
  EXPECT_EQ(char_sum(make_char(f, 2, 1), w).as_integer(), -4);
}

TEST(CycloSum, ExactAndApproximateZeroTests) {
  CycloSum prime(3);
  prime.add(0, 2);
  prime.add(1, 2);
  prime.add(2, 2);
  EXPECT_TRUE(prime.zero_test().zero);
  EXPECT_TRUE(prime.zero_test().exact);
  EXPECT_EQ(prime.as_integer(), 0);

  // 1 + zeta_6^2 + zeta_6^4 = 0 needs the floating test.
  CycloSum composite(6);
  composite.add(0);
  composite.add(2);
  composite.add(4);
  const ZeroTest z = composite.zero_test();
  EXPECT_TRUE(z.zero);
  EXPECT_FALSE(z.exact);

  // Support in {0, s/2} is a rational integer.
  CycloSum real(4);
  real.add(0, 3);
  real.add(2);
  EXPECT_EQ(real.as_integer(), 2);
  EXPECT_TRUE(real.zero_test().exact);

  CycloSum c(6);
  c.add(1);
  const Interval m = c.magnitude_interval();
  EXPECT_TRUE(m.possibly_le(Interval(1)) && Interval(1).possibly_le(m));
  EXPECT_LT(m.width(), 1e-40);
  EXPECT_NEAR(static_cast<double>(c.magnitude()), 1.0, 1e-15);
  EXPECT_EQ(c.to_string(), "[0 1 0 0 0 0]");

  CycloSum a(5), b(5);
  a.add(1, 3);
  b.add(4, -1);
  EXPECT_EQ((a + b).counts()[4], -1);
  EXPECT_THROW(a += CycloSum(3), DomainError);
}
