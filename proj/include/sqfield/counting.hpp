#pragma once

// Exact and sampled counting of squares inside W.

#include <boost/rational.hpp>

#include <cmath>
#include <cstdint>
#include <future>
#include <stdexcept>
#include <vector>

#include "sqfield/characters.hpp"
#include "sqfield/digit_sets.hpp"

namespace sqfield {

using Rational = boost::rational<std::int64_t>;

inline Rational abs(const Rational& x) { return x < 0 ? -x : x; }

inline std::string to_string(const Rational& x) {
  if (x.denominator() == 1) return std::to_string(x.numerator());
  return std::to_string(x.numerator()) + "/" + std::to_string(x.denominator());
}

inline Interval to_interval(const Rational& x) { return Interval::rational(x.numerator(), x.denominator()); }

struct SquareCountReport {
  std::uint64_t size_W = 0;
  std::uint64_t count_Q = 0;          // |W ∩ Q|, nonzero squares
  std::uint64_t count_Q0 = 0;         // |W ∩ Q_0|, squares including 0
  std::uint64_t count_nonsquares = 0;
  bool zero_in_W = false;
  std::int64_t char_sum = 0;          // sum over W of the quadratic character
  Rational deviation;                 // | |W ∩ Q| - |W|/2 |
  Rational deviation_Q0;              // | |W ∩ Q_0| - |W|/2 |
};

namespace detail {

struct PartialCount {
  std::uint64_t size = 0, squares = 0, nonsquares = 0;
  bool zero = false;

  PartialCount& operator+=(const PartialCount& o) {
    size += o.size;
    squares += o.squares;
    nonsquares += o.nonsquares;
    zero = zero || o.zero;
    return *this;
  }
};

inline PartialCount count_shard(const QuadraticCharacter& chi, const DigitBox& box, std::uint64_t budget) {
  PartialCount c;
  for_each_element(
      chi.field(), box,
      [&](const Elem& x) {
        ++c.size;
        switch (chi(x)) {
          case 1: ++c.squares; break;
          case -1: ++c.nonsquares; break;
          default: c.zero = true; break;
        }
      },
      budget);
  return c;
}

}  // namespace detail

/// Exact counts; `jobs` > 1 splits the enumeration by first coordinate.
inline SquareCountReport count_squares(const QuadraticCharacter& chi, const DigitBox& box,
                                       std::uint64_t budget = kDefaultBudget, unsigned jobs = 1) {
  check_compatible(chi.field(), box);
  check_budget(box.size(), budget, "count_squares");
  detail::PartialCount total;
  if (jobs <= 1 || box.digits(0).size() == 1) {
    total = detail::count_shard(chi, box, budget);
  } else {
    const auto shards = shard(box);
    std::vector<detail::PartialCount> parts(shards.size());
    for (std::size_t start = 0; start < shards.size(); start += jobs) {
      std::vector<std::future<detail::PartialCount>> running;
      for (std::size_t i = start; i < std::min<std::size_t>(start + jobs, shards.size()); ++i)
        running.push_back(std::async(std::launch::async, detail::count_shard, std::cref(chi), std::cref(shards[i]), budget));
      for (std::size_t i = 0; i < running.size(); ++i) parts[start + i] = running[i].get();
    }
    for (const auto& part : parts) total += part;
  }

  SquareCountReport rep;
  rep.size_W = total.size;
  rep.count_Q = total.squares;
  rep.count_nonsquares = total.nonsquares;
  rep.zero_in_W = total.zero;
  rep.count_Q0 = total.squares + (total.zero ? 1 : 0);
  rep.char_sum = static_cast<std::int64_t>(total.squares) - static_cast<std::int64_t>(total.nonsquares);
  const Rational half_w(static_cast<std::int64_t>(rep.size_W), 2);
  rep.deviation = abs(Rational(static_cast<std::int64_t>(rep.count_Q)) - half_w);
  rep.deviation_Q0 = abs(Rational(static_cast<std::int64_t>(rep.count_Q0)) - half_w);

  // |W ∩ Q| = (|W| - [0 in W])/2 + (1/2) sum chi(x).
  const Rational identity(static_cast<std::int64_t>(rep.size_W) - (rep.zero_in_W ? 1 : 0) + rep.char_sum, 2);
  if (identity != Rational(static_cast<std::int64_t>(rep.count_Q)) ||
      rep.count_Q + rep.count_nonsquares + (rep.zero_in_W ? 1 : 0) != rep.size_W ||
      rep.zero_in_W != box.contains_zero())
    throw std::logic_error("count_squares: counting identity violated");
  return rep;
}

inline SquareCountReport count_squares(const Field& f, const DigitBox& box, std::uint64_t budget = kDefaultBudget,
                                       unsigned jobs = 1) {
  return count_squares(QuadraticCharacter(f), box, budget, jobs);
}

struct FractionEstimate {
  double estimate = 0;
  double ci_low = 0;
  double ci_high = 0;
  std::uint64_t samples = 0;
  std::uint64_t hits = 0;
  /// Set when n * estimate < 20, where the normal approximation is unreliable.
  bool caveat = false;
};

/// Monte-Carlo estimate of |W ∩ Q| / |W| with a 99% normal-approximation CI.
inline FractionEstimate estimate_square_fraction(const QuadraticCharacter& chi, const DigitBox& box, std::uint64_t n,
                                                 std::uint64_t seed) {
  if (n < 100) throw DomainError("estimate_square_fraction: need n >= 100");
  constexpr double kZ99 = 2.5758293035489004;
  FractionEstimate est;
  est.samples = n;
  for (const Elem& x : sample_uniform(chi.field(), box, n, seed))
    if (chi(x) == 1) ++est.hits;
  const double ph = static_cast<double>(est.hits) / static_cast<double>(n);
  const double half = kZ99 * std::sqrt(ph * (1 - ph) / static_cast<double>(n));
  est.estimate = ph;
  est.ci_low = std::max(0.0, ph - half);
  est.ci_high = std::min(1.0, ph + half);
  est.caveat = static_cast<double>(n) * ph < 20;
  return est;
}

}  // namespace sqfield
