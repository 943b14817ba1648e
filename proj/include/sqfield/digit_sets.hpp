#pragma once

// Digit-restricted sets W(D_1, ..., D_r) = { sum x_i a_i : x_i in D_i } and
// coordinate boxes { N_i + 1 <= x_i <= N_i + H_i }.

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sqfield/error.hpp"
#include "sqfield/field.hpp"

namespace sqfield {

inline constexpr std::uint64_t kDefaultBudget = 100'000'000;

inline void check_budget(std::uint64_t count, std::uint64_t budget, std::string_view what) {
  if (count > budget)
    throw BudgetExceeded(std::string(what) + ": " + std::to_string(count) + " elements exceed the enumeration budget of " +
                         std::to_string(budget) + "; use Monte-Carlo mode (estimate) instead");
}

/// Saturating product, used for sizes that may overflow.
inline std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) return std::numeric_limits<std::uint64_t>::max();
  return a * b;
}

/// Nonempty subset of F_p, kept both as a sorted list and a bitmask.
class DigitSet {
 public:
  DigitSet(std::uint32_t p, std::vector<std::uint32_t> residues) : p_(p), values_(std::move(residues)) {
    if (p == 0) throw DomainError("DigitSet: p must be positive");
    std::sort(values_.begin(), values_.end());
    values_.erase(std::unique(values_.begin(), values_.end()), values_.end());
    if (values_.empty()) throw DomainError("DigitSet: digit set must be nonempty");
    if (values_.back() >= p) throw DomainError("DigitSet: residue " + std::to_string(values_.back()) + " not below p");
    mask_.assign((p + 63) / 64, 0);
    for (auto v : values_) mask_[v / 64] |= std::uint64_t{1} << (v % 64);
  }

  /// {first, first+1, ..., first+count-1} reduced mod p.
  static DigitSet range(std::uint32_t p, std::int64_t first, std::uint32_t count) {
    if (count == 0 || count > p) throw DomainError("DigitSet::range: length must be in [1, p]");
    std::vector<std::uint32_t> v(count);
    const std::int64_t pp = p;
    for (std::uint32_t i = 0; i < count; ++i) v[i] = static_cast<std::uint32_t>(((first + i) % pp + pp) % pp);
    return DigitSet(p, std::move(v));
  }

  static DigitSet full(std::uint32_t p) { return range(p, 0, p); }

  /// Parses "0-4,7,9": comma-separated residues and inclusive ranges.
  static DigitSet parse(std::uint32_t p, std::string_view spec) {
    std::vector<std::uint32_t> out;
    std::size_t pos = 0;
    auto fail = [&](const std::string& why) -> ParseError {
      return ParseError("digit set '" + std::string(spec) + "': " + why + " at offset " + std::to_string(pos));
    };
    auto number = [&]() -> std::uint32_t {
      std::uint32_t v = 0;
      auto [ptr, ec] = std::from_chars(spec.data() + pos, spec.data() + spec.size(), v);
      if (ec != std::errc()) throw fail("expected a residue");
      pos = static_cast<std::size_t>(ptr - spec.data());
      return v;
    };
    if (spec.empty()) throw fail("empty");
    while (true) {
      const std::uint32_t a = number();
      std::uint32_t b = a;
      if (pos < spec.size() && spec[pos] == '-') {
        ++pos;
        b = number();
        if (b < a) throw fail("descending range");
      }
      if (b >= p) throw fail("residue " + std::to_string(b) + " not below p = " + std::to_string(p));
      for (std::uint32_t v = a; v <= b; ++v) out.push_back(v);
      if (pos == spec.size()) break;
      if (spec[pos] != ',') throw fail("unexpected character");
      ++pos;
    }
    return DigitSet(p, std::move(out));
  }

  std::uint32_t p() const noexcept { return p_; }
  std::size_t size() const noexcept { return values_.size(); }
  std::span<const std::uint32_t> values() const noexcept { return values_; }
  bool contains(std::uint32_t v) const noexcept { return v < p_ && (mask_[v / 64] >> (v % 64) & 1); }

  /// Compact form with maximal runs, e.g. "0-4,7,9".
  std::string to_string() const {
    std::string out;
    for (std::size_t i = 0; i < values_.size();) {
      std::size_t j = i;
      while (j + 1 < values_.size() && values_[j + 1] == values_[j] + 1) ++j;
      if (!out.empty()) out += ',';
      out += std::to_string(values_[i]);
      if (j > i) out += '-' + std::to_string(values_[j]);
      i = j + 1;
    }
    return out;
  }

  friend bool operator==(const DigitSet& a, const DigitSet& b) { return a.p_ == b.p_ && a.values_ == b.values_; }

 private:
  std::uint32_t p_;
  std::vector<std::uint32_t> values_;
  std::vector<std::uint64_t> mask_;
};

/// Per-coordinate digit sets D_1, ..., D_r.
class DigitBox {
 public:
  DigitBox(std::uint32_t p, std::vector<DigitSet> digits) : p_(p), digits_(std::move(digits)) {
    if (digits_.empty()) throw DomainError("DigitBox: need at least one coordinate");
    for (const auto& d : digits_)
      if (d.p() != p) throw DomainError("DigitBox: digit set over the wrong prime");
  }

  static DigitBox uniform(std::uint32_t r, const DigitSet& d) { return DigitBox(d.p(), std::vector<DigitSet>(r, d)); }

  /// "0-4,7" gives a uniform box; "0-2|1,3|5" lists one set per coordinate.
  static DigitBox parse(std::uint32_t p, std::uint32_t r, std::string_view spec) {
    if (spec.find('|') == std::string_view::npos) return uniform(r, DigitSet::parse(p, spec));
    std::vector<DigitSet> sets;
    std::size_t start = 0;
    while (true) {
      const std::size_t bar = spec.find('|', start);
      sets.push_back(DigitSet::parse(p, spec.substr(start, bar == std::string_view::npos ? bar : bar - start)));
      if (bar == std::string_view::npos) break;
      start = bar + 1;
    }
    if (sets.size() != r)
      throw ParseError("digit box '" + std::string(spec) + "': expected " + std::to_string(r) + " coordinate sets, got " +
                       std::to_string(sets.size()));
    return DigitBox(p, std::move(sets));
  }

  std::uint32_t p() const noexcept { return p_; }
  std::uint32_t r() const noexcept { return static_cast<std::uint32_t>(digits_.size()); }
  const DigitSet& digits(std::size_t i) const { return digits_.at(i); }
  std::span<const DigitSet> all_digits() const noexcept { return digits_; }

  bool uniform() const {
    return std::all_of(digits_.begin(), digits_.end(), [&](const DigitSet& d) { return d == digits_.front(); });
  }

  /// prod |D_i|, saturating at 2^64 - 1.
  std::uint64_t size() const {
    std::uint64_t n = 1;
    for (const auto& d : digits_) n = saturating_mul(n, d.size());
    return n;
  }

  bool contains_zero() const {
    return std::all_of(digits_.begin(), digits_.end(), [](const DigitSet& d) { return d.contains(0); });
  }

  std::string to_string() const {
    if (uniform()) return digits_.front().to_string();
    std::string out;
    for (std::size_t i = 0; i < digits_.size(); ++i) {
      if (i) out += '|';
      out += digits_[i].to_string();
    }
    return out;
  }

  friend bool operator==(const DigitBox& a, const DigitBox& b) { return a.p_ == b.p_ && a.digits_ == b.digits_; }

 private:
  std::uint32_t p_;
  std::vector<DigitSet> digits_;
};

/// B = { sum x_i a_i : N_i + 1 <= x_i <= N_i + H_i } with 1 <= H_i <= p.
struct IntervalBox {
  std::uint32_t p = 0;
  std::vector<std::int64_t> offsets;
  std::vector<std::uint32_t> lengths;

  IntervalBox(std::uint32_t p_, std::vector<std::int64_t> n, std::vector<std::uint32_t> h)
      : p(p_), offsets(std::move(n)), lengths(std::move(h)) {
    if (offsets.size() != lengths.size() || offsets.empty()) throw DomainError("IntervalBox: offsets/lengths mismatch");
    for (auto len : lengths)
      if (len == 0 || len > p) throw DomainError("IntervalBox: side lengths must lie in [1, p]");
  }

  static IntervalBox cube(std::uint32_t p, std::vector<std::int64_t> n, std::uint32_t h) {
    std::vector<std::uint32_t> hs(n.size(), h);
    return IntervalBox(p, std::move(n), std::move(hs));
  }

  std::uint32_t r() const noexcept { return static_cast<std::uint32_t>(lengths.size()); }

  std::uint64_t size() const {
    std::uint64_t n = 1;
    for (auto h : lengths) n = saturating_mul(n, h);
    return n;
  }

  bool is_cube() const { return std::all_of(lengths.begin(), lengths.end(), [&](auto h) { return h == lengths[0]; }); }

  DigitBox to_digit_box() const {
    std::vector<DigitSet> sets;
    sets.reserve(lengths.size());
    for (std::size_t i = 0; i < lengths.size(); ++i) sets.push_back(DigitSet::range(p, offsets[i] + 1, lengths[i]));
    return DigitBox(p, std::move(sets));
  }

  std::string to_string() const {
    std::string out = "N=(";
    for (std::size_t i = 0; i < offsets.size(); ++i) out += (i ? "," : "") + std::to_string(offsets[i]);
    out += ") H=(";
    for (std::size_t i = 0; i < lengths.size(); ++i) out += (i ? "," : "") + std::to_string(lengths[i]);
    return out + ")";
  }
};

inline void check_compatible(const Field& f, const DigitBox& box) {
  if (f.p() != box.p() || f.r() != box.r())
    throw DomainError("digit box over F_" + std::to_string(box.p()) + "^" + std::to_string(box.r()) +
                      " used with F_" + std::to_string(f.p()) + "^" + std::to_string(f.r()));
}

/// Visits every element of W exactly once, in lexicographic order of the
/// installed-basis coordinates (first coordinate most significant).
template <typename Fn>
void for_each_element(const Field& f, const DigitBox& box, Fn&& fn, std::uint64_t budget = kDefaultBudget) {
  check_compatible(f, box);
  check_budget(box.size(), budget, "enumerate");
  const std::uint32_t r = f.r();
  const auto basis = f.basis();
  std::vector<std::size_t> idx(r, 0);
  std::vector<std::span<const std::uint32_t>> vals(r);
  for (std::uint32_t i = 0; i < r; ++i) vals[i] = box.digits(i).values();

  std::vector<std::uint32_t> start(r);
  for (std::uint32_t i = 0; i < r; ++i) start[i] = vals[i][0];
  Elem cur = f.from_coords(start);
  while (true) {
    fn(static_cast<const Elem&>(cur));
    // Odometer on the last coordinate; update cur by the digit difference.
    std::uint32_t i = r;
    while (i-- > 0) {
      const std::uint32_t old = vals[i][idx[i]];
      if (++idx[i] < vals[i].size()) {
        const std::uint32_t delta = (vals[i][idx[i]] + f.p() - old) % f.p();
        cur = f.add(cur, f.scale(basis[i], delta));
        break;
      }
      idx[i] = 0;
      const std::uint32_t delta = (vals[i][0] + f.p() - old) % f.p();
      cur = f.add(cur, f.scale(basis[i], delta));
    }
    if (i == static_cast<std::uint32_t>(-1)) return;
  }
}

inline std::vector<Elem> enumerate(const Field& f, const DigitBox& box, std::uint64_t budget = kDefaultBudget) {
  std::vector<Elem> out;
  for_each_element(f, box, [&](const Elem& e) { out.push_back(e); }, budget);
  return out;
}

inline std::vector<Elem> enumerate(const Field& f, const IntervalBox& box, std::uint64_t budget = kDefaultBudget) {
  return enumerate(f, box.to_digit_box(), budget);
}

/// Splits W by the value of the first coordinate; concatenating the shards in
/// order reproduces the lexicographic enumeration.
inline std::vector<DigitBox> shard(const DigitBox& box) {
  std::vector<DigitBox> out;
  for (std::uint32_t d : box.digits(0).values()) {
    std::vector<DigitSet> sets(box.all_digits().begin(), box.all_digits().end());
    sets[0] = DigitSet(box.p(), {d});
    out.emplace_back(box.p(), std::move(sets));
  }
  return out;
}

/// n i.i.d. uniform elements of W via independent per-coordinate picks.
inline std::vector<Elem> sample_uniform(const Field& f, const DigitBox& box, std::uint64_t n, std::uint64_t seed) {
  check_compatible(f, box);
  if (n == 0) throw DomainError("sample_uniform: need n >= 1");
  std::mt19937_64 rng(seed);
  std::vector<Elem> out;
  out.reserve(n);
  std::vector<std::uint32_t> c(f.r());
  for (std::uint64_t s = 0; s < n; ++s) {
    for (std::uint32_t i = 0; i < f.r(); ++i) {
      const auto vals = box.digits(i).values();
      c[i] = vals[std::uniform_int_distribution<std::size_t>(0, vals.size() - 1)(rng)];
    }
    out.push_back(f.from_coords(c));
  }
  return out;
}

/// W = U + V with U on coordinates 1..r-k and V on coordinates r-k+1..r; the
/// other coordinates of each part are fixed to {0}.
inline std::pair<DigitBox, DigitBox> split_box(const DigitBox& box, std::uint32_t k) {
  const std::uint32_t r = box.r();
  if (k < 1 || k + 1 > r) throw DomainError("split_box: k must satisfy 1 <= k <= r-1");
  const DigitSet zero(box.p(), {0});
  std::vector<DigitSet> u, v;
  for (std::uint32_t i = 0; i < r; ++i) {
    const bool in_u = i < r - k;
    u.push_back(in_u ? box.digits(i) : zero);
    v.push_back(in_u ? zero : box.digits(i));
  }
  return {DigitBox(box.p(), std::move(u)), DigitBox(box.p(), std::move(v))};
}

}  // namespace sqfield
