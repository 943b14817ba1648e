#pragma once

// Multiplicative characters of F_q and exact character sums.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <vector>

#include "sqfield/error.hpp"
#include "sqfield/field.hpp"
#include "sqfield/interval.hpp"

namespace sqfield {

inline constexpr std::uint64_t kDefaultDlogCap = 1u << 20;
inline constexpr std::uint64_t kDefaultQuadTableCap = 1u << 24;

/// Quadratic character by Euler's criterion: x^{(q-1)/2} in {1, -1}, 0 at 0.
inline int quad_char(const Field& f, const Elem& x) {
  if (f.is_zero(x)) return 0;
  const Elem e = f.pow(x, (f.q() - 1) / 2);
  return e == f.one() ? 1 : -1;
}

/// Quadratic character with a rank-indexed lookup table for small fields.
/// Falls back to Euler's criterion above the table cap.
class QuadraticCharacter {
 public:
  explicit QuadraticCharacter(Field field, std::uint64_t table_cap = kDefaultQuadTableCap)
      : field_(std::move(field)) {
    if (field_.q() > table_cap) return;
    table_.assign(field_.q(), -1);
    table_[0] = 0;
    for (std::uint64_t k = 1; k < field_.q(); ++k) {
      const Elem y = field_.from_rank(k);
      table_[field_.rank(field_.mul(y, y))] = 1;
    }
  }

  int operator()(const Elem& x) const {
    if (!table_.empty()) return table_[field_.rank(x)];
    return quad_char(field_, x);
  }

  int at_rank(std::uint64_t k) const {
    if (!table_.empty()) return table_[k];
    return quad_char(field_, field_.from_rank(k));
  }

  bool tabulated() const noexcept { return !table_.empty(); }
  const Field& field() const noexcept { return field_; }

 private:
  Field field_;
  std::vector<std::int8_t> table_;
};

/// chi(x) = zeta_s^{j * dlog_g(x)} on F_q^*, chi(0) = 0.
class MultChar {
 public:
  static MultChar make(const Field& field, std::uint64_t s, std::uint64_t j,
                       std::uint64_t dlog_cap = kDefaultDlogCap) {
    const std::uint64_t q1 = field.q() - 1;
    if (s == 0 || q1 % s != 0)
      throw DomainError("make_char: order " + std::to_string(s) + " does not divide q-1 = " + std::to_string(q1));
    MultChar chi(field, s, j % s);
    if (s == 2) {
      chi.quad_.emplace(field);
      return chi;
    }
    if (s == 1) return chi;
    if (field.q() > dlog_cap)
      throw DomainError("make_char: q = " + std::to_string(field.q()) + " exceeds the discrete-log table cap");
    chi.build_dlog();
    return chi;
  }

  std::uint64_t order() const noexcept { return s_; }
  std::uint64_t index() const noexcept { return j_; }
  bool is_principal() const noexcept { return j_ == 0; }
  const Field& field() const noexcept { return field_; }

  /// k in [0, s) with chi(x) = zeta_s^k, or nullopt when x = 0.
  std::optional<std::uint64_t> exponent(const Elem& x) const {
    if (field_.is_zero(x)) return std::nullopt;
    if (s_ == 1 || j_ == 0) return 0;
    if (quad_) return (*quad_)(x) == 1 ? 0 : 1;
    const std::uint64_t d = dlog_[field_.rank(x)];
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(d) * j_) % s_);
  }

  /// Discrete log base generator(); requires a tabulated character.
  std::uint64_t dlog(const Elem& x) const {
    if (dlog_.empty()) throw DomainError("dlog: character has no discrete-log table");
    if (field_.is_zero(x)) throw DomainError("dlog: zero has no discrete log");
    return dlog_[field_.rank(x)];
  }

  const std::optional<Elem>& generator() const noexcept { return generator_; }

  /// Complex value, for reporting only.
  std::complex<long double> value(const Elem& x) const;

 private:
  MultChar(Field field, std::uint64_t s, std::uint64_t j) : field_(std::move(field)), s_(s), j_(j) {}

  void build_dlog() {
    const std::uint64_t q1 = field_.q() - 1;
    // Smallest primitive element in installed-basis coordinate order.
    for (std::uint64_t k = 1; k < field_.q(); ++k) {
      const Elem g = field_.from_basis_rank(k);
      if (field_.is_zero(g) || field_.order(g) != q1) continue;
      generator_ = g;
      break;
    }
    dlog_.assign(field_.q(), 0);
    Elem cur = field_.one();
    for (std::uint64_t e = 0; e < q1; ++e) {
      dlog_[field_.rank(cur)] = static_cast<std::uint32_t>(e);
      cur = field_.mul(cur, *generator_);
    }
  }

  Field field_;
  std::uint64_t s_;
  std::uint64_t j_;
  std::optional<QuadraticCharacter> quad_;
  std::optional<Elem> generator_;
  std::vector<std::uint32_t> dlog_;
};

inline MultChar make_char(const Field& field, std::uint64_t s, std::uint64_t j,
                          std::uint64_t dlog_cap = kDefaultDlogCap) {
  return MultChar::make(field, s, j, dlog_cap);
}

/// Result of testing a cyclotomic sum for zero.
struct ZeroTest {
  bool zero = false;
  /// False when the verdict came from a floating magnitude (composite order).
  bool exact = true;
};

/// Exact cyclotomic integer sum_k counts[k] * zeta_s^k.
class CycloSum {
 public:
  explicit CycloSum(std::uint64_t s = 1) : counts_(s, 0) {
    if (s == 0) throw DomainError("CycloSum: order must be positive");
  }

  std::uint64_t order() const noexcept { return counts_.size(); }
  std::span<const std::int64_t> counts() const noexcept { return counts_; }

  void add(std::uint64_t k, std::int64_t mult = 1) { counts_[k % counts_.size()] += mult; }

  CycloSum& operator+=(const CycloSum& other) {
    if (other.order() != order()) throw DomainError("CycloSum: adding sums of different orders");
    for (std::size_t k = 0; k < counts_.size(); ++k) counts_[k] += other.counts_[k];
    return *this;
  }

  friend CycloSum operator+(CycloSum a, const CycloSum& b) { return a += b; }

  /// The value as a rational integer when that is decidable exactly:
  /// s <= 2 always; support inside {0, s/2}; s prime when counts[1] = ... = counts[s-1].
  std::optional<std::int64_t> as_integer() const {
    const std::uint64_t s = order();
    if (s == 1) return counts_[0];
    if (s == 2) return counts_[0] - counts_[1];
    bool real_support = true;
    for (std::uint64_t k = 1; k < s && real_support; ++k)
      real_support = counts_[k] == 0 || 2 * k == s;
    if (real_support) return counts_[0] - (s % 2 == 0 ? counts_[s / 2] : 0);
    if (!is_prime(s)) return std::nullopt;
    for (std::uint64_t k = 2; k < s; ++k)
      if (counts_[k] != counts_[1]) return std::nullopt;
    return counts_[0] - counts_[1];
  }

  ZeroTest zero_test() const {
    const std::uint64_t s = order();
    if (!is_prime(s)) {
      if (auto v = as_integer()) return {*v == 0, true};
    }
    if (s <= 2 || is_prime(s)) {
      // The only Z-relation among zeta_s^k for prime s is that they sum to 0.
      const auto v = as_integer();
      if (s <= 2) return {*v == 0, true};
      const std::int64_t m = counts_[0];
      for (auto c : counts_)
        if (c != m) return {false, true};
      return {true, true};
    }
    return {magnitude() < 1e-9L, false};
  }

  long double magnitude() const {
    if (auto v = as_integer()) return std::fabs(static_cast<long double>(*v));
    long double re = 0, im = 0;
    const long double step = 2 * std::numbers::pi_v<long double> / order();
    for (std::size_t k = 0; k < counts_.size(); ++k) {
      if (counts_[k] == 0) continue;
      re += counts_[k] * std::cos(step * k);
      im += counts_[k] * std::sin(step * k);
    }
    return std::hypot(re, im);
  }

  /// Certified enclosure of |sum|; a point interval when the sum is an integer.
  Interval magnitude_interval() const {
    if (auto v = as_integer()) return Interval(*v < 0 ? -*v : *v);
    Interval re, im;
    const Interval step = Interval(2) * Interval::pi() / Interval(order());
    for (std::size_t k = 0; k < counts_.size(); ++k) {
      if (counts_[k] == 0) continue;
      const Interval theta = step * Interval(static_cast<std::uint64_t>(k));
      re += Interval(counts_[k]) * cos(theta);
      im += Interval(counts_[k]) * sin(theta);
    }
    return sqrt(square(re) + square(im));
  }

  std::string to_string() const {
    if (auto v = as_integer()) return std::to_string(*v);
    std::string out = "[";
    for (std::size_t k = 0; k < counts_.size(); ++k) {
      if (k) out += ' ';
      out += std::to_string(counts_[k]);
    }
    return out + "]";
  }

  friend bool operator==(const CycloSum&, const CycloSum&) = default;

 private:
  std::vector<std::int64_t> counts_;
};

inline std::complex<long double> MultChar::value(const Elem& x) const {
  const auto k = exponent(x);
  if (!k) return 0;
  const long double a = 2 * std::numbers::pi_v<long double> * static_cast<long double>(*k) / s_;
  return {std::cos(a), std::sin(a)};
}

/// Exact sum of chi over a range of elements.
template <typename Range>
CycloSum char_sum(const MultChar& chi, const Range& elems) {
  CycloSum out(chi.order());
  for (const Elem& x : elems)
    if (auto k = chi.exponent(x)) out.add(*k);
  return out;
}

}  // namespace sqfield
