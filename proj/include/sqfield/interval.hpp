#pragma once

// Closed real intervals with MPFR endpoints and outward rounding.
//
// Every operation rounds the lower endpoint toward -inf and the upper endpoint
// toward +inf, so the exact real value of an expression is always contained in
// the interval computed for it. Bound evaluators report the upper endpoint.

#include <stdint.h>  // must precede mpfr.h for the intmax_t API

#include <mpfr.h>

#include <algorithm>
#include <concepts>
#include <type_traits>
#include <cstdint>
#include <cstdio>
#include <string>
#include <utility>

#include "sqfield/error.hpp"

namespace sqfield {

class Interval {
 public:
  /// Working precision in bits (about 57 significant decimal digits).
  static constexpr mpfr_prec_t kPrecision = 192;

  Interval() {
    init();
    mpfr_set_zero(lo_, 1);
    mpfr_set_zero(hi_, 1);
  }

  template <std::integral T>
  Interval(T v) {  // NOLINT(google-explicit-constructor)
    init();
    if constexpr (std::is_signed_v<T>) {
      mpfr_set_sj(lo_, static_cast<std::intmax_t>(v), MPFR_RNDD);
      mpfr_set_sj(hi_, static_cast<std::intmax_t>(v), MPFR_RNDU);
    } else {
      mpfr_set_uj(lo_, static_cast<std::uintmax_t>(v), MPFR_RNDD);
      mpfr_set_uj(hi_, static_cast<std::uintmax_t>(v), MPFR_RNDU);
    }
  }

  /// Exact conversion; doubles are dyadic rationals.
  static Interval from_double(double v) {
    Interval out;
    mpfr_set_d(out.lo_, v, MPFR_RNDD);
    mpfr_set_d(out.hi_, v, MPFR_RNDU);
    return out;
  }

  /// Enclosure of num/den.
  static Interval rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw DomainError("Interval::rational: zero denominator");
    return Interval(num) / Interval(den);
  }

  static Interval hull(const Interval& a, const Interval& b) {
    Interval out;
    mpfr_min(out.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_max(out.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return out;
  }

  static Interval pi() {
    Interval out;
    mpfr_const_pi(out.lo_, MPFR_RNDD);
    mpfr_const_pi(out.hi_, MPFR_RNDU);
    return out;
  }

  Interval(const Interval& other) {
    init();
    mpfr_set(lo_, other.lo_, MPFR_RNDD);
    mpfr_set(hi_, other.hi_, MPFR_RNDU);
  }

  Interval(Interval&& other) noexcept {
    init();
    mpfr_swap(lo_, other.lo_);
    mpfr_swap(hi_, other.hi_);
  }

  Interval& operator=(const Interval& other) {
    if (this != &other) {
      mpfr_set(lo_, other.lo_, MPFR_RNDD);
      mpfr_set(hi_, other.hi_, MPFR_RNDU);
    }
    return *this;
  }

  Interval& operator=(Interval&& other) noexcept {
    mpfr_swap(lo_, other.lo_);
    mpfr_swap(hi_, other.hi_);
    return *this;
  }

  ~Interval() {
    mpfr_clear(lo_);
    mpfr_clear(hi_);
  }

  double lower() const { return mpfr_get_d(lo_, MPFR_RNDD); }
  double upper() const { return mpfr_get_d(hi_, MPFR_RNDU); }
  long double mid() const {
    return (mpfr_get_ld(lo_, MPFR_RNDN) + mpfr_get_ld(hi_, MPFR_RNDN)) / 2;
  }

  /// Width hi - lo, rounded up.
  double width() const {
    mpfr_t w;
    mpfr_init2(w, kPrecision);
    mpfr_sub(w, hi_, lo_, MPFR_RNDU);
    double out = mpfr_get_d(w, MPFR_RNDU);
    mpfr_clear(w);
    return out;
  }

  bool contains_zero() const { return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0; }
  bool is_point() const { return mpfr_equal_p(lo_, hi_) != 0; }

  /// Every point of *this is <= every point of other.
  bool certainly_le(const Interval& other) const { return mpfr_lessequal_p(hi_, other.lo_) != 0; }
  bool certainly_lt(const Interval& other) const { return mpfr_less_p(hi_, other.lo_) != 0; }
  /// Every point of *this is > every point of other.
  bool certainly_gt(const Interval& other) const { return mpfr_greater_p(lo_, other.hi_) != 0; }
  bool possibly_le(const Interval& other) const { return !certainly_gt(other); }

  /// Decimal rendering of the upper endpoint, rounded toward +inf.
  std::string upper_string(int digits = 17) const { return render(hi_, digits, 'U'); }
  std::string lower_string(int digits = 17) const { return render(lo_, digits, 'D'); }

  friend Interval operator+(const Interval& a, const Interval& b) {
    Interval out;
    mpfr_add(out.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_add(out.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return out;
  }

  friend Interval operator-(const Interval& a, const Interval& b) {
    Interval out;
    mpfr_sub(out.lo_, a.lo_, b.hi_, MPFR_RNDD);
    mpfr_sub(out.hi_, a.hi_, b.lo_, MPFR_RNDU);
    return out;
  }

  friend Interval operator-(const Interval& a) {
    Interval out;
    mpfr_neg(out.lo_, a.hi_, MPFR_RNDD);
    mpfr_neg(out.hi_, a.lo_, MPFR_RNDU);
    return out;
  }

  friend Interval operator*(const Interval& a, const Interval& b) {
    Interval out;
    mpfr_t t;
    mpfr_init2(t, kPrecision);
    const mpfr_srcptr xs[2] = {a.lo_, a.hi_};
    const mpfr_srcptr ys[2] = {b.lo_, b.hi_};
    bool first = true;
    for (auto x : xs) {
      for (auto y : ys) {
        mpfr_mul(t, x, y, MPFR_RNDD);
        if (first || mpfr_less_p(t, out.lo_)) mpfr_set(out.lo_, t, MPFR_RNDD);
        mpfr_mul(t, x, y, MPFR_RNDU);
        if (first || mpfr_greater_p(t, out.hi_)) mpfr_set(out.hi_, t, MPFR_RNDU);
        first = false;
      }
    }
    mpfr_clear(t);
    return out;
  }

  friend Interval operator/(const Interval& a, const Interval& b) {
    if (b.contains_zero()) throw DomainError("Interval: division by an interval containing zero");
    Interval inv;
    mpfr_ui_div(inv.lo_, 1, b.hi_, MPFR_RNDD);
    mpfr_ui_div(inv.hi_, 1, b.lo_, MPFR_RNDU);
    return a * inv;
  }

  Interval& operator+=(const Interval& b) { return *this = *this + b; }
  Interval& operator-=(const Interval& b) { return *this = *this - b; }
  Interval& operator*=(const Interval& b) { return *this = *this * b; }
  Interval& operator/=(const Interval& b) { return *this = *this / b; }

  friend Interval square(const Interval& a) {
    if (!a.contains_zero()) return a * a;
    Interval out;
    mpfr_t t;
    mpfr_init2(t, kPrecision);
    mpfr_sqr(out.hi_, a.lo_, MPFR_RNDU);
    mpfr_sqr(t, a.hi_, MPFR_RNDU);
    mpfr_max(out.hi_, out.hi_, t, MPFR_RNDU);
    mpfr_clear(t);
    return out;
  }

  friend Interval sqrt(const Interval& a) {
    if (mpfr_sgn(a.hi_) < 0) throw DomainError("Interval: sqrt of a negative interval");
    Interval out;
    if (mpfr_sgn(a.lo_) > 0) mpfr_sqrt(out.lo_, a.lo_, MPFR_RNDD);
    mpfr_sqrt(out.hi_, a.hi_, MPFR_RNDU);
    return out;
  }

  /// Positive real n-th root; monotone on [0, inf).
  friend Interval root(const Interval& a, unsigned long n) {
    if (n == 0) throw DomainError("Interval: zeroth root");
    if (mpfr_sgn(a.lo_) < 0) throw DomainError("Interval: root of a possibly negative interval");
    Interval out;
    mpfr_rootn_ui(out.lo_, a.lo_, n, MPFR_RNDD);
    mpfr_rootn_ui(out.hi_, a.hi_, n, MPFR_RNDU);
    return out;
  }

  friend Interval log(const Interval& a) {
    if (mpfr_sgn(a.lo_) <= 0) throw DomainError("Interval: log of a non-positive interval");
    Interval out;
    mpfr_log(out.lo_, a.lo_, MPFR_RNDD);
    mpfr_log(out.hi_, a.hi_, MPFR_RNDU);
    return out;
  }

  friend Interval exp(const Interval& a) {
    Interval out;
    mpfr_exp(out.lo_, a.lo_, MPFR_RNDD);
    mpfr_exp(out.hi_, a.hi_, MPFR_RNDU);
    return out;
  }

  /// a^n for a >= 0.
  friend Interval pow(const Interval& a, unsigned long n) {
    if (mpfr_sgn(a.lo_) < 0) throw DomainError("Interval: integer power of a possibly negative interval");
    Interval out;
    mpfr_pow_ui(out.lo_, a.lo_, n, MPFR_RNDD);
    mpfr_pow_ui(out.hi_, a.hi_, n, MPFR_RNDU);
    return out;
  }

  /// a^e for a > 0 and arbitrary real exponent interval e.
  friend Interval pow(const Interval& a, const Interval& e) { return exp(e * log(a)); }

  /// Enclosures of sin and cos from a point evaluation at the midpoint plus the
  /// Lipschitz bound |f'| <= 1 over the argument width.
  friend Interval sin(const Interval& a) { return a.lipschitz(mpfr_sin); }
  friend Interval cos(const Interval& a) { return a.lipschitz(mpfr_cos); }

 private:
  void init() {
    mpfr_init2(lo_, kPrecision);
    mpfr_init2(hi_, kPrecision);
  }

  template <typename Fn>
  Interval lipschitz(Fn fn) const {
    mpfr_t m, v, w;
    mpfr_inits2(kPrecision, m, v, w, static_cast<mpfr_ptr>(nullptr));
    mpfr_add(m, lo_, hi_, MPFR_RNDN);
    mpfr_div_2ui(m, m, 1, MPFR_RNDN);
    fn(v, m, MPFR_RNDN);
    // Radius: max distance from the midpoint to an endpoint, plus 1 ulp of v
    // for the rounding of fn itself.
    mpfr_t d;
    mpfr_init2(d, kPrecision);
    mpfr_sub(w, hi_, m, MPFR_RNDU);
    mpfr_sub(d, m, lo_, MPFR_RNDU);
    mpfr_max(w, w, d, MPFR_RNDU);
    mpfr_set_ui_2exp(d, 1, -static_cast<mpfr_exp_t>(kPrecision) + 1, MPFR_RNDU);
    mpfr_add(w, w, d, MPFR_RNDU);
    Interval out;
    mpfr_sub(out.lo_, v, w, MPFR_RNDD);
    mpfr_add(out.hi_, v, w, MPFR_RNDU);
    // The enclosure never needs to leave [-1, 1].
    if (mpfr_cmp_si(out.lo_, -1) < 0) mpfr_set_si(out.lo_, -1, MPFR_RNDD);
    if (mpfr_cmp_si(out.hi_, 1) > 0) mpfr_set_si(out.hi_, 1, MPFR_RNDU);
    mpfr_clears(m, v, w, d, static_cast<mpfr_ptr>(nullptr));
    return out;
  }

  static std::string render(mpfr_srcptr x, int digits, char mode) {
    char fmt[32];
    std::snprintf(fmt, sizeof fmt, "%%.%dR%cg", digits, mode);
    char* buf = nullptr;
    mpfr_asprintf(&buf, fmt, x);
    std::string out(buf);
    mpfr_free_str(buf);
    return out;
  }

  mpfr_t lo_;
  mpfr_t hi_;
};

}  // namespace sqfield
