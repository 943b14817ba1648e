#pragma once

// Certified evaluation of the explicit bounds on | |W ∩ Q| - |W|/2 | and of the
// existence thresholds for squares in W_D. Logarithms are natural.
//
// Every right-hand side is returned as an Interval enclosing the exact real
// value; verdicts compare the exact rational deviation against its upper end.

#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>

#include "sqfield/counting.hpp"
#include "sqfield/error.hpp"
#include "sqfield/interval.hpp"

namespace sqfield {

enum class BoundName { ThmA, ThmB, Thm1, Thm2, CorC };

inline std::string_view to_string(BoundName b) {
  switch (b) {
    case BoundName::ThmA: return "thmA";
    case BoundName::ThmB: return "thmB";
    case BoundName::Thm1: return "thm1";
    case BoundName::Thm2: return "thm2";
    case BoundName::CorC: return "corC";
  }
  return "?";
}

namespace detail {

inline Interval ival(std::uint64_t v) { return Interval(v); }
inline Interval half() { return Interval::rational(1, 2); }

inline void require_positive(std::uint64_t v, const char* what) {
  if (v == 0) throw DomainError(std::string(what) + " must be positive");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Digit sets with 2 <= |D| <= p - 1, counting Q_0:
//   (1 / (2 sqrt q)) (|D| + p sqrt(p - |D|))^r

inline Interval thmA_rhs(std::uint32_t p, std::uint32_t r, std::uint32_t d) {
  if (d < 2 || d + 1 > p) throw DomainError("thmA_rhs: need 2 <= |D| <= p-1");
  using detail::ival;
  const Interval q = pow(ival(p), r);
  const Interval base = ival(d) + ival(p) * sqrt(ival(p - d));
  return pow(base, r) / (Interval(2) * sqrt(q));
}

/// |D| >= (sqrt 5 - 1) p / 2, with the (1 + o(1)) factor dropped.
inline bool thmA_nontrivial_heuristic(std::uint32_t p, std::uint32_t d) {
  const Interval golden = (sqrt(Interval(5)) - Interval(1)) * Interval(p) / Interval(2);
  return !Interval(d).certainly_lt(golden);
}

// ---------------------------------------------------------------------------
// D = {0, ..., t-1}, counting Q_0:  (1/2) (C(p,t) t sqrt p)^r with
//   C(p,t) = log p / t + (4/3 - log 3 / 2) / t + 1/p            for 2 <= t < p-2
//   C(p,t) = 2/p + 2/(pi (p-1)) (1 - log(2 sin(pi / (2p))))     for t = p-2
// C(p, p-1) is left undefined by the source and refused here.

inline Interval thmB_constant(std::uint32_t p, std::uint32_t t) {
  if (t + 1 == p) throw HypothesisNotMet("thmB: C(p,t) is undefined for t = p-1");
  if (t < 2 || t + 2 > p) throw DomainError("thmB: need 2 <= t <= p-2");
  using detail::ival;
  const Interval pi = Interval::pi();
  if (t + 2 == p) {
    const Interval s = sin(pi / (Interval(2) * ival(p)));
    return Interval(2) / ival(p) + Interval(2) / (pi * ival(p - 1)) * (Interval(1) - log(Interval(2) * s));
  }
  const Interval k = Interval::rational(4, 3) - log(Interval(3)) / Interval(2);
  return log(ival(p)) / ival(t) + k / ival(t) + Interval(1) / ival(p);
}

inline Interval thmB_rhs(std::uint32_t p, std::uint32_t r, std::uint32_t t) {
  const Interval c = thmB_constant(p, t);
  return detail::half() * pow(c * Interval(t) * sqrt(Interval(p)), r);
}

// ---------------------------------------------------------------------------
// Counting Q, valid when 2r - 1 <= sqrt p:
//   (1/2) sqrt|D| (p^{1/4} (2r-1)^{1/2} |D|^{r-1} + (1/4) p^{3/4} r^{3/2} + p^{1/2}) + 1/2

inline bool thm1_hypothesis(std::uint32_t p, std::uint32_t r) {
  const std::uint64_t m = 2ull * r - 1;
  return m * m <= p;
}

inline Interval thm1_rhs(std::uint32_t p, std::uint32_t r, std::uint32_t d) {
  detail::require_positive(d, "thm1_rhs: |D|");
  detail::require_positive(r, "thm1_rhs: r");
  using detail::ival;
  const Interval P(p);
  const Interval main = root(P, 4) * sqrt(ival(2ull * r - 1)) * pow(ival(d), r - 1);
  const Interval tail = root(pow(P, 3), 4) * sqrt(pow(ival(r), 3)) / Interval(4) + sqrt(P);
  return detail::half() * sqrt(ival(d)) * (main + tail) + detail::half();
}

/// delta = (sqrt p (2r - 1))^{2 - r}.
inline Interval thm1_delta(std::uint32_t p, std::uint32_t r) {
  if (r < 2) throw DomainError("thm1_threshold: need r >= 2");
  const Interval base = sqrt(Interval(p)) * Interval(2ull * r - 1);
  return Interval(1) / pow(base, r - 2);
}

/// (1 + delta)(2r - 1) sqrt p; |D| at or above it forces a square in W_D.
inline Interval thm1_threshold(std::uint32_t p, std::uint32_t r) {
  return (Interval(1) + thm1_delta(p, r)) * Interval(2ull * r - 1) * sqrt(Interval(p));
}

// ---------------------------------------------------------------------------
// Counting Q, for every nu >= 1 and 1 <= k <= r-1 (q = p^r, d = |D|):
//   (1/2) d^{(r-k)(1 - 1/(2nu))} ((2nu)^nu d^{k nu} q + d^{2 k nu} 4 nu sqrt q)^{1/(2nu)} + 1/2

inline Interval thm2_rhs(std::uint32_t p, std::uint32_t r, std::uint32_t d, std::uint32_t k, std::uint32_t nu) {
  if (k < 1 || k + 1 > r) throw DomainError("thm2_rhs: need 1 <= k <= r-1");
  if (nu < 1) throw DomainError("thm2_rhs: need nu >= 1");
  detail::require_positive(d, "thm2_rhs: |D|");
  using detail::ival;
  const Interval D(d);
  const Interval q = pow(ival(p), r);
  const unsigned long two_nu = 2ul * nu;
  const Interval lead = root(pow(D, static_cast<unsigned long>(r - k) * (two_nu - 1)), two_nu);
  const Interval inner = pow(ival(two_nu), nu) * pow(D, static_cast<unsigned long>(k) * nu) * q +
                         pow(D, 2ul * k * nu) * Interval(4) * ival(nu) * sqrt(q);
  return detail::half() * lead * root(inner, two_nu) + detail::half();
}

struct Thm2Choice {
  std::uint32_t k = 0;
  std::uint32_t nu = 0;
  Interval rhs;
};

/// ceil(r log p), the grid cap on nu.
inline std::uint32_t thm2_nu_cap(std::uint32_t p, std::uint32_t r) {
  return static_cast<std::uint32_t>(std::ceil(r * std::log(static_cast<double>(p))));
}

/// Smallest thm2_rhs over k in [1, r-1] and nu in [1, ceil(r log p)]; ties keep
/// the first pair in (k, nu) order.
inline Thm2Choice thm2_best(std::uint32_t p, std::uint32_t r, std::uint32_t d) {
  if (r < 2) throw DomainError("thm2_best: need r >= 2");
  Thm2Choice best;
  const std::uint32_t cap = thm2_nu_cap(p, r);
  for (std::uint32_t k = 1; k < r; ++k) {
    for (std::uint32_t nu = 1; nu <= cap; ++nu) {
      Interval v = thm2_rhs(p, r, d, k, nu);
      if (best.k == 0 || v.certainly_lt(best.rhs)) best = {k, nu, std::move(v)};
    }
  }
  return best;
}

/// C(r) = exp((4 log r + 8) / r).
inline Interval thm2_C(std::uint32_t r) {
  detail::require_positive(r, "thm2_C: r");
  return exp((Interval(4) * log(Interval(r)) + Interval(8)) / Interval(r));
}

/// C(r) p^{1/2} exp((log p + 4 log log p) / r), stated for r >= 20.
inline Interval thm2_threshold(std::uint32_t p, std::uint32_t r) {
  if (r < 20) throw HypothesisNotMet("thm2_threshold: stated only for r >= 20");
  const Interval lp = log(Interval(p));
  return thm2_C(r) * sqrt(Interval(p)) * exp((lp + Interval(4) * log(lp)) / Interval(r));
}

struct Thm2Recipe {
  std::uint32_t nu = 0;
  std::uint32_t k = 0;
};

/// nu = [r log p / 2], k = [(2 log r + 2 log log p + 4) / log p] + 1.
inline Thm2Recipe thm2_recipe(std::uint32_t p, std::uint32_t r) {
  const Interval lp = log(Interval(p));
  const Interval nu = lp * Interval(r) / Interval(2);
  const Interval kk = (Interval(2) * log(Interval(r)) + Interval(2) * log(lp) + Interval(4)) / lp;
  Thm2Recipe out;
  out.nu = static_cast<std::uint32_t>(std::max(1.0, std::floor(nu.lower())));
  out.k = static_cast<std::uint32_t>(std::floor(kk.lower())) + 1;
  return out;
}

// ---------------------------------------------------------------------------
// Corollary bound for D = {0, ..., t-1}, t >= p^{1/4 + eps}, with a caller
// supplied constant standing in for the unspecified r^{O(1)} factor:
//   constant * (r^4 / eps) * p^{-eps^2 / 2} * |W|.  Report-only.

inline bool corC_hypothesis(std::uint32_t p, std::uint32_t t, double eps) {
  const Interval need = pow(Interval(p), Interval::rational(1, 4) + Interval::from_double(eps));
  return !Interval(t).certainly_lt(need);
}

inline Interval corC_rhs(std::uint32_t p, std::uint32_t r, std::uint32_t t, double eps, double user_constant) {
  if (!(eps > 0 && eps <= 0.25)) throw DomainError("corC_rhs: need 0 < eps <= 1/4");
  if (!(user_constant > 0)) throw DomainError("corC_rhs: the user constant must be positive");
  if (!corC_hypothesis(p, t, eps)) throw HypothesisNotMet("corC_rhs: need t >= p^{1/4 + eps}");
  const Interval e = Interval::from_double(eps);
  const Interval size_w = pow(Interval(t), r);
  const Interval decay = pow(Interval(p), -(e * e) / Interval(2));
  return Interval::from_double(user_constant) * pow(Interval(r), 4) / e * decay * size_w;
}

// ---------------------------------------------------------------------------

struct BoundReport {
  BoundName name = BoundName::ThmA;
  std::string parameters;
  Interval rhs;
  Rational observed;
  /// rhs < |W| / 2 with certainty.
  bool nontrivial = false;
  /// observed <= rhs (never a rounding artifact when false).
  bool holds = true;
  /// observed and rhs could not be separated at working precision.
  bool tight = false;
};

inline BoundReport make_bound_report(BoundName name, std::string parameters, Interval rhs, const Rational& observed,
                                     std::uint64_t size_w) {
  BoundReport rep;
  rep.name = name;
  rep.parameters = std::move(parameters);
  const Interval obs = to_interval(observed);
  rep.holds = !obs.certainly_gt(rhs);
  rep.tight = rep.holds && !obs.certainly_le(rhs);
  rep.nontrivial = rhs.certainly_lt(Interval::rational(static_cast<std::int64_t>(size_w), 2));
  rep.rhs = std::move(rhs);
  rep.observed = observed;
  return rep;
}

}  // namespace sqfield
