#pragma once

// Finite fields F_{p^r} as r-dimensional vector spaces over F_p.
//
// Elements are stored in the polynomial basis 1, x, ..., x^{r-1} modulo a
// monic irreducible polynomial; the installed basis a_1, ..., a_r only affects
// coords()/from_coords(), so arithmetic is basis independent.

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sqfield/error.hpp"

namespace sqfield {

inline constexpr std::uint32_t kMaxDegree = 32;
inline constexpr std::uint32_t kMaxPrime = 1u << 20;

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

/// Distinct prime factors of n, ascending.
inline std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

inline std::vector<std::uint32_t> divisors(std::uint32_t n) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t d = 1; d <= n; ++d)
    if (n % d == 0) out.push_back(d);
  return out;
}

/// Field element: coefficients in the polynomial basis, constant term first.
/// Entries beyond the field degree are always zero.
struct Elem {
  std::array<std::uint32_t, kMaxDegree> c{};

  std::uint32_t& operator[](std::size_t i) { return c[i]; }
  std::uint32_t operator[](std::size_t i) const { return c[i]; }
  friend bool operator==(const Elem&, const Elem&) = default;
  friend auto operator<=>(const Elem&, const Elem&) = default;
};

namespace detail {

using Poly = std::vector<std::uint32_t>;  // constant term first, trimmed

inline void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  std::int64_t t = 0, nt = 1, r = p, nr = a;
  while (nr != 0) {
    std::int64_t q = r / nr;
    t = std::exchange(nt, t - q * nt);
    r = std::exchange(nr, r - q * nr);
  }
  return static_cast<std::uint32_t>(t < 0 ? t + p : t);
}

/// Remainder of a modulo f (f nonzero, trimmed).
inline Poly poly_mod(Poly a, const Poly& f, std::uint32_t p) {
  trim(a);
  const std::size_t df = f.size() - 1;
  const std::uint64_t lead_inv = inv_mod(f.back(), p);
  while (a.size() >= f.size()) {
    const std::uint64_t t = a.back() * lead_inv % p;
    const std::size_t shift = a.size() - f.size();
    for (std::size_t j = 0; j <= df; ++j)
      a[shift + j] = static_cast<std::uint32_t>((a[shift + j] + (p - t) * f[j]) % p);
    trim(a);
  }
  return a;
}

inline Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& f, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  std::vector<std::uint64_t> acc(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) acc[i + j] = (acc[i + j] + std::uint64_t{a[i]} * b[j]) % p;
  Poly out(acc.begin(), acc.end());
  return poly_mod(std::move(out), f, p);
}

inline Poly poly_powmod(Poly base, std::uint64_t e, const Poly& f, std::uint32_t p) {
  Poly result{1};
  base = poly_mod(std::move(base), f, p);
  while (e > 0) {
    if (e & 1) result = poly_mulmod(result, base, f, p);
    base = poly_mulmod(base, base, f, p);
    e >>= 1;
  }
  return poly_mod(std::move(result), f, p);
}

inline Poly poly_gcd(Poly a, Poly b, std::uint32_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

/// Rabin-style test: f of degree n has no irreducible factor of degree d <= n/2
/// iff gcd(f, x^{p^d} - x) = 1 for all such d.
inline bool is_irreducible(const Poly& f, std::uint32_t p) {
  const std::size_t n = f.size() - 1;
  if (n == 0) return false;
  if (n == 1) return true;
  Poly h{0, 1};
  for (std::size_t d = 1; d <= n / 2; ++d) {
    h = poly_powmod(h, p, f, p);
    Poly diff = h;
    diff.resize(std::max<std::size_t>(diff.size(), 2), 0);
    diff[1] = (diff[1] + p - 1) % p;
    trim(diff);
    if (diff.empty()) return false;
    Poly g = poly_gcd(f, diff, p);
    if (g.size() > 1) return false;
  }
  return true;
}

}  // namespace detail

/// Immutable description of F_{p^r} with an installed F_p-basis.
class Field {
 public:
  /// Smallest monic irreducible polynomial of degree r, comparing coefficients
  /// from x^{r-1} down to the constant term; polynomial basis installed.
  static Field make(std::uint64_t p, std::uint32_t r) {
    if (p < 3 || p % 2 == 0) throw DomainError("make_field: p must be an odd prime");
    if (!is_prime(p)) throw DomainError("make_field: p = " + std::to_string(p) + " is not prime");
    if (p >= kMaxPrime) throw DomainError("make_field: p must be below 2^20");
    if (r < 1 || r > kMaxDegree) throw DomainError("make_field: degree must be in [1, 32]");
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < r; ++i) {
      if (q > std::numeric_limits<std::uint64_t>::max() / p) throw DomainError("make_field: p^r overflows 64 bits");
      q *= p;
    }
    const auto pp = static_cast<std::uint32_t>(p);

    // Odometer over the r lower coefficients, constant term least significant.
    detail::Poly f(r + 1, 0);
    f[r] = 1;
    while (true) {
      if (detail::is_irreducible(f, pp)) break;
      std::size_t i = 0;
      while (i < r && ++f[i] == pp) f[i++] = 0;
      if (i == r) throw Error("make_field: no irreducible polynomial found");  // unreachable
    }

    Field out;
    out.p_ = pp;
    out.r_ = r;
    out.q_ = q;
    out.modulus_ = f;
    out.basis_.resize(r);
    for (std::uint32_t i = 0; i < r; ++i) out.basis_[i][i] = 1;
    out.inverse_ = out.basis_;
    out.polynomial_basis_ = true;
    return out;
  }

  /// Same field with another basis; throws if the elements are dependent.
  Field with_basis(std::span<const Elem> basis) const {
    if (basis.size() != r_) throw DomainError("with_basis: need exactly r basis elements");
    Field out = *this;
    out.basis_.assign(basis.begin(), basis.end());
    out.inverse_ = invert(out.basis_);
    out.polynomial_basis_ = true;
    for (std::uint32_t i = 0; i < r_; ++i) {
      Elem e{};
      e[i] = 1;
      if (!(out.basis_[i] == e)) out.polynomial_basis_ = false;
    }
    return out;
  }

  /// Normalized basis b_j = a_j / a_1 (so b_1 = 1).
  Field normalized_basis() const {
    const Elem inv_a1 = inv(basis_[0]);
    std::vector<Elem> b(r_);
    for (std::uint32_t j = 0; j < r_; ++j) b[j] = mul(basis_[j], inv_a1);
    return with_basis(b);
  }

  std::uint32_t p() const noexcept { return p_; }
  std::uint32_t r() const noexcept { return r_; }
  std::uint64_t q() const noexcept { return q_; }
  /// Monic modulus, constant term first (length r+1).
  const std::vector<std::uint32_t>& modulus() const noexcept { return modulus_; }
  std::span<const Elem> basis() const noexcept { return basis_; }
  bool has_polynomial_basis() const noexcept { return polynomial_basis_; }

  Elem zero() const { return Elem{}; }
  Elem one() const { return constant(1); }
  Elem constant(std::uint64_t c) const {
    Elem e{};
    e[0] = static_cast<std::uint32_t>(c % p_);
    return e;
  }
  /// The class of x (equals the constant 0 when r = 1, since the modulus is x).
  Elem generator_x() const {
    Elem e{};
    if (r_ == 1) {
      e[0] = (p_ - modulus_[0]) % p_;
    } else {
      e[1] = 1;
    }
    return e;
  }

  /// Element with the given polynomial coefficients (constant first), reduced mod p.
  Elem from_poly(std::span<const std::int64_t> coeffs) const {
    if (coeffs.size() > r_) throw DomainError("from_poly: too many coefficients");
    Elem e{};
    for (std::size_t i = 0; i < coeffs.size(); ++i) e[i] = reduce(coeffs[i]);
    return e;
  }

  Elem from_coords(std::span<const std::uint32_t> coords) const {
    if (coords.size() != r_) throw DomainError("from_coords: need exactly r coordinates");
    Elem e{};
    for (std::uint32_t i = 0; i < r_; ++i) {
      if (coords[i] >= p_) throw DomainError("from_coords: coordinate not reduced mod p");
      axpy(e, coords[i], basis_[i]);
    }
    return e;
  }

  std::vector<std::uint32_t> coords(const Elem& e) const {
    std::vector<std::uint32_t> out(r_, 0);
    if (polynomial_basis_) {
      std::copy_n(e.c.begin(), r_, out.begin());
      return out;
    }
    for (std::uint32_t j = 0; j < r_; ++j) {
      if (e[j] == 0) continue;
      for (std::uint32_t i = 0; i < r_; ++i)
        out[i] = static_cast<std::uint32_t>((out[i] + std::uint64_t{e[j]} * inverse_[j][i]) % p_);
    }
    return out;
  }

  /// Position in lexicographic order of polynomial coefficients, constant
  /// term most significant. Dense index in [0, q).
  std::uint64_t rank(const Elem& e) const noexcept {
    std::uint64_t k = 0;
    for (std::uint32_t i = 0; i < r_; ++i) k = k * p_ + e[i];
    return k;
  }

  Elem from_rank(std::uint64_t k) const {
    Elem e{};
    for (std::uint32_t i = r_; i-- > 0;) {
      e[i] = static_cast<std::uint32_t>(k % p_);
      k /= p_;
    }
    return e;
  }

  /// Element whose installed-basis coordinates have lexicographic rank k.
  Elem from_basis_rank(std::uint64_t k) const {
    if (polynomial_basis_) return from_rank(k);
    std::vector<std::uint32_t> c(r_);
    for (std::uint32_t i = r_; i-- > 0;) {
      c[i] = static_cast<std::uint32_t>(k % p_);
      k /= p_;
    }
    return from_coords(c);
  }

  bool is_zero(const Elem& a) const noexcept { return a == Elem{}; }

  bool in_prime_field(const Elem& a) const noexcept {
    for (std::uint32_t i = 1; i < r_; ++i)
      if (a[i] != 0) return false;
    return true;
  }

  Elem add(const Elem& a, const Elem& b) const noexcept {
    Elem out{};
    for (std::uint32_t i = 0; i < r_; ++i) {
      const std::uint32_t s = a[i] + b[i];
      out[i] = s >= p_ ? s - p_ : s;
    }
    return out;
  }

  Elem sub(const Elem& a, const Elem& b) const noexcept {
    Elem out{};
    for (std::uint32_t i = 0; i < r_; ++i) out[i] = a[i] >= b[i] ? a[i] - b[i] : a[i] + p_ - b[i];
    return out;
  }

  Elem neg(const Elem& a) const noexcept { return sub(Elem{}, a); }

  Elem scale(const Elem& a, std::uint32_t c) const noexcept {
    Elem out{};
    for (std::uint32_t i = 0; i < r_; ++i) out[i] = static_cast<std::uint32_t>(std::uint64_t{a[i]} * c % p_);
    return out;
  }

  Elem mul(const Elem& a, const Elem& b) const noexcept {
    std::array<std::uint64_t, 2 * kMaxDegree> acc{};
    for (std::uint32_t i = 0; i < r_; ++i) {
      if (a[i] == 0) continue;
      for (std::uint32_t j = 0; j < r_; ++j) acc[i + j] += std::uint64_t{a[i]} * b[j];
    }
    // Slots stay below 2r * p^2 < 2^46, far from overflow.
    for (std::uint32_t k = 2 * r_ - 1; k-- > r_;) {
      const std::uint64_t t = acc[k] % p_;
      acc[k] = 0;
      if (t == 0) continue;
      for (std::uint32_t j = 0; j < r_; ++j) acc[k - r_ + j] += t * (p_ - modulus_[j]);
      acc[k - 1] %= p_;
    }
    Elem out{};
    for (std::uint32_t i = 0; i < r_; ++i) out[i] = static_cast<std::uint32_t>(acc[i] % p_);
    return out;
  }

  Elem pow(Elem base, std::uint64_t e) const noexcept {
    Elem result = one();
    while (e > 0) {
      if (e & 1) result = mul(result, base);
      base = mul(base, base);
      e >>= 1;
    }
    return result;
  }

  Elem inv(const Elem& a) const {
    if (is_zero(a)) throw DomainError("inv: zero has no inverse");
    return pow(a, q_ - 2);
  }

  Elem div(const Elem& a, const Elem& b) const { return mul(a, inv(b)); }

  Elem frobenius(const Elem& a) const noexcept { return pow(a, p_); }

  /// Smallest d | r with a^{p^d} = a, i.e. the degree of the subfield F_p(a).
  std::uint32_t degree(const Elem& a) const noexcept {
    Elem cur = a;
    std::uint32_t applied = 0;
    for (std::uint32_t d : divisors(r_)) {
      while (applied < d) {
        cur = frobenius(cur);
        ++applied;
      }
      if (cur == a) return d;
    }
    return r_;
  }

  bool is_generator(const Elem& a) const noexcept { return degree(a) == r_; }

  /// Frobenius orbit a, a^p, ..., a^{p^{d-1}} with d = degree(a).
  std::vector<Elem> conjugates(const Elem& a) const {
    std::vector<Elem> out{a};
    Elem cur = frobenius(a);
    while (!(cur == a)) {
      out.push_back(cur);
      cur = frobenius(cur);
    }
    return out;
  }

  bool are_conjugate(const Elem& a, const Elem& b) const {
    for (const Elem& c : conjugates(a))
      if (c == b) return true;
    return false;
  }

  /// Multiplicative order of a nonzero element.
  std::uint64_t order(const Elem& a) const {
    if (is_zero(a)) throw DomainError("order: zero has no multiplicative order");
    std::uint64_t n = q_ - 1;
    for (std::uint64_t l : prime_factors(q_ - 1))
      while (n % l == 0 && pow(a, n / l) == one()) n /= l;
    return n;
  }

  /// Polynomial notation, e.g. "2+x+x^2"; "0" for zero.
  std::string to_string(const Elem& a) const {
    std::string out;
    for (std::uint32_t i = 0; i < r_; ++i) {
      if (a[i] == 0) continue;
      if (!out.empty()) out += '+';
      if (i == 0) {
        out += std::to_string(a[i]);
        continue;
      }
      if (a[i] != 1) out += std::to_string(a[i]);
      out += 'x';
      if (i > 1) out += '^' + std::to_string(i);
    }
    return out.empty() ? "0" : out;
  }

  std::string modulus_string() const {
    std::string out;
    for (std::uint32_t i = r_ + 1; i-- > 0;) {
      const std::uint32_t c = modulus_[i];
      if (c == 0) continue;
      if (!out.empty()) out += '+';
      if (i == 0) {
        out += std::to_string(c);
        continue;
      }
      if (c != 1) out += std::to_string(c);
      out += 'x';
      if (i > 1) out += '^' + std::to_string(i);
    }
    return out;
  }

  friend bool operator==(const Field& a, const Field& b) {
    return a.p_ == b.p_ && a.r_ == b.r_ && a.modulus_ == b.modulus_ && a.basis_ == b.basis_;
  }

 private:
  Field() = default;

  std::uint32_t reduce(std::int64_t v) const noexcept {
    const std::int64_t m = v % static_cast<std::int64_t>(p_);
    return static_cast<std::uint32_t>(m < 0 ? m + p_ : m);
  }

  void axpy(Elem& acc, std::uint32_t c, const Elem& v) const noexcept {
    for (std::uint32_t i = 0; i < r_; ++i)
      acc[i] = static_cast<std::uint32_t>((acc[i] + std::uint64_t{c} * v[i]) % p_);
  }

  /// Rows of the result express the unit polynomial vectors in the given basis.
  std::vector<Elem> invert(const std::vector<Elem>& rows) const {
    const std::uint32_t n = r_;
    std::vector<std::vector<std::uint64_t>> m(n, std::vector<std::uint64_t>(2 * n, 0));
    for (std::uint32_t i = 0; i < n; ++i) {
      for (std::uint32_t j = 0; j < n; ++j) m[i][j] = rows[i][j];
      m[i][n + i] = 1;
    }
    // Gauss-Jordan on [B | I]; B has basis elements as rows, so the right
    // half becomes B^{-1} and poly = coords * B gives coords = poly * B^{-1}.
    for (std::uint32_t col = 0; col < n; ++col) {
      std::uint32_t piv = col;
      while (piv < n && m[piv][col] == 0) ++piv;
      if (piv == n) throw DomainError("with_basis: basis elements are linearly dependent");
      std::swap(m[piv], m[col]);
      const std::uint64_t s = detail::inv_mod(static_cast<std::uint32_t>(m[col][col]), p_);
      for (auto& v : m[col]) v = v * s % p_;
      for (std::uint32_t i = 0; i < n; ++i) {
        if (i == col || m[i][col] == 0) continue;
        const std::uint64_t t = m[i][col];
        for (std::uint32_t j = 0; j < 2 * n; ++j) m[i][j] = (m[i][j] + (p_ - t) * m[col][j]) % p_;
      }
    }
    std::vector<Elem> inv(n);
    for (std::uint32_t i = 0; i < n; ++i)
      for (std::uint32_t j = 0; j < n; ++j) inv[i][j] = static_cast<std::uint32_t>(m[i][n + j]);
    return inv;
  }

  std::uint32_t p_ = 0;
  std::uint32_t r_ = 0;
  std::uint64_t q_ = 0;
  std::vector<std::uint32_t> modulus_;
  std::vector<Elem> basis_;
  std::vector<Elem> inverse_;
  bool polynomial_basis_ = true;
};

inline Field make_field(std::uint64_t p, std::uint32_t r) { return Field::make(p, r); }

}  // namespace sqfield
