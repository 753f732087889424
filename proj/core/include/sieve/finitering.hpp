#pragma once

// Arithmetic in Z_{p^m} and F_{p^h}: units of prescribed order, p-adic
// valuation, the trace pairing, and kernel sizes of linear systems.

#include <compare>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "sieve/exactalg.hpp"

namespace sieve {

bool is_prime(std::uint64_t n);
std::vector<std::uint64_t> prime_factors(std::uint64_t n);  // distinct, ascending
std::uint64_t ipow(std::uint64_t base, unsigned exp);

/// p-adic valuation with a distinguished infinite value for 0.
///
/// Infinity is absorbing under min with a finite bound: min(INF, b) = b.
class Valuation {
 public:
  static constexpr Valuation infinity() { return Valuation(kInf); }
  constexpr explicit Valuation(int v) : v_(v) {}

  constexpr bool is_infinite() const { return v_ == kInf; }
  int value() const;  // throws DomainError when infinite
  constexpr int min_with(int bound) const { return v_ < bound ? v_ : bound; }

  friend constexpr auto operator<=>(Valuation, Valuation) = default;

  std::string to_string() const;

 private:
  static constexpr int kInf = std::numeric_limits<int>::max();
  int v_;
};

Valuation valuation(const BigInt& a, std::uint64_t p);
Valuation valuation(long long a, std::uint64_t p);

class ZpmRing {
 public:
  ZpmRing(std::uint64_t p, unsigned m);

  std::uint64_t p() const noexcept { return p_; }
  unsigned m() const noexcept { return m_; }
  std::uint64_t modulus() const noexcept { return mod_; }

  std::uint64_t reduce(const BigInt& a) const;
  std::uint64_t reduce(long long a) const;
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const { return (a + b) % mod_; }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return (a + mod_ - b) % mod_; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t pow(std::uint64_t a, long long e) const;  // negative e requires a unit
  bool is_unit(std::uint64_t a) const { return a % p_ != 0; }
  std::uint64_t inverse(std::uint64_t a) const;
  // Multiplicative order of a unit.
  std::uint64_t order_of(std::uint64_t a) const;

  friend bool operator==(const ZpmRing&, const ZpmRing&) = default;

 private:
  std::uint64_t p_;
  unsigned m_;
  std::uint64_t mod_;
};

// Dense polynomials over F_p, ascending coefficients, trimmed (empty = 0).
namespace fp {
using Poly = std::vector<std::uint64_t>;

void trim(Poly& a);
Poly from_integer_poly(const std::vector<BigInt>& coeffs, std::uint64_t p);
Poly add(const Poly& a, const Poly& b, std::uint64_t p);
Poly sub(const Poly& a, const Poly& b, std::uint64_t p);
Poly mul(const Poly& a, const Poly& b, std::uint64_t p);
Poly mod(Poly a, const Poly& b, std::uint64_t p);
Poly div(Poly a, const Poly& b, std::uint64_t p);  // quotient
Poly gcd(Poly a, Poly b, std::uint64_t p);         // monic
Poly powmod(Poly base, std::uint64_t e, const Poly& modulus, std::uint64_t p);
bool is_irreducible(const Poly& f, std::uint64_t p);
// Degrees of the distinct irreducible factors.
std::vector<unsigned> factor_degrees(Poly f, std::uint64_t p);
}  // namespace fp

/// F_{p^h} built from the lexicographically smallest monic irreducible of
/// degree h (ordering by the base-p code of the non-leading coefficients).
///
/// Elements are codes in [0, p^h): digit i (base p) is the coefficient of x^i.
class FphField {
 public:
  using Element = std::uint32_t;

  FphField(std::uint64_t p, unsigned h);

  std::uint64_t p() const noexcept { return p_; }
  unsigned h() const noexcept { return h_; }
  std::uint64_t size() const noexcept { return size_; }
  const fp::Poly& modulus() const noexcept { return modulus_; }

  Element zero() const { return 0; }
  Element one() const { return 1; }
  Element from_int(long long a) const;  // image of an integer in the prime field
  Element from_integer(const BigInt& a) const;

  Element add(Element a, Element b) const;
  Element sub(Element a, Element b) const;
  Element neg(Element a) const;
  Element mul(Element a, Element b) const;
  Element pow(Element a, long long e) const;  // negative e requires a != 0
  Element inverse(Element a) const;
  Element frobenius(Element a) const { return pow(a, static_cast<long long>(p_)); }
  std::uint64_t order_of(Element a) const;

  // Tr(x) = x + x^p + ... + x^{p^{h-1}}, returned as an integer in [0, p).
  std::uint64_t trace(Element a) const;
  // Tr(w v); throws DomainError for codes outside this field.
  std::uint64_t trace_pairing(Element w, Element v) const;

  std::vector<std::uint64_t> digits(Element a) const;
  Element from_digits(const std::vector<std::uint64_t>& d) const;
  std::string element_to_string(Element a) const;

  friend bool operator==(const FphField& a, const FphField& b) {
    return a.p_ == b.p_ && a.h_ == b.h_ && a.modulus_ == b.modulus_;
  }

 private:
  void check(Element a) const;

  std::uint64_t p_;
  unsigned h_;
  std::uint64_t size_;
  fp::Poly modulus_;
};

// Smallest r (by code) of multiplicative order exactly n with 1 - r^v a unit
// for 0 < v < n. Throws NoSuchUnit when n does not divide p-1 (resp. p^h-1).
std::uint64_t unit_of_order(const ZpmRing& ring, std::uint64_t n);
FphField::Element unit_of_order(const FphField& field, std::uint64_t n);

// Exponent w with #ker = p^w for a matrix over Z_{p^m}, from the Smith form
// of the integer lift. Entries of `lift` may be any integers.
unsigned kernel_exponent_zpm(const ZpmRing& ring, const IntegerMatrix& lift);

using FphMatrix = std::vector<std::vector<FphField::Element>>;

// Kernel dimension over F_{p^h}. `cols` is needed for matrices with no rows.
unsigned kernel_dim_fph(const FphField& field, FphMatrix mat, std::size_t cols);

}  // namespace sieve
