#pragma once

// Exact elements of Q(zeta_N).

#include <cstdint>
#include <string>
#include <vector>

#include "sieve/exactalg.hpp"

namespace sieve {

/// Element of Q(zeta_N) in the power basis 1, zeta, ..., zeta^{phi(N)-1},
/// always reduced modulo the N-th cyclotomic polynomial.
///
/// Binary operations between different orders lift both operands to the
/// lcm of the orders first.
class CyclotomicNumber {
 public:
  explicit CyclotomicNumber(unsigned order = 1);

  static CyclotomicNumber from_rational(unsigned order, const Rational& q);
  static CyclotomicNumber zeta(unsigned order, long long k = 1);

  unsigned order() const noexcept { return order_; }
  const std::vector<Rational>& coords() const noexcept { return coords_; }

  bool is_zero() const;
  bool is_rational() const;
  // Throws ConsistencyError when the value is not rational.
  Rational to_rational() const;

  CyclotomicNumber lifted(unsigned order) const;
  CyclotomicNumber conj() const;

  CyclotomicNumber& operator+=(const CyclotomicNumber& o);
  CyclotomicNumber& operator-=(const CyclotomicNumber& o);
  CyclotomicNumber& operator*=(const CyclotomicNumber& o);
  CyclotomicNumber& operator*=(const Rational& q);
  friend CyclotomicNumber operator+(CyclotomicNumber a, const CyclotomicNumber& b) { return a += b; }
  friend CyclotomicNumber operator-(CyclotomicNumber a, const CyclotomicNumber& b) { return a -= b; }
  friend CyclotomicNumber operator*(CyclotomicNumber a, const CyclotomicNumber& b) { return a *= b; }
  friend CyclotomicNumber operator*(CyclotomicNumber a, const Rational& q) { return a *= q; }
  friend bool operator==(const CyclotomicNumber& a, const CyclotomicNumber& b);

  std::string to_string() const;

 private:
  friend class RootSum;

  // Reduce a dense polynomial in zeta (any length) into the power basis.
  static std::vector<Rational> reduce(unsigned order, std::vector<Rational> poly);

  unsigned order_;
  std::vector<Rational> coords_;
};

/// Formal integer combination sum_k c_k zeta_N^k, unreduced.
///
/// Character values of the metabelian targets are sums of roots of unity, so
/// the character-sum machinery works in Z[C_N] with machine integers and only
/// reduces to CyclotomicNumber at the end. Arithmetic throws ConsistencyError
/// on int64 overflow.
class RootSum {
 public:
  explicit RootSum(unsigned order = 1) : order_(order), counts_(order, 0) {}

  static RootSum root(unsigned order, long long k, std::int64_t mult = 1);

  unsigned order() const noexcept { return order_; }
  const std::vector<std::int64_t>& counts() const noexcept { return counts_; }

  void add_root(long long k, std::int64_t mult = 1);
  bool is_zero() const;

  RootSum conj() const;
  RootSum& operator+=(const RootSum& o);
  friend RootSum operator*(const RootSum& a, const RootSum& b);

  CyclotomicNumber value() const;

 private:
  unsigned order_;
  std::vector<std::int64_t> counts_;
};

unsigned euler_phi(unsigned n);

}  // namespace sieve
