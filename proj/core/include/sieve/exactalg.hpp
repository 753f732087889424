#pragma once

// Exact arithmetic substrate: Laurent polynomials over Z, integer matrices,
// Smith normal form, resultants and cyclotomic polynomials.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "sieve/errors.hpp"

namespace sieve {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

BigInt gcd(const BigInt& a, const BigInt& b);
std::int64_t gcd(std::int64_t a, std::int64_t b);
std::int64_t lcm(std::int64_t a, std::int64_t b);

/// Integer-coefficient polynomial in t and t^{-1}.
///
/// Stored sparsely by exponent. Zero coefficients are never stored, so the
/// empty map is the zero polynomial.
class LaurentPolynomial {
 public:
  LaurentPolynomial() = default;
  LaurentPolynomial(const BigInt& constant);  // NOLINT(google-explicit-constructor)
  LaurentPolynomial(long long constant);      // NOLINT(google-explicit-constructor)

  static LaurentPolynomial monomial(const BigInt& coeff, int exponent);
  static LaurentPolynomial t() { return monomial(1, 1); }
  // Coefficients listed from exponent `low` upwards.
  static LaurentPolynomial from_coeffs(int low, std::initializer_list<long long> coeffs);
  static LaurentPolynomial from_coeffs(int low, const std::vector<BigInt>& coeffs);

  const std::map<int, BigInt>& coeffs() const noexcept { return coeffs_; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  // Both throw DomainError on the zero polynomial.
  int min_degree() const;
  int max_degree() const;
  BigInt coeff(int exponent) const;
  BigInt leading_coeff() const;
  BigInt eval_at_one() const;

  LaurentPolynomial shifted(int s) const;  // multiply by t^s
  LaurentPolynomial mirrored() const;      // t -> t^{-1}
  // Dense ascending coefficients of t^{-min_degree} * this; constant term nonzero.
  std::vector<BigInt> to_polynomial() const;

  LaurentPolynomial& operator+=(const LaurentPolynomial& o);
  LaurentPolynomial& operator-=(const LaurentPolynomial& o);
  LaurentPolynomial& operator*=(const LaurentPolynomial& o);
  friend LaurentPolynomial operator+(LaurentPolynomial a, const LaurentPolynomial& b) { return a += b; }
  friend LaurentPolynomial operator-(LaurentPolynomial a, const LaurentPolynomial& b) { return a -= b; }
  friend LaurentPolynomial operator*(const LaurentPolynomial& a, const LaurentPolynomial& b);
  LaurentPolynomial operator-() const;
  friend bool operator==(const LaurentPolynomial&, const LaurentPolynomial&) = default;

  std::string to_string() const;

 private:
  void add_term(int exponent, const BigInt& c);
  std::map<int, BigInt> coeffs_;
};

// Exact quotient a / b in Z[t, t^{-1}]; throws DomainError when b does not divide a.
LaurentPolynomial exact_divide(const LaurentPolynomial& a, const LaurentPolynomial& b);

using LaurentMatrix = std::vector<std::vector<LaurentPolynomial>>;

// Fraction-free (Bareiss) determinant. The 0x0 determinant is 1.
LaurentPolynomial det_laurent(const LaurentMatrix& m);

// n-th cyclotomic polynomial; n = 0 is a DomainError.
LaurentPolynomial cyclotomic_poly(unsigned n);

// Resultant of the shifted ordinary polynomials (Sylvester determinant).
BigInt resultant(const LaurentPolynomial& p, const LaurentPolynomial& q);

class IntegerMatrix {
 public:
  IntegerMatrix() = default;
  IntegerMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntegerMatrix(std::initializer_list<std::initializer_list<long long>> rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  BigInt& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const BigInt& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BigInt> data_;
};

// Bareiss determinant of a square integer matrix.
BigInt det_integer(IntegerMatrix m);

// Smith normal form diagonal s_1 | s_2 | ..., nonnegative, length min(rows, cols).
std::vector<BigInt> snf(const IntegerMatrix& m);

std::string to_string(const BigInt& v);
std::string to_string(const Rational& v);

}  // namespace sieve
