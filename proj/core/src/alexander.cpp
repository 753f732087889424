#include "sieve/alexander.hpp"

#include <cstdlib>

#include "sieve/finitering.hpp"

namespace sieve {

LaurentPolynomial fox_derivative(const Word& word, int gen) {
  LaurentPolynomial d;
  int e = 0;  // exponent sum of the prefix
  for (int letter : word) {
    if (letter == gen) {
      d += LaurentPolynomial::monomial(1, e);
    } else if (letter == -gen) {
      d -= LaurentPolynomial::monomial(1, e - 1);
    }
    e += letter > 0 ? 1 : -1;
  }
  return d;
}

LaurentMatrix fox_matrix(const GroupPresentation& pres) {
  LaurentMatrix m;
  for (const auto& r : pres.relators) {
    for (int x : r)
      if (x == 0 || std::abs(x) > pres.generator_count) throw DomainError("relator letter out of range");
    std::vector<LaurentPolynomial> row;
    for (int j = 1; j <= pres.generator_count; ++j) row.push_back(fox_derivative(r, j));
    m.push_back(std::move(row));
  }
  return m;
}

LaurentPolynomial normalize_alexander(const LaurentPolynomial& delta) {
  if (delta.is_zero()) throw DomainError("not a knot presentation: Alexander determinant is 0");
  const BigInt at_one = delta.eval_at_one();
  if (at_one != 1 && at_one != -1)
    throw DomainError("not a knot presentation: Alexander determinant at t=1 is " + to_string(at_one));
  const int lo = delta.min_degree(), hi = delta.max_degree();
  if ((lo + hi) % 2 != 0) throw DomainError("not a knot presentation: odd span");
  LaurentPolynomial r = delta.shifted(-(lo + hi) / 2);
  if (r.leading_coeff() < 0) r = -r;
  if (r.mirrored() != r) throw DomainError("not a knot presentation: Alexander polynomial is not symmetric");
  return r;
}

LaurentPolynomial alexander_poly(const GroupPresentation& pres, std::optional<int> deleted_column) {
  const int n = pres.generator_count;
  if (static_cast<int>(pres.relators.size()) != n - 1)
    throw DimensionError("Alexander matrix needs generator_count - 1 relators");
  const int del = deleted_column.value_or(n);
  if (del < 1 || del > n) throw DomainError("deleted column out of range");
  const LaurentMatrix full = fox_matrix(pres);
  LaurentMatrix minor;
  for (const auto& row : full) {
    std::vector<LaurentPolynomial> r;
    for (int j = 1; j <= n; ++j)
      if (j != del) r.push_back(row[j - 1]);
    minor.push_back(std::move(r));
  }
  return normalize_alexander(det_laurent(minor));
}

int half_degree(const LaurentPolynomial& delta) {
  if (delta.is_zero()) throw DomainError("half_degree of zero");
  return (delta.max_degree() - delta.min_degree()) / 2;
}

PsiValue psi(const LaurentPolynomial& delta, unsigned f) {
  if (f == 0) throw DomainError("psi: f must be positive");
  PsiValue out;
  out.f = f;
  const int d = half_degree(delta);
  if (d == 0) {
    out.value = 1;
  } else {
    const LaurentPolynomial shifted = LaurentPolynomial::from_coeffs(0, delta.to_polynomial());
    const LaurentPolynomial tf1 = LaurentPolynomial::monomial(1, static_cast<int>(f)) - LaurentPolynomial(1);
    const BigInt res = resultant(tf1, shifted);
    BigInt lead = pow(shifted.leading_coeff(), f);
    Rational v(res);
    v /= Rational(lead);
    if (d % 2 != 0) v = -v;
    out.value = v;
  }
  out.psi = numerator(out.value);
  out.omega = denominator(out.value);
  return out;
}

bool cyclotomic_divisibility(const LaurentPolynomial& delta, std::uint64_t p, std::uint64_t q) {
  if (!is_prime(p) || !is_prime(q)) throw DomainError("cyclotomic_divisibility: p and q must be prime");
  if (delta.is_zero()) return true;
  const fp::Poly a = fp::from_integer_poly(delta.to_polynomial(), p);
  const fp::Poly phi(q, 1);
  return fp::mod(a, phi, p).empty();
}

}  // namespace sieve
