#pragma once

// Fox calculus, Alexander polynomials and the root-product invariant psi.

#include <optional>

#include "sieve/exactalg.hpp"
#include "sieve/knotio.hpp"

namespace sieve {

// Image of d(word)/d(x_gen) under every generator -> t.
LaurentPolynomial fox_derivative(const Word& word, int gen);

// Rows are relators, columns generators.
LaurentMatrix fox_matrix(const GroupPresentation& pres);

// Symmetric representative with positive leading coefficient. Throws
// DomainError when |delta(1)| != 1, the span is odd or delta is not symmetric.
LaurentPolynomial normalize_alexander(const LaurentPolynomial& delta);

// Determinant of the Fox matrix with one column deleted (1-based, default:
// the last), normalized. Needs generator_count - 1 relators.
LaurentPolynomial alexander_poly(const GroupPresentation& pres, std::optional<int> deleted_column = std::nullopt);

// d with deg = 2d for a normalized polynomial.
int half_degree(const LaurentPolynomial& delta);

/// prod_j (t_j^f + t_j^-f - 2) over the root pairs of a normalized delta.
struct PsiValue {
  unsigned f = 1;
  Rational value;
  BigInt psi;    // signed numerator
  BigInt omega;  // positive denominator
};

PsiValue psi(const LaurentPolynomial& delta, unsigned f);

// True iff the shifted delta vanishes in F_p[t]/(1 + t + ... + t^{q-1}).
bool cyclotomic_divisibility(const LaurentPolynomial& delta, std::uint64_t p, std::uint64_t q);

}  // namespace sieve
