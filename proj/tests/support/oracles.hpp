#pragma once

// Independent reference computations used by the test suites. Nothing here
// calls the library routine it is meant to check.

#include <cstdint>
#include <cstdlib>
#include <optional>
#include <stdexcept>
#include <functional>
#include <random>
#include <vector>

#include "sieve/alexander.hpp"
#include "sieve/exactalg.hpp"
#include "sieve/finitering.hpp"
#include "sieve/knotio.hpp"

namespace oracle {

using sieve::BigInt;
using sieve::LaurentPolynomial;

// Laplace expansion along the first row.
inline LaurentPolynomial cofactor_det(const std::vector<std::vector<LaurentPolynomial>>& m) {
  const std::size_t n = m.size();
  if (n == 0) return LaurentPolynomial(1);
  if (n == 1) return m[0][0];
  LaurentPolynomial out;
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<std::vector<LaurentPolynomial>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<LaurentPolynomial> row;
      for (std::size_t cc = 0; cc < n; ++cc)
        if (cc != c) row.push_back(m[r][cc]);
      minor.push_back(row);
    }
    const LaurentPolynomial term = m[0][c] * cofactor_det(minor);
    if (c % 2 == 0) out += term;
    else out -= term;
  }
  return out;
}

// Sum of the coefficients of p evaluated at an integer point (exact).
inline BigInt eval_int(const LaurentPolynomial& p, long long x) {
  BigInt acc = 0;
  for (const auto& [e, c] : p.coeffs()) {
    if (e < 0) throw std::logic_error("eval_int: negative exponent");
    acc += c * boost::multiprecision::pow(BigInt(x), static_cast<unsigned>(e));
  }
  return acc;
}

// Psi for t - a + t^-1 from the trace recursion s_0 = 2, s_1 = a.
inline BigInt psi_recursion(long long a, unsigned f) {
  BigInt s0 = 2, s1 = a;
  if (f == 0) return 0;
  for (unsigned i = 1; i < f; ++i) {
    BigInt s2 = BigInt(a) * s1 - s0;
    s0 = s1;
    s1 = s2;
  }
  return s1 - 2;
}

// Kernel size of an integer matrix over Z_{p^m} by enumerating all vectors.
inline std::uint64_t kernel_count_enum(const std::vector<std::vector<long long>>& mat, std::size_t cols,
                                       std::uint64_t mod) {
  std::uint64_t count = 0;
  std::vector<std::uint64_t> x(cols, 0);
  while (true) {
    bool zero = true;
    for (const auto& row : mat) {
      __int128 s = 0;
      for (std::size_t j = 0; j < cols; ++j) s += static_cast<__int128>(row[j]) * static_cast<__int128>(x[j]);
      s %= static_cast<__int128>(mod);
      if (s != 0) {
        zero = false;
        break;
      }
    }
    if (zero) ++count;
    std::size_t i = 0;
    while (i < cols && ++x[i] == mod) x[i++] = 0;
    if (i == cols) break;
  }
  return count;
}

/// A_phi x Z_n with the multiplication written out from the definition
/// (u1,v1)(u2,v2) = (u1 + r^{v1} u2, v1 + v2). A is Z_{p^m} or F_{p^h};
/// the field case reuses FphField for the coefficient arithmetic only.
struct NaiveGroup {
  bool field = false;
  std::uint64_t p = 0, exponent = 1, n = 1, r = 1, a_size = 1;
  std::optional<sieve::FphField> F;

  static NaiveGroup zpm(std::uint64_t p, unsigned m, std::uint64_t n, std::uint64_t r) {
    NaiveGroup g;
    g.p = p;
    g.exponent = m;
    g.n = n;
    g.r = r;
    g.a_size = sieve::ipow(p, m);
    return g;
  }
  static NaiveGroup fph(std::uint64_t p, unsigned h, std::uint64_t n, std::uint64_t r) {
    NaiveGroup g;
    g.field = true;
    g.p = p;
    g.exponent = h;
    g.n = n;
    g.r = r;
    g.F.emplace(p, h);
    g.a_size = g.F->size();
    return g;
  }

  std::uint64_t order() const { return a_size * n; }
  std::uint64_t a_add(std::uint64_t x, std::uint64_t y) const { return field ? F->add(x, y) : (x + y) % a_size; }
  std::uint64_t a_mul(std::uint64_t x, std::uint64_t y) const {
    return field ? F->mul(static_cast<std::uint32_t>(x), static_cast<std::uint32_t>(y))
                 : static_cast<std::uint64_t>(static_cast<unsigned __int128>(x) * y % a_size);
  }
  std::uint64_t r_pow(std::uint64_t v) const {
    std::uint64_t out = field ? 1 : 1 % a_size;
    for (std::uint64_t i = 0; i < v; ++i) out = a_mul(out, r);
    return out;
  }
  // Elements are encoded as v * a_size + u.
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
    const std::uint64_t u1 = a % a_size, v1 = a / a_size, u2 = b % a_size, v2 = b / a_size;
    return ((v1 + v2) % n) * a_size + a_add(u1, a_mul(r_pow(v1), u2));
  }
  std::uint64_t inv(std::uint64_t a) const {
    for (std::uint64_t b = 0; b < order(); ++b)
      if (mul(a, b) == 0) return b;
    throw std::logic_error("no inverse");
  }
};

// Number of assignments of generators to G killing every relator, by full
// enumeration of G^{generator_count}.
inline std::uint64_t hom_count_naive(const sieve::GroupPresentation& pres, const NaiveGroup& G,
                                     const std::vector<sieve::Word>& extra = {}) {
  const std::uint64_t N = G.order();
  std::vector<std::uint64_t> inv(N);
  for (std::uint64_t a = 0; a < N; ++a) inv[a] = G.inv(a);
  std::vector<std::uint64_t> table(N * N);
  for (std::uint64_t a = 0; a < N; ++a)
    for (std::uint64_t b = 0; b < N; ++b) table[a * N + b] = G.mul(a, b);
  std::vector<sieve::Word> rels = pres.relators;
  rels.insert(rels.end(), extra.begin(), extra.end());
  const auto gens = static_cast<std::size_t>(pres.generator_count);
  std::vector<std::uint64_t> img(gens, 0);
  std::uint64_t count = 0;
  while (true) {
    bool ok = true;
    for (const auto& w : rels) {
      std::uint64_t acc = 0;
      for (int letter : w) {
        const std::uint64_t x = img[static_cast<std::size_t>(std::abs(letter) - 1)];
        acc = table[acc * N + (letter > 0 ? x : inv[x])];
      }
      if (acc != 0) {
        ok = false;
        break;
      }
    }
    if (ok) ++count;
    std::size_t i = 0;
    while (i < gens && ++img[i] == N) img[i++] = 0;
    if (i == gens) break;
  }
  return count;
}

inline std::mt19937_64& rng() {
  static std::mt19937_64 g(20240611);
  return g;
}

inline long long uniform(long long lo, long long hi) {
  return std::uniform_int_distribution<long long>(lo, hi)(rng());
}

// |x| is 2^j for some j >= 0, by repeated halving.
inline bool is_power_of_two(sieve::BigInt x) {
  if (x < 0) x = -x;
  if (x == 0) return false;
  while (x % 2 == 0) x /= 2;
  return x == 1;
}

}  // namespace oracle
