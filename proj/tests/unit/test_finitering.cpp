#include "doctest.h"
#include "sieve/finitering.hpp"
#include "support/oracles.hpp"

using namespace sieve;

TEST_CASE("valuation") {
  CHECK(valuation(12LL, 2).value() == 2);
  CHECK(valuation(-49LL, 7).value() == 2);
  CHECK(valuation(0LL, 5).is_infinite());
  CHECK(valuation(0LL, 5).min_with(3) == 3);
  CHECK(valuation(BigInt(1) << 100, 2).value() == 100);
  CHECK_THROWS_AS(valuation(0LL, 5).value(), DomainError);
  CHECK_THROWS_AS(valuation(10LL, 4), DomainError);
  CHECK(valuation(7LL, 3) < valuation(0LL, 3));
}

TEST_CASE("primes and powers") {
  CHECK(is_prime(2));
  CHECK(is_prime(97));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(91));
  CHECK(prime_factors(360) == std::vector<std::uint64_t>{2, 3, 5});
  CHECK(ipow(3, 4) == 81);
}

TEST_CASE("Z_{p^m} arithmetic") {
  const ZpmRing R(7, 2);
  CHECK(R.modulus() == 49);
  CHECK(R.reduce(-1LL) == 48);
  CHECK(R.mul(R.inverse(3), 3) == 1);
  CHECK(R.pow(3, -1) == R.inverse(3));
  CHECK_FALSE(R.is_unit(14));
  CHECK_THROWS_AS(R.inverse(7), DomainError);
  CHECK(R.order_of(R.reduce(-1LL)) == 2);
  CHECK_THROWS_AS(ZpmRing(6, 1), DomainError);
}

TEST_CASE("unit_of_order examples") {
  CHECK(unit_of_order(ZpmRing(7, 1), 3) == 2);
  CHECK(unit_of_order(ZpmRing(7, 1), 6) == 3);
  CHECK_THROWS_AS(unit_of_order(ZpmRing(7, 1), 7), NoSuchUnit);
}

TEST_CASE("unit_of_order properties") {
  for (std::uint64_t p : {3, 5, 7, 11, 13, 17, 19}) {
    for (unsigned m = 1; m <= 2; ++m) {
      const ZpmRing R(p, m);
      for (std::uint64_t n = 1; n <= p - 1; ++n) {
        if ((p - 1) % n != 0) continue;
        const auto r = unit_of_order(R, n);
        CHECK(R.pow(r, static_cast<long long>(n)) == 1);
        for (auto q : prime_factors(n)) CHECK(R.pow(r, static_cast<long long>(n / q)) != 1);
        for (std::uint64_t v = 1; v < n; ++v) CHECK(std::gcd(R.sub(1, R.pow(r, static_cast<long long>(v))), p) == 1);
      }
    }
  }
  for (auto [p, h] : std::vector<std::pair<std::uint64_t, unsigned>>{{2, 2}, {3, 2}, {2, 3}, {5, 2}}) {
    const FphField F(p, h);
    for (std::uint64_t n = 1; n < F.size(); ++n) {
      if ((F.size() - 1) % n != 0) continue;
      const auto r = unit_of_order(F, n);
      CHECK(F.order_of(r) == n);
    }
  }
}

TEST_CASE("kernel exponent over Z_{p^m}") {
  const ZpmRing R(7, 2);
  CHECK(kernel_exponent_zpm(R, IntegerMatrix{{1}}) == 0);
  CHECK(kernel_exponent_zpm(R, IntegerMatrix{{7}}) == 1);
  CHECK(kernel_exponent_zpm(R, IntegerMatrix{{0}}) == 2);
  CHECK(kernel_exponent_zpm(R, IntegerMatrix(0, 2)) == 4);
}

TEST_CASE("kernel exponent matches enumeration") {
  const std::vector<std::pair<std::uint64_t, unsigned>> rings{{2, 1}, {2, 2}, {2, 3}, {2, 4}, {3, 1},
                                                               {3, 2}, {3, 3}, {5, 1}, {5, 2}, {7, 1}};
  for (int trial = 0; trial < 300; ++trial) {
    const auto [p, m] = rings[static_cast<std::size_t>(oracle::uniform(0, static_cast<long long>(rings.size()) - 1))];
    const ZpmRing R(p, m);
    const auto rows = static_cast<std::size_t>(oracle::uniform(1, 2));
    const auto cols = static_cast<std::size_t>(oracle::uniform(1, 2));
    IntegerMatrix lift(rows, cols);
    std::vector<std::vector<long long>> raw(rows, std::vector<long long>(cols));
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) {
        // Bias towards multiples of p so that kernels are nontrivial.
        long long x = oracle::uniform(0, static_cast<long long>(R.modulus()) - 1);
        if (oracle::uniform(0, 1)) x = (x * static_cast<long long>(p)) % static_cast<long long>(R.modulus());
        raw[i][j] = x;
        lift(i, j) = x;
      }
    const auto w = kernel_exponent_zpm(R, lift);
    CHECK(ipow(p, w) == oracle::kernel_count_enum(raw, cols, R.modulus()));
    // Any other lift gives the same answer.
    IntegerMatrix shifted = lift;
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) shifted(i, j) += BigInt(R.modulus()) * oracle::uniform(-3, 3);
    CHECK(kernel_exponent_zpm(R, shifted) == w);
  }
}

TEST_CASE("F_{p^h} construction") {
  const FphField F4(2, 2);
  CHECK(F4.size() == 4);
  CHECK(F4.modulus() == fp::Poly{1, 1, 1});
  const FphField F9(3, 2);
  CHECK(fp::is_irreducible(F9.modulus(), 3));
  CHECK(F9.modulus().size() == 3);
  CHECK_THROWS_AS(FphField(4, 2), DomainError);
  const FphField F8(2, 3);
  for (FphField::Element a = 1; a < F8.size(); ++a) CHECK(F8.mul(a, F8.inverse(a)) == 1);
}

TEST_CASE("field axioms exhaustively on small fields") {
  for (auto [p, h] : std::vector<std::pair<std::uint64_t, unsigned>>{{2, 2}, {3, 2}, {2, 3}}) {
    const FphField F(p, h);
    for (FphField::Element a = 0; a < F.size(); ++a)
      for (FphField::Element b = 0; b < F.size(); ++b) {
        CHECK(F.mul(a, b) == F.mul(b, a));
        CHECK(F.sub(F.add(a, b), b) == a);
        for (FphField::Element c = 0; c < F.size(); c += 3)
          CHECK(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)));
      }
  }
}

TEST_CASE("kernel dimension over F_{p^h}") {
  const FphField F(2, 2);
  CHECK(kernel_dim_fph(F, {{0}}, 1) == 1);
  CHECK(kernel_dim_fph(F, {{2}}, 1) == 0);
  CHECK(kernel_dim_fph(F, {{1, 1}, {1, 1}}, 2) == 1);
  CHECK(kernel_dim_fph(F, {}, 3) == 3);
  // Exhaustive check on 2x2 matrices over F_4.
  for (std::uint32_t code = 0; code < 256; ++code) {
    const FphMatrix m{{code & 3, (code >> 2) & 3}, {(code >> 4) & 3, (code >> 6) & 3}};
    unsigned solutions = 0;
    for (FphField::Element x = 0; x < 4; ++x)
      for (FphField::Element y = 0; y < 4; ++y)
        if (F.add(F.mul(m[0][0], x), F.mul(m[0][1], y)) == 0 && F.add(F.mul(m[1][0], x), F.mul(m[1][1], y)) == 0)
          ++solutions;
    CHECK(ipow(4, kernel_dim_fph(F, m, 2)) == solutions);
  }
}

TEST_CASE("trace pairing") {
  const FphField F(2, 2);
  for (FphField::Element v = 0; v < 4; ++v) CHECK(F.trace_pairing(0, v) == 0);
  CHECK(F.trace_pairing(1, 1) == 0);
  CHECK(F.trace_pairing(2, 2) == 1);
  for (auto [p, h] : std::vector<std::pair<std::uint64_t, unsigned>>{{2, 2}, {3, 2}, {5, 2}, {7, 2}, {2, 3}, {3, 3}}) {
    const FphField K(p, h);
    if (K.size() > 49) continue;
    for (FphField::Element w = 0; w < K.size(); ++w) {
      bool nondegenerate = w == 0;
      for (FphField::Element v = 0; v < K.size(); ++v) {
        CHECK(K.trace_pairing(w, v) == K.trace_pairing(v, w));
        CHECK(K.trace_pairing(w, v) < p);
        if (K.trace_pairing(w, v) != 0) nondegenerate = true;
        const FphField::Element u = (v * 7 + 1) % K.size();
        CHECK(K.trace_pairing(w, K.add(v, u)) == (K.trace_pairing(w, v) + K.trace_pairing(w, u)) % p);
      }
      CHECK(nondegenerate);
    }
  }
}

TEST_CASE("frobenius fixes exactly the prime field") {
  for (auto [p, h] : std::vector<std::pair<std::uint64_t, unsigned>>{{2, 2}, {3, 2}, {5, 2}, {7, 2}, {2, 3}, {3, 3}}) {
    const FphField K(p, h);
    if (K.size() > 49) continue;
    std::size_t fixed = 0;
    for (FphField::Element a = 0; a < K.size(); ++a) {
      if (K.frobenius(a) == a) ++fixed;
      for (FphField::Element b = 0; b < K.size(); b += 5) {
        CHECK(K.frobenius(K.mul(a, b)) == K.mul(K.frobenius(a), K.frobenius(b)));
        CHECK(K.frobenius(K.add(a, b)) == K.add(K.frobenius(a), K.frobenius(b)));
      }
    }
    CHECK(fixed == p);
  }
}

TEST_CASE("F_p polynomial helpers") {
  CHECK(fp::is_irreducible({1, 1, 1}, 2));
  CHECK_FALSE(fp::is_irreducible({1, 0, 1}, 2));
  CHECK(fp::gcd({1, 0, 1}, {1, 1}, 2) == fp::Poly{1, 1});
  auto degs = fp::factor_degrees({1, 0, 0, 0, 1, 1}, 2);  // x^5 + x^4 + 1 = (x^2+x+1)(x^3+x+1)
  std::sort(degs.begin(), degs.end());
  CHECK(degs == std::vector<unsigned>{2, 3});
}
