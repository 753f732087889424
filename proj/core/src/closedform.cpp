#include <algorithm>
#include <numeric>

#include "sieve/dwcount.hpp"

namespace sieve {

namespace {

long long mod_pos(long long a, long long n) {
  const long long r = a % n;
  return r < 0 ? r + n : r;
}

long long g3(long long a, long long b, long long c) { return std::gcd(std::gcd(a, b), c); }

// Smallest c in [1, M] with c a = (a, M) mod M.
long long smallest_multiplier(long long a, long long M) {
  const long long d = std::gcd(a, M);
  for (long long c = 1; c <= M; ++c)
    if (mod_pos(static_cast<long long>(static_cast<__int128>(c) * a % M) - d, M) == 0) return c;
  throw ConsistencyError("no multiplier found");
}

bool valid_multiplier(long long c, long long a, long long M) {
  return mod_pos(static_cast<long long>(static_cast<__int128>(mod_pos(c, M)) * mod_pos(a, M) % M) - std::gcd(a, M), M) == 0;
}

BigInt as_integer(const Rational& q, const char* what) {
  if (denominator(q) != 1) throw ConsistencyError(std::string(what) + " = " + to_string(q) + " is not an integer");
  return numerator(q);
}

long long inverse_mod_p(long long a, long long p) {
  a = mod_pos(a, p);
  for (long long x = 1; x < p; ++x)
    if (a * x % p == 1) return x;
  throw DomainError("not invertible mod p");
}

void require_small(const SeifertData& s) {
  if (!s.is_small()) throw DomainError("closed forms need genus 0 and exactly three legs");
}

}  // namespace

NSideParams n_side_params(const std::array<long long, 3>& a, const std::array<long long, 3>& b, long long n,
                          const std::optional<std::array<long long, 3>>& c_prime) {
  if (n < 1) throw DomainError("n must be positive");
  NSideParams out;
  for (int j = 0; j < 3; ++j) {
    if (c_prime) {
      if (!valid_multiplier((*c_prime)[j], a[j], n))
        throw DomainError("c'_" + std::to_string(j + 1) + " does not satisfy c' a = (a, n)");
      out.c_prime[j] = (*c_prime)[j];
    } else {
      out.c_prime[j] = smallest_multiplier(a[j], n);
    }
  }
  out.D_prime = std::gcd(std::lcm(std::lcm(a[0], a[1]), a[2]), n);
  for (int j = 0; j < 3; ++j) out.B_prime += b[j] * out.c_prime[j] * (out.D_prime / std::gcd(a[j], n));
  const long long n_over = n / std::gcd(n, std::abs(out.B_prime));  // gcd(n, 0) = n
  out.E = n / std::lcm(out.D_prime, n_over);
  return out;
}

BigInt kappa2(long long a1, long long a2, long long a3, long long n) {
  if (n < 1) throw DomainError("kappa2: n must be positive");
  const std::array<long long, 3> a{a1, a2, a3};
  const long long Dp = std::gcd(std::lcm(std::lcm(a1, a2), a3), n);
  Rational k = 2;
  Rational prod = 1;
  for (int j = 0; j < 3; ++j) {
    k -= g3(a[(j + 1) % 3], a[(j + 2) % 3], n);
    prod *= std::gcd(a[j], n);
  }
  k += prod / Dp;
  return as_integer(k, "kappa2");
}

ClosedFormParams closed_params(const SeifertData& s, const MetabelianGroup& g, const std::optional<MultiplierChoice>& choice) {
  require_small(s);
  ClosedFormParams P;
  for (int j = 0; j < 3; ++j) {
    P.a[j] = s.legs[j].first;
    P.b[j] = s.legs[j].second;
  }
  P.p = g.p();
  P.exponent = g.exponent();
  P.n = g.n();
  P.field = !g.is_zpm();
  const auto n = static_cast<long long>(g.n());
  const auto p = static_cast<long long>(g.p());
  const long long pm = static_cast<long long>(ipow(g.p(), g.exponent()));
  const long long lcm_a = std::lcm(std::lcm(P.a[0], P.a[1]), P.a[2]);

  for (int j = 0; j < 3; ++j) {
    P.d_prime[j] = std::gcd(P.a[j], n);
    P.e[j] = std::gcd(P.a[(j + 1) % 3], P.a[(j + 2) % 3]);
    P.d[j] = P.field ? static_cast<long long>(ipow(static_cast<std::uint64_t>(std::gcd(P.a[j], p)), g.exponent()))
                     : std::gcd(P.a[j], pm);
  }
  if (choice && !P.field)
    for (int j = 0; j < 3; ++j)
      if (!valid_multiplier(choice->c[j], P.a[j], pm))
        throw DomainError("c_" + std::to_string(j + 1) + " does not satisfy c a = (a, p^m)");
  const NSideParams ns = n_side_params(P.a, P.b, n, choice ? std::optional(choice->c_prime) : std::nullopt);
  for (int j = 0; j < 3; ++j) {
    P.choice.c[j] = P.field ? 0 : (choice ? choice->c[j] : smallest_multiplier(P.a[j], pm));
    P.choice.c_prime[j] = ns.c_prime[j];
  }
  P.D_prime = ns.D_prime;
  P.B_prime = ns.B_prime;
  P.E = ns.E;
  P.kappa2 = kappa2(P.a[0], P.a[1], P.a[2], n);

  Rational e_term = Rational(P.E - 1, P.D_prime);
  for (int j = 0; j < 3; ++j) e_term *= P.d_prime[j];
  BigInt local = 0;
  for (int j = 0; j < 3; ++j) local += BigInt(P.d[j]) * (g3(P.a[(j + 1) % 3], P.a[(j + 2) % 3], n) - 1);
  P.kappa1_local = local;
  P.kappa1 = as_integer(Rational(local) + e_term, "kappa1");

  if (!P.field) {
    const long long pf = std::gcd(lcm_a, pm);
    P.f = static_cast<unsigned>(valuation(pf, g.p()).value());
    P.B = 0;
    for (int j = 0; j < 3; ++j) P.B += P.b[j] * P.choice.c[j] * (pf / P.d[j]);
    const int m = static_cast<int>(g.exponent());
    const int f = static_cast<int>(P.f);
    long long mu = 0;
    if (f < m) {
      for (int j = 0; j < 3; ++j) mu += valuation(P.a[j], g.p()).value();
      mu += -f + valuation(P.B, g.p()).min_with(m - f);
    } else {
      for (int j = 0; j < 3; ++j) mu += valuation(P.a[j], g.p()).min_with(m);
      mu -= m;
    }
    P.mu = mu;
  } else {
    const bool p_divides = P.a[0] % p == 0 || P.a[1] % p == 0 || P.a[2] % p == 0;
    const BigInt ph = pow(BigInt(p), g.exponent());
    if (p_divides) {
      Rational c = 1;
      for (int j = 0; j < 3; ++j) c *= P.d[j];
      c /= Rational(ph);
      P.C = as_integer(c, "C");
    } else {
      long long F = 0;
      for (int j = 0; j < 3; ++j) F = mod_pos(F + inverse_mod_p(P.a[j], p) * mod_pos(P.b[j], p), p);
      P.F = F;
      P.C = (F == 0 ? ph - 1 : BigInt(0)) + 1;
    }
  }
  return P;
}

BigInt seifert_count_closed_zpm(const SeifertData& s, const MetabelianGroup& g, const std::optional<MultiplierChoice>& choice) {
  if (!g.is_zpm()) throw DomainError("closed form for Z_{p^m} targets");
  const ClosedFormParams P = closed_params(s, g, choice);
  const BigInt pm = pow(BigInt(g.p()), g.exponent());
  return P.kappa2 * pm * pm + P.kappa1 * pm + pow(BigInt(g.p()), static_cast<unsigned>(P.mu));
}

BigInt seifert_count_closed_zpm_primepower(const SeifertData& s, const MetabelianGroup& g,
                                           const std::optional<MultiplierChoice>& choice) {
  if (!g.is_zpm()) throw DomainError("closed form for Z_{p^m} targets");
  const auto n = g.n();
  std::uint64_t q = 2;
  unsigned sexp = 0;
  if (n > 1) {
    const auto primes = prime_factors(n);
    if (primes.size() != 1) throw DomainError("n = " + std::to_string(n) + " is not a prime power");
    q = primes.front();
    for (std::uint64_t x = n; x > 1; x /= q) ++sexp;
  }
  const ClosedFormParams P = closed_params(s, g, choice);
  std::array<int, 3> sj{};
  for (int j = 0; j < 3; ++j) sj[j] = valuation(P.a[j], q).min_with(static_cast<int>(sexp));
  std::array<int, 3> idx{0, 1, 2};
  std::stable_sort(idx.begin(), idx.end(), [&](int x, int y) { return sj[x] < sj[y]; });
  const BigInt Q = q;
  const int s1 = sj[idx[0]], s2 = sj[idx[1]], s3 = sj[idx[2]];
  const BigInt q1 = pow(Q, s1), q2 = pow(Q, s2);
  const BigInt k2 = (q1 - 1) * (q2 - 1) + 1 - q1;
  const int bexp = valuation(P.B_prime, q).min_with(static_cast<int>(sexp) - s3);
  const BigInt k1 = BigInt(P.d[idx[0]]) * (q2 - 1) + BigInt(P.d[idx[1]] + P.d[idx[2]]) * (q1 - 1) +
                    pow(Q, s1 + s2) * (pow(Q, bexp) - 1);
  const BigInt pm = pow(BigInt(g.p()), g.exponent());
  return k2 * pm * pm + k1 * pm + pow(BigInt(g.p()), static_cast<unsigned>(P.mu));
}

BigInt seifert_count_closed_fph(const SeifertData& s, const MetabelianGroup& g) {
  if (g.is_zpm()) throw DomainError("closed form for F_{p^h} targets");
  const ClosedFormParams P = closed_params(s, g);
  const BigInt ph = pow(BigInt(g.p()), g.exponent());
  return P.kappa2 * ph * ph + P.kappa1 * ph + P.C;
}

BigInt seifert_count_closed(const SeifertData& s, const MetabelianGroup& g) {
  return g.is_zpm() ? seifert_count_closed_zpm(s, g) : seifert_count_closed_fph(s, g);
}

CharsumBlocks closed_partial_sums(const SeifertData& s, const MetabelianGroup& g) {
  const ClosedFormParams P = closed_params(s, g);
  const Rational n(static_cast<long long>(P.n));
  const Rational prod_d = Rational(P.d[0]) * P.d[1] * P.d[2];
  Rational prod_dp = Rational(P.d_prime[0]) * P.d_prime[1] * P.d_prime[2];
  CharsumBlocks out;
  out.beta = prod_dp / (n * P.D_prime) * (P.E - 1);
  if (!P.field) {
    const BigInt pm = pow(BigInt(P.p), P.exponent);
    const int m = static_cast<int>(P.exponent), f = static_cast<int>(P.f);
    const Rational PM(pm);
    if (f < m) {
      const int e = valuation(P.B, P.p).min_with(m - f);
      out.alpha = prod_d / (PM * Rational(pow(BigInt(P.p), static_cast<unsigned>(f)))) *
                  Rational(pow(BigInt(P.p), static_cast<unsigned>(e)) - 1) / n;
      out.identity_induced = prod_d * Rational(pow(BigInt(P.p), static_cast<unsigned>(m - f)) - 1) / (PM * PM * n);
    }
    out.identity_linear = (Rational(P.kappa2) * PM * PM * PM + Rational(P.kappa1_local) * PM * PM + prod_d) / (PM * PM * n);
  } else {
    const Rational PH(pow(BigInt(P.p), P.exponent));
    const auto p = static_cast<long long>(P.p);
    const bool coprime = P.a[0] % p != 0 && P.a[1] % p != 0 && P.a[2] % p != 0;
    if (coprime) {
      if (P.F == 0) out.alpha = (PH - 1) / (n * PH);
      out.identity_induced = (PH - 1) / (PH * PH * n);
    }
    out.identity_linear = (Rational(P.kappa2) * PH * PH * PH + Rational(P.kappa1_local) * PH * PH + prod_d) / (PH * PH * n);
  }
  return out;
}

}  // namespace sieve
