#include "sieve/finitering.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace sieve {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d != 0) continue;
    out.push_back(d);
    while (n % d == 0) n /= d;
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::uint64_t ipow(std::uint64_t base, unsigned exp) {
  std::uint64_t r = 1;
  while (exp-- > 0) r *= base;
  return r;
}

// ---------------------------------------------------------------------------
// Valuation

int Valuation::value() const {
  if (is_infinite()) throw DomainError("finite value of an infinite valuation");
  return v_;
}

std::string Valuation::to_string() const { return is_infinite() ? "INF" : std::to_string(v_); }

Valuation valuation(const BigInt& a, std::uint64_t p) {
  if (!is_prime(p)) throw DomainError("valuation: " + std::to_string(p) + " is not prime");
  if (a == 0) return Valuation::infinity();
  BigInt x = abs(a);
  int s = 0;
  while (x % p == 0) {
    x /= p;
    ++s;
  }
  return Valuation(s);
}

Valuation valuation(long long a, std::uint64_t p) { return valuation(BigInt(a), p); }

// ---------------------------------------------------------------------------
// ZpmRing

ZpmRing::ZpmRing(std::uint64_t p, unsigned m) : p_(p), m_(m) {
  if (!is_prime(p)) throw DomainError("ZpmRing: " + std::to_string(p) + " is not prime");
  if (m == 0) throw DomainError("ZpmRing: m must be positive");
  mod_ = ipow(p, m);
  if (mod_ > (std::uint64_t{1} << 31)) throw DomainError("ZpmRing: modulus too large");
}

std::uint64_t ZpmRing::reduce(const BigInt& a) const {
  BigInt r = a % mod_;
  if (r < 0) r += mod_;
  return r.convert_to<std::uint64_t>();
}

std::uint64_t ZpmRing::reduce(long long a) const {
  long long r = a % static_cast<long long>(mod_);
  if (r < 0) r += static_cast<long long>(mod_);
  return static_cast<std::uint64_t>(r);
}

std::uint64_t ZpmRing::mul(std::uint64_t a, std::uint64_t b) const { return (a * b) % mod_; }

std::uint64_t ZpmRing::pow(std::uint64_t a, long long e) const {
  if (e < 0) {
    a = inverse(a);
    e = -e;
  }
  std::uint64_t r = 1 % mod_;
  a %= mod_;
  while (e > 0) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

std::uint64_t ZpmRing::inverse(std::uint64_t a) const {
  if (!is_unit(a)) throw DomainError("ZpmRing: " + std::to_string(a) + " is not a unit");
  // extended Euclid on signed values
  long long r0 = static_cast<long long>(mod_), r1 = static_cast<long long>(a % mod_);
  long long s0 = 0, s1 = 1;
  while (r1 != 0) {
    const long long q = r0 / r1;
    std::tie(r0, r1) = std::make_pair(r1, r0 - q * r1);
    std::tie(s0, s1) = std::make_pair(s1, s0 - q * s1);
  }
  return reduce(s0);
}

std::uint64_t ZpmRing::order_of(std::uint64_t a) const {
  if (!is_unit(a)) throw DomainError("ZpmRing: order of a non-unit");
  std::uint64_t x = a % mod_, k = 1;
  while (x != 1 % mod_) {
    x = mul(x, a);
    ++k;
  }
  return k;
}

// ---------------------------------------------------------------------------
// Polynomials over F_p

namespace fp {

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly from_integer_poly(const std::vector<BigInt>& coeffs, std::uint64_t p) {
  Poly out;
  out.reserve(coeffs.size());
  for (const auto& c : coeffs) {
    BigInt r = c % p;
    if (r < 0) r += p;
    out.push_back(r.convert_to<std::uint64_t>());
  }
  trim(out);
  return out;
}

Poly add(const Poly& a, const Poly& b, std::uint64_t p) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = (r[i] + b[i]) % p;
  trim(r);
  return r;
}

Poly sub(const Poly& a, const Poly& b, std::uint64_t p) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = (r[i] + p - b[i]) % p;
  trim(r);
  return r;
}

Poly mul(const Poly& a, const Poly& b, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  }
  trim(r);
  return r;
}

namespace {
std::uint64_t inv_mod_p(std::uint64_t a, std::uint64_t p) {
  std::uint64_t r = 1, base = a % p, e = p - 2;
  while (e > 0) {
    if (e & 1) r = r * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return r;
}

// Divides in place, leaves remainder in `a`, returns quotient.
Poly divmod(Poly& a, const Poly& b, std::uint64_t p) {
  if (b.empty()) throw DomainError("fp::divmod: division by zero polynomial");
  trim(a);
  if (a.size() < b.size()) return {};
  const std::uint64_t lead_inv = inv_mod_p(b.back(), p);
  Poly q(a.size() - b.size() + 1, 0);
  for (std::size_t i = a.size(); i-- >= b.size();) {
    const std::uint64_t c = a[i] * lead_inv % p;
    q[i - b.size() + 1] = c;
    if (c != 0)
      for (std::size_t j = 0; j < b.size(); ++j) {
        auto& slot = a[i - b.size() + 1 + j];
        slot = (slot + p - c * b[j] % p) % p;
      }
    if (i == b.size() - 1) break;
  }
  trim(a);
  trim(q);
  return q;
}
}  // namespace

Poly mod(Poly a, const Poly& b, std::uint64_t p) {
  divmod(a, b, p);
  return a;
}

Poly div(Poly a, const Poly& b, std::uint64_t p) { return divmod(a, b, p); }

Poly gcd(Poly a, Poly b, std::uint64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    const std::uint64_t inv = inv_mod_p(a.back(), p);
    for (auto& c : a) c = c * inv % p;
  }
  return a;
}

Poly powmod(Poly base, std::uint64_t e, const Poly& modulus, std::uint64_t p) {
  Poly r{1};
  r = mod(r, modulus, p);
  base = mod(std::move(base), modulus, p);
  while (e > 0) {
    if (e & 1) r = mod(mul(r, base, p), modulus, p);
    base = mod(mul(base, base, p), modulus, p);
    e >>= 1;
  }
  return r;
}

namespace {
// x^{p^k} mod f by repeated p-th powering.
Poly x_pow_p_pow(unsigned k, const Poly& f, std::uint64_t p) {
  Poly x = mod(Poly{0, 1}, f, p);
  for (unsigned i = 0; i < k; ++i) x = powmod(x, p, f, p);
  return x;
}
}  // namespace

bool is_irreducible(const Poly& f, std::uint64_t p) {
  if (f.size() < 2) return false;
  const unsigned h = static_cast<unsigned>(f.size() - 1);
  const Poly x = mod(Poly{0, 1}, f, p);
  if (x_pow_p_pow(h, f, p) != x) return false;
  for (std::uint64_t q : prime_factors(h)) {
    const Poly g = gcd(f, sub(x_pow_p_pow(h / static_cast<unsigned>(q), f, p), x, p), p);
    if (g.size() != 1) return false;
  }
  return true;
}

std::vector<unsigned> factor_degrees(Poly f, std::uint64_t p) {
  trim(f);
  std::vector<unsigned> degrees;
  if (f.size() < 2) return degrees;
  Poly xp{0, 1};  // x^{p^i} mod f, tracked as f shrinks
  for (unsigned i = 1; f.size() >= 2; ++i) {
    xp = powmod(xp, p, f, p);
    Poly g = gcd(f, sub(xp, mod(Poly{0, 1}, f, p), p), p);
    if (g.size() >= 2) {
      degrees.push_back(i);
      // strip every factor of degree i, including repeated ones
      for (;;) {
        f = div(f, g, p);
        Poly again = gcd(f, g, p);
        if (again.size() < 2) break;
        g = std::move(again);
      }
      xp = mod(xp, f, p);
    }
    if (2 * (i + 1) > f.size() - 1 && f.size() >= 2) {
      // what remains is irreducible
      degrees.push_back(static_cast<unsigned>(f.size() - 1));
      break;
    }
  }
  std::sort(degrees.begin(), degrees.end());
  degrees.erase(std::unique(degrees.begin(), degrees.end()), degrees.end());
  return degrees;
}

}  // namespace fp

// ---------------------------------------------------------------------------
// FphField

FphField::FphField(std::uint64_t p, unsigned h) : p_(p), h_(h) {
  if (!is_prime(p)) throw DomainError("FphField: " + std::to_string(p) + " is not prime");
  if (h == 0) throw DomainError("FphField: h must be positive");
  size_ = ipow(p, h);
  if (size_ > (std::uint64_t{1} << 24)) throw DomainError("FphField: field too large");
  if (h == 1) {
    modulus_ = {0, 1};
    return;
  }
  for (std::uint64_t code = 0; code < size_; ++code) {
    fp::Poly f(h + 1, 0);
    std::uint64_t c = code;
    for (unsigned i = 0; i < h; ++i) {
      f[i] = c % p;
      c /= p;
    }
    f[h] = 1;
    if (fp::is_irreducible(f, p)) {
      modulus_ = std::move(f);
      return;
    }
  }
  throw DomainError("FphField: no irreducible polynomial found");
}

void FphField::check(Element a) const {
  if (a >= size_) throw DomainError("FphField: element code " + std::to_string(a) + " is not in F_" + std::to_string(size_));
}

std::vector<std::uint64_t> FphField::digits(Element a) const {
  std::vector<std::uint64_t> d(h_, 0);
  for (unsigned i = 0; i < h_; ++i) {
    d[i] = a % p_;
    a = static_cast<Element>(a / p_);
  }
  return d;
}

FphField::Element FphField::from_digits(const std::vector<std::uint64_t>& d) const {
  std::uint64_t code = 0;
  for (std::size_t i = d.size(); i-- > 0;) code = code * p_ + d[i] % p_;
  return static_cast<Element>(code);
}

FphField::Element FphField::from_int(long long a) const {
  long long r = a % static_cast<long long>(p_);
  if (r < 0) r += static_cast<long long>(p_);
  return static_cast<Element>(r);
}

FphField::Element FphField::from_integer(const BigInt& a) const {
  BigInt r = a % p_;
  if (r < 0) r += p_;
  return r.convert_to<Element>();
}

FphField::Element FphField::add(Element a, Element b) const {
  std::uint64_t code = 0, mult = 1;
  for (unsigned i = 0; i < h_; ++i) {
    code += ((a % p_ + b % p_) % p_) * mult;
    a = static_cast<Element>(a / p_);
    b = static_cast<Element>(b / p_);
    mult *= p_;
  }
  return static_cast<Element>(code);
}

FphField::Element FphField::neg(Element a) const {
  std::uint64_t code = 0, mult = 1;
  for (unsigned i = 0; i < h_; ++i) {
    code += ((p_ - a % p_) % p_) * mult;
    a = static_cast<Element>(a / p_);
    mult *= p_;
  }
  return static_cast<Element>(code);
}

FphField::Element FphField::sub(Element a, Element b) const { return add(a, neg(b)); }

FphField::Element FphField::mul(Element a, Element b) const {
  const fp::Poly pa = [&] { auto d = digits(a); fp::trim(d); return d; }();
  const fp::Poly pb = [&] { auto d = digits(b); fp::trim(d); return d; }();
  fp::Poly r = fp::mod(fp::mul(pa, pb, p_), modulus_, p_);
  r.resize(h_, 0);
  return from_digits(r);
}

FphField::Element FphField::pow(Element a, long long e) const {
  if (e < 0) {
    a = inverse(a);
    e = -e;
  }
  Element r = one();
  while (e > 0) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

FphField::Element FphField::inverse(Element a) const {
  if (a == 0) throw DomainError("FphField: inverse of zero");
  return pow(a, static_cast<long long>(size_ - 2));
}

std::uint64_t FphField::order_of(Element a) const {
  if (a == 0) throw DomainError("FphField: order of zero");
  Element x = a;
  std::uint64_t k = 1;
  while (x != one()) {
    x = mul(x, a);
    ++k;
  }
  return k;
}

std::uint64_t FphField::trace(Element a) const {
  check(a);
  Element sum = 0, x = a;
  for (unsigned i = 0; i < h_; ++i) {
    sum = add(sum, x);
    x = frobenius(x);
  }
  if (sum >= p_) throw ConsistencyError("FphField: trace left the prime field");
  return sum;
}

std::uint64_t FphField::trace_pairing(Element w, Element v) const {
  check(w);
  check(v);
  return trace(mul(w, v));
}

std::string FphField::element_to_string(Element a) const {
  const auto d = digits(a);
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = d.size(); i-- > 0;) {
    if (d[i] == 0) continue;
    if (!first) os << "+";
    first = false;
    if (i == 0 || d[i] != 1) os << d[i];
    if (i >= 1) os << "x";
    if (i >= 2) os << "^" << i;
  }
  return first ? "0" : os.str();
}

// ---------------------------------------------------------------------------

namespace {
template <class PowFn>
bool has_exact_order(std::uint64_t n, PowFn&& pow_is_one) {
  if (!pow_is_one(n)) return false;
  for (std::uint64_t q : prime_factors(n))
    if (pow_is_one(n / q)) return false;
  return true;
}
}  // namespace

std::uint64_t unit_of_order(const ZpmRing& ring, std::uint64_t n) {
  if (n == 0 || (ring.p() - 1) % n != 0)
    throw NoSuchUnit("no unit of order " + std::to_string(n) + " in Z_" + std::to_string(ring.modulus()) +
                     " with 1 - r^v invertible (need n | p-1)");
  for (std::uint64_t r = 1; r < ring.modulus(); ++r) {
    if (!ring.is_unit(r)) continue;
    if (!has_exact_order(n, [&](std::uint64_t e) { return ring.pow(r, static_cast<long long>(e)) == 1 % ring.modulus(); }))
      continue;
    bool ok = true;
    for (std::uint64_t v = 1; v < n && ok; ++v) ok = ring.is_unit(ring.sub(1, ring.pow(r, static_cast<long long>(v))));
    if (ok) return r;
  }
  throw NoSuchUnit("no unit of order " + std::to_string(n) + " in Z_" + std::to_string(ring.modulus()));
}

FphField::Element unit_of_order(const FphField& field, std::uint64_t n) {
  if (n == 0 || (field.size() - 1) % n != 0)
    throw NoSuchUnit("no unit of order " + std::to_string(n) + " in F_" + std::to_string(field.size()) +
                     " (need n | p^h-1)");
  for (std::uint64_t code = 1; code < field.size(); ++code) {
    const auto r = static_cast<FphField::Element>(code);
    if (has_exact_order(n, [&](std::uint64_t e) { return field.pow(r, static_cast<long long>(e)) == field.one(); }))
      return r;
  }
  throw NoSuchUnit("no unit of order " + std::to_string(n) + " in F_" + std::to_string(field.size()));
}

unsigned kernel_exponent_zpm(const ZpmRing& ring, const IntegerMatrix& lift) {
  const std::vector<BigInt> diag = snf(lift);
  const int m = static_cast<int>(ring.m());
  unsigned omega = 0;
  for (const auto& s : diag) omega += static_cast<unsigned>(valuation(s, ring.p()).min_with(m));
  omega += ring.m() * static_cast<unsigned>(lift.cols() - diag.size());
  return omega;
}

unsigned kernel_dim_fph(const FphField& field, FphMatrix mat, std::size_t cols) {
  const std::size_t rows = mat.size();
  for (const auto& row : mat)
    if (row.size() != cols) throw DimensionError("kernel_dim_fph: ragged matrix");
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rank;
    while (piv < rows && mat[piv][c] == field.zero()) ++piv;
    if (piv == rows) continue;
    std::swap(mat[piv], mat[rank]);
    const auto inv = field.inverse(mat[rank][c]);
    for (std::size_t j = c; j < cols; ++j) mat[rank][j] = field.mul(mat[rank][j], inv);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == rank || mat[i][c] == field.zero()) continue;
      const auto factor = mat[i][c];
      for (std::size_t j = c; j < cols; ++j) mat[i][j] = field.sub(mat[i][j], field.mul(factor, mat[rank][j]));
    }
    ++rank;
  }
  return static_cast<unsigned>(cols - rank);
}

}  // namespace sieve
