#include "sieve/cyclotomic.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace sieve {
namespace {

// Coefficients of Phi_N, ascending, as machine integers. Cached per order.
const std::vector<std::int64_t>& phi_coeffs(unsigned order) {
  static std::mutex mu;
  static std::map<unsigned, std::vector<std::int64_t>> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(order);
  if (it != cache.end()) return it->second;
  const std::vector<BigInt> big = cyclotomic_poly(order).to_polynomial();
  std::vector<std::int64_t> small;
  small.reserve(big.size());
  for (const auto& c : big) small.push_back(c.convert_to<std::int64_t>());
  return cache.emplace(order, std::move(small)).first->second;
}

template <class T>
void reduce_in_place(unsigned order, std::vector<T>& poly) {
  const auto& phi = phi_coeffs(order);
  const std::size_t deg = phi.size() - 1;
  for (std::size_t i = poly.size(); i-- > deg;) {
    if (poly[i] == 0) continue;
    const T c = poly[i];
    for (std::size_t j = 0; j < deg; ++j)
      if (phi[j] != 0) poly[i - deg + j] -= c * phi[j];
    poly[i] = 0;
  }
  poly.resize(deg);
}

unsigned mod_order(long long k, unsigned order) {
  long long r = k % static_cast<long long>(order);
  if (r < 0) r += order;
  return static_cast<unsigned>(r);
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw ConsistencyError("RootSum: integer overflow");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw ConsistencyError("RootSum: integer overflow");
  return r;
}

}  // namespace

unsigned euler_phi(unsigned n) {
  unsigned result = n;
  for (unsigned p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    while (n % p == 0) n /= p;
    result -= result / p;
  }
  if (n > 1) result -= result / n;
  return result;
}

// ---------------------------------------------------------------------------
// CyclotomicNumber

CyclotomicNumber::CyclotomicNumber(unsigned order) : order_(order) {
  if (order == 0) throw DomainError("cyclotomic order must be positive");
  coords_.assign(euler_phi(order), Rational(0));
}

std::vector<Rational> CyclotomicNumber::reduce(unsigned order, std::vector<Rational> poly) {
  const std::size_t deg = euler_phi(order);
  if (poly.size() < deg) poly.resize(deg, Rational(0));
  reduce_in_place(order, poly);
  return poly;
}

CyclotomicNumber CyclotomicNumber::from_rational(unsigned order, const Rational& q) {
  CyclotomicNumber c(order);
  c.coords_[0] = q;
  return c;
}

CyclotomicNumber CyclotomicNumber::zeta(unsigned order, long long k) {
  CyclotomicNumber c(order);
  std::vector<Rational> poly(order, Rational(0));
  poly[mod_order(k, order)] = 1;
  c.coords_ = reduce(order, std::move(poly));
  return c;
}

bool CyclotomicNumber::is_zero() const {
  for (const auto& c : coords_)
    if (c != 0) return false;
  return true;
}

bool CyclotomicNumber::is_rational() const {
  for (std::size_t i = 1; i < coords_.size(); ++i)
    if (coords_[i] != 0) return false;
  return true;
}

Rational CyclotomicNumber::to_rational() const {
  if (!is_rational()) throw ConsistencyError("cyclotomic value " + to_string() + " is not rational");
  return coords_[0];
}

CyclotomicNumber CyclotomicNumber::lifted(unsigned order) const {
  if (order % order_ != 0) throw DomainError("lifted: target order is not a multiple");
  if (order == order_) return *this;
  const unsigned step = order / order_;
  std::vector<Rational> poly(order, Rational(0));
  for (std::size_t i = 0; i < coords_.size(); ++i) poly[i * step] = coords_[i];
  CyclotomicNumber r(order);
  r.coords_ = reduce(order, std::move(poly));
  return r;
}

CyclotomicNumber CyclotomicNumber::conj() const {
  std::vector<Rational> poly(order_, Rational(0));
  for (std::size_t i = 0; i < coords_.size(); ++i) poly[mod_order(-static_cast<long long>(i), order_)] += coords_[i];
  CyclotomicNumber r(order_);
  r.coords_ = reduce(order_, std::move(poly));
  return r;
}

CyclotomicNumber& CyclotomicNumber::operator+=(const CyclotomicNumber& o) {
  if (o.order_ != order_) {
    const unsigned common = std::lcm(order_, o.order_);
    *this = lifted(common);
    return *this += o.lifted(common);
  }
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += o.coords_[i];
  return *this;
}

CyclotomicNumber& CyclotomicNumber::operator-=(const CyclotomicNumber& o) {
  CyclotomicNumber neg = o;
  neg *= Rational(-1);
  return *this += neg;
}

CyclotomicNumber& CyclotomicNumber::operator*=(const CyclotomicNumber& o) {
  if (o.order_ != order_) {
    const unsigned common = std::lcm(order_, o.order_);
    *this = lifted(common);
    return *this *= o.lifted(common);
  }
  std::vector<Rational> poly(2 * coords_.size(), Rational(0));
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (coords_[i] == 0) continue;
    for (std::size_t j = 0; j < o.coords_.size(); ++j)
      if (o.coords_[j] != 0) poly[i + j] += coords_[i] * o.coords_[j];
  }
  coords_ = reduce(order_, std::move(poly));
  return *this;
}

CyclotomicNumber& CyclotomicNumber::operator*=(const Rational& q) {
  for (auto& c : coords_) c *= q;
  return *this;
}

bool operator==(const CyclotomicNumber& a, const CyclotomicNumber& b) {
  if (a.order_ == b.order_) return a.coords_ == b.coords_;
  const unsigned common = std::lcm(a.order_, b.order_);
  return a.lifted(common).coords_ == b.lifted(common).coords_;
}

std::string CyclotomicNumber::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (coords_[i] == 0) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << sieve::to_string(coords_[i]) << ")";
    if (i > 0) os << "*z" << order_ << "^" << i;
  }
  return first ? "0" : os.str();
}

// ---------------------------------------------------------------------------
// RootSum

RootSum RootSum::root(unsigned order, long long k, std::int64_t mult) {
  RootSum r(order);
  r.add_root(k, mult);
  return r;
}

void RootSum::add_root(long long k, std::int64_t mult) {
  auto& slot = counts_[mod_order(k, order_)];
  slot = checked_add(slot, mult);
}

bool RootSum::is_zero() const {
  for (auto c : counts_)
    if (c != 0) return false;
  return true;
}

RootSum RootSum::conj() const {
  RootSum r(order_);
  for (unsigned k = 0; k < order_; ++k) r.counts_[mod_order(-static_cast<long long>(k), order_)] = counts_[k];
  return r;
}

RootSum& RootSum::operator+=(const RootSum& o) {
  if (o.order_ != order_) throw DomainError("RootSum: order mismatch");
  for (unsigned k = 0; k < order_; ++k) counts_[k] = checked_add(counts_[k], o.counts_[k]);
  return *this;
}

RootSum operator*(const RootSum& a, const RootSum& b) {
  if (a.order_ != b.order_) throw DomainError("RootSum: order mismatch");
  const unsigned n = a.order_;
  RootSum r(n);
  for (unsigned i = 0; i < n; ++i) {
    if (a.counts_[i] == 0) continue;
    for (unsigned j = 0; j < n; ++j) {
      if (b.counts_[j] == 0) continue;
      unsigned k = i + j;
      if (k >= n) k -= n;
      r.counts_[k] = checked_add(r.counts_[k], checked_mul(a.counts_[i], b.counts_[j]));
    }
  }
  return r;
}

CyclotomicNumber RootSum::value() const {
  std::vector<BigInt> poly(counts_.begin(), counts_.end());
  if (poly.size() < euler_phi(order_)) poly.resize(euler_phi(order_));
  reduce_in_place(order_, poly);
  CyclotomicNumber out(order_);
  for (std::size_t i = 0; i < poly.size(); ++i) out.coords_[i] = Rational(poly[i]);
  return out;
}

}  // namespace sieve
