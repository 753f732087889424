#include "sieve/exactalg.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <utility>

namespace sieve {

BigInt gcd(const BigInt& a, const BigInt& b) {
  BigInt x = abs(a);
  BigInt y = abs(b);
  while (y != 0) {
    BigInt r = x % y;
    x = std::move(y);
    y = std::move(r);
  }
  return x;
}

std::int64_t gcd(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }

std::int64_t lcm(std::int64_t a, std::int64_t b) { return std::lcm(a, b); }

std::string to_string(const BigInt& v) { return v.str(); }

std::string to_string(const Rational& v) {
  if (denominator(v) == 1) return numerator(v).str();
  return numerator(v).str() + "/" + denominator(v).str();
}

// ---------------------------------------------------------------------------
// LaurentPolynomial

LaurentPolynomial::LaurentPolynomial(const BigInt& constant) {
  if (constant != 0) coeffs_.emplace(0, constant);
}

LaurentPolynomial::LaurentPolynomial(long long constant) : LaurentPolynomial(BigInt(constant)) {}

LaurentPolynomial LaurentPolynomial::monomial(const BigInt& coeff, int exponent) {
  LaurentPolynomial p;
  p.add_term(exponent, coeff);
  return p;
}

LaurentPolynomial LaurentPolynomial::from_coeffs(int low, std::initializer_list<long long> coeffs) {
  LaurentPolynomial p;
  int e = low;
  for (long long c : coeffs) p.add_term(e++, BigInt(c));
  return p;
}

LaurentPolynomial LaurentPolynomial::from_coeffs(int low, const std::vector<BigInt>& coeffs) {
  LaurentPolynomial p;
  int e = low;
  for (const auto& c : coeffs) p.add_term(e++, c);
  return p;
}

void LaurentPolynomial::add_term(int exponent, const BigInt& c) {
  if (c == 0) return;
  auto [it, inserted] = coeffs_.emplace(exponent, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) coeffs_.erase(it);
  }
}

int LaurentPolynomial::min_degree() const {
  if (is_zero()) throw DomainError("degree of the zero polynomial");
  return coeffs_.begin()->first;
}

int LaurentPolynomial::max_degree() const {
  if (is_zero()) throw DomainError("degree of the zero polynomial");
  return coeffs_.rbegin()->first;
}

BigInt LaurentPolynomial::coeff(int exponent) const {
  auto it = coeffs_.find(exponent);
  return it == coeffs_.end() ? BigInt(0) : it->second;
}

BigInt LaurentPolynomial::leading_coeff() const {
  if (is_zero()) throw DomainError("leading coefficient of the zero polynomial");
  return coeffs_.rbegin()->second;
}

BigInt LaurentPolynomial::eval_at_one() const {
  BigInt s = 0;
  for (const auto& [e, c] : coeffs_) s += c;
  return s;
}

LaurentPolynomial LaurentPolynomial::shifted(int s) const {
  LaurentPolynomial r;
  for (const auto& [e, c] : coeffs_) r.coeffs_.emplace_hint(r.coeffs_.end(), e + s, c);
  return r;
}

LaurentPolynomial LaurentPolynomial::mirrored() const {
  LaurentPolynomial r;
  for (const auto& [e, c] : coeffs_) r.coeffs_.emplace(-e, c);
  return r;
}

std::vector<BigInt> LaurentPolynomial::to_polynomial() const {
  if (is_zero()) return {};
  const int lo = min_degree();
  std::vector<BigInt> out(static_cast<std::size_t>(max_degree() - lo + 1));
  for (const auto& [e, c] : coeffs_) out[static_cast<std::size_t>(e - lo)] = c;
  return out;
}

LaurentPolynomial& LaurentPolynomial::operator+=(const LaurentPolynomial& o) {
  for (const auto& [e, c] : o.coeffs_) add_term(e, c);
  return *this;
}

LaurentPolynomial& LaurentPolynomial::operator-=(const LaurentPolynomial& o) {
  for (const auto& [e, c] : o.coeffs_) add_term(e, -c);
  return *this;
}

LaurentPolynomial operator*(const LaurentPolynomial& a, const LaurentPolynomial& b) {
  LaurentPolynomial r;
  for (const auto& [ea, ca] : a.coeffs_)
    for (const auto& [eb, cb] : b.coeffs_) r.add_term(ea + eb, ca * cb);
  return r;
}

LaurentPolynomial& LaurentPolynomial::operator*=(const LaurentPolynomial& o) {
  *this = *this * o;
  return *this;
}

LaurentPolynomial LaurentPolynomial::operator-() const {
  LaurentPolynomial r = *this;
  for (auto& [e, c] : r.coeffs_) c = -c;
  return r;
}

std::string LaurentPolynomial::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    const int e = it->first;
    BigInt c = it->second;
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    c = abs(c);
    first = false;
    if (e == 0) {
      os << c;
      continue;
    }
    if (c != 1) os << c << "*";
    os << "t";
    if (e != 1) os << "^" << e;
  }
  return os.str();
}

// ---------------------------------------------------------------------------

LaurentPolynomial exact_divide(const LaurentPolynomial& a, const LaurentPolynomial& b) {
  if (b.is_zero()) throw DomainError("division by the zero polynomial");
  if (a.is_zero()) return {};
  std::vector<BigInt> num = a.to_polynomial();
  const std::vector<BigInt> den = b.to_polynomial();
  if (num.size() < den.size()) throw DomainError("inexact polynomial division");
  const BigInt& lead = den.back();
  const std::size_t qdeg = num.size() - den.size();
  std::vector<BigInt> quot(qdeg + 1);
  for (std::size_t i = qdeg + 1; i-- > 0;) {
    const BigInt& top = num[i + den.size() - 1];
    if (top == 0) continue;
    if (top % lead != 0) throw DomainError("inexact polynomial division");
    BigInt q = top / lead;
    for (std::size_t j = 0; j < den.size(); ++j) num[i + j] -= q * den[j];
    quot[i] = std::move(q);
  }
  for (const auto& c : num)
    if (c != 0) throw DomainError("inexact polynomial division");
  return LaurentPolynomial::from_coeffs(a.min_degree() - b.min_degree(), quot);
}

LaurentPolynomial det_laurent(const LaurentMatrix& input) {
  const std::size_t n = input.size();
  for (const auto& row : input)
    if (row.size() != n) throw DimensionError("det_laurent: matrix is not square");
  if (n == 0) return LaurentPolynomial(1);

  LaurentMatrix m = input;
  LaurentPolynomial prev(1);
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && m[swap_row][k].is_zero()) ++swap_row;
      if (swap_row == n) return {};
      std::swap(m[k], m[swap_row]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        LaurentPolynomial v = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        m[i][j] = exact_divide(v, prev);
      }
      m[i][k] = {};
    }
    prev = m[k][k];
  }
  LaurentPolynomial det = m[n - 1][n - 1];
  return negate ? -det : det;
}

LaurentPolynomial cyclotomic_poly(unsigned n) {
  if (n == 0) throw DomainError("cyclotomic_poly: n must be positive");
  // t^n - 1 divided by every Phi_d with d | n, d < n.
  LaurentPolynomial p = LaurentPolynomial::monomial(1, static_cast<int>(n)) - LaurentPolynomial(1);
  for (unsigned d = 1; d < n; ++d)
    if (n % d == 0) p = exact_divide(p, cyclotomic_poly(d));
  return p;
}

BigInt resultant(const LaurentPolynomial& p, const LaurentPolynomial& q) {
  if (p.is_zero() || q.is_zero()) throw DomainError("resultant of the zero polynomial");
  const std::vector<BigInt> a = p.to_polynomial();
  const std::vector<BigInt> b = q.to_polynomial();
  const std::size_t dp = a.size() - 1;
  const std::size_t dq = b.size() - 1;
  const std::size_t size = dp + dq;
  IntegerMatrix syl(size, size);
  // dq rows of p's coefficients, dp rows of q's, both descending.
  for (std::size_t r = 0; r < dq; ++r)
    for (std::size_t j = 0; j <= dp; ++j) syl(r, r + j) = a[dp - j];
  for (std::size_t r = 0; r < dp; ++r)
    for (std::size_t j = 0; j <= dq; ++j) syl(dq + r, r + j) = b[dq - j];
  return det_integer(std::move(syl));
}

// ---------------------------------------------------------------------------
// IntegerMatrix

IntegerMatrix::IntegerMatrix(std::initializer_list<std::initializer_list<long long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw DimensionError("IntegerMatrix: ragged initializer");
    for (long long v : row) data_.emplace_back(v);
  }
}

BigInt det_integer(IntegerMatrix m) {
  if (m.rows() != m.cols()) throw DimensionError("det_integer: matrix is not square");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  BigInt prev = 1;
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && m(swap_row, k) == 0) ++swap_row;
      if (swap_row == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(swap_row, j));
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
      m(i, k) = 0;
    }
    prev = m(k, k);
  }
  return negate ? BigInt(-m(n - 1, n - 1)) : m(n - 1, n - 1);
}

std::vector<BigInt> snf(const IntegerMatrix& input) {
  IntegerMatrix m = input;
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  const std::size_t diag = std::min(rows, cols);
  std::vector<BigInt> out(diag);

  auto swap_rows = [&](std::size_t a, std::size_t b) {
    if (a != b)
      for (std::size_t j = 0; j < cols; ++j) std::swap(m(a, j), m(b, j));
  };
  auto swap_cols = [&](std::size_t a, std::size_t b) {
    if (a != b)
      for (std::size_t i = 0; i < rows; ++i) std::swap(m(i, a), m(i, b));
  };

  for (std::size_t t = 0; t < diag; ++t) {
    for (;;) {
      // Smallest nonzero entry of the trailing block becomes the pivot.
      bool found = false;
      std::size_t pr = t, pc = t;
      BigInt best;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (m(i, j) != 0 && (!found || abs(m(i, j)) < best)) {
            found = true;
            best = abs(m(i, j));
            pr = i;
            pc = j;
          }
      if (!found) return out;  // remaining block is zero
      swap_rows(t, pr);
      swap_cols(t, pc);

      bool clean = true;
      const BigInt piv = m(t, t);
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (m(i, t) == 0) continue;
        BigInt q = m(i, t) / piv;
        for (std::size_t j = t; j < cols; ++j) m(i, j) -= q * m(t, j);
        if (m(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (m(t, j) == 0) continue;
        BigInt q = m(t, j) / piv;
        for (std::size_t i = t; i < rows; ++i) m(i, j) -= q * m(i, t);
        if (m(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // Pivot must divide the whole trailing block for the divisibility chain.
      bool divides = true;
      for (std::size_t i = t + 1; i < rows && divides; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (m(i, j) % piv != 0) {
            for (std::size_t jj = t; jj < cols; ++jj) m(t, jj) += m(i, jj);
            divides = false;
            break;
          }
      if (divides) break;
    }
    out[t] = abs(m(t, t));
  }
  return out;
}

}  // namespace sieve
