#include "sieve/dwcount.hpp"

#include <map>
#include <numeric>
#include <regex>
#include <sstream>

#include "sieve/alexander.hpp"

namespace sieve {

// ---------------------------------------------------------------------------
// SeifertData

SeifertData::SeifertData(int g, std::vector<std::pair<long long, long long>> l) : genus(g), legs(std::move(l)) {
  if (genus < 0) throw DomainError("genus must be nonnegative");
  for (std::size_t j = 0; j < legs.size(); ++j) {
    const auto [a, b] = legs[j];
    if (a < 1) throw DomainError("leg " + std::to_string(j + 1) + ": a must be positive");
    if (std::gcd(a, b) != 1)
      throw DomainError("leg " + std::to_string(j + 1) + ": gcd(" + std::to_string(a) + ", " + std::to_string(b) + ") != 1");
  }
}

SeifertData SeifertData::parse(std::string_view text) {
  std::string s(text);
  int genus = 0;
  static const std::regex genus_re(R"(\s*g\s*=\s*(\d+)\s*(?:;(.*))?)");
  std::smatch m;
  if (std::regex_match(s, m, genus_re)) {
    genus = std::stoi(m[1].str());
    s = m[2].matched ? m[2].str() : "";
  }
  std::vector<std::pair<long long, long long>> legs;
  static const std::regex leg_re(R"(\s*([+-]?\d+)\s*/\s*([+-]?\d+)\s*)");
  std::stringstream ss(s);
  std::string item;
  std::size_t idx = 0;
  if (s.find_first_not_of(" \t") != std::string::npos) {
    while (std::getline(ss, item, ',')) {
      std::smatch lm;
      if (!std::regex_match(item, lm, leg_re)) throw ParseError("leg must look like a/b", "leg " + std::to_string(idx + 1));
      try {
        legs.emplace_back(std::stoll(lm[1].str()), std::stoll(lm[2].str()));
      } catch (const std::out_of_range&) {
        throw ParseError("leg value out of range", "leg " + std::to_string(idx + 1));
      }
      ++idx;
    }
  }
  try {
    return SeifertData(genus, std::move(legs));
  } catch (const DomainError& e) {
    throw ParseError(e.what(), "seifert data");
  }
}

std::string SeifertData::to_string() const {
  std::string s;
  if (genus != 0) s = "g=" + std::to_string(genus) + ";";
  for (std::size_t j = 0; j < legs.size(); ++j) {
    if (j) s += ",";
    s += std::to_string(legs[j].first) + "/" + std::to_string(legs[j].second);
  }
  return s;
}

// ---------------------------------------------------------------------------
// Surgery counts

namespace {

std::uint64_t gcd_u(std::uint64_t a, long long k) {
  return static_cast<std::uint64_t>(std::gcd(static_cast<long long>(a), k));  // gcd(a, 0) = a
}

LaurentMatrix reduced_fox_matrix(const GroupPresentation& pres) {
  LaurentMatrix full = fox_matrix(pres);
  for (auto& row : full) row.pop_back();
  if (full.size() != static_cast<std::size_t>(pres.generator_count - 1))
    throw DimensionError("surgery count needs a presentation with generator_count - 1 relators");
  return full;
}

std::uint64_t eval_zpm(const LaurentPolynomial& q, std::uint64_t t, const ZpmRing& ring) {
  std::uint64_t acc = 0;
  for (const auto& [e, c] : q.coeffs()) acc = ring.add(acc, ring.mul(ring.reduce(c), ring.pow(t, e)));
  return acc;
}

FphField::Element eval_fph(const LaurentPolynomial& q, FphField::Element t, const FphField& field) {
  FphField::Element acc = 0;
  for (const auto& [e, c] : q.coeffs()) acc = field.add(acc, field.mul(field.from_integer(c), field.pow(t, e)));
  return acc;
}

void check_slope_group(const MetabelianGroup& g, bool want_field) {
  if (g.is_zpm() == want_field)
    throw DomainError(std::string("this count needs a ") + (want_field ? "F_{p^h}" : "Z_{p^m}") + " target");
}

}  // namespace

Word surgery_relator(const GroupPresentation& pres, const SurgerySlope& slope) {
  if (!pres.longitude) throw DomainError("presentation carries no longitude");
  return word_concat(word_power(Word{pres.preferred_meridian}, slope.k), word_power(*pres.longitude, slope.l));
}

SurgeryCountBreakdown surgery_count_zpm(const GroupPresentation& pres, const SurgerySlope& slope, const MetabelianGroup& g) {
  check_slope_group(g, false);
  const ZpmRing& ring = *g.ring();
  const LaurentMatrix mprime = reduced_fox_matrix(pres);
  const LaurentPolynomial delta = alexander_poly(pres);
  SurgeryCountBreakdown out;
  out.slope = slope;
  out.group = g.spec().to_string();
  out.p = g.p();
  out.exponent = g.exponent();
  out.n = g.n();
  const std::size_t dim = mprime.size();
  for (std::uint64_t v = 1; v < g.n(); ++v) {
    if ((static_cast<__int128>(slope.k) * v) % static_cast<long long>(g.n()) != 0) continue;
    const std::uint64_t t = ring.pow(g.r(), static_cast<long long>(v));
    KernelRecord rec;
    rec.v = v;
    rec.delta_vanishes = eval_zpm(delta, t, ring) % ring.p() == 0;
    IntegerMatrix lift(dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j) lift(i, j) = eval_zpm(mprime[i][j], t, ring);
    rec.omega = kernel_exponent_zpm(ring, lift);
    if (!rec.delta_vanishes && rec.omega != 0) throw ConsistencyError("nonzero kernel at a non-root of the Alexander polynomial");
    if (rec.delta_vanishes) ++out.c;
    out.records.push_back(rec);
  }
  out.total = out.reassemble();
  return out;
}

SurgeryCountBreakdown surgery_count_fph(const GroupPresentation& pres, const SurgerySlope& slope, const MetabelianGroup& g) {
  check_slope_group(g, true);
  const FphField& field = *g.field();
  const LaurentMatrix mprime = reduced_fox_matrix(pres);
  const LaurentPolynomial delta = alexander_poly(pres);
  SurgeryCountBreakdown out;
  out.slope = slope;
  out.group = g.spec().to_string();
  out.field = true;
  out.p = g.p();
  out.exponent = g.exponent();
  out.n = g.n();
  const std::size_t dim = mprime.size();
  for (std::uint64_t v = 1; v < g.n(); ++v) {
    if ((static_cast<__int128>(slope.k) * v) % static_cast<long long>(g.n()) != 0) continue;
    const auto t = field.pow(static_cast<FphField::Element>(g.r()), static_cast<long long>(v));
    KernelRecord rec;
    rec.v = v;
    rec.delta_vanishes = eval_fph(delta, t, field) == field.zero();
    FphMatrix mat(dim, std::vector<FphField::Element>(dim, 0));
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j) mat[i][j] = eval_fph(mprime[i][j], t, field);
    rec.omega = kernel_dim_fph(field, std::move(mat), dim);
    if (!rec.delta_vanishes && rec.omega != 0) throw ConsistencyError("nonzero kernel at a non-root of the Alexander polynomial");
    if (rec.delta_vanishes) ++out.c;
    out.records.push_back(rec);
  }
  out.total = out.reassemble();
  return out;
}

SurgeryCountBreakdown surgery_count(const GroupPresentation& pres, const SurgerySlope& slope, const MetabelianGroup& g) {
  return g.is_zpm() ? surgery_count_zpm(pres, slope, g) : surgery_count_fph(pres, slope, g);
}

BigInt SurgeryCountBreakdown::reassemble() const {
  const BigInt nk = gcd_u(n, slope.k);
  BigInt sum = 0;
  for (const auto& r : records)
    if (r.delta_vanishes) sum += pow(BigInt(p), (field ? exponent : 1u) * r.omega);
  const BigInt c_big = c;
  if (!field) {
    const std::uint64_t pm = ipow(p, exponent);
    return BigInt(gcd_u(pm, slope.k)) + BigInt(pm) * (nk - 1 - c_big + sum);
  }
  const BigInt ph = pow(BigInt(p), exponent);
  const bool p_divides_k = slope.k % static_cast<long long>(p) == 0;
  return BigInt(1) + (p_divides_k ? ph - 1 : BigInt(0)) + ph * (nk - 1 - c_big + sum);
}

// ---------------------------------------------------------------------------
// Seifert presentation

GroupPresentation seifert_presentation(const SeifertData& s) {
  GroupPresentation pres;
  const int L = static_cast<int>(s.legs.size());
  const int h = L + 1;
  pres.generator_count = L + 1 + 2 * s.genus;
  pres.preferred_meridian = h;
  Word product;
  for (int j = 1; j <= L; ++j) {
    pres.relators.push_back({j, h, -j, -h});
    pres.relators.push_back(word_concat(word_power(Word{j}, s.legs[j - 1].first), word_power(Word{h}, s.legs[j - 1].second)));
    product.push_back(j);
  }
  for (int i = 0; i < s.genus; ++i) {
    const int alpha = L + 2 + 2 * i, beta = alpha + 1;
    product.insert(product.end(), {alpha, beta, -alpha, -beta});
    pres.relators.push_back({alpha, h, -alpha, -h});
    pres.relators.push_back({beta, h, -beta, -h});
  }
  pres.relators.push_back(product);
  return pres;
}

// ---------------------------------------------------------------------------
// Character sum

namespace {

enum Block { kAlpha = 0, kBeta = 1, kIdLinear = 2, kIdInduced = 3 };

// Sum over lambda of weight(lambda) * prod_j S_j(lambda), where
// S_j = sum_{z^{a_j} = x} chi(z^{-b_j}) is an integral root sum and
// weight = (#Cen/dim)^{2g-2} / dim^L. Accumulated per weight and block.
std::array<CyclotomicNumber, 4> charsum_by_block(const SeifertData& s, const MetabelianGroup& g) {
  using E = MetabelianGroup::Element;
  const unsigned N = g.root_order();
  const std::size_t L = s.legs.size();
  const std::uint64_t order = g.order();

  // Per leg: bucket of z^{-b} values keyed by z^a.
  std::vector<std::vector<std::vector<E>>> buckets(L, std::vector<std::vector<E>>(order));
  for (std::size_t j = 0; j < L; ++j)
    for (std::uint64_t zi = 0; zi < order; ++zi) {
      const auto z = static_cast<E>(zi);
      buckets[j][g.pow(z, s.legs[j].first)].push_back(g.pow(z, -s.legs[j].second));
    }

  // Character values per class as root sums.
  const auto& classes = g.classes();
  const auto& chars = g.characters();
  std::vector<std::vector<RootSum>> char_vals(chars.size());
  for (std::size_t c = 0; c < chars.size(); ++c)
    for (const auto& cl : classes) char_vals[c].push_back(g.character_value(c, cl.representative));

  std::array<std::map<Rational, RootSum>, 4> acc;
  const int power = 2 * s.genus - 2;
  auto weight = [&](std::uint64_t cen, std::uint64_t dim) {
    Rational base(static_cast<long long>(cen), static_cast<long long>(dim));
    Rational w = 1;
    const Rational factor = power >= 0 ? base : Rational(1) / base;
    for (int i = 0; i < std::abs(power); ++i) w *= factor;
    for (std::size_t j = 0; j < L; ++j) w /= static_cast<long long>(dim);
    return w;
  };
  auto add = [&](Block blk, const Rational& w, const RootSum& term) {
    auto it = acc[blk].find(w);
    if (it == acc[blk].end())
      acc[blk].emplace(w, term);
    else
      it->second += term;
  };

  for (const auto& lam : g.lambda_pairs()) {
    const ConjClass& cl = classes[lam.class_index];
    const E x = cl.representative;
    RootSum prod = RootSum::root(N, 0);
    bool zero = false;
    for (std::size_t j = 0; j < L && !zero; ++j) {
      RootSum sj(N);
      for (E w : buckets[j][x]) {
        if (cl.kind == ClassKind::identity)
          sj += char_vals[lam.chi][g.class_of(w)];
        else
          sj.add_root(static_cast<long long>(g.centralizer_char_exponent(lam, w)));
      }
      if (sj.is_zero()) zero = true;
      prod = prod * sj;
    }
    if (zero) continue;
    const std::uint64_t dim = g.lambda_dim(lam);
    Block blk = kAlpha;
    if (cl.kind == ClassKind::beta) blk = kBeta;
    if (cl.kind == ClassKind::identity)
      blk = chars[lam.chi].kind == IrredChar::Kind::linear ? kIdLinear : kIdInduced;
    add(blk, weight(cl.centralizer_order, dim), prod);
  }

  std::array<CyclotomicNumber, 4> out{CyclotomicNumber(N), CyclotomicNumber(N), CyclotomicNumber(N), CyclotomicNumber(N)};
  for (int b = 0; b < 4; ++b)
    for (const auto& [w, rs] : acc[b]) out[b] += rs.value() * w;
  return out;
}

}  // namespace

BigInt seifert_count_charsum(const SeifertData& s, const MetabelianGroup& g) {
  const auto blocks = charsum_by_block(s, g);
  CyclotomicNumber total(g.root_order());
  for (const auto& b : blocks) total += b;
  total *= Rational(static_cast<long long>(g.order()));
  const Rational q = total.to_rational();
  if (denominator(q) != 1) throw ConsistencyError("character sum " + to_string(q) + " is not an integer");
  return numerator(q);
}

CharsumBlocks charsum_blocks(const SeifertData& s, const MetabelianGroup& g) {
  const auto blocks = charsum_by_block(s, g);
  return {blocks[kAlpha].to_rational(), blocks[kBeta].to_rational(), blocks[kIdLinear].to_rational(),
          blocks[kIdInduced].to_rational()};
}

}  // namespace sieve
