#include "sieve/metabelian.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <regex>
#include <sstream>

namespace sieve {

// ---------------------------------------------------------------------------
// GroupSpec

GroupSpec GroupSpec::parse(std::string_view text) {
  static const std::regex re(R"(\s*(zpm|fph)\s*:\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*(?:,\s*(\d+)\s*)?)");
  const std::string s(text);
  std::smatch m;
  if (!std::regex_match(s, m, re)) throw ParseError("group spec must be zpm:p,m,n[,r] or fph:p,h,n[,r]", s);
  GroupSpec g;
  try {
    g.kind = m[1].str() == "zpm" ? Kind::zpm : Kind::fph;
    g.p = std::stoull(m[2].str());
    const auto e = std::stoull(m[3].str());
    if (e == 0 || e > 64) throw ParseError("exponent out of range", s);
    g.exponent = static_cast<unsigned>(e);
    g.n = std::stoull(m[4].str());
    if (m[5].matched) g.r = std::stoull(m[5].str());
  } catch (const std::out_of_range&) {
    throw ParseError("number out of range", s);
  }
  return g;
}

GroupSpec GroupSpec::zpm(std::uint64_t p, unsigned m, std::uint64_t n, std::optional<std::uint64_t> r) {
  return GroupSpec{Kind::zpm, p, m, n, r};
}

GroupSpec GroupSpec::fph(std::uint64_t p, unsigned h, std::uint64_t n, std::optional<std::uint64_t> r) {
  return GroupSpec{Kind::fph, p, h, n, r};
}

std::string GroupSpec::to_string() const {
  std::string s = kind == Kind::zpm ? "zpm:" : "fph:";
  s += std::to_string(p) + "," + std::to_string(exponent) + "," + std::to_string(n);
  if (r) s += "," + std::to_string(*r);
  return s;
}

const char* to_string(ClassKind k) {
  switch (k) {
    case ClassKind::identity: return "identity";
    case ClassKind::alpha: return "alpha";
    case ClassKind::beta: return "beta";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// MetabelianGroup

namespace {
constexpr std::uint64_t kMaxOrder = 4096;
}

MetabelianGroup::MetabelianGroup(const GroupSpec& spec) : spec_(spec) {
  if (spec_.n == 0) throw DomainError("n must be positive");
  if (spec_.kind == GroupSpec::Kind::zpm) {
    ring_.emplace(spec_.p, spec_.exponent);
    a_order_ = ring_->modulus();
    a_exp_ = a_order_;
    if ((spec_.p - 1) % spec_.n != 0)
      throw NoSuchUnit("Z_" + std::to_string(a_order_) + " x| Z_" + std::to_string(spec_.n) + " needs n | p-1");
    if (spec_.r) {
      const std::uint64_t r = *spec_.r % a_order_;
      if (!ring_->is_unit(r) || ring_->order_of(r) != spec_.n)
        throw DomainError("r = " + std::to_string(*spec_.r) + " does not have order " + std::to_string(spec_.n));
      for (std::uint64_t v = 1; v < spec_.n; ++v)
        if (!ring_->is_unit(ring_->sub(1, ring_->pow(r, static_cast<long long>(v)))))
          throw DomainError("1 - r^" + std::to_string(v) + " is not a unit");
      r_ = r;
    } else {
      r_ = unit_of_order(*ring_, spec_.n);
    }
  } else {
    field_.emplace(spec_.p, spec_.exponent);
    a_order_ = field_->size();
    a_exp_ = spec_.p;
    if (spec_.r) {
      if (*spec_.r == 0 || *spec_.r >= a_order_) throw DomainError("r is not a nonzero field element code");
      const auto r = static_cast<FphField::Element>(*spec_.r);
      if (field_->order_of(r) != spec_.n)
        throw DomainError("r = " + field_->element_to_string(r) + " does not have order " + std::to_string(spec_.n));
      r_ = r;
    } else {
      r_ = unit_of_order(*field_, spec_.n);
    }
  }
  if (order() > kMaxOrder) throw DomainError("group order " + std::to_string(order()) + " exceeds " + std::to_string(kMaxOrder));
  build_tables();
  build_classes();
  build_characters();
}

std::string MetabelianGroup::name() const {
  std::ostringstream os;
  if (is_zpm())
    os << "Z_" << a_order_;
  else
    os << "F_" << a_order_;
  os << " x|_" << (is_zpm() ? std::to_string(r_) : field_->element_to_string(static_cast<FphField::Element>(r_))) << " Z_"
     << spec_.n;
  return os.str();
}

void MetabelianGroup::build_tables() {
  const std::uint64_t A = a_order_, n = spec_.n;
  a_add_.assign(A * A, 0);
  a_neg_.assign(A, 0);
  pair_.assign(A * A, 0);
  phi_.assign(n * A, 0);
  for (std::uint64_t x = 0; x < A; ++x) {
    for (std::uint64_t y = 0; y < A; ++y) {
      if (ring_) {
        a_add_[x * A + y] = ring_->add(x, y);
        pair_[x * A + y] = ring_->mul(x, y);
      } else {
        const auto fx = static_cast<FphField::Element>(x), fy = static_cast<FphField::Element>(y);
        a_add_[x * A + y] = field_->add(fx, fy);
        pair_[x * A + y] = field_->trace_pairing(fx, fy);
      }
    }
    a_neg_[x] = ring_ ? ring_->sub(0, x) : field_->neg(static_cast<FphField::Element>(x));
  }
  std::uint64_t rv = 1;  // r^v
  for (std::uint64_t v = 0; v < n; ++v) {
    for (std::uint64_t x = 0; x < A; ++x)
      phi_[v * A + x] = ring_ ? ring_->mul(rv, x)
                              : field_->mul(static_cast<FphField::Element>(rv), static_cast<FphField::Element>(x));
    rv = ring_ ? ring_->mul(rv, r_) : field_->mul(static_cast<FphField::Element>(rv), static_cast<FphField::Element>(r_));
  }
  const std::uint64_t N = order();
  mul_.assign(N * N, 0);
  inv_.assign(N, 0);
  for (std::uint64_t a = 0; a < N; ++a) {
    const std::uint64_t u1 = a % A, v1 = a / A;
    for (std::uint64_t b = 0; b < N; ++b) {
      const std::uint64_t u2 = b % A, v2 = b / A;
      const std::uint64_t u = a_add(u1, phi_pow(u2, v1));
      const std::uint64_t v = (v1 + v2) % n;
      mul_[a * N + b] = static_cast<Element>(v * A + u);
    }
    const std::uint64_t vi = (n - v1) % n;
    inv_[a] = static_cast<Element>(vi * A + phi_pow(a_neg(u1), vi));
  }
}

MetabelianGroup::Element MetabelianGroup::index(GroupElement g) const {
  if (g.u >= a_order_) throw DomainError("element u out of range");
  return static_cast<Element>((g.v % spec_.n) * a_order_ + g.u);
}

GroupElement MetabelianGroup::element(Element i) const { return {u_of(i), v_of(i)}; }

MetabelianGroup::Element MetabelianGroup::pow(Element a, long long k) const {
  if (k < 0) {
    a = inv(a);
    k = -k;
  }
  Element r = identity();
  while (k > 0) {
    if (k & 1) r = mul(r, a);
    a = mul(a, a);
    k >>= 1;
  }
  return r;
}

void MetabelianGroup::build_classes() {
  const std::uint64_t N = order();
  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> cls(N, kUnset);
  std::vector<ConjClass> found;
  std::vector<std::vector<Element>> members;
  for (std::uint64_t x = 0; x < N; ++x) {
    if (cls[x] != kUnset) continue;
    std::vector<Element> orbit;
    for (std::uint64_t g = 0; g < N; ++g) {
      const Element y = conj(static_cast<Element>(g), static_cast<Element>(x));
      if (cls[y] == kUnset) {
        cls[y] = found.size();
        orbit.push_back(y);
      }
    }
    const auto key = [&](Element e) { return std::make_pair(u_of(e), v_of(e)); };
    const Element rep = *std::min_element(orbit.begin(), orbit.end(), [&](Element a, Element b) { return key(a) < key(b); });
    ConjClass c;
    c.representative = rep;
    c.size = orbit.size();
    c.centralizer_order = N / c.size;
    c.kind = rep == identity() ? ClassKind::identity : (v_of(rep) == 0 ? ClassKind::alpha : ClassKind::beta);
    found.push_back(c);
    members.push_back(std::move(orbit));
  }
  std::vector<std::size_t> perm(found.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::sort(perm.begin(), perm.end(), [&](std::size_t i, std::size_t j) {
    const auto ki = std::make_tuple(static_cast<int>(found[i].kind), u_of(found[i].representative), v_of(found[i].representative));
    const auto kj = std::make_tuple(static_cast<int>(found[j].kind), u_of(found[j].representative), v_of(found[j].representative));
    return ki < kj;
  });
  classes_.clear();
  class_of_.assign(N, 0);
  for (std::size_t i = 0; i < perm.size(); ++i) {
    classes_.push_back(found[perm[i]]);
    for (Element e : members[perm[i]]) class_of_[e] = i;
  }
}

void MetabelianGroup::build_characters() {
  const std::uint64_t A = a_order_, n = spec_.n;
  // phi-orbits of nonzero s
  std::vector<bool> seen(A, false);
  orbits_.clear();
  for (std::uint64_t s = 1; s < A; ++s) {
    if (seen[s]) continue;
    std::vector<std::uint64_t> orb;
    for (std::uint64_t v = 0; v < n; ++v) {
      const std::uint64_t t = phi_pow(s, v);
      if (!seen[t]) {
        seen[t] = true;
        orb.push_back(t);
      }
    }
    if (orb.size() != n) throw ConsistencyError("phi acts with a fixed point on A");
    orbits_.push_back(std::move(orb));
  }
  chars_.clear();
  for (std::uint64_t t = 0; t < n; ++t) {
    IrredChar c;
    c.kind = IrredChar::Kind::linear;
    c.dim = 1;
    c.param = t;
    c.label = "rho_" + std::to_string(t);
    chars_.push_back(std::move(c));
  }
  for (const auto& orb : orbits_) {
    IrredChar c;
    c.kind = IrredChar::Kind::induced;
    c.dim = n;
    c.param = orb.front();
    c.label = "ind_" + std::to_string(orb.front());
    chars_.push_back(std::move(c));
  }
  for (std::size_t i = 0; i < chars_.size(); ++i)
    for (const auto& cl : classes_) chars_[i].values.push_back(character_value(i, cl.representative).value());
}

RootSum MetabelianGroup::character_value(std::size_t chi, Element x) const {
  const unsigned N = root_order();
  RootSum out(N);
  const IrredChar& c = chars_.at(chi);
  if (c.kind == IrredChar::Kind::linear) {
    out.add_root(static_cast<long long>((c.param * v_of(x) % spec_.n) * (N / spec_.n)));
    return out;
  }
  if (v_of(x) != 0) return out;
  const std::size_t orbit = chi - spec_.n;
  const std::uint64_t u = u_of(x);
  for (std::uint64_t s : orbits_.at(orbit)) out.add_root(static_cast<long long>(pairing(s, u) * (N / a_exp_)));
  return out;
}

std::vector<LambdaPair> MetabelianGroup::lambda_pairs() const {
  std::vector<LambdaPair> out;
  for (std::size_t i = 0; i < classes_.size(); ++i) {
    std::uint64_t count = 0;
    switch (classes_[i].kind) {
      case ClassKind::identity: count = chars_.size(); break;
      case ClassKind::alpha: count = a_order_; break;
      case ClassKind::beta: count = spec_.n; break;
    }
    for (std::uint64_t c = 0; c < count; ++c) out.push_back({i, c});
  }
  return out;
}

std::uint64_t MetabelianGroup::lambda_dim(const LambdaPair& lam) const {
  return classes_.at(lam.class_index).kind == ClassKind::identity ? chars_.at(lam.chi).dim : 1;
}

std::uint64_t MetabelianGroup::centralizer_char_exponent(const LambdaPair& lam, Element z) const {
  const unsigned N = root_order();
  switch (classes_.at(lam.class_index).kind) {
    case ClassKind::alpha:
      if (v_of(z) != 0) throw DomainError("element outside the centralizer A");
      return pairing(lam.chi, u_of(z)) * (N / a_exp_);
    case ClassKind::beta:
      if (u_of(z) != 0) throw DomainError("element outside the centralizer <beta>");
      return (lam.chi * v_of(z) % spec_.n) * (N / spec_.n);
    case ClassKind::identity: break;
  }
  throw DomainError("identity-class characters are not linear; use character_value");
}

// ---------------------------------------------------------------------------

CyclotomicNumber eta(const MetabelianGroup& g, const LambdaPair& lam, long long a, long long b) {
  const auto& cl = g.classes().at(lam.class_index);
  const auto x = cl.representative;
  RootSum sum(g.root_order());
  for (std::uint64_t zi = 0; zi < g.order(); ++zi) {
    const auto z = static_cast<MetabelianGroup::Element>(zi);
    if (g.pow(z, a) != x) continue;
    const auto w = g.pow(z, -b);
    if (cl.kind == ClassKind::identity)
      sum += g.character_value(lam.chi, w);
    else
      sum.add_root(static_cast<long long>(g.centralizer_char_exponent(lam, w)));
  }
  return sum.value() * Rational(1, static_cast<long long>(g.lambda_dim(lam)));
}

namespace {
long long mod_pos(long long a, long long n) {
  const long long r = a % n;
  return r < 0 ? r + n : r;
}
}  // namespace

CyclotomicNumber s_sum(long long n, long long f, long long d, long long w, SumMode mode, std::optional<long long> e) {
  if (n < 1) throw DomainError("s_sum: n must be positive");
  const auto order = static_cast<unsigned>(n);
  if (mode == SumMode::direct) {
    RootSum s(order);
    for (long long v = 1; v <= n; ++v)
      if (mod_pos(d * v - w, n) == 0) s.add_root(mod_pos(f * v, n));
    return s.value();
  }
  const long long g = std::gcd(mod_pos(d, n), n);  // gcd(0, n) = n
  if (mod_pos(w, g) != 0 || mod_pos(f, g) != 0) return CyclotomicNumber(order);
  long long mult = 0;
  if (e) {
    if (mod_pos(*e * d - g, n) != 0) throw DomainError("s_sum: e d is not (d,n) mod n");
    mult = *e;
  } else {
    for (long long c = 1; c <= n; ++c)
      if (mod_pos(c * d - g, n) == 0) {
        mult = c;
        break;
      }
  }
  // exponent e f w / g, reduced mod n; w/g is exact
  const long long expo = mod_pos(mod_pos(mult, n) * mod_pos(f, n) % n * mod_pos(w / g, n), n);
  return CyclotomicNumber::zeta(order, expo) * Rational(g);
}

// ---------------------------------------------------------------------------
// Brute force

namespace {

struct Letter {
  int gen;  // 0-based
  bool inverse;
};

class HomSearch {
 public:
  HomSearch(const GroupPresentation& pres, const MetabelianGroup& g, const BruteForceOptions& opts)
      : g_(g), gens_(pres.generator_count), budget_(opts.node_budget), assign_(gens_, kUnassigned) {
    auto add = [&](const Word& w) {
      std::vector<Letter> r;
      for (int x : w) {
        if (x == 0 || std::abs(x) > gens_) throw DomainError("relator letter out of range");
        r.push_back({std::abs(x) - 1, x < 0});
      }
      relators_.push_back(std::move(r));
    };
    for (const auto& w : pres.relators) add(w);
    for (const auto& w : opts.extra_relators) add(w);
    occurs_.assign(gens_, {});
    for (std::size_t i = 0; i < relators_.size(); ++i) {
      std::vector<int> seen(gens_, 0);
      for (const auto& l : relators_[i]) ++seen[l.gen];
      for (int j = 0; j < gens_; ++j)
        if (seen[j]) occurs_[j].push_back(i);
    }
  }

  std::uint64_t run() {
    if (gens_ == 0) return check_all() ? 1 : 0;
    return search();
  }

 private:
  static constexpr std::uint32_t kUnassigned = 0xffffffffu;
  using E = MetabelianGroup::Element;

  E eval(const std::vector<Letter>& r, std::size_t from, std::size_t to) const {
    E acc = g_.identity();
    for (std::size_t i = from; i < to; ++i) {
      const E x = assign_[r[i].gen];
      acc = g_.mul(acc, r[i].inverse ? g_.inv(x) : x);
    }
    return acc;
  }

  bool relator_ok(std::size_t i) const { return eval(relators_[i], 0, relators_[i].size()) == g_.identity(); }

  bool check_all() const {
    for (std::size_t i = 0; i < relators_.size(); ++i)
      if (!relator_ok(i)) return false;
    return true;
  }

  void bump() {
    if (++nodes_ > budget_)
      throw ResourceError("brute-force search exceeded the node budget of " + std::to_string(budget_));
  }

  // Assign gen and propagate forced values. Returns false on contradiction;
  // every assignment made is pushed onto trail.
  bool assign_and_propagate(int gen, E value, std::vector<int>& trail) {
    std::vector<std::pair<int, E>> queue{{gen, value}};
    while (!queue.empty()) {
      auto [x, val] = queue.back();
      queue.pop_back();
      if (assign_[x] != kUnassigned) {
        if (assign_[x] != val) return false;
        continue;
      }
      bump();
      assign_[x] = val;
      trail.push_back(x);
      for (std::size_t ri : occurs_[x]) {
        const auto& r = relators_[ri];
        int missing = -1, missing_count = 0, missing_pos = -1;
        bool several = false;
        for (std::size_t k = 0; k < r.size(); ++k) {
          if (assign_[r[k].gen] != kUnassigned) continue;
          if (missing == -1) {
            missing = r[k].gen;
            missing_pos = static_cast<int>(k);
          } else if (missing != r[k].gen) {
            several = true;
            break;
          }
          ++missing_count;
        }
        if (several) continue;
        if (missing == -1) {
          if (!relator_ok(ri)) return false;
          continue;
        }
        if (missing_count != 1) continue;
        // r = P y^e S = 1  =>  y^e = P^-1 S^-1
        const auto pos = static_cast<std::size_t>(missing_pos);
        const E P = eval(r, 0, pos), S = eval(r, pos + 1, r.size());
        E y = g_.mul(g_.inv(P), g_.inv(S));
        if (r[pos].inverse) y = g_.inv(y);
        queue.emplace_back(missing, y);
      }
    }
    return true;
  }

  void undo(const std::vector<int>& trail) {
    for (int x : trail) assign_[x] = kUnassigned;
  }

  int choose() const {
    int best = -1;
    double best_score = -1;
    for (int j = 0; j < gens_; ++j) {
      if (assign_[j] != kUnassigned) continue;
      double score = 0;
      for (std::size_t ri : occurs_[j]) {
        std::vector<bool> open(gens_, false);
        int distinct = 0;
        for (const auto& l : relators_[ri])
          if (assign_[l.gen] == kUnassigned && !open[l.gen]) {
            open[l.gen] = true;
            ++distinct;
          }
        score += 1.0 / distinct;
      }
      if (score > best_score) {
        best_score = score;
        best = j;
      }
    }
    return best;
  }

  std::uint64_t search() {
    const int x = choose();
    if (x < 0) return check_all() ? 1 : 0;
    std::uint64_t count = 0;
    for (std::uint64_t v = 0; v < g_.order(); ++v) {
      std::vector<int> trail;
      if (assign_and_propagate(x, static_cast<E>(v), trail)) count += search();
      undo(trail);
    }
    return count;
  }

  const MetabelianGroup& g_;
  int gens_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  std::vector<std::vector<Letter>> relators_;
  std::vector<std::vector<std::size_t>> occurs_;
  std::vector<E> assign_;
};

}  // namespace

std::uint64_t hom_count_bruteforce(const GroupPresentation& pres, const MetabelianGroup& g, const BruteForceOptions& opts) {
  if (pres.generator_count < 0) throw DomainError("negative generator count");
  HomSearch s(pres, g, opts);
  return s.run();
}

}  // namespace sieve
