#include "sieve/obstruct.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include <boost/multiprecision/miller_rabin.hpp>

#include "sieve/errors.hpp"
#include "sieve/finitering.hpp"

namespace sieve {

namespace {

using Triple = std::array<long long, 3>;

long long abs_ll(long long x) { return x < 0 ? -x : x; }

std::string triple_text(const Triple& t) {
  return "(" + std::to_string(t[0]) + "," + std::to_string(t[1]) + "," + std::to_string(t[2]) + ")";
}

bool is_power_of_two(BigInt x) {
  if (x < 0) x = -x;
  if (x == 0) return false;
  return (x & (x - 1)) == 0;
}

bool probable_prime(const BigInt& x) {
  static std::mt19937_64 rng(0x5eedu);
  return boost::multiprecision::miller_rabin_test(x, 32, rng);
}

// Brent's variant of Pollard rho; returns a nontrivial factor of composite n.
BigInt pollard_rho(const BigInt& n) {
  if (n % 2 == 0) return 2;
  for (BigInt c = 1;; ++c) {
    BigInt y = 2, x = 2, g = 1, q = 1, ys;
    const std::size_t m = 64;
    std::size_t r = 1;
    auto f = [&](const BigInt& v) { return (v * v + c) % n; };
    do {
      x = y;
      for (std::size_t i = 0; i < r; ++i) y = f(y);
      std::size_t k = 0;
      do {
        ys = y;
        for (std::size_t i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = q * (x > y ? x - y : y - x) % n;
        }
        g = gcd(q, n);
        k += m;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_into(BigInt n, std::set<BigInt>& out) {
  if (n == 1) return;
  if (probable_prime(n)) {
    out.insert(n);
    return;
  }
  const BigInt d = pollard_rho(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

// Delta vanishes mod (p, 1 + t + ... + t^{q-1}) for primes p too large for
// the word-size F_p routines: reduce over Z first (the divisor is monic).
bool cyclotomic_divisibility_big(const LaurentPolynomial& delta, const BigInt& p, std::uint64_t q) {
  std::vector<BigInt> a = delta.to_polynomial();
  const std::size_t dq = q - 1;
  for (std::size_t i = a.size(); i-- > dq;) {
    const BigInt c = a[i];
    if (c == 0) continue;
    for (std::size_t j = 0; j <= dq; ++j) a[i - dq + j] -= c;
  }
  for (std::size_t i = 0; i < std::min(a.size(), dq); ++i)
    if (a[i] % p != 0) return false;
  return true;
}

bool divisibility(const LaurentPolynomial& delta, const BigInt& p, std::uint64_t q) {
  if (p < BigInt(1u << 31)) return cyclotomic_divisibility(delta, static_cast<std::uint64_t>(p), q);
  return cyclotomic_divisibility_big(delta, p, q);
}

std::uint64_t lcm_of(const std::vector<unsigned>& degrees) {
  std::uint64_t l = 1;
  for (unsigned d : degrees) l = std::lcm(l, static_cast<std::uint64_t>(d));
  return l;
}

FphField::Element eval_fp_poly(const FphField& F, const fp::Poly& poly, FphField::Element x) {
  FphField::Element acc = 0;
  for (std::size_t i = poly.size(); i-- > 0;) acc = F.add(F.mul(acc, x), F.from_int(static_cast<long long>(poly[i])));
  return acc;
}

// Pairs (j1, j2, j3) with e_{j1} = e_{j2} = 1 putting the distinguished gcd last.
std::optional<int> distinguished_index(const Triple& e) {
  for (int j = 0; j < 3; ++j)
    if (e[(j + 1) % 3] == 1 && e[(j + 2) % 3] == 1) return j;
  return std::nullopt;
}

std::vector<long long> b_values(long long a, long long radius, std::optional<long long> fixed) {
  if (fixed) return {*fixed};
  std::vector<long long> out;
  for (long long b = -radius; b <= radius; ++b)
    if (std::gcd(a, b) == 1) out.push_back(b);
  return out;
}

std::vector<Triple> b_assignments(const Triple& a, long long k, long long radius, bool homology,
                                  const std::array<std::optional<long long>, 3>& fixed = {}) {
  std::vector<Triple> out;
  const auto b0 = b_values(a[0], radius, fixed[0]);
  const auto b1 = b_values(a[1], radius, fixed[1]);
  const auto b2 = b_values(a[2], radius, fixed[2]);
  for (long long x : b0)
    for (long long y : b1)
      for (long long z : b2) {
        const Triple b{x, y, z};
        if (homology && homology_order(a, b) != abs_ll(k)) continue;
        out.push_back(b);
      }
  // Smallest |b| first, so reported witnesses are the simplest available.
  std::stable_sort(out.begin(), out.end(), [](const Triple& u, const Triple& v) {
    return abs_ll(u[0]) + abs_ll(u[1]) + abs_ll(u[2]) < abs_ll(v[0]) + abs_ll(v[1]) + abs_ll(v[2]);
  });
  return out;
}

// The case formula for (n, k) at one n; nullopt when condition (i) fails.
std::optional<long long> nk_case_rhs(const Triple& a, const Triple& b, long long n) {
  const ConditionResult cond = condition_i(a[0], a[1], a[2]);
  if (!cond.pass) return std::nullopt;
  const long long E = n_side_params(a, b, n).E;
  if (cond.which == ConditionCase::coprime_pairs) {
    const int j3 = *distinguished_index(cond.e);
    return E * std::gcd(cond.e[j3], n);
  }
  return n % 2 == 0 ? 4 * E - 2 : E;
}

bool nk_case_holds(const Triple& a, const Triple& b, long long k, long long max_n, long long* bad_n) {
  for (long long n = 1; n <= max_n; ++n) {
    const auto rhs = nk_case_rhs(a, b, n);
    if (rhs && *rhs != std::gcd(n, abs_ll(k))) {
      if (bad_n) *bad_n = n;
      return false;
    }
  }
  return true;
}

}  // namespace

const char* to_string(ConditionCase c) {
  switch (c) {
    case ConditionCase::coprime_pairs: return "coprime";
    case ConditionCase::all_two: return "all_two";
    case ConditionCase::fail: return "fail";
  }
  return "?";
}

const char* to_string(BoundRule r) { return r == BoundRule::stated ? "stated" : "root_count"; }

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::consistent: return "consistent";
    case Verdict::obstructed: return "obstructed";
    case Verdict::indeterminate: return "indeterminate";
  }
  return "?";
}

ConditionResult condition_i(long long a1, long long a2, long long a3) {
  if (a1 < 1 || a2 < 1 || a3 < 1) throw DomainError("condition_i: multiplicities must be positive");
  ConditionResult r;
  const Triple a{a1, a2, a3};
  for (int j = 0; j < 3; ++j) r.e[j] = std::gcd(a[(j + 1) % 3], a[(j + 2) % 3]);
  const int ones = static_cast<int>(std::count(r.e.begin(), r.e.end(), 1));
  if (ones >= 2) {
    r.pass = true;
    r.which = ConditionCase::coprime_pairs;
  } else if (r.e[0] == 2 && r.e[1] == 2 && r.e[2] == 2) {
    r.pass = true;
    r.which = ConditionCase::all_two;
  }
  return r;
}

long long homology_order(const Triple& a, const Triple& b) {
  const __int128 s = static_cast<__int128>(b[0]) * a[1] * a[2] + static_cast<__int128>(b[1]) * a[0] * a[2] +
                     static_cast<__int128>(b[2]) * a[0] * a[1];
  return static_cast<long long>(s < 0 ? -s : s);
}

bool GcdLemmaReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const LemmaCheck& c) { return !c.applicable || c.pass; });
}

GcdLemmaReport gcd_lemma_checks(long long a1, long long a2, long long a3, long long k, const GcdLemmaOptions& opts) {
  const Triple a{a1, a2, a3};
  const ConditionResult cond = condition_i(a1, a2, a3);
  GcdLemmaReport rep;

  const long long g = std::gcd(std::gcd(a1, a2), a3);
  rep.checks.push_back({"gcd_of_multiplicities", true, g == 1 || g == 2, "(a1,a2,a3) = " + std::to_string(g)});

  rep.checks.push_back({"pairwise_gcds", true, cond.pass,
                        "e = " + triple_text(cond.e) + ", case " + to_string(cond.which)});

  LemmaCheck nk_case{"n_k_case_formula", cond.pass, true, ""};
  if (!cond.pass) {
    nk_case.detail = "needs the pairwise gcd condition";
  } else if (opts.b) {
    long long bad = 0;
    nk_case.pass = nk_case_holds(a, *opts.b, k, opts.max_n, &bad);
    nk_case.detail = nk_case.pass ? "holds for n <= " + std::to_string(opts.max_n) + " with b = " + triple_text(*opts.b)
                          : "fails at n = " + std::to_string(bad) + " with b = " + triple_text(*opts.b);
    if (nk_case.pass) rep.b_used = opts.b;
  } else {
    const auto cands = b_assignments(a, k, opts.b_radius, true);
    nk_case.pass = false;
    for (const Triple& b : cands) {
      if (nk_case_holds(a, b, k, opts.max_n, nullptr)) {
        nk_case.pass = true;
        rep.b_used = b;
        break;
      }
    }
    nk_case.detail = nk_case.pass ? "holds for n <= " + std::to_string(opts.max_n) + " with b = " + triple_text(*rep.b_used)
                          : "no b with |b_j| <= " + std::to_string(opts.b_radius) + " and |H_1| = |k| satisfies it (" +
                                std::to_string(cands.size()) + " tried)";
  }
  rep.checks.push_back(nk_case);

  LemmaCheck odd_prime{"odd_prime_divides_two", false, true, ""};
  std::set<std::uint64_t> primes;
  for (long long x : a)
    for (auto p : prime_factors(static_cast<std::uint64_t>(x)))
      if (p != 2 && k % static_cast<long long>(p) == 0) primes.insert(p);
  std::ostringstream detail;
  for (auto p : primes) {
    odd_prime.applicable = true;
    int count = 0;
    for (long long x : a) count += x % static_cast<long long>(p) == 0 ? 1 : 0;
    if (count != 2) odd_prime.pass = false;
    detail << (detail.tellp() > 0 ? "; " : "") << "p=" << p << " divides " << count << " of the a_j";
  }
  odd_prime.detail = odd_prime.applicable ? detail.str() : "no odd prime divides both k and a1 a2 a3";
  rep.checks.push_back(odd_prime);
  return rep;
}

std::vector<BigInt> factor_primes(const BigInt& x) {
  if (x == 0) throw DomainError("factor_primes: zero has no finite factorization");
  BigInt n = x < 0 ? BigInt(-x) : x;
  std::set<BigInt> out;
  for (unsigned d = 2; d < 10000 && BigInt(d) * d <= n; ++d) {
    if (n % d != 0) continue;
    out.insert(d);
    while (n % d == 0) n /= d;
  }
  factor_into(n, out);
  return {out.begin(), out.end()};
}

ScreenReport screen(const LaurentPolynomial& delta, long long k, const ScreenOptions& opts, std::string knot) {
  if (k == 0) throw DomainError("screen: k must be nonzero");
  ScreenReport rep;
  rep.knot = std::move(knot);
  rep.k = k;
  rep.d = half_degree(delta);
  rep.bound = opts.bound;
  const long long bound = opts.bound == BoundRule::stated ? rep.d - 1 : 2LL * rep.d + 1;

  bool any_zero = false, any_obstruct = false, any_bound_only = false;
  for (auto q : prime_factors(static_cast<std::uint64_t>(abs_ll(k)))) {
    ScreenEntry e;
    e.q = q;
    e.psi = psi(delta, static_cast<unsigned>(q));
    if (e.psi.psi == 0) {
      e.zero = true;
      any_zero = true;
      rep.entries.push_back(std::move(e));
      continue;
    }
    e.power_of_two = is_power_of_two(e.psi.psi);
    if (!e.power_of_two) {
      e.bound_ok = static_cast<long long>(q) <= bound;
      bool all_div = true;
      for (const BigInt& p : factor_primes(e.psi.psi)) {
        if (p == 2) continue;
        PrimeDivisorCheck c{p, divisibility(delta, p, q)};
        all_div = all_div && c.divisible;
        e.odd_primes.push_back(c);
      }
      e.obstructs = !e.bound_ok || !all_div;
      if (!e.bound_ok && all_div) any_bound_only = true;
    }
    any_obstruct = any_obstruct || e.obstructs;
    rep.entries.push_back(std::move(e));
  }
  rep.verdict = any_obstruct ? Verdict::obstructed : any_zero ? Verdict::indeterminate : Verdict::consistent;

  if (any_zero)
    rep.advisories.push_back("psi vanishes at some q | k: delta has a root of unity of order dividing q as a root");
  if (rep.d == 1) {
    for (auto q : prime_factors(static_cast<std::uint64_t>(abs_ll(k))))
      if (q > 3) {
        rep.advisories.push_back("delta has degree 2 and the prime " + std::to_string(q) +
                                 " > 3 divides k; for degree 2 such primes are expected not to divide k");
        break;
      }
  }
  if (any_bound_only && opts.bound == BoundRule::stated)
    rep.advisories.push_back(
        "an entry fails only the bound q <= d - 1 while every cyclotomic divisibility holds; the root_count rule "
        "(q <= 2d + 1) would not obstruct it");
  return rep;
}

RootWitness splitting_root_check(const LaurentPolynomial& delta, std::uint64_t p, long long k) {
  if (!is_prime(p)) throw DomainError("splitting_root_check: p must be prime");
  if (k == 0) throw DomainError("splitting_root_check: k must be nonzero");
  RootWitness w;
  w.p = p;
  long long kbar = abs_ll(k);
  while (kbar % static_cast<long long>(p) == 0) kbar /= static_cast<long long>(p);
  w.kbar = kbar;

  const fp::Poly dm = fp::from_integer_poly(delta.to_polynomial(), p);
  if (dm.size() < 2) return w;  // constant mod p: no roots
  w.splitting_degree = static_cast<unsigned>(lcm_of(fp::factor_degrees(dm, p)));

  fp::Poly tk(static_cast<std::size_t>(kbar) + 1, 0);
  tk[0] = p - 1;
  tk[static_cast<std::size_t>(kbar)] = 1;
  const fp::Poly g = fp::gcd(dm, tk, p);
  if (g.size() < 2) return w;

  const auto h = static_cast<unsigned>(lcm_of(fp::factor_degrees(g, p)));
  const FphField F(p, h);
  for (FphField::Element x = 1; x < F.size(); ++x) {
    if (eval_fp_poly(F, g, x) != 0) continue;
    if (F.pow(x, kbar) != F.one() || eval_fp_poly(F, dm, x) != 0)
      throw ConsistencyError("splitting_root_check: root of the gcd is not a root of unity of delta");
    w.found = true;
    w.witness_degree = h;
    w.field_modulus = F.modulus();
    w.t0 = x;
    w.t0_text = F.element_to_string(x);
    break;
  }
  return w;
}

ResidualResult residual_check(const GroupPresentation& pres, long long k, const MetabelianGroup& g, long long a_j3,
                              long long e_j3) {
  const SurgeryCountBreakdown bd = surgery_count(pres, SurgerySlope(k, 1), g);
  const BigInt P = g.p();
  const unsigned scale = bd.field ? g.exponent() : 1;
  ResidualResult r;
  for (const KernelRecord& rec : bd.records)
    if (rec.delta_vanishes) r.lhs += pow(P, rec.omega * scale) - 1;
  const auto n = static_cast<long long>(g.n());
  const BigInt en = std::gcd(e_j3, n) - 1;
  if (bd.field) {
    r.rhs = en * (pow(BigInt(std::gcd(a_j3, static_cast<long long>(g.p()))), g.exponent()) - 1);
  } else {
    const auto pm = static_cast<long long>(ipow(g.p(), g.exponent()));
    r.rhs = en * (std::gcd(a_j3, pm) - 1);
  }
  r.equal = r.lhs == r.rhs;
  return r;
}

std::vector<GroupSpec> default_battery_groups() {
  std::vector<GroupSpec> out;
  for (std::uint64_t p : {3, 5, 7, 11, 13})
    for (std::uint64_t n = 2; n <= p - 1; ++n)
      if ((p - 1) % n == 0) out.push_back(GroupSpec::zpm(p, 1, n));
  out.push_back(GroupSpec::zpm(3, 2, 2));
  out.push_back(GroupSpec::zpm(5, 2, 2));
  out.push_back(GroupSpec::zpm(5, 2, 4));
  out.push_back(GroupSpec::fph(2, 2, 3));
  for (std::uint64_t n : {2, 4, 8}) out.push_back(GroupSpec::fph(3, 2, n));
  return out;
}

std::vector<CandidateLeg> parse_candidate(std::string_view text) {
  std::vector<CandidateLeg> out;
  std::string s(text);
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(std::remove_if(item.begin(), item.end(), ::isspace), item.end());
    if (item.empty()) throw ParseError("empty leg", "leg " + std::to_string(out.size() + 1));
    CandidateLeg leg;
    const auto slash = item.find('/');
    try {
      std::size_t used = 0;
      const std::string as = item.substr(0, slash);
      leg.a = std::stoll(as, &used);
      if (used != as.size()) throw std::invalid_argument("a");
      if (slash != std::string::npos) {
        const std::string bs = item.substr(slash + 1);
        if (bs != "?") {
          leg.b = std::stoll(bs, &used);
          if (used != bs.size()) throw std::invalid_argument("b");
        }
      }
    } catch (const std::logic_error&) {
      throw ParseError("expected a or a/b or a/?, got '" + item + "'", "leg " + std::to_string(out.size() + 1));
    }
    if (leg.a < 1) throw ParseError("multiplicity must be positive", "leg " + std::to_string(out.size() + 1));
    if (leg.b && std::gcd(leg.a, *leg.b) != 1)
      throw ParseError("gcd(a, b) must be 1", "leg " + std::to_string(out.size() + 1));
    out.push_back(leg);
  }
  if (out.size() != 3) throw ParseError("expected three legs, got " + std::to_string(out.size()), "candidate");
  return out;
}

BatteryResult consistency_battery(const GroupPresentation& pres, const SurgerySlope& slope,
                                  const std::vector<CandidateLeg>& candidate, const BatteryConfig& cfg) {
  if (candidate.size() != 3) throw DomainError("consistency_battery: the candidate needs exactly three legs");
  const Triple a{candidate[0].a, candidate[1].a, candidate[2].a};
  const std::array<std::optional<long long>, 3> fixed{candidate[0].b, candidate[1].b, candidate[2].b};
  std::vector<Triple> assignments = b_assignments(a, slope.k, cfg.b_radius, cfg.homology_constraint, fixed);

  BatteryResult res;
  if (assignments.empty() && cfg.homology_constraint) {
    res.homology_mismatch = true;
    assignments = b_assignments(a, slope.k, cfg.b_radius, false, fixed);
  }
  res.assignments_tried = assignments.size();
  if (assignments.empty()) {
    res.reason = "no b assignment within the radius";
    return res;
  }

  const std::vector<GroupSpec> groups = cfg.groups.empty() ? default_battery_groups() : cfg.groups;
  std::vector<bool> alive(assignments.size(), true);
  std::vector<std::vector<BigInt>> seifert(groups.size());

  for (std::size_t gi = 0; gi < groups.size(); ++gi) {
    const MetabelianGroup G(groups[gi]);
    const BigInt surg = surgery_count(pres, slope, G).total;
    if (cfg.cross_check_brute) {
      GroupPresentation sp = pres;
      sp.relators.push_back(surgery_relator(pres, slope));
      BruteForceOptions bo;
      bo.node_budget = cfg.brute_budget;
      const BigInt brute = hom_count_bruteforce(sp, G, bo);
      if (brute != surg)
        throw ConsistencyError("battery: surgery count " + to_string(surg) + " differs from brute force " +
                               to_string(brute) + " on " + G.name());
    }
    res.rows.push_back({G.name(), surg, std::nullopt});

    bool refutes_all = true;
    seifert[gi].resize(assignments.size());
    for (std::size_t i = 0; i < assignments.size(); ++i) {
      const Triple& b = assignments[i];
      const SeifertData sd(0, {{a[0], b[0]}, {a[1], b[1]}, {a[2], b[2]}});
      seifert[gi][i] = seifert_count_closed(sd, G);
      if (seifert[gi][i] == surg) refutes_all = false;
      else alive[i] = false;
    }
    res.rows.back().refutes = refutes_all;
    if (refutes_all && !res.witness_group) {
      res.witness_group = G.name();
      res.witness_surgery_count = surg;
      std::set<BigInt> distinct(seifert[gi].begin(), seifert[gi].end());
      res.witness_seifert_counts.assign(distinct.begin(), distinct.end());
      if (!cfg.full_sweep) break;
    }
  }

  const auto survivor = std::find(alive.begin(), alive.end(), true);
  if (!res.witness_group && !res.homology_mismatch && survivor != alive.end()) {
    const std::size_t i = static_cast<std::size_t>(survivor - alive.begin());
    res.compatible = true;
    res.b_witness = assignments[i];
    for (std::size_t gi = 0; gi < res.rows.size(); ++gi) res.rows[gi].seifert_count = seifert[gi][i];
    res.reason = "every battery count matches with b = " + triple_text(assignments[i]);
  } else if (res.witness_group) {
    res.reason = "no b assignment matches the count on " + *res.witness_group;
  } else if (res.homology_mismatch) {
    res.reason = "no b assignment within the radius has |H_1| = |k|";
  } else {
    res.reason = "each b assignment is refuted by some group, but no single group refutes all";
  }
  if (res.homology_mismatch && res.witness_group) res.reason += "; no b assignment within the radius has |H_1| = |k|";
  return res;
}

}  // namespace sieve
