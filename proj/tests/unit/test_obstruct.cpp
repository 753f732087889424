#include <algorithm>
#include <numeric>

#include "doctest.h"
#include "sieve/obstruct.hpp"
#include "support/oracles.hpp"

using namespace sieve;

namespace {

LaurentPolynomial lp(int low, std::initializer_list<long long> c) { return LaurentPolynomial::from_coeffs(low, c); }

LaurentPolynomial delta_of(const std::string& name) { return alexander_poly(wirtinger(builtin(name))); }

struct Fixture {
  const char* knot;
  long long k;
  std::array<long long, 3> a;
};

// Integral surgeries on the trefoil and the figure-eight knot that are small
// Seifert manifolds, with their exceptional fibre multiplicities.
const std::vector<Fixture>& fixtures() {
  static const std::vector<Fixture> f{
      {"trefoil", 7, {2, 3, 1}},  {"trefoil", 8, {2, 3, 2}},  {"trefoil", 9, {2, 3, 3}},
      {"trefoil", 10, {2, 3, 4}}, {"trefoil", 11, {2, 3, 5}}, {"figure8", 1, {2, 3, 7}},
      {"figure8", 2, {2, 4, 5}},  {"figure8", 3, {3, 3, 4}},
  };
  return f;
}

std::vector<CandidateLeg> unknown_b(const std::array<long long, 3>& a) {
  return {{a[0], std::nullopt}, {a[1], std::nullopt}, {a[2], std::nullopt}};
}

// The leg whose gcd e_j with the other two may exceed 1.
std::pair<long long, long long> distinguished(const std::array<long long, 3>& a) {
  const auto c = condition_i(a[0], a[1], a[2]);
  std::size_t j = 0;
  for (std::size_t i = 0; i < 3; ++i)
    if (c.e[i] > c.e[j]) j = i;
  return {a[j], c.e[j]};
}

}  // namespace

TEST_CASE("condition (i)") {
  const auto c = condition_i(2, 3, 5);
  CHECK(c.pass);
  CHECK(c.which == ConditionCase::coprime_pairs);
  const auto t = condition_i(2, 4, 6);
  CHECK(t.pass);
  CHECK(t.which == ConditionCase::all_two);
  CHECK(t.e == std::array<long long, 3>{2, 2, 2});
  const auto f = condition_i(6, 10, 15);
  CHECK_FALSE(f.pass);
  CHECK(f.which == ConditionCase::fail);
  CHECK(f.e == std::array<long long, 3>{5, 3, 2});
  CHECK(condition_i(2, 4, 5).pass);
}

TEST_CASE("kappa2 examples") {
  CHECK(kappa2(2, 3, 5, 30) == 0);
  CHECK(kappa2(6, 10, 15, 30) == 22);
  for (long long n = 1; n <= 40; ++n) CHECK(kappa2(1, 1, 1, n) == 0);
}

TEST_CASE("kappa2 vanishes exactly on condition (i) triples") {
  for (long long a1 = 1; a1 <= 12; ++a1)
    for (long long a2 = a1; a2 <= 12; ++a2)
      for (long long a3 = a2; a3 <= 12; ++a3) {
        bool all_zero = true;
        for (long long n = 1; n <= 60; ++n) all_zero = all_zero && kappa2(a1, a2, a3, n) == 0;
        CHECK(all_zero == condition_i(a1, a2, a3).pass);
      }
}

TEST_CASE("gcd lemma checks") {
  const auto ok = gcd_lemma_checks(2, 3, 5, 1);
  CHECK(ok.all_pass());
  REQUIRE(ok.b_used.has_value());
  CHECK(homology_order({2, 3, 5}, *ok.b_used) == 1);

  const auto g = gcd_lemma_checks(3, 6, 9, 1);
  CHECK_FALSE(g.all_pass());
  const auto it = std::find_if(g.checks.begin(), g.checks.end(), [](const auto& c) { return c.name == "gcd_of_multiplicities"; });
  REQUIRE(it != g.checks.end());
  CHECK_FALSE(it->pass);
  CHECK(gcd_lemma_checks(4, 6, 8, 2).checks.front().pass);

  const auto odd_prime_report = gcd_lemma_checks(2, 3, 5, 15);
  CHECK_FALSE(odd_prime_report.all_pass());
  const auto odd_prime_check = std::find_if(odd_prime_report.checks.begin(), odd_prime_report.checks.end(), [](const auto& c) { return c.name == "odd_prime_divides_two"; });
  REQUIRE(odd_prime_check != odd_prime_report.checks.end());
  CHECK(odd_prime_check->applicable);
  CHECK_FALSE(odd_prime_check->pass);
}

TEST_CASE("homology order") {
  CHECK(homology_order({2, 3, 5}, {1, 1, 1}) == 31);
  CHECK(homology_order({2, 3, 5}, {1, 1, -4}) == 1);
  CHECK(homology_order({2, 4, 5}, {1, -1, 1}) == 18);
  CHECK(homology_order({2, 4, 5}, {1, -1, -1}) == 2);
}

TEST_CASE("gcd lemmas hold on the fixtures") {
  for (const auto& f : fixtures()) {
    const auto r = gcd_lemma_checks(f.a[0], f.a[1], f.a[2], f.k);
    CHECK_MESSAGE(r.all_pass(), f.knot << " " << f.k);
  }
}

TEST_CASE("screen examples") {
  const auto fig = lp(-1, {1, -3, 1});
  const auto r10 = screen(fig, 10, {}, "figure8");
  CHECK(r10.verdict == Verdict::obstructed);
  CHECK(r10.d == 1);
  REQUIRE(r10.entries.size() == 2);
  CHECK(r10.entries[0].q == 2);
  CHECK(r10.entries[0].psi.psi == 5);
  CHECK_FALSE(r10.entries[0].bound_ok);
  CHECK(screen(fig, 3).verdict == Verdict::consistent);
  CHECK(screen(fig, 3).entries[0].power_of_two);
  const auto r2 = screen(fig, 2);
  CHECK(r2.verdict == Verdict::obstructed);
  REQUIRE(r2.entries[0].odd_primes.size() == 1);
  CHECK(r2.entries[0].odd_primes[0].p == 5);
  CHECK(r2.entries[0].odd_primes[0].divisible);
  CHECK(screen(lp(-1, {1, -1, 1}), 5).verdict == Verdict::consistent);
  CHECK(screen(fig, -3).verdict == Verdict::consistent);
  CHECK_THROWS_AS(screen(fig, 0), DomainError);
}

TEST_CASE("screen advisories") {
  const auto fig = lp(-1, {1, -3, 1});
  const auto r5 = screen(fig, 5);
  CHECK(std::any_of(r5.advisories.begin(), r5.advisories.end(),
                    [](const std::string& s) { return s.find("> 3") != std::string::npos; }));
  const auto r2 = screen(fig, 2);
  CHECK(std::any_of(r2.advisories.begin(), r2.advisories.end(),
                    [](const std::string& s) { return s.find("root_count") != std::string::npos; }));
  CHECK(screen(fig, 3).advisories.empty());
}

TEST_CASE("a vanishing psi gives an indeterminate verdict") {
  const auto r = screen(lp(-1, {1, 1, 1}), 3);
  REQUIRE(r.entries.size() == 1);
  CHECK(r.entries[0].zero);
  CHECK(r.verdict == Verdict::indeterminate);
  CHECK_FALSE(r.advisories.empty());
}

TEST_CASE("odd k up to 3 is never obstructed for degree-two polynomials") {
  for (long long a = -7; a <= 9; a += 2) {
    const auto d = lp(-1, {1, -a, 1});
    if (abs(d.eval_at_one()) != 1) continue;
    for (long long k : {-3LL, -1LL, 1LL, 3LL}) CHECK(screen(d, k).verdict != Verdict::obstructed);
  }
}

TEST_CASE("the root-count screen never obstructs a fixture") {
  ScreenOptions opts;
  opts.bound = BoundRule::root_count;
  for (const auto& f : fixtures()) {
    const auto d = delta_of(f.knot);
    CHECK_MESSAGE(screen(d, f.k, opts).verdict != Verdict::obstructed, f.knot << " " << f.k);
    CHECK_MESSAGE(screen(d, -f.k, opts).verdict != Verdict::obstructed, f.knot << " " << -f.k);
  }
}

TEST_CASE("screen verdict matches its entries") {
  for (const auto& name : builtin_names()) {
    const auto d = delta_of(name);
    for (long long k = 1; k <= 40; ++k)
      for (auto rule : {BoundRule::stated, BoundRule::root_count}) {
        ScreenOptions opts;
        opts.bound = rule;
        const auto r = screen(d, k, opts);
        bool obstruct = false;
        for (const auto& e : r.entries) {
          if (e.zero) continue;
          CHECK(e.power_of_two == oracle::is_power_of_two(e.psi.psi));
          bool all_div = true;
          for (const auto& c : e.odd_primes) all_div = all_div && c.divisible;
          const long long bound = rule == BoundRule::stated ? r.d - 1 : 2LL * r.d + 1;
          if (!e.power_of_two) obstruct = obstruct || static_cast<long long>(e.q) > bound || !all_div;
        }
        CHECK((r.verdict == Verdict::obstructed) == obstruct);
      }
  }
}

TEST_CASE("prime factorization") {
  CHECK(factor_primes(BigInt(360)) == std::vector<BigInt>{2, 3, 5});
  CHECK(factor_primes(BigInt(-121)) == std::vector<BigInt>{11});
  CHECK(factor_primes(BigInt(1)).empty());
  const BigInt p1("1000000007"), p2("998244353");
  CHECK(factor_primes(p1 * p2 * 4) == std::vector<BigInt>{2, p2, p1});
  const BigInt big("170141183460469231731687303715884105727");  // 2^127 - 1
  CHECK(factor_primes(big * 3) == std::vector<BigInt>{3, big});
  CHECK_THROWS_AS(factor_primes(BigInt(0)), DomainError);
  for (int trial = 0; trial < 100; ++trial) {
    const BigInt x = BigInt(oracle::uniform(2, 1'000'000)) * oracle::uniform(1, 1'000'000);
    BigInt rest = x;
    for (const auto& p : factor_primes(x)) {
      CHECK(is_prime(static_cast<std::uint64_t>(p)));
      while (rest % p == 0) rest /= p;
    }
    CHECK(rest == 1);
  }
}

TEST_CASE("splitting root examples") {
  const auto fig = lp(-1, {1, -3, 1});
  const auto w5 = splitting_root_check(fig, 5, 2);
  CHECK(w5.found);
  CHECK(w5.witness_degree == 1);
  CHECK(w5.t0 == 4);
  const auto w2 = splitting_root_check(fig, 2, 3);
  CHECK(w2.found);
  CHECK(w2.witness_degree == 2);
  CHECK(w2.kbar == 3);
  const auto w11 = splitting_root_check(fig, 11, 5);
  CHECK(w11.found);
  CHECK(w11.witness_degree == 1);
  const FphField F11(11, 1);
  CHECK(F11.order_of(static_cast<FphField::Element>(w11.t0)) == 5);
  CHECK(splitting_root_check(fig, 2, 4).kbar == 1);
  CHECK_THROWS_AS(splitting_root_check(fig, 4, 3), DomainError);
}

TEST_CASE("splitting roots exist whenever p divides psi") {
  for (const auto& name : builtin_names()) {
    const auto d = delta_of(name);
    for (long long k = 1; k <= 10; ++k) {
      const auto num = psi(d, static_cast<unsigned>(k)).psi;
      for (std::uint64_t p = 2; p <= 50; ++p) {
        if (!is_prime(p) || num % p != 0) continue;
        const auto w = splitting_root_check(d, p, k);
        CHECK_MESSAGE(w.found, name << " p=" << p << " k=" << k);
        if (!w.found) continue;
        // Independent check of the witness: delta(t0) = 0 and t0^kbar = 1.
        const FphField F(p, w.witness_degree);
        CHECK(F.order_of(static_cast<FphField::Element>(w.t0)) > 0);
        CHECK(w.kbar % static_cast<long long>(F.order_of(static_cast<FphField::Element>(w.t0))) == 0);
        FphField::Element acc = 0, pw = 1;
        const auto c = d.to_polynomial();
        for (std::size_t i = 0; i < c.size(); ++i) {
          const long long ci = static_cast<long long>(((c[i] % BigInt(p)) + BigInt(p)) % BigInt(p));
          acc = F.add(acc, F.mul(F.from_int(ci), pw));
          pw = F.mul(pw, static_cast<FphField::Element>(w.t0));
        }
        CHECK(acc == 0);
      }
    }
  }
}

TEST_CASE("residual examples") {
  const auto fig = wirtinger(builtin("figure8"));
  const MetabelianGroup g52(GroupSpec::zpm(5, 1, 2));
  const auto r = residual_check(fig, 2, g52, 5, 2);
  CHECK(r.lhs == 4);
  CHECK(r.rhs == 4);
  CHECK(r.equal);
  const auto tre = wirtinger(builtin("trefoil"));
  const MetabelianGroup g76(GroupSpec::zpm(7, 1, 6));
  const auto t = residual_check(tre, 6, g76, 7, 6);
  CHECK(t.lhs == 12);
  CHECK(t.rhs == 30);
  CHECK_FALSE(t.equal);
  const MetabelianGroup g73(GroupSpec::zpm(7, 1, 3));
  const auto z = residual_check(tre, 1, g73, 7, 1);
  CHECK(z.lhs == 0);
  CHECK(z.equal);
}

TEST_CASE("residual identity holds on the fixtures") {
  for (const auto& f : fixtures()) {
    const auto pres = wirtinger(builtin(f.knot));
    const auto [a3, e3] = distinguished(f.a);
    for (std::uint64_t p : {3, 5, 7, 11, 13}) {
      if (f.k % static_cast<long long>(p) == 0) continue;
      for (std::uint64_t n = 1; n < p; ++n) {
        if ((p - 1) % n != 0) continue;
        const MetabelianGroup g(GroupSpec::zpm(p, 1, n));
        const auto r = residual_check(pres, f.k, g, a3, e3);
        CHECK_MESSAGE(r.equal, f.knot << " k=" << f.k << " " << g.name() << " lhs=" << r.lhs << " rhs=" << r.rhs);
      }
    }
  }
}

TEST_CASE("candidate parsing") {
  const auto c = parse_candidate("2/?,3/?,7/1");
  REQUIRE(c.size() == 3);
  CHECK(c[0].a == 2);
  CHECK_FALSE(c[0].b.has_value());
  CHECK(c[2].b == 1);
  CHECK(parse_candidate("2,3,7")[1].a == 3);
  CHECK_THROWS_AS(parse_candidate("2/?,3/?"), ParseError);
  CHECK_THROWS_AS(parse_candidate("2/?,x,7"), ParseError);
}

TEST_CASE("default battery groups") {
  const auto groups = default_battery_groups();
  for (const auto& spec : groups) {
    const MetabelianGroup g(spec);
    CHECK(g.n() > 1);
    CHECK(g.order() <= 500);
  }
  CHECK(std::any_of(groups.begin(), groups.end(), [](const GroupSpec& s) { return s.to_string() == "zpm:5,1,2"; }));
}

TEST_CASE("battery controls") {
  const auto fig = wirtinger(builtin("figure8"));
  // |H_1| of S^2(2/b1, 3/b2, 7/b3) is odd, so the homology filter leaves
  // nothing and the sweep runs over every b.
  BatteryConfig sweep;
  sweep.full_sweep = true;
  const auto neg = consistency_battery(fig, SurgerySlope(2, 1), unknown_b({2, 3, 7}), sweep);
  CHECK_FALSE(neg.compatible);
  CHECK(neg.homology_mismatch);
  REQUIRE(neg.witness_group.has_value());
  CHECK(*neg.witness_group == MetabelianGroup(GroupSpec::zpm(3, 1, 2)).name());
  CHECK(neg.witness_surgery_count == BigInt(4));
  CHECK(neg.witness_seifert_counts == std::vector<BigInt>{1});
  const auto z52 = MetabelianGroup(GroupSpec::zpm(5, 1, 2)).name();
  const auto row = std::find_if(neg.rows.begin(), neg.rows.end(), [&](const BatteryRow& r) { return r.group == z52; });
  REQUIRE(row != neg.rows.end());
  CHECK(row->surgery_count == 26);
  CHECK(row->refutes);

  const auto pos = consistency_battery(fig, SurgerySlope(1, 1), unknown_b({2, 3, 7}));
  CHECK(pos.compatible);
  REQUIRE(pos.b_witness.has_value());
  CHECK(homology_order({2, 3, 7}, *pos.b_witness) == 1);
  for (const auto& row : pos.rows) {
    CHECK(row.surgery_count == 1);
    CHECK(row.seifert_count == BigInt(1));
  }

  const auto tre = wirtinger(builtin("trefoil"));
  const auto t9 = consistency_battery(tre, SurgerySlope(9, 1), unknown_b({2, 3, 3}));
  CHECK(t9.compatible);
  for (const auto& row : t9.rows) CHECK(row.seifert_count == row.surgery_count);
}

TEST_CASE("battery accepts every fixture and cross-checks by brute force") {
  BatteryConfig cfg;
  cfg.cross_check_brute = true;
  for (const auto& f : fixtures()) {
    const auto pres = wirtinger(builtin(f.knot));
    const auto r = consistency_battery(pres, SurgerySlope(f.k, 1), unknown_b(f.a), cfg);
    CHECK_MESSAGE(r.compatible, f.knot << " k=" << f.k << ": " << r.reason);
  }
}

TEST_CASE("battery rejects swapped fixtures") {
  const auto fig = wirtinger(builtin("figure8"));
  CHECK_FALSE(consistency_battery(fig, SurgerySlope(3, 1), unknown_b({2, 4, 5})).compatible);
  CHECK_FALSE(consistency_battery(fig, SurgerySlope(2, 1), unknown_b({3, 3, 4})).compatible);
  const auto tre = wirtinger(builtin("trefoil"));
  CHECK_FALSE(consistency_battery(tre, SurgerySlope(9, 1), unknown_b({2, 3, 7})).compatible);
}

TEST_CASE("battery with fixed b and a full sweep") {
  const auto fig = wirtinger(builtin("figure8"));
  BatteryConfig cfg;
  cfg.full_sweep = true;
  const auto r = consistency_battery(fig, SurgerySlope(2, 1), unknown_b({2, 3, 7}), cfg);
  CHECK_FALSE(r.compatible);
  CHECK(r.rows.size() == default_battery_groups().size());
  std::vector<CandidateLeg> fixed{{2, 1}, {3, 1}, {7, 1}};
  const auto one = consistency_battery(fig, SurgerySlope(1, 1), fixed);
  CHECK(one.assignments_tried <= 1);
  BatteryConfig bad;
  bad.groups = {GroupSpec::zpm(7, 1, 3)};
  bad.brute_budget = 5;
  bad.cross_check_brute = true;
  CHECK_THROWS_AS(consistency_battery(fig, SurgerySlope(3, 1), unknown_b({3, 3, 4}), bad), ResourceError);
}
