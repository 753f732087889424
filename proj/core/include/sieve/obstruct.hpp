#pragma once

// Necessary conditions for a knot surgery to be a small Seifert manifold:
// the Alexander-polynomial screen, gcd conditions on the multiplicities,
// and a battery comparing homomorphism counts across many target groups.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "sieve/alexander.hpp"
#include "sieve/dwcount.hpp"
#include "sieve/metabelian.hpp"

namespace sieve {

enum class ConditionCase { coprime_pairs, all_two, fail };
const char* to_string(ConditionCase c);

struct ConditionResult {
  bool pass = false;
  ConditionCase which = ConditionCase::fail;
  std::array<long long, 3> e{};  // e_j = (a_{j+1}, a_{j-1})
};

// At least two of the pairwise gcds are 1, or all three equal 2.
ConditionResult condition_i(long long a1, long long a2, long long a3);

struct LemmaCheck {
  std::string name;
  bool applicable = true;
  bool pass = true;
  std::string detail;
};

struct GcdLemmaReport {
  std::vector<LemmaCheck> checks;
  std::optional<std::array<long long, 3>> b_used;  // b for the (n,k) identity
  bool all_pass() const;
};

struct GcdLemmaOptions {
  long long max_n = 30;
  // Candidate b_j; when absent, b with |b_j| <= b_radius satisfying the
  // homology constraint are searched and the first passing one is reported.
  std::optional<std::array<long long, 3>> b;
  long long b_radius = 8;
};

GcdLemmaReport gcd_lemma_checks(long long a1, long long a2, long long a3, long long k, const GcdLemmaOptions& opts = {});

// |sum_j b_j prod_{i != j} a_i|, the order of H_1 of S^2(a1/b1, a2/b2, a3/b3).
long long homology_order(const std::array<long long, 3>& a, const std::array<long long, 3>& b);

/// Upper bound on a prime q dividing k with |psi(q)| not a power of two.
/// `stated`: q <= d - 1. `root_count`: q <= 2d + 1, the bound implied by
/// Phi_q dividing delta mod p.
enum class BoundRule { stated, root_count };
const char* to_string(BoundRule r);

struct ScreenOptions {
  BoundRule bound = BoundRule::stated;
};

struct PrimeDivisorCheck {
  BigInt p;
  bool divisible = false;  // delta = 0 mod (p, 1 + t + ... + t^{q-1})
};

struct ScreenEntry {
  std::uint64_t q = 0;
  PsiValue psi;
  bool zero = false;
  bool power_of_two = false;
  bool bound_ok = true;
  std::vector<PrimeDivisorCheck> odd_primes;
  bool obstructs = false;
};

enum class Verdict { consistent, obstructed, indeterminate };
const char* to_string(Verdict v);

struct ScreenReport {
  std::string knot;
  long long k = 0;
  int d = 0;
  BoundRule bound = BoundRule::stated;
  std::vector<ScreenEntry> entries;
  Verdict verdict = Verdict::consistent;
  std::vector<std::string> advisories;
};

ScreenReport screen(const LaurentPolynomial& delta, long long k, const ScreenOptions& opts = {}, std::string knot = "");

// Distinct prime factors of |x|, ascending. x = 0 is a DomainError.
std::vector<BigInt> factor_primes(const BigInt& x);

struct RootWitness {
  bool found = false;
  std::uint64_t p = 0;
  long long kbar = 1;
  unsigned splitting_degree = 0;  // h with F_{p^h} the splitting field of delta mod p
  unsigned witness_degree = 0;    // degree of the subfield holding t0
  fp::Poly field_modulus;
  std::uint64_t t0 = 0;  // element code in F_{p^witness_degree}
  std::string t0_text;
};

// A root t0 of delta mod p in its splitting field with t0^kbar = 1,
// kbar = k / p^{v_p(k)}.
RootWitness splitting_root_check(const LaurentPolynomial& delta, std::uint64_t p, long long k);

struct ResidualResult {
  BigInt lhs;  // sum over vanishing v of p^{omega} (resp. p^{h omega}) minus their number
  BigInt rhs;  // ((e, n) - 1)((a, p^m) - 1), resp. ((e, n) - 1)((a, p)^h - 1)
  bool equal = false;
};

ResidualResult residual_check(const GroupPresentation& pres, long long k, const MetabelianGroup& g, long long a_j3,
                              long long e_j3);

struct BatteryConfig {
  std::vector<GroupSpec> groups;  // empty means default_battery_groups()
  std::uint64_t brute_budget = 50'000'000;
  long long b_radius = 10;
  bool homology_constraint = true;
  // Confirm every surgery count by brute force on the surgered presentation.
  bool cross_check_brute = false;
  // Keep sweeping after a decision so the report lists every group.
  bool full_sweep = false;
};

std::vector<GroupSpec> default_battery_groups();

struct BatteryRow {
  std::string group;
  BigInt surgery_count;
  std::optional<BigInt> seifert_count;  // under the reported b witness, if any
  bool refutes = false;                 // no b assignment matches this group
};

struct BatteryResult {
  bool compatible = false;
  std::optional<std::array<long long, 3>> b_witness;
  std::optional<std::string> witness_group;  // refutes every b assignment tried
  std::optional<BigInt> witness_surgery_count;
  std::vector<BigInt> witness_seifert_counts;  // distinct values over the b assignments
  std::size_t assignments_tried = 0;
  // No b within the radius gives |H_1| = |k|; the sweep then runs over every
  // b with gcd(a_j, b_j) = 1 and the candidate is never compatible.
  bool homology_mismatch = false;
  std::string reason;
  std::vector<BatteryRow> rows;
};

/// Candidate legs: a_j with optional fixed b_j.
struct CandidateLeg {
  long long a = 1;
  std::optional<long long> b;
};

BatteryResult consistency_battery(const GroupPresentation& pres, const SurgerySlope& slope,
                                  const std::vector<CandidateLeg>& candidate, const BatteryConfig& cfg = {});

// "2/?,3/?,7/1" style candidate text.
std::vector<CandidateLeg> parse_candidate(std::string_view text);

}  // namespace sieve
