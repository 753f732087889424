#pragma once

// Homomorphism counts into the metabelian targets: surgery counts from the
// Alexander matrix, Seifert counts from the character sum, and the closed
// forms for small Seifert manifolds.

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sieve/exactalg.hpp"
#include "sieve/knotio.hpp"
#include "sieve/metabelian.hpp"

namespace sieve {

/// Genus and exceptional fibre data (a_j, b_j) of M(g; (a_1,b_1), ...).
struct SeifertData {
  int genus = 0;
  std::vector<std::pair<long long, long long>> legs;

  SeifertData() = default;
  SeifertData(int genus, std::vector<std::pair<long long, long long>> legs);  // validates

  // "a1/b1,a2/b2,..." optionally prefixed by "g=G;" or "g=G" alone.
  static SeifertData parse(std::string_view text);
  std::string to_string() const;
  bool is_small() const { return genus == 0 && legs.size() == 3; }
};

struct KernelRecord {
  std::uint64_t v = 0;
  bool delta_vanishes = false;
  unsigned omega = 0;  // p^omega (resp. p^{h omega}) solutions of M'(r^v) u = 0
};

struct SurgeryCountBreakdown {
  SurgerySlope slope;
  std::string group;
  bool field = false;  // F_{p^h} target
  std::uint64_t p = 0;
  unsigned exponent = 1;
  std::uint64_t n = 1;
  std::vector<KernelRecord> records;  // every 0 < v < n with kv = 0 mod n
  std::uint64_t c = 0;                // records with delta_vanishes
  BigInt total;

  // Recomputes the total from the per-v records.
  BigInt reassemble() const;
};

SurgeryCountBreakdown surgery_count_zpm(const GroupPresentation& pres, const SurgerySlope& slope, const MetabelianGroup& g);
SurgeryCountBreakdown surgery_count_fph(const GroupPresentation& pres, const SurgerySlope& slope, const MetabelianGroup& g);
SurgeryCountBreakdown surgery_count(const GroupPresentation& pres, const SurgerySlope& slope, const MetabelianGroup& g);

// The surgered group: the presentation plus x_m^k y^l.
Word surgery_relator(const GroupPresentation& pres, const SurgerySlope& slope);

// Generators x_1..x_L, h, then a_i, b_i per handle.
GroupPresentation seifert_presentation(const SeifertData& s);

BigInt seifert_count_charsum(const SeifertData& s, const MetabelianGroup& g);

/// Character sum split by the kind of lambda: alpha classes, beta classes,
/// and the identity class with linear resp. induced characters. The sum of
/// the four times |G| is the homomorphism count.
struct CharsumBlocks {
  Rational alpha, beta, identity_linear, identity_induced;
  Rational total() const { return alpha + beta + identity_linear + identity_induced; }
};
CharsumBlocks charsum_blocks(const SeifertData& s, const MetabelianGroup& g);

// ---------------------------------------------------------------------------
// Closed forms for S^2(a1/b1, a2/b2, a3/b3).

struct MultiplierChoice {
  std::array<long long, 3> c{};        // c_j a_j = (a_j, p^m) mod p^m
  std::array<long long, 3> c_prime{};  // c'_j a_j = (a_j, n) mod n
};

struct ClosedFormParams {
  std::array<long long, 3> a{}, b{};
  std::uint64_t p = 0;
  unsigned exponent = 1;  // m or h
  std::uint64_t n = 1;
  bool field = false;

  std::array<long long, 3> d{};        // (a_j, p^m), or (a_j, p)^h for fields
  std::array<long long, 3> d_prime{};  // (a_j, n)
  std::array<long long, 3> e{};        // (a_{j+1}, a_{j-1})
  MultiplierChoice choice;
  unsigned f = 0;  // p^f = ([a1,a2,a3], p^m)
  long long B = 0;
  long long D_prime = 1;
  long long B_prime = 0;
  long long E = 1;
  BigInt kappa2;
  BigInt kappa1;        // kappa_1 or kappa~_1
  BigInt kappa1_local;  // the part of kappa_1 without the E term
  long long mu = 0;     // Z_{p^m} only
  long long F = 0;      // F_{p^h} only, in [0, p); meaningful when p does not divide a1 a2 a3
  BigInt C;             // F_{p^h} only
};

// The Z_n-side parameters D', B', E of a three-leg candidate; `c_prime`
// overrides the multipliers c'_j a_j = (a_j, n) mod n.
struct NSideParams {
  std::array<long long, 3> c_prime{};
  long long D_prime = 1;
  long long B_prime = 0;
  long long E = 1;
};
NSideParams n_side_params(const std::array<long long, 3>& a, const std::array<long long, 3>& b, long long n,
                          const std::optional<std::array<long long, 3>>& c_prime = std::nullopt);

ClosedFormParams closed_params(const SeifertData& s, const MetabelianGroup& g,
                               const std::optional<MultiplierChoice>& choice = std::nullopt);
// kappa_2 for legs a and group parameter n alone.
BigInt kappa2(long long a1, long long a2, long long a3, long long n);

BigInt seifert_count_closed_zpm(const SeifertData& s, const MetabelianGroup& g,
                                const std::optional<MultiplierChoice>& choice = std::nullopt);
// Specialization for n = q^s; DomainError when n is not a prime power.
BigInt seifert_count_closed_zpm_primepower(const SeifertData& s, const MetabelianGroup& g,
                                           const std::optional<MultiplierChoice>& choice = std::nullopt);
BigInt seifert_count_closed_fph(const SeifertData& s, const MetabelianGroup& g);
BigInt seifert_count_closed(const SeifertData& s, const MetabelianGroup& g);

// Closed expressions for the four character-sum blocks.
CharsumBlocks closed_partial_sums(const SeifertData& s, const MetabelianGroup& g);

}  // namespace sieve
