#pragma once

// The groups A x|_phi Z_n with A = Z_{p^m} or F_{p^h}, phi multiplication by
// a unit r of order n. Conjugacy classes, character tables, the eta sums and
// a brute-force homomorphism counter.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sieve/cyclotomic.hpp"
#include "sieve/finitering.hpp"
#include "sieve/knotio.hpp"

namespace sieve {

/// Textual group description: "zpm:p,m,n[,r]" or "fph:p,h,n[,r]".
/// For fph the optional r is an element code (base-p digits, low first).
struct GroupSpec {
  enum class Kind { zpm, fph };
  Kind kind = Kind::zpm;
  std::uint64_t p = 0;
  unsigned exponent = 1;  // m or h
  std::uint64_t n = 1;
  std::optional<std::uint64_t> r;

  static GroupSpec parse(std::string_view text);
  static GroupSpec zpm(std::uint64_t p, unsigned m, std::uint64_t n, std::optional<std::uint64_t> r = std::nullopt);
  static GroupSpec fph(std::uint64_t p, unsigned h, std::uint64_t n, std::optional<std::uint64_t> r = std::nullopt);
  std::string to_string() const;
};

struct GroupElement {
  std::uint64_t u = 0;  // element of A (residue or field code)
  std::uint64_t v = 0;  // residue mod n

  friend bool operator==(const GroupElement&, const GroupElement&) = default;
};

enum class ClassKind { identity, alpha, beta };
const char* to_string(ClassKind k);

struct ConjClass {
  std::uint32_t representative = 0;  // element index
  std::uint64_t size = 1;
  std::uint64_t centralizer_order = 1;
  ClassKind kind = ClassKind::identity;
};

/// Irreducible character of G. Linear characters send (u,v) to zeta_n^{tv};
/// induced characters come from the phi-orbit of a nonzero s in the dual of
/// A and vanish off A.
struct IrredChar {
  enum class Kind { linear, induced };
  Kind kind = Kind::linear;
  std::uint64_t dim = 1;
  std::uint64_t param = 0;  // t for linear, orbit representative s for induced
  std::string label;
  std::vector<CyclotomicNumber> values;  // indexed like classes()
};

/// Pair (class of x, irreducible character of Cen(x)).
///
/// For the identity class `chi` indexes characters(); for alpha classes it is
/// the element s of A giving u -> zeta^{<s,u>}; for beta classes it is t in
/// Z_n giving (0,w) -> zeta_n^{tw}.
struct LambdaPair {
  std::size_t class_index = 0;
  std::uint64_t chi = 0;
};

class MetabelianGroup {
 public:
  using Element = std::uint32_t;  // index v * #A + u

  explicit MetabelianGroup(const GroupSpec& spec);

  const GroupSpec& spec() const noexcept { return spec_; }
  bool is_zpm() const noexcept { return spec_.kind == GroupSpec::Kind::zpm; }
  std::uint64_t p() const noexcept { return spec_.p; }
  unsigned exponent() const noexcept { return spec_.exponent; }
  std::uint64_t n() const noexcept { return spec_.n; }
  std::uint64_t r() const noexcept { return r_; }
  std::uint64_t a_order() const noexcept { return a_order_; }
  std::uint64_t order() const noexcept { return a_order_ * spec_.n; }
  // Exponent of A: p^m for Z_{p^m}, p for F_{p^h}.
  std::uint64_t a_exponent() const noexcept { return a_exp_; }
  // Order of the root of unity carrying every character value.
  unsigned root_order() const noexcept { return static_cast<unsigned>(a_exp_ * spec_.n); }
  std::string name() const;

  const std::optional<ZpmRing>& ring() const noexcept { return ring_; }
  const std::optional<FphField>& field() const noexcept { return field_; }

  Element index(GroupElement g) const;
  GroupElement element(Element i) const;
  std::uint64_t u_of(Element i) const { return i % a_order_; }
  std::uint64_t v_of(Element i) const { return i / a_order_; }

  Element identity() const { return 0; }
  Element mul(Element a, Element b) const { return mul_[static_cast<std::size_t>(a) * order() + b]; }
  Element inv(Element a) const { return inv_[a]; }
  Element pow(Element a, long long k) const;
  Element conj(Element g, Element x) const { return mul(mul(g, x), inv(g)); }  // g x g^-1

  GroupElement mul(GroupElement a, GroupElement b) const { return element(mul(index(a), index(b))); }
  GroupElement inv(GroupElement a) const { return element(inv(index(a))); }
  GroupElement pow(GroupElement a, long long k) const { return element(pow(index(a), k)); }
  GroupElement conj(GroupElement g, GroupElement x) const { return element(conj(index(g), index(x))); }

  // A-level arithmetic.
  std::uint64_t a_add(std::uint64_t x, std::uint64_t y) const { return a_add_[x * a_order_ + y]; }
  std::uint64_t a_neg(std::uint64_t x) const { return a_neg_[x]; }
  std::uint64_t phi_pow(std::uint64_t x, std::uint64_t v) const { return phi_[(v % spec_.n) * a_order_ + x]; }
  // <s,u> in Z_{a_exponent()}: s*u for Z_{p^m}, Tr(su) for F_{p^h}.
  std::uint64_t pairing(std::uint64_t s, std::uint64_t u) const { return pair_[s * a_order_ + u]; }

  const std::vector<ConjClass>& classes() const noexcept { return classes_; }
  std::size_t class_of(Element x) const { return class_of_[x]; }
  const std::vector<IrredChar>& characters() const noexcept { return chars_; }
  std::vector<LambdaPair> lambda_pairs() const;
  // Dimension of the centralizer character in a lambda pair.
  std::uint64_t lambda_dim(const LambdaPair& lam) const;

  // chi(x) for chi in characters(), as an unreduced root sum of order root_order().
  RootSum character_value(std::size_t chi, Element x) const;
  // Value of the centralizer character of `lam` at z in Cen(x), as a root exponent
  // of order root_order().
  std::uint64_t centralizer_char_exponent(const LambdaPair& lam, Element z) const;

 private:
  void build_tables();
  void build_classes();
  void build_characters();

  GroupSpec spec_;
  std::optional<ZpmRing> ring_;
  std::optional<FphField> field_;
  std::uint64_t r_ = 1;
  std::uint64_t a_order_ = 1;
  std::uint64_t a_exp_ = 1;
  std::vector<std::uint64_t> a_add_, a_neg_, phi_, pair_;
  std::vector<Element> mul_, inv_;
  std::vector<ConjClass> classes_;
  std::vector<std::size_t> class_of_;
  std::vector<IrredChar> chars_;
  std::vector<std::vector<std::uint64_t>> orbits_;  // phi-orbits of nonzero s
};

// (1/dim rho) * sum_{z^a = x} chi_rho(z^-b), by direct enumeration.
CyclotomicNumber eta(const MetabelianGroup& g, const LambdaPair& lam, long long a, long long b);

// S_n^f(d,w) = sum_{1<=v<=n, n | dv - w} zeta_n^{fv}. `e` overrides the
// multiplier with e d = (d,n) mod n in closed mode.
enum class SumMode { direct, closed };
CyclotomicNumber s_sum(long long n, long long f, long long d, long long w, SumMode mode,
                       std::optional<long long> e = std::nullopt);

struct BruteForceOptions {
  std::uint64_t node_budget = 200'000'000;
  // Relators whose satisfaction is checked in addition to the presentation's.
  std::vector<Word> extra_relators;
};

// Number of homomorphisms pres -> G killing every relator (and the extras).
// Throws ResourceError when the search visits more than node_budget nodes.
std::uint64_t hom_count_bruteforce(const GroupPresentation& pres, const MetabelianGroup& g,
                                   const BruteForceOptions& opts = {});

}  // namespace sieve
