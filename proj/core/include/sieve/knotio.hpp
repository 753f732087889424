#pragma once

// Knot diagrams, their Wirtinger presentations and peripheral words.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sieve/errors.hpp"

namespace sieve {

struct Crossing {
  int sign = 1;  // +1 or -1
  int over = 0;
  int under_in = 0;
  int under_out = 0;

  friend bool operator==(const Crossing&, const Crossing&) = default;
};

/// Oriented knot diagram as a list of crossings on arcs 1..m.
///
/// The crossing relation is x_out = x_over^sign x_in x_over^-sign.
/// Construction validates that every arc ends and starts exactly once at an
/// undercrossing and that following under-arcs visits all arcs in one cycle.
class KnotDiagram {
 public:
  KnotDiagram(int arcs, std::vector<Crossing> crossings);

  int arc_count() const noexcept { return arcs_; }
  const std::vector<Crossing>& crossings() const noexcept { return crossings_; }
  int writhe() const;
  KnotDiagram mirrored() const;

  friend bool operator==(const KnotDiagram&, const KnotDiagram&) = default;

 private:
  int arcs_;
  std::vector<Crossing> crossings_;
};

// Letters are +-(generator index), generators numbered from 1.
using Word = std::vector<int>;

std::string word_to_string(const Word& w);
Word word_inverse(const Word& w);
Word word_power(const Word& w, long long k);
Word word_concat(const Word& a, const Word& b);
int exponent_sum(const Word& w);

struct GroupPresentation {
  int generator_count = 0;
  std::vector<Word> relators;
  int preferred_meridian = 1;
  std::optional<Word> longitude;
};

struct SurgerySlope {
  long long k = 0;
  long long l = 1;

  SurgerySlope() = default;
  SurgerySlope(long long k, long long l);  // requires gcd(k, l) = 1, l != 0
  // "k/l" or "k".
  static SurgerySlope parse(std::string_view text);
  std::string to_string() const;
};

KnotDiagram parse_native(std::string_view json_text);
KnotDiagram parse_pd(std::string_view text);
KnotDiagram parse_braid_json(std::string_view json_text);
KnotDiagram from_braid(const std::vector<int>& word, int strands);

// One relator per crossing, the last one dropped unless keep_all is set.
GroupPresentation wirtinger(const KnotDiagram& d, bool keep_all = false);
// 0-framed longitude commuting with the last arc generator.
Word longitude(const KnotDiagram& d);

KnotDiagram builtin(std::string_view name);
std::vector<std::string> builtin_names();

// "builtin:NAME", "pd:PD[...]", "braid:{json}", or a path to a native, braid
// JSON or PD file.
KnotDiagram load_knot(std::string_view source);

}  // namespace sieve
