#include "sieve/knotio.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <regex>
#include <sstream>

#include "json.hpp"

namespace sieve {

using json = nlohmann::json;

namespace {

std::string at_crossing(std::size_t i, const char* field) {
  return "crossings[" + std::to_string(i) + "]." + field;
}

}  // namespace

KnotDiagram::KnotDiagram(int arcs, std::vector<Crossing> crossings) : arcs_(arcs), crossings_(std::move(crossings)) {
  if (arcs_ < 1) throw ParseError("arc count must be positive", "arcs");
  if (crossings_.empty()) {
    if (arcs_ != 1) throw ParseError("a crossingless knot diagram has exactly one arc", "arcs");
    return;
  }
  if (static_cast<int>(crossings_.size()) != arcs_)
    throw ParseError("a knot diagram has as many arcs as crossings (" + std::to_string(crossings_.size()) +
                         " crossings, " + std::to_string(arcs_) + " arcs)",
                     "arcs");
  std::vector<int> seen_in(arcs_ + 1, -1), seen_out(arcs_ + 1, -1);
  std::vector<int> next(arcs_ + 1, 0);
  for (std::size_t i = 0; i < crossings_.size(); ++i) {
    const Crossing& c = crossings_[i];
    if (c.sign != 1 && c.sign != -1) throw ParseError("sign must be +1 or -1", at_crossing(i, "sign"));
    auto check_arc = [&](int a, const char* field) {
      if (a < 1 || a > arcs_) throw ParseError("arc id " + std::to_string(a) + " out of range", at_crossing(i, field));
    };
    check_arc(c.over, "over");
    check_arc(c.under_in, "under_in");
    check_arc(c.under_out, "under_out");
    if (seen_in[c.under_in] >= 0)
      throw ParseError("arc " + std::to_string(c.under_in) + " ends at two crossings", at_crossing(i, "under_in"));
    if (seen_out[c.under_out] >= 0)
      throw ParseError("arc " + std::to_string(c.under_out) + " starts at two crossings", at_crossing(i, "under_out"));
    seen_in[c.under_in] = static_cast<int>(i);
    seen_out[c.under_out] = static_cast<int>(i);
    next[c.under_in] = c.under_out;
  }
  int a = 1, steps = 0;
  do {
    a = next[a];
    ++steps;
  } while (a != 1 && steps <= arcs_);
  if (steps != arcs_) throw ParseError("diagram has more than one component", "crossings");
}

int KnotDiagram::writhe() const {
  int w = 0;
  for (const auto& c : crossings_) w += c.sign;
  return w;
}

KnotDiagram KnotDiagram::mirrored() const {
  std::vector<Crossing> cs = crossings_;
  for (auto& c : cs) c.sign = -c.sign;
  return KnotDiagram(arcs_, std::move(cs));
}

// ---------------------------------------------------------------------------
// Words

std::string word_to_string(const Word& w) {
  if (w.empty()) return "1";
  std::ostringstream os;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) os << " ";
    os << "x" << std::abs(w[i]);
    if (w[i] < 0) os << "^-1";
  }
  return os.str();
}

Word word_inverse(const Word& w) {
  Word r(w.rbegin(), w.rend());
  for (auto& x : r) x = -x;
  return r;
}

Word word_power(const Word& w, long long k) {
  const Word base = k < 0 ? word_inverse(w) : w;
  Word r;
  for (long long i = 0; i < std::abs(k); ++i) r.insert(r.end(), base.begin(), base.end());
  return r;
}

Word word_concat(const Word& a, const Word& b) {
  Word r = a;
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

int exponent_sum(const Word& w) {
  int s = 0;
  for (int x : w) s += x > 0 ? 1 : -1;
  return s;
}

// ---------------------------------------------------------------------------
// SurgerySlope

SurgerySlope::SurgerySlope(long long k_, long long l_) : k(k_), l(l_) {
  if (l == 0) throw DomainError("slope denominator must be nonzero");
  if (std::gcd(k, l) != 1) throw DomainError("slope " + std::to_string(k) + "/" + std::to_string(l) + " is not reduced");
}

SurgerySlope SurgerySlope::parse(std::string_view text) {
  static const std::regex re(R"(\s*([+-]?\d+)\s*(?:/\s*([+-]?\d+))?\s*)");
  std::cmatch m;
  const std::string s(text);
  if (!std::regex_match(s.c_str(), m, re)) throw ParseError("slope must look like k/l", std::string(text));
  try {
    const long long k = std::stoll(m[1].str());
    const long long l = m[2].matched ? std::stoll(m[2].str()) : 1;
    return SurgerySlope(k, l);
  } catch (const std::out_of_range&) {
    throw ParseError("slope out of range", std::string(text));
  }
}

std::string SurgerySlope::to_string() const { return std::to_string(k) + "/" + std::to_string(l); }

// ---------------------------------------------------------------------------
// Canonical renumbering: arc 1 is `start`, then arcs in traversal order.

namespace {

KnotDiagram renumber_by_traversal(int arcs, const std::vector<Crossing>& cs, int start) {
  if (cs.empty()) return KnotDiagram(1, {});
  std::vector<int> next(arcs + 1, 0);
  for (const auto& c : cs) next[c.under_in] = c.under_out;
  std::vector<int> label(arcs + 1, 0);
  int a = start;
  for (int i = 1; i <= arcs; ++i) {
    if (a < 1 || label[a] != 0) throw ParseError("diagram has more than one component", "crossings");
    label[a] = i;
    a = next[a];
  }
  // crossings reordered so crossing i is where arc i ends
  std::vector<Crossing> out(arcs);
  for (const auto& c : cs) {
    const Crossing r{c.sign, label[c.over], label[c.under_in], label[c.under_out]};
    out[r.under_in - 1] = r;
  }
  return KnotDiagram(arcs, std::move(out));
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

// Collapse raw segment ids to arcs and build a validated diagram.
KnotDiagram assemble(int segments, UnionFind& uf, const std::vector<Crossing>& raw, int start_segment) {
  std::map<int, int> arc_of_root;
  for (int s = 0; s < segments; ++s) arc_of_root.emplace(uf.find(s), 0);
  int next_id = 1;
  for (auto& [root, id] : arc_of_root) id = next_id++;
  const int arcs = next_id - 1;
  std::vector<Crossing> cs;
  for (const auto& c : raw)
    cs.push_back({c.sign, arc_of_root[uf.find(c.over)], arc_of_root[uf.find(c.under_in)], arc_of_root[uf.find(c.under_out)]});
  if (cs.empty()) return KnotDiagram(1, {});
  if (arcs != static_cast<int>(cs.size()))
    throw ParseError("diagram has more than one component or a crossingless component", "crossings");
  (void)KnotDiagram(arcs, cs);  // validates
  return renumber_by_traversal(arcs, cs, arc_of_root[uf.find(start_segment)]);
}

long long json_int(const json& j, const std::string& where) {
  if (!j.is_number_integer()) throw ParseError("expected an integer", where);
  return j.get<long long>();
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what(), "byte " + std::to_string(e.byte));
  }
}

}  // namespace

KnotDiagram parse_native(std::string_view json_text) {
  const json j = parse_json(json_text);
  if (!j.is_object()) throw ParseError("expected a JSON object", "top level");
  if (!j.contains("arcs")) throw ParseError("missing field", "arcs");
  if (!j.contains("crossings") || !j["crossings"].is_array()) throw ParseError("missing crossings array", "crossings");
  const long long arcs = json_int(j["arcs"], "arcs");
  if (arcs < 1 || arcs > 100000) throw ParseError("arc count out of range", "arcs");
  std::vector<Crossing> cs;
  std::size_t i = 0;
  for (const auto& c : j["crossings"]) {
    if (!c.is_object()) throw ParseError("expected an object", "crossings[" + std::to_string(i) + "]");
    auto field = [&](const char* name) {
      if (!c.contains(name)) throw ParseError("missing field", at_crossing(i, name));
      const long long v = json_int(c[name], at_crossing(i, name));
      if (v < -1000000 || v > 1000000) throw ParseError("value out of range", at_crossing(i, name));
      return static_cast<int>(v);
    };
    cs.push_back({field("sign"), field("over"), field("under_in"), field("under_out")});
    ++i;
  }
  return KnotDiagram(static_cast<int>(arcs), std::move(cs));
}

KnotDiagram from_braid(const std::vector<int>& word, int strands) {
  if (strands < 1) throw ParseError("braid needs at least one strand", "strands");
  std::vector<int> perm(strands);
  std::iota(perm.begin(), perm.end(), 0);
  for (std::size_t i = 0; i < word.size(); ++i) {
    const int g = word[i];
    if (g == 0 || std::abs(g) >= strands)
      throw ParseError("braid letter " + std::to_string(g) + " out of range", "word[" + std::to_string(i) + "]");
    std::swap(perm[std::abs(g) - 1], perm[std::abs(g)]);
  }
  // perm[pos] = starting strand now at pos; the closure is a knot iff this is one cycle
  {
    int x = 0, len = 0;
    do {
      x = perm[x];
      ++len;
    } while (x != 0);
    if (len != strands) throw ParseError("braid closure is a link with more than one component", "word");
  }
  // segment ids: 0..strands-1 at the top, then one per crossing
  int segments = strands;
  std::vector<int> pos(strands);
  std::iota(pos.begin(), pos.end(), 0);
  std::vector<Crossing> raw;
  for (int g : word) {
    const int i = std::abs(g) - 1;
    const int left = pos[i], right = pos[i + 1];
    const int fresh = segments++;
    if (g > 0) {
      raw.push_back({1, left, right, fresh});
      pos[i + 1] = left;
      pos[i] = fresh;
    } else {
      raw.push_back({-1, right, left, fresh});
      pos[i] = right;
      pos[i + 1] = fresh;
    }
  }
  UnionFind uf(segments);
  for (int j = 0; j < strands; ++j) uf.unite(pos[j], j);
  return assemble(segments, uf, raw, 0);
}

KnotDiagram parse_braid_json(std::string_view json_text) {
  const json j = parse_json(json_text);
  if (!j.is_object()) throw ParseError("expected a JSON object", "top level");
  if (!j.contains("strands")) throw ParseError("missing field", "strands");
  if (!j.contains("word") || !j["word"].is_array()) throw ParseError("missing word array", "word");
  const long long strands = json_int(j["strands"], "strands");
  if (strands < 1 || strands > 10000) throw ParseError("strand count out of range", "strands");
  std::vector<int> word;
  for (std::size_t i = 0; i < j["word"].size(); ++i) {
    const long long g = json_int(j["word"][i], "word[" + std::to_string(i) + "]");
    if (std::abs(g) > 10000) throw ParseError("braid letter out of range", "word[" + std::to_string(i) + "]");
    word.push_back(static_cast<int>(g));
  }
  return from_braid(word, static_cast<int>(strands));
}

KnotDiagram parse_pd(std::string_view text) {
  const std::string s(text);
  static const std::regex outer(R"(\s*PD\s*\[(.*)\]\s*)");
  std::smatch m;
  if (!std::regex_match(s, m, outer)) throw ParseError("expected PD[X[a,b,c,d], ...]", "byte 0");
  const std::string body = m[1].str();
  const auto body_offset = static_cast<std::size_t>(m.position(1));
  static const std::regex cross(R"(X\s*\[\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\])");
  std::vector<std::array<int, 4>> xs;
  std::size_t cursor = 0;
  for (auto it = std::sregex_iterator(body.begin(), body.end(), cross); it != std::sregex_iterator(); ++it) {
    const std::string gap = body.substr(cursor, static_cast<std::size_t>(it->position()) - cursor);
    if (gap.find_first_not_of(" \t\r\n,") != std::string::npos)
      throw ParseError("unexpected text in PD code", "byte " + std::to_string(body_offset + cursor));
    std::array<int, 4> x{};
    for (int k = 0; k < 4; ++k) {
      try {
        x[k] = std::stoi((*it)[k + 1].str());
      } catch (const std::exception&) {
        throw ParseError("edge label out of range", "X[" + std::to_string(xs.size()) + "]");
      }
    }
    xs.push_back(x);
    cursor = static_cast<std::size_t>(it->position() + it->length());
  }
  if (body.substr(cursor).find_first_not_of(" \t\r\n,") != std::string::npos)
    throw ParseError("unexpected text in PD code", "byte " + std::to_string(body_offset + cursor));
  if (xs.empty()) return KnotDiagram(1, {});

  // Edge labels are 1..2c; each appears in exactly two tuple slots.
  const int edges = static_cast<int>(2 * xs.size());
  std::vector<int> uses(edges + 1, 0);
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (int e : xs[i]) {
      if (e < 1 || e > edges) throw ParseError("edge label " + std::to_string(e) + " out of range 1.." + std::to_string(edges), "X[" + std::to_string(i) + "]");
      ++uses[e];
    }
  for (int e = 1; e <= edges; ++e)
    if (uses[e] != 2) throw ParseError("edge " + std::to_string(e) + " must appear exactly twice", "PD");

  UnionFind uf(edges);
  std::vector<Crossing> raw;
  for (const auto& x : xs) {
    const int i = x[0] - 1, j = x[1] - 1, k = x[2] - 1, l = x[3] - 1;
    uf.unite(j, l);
    const bool positive = i == j || k == l || j - l == 1 || l - j > 1;
    raw.push_back({positive ? 1 : -1, j, i, k});
  }
  return assemble(edges, uf, raw, 0);
}

// ---------------------------------------------------------------------------

GroupPresentation wirtinger(const KnotDiagram& d, bool keep_all) {
  GroupPresentation p;
  p.generator_count = d.arc_count();
  p.preferred_meridian = d.arc_count();
  const auto& cs = d.crossings();
  const std::size_t used = keep_all || cs.empty() ? cs.size() : cs.size() - 1;
  for (std::size_t i = 0; i < used; ++i) {
    const Crossing& c = cs[i];
    p.relators.push_back({-c.under_out, c.sign * c.over, c.under_in, -c.sign * c.over});
  }
  p.longitude = longitude(d);
  return p;
}

Word longitude(const KnotDiagram& d) {
  const auto& cs = d.crossings();
  if (cs.empty()) return {};
  const int m = d.arc_count();
  std::vector<const Crossing*> ends_at(m + 1, nullptr);
  for (const auto& c : cs) ends_at[c.under_in] = &c;
  // x_{next} = g x_{cur} g^{-1} with g = x_over^sign; W = g_last ... g_first
  Word w;
  int a = m;
  for (int step = 0; step < m; ++step) {
    const Crossing& c = *ends_at[a];
    w.insert(w.begin(), c.sign * c.over);
    a = c.under_out;
  }
  const Word correction = word_power(Word{m}, -d.writhe());
  return word_concat(w, correction);
}

// ---------------------------------------------------------------------------

namespace {
struct BuiltinEntry {
  const char* name;
  std::vector<int> braid;
  int strands;
};

const std::vector<BuiltinEntry>& builtin_table() {
  static const std::vector<BuiltinEntry> table = {
      {"unknot", {}, 1},
      {"trefoil", {1, 1, 1}, 2},
      {"figure8", {1, -2, 1, -2}, 3},
      {"5_2", {1, 1, 1, 2, -1, 2}, 3},
  };
  return table;
}
}  // namespace

std::vector<std::string> builtin_names() {
  std::vector<std::string> names;
  for (const auto& e : builtin_table()) names.emplace_back(e.name);
  return names;
}

KnotDiagram builtin(std::string_view name) {
  for (const auto& e : builtin_table())
    if (name == e.name) return from_braid(e.braid, e.strands);
  std::string avail;
  for (const auto& n : builtin_names()) avail += (avail.empty() ? "" : ", ") + n;
  throw ParseError("unknown built-in knot '" + std::string(name) + "' (available: " + avail + ")", "name");
}

KnotDiagram load_knot(std::string_view source) {
  auto starts = [&](std::string_view prefix) { return source.substr(0, prefix.size()) == prefix; };
  if (starts("builtin:")) return builtin(source.substr(8));
  if (starts("pd:")) return parse_pd(source.substr(3));
  if (starts("braid:")) return parse_braid_json(source.substr(6));
  std::ifstream in{std::string(source)};
  if (!in) throw ParseError("cannot open knot file '" + std::string(source) + "'", std::string(source));
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text.compare(first, 2, "PD") == 0) return parse_pd(text);
  const json j = parse_json(text);
  if (j.is_object() && j.contains("strands")) return parse_braid_json(text);
  return parse_native(text);
}

}  // namespace sieve
