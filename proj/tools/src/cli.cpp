#include "sieve/cli.hpp"

#include <chrono>
#include <functional>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "sieve/alexander.hpp"
#include "sieve/dwcount.hpp"
#include "sieve/errors.hpp"
#include "sieve/knotio.hpp"
#include "sieve/metabelian.hpp"
#include "sieve/obstruct.hpp"

#ifndef SIEVE_VERSION
#define SIEVE_VERSION "0.0.0"
#endif

namespace sieve::cli {

namespace {

using json = nlohmann::json;

// Integers that fit in 64 bits become JSON numbers, larger ones strings.
json num(const BigInt& v) {
  if (v >= std::numeric_limits<long long>::min() && v <= std::numeric_limits<long long>::max())
    return v.convert_to<long long>();
  return to_string(v);
}

json num(const Rational& q) {
  if (denominator(q) == 1) return num(numerator(q));
  return to_string(q);
}

struct Options {
  std::string knot;
  std::string seifert;
  std::string slope;
  std::string group;
  std::string method;
  std::string candidate;
  std::string bound = "stated";
  std::vector<std::string> groups;
  long long k = 0;
  unsigned max_f = 10;
  long long radius = 10;
  std::uint64_t budget = 200'000'000;
  bool no_homology = false;
  bool brute_check = false;
  bool full_sweep = false;
};

std::string knot_fingerprint(const KnotDiagram& d) {
  std::ostringstream os;
  os << d.arc_count();
  for (const auto& c : d.crossings()) os << ';' << c.sign << ',' << c.over << ',' << c.under_in << ',' << c.under_out;
  return os.str();
}

json delta_json(const LaurentPolynomial& delta) {
  json out = json::object();
  for (const auto& [e, c] : delta.coeffs()) out[std::to_string(e)] = num(c);
  return out;
}

json psi_json(const PsiValue& v) {
  return {{"f", v.f}, {"psi", num(v.psi)}, {"omega", num(v.omega)}, {"value", num(v.value)}};
}

json cmd_alex(const Options& o) {
  const auto delta = alexander_poly(wirtinger(load_knot(o.knot)));
  return {{"delta", delta_json(delta)}, {"half_degree", half_degree(delta)}, {"text", delta.to_string()}};
}

json cmd_psi(const Options& o) {
  const auto delta = alexander_poly(wirtinger(load_knot(o.knot)));
  json table = json::array(), values = json::array();
  for (unsigned f = 1; f <= o.max_f; ++f) {
    const auto v = psi(delta, f);
    table.push_back(psi_json(v));
    values.push_back(num(v.value));
  }
  return {{"delta", delta_json(delta)}, {"table", table}, {"values", values}};
}

json breakdown_json(const SurgeryCountBreakdown& b) {
  json records = json::array();
  for (const auto& r : b.records)
    records.push_back({{"v", r.v}, {"delta_vanishes", r.delta_vanishes}, {"omega", r.omega}});
  return {{"slope", b.slope.to_string()}, {"field", b.field}, {"p", b.p},      {"exponent", b.exponent},
          {"n", b.n},                     {"c", b.c},         {"records", records}};
}

json params_json(const ClosedFormParams& cp) {
  auto triple = [](const std::array<long long, 3>& a) { return json::array({a[0], a[1], a[2]}); };
  json out{{"a", triple(cp.a)},
           {"b", triple(cp.b)},
           {"d", triple(cp.d)},
           {"d_prime", triple(cp.d_prime)},
           {"e", triple(cp.e)},
           {"c", triple(cp.choice.c)},
           {"c_prime", triple(cp.choice.c_prime)},
           {"f", cp.f},
           {"B", cp.B},
           {"D_prime", cp.D_prime},
           {"B_prime", cp.B_prime},
           {"E", cp.E},
           {"kappa2", num(cp.kappa2)},
           {"kappa1", num(cp.kappa1)}};
  if (cp.field) {
    out["F"] = cp.F;
    out["C"] = num(cp.C);
  } else {
    out["mu"] = cp.mu;
  }
  return out;
}

json cmd_count(const Options& o) {
  if (o.knot.empty() == o.seifert.empty()) throw ParseError("give exactly one of --knot and --seifert", "count");
  const MetabelianGroup g(GroupSpec::parse(o.group));
  json out{{"group", g.name()}, {"group_spec", g.spec().to_string()}, {"order", g.order()}};

  if (!o.knot.empty()) {
    const std::string method = o.method.empty() ? "kernel" : o.method;
    if (method != "kernel" && method != "brute")
      throw ParseError("method '" + method + "' needs --seifert", "--method");
    if (o.slope.empty()) throw ParseError("--slope is required with --knot", "count");
    const auto pres = wirtinger(load_knot(o.knot));
    const auto slope = SurgerySlope::parse(o.slope);
    out["method"] = method;
    if (method == "kernel") {
      const auto b = surgery_count(pres, slope, g);
      out["count"] = num(b.total);
      out["breakdown"] = breakdown_json(b);
    } else {
      BruteForceOptions bo;
      bo.node_budget = o.budget;
      bo.extra_relators = {surgery_relator(pres, slope)};
      out["count"] = hom_count_bruteforce(pres, g, bo);
    }
    return out;
  }

  const std::string method = o.method.empty() ? "closed" : o.method;
  if (method == "kernel") throw ParseError("method 'kernel' needs --knot", "--method");
  if (!o.slope.empty()) throw ParseError("--slope applies to --knot only", "count");
  const auto s = SeifertData::parse(o.seifert);
  out["method"] = method;
  out["seifert"] = s.to_string();
  if (method == "closed") {
    if (!s.is_small()) throw DomainError("the closed form needs genus 0 and exactly three legs");
    out["count"] = num(seifert_count_closed(s, g));
    out["params"] = params_json(closed_params(s, g));
  } else if (method == "charsum") {
    out["count"] = num(seifert_count_charsum(s, g));
  } else {
    BruteForceOptions bo;
    bo.node_budget = o.budget;
    out["count"] = hom_count_bruteforce(seifert_presentation(s), g, bo);
  }
  return out;
}

json cmd_screen(const Options& o) {
  if (o.k == 0) throw DomainError("--k must be nonzero");
  const auto delta = alexander_poly(wirtinger(load_knot(o.knot)));
  ScreenOptions so;
  so.bound = o.bound == "root_count" ? BoundRule::root_count : BoundRule::stated;
  const auto r = screen(delta, o.k, so, o.knot);
  json entries = json::array();
  for (const auto& e : r.entries) {
    json primes = json::array();
    for (const auto& c : e.odd_primes) primes.push_back({{"p", num(c.p)}, {"divisible", c.divisible}});
    entries.push_back({{"q", e.q},
                       {"psi", num(e.psi.psi)},
                       {"omega", num(e.psi.omega)},
                       {"zero", e.zero},
                       {"power_of_two", e.power_of_two},
                       {"bound_ok", e.bound_ok},
                       {"odd_primes", primes},
                       {"obstructs", e.obstructs}});
  }
  return {{"knot", r.knot},       {"k", r.k},         {"d", r.d},
          {"bound", to_string(r.bound)}, {"entries", entries}, {"verdict", to_string(r.verdict)},
          {"advisories", r.advisories}};
}

json cmd_battery(const Options& o) {
  const auto pres = wirtinger(load_knot(o.knot));
  const auto slope = SurgerySlope::parse(o.slope);
  const auto candidate = parse_candidate(o.candidate);
  BatteryConfig cfg;
  for (const auto& g : o.groups) cfg.groups.push_back(GroupSpec::parse(g));
  cfg.b_radius = o.radius;
  cfg.brute_budget = o.budget;
  cfg.homology_constraint = !o.no_homology;
  cfg.cross_check_brute = o.brute_check;
  cfg.full_sweep = o.full_sweep;
  const auto r = consistency_battery(pres, slope, candidate, cfg);

  json rows = json::array();
  for (const auto& row : r.rows) {
    json j{{"group", row.group}, {"surgery_count", num(row.surgery_count)}, {"refutes", row.refutes}};
    if (row.seifert_count) j["seifert_count"] = num(*row.seifert_count);
    rows.push_back(j);
  }
  json out{{"verdict", r.compatible ? "compatible" : "incompatible"},
           {"compatible", r.compatible},
           {"homology_mismatch", r.homology_mismatch},
           {"assignments_tried", r.assignments_tried},
           {"reason", r.reason},
           {"rows", rows}};
  if (r.b_witness) out["b_witness"] = json::array({(*r.b_witness)[0], (*r.b_witness)[1], (*r.b_witness)[2]});
  if (r.witness_group) {
    json counts = json::array();
    for (const auto& c : r.witness_seifert_counts) counts.push_back(num(c));
    out["witness"] = {{"group", *r.witness_group},
                      {"surgery_count", num(*r.witness_surgery_count)},
                      {"seifert_counts", counts}};
  }
  return out;
}

json inputs_json(const std::string& command, const Options& o) {
  json in = json::object();
  auto put = [&](const char* key, const std::string& v) {
    if (!v.empty()) in[key] = v;
  };
  put("knot", o.knot);
  put("seifert", o.seifert);
  put("slope", o.slope);
  put("group", o.group);
  put("method", o.method);
  put("candidate", o.candidate);
  if (command == "psi") in["max_f"] = o.max_f;
  if (command == "screen") {
    in["k"] = o.k;
    in["bound"] = o.bound;
  }
  if (command == "battery") {
    in["groups"] = o.groups;
    in["radius"] = o.radius;
    in["homology_constraint"] = !o.no_homology;
    in["brute_check"] = o.brute_check;
    in["full_sweep"] = o.full_sweep;
  }
  if (command == "count" || command == "battery") in["budget"] = o.budget;
  // A file source is identified by its content, not its path.
  if (!o.knot.empty()) in["knot_fingerprint"] = fnv1a_hex(knot_fingerprint(load_knot(o.knot)));
  return in;
}

}  // namespace

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << h;
  return os.str();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Screens knot surgeries against small Seifert fibered candidates", "surgery-sieve"};
  app.set_version_flag("--version", SIEVE_VERSION);
  app.require_subcommand(1);
  Options o;

  auto* alex = app.add_subcommand("alex", "Normalized Alexander polynomial");
  alex->add_option("--knot", o.knot, "builtin:NAME, a file, or pd:/braid: inline text")->required();

  auto* psi_cmd = app.add_subcommand("psi", "Table of psi(f) = prod over roots of (t^f - 1)");
  psi_cmd->add_option("--knot", o.knot)->required();
  psi_cmd->add_option("--max-f", o.max_f, "largest f")->check(CLI::Range(1u, 4096u));

  auto* count = app.add_subcommand("count", "Homomorphism count into a metabelian group");
  count->add_option("--knot", o.knot, "knot source; counts for the surgery along --slope");
  count->add_option("--seifert", o.seifert, "Seifert data such as \"2/1,3/1,5/1\" or \"g=1;2/1\"");
  count->add_option("--slope", o.slope, "k/l");
  count->add_option("--group", o.group, "zpm:p,m,n[,r] or fph:p,h,n[,r]")->required();
  count->add_option("--method", o.method)->check(CLI::IsMember({"closed", "charsum", "brute", "kernel"}));
  count->add_option("--budget", o.budget, "node budget for brute force");

  auto* scr = app.add_subcommand("screen", "Alexander polynomial screen for k-surgery");
  scr->add_option("--knot", o.knot)->required();
  scr->add_option("--k", o.k, "surgery coefficient numerator")->required();
  scr->add_option("--bound", o.bound)->check(CLI::IsMember({"stated", "root_count"}));

  auto* bat = app.add_subcommand("battery", "Compare counts against a candidate across many groups");
  bat->add_option("--knot", o.knot)->required();
  bat->add_option("--slope", o.slope)->required();
  bat->add_option("--candidate", o.candidate, "legs such as \"2/?,3/?,7/?\"")->required();
  bat->add_option("--group", o.groups, "repeatable; replaces the default group list");
  bat->add_option("--radius", o.radius, "search radius for unknown b")->check(CLI::Range(0LL, 1000LL));
  bat->add_option("--budget", o.budget, "node budget for --brute-check");
  bat->add_flag("--no-homology", o.no_homology, "do not require |H_1| = |k|");
  bat->add_flag("--brute-check", o.brute_check, "confirm every surgery count by brute force");
  bat->add_flag("--full-sweep", o.full_sweep, "keep going after a witness group is found");

  std::vector<const char*> argv{"surgery-sieve"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ok : usage_error;
  }

  const std::map<const CLI::App*, std::pair<std::string, std::function<json(const Options&)>>> commands{
      {alex, {"alex", cmd_alex}},
      {psi_cmd, {"psi", cmd_psi}},
      {count, {"count", cmd_count}},
      {scr, {"screen", cmd_screen}},
      {bat, {"battery", cmd_battery}}};
  const auto& [name, fn] = commands.at(app.get_subcommands().front());

  try {
    const auto start = std::chrono::steady_clock::now();
    const json inputs = inputs_json(name, o);
    json results = fn(o);
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    const json report{{"command", name},
                      {"inputs", inputs},
                      {"inputs_digest", fnv1a_hex(inputs.dump())},
                      {"results", std::move(results)},
                      {"timing_ms", ms},
                      {"version", SIEVE_VERSION}};
    out << report.dump(2) << '\n';
    return ok;
  } catch (const ConsistencyError& e) {
    err << "surgery-sieve: consistency error: " << e.what() << '\n';
    return consistency_error;
  } catch (const Error& e) {
    err << "surgery-sieve: " << e.what() << '\n';
    return usage_error;
  }
}

}  // namespace sieve::cli
