#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "sieve/cli.hpp"

using nlohmann::json;

namespace {

struct Run {
  int code = -1;
  std::string out, err;
  json doc() const { return json::parse(out); }
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  Run r;
  r.code = sieve::cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

json results(std::vector<std::string> args) {
  const auto r = cli(std::move(args));
  REQUIRE_MESSAGE(r.code == 0, r.err);
  return r.doc().at("results");
}

std::string data(const char* name) { return std::string(SIEVE_TEST_DATA) + "/" + name; }

}  // namespace

TEST_CASE("fnv-1a digests") {
  CHECK(sieve::cli::fnv1a_hex("") == "cbf29ce484222325");
  CHECK(sieve::cli::fnv1a_hex("a") == "af63dc4c8601ec8c");
  CHECK(sieve::cli::fnv1a_hex("foobar") == "85944171f73967e8");
}

TEST_CASE("alex") {
  CHECK(results({"alex", "--knot", "builtin:figure8"}).at("delta") == json{{"-1", 1}, {"0", -3}, {"1", 1}});
  CHECK(results({"alex", "--knot", "builtin:unknot"}).at("delta") == json{{"0", 1}});
  CHECK(results({"alex", "--knot", data("trefoil.json")}).at("delta") == json{{"-1", 1}, {"0", -1}, {"1", 1}});
  const auto bad = cli({"alex", "--knot", data("bad_duplicate_out.json")});
  CHECK(bad.code == 1);
  CHECK(bad.out.empty());
  CHECK_FALSE(bad.err.empty());
  CHECK(cli({"alex", "--knot", "missing.json"}).code == 1);
}

TEST_CASE("psi") {
  CHECK(results({"psi", "--knot", "builtin:figure8", "--max-f", "5"}).at("values") == json{1, 5, 16, 45, 121});
  CHECK(results({"psi", "--knot", "builtin:trefoil", "--max-f", "6"}).at("values").back() == 0);
  CHECK(results({"psi", "--knot", "builtin:unknot", "--max-f", "4"}).at("values") == json{1, 1, 1, 1});
  CHECK(cli({"psi", "--knot", "builtin:unknot", "--max-f", "0"}).code == 1);
}

TEST_CASE("count") {
  const auto k = results({"count", "--knot", "builtin:trefoil", "--slope", "3/1", "--group", "zpm:7,1,3", "--method",
                          "kernel"});
  CHECK(k.at("count") == 15);
  CHECK(k.at("breakdown").at("records").size() == 2);
  CHECK(results({"count", "--seifert", "2/1,3/1,5/1", "--group", "zpm:7,1,3", "--method", "closed"}).at("count") == 1);
  CHECK(results({"count", "--seifert", "1/1,1/1,1/1", "--group", "fph:2,2,3", "--method", "charsum"}).at("count") == 9);
  CHECK(results({"count", "--knot", "builtin:figure8", "--slope", "3", "--group", "fph:2,2,3", "--method", "brute"})
            .at("count") == 33);
  CHECK(results({"count", "--seifert", "g=1", "--group", "zpm:7,1,3", "--method", "charsum"}).at("count") == 525);
}

TEST_CASE("count rejects inapplicable requests") {
  CHECK(cli({"count", "--seifert", "2/1,3/1,5/1,7/1", "--group", "zpm:7,1,3", "--method", "closed"}).code == 1);
  CHECK(cli({"count", "--knot", "builtin:trefoil", "--slope", "3", "--group", "zpm:7,1,3", "--method", "closed"}).code ==
        1);
  CHECK(cli({"count", "--seifert", "2/1,3/1,5/1", "--group", "zpm:7,1,3", "--method", "kernel"}).code == 1);
  CHECK(cli({"count", "--knot", "builtin:trefoil", "--group", "zpm:7,1,3"}).code == 1);
  CHECK(cli({"count", "--knot", "builtin:trefoil", "--slope", "4/2", "--group", "zpm:7,1,3"}).code == 1);
  CHECK(cli({"count", "--knot", "builtin:trefoil", "--slope", "3", "--group", "zpm:7,1,4"}).code == 1);
  CHECK(cli({"count", "--seifert", "2/1,3/1,5/1", "--group", "zpm:7,1,3", "--method", "magic"}).code == 1);
  CHECK(cli({"count", "--knot", "builtin:trefoil", "--slope", "3", "--group", "zpm:7,1,3", "--method", "brute",
             "--budget", "3"})
            .code == 1);
}

TEST_CASE("closed, charsum and brute agree") {
  for (const char* group : {"zpm:7,1,3", "zpm:5,1,4", "fph:2,2,3"})
    for (const char* s : {"2/1,3/1,5/1", "3/1,3/1,3/1", "2/1,2/1,2/-1", "2/1,4/-1,5/1", "1/0,1/0,1/0", "3/2,4/1,5/-2"}) {
      const auto closed = results({"count", "--seifert", s, "--group", group, "--method", "closed"}).at("count");
      CHECK(results({"count", "--seifert", s, "--group", group, "--method", "charsum"}).at("count") == closed);
      CHECK(results({"count", "--seifert", s, "--group", group, "--method", "brute"}).at("count") == closed);
    }
}

TEST_CASE("screen") {
  const auto r10 = results({"screen", "--knot", "builtin:figure8", "--k", "10"});
  CHECK(r10.at("verdict") == "obstructed");
  CHECK(r10.at("entries").at(0).at("q") == 2);
  CHECK(r10.at("entries").at(0).at("psi") == 5);
  CHECK(results({"screen", "--knot", "builtin:figure8", "--k", "3"}).at("verdict") == "consistent");
  CHECK(results({"screen", "--knot", "builtin:figure8", "--k", "2", "--bound", "root_count"}).at("verdict") ==
        "consistent");
  CHECK(cli({"screen", "--knot", "builtin:figure8", "--k", "0"}).code == 1);
  CHECK(cli({"screen", "--knot", "builtin:figure8"}).code == 1);
}

TEST_CASE("battery") {
  const auto neg = results({"battery", "--knot", "builtin:figure8", "--slope", "2/1", "--candidate", "2/?,3/?,7/?"});
  CHECK(neg.at("verdict") == "incompatible");
  CHECK(neg.contains("witness"));
  const auto pos = results({"battery", "--knot", "builtin:figure8", "--slope", "1/1", "--candidate", "2/?,3/?,7/?"});
  CHECK(pos.at("verdict") == "compatible");
  CHECK(pos.at("b_witness").size() == 3);
  const auto small = results({"battery", "--knot", "builtin:trefoil", "--slope", "9", "--candidate", "2,3,3", "--group",
                              "zpm:7,1,3", "--group", "fph:2,2,3", "--brute-check"});
  CHECK(small.at("verdict") == "compatible");
  CHECK(small.at("rows").size() == 2);
  CHECK(cli({"battery", "--knot", "builtin:figure8", "--slope", "2/1", "--candidate", "2/?,3/?"}).code == 1);
}

TEST_CASE("reports are deterministic and round-trip") {
  const std::vector<std::vector<std::string>> invocations{
      {"alex", "--knot", "builtin:5_2"},
      {"psi", "--knot", "builtin:trefoil", "--max-f", "8"},
      {"count", "--knot", "builtin:figure8", "--slope", "6", "--group", "fph:2,2,3"},
      {"count", "--seifert", "3/1,3/1,3/1", "--group", "zpm:7,1,3"},
      {"screen", "--knot", "builtin:figure8", "--k", "30"},
      {"battery", "--knot", "builtin:figure8", "--slope", "3", "--candidate", "3/?,3/?,4/?"}};
  for (const auto& args : invocations) {
    const auto a = cli(args), b = cli(args);
    REQUIRE(a.code == 0);
    const auto da = a.doc(), db = b.doc();
    CHECK(da.at("results") == db.at("results"));
    CHECK(da.at("inputs_digest") == db.at("inputs_digest"));
    CHECK(da.at("command") == args.front());
    CHECK(json::parse(da.dump()) == da);
    for (const char* key : {"command", "inputs", "inputs_digest", "results", "timing_ms", "version"}) CHECK(da.contains(key));
  }
  const auto d1 = cli({"alex", "--knot", "builtin:trefoil"}).doc().at("inputs_digest");
  const auto d2 = cli({"alex", "--knot", data("trefoil.json")}).doc().at("inputs_digest");
  CHECK(d1 != d2);
}

TEST_CASE("usage") {
  CHECK(cli({}).code == 1);
  CHECK(cli({"--help"}).code == 0);
  CHECK(cli({"frobnicate"}).code == 1);
  const auto v = cli({"--version"});
  CHECK(v.code == 0);
  CHECK(v.out.find('.') != std::string::npos);
}
