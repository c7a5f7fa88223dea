#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "dualemb/cli.hpp"

using namespace dualemb;

namespace {

struct Run {
  int code;
  std::string out, err;
  Json json() const { return Json::parse(out); }
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("dualemb_test_" + name)).string();
}

}  // namespace

TEST_CASE("threshold table for two points") {
  const auto r = run({"threshold", "--n", "2", "--gamma-max", "4"});
  REQUIRE(r.code == 0);
  const auto j = r.json();
  const auto& rows = j["result"]["rows"];
  REQUIRE(rows.size() == 3);
  CHECK(rows[0]["semigroup"] == "none");
  CHECK(rows[1]["semigroup"] == "none");
  CHECK(rows[2]["semigroup"] == "witness");
  CHECK(j["config"]["seed"] == 1);
  CHECK(j["config"]["command"] == "threshold");
}

TEST_CASE("canonical witness verifies from files") {
  const auto s2 = temp_path("self2.json"), s4 = temp_path("self4.json"), w = temp_path("w.json");
  REQUIRE(run({"build", "--monoid", "full:2", "--out", s2}).code == 0);
  REQUIRE(run({"build", "--monoid", "full:4", "--out", s4}).code == 0);
  REQUIRE(run({"build", "--canonical-witness", "2", "--out", w}).code == 0);
  CHECK(run({"verify", "--witness", w, "--source", s2, "--target", s4, "--dual"}).code == 0);
  CHECK(run({"verify", "--witness", w}).code == 0);
  const auto flipped = run({"verify", "--witness", w, "--no-dual"});
  CHECK(flipped.code == 1);
  CHECK(flipped.json()["result"]["verification"]["homomorphic"] == false);
}

TEST_CASE("emitted search witnesses are self-validating") {
  const auto path = temp_path("found.json");
  const auto r = run({"embed-search", "--source", "full:2", "--target", "full:4", "--dual", "--out", path});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  CHECK(run({"verify", "--witness", path}).code == 0);
  const auto none = run({"embed-search", "--source", "full:2", "--target", "full:3", "--dual"});
  CHECK(none.code == 1);
  CHECK(none.json()["result"]["exhaustion"]["complete"] == true);
}

TEST_CASE("budget exhaustion is inconclusive, not a refutation") {
  const auto r = run({"--node-budget", "2", "embed-search", "--source", "full:2", "--target", "full:3", "--dual"});
  CHECK(r.code == 2);
  CHECK(r.json()["result"]["outcome"] == "inconclusive");
  CHECK(r.json()["config"]["budgets"]["nodes"] == 2);
}

TEST_CASE("worker count does not change the result") {
  const auto a = run({"--jobs", "1", "embed-search", "--source", "full:2", "--target", "full:4", "--dual"});
  const auto b = run({"--jobs", "3", "embed-search", "--source", "full:2", "--target", "full:4", "--dual"});
  REQUIRE(a.code == 0);
  CHECK(a.json()["result"] == b.json()["result"]);
}

TEST_CASE("mu certificate round trip") {
  const auto path = temp_path("mu.json");
  REQUIRE(run({"mu-cert", "--n", "3", "--out", path}).code == 0);
  const auto v = run({"verify", "--mu-cert", path});
  CHECK(v.code == 0);
  CHECK(v.json()["result"]["reproduced"] == true);
  const auto j = Json::parse(std::ifstream(path));
  CHECK(j["result"]["bound"] == 8);
  CHECK(j["result"]["lemmas"]["3.2"] == true);
  CHECK(j["result"]["gamma_size"] == 8);
}

TEST_CASE("classification sweep") {
  const auto r = run({"classify-acts", "--max-order", "3", "--omega", "2"});
  REQUIRE(r.code == 0);
  const auto j = r.json();
  CHECK(j["result"]["records"].size() == 10);
  for (const auto& rec : j["result"]["records"]) CHECK(rec["routes_agree"] == true);
}

TEST_CASE("indep, matroid and linal commands") {
  const auto i = run({"indep", "--instance", R"({"kind":"vspace","p":2,"n":2})", "--subset", "1,2"});
  REQUIRE(i.code == 0);
  CHECK(i.json()["result"]["mIndependent"]["value"] == true);
  const auto m = run({"matroid", "--instance", R"({"kind":"mact","monoid":"two_null","omega":1})"});
  CHECK(m.code == 1);
  CHECK(run({"matroid", "--instance", R"({"kind":"mact","monoid":"cyclic:2","omega":2})"}).code == 0);
  const auto l = run({"--seed", "9", "linal-checks", "--p", "3", "--n", "3", "--trials", "200"});
  CHECK(l.code == 0);
  CHECK(l.json()["config"]["seed"] == 9);
  CHECK(l.json()["result"]["all_passed"] == true);
}

TEST_CASE("usage and input errors") {
  CHECK(run({}).code == 3);
  CHECK(run({"frobnicate"}).code == 3);
  CHECK(run({"threshold", "--n"}).code == 3);
  CHECK(run({"--node-budget", "0", "threshold"}).code == 3);
  const auto bad = temp_path("bad.json");
  std::ofstream(bad) << R"({"size": 2, "table": [[0, 1], [1)";
  const auto r = run({"embed-search", "--source", bad, "--target", "full:2"});
  CHECK(r.code == 3);
  CHECK(r.err.find("byte") != std::string::npos);
  const auto nonassoc = temp_path("nonassoc.json");
  std::ofstream(nonassoc) << R"({"size": 2, "identity": null, "table": [[1, 0], [0, 0]]})";
  CHECK(run({"embed-search", "--source", nonassoc, "--target", "full:2"}).code == 3);
  CHECK(run({"indep", "--instance", R"({"kind":"vspace","p":2,"n":2})", "--subset", "9"}).code == 3);
}

TEST_CASE("text output renders the JSON") {
  const auto t = run({"--text", "threshold", "--n", "1", "--gamma-max", "2"});
  CHECK(t.code == 0);
  CHECK(t.out.find("min_monoid: 1") != std::string::npos);
  CHECK(t.out.find("seed: 1") != std::string::npos);
}
