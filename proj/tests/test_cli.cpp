#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "flg/cli.hpp"
#include "flg/report.hpp"

using namespace flg;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("documented examples") {
    auto r = run({"word", "root", "--rank", "2", "ababab"});
    CHECK(r.code == 0);
    CHECK(r.out == "root=ab exp=3\n");

    r = run({"genus", "of", "--gmax", "3", "-B", "5", "abABabAB"});
    CHECK(r.code == 0);
    const Json j = Json::parse(r.out);
    CHECK(j["genus_lower"] == 2);
    CHECK(j["genus_upper"] == 2);

    r = run({"logic", "eval", "phi", "--n", "2", "--x0", "a", "--x1", "a", "--x2", "aa"});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("SATISFIED i=0 j=1 y=a\n", 0) == 0);
  }

  TEST_CASE("exit codes") {
    CHECK(run({"word", "reduce", "aAb"}).code == 0);
    auto r = run({"word", "reduce", "abc"});
    CHECK(r.code == 1);
    CHECK(r.err.find("InvalidLetter") != std::string::npos);
    CHECK(run({"word", "root", "1"}).code == 1);
    CHECK(run({"logic", "parse", "Ax (x ="}).code == 1);
    CHECK(run({"logic", "separate", "ab", "ba"}).code == 1);
    CHECK(run({"surface", "separate", "aabbccdd"}).code == 1);
    CHECK(run({}).code == 2);
    CHECK(run({"word"}).code == 2);
    CHECK(run({"word", "reduce"}).code == 2);
    CHECK(run({"word", "reduce", "--format", "xml", "ab"}).code == 2);
    CHECK(run({"genus", "of", "--gmax", "9", "abAB"}).code == 2);
    CHECK(run({"word", "reduce", "--bogus", "ab"}).code == 2);
    CHECK(run({"--help"}).code == 0);
  }

  TEST_CASE("json errors") {
    const auto r = run({"logic", "parse", "--format", "json", "Ax (x ="});
    CHECK(r.code == 1);
    const Json j = Json::parse(r.out);
    CHECK(j["error"]["kind"] == "SyntaxError");
    CHECK(j["error"]["position"].is_number());
  }

  TEST_CASE("json reports round trip") {
    const std::vector<std::vector<std::string>> commands{
        {"word", "reduce", "--format", "json", "abAB"},
        {"word", "conj", "--format", "json", "abAB", "ABab"},
        {"auto", "minimize", "--format", "json", "aab"},
        {"abelian", "ranks", "--format", "json", "Z^2 + Z/4", "--p", "2", "--k", "1"},
        {"abelian", "snf", "--format", "json", "--rank", "4", "aabbccdd", "--element", "abcd"},
        {"genus", "of", "--gmax", "2", "-B", "4", "abAB"},
        {"genus", "dhscan", "-L", "4", "--n-max", "3", "--gmax", "2", "-B", "4"},
        {"genus", "ftable", "--g", "1", "--n", "1", "-L", "4", "-B", "4"},
        {"logic", "build", "--format", "json", "phi", "--n", "2"},
        {"logic", "check", "--format", "json", "Ax (x = 1)", "--radius", "1"},
        {"logic", "separate", "--format", "json", "a", "b"},
        {"surface", "separate", "--format", "json", "abcd"},
    };
    for (const auto& c : commands) {
      const auto r = run(c);
      INFO(c[0], " ", c[1]);
      REQUIRE(r.code == 0);
      const Report rep = parse_report(r.out);
      CHECK(emit_report(rep, Format::Json) == r.out);
      CHECK(rep.command == c[0] + " " + c[1]);
      CHECK_FALSE(rep.runtime_ms);
    }
  }

  TEST_CASE("report serialization") {
    Report r;
    r.command = "demo";
    r.parameters = {{"x", 1}};
    r.result = {{"b", 2}, {"a", 1}};
    r.records = {Json{{"k", 1}}, Json{{"k", 2}}};
    r.runtime_ms = 12.5;
    const std::string s = emit_report(r, Format::Json);
    CHECK(parse_report(s) == r);
    // result fields stay in insertion order, provenance last
    CHECK(s.find("\"b\":2,\"a\":1,\"provenance\"") != std::string::npos);
    CHECK(emit_report(r, Format::Json) == s);
    CHECK_THROWS(parse_report("not json"));
  }

  TEST_CASE("timing is opt in") {
    const auto r = run({"word", "reduce", "--format", "json", "--timing", "ab"});
    const Json j = Json::parse(r.out);
    CHECK(j["provenance"].contains("runtime_ms"));
    const auto q = run({"word", "reduce", "--format", "json", "ab"});
    CHECK_FALSE(Json::parse(q.out)["provenance"].contains("runtime_ms"));
  }

  TEST_CASE("identical flags give byte identical output") {
    const std::vector<std::vector<std::string>> commands{
        {"genus", "dhscan", "-L", "4", "--n-max", "3", "--gmax", "2", "-B", "4", "--jobs", "3"},
        {"logic", "check", "Ax Ey (x*y = y*x)", "--radius", "2", "--jobs", "2"},
        {"logic", "separate", "abab", "aabb", "--seed", "7"},
        {"auto", "primitive", "abaab"},
    };
    for (const auto& c : commands) CHECK(run(c).out == run(c).out);
  }

  TEST_CASE("worker count does not change results") {
    auto scan = [](const char* jobs) {
      return parse_report(run({"genus", "dhscan", "-L", "6", "--n-max", "2", "--gmax", "2", "-B", "4", "--jobs", jobs}).out);
    };
    const Report a = scan("1"), b = scan("4");
    CHECK(a.records == b.records);
    CHECK(a.result == b.result);
  }

  TEST_CASE("output file") {
    const std::string path = "cli_test_output.txt";
    const auto r = run({"word", "reduce", "--out", path, "aab"});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream in(path);
    std::string line;
    std::getline(in, line);
    CHECK(line == "aab");
    std::remove(path.c_str());
  }
}
