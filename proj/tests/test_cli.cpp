#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "abeltrans/cli.hpp"
#include "doctest.h"
#include "json.hpp"

using namespace abeltrans;
using Json = nlohmann::ordered_json;

namespace {

struct Outcome {
  int status;
  std::string out;
  std::string err;
};

Outcome call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int status = cli::run(args, out, err);
  return {status, out.str(), err.str()};
}

Json call_json(std::vector<std::string> args) {
  args.push_back("--json");
  const auto o = call(args);
  REQUIRE(o.status == 0);
  return Json::parse(o.out);
}

}  // namespace

TEST_CASE("parse helpers") {
  CHECK(cli::parse_vector("1, 0,3") == std::vector<std::int64_t>{1, 0, 3});
  CHECK(cli::parse_vectors("1,0;0,1").size() == 2);
  const auto s = cli::parse_named("A=1,0;0,1");
  CHECK(s.name == "A");
  CHECK(s.generators[1] == std::vector<std::int64_t>{0, 1});
  CHECK_THROWS_AS(cli::parse_vector("1,,2"), cli::ParseError);
  CHECK_THROWS_AS(cli::parse_vector("1;2"), cli::ParseError);
  CHECK_THROWS_AS(cli::parse_named("1,0"), cli::ParseError);
  CHECK_THROWS_AS(cli::parse_named("=1,0"), cli::ParseError);
}

TEST_CASE("Klein group decide") {
  const auto r = call_json({"decide", "--group", "2,2", "--sub", "A=1,0", "--sub", "B=0,1", "--sub", "C=1,1"});
  CHECK(r["verdict"] == "not-exists");
  CHECK(r["witness"].size() == 3);
  CHECK(r["case_tag"] == "m=n");
  const auto text = call({"decide", "--group", "2,2", "--sub", "A=1,0", "--sub", "B=0,1", "--sub", "C=1,1"});
  CHECK(text.status == 0);
  CHECK(text.out.find("verdict: not-exists") != std::string::npos);
  CHECK(text.out.find("witness: (1,0) (0,1) (1,1)") != std::string::npos);
}

TEST_CASE("count complements in C4 x C2") {
  const auto r = call_json({"count-complements", "--group", "4,2", "--sub", "A=1,0"});
  CHECK(r["verdict"] == "complemented");
  CHECK(r["count"] == 2);
  const auto listed = call_json({"count-complements", "--group", "4,2", "--sub", "A=1,0", "--list"});
  CHECK(listed["complements"].size() == 2);
  const auto none = call_json({"count-complements", "--group", "4", "--sub", "A=2"});
  CHECK(none["verdict"] == "not-complemented");
  CHECK(none["count"] == 0);
}

TEST_CASE("construct in C3 x C3") {
  const auto r = call_json({"construct", "--group", "3,3", "--sub", "A=1,0", "--sub", "B=0,1", "--sub", "C=1,1"});
  CHECK(r["verdict"] == "exists");
  CHECK(r["witness"].size() == 3);
  CHECK(r["certificate"]["verified"] == true);
  const auto v = call_json({"verify", "--group", "3,3", "--sub", "A=1,0", "--sub", "B=0,1", "--sub", "C=1,1",
                            "--elements", "0,0;1,2;2,1"});
  CHECK(v["verdict"] == "valid");
}

TEST_CASE("construct reports Klein obstruction with status 0") {
  const auto r = call_json({"construct", "--group", "2,2", "--sub", "A=1,0", "--sub", "B=0,1", "--sub", "C=1,1"});
  CHECK(r["verdict"] == "not-exists");
  CHECK(r["witness"].size() == 3);
}

TEST_CASE("construct dispatch") {
  CHECK(call_json({"construct", "--group", "4,2", "--sub", "A=1,0"})["method"] == "single");
  const auto pair = call_json({"construct", "--group", "4,4", "--sub", "A=1,0", "--sub", "B=1,2"});
  CHECK(pair["method"] == "pair");
  CHECK(pair["witness"].size() == 4);
  const auto homo = call_json({"construct", "--group", "5,5,5", "--sub", "A=1,0,0", "--sub", "B=0,1,0", "--sub",
                               "C=0,0,1", "--sub", "D=1,1,1"});
  CHECK(homo["method"] == "homocyclic");
  CHECK(homo["witness"].size() == 25);
}

TEST_CASE("verify reports the clashing pair") {
  const auto r = call_json({"verify", "--group", "2,2", "--sub", "A=1,0", "--elements", "0,0;1,0"});
  CHECK(r["verdict"] == "invalid");
  CHECK(r["certificate"]["reason"] == "duplicate-coset");
  CHECK(r["certificate"]["target"] == "A");
  const auto size = call_json({"verify", "--group", "2,2", "--sub", "A=1,0", "--elements", "0,0"});
  CHECK(size["certificate"]["reason"] == "cardinality");
}

TEST_CASE("count-common agrees with the oracle") {
  const auto direct = call_json({"count-common", "--group", "4,4,2", "--sub", "A=1,0,0", "--sub", "B=0,1,0", "--sub",
                                 "C=0,0,1", "--direct", "C"});
  const auto oracle = call_json({"oracle", "--group", "4,4,2", "--sub", "A=1,0,0", "--sub", "B=0,1,0"});
  CHECK(direct["count"] == oracle["common_complements"]);
  const auto two = call_json({"count-common", "--group", "8,2", "--sub", "A=1,0", "--sub", "B=1,1"});
  const auto scan = call_json({"oracle", "--group", "8,2", "--sub", "A=1,0", "--sub", "B=1,1"});
  CHECK(two["count"] == scan["common_complements"]);
}

TEST_CASE("construct-complement") {
  const auto r = call_json({"construct-complement", "--group", "3,3,9", "--sub", "A=1,0,0", "--sub", "B=0,1,0"});
  CHECK(r["verdict"] == "exists");
  CHECK(r["certificate"]["complement"]["order"] == 27);
}

TEST_CASE("compare agrees") {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"compare", "--group", "4,2", "--sub", "A=1,0"},
           {"compare", "--group", "2,2", "--sub", "A=1,0", "--sub", "B=0,1", "--sub", "C=1,1"},
           {"compare", "--group", "4,4", "--sub", "A=1,0", "--sub", "B=0,1", "--sub", "C=1,1"},
           {"compare", "--group", "8,8,2", "--sub", "A=1,0,0", "--sub", "B=0,1,0", "--sub", "C=1,1,1"},
       }) {
    const auto r = call_json(args);
    CHECK(r["verdict"] == "agree");
  }
}

TEST_CASE("exit statuses") {
  CHECK(call({"decide", "--group", "2,x"}).status == 2);
  CHECK(call({"decide", "--group", "1,2"}).status == 2);
  CHECK(call({"decide", "--group", "2,2", "--sub", "A=1"}).status == 2);
  CHECK(call({"decide", "--group", "2,2", "--sub", "A=1,0"}).status == 2);
  CHECK(call({"nonsense"}).status == 2);
  CHECK(call({"sweep", "--family", "nope", "--max-order", "4"}).status == 2);
  CHECK(call({"decide", "--group", "4", "--sub", "A=1", "--sub", "B=2", "--sub", "C=1"}).status == 3);
  CHECK(call({"construct-complement", "--group", "4", "--sub", "A=2"}).status == 3);
  CHECK(call({"count-common", "--group", "2,2,2", "--sub", "A=1,0,0", "--sub", "B=0,1,0", "--sub", "C=0,0,1"})
            .status == 3);
  CHECK(call({"--help"}).status == 0);
}

TEST_CASE("cap from the environment") {
  ::setenv("ABELTRANS_CAP", "4", 1);
  CHECK(call({"oracle", "--group", "2,2,2", "--sub", "A=1,0,0"}).status == 3);
  ::setenv("ABELTRANS_CAP", "zero", 1);
  CHECK(call({"oracle", "--group", "2,2", "--sub", "A=1,0"}).status == 2);
  ::unsetenv("ABELTRANS_CAP");
  ::setenv("ABELTRANS_ENUM_CAP", "1", 1);
  CHECK(call({"count-complements", "--group", "4,2", "--sub", "A=1,0", "--list"}).status == 3);
  ::unsetenv("ABELTRANS_ENUM_CAP");
}

TEST_CASE("json document input") {
  const std::string path = "test_cli_input.json";
  {
    std::ofstream f(path);
    f << R"({"orders": [2, 2], "subgroups": {"C": [[1, 1]], "A": [[1, 0]], "B": [[0, 1]]}})";
  }
  const auto r = call_json({"decide", "--input", path});
  CHECK(r["verdict"] == "not-exists");
  CHECK(call({"decide", "--input", path, "--group", "2,2"}).status == 2);
  {
    std::ofstream f(path);
    f << R"({"orders": [2, 2], "subgroups": {"A": "oops"}})";
  }
  CHECK(call({"decide", "--input", path}).status == 2);
  std::remove(path.c_str());
  CHECK(call({"decide", "--input", "missing.json"}).status == 2);
}

TEST_CASE("output is byte-identical across runs") {
  const std::vector<std::string> compare{"compare", "--json", "--group", "4,4,2", "--sub", "A=1,0,0", "--sub",
                                         "B=0,1,0", "--sub", "C=1,1,1"};
  const std::vector<std::string> sweep{"sweep", "--json", "--family", "three-cyclic", "--max-order", "16"};
  for (const auto& args : {compare, sweep}) {
    const auto a = call(args);
    const auto b = call(args);
    CHECK(a.status == 0);
    CHECK(a.out == b.out);
  }
}

TEST_CASE("small sweeps agree") {
  CHECK(call_json({"sweep", "--family", "three-cyclic-2-groups", "--max-order", "16"})["verdict"] == "agree");
  CHECK(call_json({"sweep", "--family", "complements", "--max-order", "24"})["verdict"] == "agree");
  CHECK(call_json({"sweep", "--family", "maximal-cyclic", "--prime", "3", "--max-exponent", "3"})["verdict"] ==
        "agree");
}
