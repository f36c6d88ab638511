// Copyright 2023 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hypermat/cli.h"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "hypermat/json_io.h"

namespace hypermat {
namespace {

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
  Json Result() const { return ParseJson(out).at("result"); }
};

Outcome Run(std::vector<std::string> args) {
  args.insert(args.begin(), "hypermat");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Outcome o;
  o.code = RunCli(static_cast<int>(argv.size()), argv.data(), out, err);
  o.out = out.str();
  o.err = err.str();
  return o;
}

TEST_CASE("delta forest on the six-edge forest") {
  Outcome o = Run({"delta", "forest", "--edges", "12,23,34,45,56,47"});
  REQUIRE(o.code == kExitOk);
  Json c = o.Result().at("clutter");
  CHECK(c.at("edges").dump() == "[[1,2,3],[2,3,4],[3,4,5],[3,4,7],[4,5,6],[4,5,7]]");
  CHECK(c.at("implicit_top") == true);
  CHECK(c.at("d") == 3);
}

TEST_CASE("grid types for k=2, l=6 prints 4") {
  Outcome o = Run({"grid", "types", "--k", "2", "--l", "6"});
  REQUIRE(o.code == kExitOk);
  CHECK(o.Result().at("line_types") == 4);
  Outcome t = Run({"grid", "types", "--k", "2", "--l", "6", "--format", "text"});
  CHECK(t.out.find("\n4\n") != std::string::npos);
}

TEST_CASE("identical invocations give byte-identical reports that embed the seed") {
  std::vector<std::string> args = {"decompose", "forest", "--edges", "12,23,34,45",
                                   "--realize", "--seed", "11"};
  Outcome a = Run(args);
  Outcome b = Run(args);
  REQUIRE(a.code == kExitOk);
  CHECK(a.out == b.out);
  Json doc = ParseJson(a.out);
  CHECK(doc.at("seed") == 11);
  CHECK(doc.at("command") == "decompose forest --edges 12,23,34,45 --realize --seed 11");
  for (const Json& comp : doc.at("result").at("components")) {
    CHECK(comp.contains("realization"));
  }
}

TEST_CASE("usage errors print the record schema and exit 64") {
  for (auto args : std::vector<std::vector<std::string>>{
           {}, {"delta"}, {"grid", "types", "--k", "2"},
           {"delta", "forest", "--edges", "12", "--format", "xml"}, {"frobnicate"}}) {
    Outcome o = Run(args);
    CHECK(o.code == kExitUsage);
    CHECK(o.err.find("\"circuits\"") != std::string::npos);
  }
  CHECK(Run({"--help"}).code == kExitOk);
}

TEST_CASE("domain errors exit 1 and budget exhaustion exits 2") {
  CHECK(Run({"delta", "forest", "--edges", "12,23,31"}).code == kExitDomain);
  CHECK(Run({"delta", "forest"}).code == kExitDomain);
  CHECK(Run({"min-matroids", "oracle", "--sets", "12", "--n", "10"}).code == kExitDomain);
  CHECK(Run({"closure", "components", "--lines", "123,124"}).code == kExitDomain);
  CHECK(Run({"perturb", "--rows", "1,0;0,1", "--lines", "12x"}).code == kExitDomain);
  Outcome b = Run({"min-matroids", "alpha", "--sets", "1234,1235", "--d", "4",
                   "--budget", "1"});
  CHECK(b.code == kExitBudget);
  CHECK(b.err.find("inconclusive") != std::string::npos);
}

TEST_CASE("search and oracle agree through the command line") {
  Outcome a = Run({"min-matroids", "alpha", "--sets", "1234,1235", "--d", "4"});
  Outcome b = Run({"min-matroids", "oracle", "--sets", "1234,1235", "--d", "4"});
  REQUIRE(a.code == kExitOk);
  REQUIRE(b.code == kExitOk);
  CHECK(a.Result().at("matroids") == b.Result().at("matroids"));
  CHECK(a.Result().at("matroids").size() == 2);
}

TEST_CASE("realizations reported by the command line verify") {
  CHECK(Run({"realize", "forest", "--edges", "12,23,34,45,56,47", "--pairs", "34,45"})
            .Result()
            .at("verified") == true);
  CHECK(Run({"realize", "grid", "--k", "3", "--l", "4", "--s", "3", "--t", "3"})
            .Result()
            .at("verified") == true);
  CHECK(Run({"realize", "plan", "--lines", "123,345,567"}).Result().at("verified") == true);
  Json p = Run({"perturb", "--rows", "1,0,1,0,1;0,1,1,0,1;0,0,0,0,0", "--lines",
                "123,345", "--eps", "1/10"})
               .Result();
  CHECK(p.at("verified") == true);
  CHECK(p.at("within_bound") == true);
  Json h = Run({"hardness", "--circuits", "123", "--n", "3"}).Result();
  CHECK(h.at("verified") == true);
}

TEST_CASE("alpha run output replays from its own trace") {
  std::filesystem::path dir = std::filesystem::temp_directory_path() / "hypermat_cli_test";
  std::filesystem::remove_all(dir);
  Outcome a = Run({"alpha", "run", "--sets", "123,345,156", "--op", "a2", "--steps", "2",
                   "--out", dir.string()});
  REQUIRE(a.code == kExitOk);
  CHECK(std::filesystem::exists(dir / "report.txt"));
  std::ifstream in(dir / "report.json");
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == a.out);
  {
    std::ofstream t(dir / "trace.json");
    t << a.Result().at("trace").dump();
  }
  Outcome b = Run({"alpha", "run", "--sets", "123,345,156", "--trace",
                   (dir / "trace.json").string()});
  REQUIRE(b.code == kExitOk);
  CHECK(b.Result().at("output") == a.Result().at("output"));
  std::filesystem::remove_all(dir);
}

TEST_CASE("catalog counts and cache reuse") {
  std::filesystem::path dir = std::filesystem::temp_directory_path() / "hypermat_cli_cache";
  std::filesystem::remove_all(dir);
  Json first = Run({"catalog", "--n", "4", "--cache-dir", dir.string()}).Result();
  Json second = Run({"catalog", "--n", "4", "--cache-dir", dir.string()}).Result();
  CHECK(first.at("count") == 67);
  CHECK(first.at("source") == "enumerated");
  CHECK(second.at("count") == 67);
  CHECK(second.at("source") == "cache");
  CHECK(Run({"catalog", "--n", "2"}).Result().at("count") == 5);
  std::filesystem::remove_all(dir);
}

TEST_CASE("closure components and DOT output") {
  std::filesystem::path dot = std::filesystem::temp_directory_path() / "hypermat_cli.dot";
  Outcome o = Run({"closure", "components", "--lines", "123,145,167", "--dot", dot.string()});
  REQUIRE(o.code == kExitOk);
  CHECK(o.Result().at("component_count") == 2);
  std::ifstream in(dot);
  std::string first;
  std::getline(in, first);
  CHECK(first == "graph configuration {");
  std::filesystem::remove(dot);
  CHECK(Run({"delta", "grid", "--k", "3", "--l", "4", "--s", "3", "--t", "3"})
            .Result()
            .at("edge_count") == 16);
}

}  // namespace
}  // namespace hypermat
