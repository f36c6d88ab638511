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

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hypermat/alpha.h"
#include "hypermat/collection.h"
#include "hypermat/configuration.h"
#include "hypermat/hardness.h"
#include "hypermat/hypergraph.h"
#include "hypermat/json_io.h"
#include "hypermat/matroid.h"
#include "hypermat/oracle.h"
#include "hypermat/realization.h"

namespace hypermat {

const char* const kSchemaText = R"(Records (labels are 1-based, sets are sorted label lists):
  matroid        {"n": int, "circuits": [[int,...],...]}
  clutter        {"n": int, "d": int, "edges": [[int,...],...], "implicit_top": bool}
  forest         {"n": int, "edges": [[int,int],...]}
  collection     {"singletons": [int,...], "pairs": [[int,int],...]}
  configuration  {"n": int, "points": [int,...], "lines": [[int,...],...], "loops": [int,...]}
  matrix         {"d": int, "n": int, "entries": [["num/den",...],...]}
  trace          [{"kind": "a1"|"a2"|"a3", "A1": [...], "A2": [...],
                   "input_hash": hex16, "output_hash": hex16}, ...]
  report         {"command": str, "seed": int, "result": {...}}
Inline sets: comma-separated; a set is a run of single-digit labels ("123")
or dot-separated labels ("1.10.11"). Forest edges use the same syntax.
Matrix rows: --rows "1,0,1/2;0,1,3" (rows split by ';').
Exit codes: 0 ok, 1 domain error, 2 budget exhausted (inconclusive), 64 usage.
)";

namespace {

struct Options {
  std::uint64_t seed = 1;
  std::size_t budget = 200000;
  int d = 3;
  int retries = 50;
  std::string format = "json";
  std::string cache_dir;
  std::string out_dir;
  std::string dot_path;

  int n = 0;
  std::string edges;
  std::string sets;
  std::string clutter_file;
  std::string lines;
  std::string loops;
  std::string config_file;
  std::string singletons;
  std::string pairs;
  std::string matrix_file;
  std::string rows;
  std::string matroid_file;
  std::string circuits;
  std::string trace_file;
  std::string op = "a2";
  std::string a1;
  std::string a2;
  std::string eps = "1/10";
  int steps = 1;
  int k = 0, l = 0, s = 0, t = 0;
  bool realize = false;
  bool all = false;
  bool fano = false;
  bool list = false;
};

struct Report {
  Json result = Json::object();
  std::vector<std::string> text;
  std::string dot;
};

std::vector<std::vector<int>> ParseSetList(const std::string& text) {
  std::vector<std::vector<int>> out;
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ',')) {
    token.erase(std::remove_if(token.begin(), token.end(), ::isspace), token.end());
    if (token.empty()) continue;
    std::vector<int> labels;
    if (token.find('.') != std::string::npos) {
      std::stringstream ts(token);
      std::string part;
      while (std::getline(ts, part, '.')) {
        if (part.empty() || !std::all_of(part.begin(), part.end(), ::isdigit)) {
          throw DomainError("bad label in \"" + token + "\"");
        }
        labels.push_back(std::stoi(part));
      }
    } else {
      for (char ch : token) {
        if (!std::isdigit(static_cast<unsigned char>(ch))) {
          throw DomainError("bad label in \"" + token + "\"");
        }
        labels.push_back(ch - '0');
      }
    }
    out.push_back(labels);
  }
  return out;
}

int MaxLabel(const std::vector<std::vector<int>>& sets) {
  int n = 0;
  for (const auto& s : sets) {
    for (int x : s) n = std::max(n, x);
  }
  return n;
}

std::vector<Mask> ToMasks(const std::vector<std::vector<int>>& sets, int n) {
  std::vector<Mask> out;
  for (const auto& s : sets) {
    Mask m = FromLabels(s, n);
    if (Popcount(m) != static_cast<int>(s.size())) {
      throw DomainError("repeated label in a set");
    }
    out.push_back(m);
  }
  return out;
}

Json ReadJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ParseJson(ss.str());
}

std::string Require(const std::string& value, const char* flag) {
  if (value.empty()) throw DomainError(std::string("missing ") + flag);
  return value;
}

Forest ForestInput(const Options& o) {
  auto sets = ParseSetList(Require(o.edges, "--edges"));
  std::vector<std::pair<int, int>> edges;
  for (const auto& e : sets) {
    if (e.size() != 2) throw DomainError("forest edges need exactly two labels");
    edges.emplace_back(e[0], e[1]);
  }
  int n = o.n > 0 ? o.n : MaxLabel(sets);
  return Forest(n, edges);
}

Clutter ClutterInput(const Options& o) {
  if (!o.clutter_file.empty()) return ClutterFromJson(ReadJsonFile(o.clutter_file));
  if (!o.edges.empty()) return DeltaForest(ForestInput(o));
  auto sets = ParseSetList(Require(o.sets, "--sets, --edges or --clutter"));
  int n = o.n > 0 ? o.n : MaxLabel(sets);
  return PadWithBigCircuits(MinClutter(n, ToMasks(sets, n)), o.d);
}

Configuration ConfigInput(const Options& o, int n_default = 0) {
  if (!o.config_file.empty()) return ConfigurationFromJson(ReadJsonFile(o.config_file));
  auto lines = ParseSetList(Require(o.lines, "--lines or --config"));
  auto loops = ParseSetList(o.loops);
  int n = std::max({o.n, n_default, MaxLabel(lines), MaxLabel(loops)});
  Mask loop_mask = 0;
  for (Mask m : ToMasks(loops, n)) loop_mask |= m;
  return Configuration::Make(n, FullMask(n), ToMasks(lines, n), loop_mask);
}

Matroid MatroidInput(const Options& o) {
  if (!o.matroid_file.empty()) return MatroidFromJson(ReadJsonFile(o.matroid_file));
  auto sets = ParseSetList(o.circuits);
  int n = o.n > 0 ? o.n : MaxLabel(sets);
  return Matroid::FromCircuits(n, ToMasks(sets, n));
}

RationalMatrix MatrixInput(const Options& o) {
  if (!o.matrix_file.empty()) return MatrixFromJson(ReadJsonFile(o.matrix_file));
  std::vector<RationalVector> rows;
  std::stringstream ss(Require(o.rows, "--rows or --matrix"));
  std::string row;
  while (std::getline(ss, row, ';')) {
    RationalVector v;
    std::stringstream rs(row);
    std::string x;
    while (std::getline(rs, x, ',')) {
      x.erase(std::remove_if(x.begin(), x.end(), ::isspace), x.end());
      v.push_back(ParseRational(x));
    }
    if (!rows.empty() && v.size() != rows[0].size()) {
      throw DomainError("matrix rows differ in length");
    }
    rows.push_back(v);
  }
  return RationalMatrix::FromRows(rows);
}

RetryPolicy Policy(const Options& o) {
  if (o.retries < 1) throw DomainError("--retries must be positive");
  return RetryPolicy{o.seed, o.retries};
}

GridShape ShapeInput(const Options& o) {
  GridShape shape{o.k, o.l, o.s, o.t};
  shape.Validate();
  return shape;
}

std::string SetText(Mask m) { return ToString(m); }

std::string FamilyText(const std::vector<Mask>& family) {
  std::string s;
  for (size_t i = 0; i < family.size(); ++i) {
    if (i) s += " ";
    s += SetText(family[i]);
  }
  return s;
}

std::string MatroidText(const Matroid& m) {
  return "n=" + std::to_string(m.n()) + " rank=" + std::to_string(m.rank()) +
         " small circuits: " + FamilyText(m.small_circuits());
}

Json MatroidList(const std::vector<Matroid>& ms) {
  Json arr = Json::array();
  for (const Matroid& m : ms) arr.push_back(MatroidToJson(m));
  return arr;
}

std::string MatrixText(const RationalMatrix& a) {
  std::string s;
  for (int i = 0; i < a.d; ++i) {
    s += "  [";
    for (int j = 0; j < a.n; ++j) s += (j ? " " : "") + FormatRational(a.at(i, j));
    s += "]\n";
  }
  return s;
}

std::string ConfigurationDot(const Configuration& c) {
  std::string s = "graph configuration {\n";
  ForEachBit(c.points, [&](int p) {
    s += "  p" + std::to_string(p + 1) + " [label=\"" + std::to_string(p + 1) +
         "\"" + (Contains(c.loops, p) ? ", shape=box" : "") + "];\n";
  });
  for (size_t i = 0; i < c.lines.size(); ++i) {
    s += "  L" + std::to_string(i + 1) + " [shape=point];\n";
    ForEachBit(c.lines[i], [&](int p) {
      s += "  L" + std::to_string(i + 1) + " -- p" + std::to_string(p + 1) + ";\n";
    });
  }
  return s + "}\n";
}

std::string ForestDot(const Forest& g, const std::vector<Collection>& cs) {
  std::string s = "graph forest {\n";
  for (int v = 0; v < g.n(); ++v) s += "  v" + std::to_string(v + 1) + ";\n";
  for (auto [u, v] : g.edges()) {
    s += "  v" + std::to_string(u + 1) + " -- v" + std::to_string(v + 1) + ";\n";
  }
  for (size_t i = 0; i < cs.size(); ++i) {
    s += "  // collection " + std::to_string(i) + ": singletons " +
         SetText(cs[i].singletons) + " pairs " + FamilyText(cs[i].pairs) + "\n";
  }
  return s + "}\n";
}

// ---- verbs ----

Report DeltaForestVerb(const Options& o) {
  Forest g = ForestInput(o);
  Clutter c = DeltaForest(g);
  Report r;
  r.result["forest"] = ForestToJson(g);
  r.result["clutter"] = ClutterToJson(c);
  r.text.push_back("edges: " + FamilyText(c.edges));
  r.text.push_back("plus every 4-subset containing none of them");
  return r;
}

Report DeltaGridVerb(const Options& o) {
  Clutter c = DeltaGrid(ShapeInput(o));
  Report r;
  r.result["clutter"] = ClutterToJson(c);
  r.result["edge_count"] = c.edges.size();
  r.text.push_back("edge count: " + std::to_string(c.edges.size()));
  r.text.push_back("edges: " + FamilyText(c.edges));
  return r;
}

Report DeltaCiVerb(const Options& o) {
  CiModel m = CiModelToHypergraph(o.d, o.k, o.l, o.s, o.t);
  Report r;
  r.result["clutter"] = ClutterToJson(m.clutter);
  r.result["statements"] = m.statements;
  r.result["notes"] = m.notes;
  r.result["sizes"] = {{"X", m.x_size}, {"Y1", m.y1_size}, {"Y2", m.y2_size},
                       {"H1", m.h1_size}, {"H2", m.h2_size}};
  for (const auto& s : m.statements) r.text.push_back("statement: " + s);
  for (const auto& s : m.notes) r.text.push_back("note: " + s);
  r.text.push_back("edges: " + FamilyText(m.clutter.edges));
  return r;
}

Report SearchVerb(const Options& o) {
  Clutter c = ClutterInput(o);
  SearchLimits limits;
  limits.max_nodes = o.budget;
  limits.keep_non_minimal = o.all;
  SearchResult s = SearchMinDependent(c, limits);
  Report r;
  r.result["clutter"] = ClutterToJson(c);
  r.result["matroids"] = MatroidList(s.matroids);
  r.result["complete"] = s.complete;
  r.result["nodes"] = s.nodes;
  r.result["terminals"] = s.terminals;
  r.text.push_back("nodes " + std::to_string(s.nodes) + ", terminals " +
                   std::to_string(s.terminals));
  r.text.push_back(std::to_string(s.matroids.size()) + " matroid(s)");
  for (const Matroid& m : s.matroids) r.text.push_back("  " + MatroidText(m));
  return r;
}

Report OracleVerb(const Options& o) {
  Clutter c = ClutterInput(o);
  std::vector<Matroid> ms = BruteMinimalDependent(c);
  Report r;
  r.result["clutter"] = ClutterToJson(c);
  r.result["matroids"] = MatroidList(ms);
  r.text.push_back(std::to_string(ms.size()) + " minimal matroid(s)");
  for (const Matroid& m : ms) r.text.push_back("  " + MatroidText(m));
  return r;
}

Report ForestMinVerb(const Options& o) {
  Forest g = ForestInput(o);
  std::vector<DecompositionEntry> entries = DecomposeForestVariety(g);
  std::vector<Matroid> ms;
  for (const auto& e : entries) ms.push_back(e.matroid);
  std::sort(ms.begin(), ms.end());
  Report r;
  r.result["forest"] = ForestToJson(g);
  r.result["matroids"] = MatroidList(ms);
  r.text.push_back(std::to_string(ms.size()) + " minimal matroid(s)");
  for (const Matroid& m : ms) r.text.push_back("  " + MatroidText(m));
  return r;
}

Report DecomposeVerb(const Options& o) {
  Forest g = ForestInput(o);
  std::vector<DecompositionEntry> entries = DecomposeForestVariety(g);
  Json report = DecompositionReportToJson(entries);
  Report r;
  std::vector<Collection> cs;
  for (size_t i = 0; i < entries.size(); ++i) {
    const DecompositionEntry& e = entries[i];
    cs.push_back(e.collection);
    std::string line = "component " + std::to_string(i) + ": singletons " +
                       SetText(e.collection.singletons) + " pairs " +
                       FamilyText(e.collection.pairs) + " configuration " +
                       std::to_string(report[i]["configuration_id"].get<int>());
    r.text.push_back(line);
    if (o.realize) {
      RetryPolicy p = Policy(o);
      p.seed = o.seed + i;
      RationalMatrix a = RealizeForestMatroid(g, e.collection, p);
      if (!VerifyRealization(a, e.matroid)) {
        throw VerificationFailed("realization witness failed verification");
      }
      report[i]["realization"] = MatrixToJson(a);
      report[i]["realization_seed"] = p.seed;
      r.text.push_back(MatrixText(a));
    }
  }
  r.result["forest"] = ForestToJson(g);
  r.result["components"] = report;
  r.result["component_count"] = entries.size();
  r.text.insert(r.text.begin(), std::to_string(entries.size()) + " component(s)");
  r.dot = ForestDot(g, cs);
  return r;
}

Report ClosureVerb(const Options& o) {
  Configuration c = ConfigInput(o);
  std::vector<ClosureComponent> comps = CombClosureComponents(c);
  IrreducibilityTag tag = IrreducibilityTagOf(c);
  Report r;
  r.result["configuration"] = ConfigurationToJson(c);
  r.result["tag"] = TagName(tag.kind);
  Json arr = Json::array();
  for (const ClosureComponent& comp : comps) {
    arr.push_back({{"loops", MaskToJson(comp.loops)},
                   {"matroid", MatroidToJson(comp.matroid)}});
  }
  r.result["components"] = arr;
  r.result["component_count"] = comps.size();
  r.text.push_back(std::to_string(comps.size()) + " component(s), central tag " +
                   TagName(tag.kind));
  for (const ClosureComponent& comp : comps) {
    r.text.push_back("  loops " + SetText(comp.loops) + ": " + MatroidText(comp.matroid));
  }
  r.dot = ConfigurationDot(c);
  return r;
}

Report RealizeForestVerb(const Options& o) {
  Forest g = ForestInput(o);
  Collection c;
  auto singles = ParseSetList(o.singletons);
  for (const auto& s : singles) {
    for (int x : s) c.singletons |= FromLabels({x}, g.n());
  }
  c.pairs = ToMasks(ParseSetList(o.pairs), g.n());
  for (Mask p : c.pairs) {
    if (Popcount(p) != 2) throw DomainError("--pairs entries need two labels");
  }
  c.Normalize();
  if (!IsValidCollection(g, c)) throw DomainError("collection is not valid for the forest");
  RationalMatrix a = RealizeForestMatroid(g, c, Policy(o));
  Matroid m = MatroidFromCollection(g, c);
  Report r;
  r.result["forest"] = ForestToJson(g);
  r.result["collection"] = CollectionToJson(c);
  r.result["prime"] = IsPrimeCollection(g, c);
  r.result["matroid"] = MatroidToJson(m);
  r.result["matrix"] = MatrixToJson(a);
  r.result["verified"] = VerifyRealization(a, m);
  r.text.push_back(MatroidText(m));
  r.text.push_back(MatrixText(a));
  return r;
}

Report RealizeGridVerb(const Options& o) {
  GridShape shape = ShapeInput(o);
  Matroid m = UniqueMinimalCircuits(shape, o.d);
  RationalMatrix a = RealizeGridUniqueMinimal(shape, o.d, Policy(o));
  Report r;
  r.result["matroid"] = MatroidToJson(m);
  r.result["matrix"] = MatrixToJson(a);
  r.result["verified"] = VerifyRealization(a, m);
  r.text.push_back(MatroidText(m));
  r.text.push_back(MatrixText(a));
  return r;
}

Report RealizePlanVerb(const Options& o) {
  Configuration c = ConfigInput(o);
  ConfigurationPlan plan = PlanForConfiguration(c);
  PlanRealization pr = RealizeByPlan(plan.plan, Policy(o));
  Matroid target = MatroidOfConfiguration(c);
  RationalMatrix a = RationalMatrix::Zero(pr.matrix.d, pr.matrix.n);
  for (size_t i = 0; i < plan.order.size(); ++i) {
    a.SetColumn(plan.order[i], pr.matrix.Column(static_cast<int>(i)));
  }
  Json steps = Json::array();
  for (size_t i = 0; i < plan.plan.size(); ++i) {
    const PlanStep& st = plan.plan[i];
    Json j = {{"point", plan.order[i] + 1}, {"step", StepName(st.kind)}};
    if (st.a >= 0) j["a"] = plan.order[st.a] + 1;
    if (st.b >= 0) j["b"] = plan.order[st.b] + 1;
    steps.push_back(j);
  }
  Report r;
  r.result["configuration"] = ConfigurationToJson(c);
  r.result["plan"] = steps;
  r.result["matroid"] = MatroidToJson(target);
  r.result["matrix"] = MatrixToJson(a);
  r.result["verified"] = VerifyRealization(a, target);
  for (const Json& j : steps) r.text.push_back("  " + j.dump());
  r.text.push_back(MatrixText(a));
  r.dot = ConfigurationDot(c);
  return r;
}

Report PerturbVerb(const Options& o) {
  RationalMatrix a = MatrixInput(o);
  Configuration c = ConfigInput(o, a.n);
  Rational eps = ParseRational(o.eps);
  RationalMatrix b = PerturbToRealization(a, c, eps, Policy(o));
  Rational dist = SquaredDistance(a, b);
  Report r;
  r.result["configuration"] = ConfigurationToJson(c);
  r.result["input"] = MatrixToJson(a);
  r.result["eps"] = FormatRational(eps);
  r.result["matrix"] = MatrixToJson(b);
  r.result["squared_distance"] = FormatRational(dist);
  r.result["within_bound"] = dist < eps * eps;
  r.result["verified"] = VerifyRealization(b, MatroidOfConfiguration(c));
  r.text.push_back("squared distance " + FormatRational(dist) + " (eps^2 = " +
                   FormatRational(eps * eps) + ")");
  r.text.push_back(MatrixText(b));
  return r;
}

Report AlphaRunVerb(const Options& o) {
  Clutter c = ClutterInput(o);
  std::vector<TransformStep> trace;
  Clutter cur = c;
  if (!o.trace_file.empty()) {
    trace = TraceFromJson(ReadJsonFile(o.trace_file), c.n);
    cur = ReplayTrace(c, trace);
  } else {
    if (o.steps < 1) throw DomainError("--steps must be positive");
    for (int i = 0; i < o.steps; ++i) {
      TransformStep st;
      st.input_hash = ClutterHash(cur);
      if (o.op == "a1") {
        st.kind = TransformStep::Kind::kAlpha1;
        st.a1 = ToMasks(ParseSetList(Require(o.a1, "--A1")), c.n).at(0);
        st.a2 = ToMasks(ParseSetList(Require(o.a2, "--A2")), c.n).at(0);
        cur = Alpha1(cur, st.a1, st.a2);
      } else if (o.op == "a2") {
        st.kind = TransformStep::Kind::kAlpha2;
        cur = Alpha2(cur);
      } else if (o.op == "a3") {
        st.kind = TransformStep::Kind::kAlpha3;
        cur = Alpha3(cur);
      } else {
        throw DomainError("--op must be a1, a2 or a3");
      }
      st.output_hash = ClutterHash(cur);
      trace.push_back(st);
    }
  }
  bool matroid = IsMatroidClutter(cur);
  Report r;
  r.result["input"] = ClutterToJson(c);
  r.result["trace"] = TraceToJson(trace);
  r.result["output"] = ClutterToJson(cur);
  r.result["matroid_clutter"] = matroid;
  if (matroid) r.result["matroid"] = MatroidToJson(MatroidOfClutter(cur));
  r.text.push_back(std::to_string(trace.size()) + " step(s), " +
                   std::to_string(cur.edges.size()) + " listed edge(s)");
  r.text.push_back(std::string("matroid clutter: ") + (matroid ? "yes" : "no"));
  r.text.push_back("edges: " + FamilyText(cur.edges));
  return r;
}

Report HardnessVerb(const Options& o) {
  Report r;
  if (o.fano) {
    LineRouteResult lr = LineConfigurationRoute(7, FanoLines());
    Simplification s = Simplify(lr.result);
    bool iso = IsIsomorphic(s.simple, FanoMatroid()).has_value();
    r.result["shape"] = {{"k", lr.shape.k}, {"l", lr.shape.l}, {"s", lr.shape.s},
                         {"t", lr.shape.t}};
    r.result["start"] = ClutterToJson(lr.start);
    r.result["closure_steps"] = lr.closure_steps;
    r.result["trace"] = TraceToJson(lr.trace);
    r.result["matroid"] = MatroidToJson(lr.result);
    r.result["simplification"] = MatroidToJson(s.simple);
    r.result["simplification_is_fano"] = iso;
    r.text.push_back("closure rounds " + std::to_string(lr.closure_steps));
    r.text.push_back("simplification " + MatroidText(s.simple));
    r.text.push_back(std::string("isomorphic to the Fano matroid: ") + (iso ? "yes" : "no"));
    return r;
  }
  Matroid m = MatroidInput(o);
  HardnessResult h = HardnessPipeline(m);
  r.result["input"] = MatroidToJson(m);
  r.result["shape"] = {{"k", h.embedding.shape.k}, {"l", h.embedding.shape.l},
                       {"s", h.embedding.shape.s}, {"t", h.embedding.shape.t}};
  Json relabel = Json::array();
  for (int j : h.embedding.relabel) relabel.push_back(j + 1);
  r.result["relabel"] = relabel;
  r.result["target"] = MaskToJson(h.embedding.target);
  r.result["start"] = ClutterToJson(h.start);
  r.result["trace"] = TraceToJson(h.trace);
  r.result["matroid"] = MatroidToJson(h.result);
  r.result["verified"] = true;
  r.text.push_back("grid " + std::to_string(h.embedding.shape.k) + "x" +
                   std::to_string(h.embedding.shape.l) + ", " +
                   std::to_string(h.trace.size()) + " step(s)");
  r.text.push_back("target cells " + SetText(h.embedding.target));
  r.text.push_back("restriction isomorphism verified");
  return r;
}

Report GridTypesVerb(const Options& o) {
  GridShape shape{o.k, o.l, 2, 3};
  GridTypeCount g = CountGridTypes(shape);
  Report r;
  r.result["k"] = o.k;
  r.result["l"] = o.l;
  r.result["line_types"] = g.line_types;
  r.result["types"] = g.types;
  r.result["unsimplified_types"] = g.unsimplified_types;
  r.result["minimal_matroids"] = g.minimal_matroids;
  r.result["interpretation"] = g.interpretation;
  Json keys = Json::array();
  for (const auto& key : g.line_keys) {
    Json lines = Json::array();
    for (Mask m : key) lines.push_back(MaskToJson(m));
    keys.push_back(lines);
  }
  r.result["line_keys"] = keys;
  r.result["simplifications"] = MatroidList(g.simplifications);
  r.text.push_back(std::to_string(g.line_types));
  r.text.push_back("isomorphism classes of simplifications: " + std::to_string(g.types));
  r.text.push_back("labeled minimal matroids: " + std::to_string(g.minimal_matroids));
  r.text.push_back("interpretation: " + g.interpretation);
  return r;
}

Report CatalogVerb(const Options& o) {
  if (o.n < 0 || o.n > kCatalogCap) {
    throw DomainError("catalog size must be in [0," + std::to_string(kCatalogCap) + "]");
  }
  Report r;
  r.result["n"] = o.n;
  if (o.n == kCatalogCap && !o.list) {
    std::size_t count = 0;
    ForEachRankLe3(o.n, [&](const RankLe3Structure&) { ++count; });
    r.result["count"] = count;
    r.result["source"] = "streamed";
    r.text.push_back(std::to_string(count) + " matroid(s) of rank <= 3");
    return r;
  }
  MatroidCatalog cat;
  std::string source = "enumerated";
  if (!o.cache_dir.empty()) {
    std::filesystem::path p =
        std::filesystem::path(o.cache_dir) / ("rank3_n" + std::to_string(o.n) + ".bin");
    if (std::filesystem::exists(p)) {
      cat = ReadCatalogCache(p.string());
      source = "cache";
    } else {
      cat = EnumerateRankLe3(o.n);
      std::filesystem::create_directories(o.cache_dir);
      WriteCatalogCache(p.string(), cat);
    }
  } else {
    cat = EnumerateRankLe3(o.n);
  }
  r.result["count"] = cat.matroids.size();
  r.result["source"] = source;
  if (o.list) r.result["matroids"] = MatroidList(cat.matroids);
  r.text.push_back(std::to_string(cat.matroids.size()) + " matroid(s) of rank <= 3");
  if (o.list) {
    for (const Matroid& m : cat.matroids) r.text.push_back("  " + MatroidText(m));
  }
  return r;
}

void WriteFile(const std::filesystem::path& p, const std::string& content) {
  std::ofstream f(p);
  if (!f) throw DomainError("cannot write " + p.string());
  f << content;
}

}  // namespace

int RunCli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app("Matroid and hypergraph variety toolkit", "hypermat");
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("--seed", o.seed, "Random seed");
  app.add_option("--budget", o.budget, "Search node budget");
  app.add_option("--d", o.d, "Ambient dimension");
  app.add_option("--retries", o.retries, "Retry budget per realization step");
  app.add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"json", "text"}));
  app.add_option("--cache-dir", o.cache_dir, "Catalog cache directory");
  app.add_option("--out", o.out_dir, "Directory for report files");
  app.add_option("--dot", o.dot_path, "Write a DOT diagram to this file");

  auto forest_opts = [&](CLI::App* c) {
    c->add_option("--edges", o.edges, "Forest edges, e.g. 12,23,34");
    c->add_option("--n", o.n, "Number of vertices");
  };
  auto clutter_opts = [&](CLI::App* c) {
    forest_opts(c);
    c->add_option("--sets", o.sets, "Clutter members, e.g. 1234,1235");
    c->add_option("--clutter", o.clutter_file, "Clutter JSON file");
  };
  auto config_opts = [&](CLI::App* c) {
    c->add_option("--lines", o.lines, "Lines, e.g. 123,345");
    c->add_option("--loops", o.loops, "Loops, e.g. 3");
    c->add_option("--config", o.config_file, "Configuration JSON file");
    c->add_option("--n", o.n, "Number of points");
  };
  auto grid_opts = [&](CLI::App* c, bool st) {
    c->add_option("--k", o.k, "Rows")->required();
    c->add_option("--l", o.l, "Columns")->required();
    if (st) {
      c->add_option("--s", o.s, "Column-minor size")->required();
      c->add_option("--t", o.t, "Row-minor size")->required();
    }
  };

  std::vector<std::pair<CLI::App*, Report (*)(const Options&)>> verbs;
  auto verb = [&](CLI::App* parent, const char* name, const char* help,
                  Report (*fn)(const Options&)) {
    CLI::App* c = parent->add_subcommand(name, help);
    verbs.emplace_back(c, fn);
    return c;
  };

  CLI::App* delta = app.add_subcommand("delta", "Build a hypergraph");
  delta->require_subcommand(1);
  forest_opts(verb(delta, "forest", "Consecutive forest hypergraph", DeltaForestVerb));
  grid_opts(verb(delta, "grid", "Grid hypergraph", DeltaGridVerb), true);
  {
    CLI::App* c = verb(delta, "ci", "Conditional independence hypergraph", DeltaCiVerb);
    grid_opts(c, true);
  }

  CLI::App* minm = app.add_subcommand("min-matroids", "Minimal matroids of a hypergraph");
  minm->require_subcommand(1);
  {
    CLI::App* c = verb(minm, "alpha", "Alpha-transformation search", SearchVerb);
    clutter_opts(c);
    c->add_flag("--all", o.all, "Keep non-minimal terminal matroids");
  }
  clutter_opts(verb(minm, "oracle", "Brute-force oracle", OracleVerb));
  forest_opts(verb(minm, "forest", "Prime collections of a forest", ForestMinVerb));

  CLI::App* decompose = app.add_subcommand("decompose", "Decompose a hypergraph variety");
  decompose->require_subcommand(1);
  {
    CLI::App* c = verb(decompose, "forest", "Components of a forest variety", DecomposeVerb);
    forest_opts(c);
    c->add_flag("--realize", o.realize, "Attach a verified realization to each component");
  }

  CLI::App* closure = app.add_subcommand("closure", "Combinatorial closure");
  closure->require_subcommand(1);
  config_opts(verb(closure, "components", "Components of a forest-like configuration",
                   ClosureVerb));

  CLI::App* realize = app.add_subcommand("realize", "Rational realizations");
  realize->require_subcommand(1);
  {
    CLI::App* c = verb(realize, "forest", "Realize the matroid of a collection", RealizeForestVerb);
    forest_opts(c);
    c->add_option("--singletons", o.singletons, "Singletons, e.g. 3,5");
    c->add_option("--pairs", o.pairs, "Pairs, e.g. 34,45");
  }
  {
    CLI::App* c = verb(realize, "grid", "Realize the unique minimal grid matroid", RealizeGridVerb);
    grid_opts(c, true);
  }
  config_opts(verb(realize, "plan", "Realize a configuration by a build-up plan", RealizePlanVerb));

  {
    CLI::App* c = verb(&app, "perturb", "Perturb a matrix onto a configuration", PerturbVerb);
    config_opts(c);
    c->add_option("--matrix", o.matrix_file, "Matrix JSON file");
    c->add_option("--rows", o.rows, "Matrix rows, e.g. \"1,0;0,1\"");
    c->add_option("--eps", o.eps, "Distance bound as a fraction");
  }

  CLI::App* alpha = app.add_subcommand("alpha", "Alpha-transformations");
  alpha->require_subcommand(1);
  {
    CLI::App* c = verb(alpha, "run", "Apply or replay transformations", AlphaRunVerb);
    clutter_opts(c);
    c->add_option("--op", o.op, "a1, a2 or a3")->check(CLI::IsMember({"a1", "a2", "a3"}));
    c->add_option("--A1", o.a1, "First member for a1");
    c->add_option("--A2", o.a2, "Second member for a1");
    c->add_option("--steps", o.steps, "Number of repetitions");
    c->add_option("--trace", o.trace_file, "Trace JSON file to replay");
  }
  {
    CLI::App* c = verb(alpha, "search", "Search for minimal matroids", SearchVerb);
    clutter_opts(c);
    c->add_flag("--all", o.all, "Keep non-minimal terminal matroids");
  }

  {
    CLI::App* c = verb(&app, "hardness", "Embed a matroid as a grid minimal matroid", HardnessVerb);
    c->add_option("--circuits", o.circuits, "Circuits, e.g. 123,4");
    c->add_option("--matroid", o.matroid_file, "Matroid JSON file");
    c->add_option("--n", o.n, "Ground set size");
    c->add_flag("--fano", o.fano, "Run the Fano point-line route");
  }

  CLI::App* grid = app.add_subcommand("grid", "Grid tables");
  grid->require_subcommand(1);
  grid_opts(verb(grid, "types", "Count minimal matroid types for s=2, t=3", GridTypesVerb), false);

  {
    CLI::App* c = verb(&app, "catalog", "Rank <= 3 matroid catalog", CatalogVerb);
    c->add_option("--n", o.n, "Ground set size")->required();
    c->add_flag("--list", o.list, "List the matroids");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n\n" << app.help() << "\n" << kSchemaText;
    return kExitUsage;
  }

  Report (*fn)(const Options&) = nullptr;
  for (auto& [c, f] : verbs) {
    if (c->parsed()) fn = f;
  }
  if (fn == nullptr) {
    err << "usage error: no verb given\n\n" << app.help() << "\n" << kSchemaText;
    return kExitUsage;
  }

  std::string command;
  for (int i = 1; i < argc; ++i) {
    std::string a = argv[i];
    if (a == "--out" || a == "--dot") {
      ++i;
      continue;
    }
    if (a.rfind("--out=", 0) == 0 || a.rfind("--dot=", 0) == 0) continue;
    if (!command.empty()) command += " ";
    command += a;
  }

  try {
    Report r = fn(o);
    Json doc;
    doc["command"] = command;
    doc["seed"] = o.seed;
    doc["result"] = r.result;
    std::string json_text = PrettyJson(doc) + "\n";
    std::string text = "command: " + command + "\nseed: " + std::to_string(o.seed) + "\n";
    for (const auto& line : r.text) text += line + (line.ends_with('\n') ? "" : "\n");
    out << (o.format == "json" ? json_text : text);
    if (!o.out_dir.empty()) {
      std::filesystem::create_directories(o.out_dir);
      WriteFile(std::filesystem::path(o.out_dir) / "report.json", json_text);
      WriteFile(std::filesystem::path(o.out_dir) / "report.txt", text);
    }
    if (!o.dot_path.empty()) {
      if (r.dot.empty()) throw DomainError("this verb has no diagram");
      WriteFile(o.dot_path, r.dot);
    }
    return kExitOk;
  } catch (const BudgetExhausted& e) {
    err << "inconclusive: " << e.what() << "\n";
    return kExitBudget;
  } catch (const VerificationFailed& e) {
    err << "verification failed: " << e.what() << "\n";
    return kExitDomain;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomain;
  }
}

}  // namespace hypermat
