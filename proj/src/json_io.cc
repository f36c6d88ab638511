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

#include "hypermat/json_io.h"

#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <utility>

namespace hypermat {
namespace {

const Json& Field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw DomainError(std::string("missing field \"") + key + "\"");
  }
  return j.at(key);
}

int IntField(const Json& j, const char* key) {
  const Json& v = Field(j, key);
  if (!v.is_number_integer()) {
    throw DomainError(std::string("field \"") + key + "\" must be an integer");
  }
  return v.get<int>();
}

const Json& ArrayField(const Json& j, const char* key) {
  const Json& v = Field(j, key);
  if (!v.is_array()) {
    throw DomainError(std::string("field \"") + key + "\" must be an array");
  }
  return v;
}

void CheckGround(int n) {
  if (n < 0 || n > kMaxGround) {
    throw DomainError("ground set size " + std::to_string(n) + " out of range");
  }
}

std::vector<Mask> MasksFromJson(const Json& arr, int n) {
  std::vector<Mask> out;
  for (const Json& e : arr) out.push_back(MaskFromJson(e, n));
  return out;
}

Json MasksToJson(const std::vector<Mask>& family) {
  Json arr = Json::array();
  for (Mask m : family) arr.push_back(MaskToJson(m));
  return arr;
}

std::string HashText(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
  return buf;
}

std::uint64_t ParseHash(const Json& v) {
  if (!v.is_string() || v.get<std::string>().size() != 16) {
    throw DomainError("hash must be a 16-digit hex string");
  }
  std::uint64_t h = 0;
  for (char ch : v.get<std::string>()) {
    int d;
    if (ch >= '0' && ch <= '9') {
      d = ch - '0';
    } else if (ch >= 'a' && ch <= 'f') {
      d = ch - 'a' + 10;
    } else {
      throw DomainError("hash must be a 16-digit hex string");
    }
    h = h << 4 | static_cast<std::uint64_t>(d);
  }
  return h;
}

}  // namespace

Json MaskToJson(Mask m) { return Json(Labels(m)); }

Mask MaskFromJson(const Json& j, int n) {
  if (!j.is_array()) throw DomainError("a set must be an array of labels");
  std::vector<int> labels;
  for (const Json& x : j) {
    if (!x.is_number_integer()) throw DomainError("labels must be integers");
    labels.push_back(x.get<int>());
  }
  Mask m = FromLabels(labels, n);
  if (Popcount(m) != static_cast<int>(labels.size())) {
    throw DomainError("repeated label in " + j.dump());
  }
  return m;
}

Json MatroidToJson(const Matroid& m) {
  Json j;
  j["n"] = m.n();
  j["circuits"] = MasksToJson(m.Circuits());
  return j;
}

Matroid MatroidFromJson(const Json& j) {
  int n = IntField(j, "n");
  CheckGround(n);
  return Matroid::FromCircuits(n, MasksFromJson(ArrayField(j, "circuits"), n));
}

Json ClutterToJson(const Clutter& c) {
  Json j;
  j["n"] = c.n;
  j["d"] = c.d;
  j["edges"] = MasksToJson(c.edges);
  j["implicit_top"] = c.implicit_top;
  return j;
}

Clutter ClutterFromJson(const Json& j) {
  Clutter c;
  c.n = IntField(j, "n");
  CheckGround(c.n);
  c.d = IntField(j, "d");
  if (c.d < 1) throw DomainError("ambient dimension must be positive");
  std::vector<Mask> edges = MasksFromJson(ArrayField(j, "edges"), c.n);
  for (Mask e : edges) {
    if (e == 0) throw DomainError("empty edge");
  }
  std::vector<Mask> minimal = MinimalMembers(edges);
  if (minimal.size() != edges.size()) {
    throw DomainError("edges do not form an antichain");
  }
  c.edges = std::move(minimal);
  if (j.contains("implicit_top")) {
    if (!j.at("implicit_top").is_boolean()) {
      throw DomainError("field \"implicit_top\" must be a boolean");
    }
    c.implicit_top = j.at("implicit_top").get<bool>();
  }
  if (c.implicit_top) {
    for (Mask e : c.edges) {
      if (Popcount(e) > c.d + 1) {
        throw DomainError("edge larger than d+1 with implicit_top set");
      }
    }
  }
  return c;
}

Json ForestToJson(const Forest& g) {
  Json edges = Json::array();
  for (auto [u, v] : g.edges()) edges.push_back(Json::array({u + 1, v + 1}));
  Json j;
  j["n"] = g.n();
  j["edges"] = edges;
  return j;
}

Forest ForestFromJson(const Json& j) {
  int n = IntField(j, "n");
  CheckGround(n);
  std::vector<std::pair<int, int>> edges;
  for (const Json& e : ArrayField(j, "edges")) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
        !e[1].is_number_integer()) {
      throw DomainError("forest edge must be a pair of labels");
    }
    edges.emplace_back(e[0].get<int>(), e[1].get<int>());
  }
  return Forest(n, edges);
}

Json CollectionToJson(const Collection& c) {
  Json j;
  j["singletons"] = MaskToJson(c.singletons);
  j["pairs"] = MasksToJson(c.pairs);
  return j;
}

Collection CollectionFromJson(const Json& j, int n) {
  Collection c;
  c.singletons = MaskFromJson(ArrayField(j, "singletons"), n);
  c.pairs = MasksFromJson(ArrayField(j, "pairs"), n);
  for (Mask p : c.pairs) {
    if (Popcount(p) != 2) throw DomainError("collection pairs must have size 2");
  }
  c.Normalize();
  return c;
}

Json ConfigurationToJson(const Configuration& c) {
  Json j;
  j["n"] = c.n;
  j["points"] = MaskToJson(c.points);
  j["lines"] = MasksToJson(c.lines);
  j["loops"] = MaskToJson(c.loops);
  return j;
}

Configuration ConfigurationFromJson(const Json& j) {
  int n = 0;
  if (j.is_object() && j.contains("n")) {
    n = IntField(j, "n");
  } else {
    auto scan = [&](const Json& arr) {
      for (const Json& x : arr) {
        if (x.is_array()) {
          for (const Json& y : x) {
            if (y.is_number_integer()) n = std::max(n, y.get<int>());
          }
        } else if (x.is_number_integer()) {
          n = std::max(n, x.get<int>());
        }
      }
    };
    scan(ArrayField(j, "points"));
    scan(ArrayField(j, "lines"));
    if (j.contains("loops")) scan(ArrayField(j, "loops"));
  }
  CheckGround(n);
  Mask points = MaskFromJson(ArrayField(j, "points"), n);
  std::vector<Mask> lines = MasksFromJson(ArrayField(j, "lines"), n);
  Mask loops = j.contains("loops") ? MaskFromJson(ArrayField(j, "loops"), n) : 0;
  return Configuration::Make(n, points, std::move(lines), loops);
}

Json MatrixToJson(const RationalMatrix& a) {
  Json rows = Json::array();
  for (int i = 0; i < a.d; ++i) {
    Json row = Json::array();
    for (int k = 0; k < a.n; ++k) row.push_back(FormatRational(a.at(i, k)));
    rows.push_back(row);
  }
  Json j;
  j["d"] = a.d;
  j["n"] = a.n;
  j["entries"] = rows;
  return j;
}

RationalMatrix MatrixFromJson(const Json& j) {
  int d = IntField(j, "d");
  int n = IntField(j, "n");
  if (d < 0 || n < 0) throw DomainError("matrix dimensions must be nonnegative");
  CheckGround(n);
  const Json& rows = ArrayField(j, "entries");
  if (static_cast<int>(rows.size()) != d) {
    throw DomainError("matrix has " + std::to_string(rows.size()) +
                      " rows, expected " + std::to_string(d));
  }
  RationalMatrix a = RationalMatrix::Zero(d, n);
  for (int i = 0; i < d; ++i) {
    if (!rows[i].is_array() || static_cast<int>(rows[i].size()) != n) {
      throw DomainError("matrix row " + std::to_string(i + 1) + " must have " +
                        std::to_string(n) + " entries");
    }
    for (int k = 0; k < n; ++k) {
      const Json& x = rows[i][k];
      if (x.is_string()) {
        a.at(i, k) = ParseRational(x.get<std::string>());
      } else if (x.is_number_integer()) {
        a.at(i, k) = ParseRational(std::to_string(x.get<long long>()));
      } else {
        throw DomainError("matrix entries must be fraction strings");
      }
    }
  }
  return a;
}

Json TraceToJson(const std::vector<TransformStep>& trace) {
  Json arr = Json::array();
  for (const TransformStep& s : trace) {
    Json j;
    j["kind"] = KindName(s.kind);
    j["A1"] = MaskToJson(s.a1);
    j["A2"] = MaskToJson(s.a2);
    j["input_hash"] = HashText(s.input_hash);
    j["output_hash"] = HashText(s.output_hash);
    arr.push_back(j);
  }
  return arr;
}

std::vector<TransformStep> TraceFromJson(const Json& j, int n) {
  if (!j.is_array()) throw DomainError("a trace must be an array");
  std::vector<TransformStep> trace;
  for (const Json& e : j) {
    TransformStep s;
    const Json& kind = Field(e, "kind");
    std::string k = kind.is_string() ? kind.get<std::string>() : "";
    if (k == "a1") {
      s.kind = TransformStep::Kind::kAlpha1;
    } else if (k == "a2") {
      s.kind = TransformStep::Kind::kAlpha2;
    } else if (k == "a3") {
      s.kind = TransformStep::Kind::kAlpha3;
    } else {
      throw DomainError("unknown step kind " + kind.dump());
    }
    s.a1 = e.contains("A1") ? MaskFromJson(e.at("A1"), n) : 0;
    s.a2 = e.contains("A2") ? MaskFromJson(e.at("A2"), n) : 0;
    if (s.kind == TransformStep::Kind::kAlpha1 && (s.a1 == 0 || s.a2 == 0)) {
      throw DomainError("an a1 step needs nonempty A1 and A2");
    }
    s.input_hash = ParseHash(Field(e, "input_hash"));
    s.output_hash = ParseHash(Field(e, "output_hash"));
    trace.push_back(s);
  }
  return trace;
}

Json DecompositionReportToJson(const std::vector<DecompositionEntry>& entries) {
  std::vector<Matroid> representatives;
  Json arr = Json::array();
  for (const DecompositionEntry& e : entries) {
    Simplification s = Simplify(e.matroid);
    int id = -1;
    for (size_t r = 0; r < representatives.size(); ++r) {
      if (IsIsomorphic(representatives[r], s.simple)) {
        id = static_cast<int>(r);
        break;
      }
    }
    if (id < 0) {
      id = static_cast<int>(representatives.size());
      representatives.push_back(s.simple);
    }
    Json classes = Json::array();
    for (Mask c : s.classes) classes.push_back(MaskToJson(c));
    Json simplification = MatroidToJson(s.simple);
    simplification["classes"] = classes;
    Json j;
    j["collection"] = CollectionToJson(e.collection);
    j["matroid"] = MatroidToJson(e.matroid);
    j["simplification"] = simplification;
    j["configuration_id"] = id;
    arr.push_back(j);
  }
  return arr;
}

namespace {

void Pretty(const Json& j, int indent, std::string& out) {
  auto pad = [&](int k) { out.append(static_cast<size_t>(k), ' '); };
  bool flat = !j.is_structured() || j.empty() ||
              (j.is_array() && std::none_of(j.begin(), j.end(),
                                            [](const Json& x) { return x.is_object(); }) &&
               std::all_of(j.begin(), j.end(), [](const Json& x) {
                 return !x.is_structured() ||
                        (x.is_array() && std::none_of(x.begin(), x.end(),
                                                      [](const Json& y) { return y.is_structured(); }));
               }) &&
               j.dump().size() <= 100);
  if (flat) {
    out += j.dump();
    return;
  }
  if (j.is_object()) {
    out += "{\n";
    size_t i = 0;
    for (auto it = j.begin(); it != j.end(); ++it, ++i) {
      pad(indent + 2);
      out += Json(it.key()).dump() + ": ";
      Pretty(it.value(), indent + 2, out);
      out += i + 1 < j.size() ? ",\n" : "\n";
    }
    pad(indent);
    out += "}";
    return;
  }
  out += "[\n";
  for (size_t i = 0; i < j.size(); ++i) {
    pad(indent + 2);
    Pretty(j[i], indent + 2, out);
    out += i + 1 < j.size() ? ",\n" : "\n";
  }
  pad(indent);
  out += "]";
}

}  // namespace

std::string PrettyJson(const Json& j) {
  std::string out;
  Pretty(j, 0, out);
  return out;
}

Json ParseJson(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw DomainError(std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace hypermat
