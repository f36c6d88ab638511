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

#ifndef HYPERMAT_JSON_IO_H_
#define HYPERMAT_JSON_IO_H_

#include <string>
#include <vector>

#include <json.hpp>

#include "hypermat/alpha.h"
#include "hypermat/collection.h"
#include "hypermat/configuration.h"
#include "hypermat/hypergraph.h"
#include "hypermat/matroid.h"
#include "hypermat/realization.h"

namespace hypermat {

using Json = nlohmann::ordered_json;

// Every reader throws DomainError on a malformed record. Labels are 1-based
// in JSON and sets are written as sorted label lists.

Json MaskToJson(Mask m);
Mask MaskFromJson(const Json& j, int n);

// {"n", "circuits"}, circuits in canonical order.
Json MatroidToJson(const Matroid& m);
Matroid MatroidFromJson(const Json& j);

// {"n", "d", "edges", "implicit_top"}.
Json ClutterToJson(const Clutter& c);
Clutter ClutterFromJson(const Json& j);

// {"n", "edges": [[u, v], ...]}.
Json ForestToJson(const Forest& g);
Forest ForestFromJson(const Json& j);

// {"singletons", "pairs"}.
Json CollectionToJson(const Collection& c);
Collection CollectionFromJson(const Json& j, int n);

// {"n", "points", "lines", "loops"}; "n" defaults to the largest label.
Json ConfigurationToJson(const Configuration& c);
Configuration ConfigurationFromJson(const Json& j);

// {"d", "n", "entries"} with entries as exact fraction strings.
Json MatrixToJson(const RationalMatrix& a);
RationalMatrix MatrixFromJson(const Json& j);

// Ordered list of {"kind", "A1", "A2", "input_hash", "output_hash"}; the
// member sets are empty for a2 and a3 steps.
Json TraceToJson(const std::vector<TransformStep>& trace);
std::vector<TransformStep> TraceFromJson(const Json& j, int n);

// List of {"collection", "matroid", "simplification", "configuration_id"}.
// Entries whose simplifications are isomorphic share a configuration id,
// numbered by first appearance.
Json DecompositionReportToJson(const std::vector<DecompositionEntry>& entries);

// Indented dump with arrays of scalars kept on one line. Deterministic.
std::string PrettyJson(const Json& j);

// Parses text, mapping syntax errors to DomainError.
Json ParseJson(const std::string& text);

}  // namespace hypermat

#endif  // HYPERMAT_JSON_IO_H_
