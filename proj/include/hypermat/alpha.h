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

#ifndef HYPERMAT_ALPHA_H_
#define HYPERMAT_ALPHA_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "hypermat/hypergraph.h"
#include "hypermat/matroid.h"

namespace hypermat {

// Intersection of all members of c contained in b (implicit members
// included); the full ground set when no member lies inside b.
Mask ILambda(const Clutter& c, Mask b);

// True iff a is a member of c, listed or implicit.
bool IsMember(const Clutter& c, Mask a);

// min(c + {a1 & a2}) when I(a1 | a2) is nonempty, else c. Throws DomainError
// unless a1 and a2 are distinct members.
Clutter Alpha1(const Clutter& c, Mask a1, Mask a2);
// min(c + {(A1 | A2) - x : A1 != A2 members, x in A1 & A2}).
Clutter Alpha2(const Clutter& c);
// min(c + {(A1 | A2) - I(A1 | A2) : A1 != A2 members}).
Clutter Alpha3(const Clutter& c);

// True iff I(A1 | A2) is empty for all distinct members A1, A2.
bool IsMatroidClutter(const Clutter& c);

// The matroid whose circuits are the members of c. Throws DomainError when c
// is not a matroid clutter.
Matroid MatroidOfClutter(const Clutter& c);
// Circuits of m, with the top layer implicit.
Clutter ClutterOfMatroid(const Matroid& m);

struct TransformStep {
  enum class Kind { kAlpha1, kAlpha2, kAlpha3 };
  Kind kind = Kind::kAlpha2;
  Mask a1 = 0;  // alpha1 only
  Mask a2 = 0;
  std::uint64_t input_hash = 0;
  std::uint64_t output_hash = 0;
};

const char* KindName(TransformStep::Kind kind);  // "a1", "a2", "a3"
std::uint64_t ClutterHash(const Clutter& c);

// Re-applies a trace to c, checking the recorded hashes. Throws
// VerificationFailed on the first mismatch.
Clutter ReplayTrace(const Clutter& c, const std::vector<TransformStep>& trace);

struct SearchLimits {
  std::size_t max_nodes = 200000;
  int max_depth = 1 << 20;
  bool keep_non_minimal = false;
  bool throw_on_budget = true;
};

struct SearchResult {
  std::vector<Matroid> matroids;  // sorted
  bool complete = true;
  std::size_t nodes = 0;
  std::size_t terminals = 0;
};

// Breadth-first closure under alpha1/alpha2/alpha3 with strict growth.
// Terminal matroid clutters are collected and, unless keep_non_minimal is
// set, reduced to the dependency-minimal ones. When the node budget runs out
// the result is marked incomplete, or BudgetExhausted is thrown.
SearchResult SearchMinDependent(const Clutter& c, const SearchLimits& limits = {});

// Dependency-minimal members of a list of matroids, deduplicated and sorted.
std::vector<Matroid> MinimalMatroids(std::vector<Matroid> ms);

}  // namespace hypermat

#endif  // HYPERMAT_ALPHA_H_
