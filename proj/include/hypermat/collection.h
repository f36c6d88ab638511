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

#ifndef HYPERMAT_COLLECTION_H_
#define HYPERMAT_COLLECTION_H_

#include <vector>

#include "hypermat/hypergraph.h"
#include "hypermat/matroid.h"

namespace hypermat {

// Singletons and 2-subsets of the vertices of a forest (0-based bits).
struct Collection {
  Mask singletons = 0;
  std::vector<Mask> pairs;  // canonical order, each of size 2

  // Sorts and deduplicates pairs.
  void Normalize();
  bool operator==(const Collection& o) const {
    return singletons == o.singletons && pairs == o.pairs;
  }
  bool operator<(const Collection& o) const;
};

struct SingletonTestResult {
  bool pass = true;
  int step = -1;  // 0-based index of the failing vertex in the ordering
  int rule = 0;   // 1: leaf or isolated, 2: degree 2 next to a leaf
};

// Deletes the listed vertices one at a time, failing as soon as a vertex is a
// leaf or isolated in the current graph, or is next to a leaf with degree 2.
SingletonTestResult PrimeSingletonTest(const Forest& g,
                                       const std::vector<int>& ordered);

// Inductive characterization, memoized over subsets.
bool IsPrimeSingletons(const Forest& g, Mask s);
// Runs PrimeSingletonTest over every ordering of s.
bool IsPrimeSingletonsAllOrders(const Forest& g, Mask s);

bool IsValidCollection(const Forest& g, const Collection& c);
bool IsPrimeCollection(const Forest& g, const Collection& c);

// Vertex sets of the connected components of the graph formed by the pairs.
std::vector<Mask> Clouds(const Forest& g, const Collection& c);

// Pairwise blocking relation of a valid collection.
class BlockingTable {
 public:
  BlockingTable(const Forest& g, const Collection& c);
  bool PairBlocked(int v, int w) const { return Contains(blocked_[v], w); }
  bool IsBlocked(Mask a) const;
  const std::vector<Mask>& clouds() const { return clouds_; }

 private:
  std::vector<Mask> blocked_;
  std::vector<Mask> clouds_;
};

bool IsBlocked(const Forest& g, const Collection& c, Mask a);

// The matroid M_S of a valid collection.
Matroid MatroidFromCollection(const Forest& g, const Collection& c);

// Every prime collection of g, in canonical order.
std::vector<Collection> EnumeratePrimeCollections(const Forest& g);

// Every prime set of singletons, found by extending prime sets with larger
// vertices; each result is checked against all its one-smaller subsets.
std::vector<Mask> EnumeratePrimeSingletonSets(const Forest& g);

struct DecompositionEntry {
  Collection collection;
  Matroid matroid;
};

// One entry per prime collection; throws VerificationFailed if two entries
// are comparable in the dependency order.
std::vector<DecompositionEntry> DecomposeForestVariety(const Forest& g);

}  // namespace hypermat

#endif  // HYPERMAT_COLLECTION_H_
