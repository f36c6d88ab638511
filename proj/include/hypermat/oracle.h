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

#ifndef HYPERMAT_ORACLE_H_
#define HYPERMAT_ORACLE_H_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "hypermat/hypergraph.h"
#include "hypermat/matroid.h"

namespace hypermat {

// Largest ground set the rank <= 3 catalog accepts.
inline constexpr int kCatalogCap = 9;
// Largest ground set for direct circuit-antichain enumeration.
inline constexpr int kAntichainCap = 5;
// Largest ground set for DependentSets.
inline constexpr int kDependentSetsCap = 12;

// Every dependent subset of [n], one bit per subset.
class DependentSets {
 public:
  // Supersets of the circuits together with every set larger than rank.
  static DependentSets FromCircuits(int n, const std::vector<Mask>& circuits,
                                    int rank);
  static DependentSets Of(const Matroid& m);

  bool Contains(Mask s) const {
    const auto i = static_cast<std::uint64_t>(s);
    return (words_[i >> 6] >> (i & 63)) & 1;
  }
  bool IsSubsetOf(const DependentSets& o) const;
  std::size_t Count() const;
  bool operator==(const DependentSets& o) const { return words_ == o.words_; }

 private:
  int n_ = 0;
  std::vector<std::uint64_t> words_;
};

// Loops, parallel classes and lines (element sets made of at least three
// classes, pairwise sharing at most one) of a matroid of rank at most 3.
struct RankLe3Structure {
  int n = 0;
  int rank = 0;
  Mask loops = 0;
  std::vector<Mask> classes;
  std::vector<Mask> lines;

  bool IsDependent(Mask x) const;
  // Circuits of size at most rank.
  std::vector<Mask> SmallCircuits() const;
  Matroid ToMatroid() const;
  DependentSets Dependents() const;
};

// Visits every matroid of rank at most 3 on [n] exactly once: a loop set, a
// partition of the rest into parallel classes and a family of lines on the
// classes. Throws DomainError when n exceeds kCatalogCap.
void ForEachRankLe3(int n,
                    const std::function<void(const RankLe3Structure&)>& visit);

struct MatroidCatalog {
  int n = 0;
  std::vector<Matroid> matroids;  // sorted, no duplicates
  bool operator==(const MatroidCatalog& o) const {
    return n == o.n && matroids == o.matroids;
  }
};

MatroidCatalog EnumerateRankLe3(int n);

// All matroids of rank at most max_rank on [n] from the antichains of
// nonempty subsets that pass circuit elimination. Throws DomainError when n
// exceeds kAntichainCap.
MatroidCatalog EnumerateByAntichains(int n, int max_rank);

// Minimum of m over all relabelings. Throws DomainError for n > 8.
Matroid CanonicalRepresentative(const Matroid& m);
// One canonical representative per isomorphism class, sorted.
std::vector<Matroid> IsomorphismClasses(const std::vector<Matroid>& ms);

// Matroids of rank at most delta.d containing delta, minimal in the
// dependency order, sorted. Uses the rank <= 3 catalog when d <= 3, the
// antichain enumeration otherwise; throws DomainError beyond both caps.
std::vector<Matroid> BruteMinimalDependent(const Clutter& delta);
// The same minimal set from one candidate per loop set and parallel-class
// partition: the least line family making every edge dependent, which lies
// below every other family with those loops and classes. Requires d <= 3 and
// n <= kCatalogCap. BruteMinimalDependent switches to it at n = kCatalogCap.
std::vector<Matroid> ClassMinimalDependent(const Clutter& delta);
// The same for several clutters on one ground set, in a single pass.
std::vector<std::vector<Matroid>> BruteMinimalDependent(
    const std::vector<Clutter>& deltas);

// Minimal matroids of rank <= 3 containing the s = 2, t = 3 grid clutter on
// k rows and l columns, found among the least matroids with prescribed loops
// and parallel classes. Throws DomainError when kl exceeds
// kDependentSetsCap.
std::vector<Matroid> GridMinimalMatroids(int k, int l);

// Lines of a simple matroid of rank <= 3 (rank-2 flats with at least three
// points) together with the points on two or more of them, up to relabeling.
// Free points and points on a single line are forgotten.
std::vector<Mask> LineIncidenceKey(const Matroid& simple);

struct GridTypeCount {
  int line_types = 0;          // classes of LineIncidenceKey
  int types = 0;               // isomorphism classes of simplifications
  int unsimplified_types = 0;  // isomorphism classes of the matroids
  int minimal_matroids = 0;
  std::vector<Matroid> simplifications;  // one per isomorphism class
  std::vector<std::vector<Mask>> line_keys;  // one per line type, sorted
  std::string interpretation;
};

// Requires s = 2 and t = 3. The headline count is line_types.
GridTypeCount CountGridTypes(const GridShape& shape);

// One forest per isomorphism class on n vertices, in a fixed order.
std::vector<Forest> ForestsUpToIsomorphism(int n);

// Binary catalog cache with a versioned header. Read throws DomainError on a
// malformed or mismatched file.
void WriteCatalogCache(const std::string& path, const MatroidCatalog& catalog);
MatroidCatalog ReadCatalogCache(const std::string& path);

}  // namespace hypermat

#endif  // HYPERMAT_ORACLE_H_
