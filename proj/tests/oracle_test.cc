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

#include "hypermat/oracle.h"

#include <algorithm>
#include <cstdio>
#include <random>

#include "doctest.h"
#include "hypermat/alpha.h"
#include "hypermat/collection.h"
#include "hypermat/realization.h"
#include "test_util.h"

namespace hypermat {
namespace {

using testing::Family;
using testing::S;

std::vector<Matroid> ForestMatroids(const Forest& g) {
  std::vector<Matroid> out;
  for (const DecompositionEntry& e : DecomposeForestVariety(g)) {
    out.push_back(e.matroid);
  }
  std::sort(out.begin(), out.end());
  return out;
}

TEST_CASE("dependent-set bitsets") {
  Matroid m = Matroid::FromCircuitsWithTop(5, Family({{1, 2, 3}}), 3);
  DependentSets dep = DependentSets::Of(m);
  for (std::uint64_t s = 0; s < 32; ++s) {
    CHECK(dep.Contains(static_cast<Mask>(s)) ==
          m.IsDependent(static_cast<Mask>(s)));
  }
  DependentSets u35 = DependentSets::Of(Matroid::Uniform(3, 5));
  CHECK(u35.IsSubsetOf(dep) == DependencyLeq(Matroid::Uniform(3, 5), m));
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    Matroid a = testing::RandomMatroid(rng, 8), b = testing::RandomMatroid(rng, 8);
    CHECK(DependentSets::Of(a).IsSubsetOf(DependentSets::Of(b)) ==
          DependencyLeq(a, b));
    DependentSets da = DependentSets::Of(a);
    for (int k = 0; k < 40; ++k) {
      Mask s = static_cast<Mask>(rng() & 0xFF);
      CHECK(da.Contains(s) == a.IsDependent(s));
    }
  }
  CHECK_THROWS_AS(DependentSets::FromCircuits(13, {}, 3), DomainError);
}

TEST_CASE("catalog sizes and members") {
  CHECK(EnumerateRankLe3(0).matroids.size() == 1);
  CHECK(EnumerateRankLe3(1).matroids.size() == 2);
  MatroidCatalog two = EnumerateRankLe3(2);
  CHECK(two.matroids.size() == 5);
  MatroidCatalog five = EnumerateRankLe3(5);
  auto has = [&](const Matroid& m) {
    return std::binary_search(five.matroids.begin(), five.matroids.end(), m);
  };
  CHECK(has(Matroid::Uniform(3, 5)));
  CHECK(has(Matroid::FromCircuitsWithTop(5, Family({{1, 2, 3}}), 3)));
  for (const Matroid& m : five.matroids) CHECK(m.rank() <= 3);
  CHECK_THROWS_AS(EnumerateRankLe3(kCatalogCap + 1), DomainError);
}

TEST_CASE("catalog matches antichain enumeration") {
  for (int n = 0; n <= 5; ++n) {
    MatroidCatalog a = EnumerateRankLe3(n);
    MatroidCatalog b = EnumerateByAntichains(n, 3);
    CHECK(a == b);
    for (const Matroid& m : a.matroids) {
      CHECK(ValidateCircuits(m.Circuits(), n));
    }
  }
  // Every labeled matroid on up to four elements.
  CHECK(EnumerateByAntichains(3, 3).matroids.size() == 16);
  CHECK(EnumerateByAntichains(4, 4).matroids.size() == 68);
  CHECK_THROWS_AS(EnumerateByAntichains(6, 3), DomainError);
}

TEST_CASE("catalog for n = 6, 7 agrees with the structure tests") {
  for (int n = 6; n <= 7; ++n) {
    size_t count = 0;
    std::mt19937_64 rng(n);
    ForEachRankLe3(n, [&](const RankLe3Structure& s) {
      ++count;
      if (rng() % 97 != 0) return;
      Matroid m = s.ToMatroid();
      CHECK(m.rank() == s.rank);
      for (int k = 0; k < 20; ++k) {
        Mask x = static_cast<Mask>(rng()) & FullMask(n);
        CHECK(s.IsDependent(x) == m.IsDependent(x));
        CHECK(s.Dependents().Contains(x) == m.IsDependent(x));
      }
    });
    CHECK(count == (n == 6 ? 2930u : 37582u));
  }
}

TEST_CASE("canonical representatives") {
  Matroid a = Matroid::FromCircuitsWithTop(5, Family({{1, 2, 3}}), 3);
  Matroid b = Matroid::FromCircuitsWithTop(5, Family({{2, 4, 5}}), 3);
  CHECK(CanonicalRepresentative(a) == CanonicalRepresentative(b));
  CHECK(IsomorphismClasses(EnumerateRankLe3(3).matroids).size() == 8);
  CHECK(IsomorphismClasses(EnumerateRankLe3(4).matroids).size() == 16);
}

TEST_CASE("brute_minimal_dependent examples") {
  // Two 4-sets sharing three points; d = 4 is the smallest ambient size.
  Clutter fig = PadWithBigCircuits(
      MinClutter(5, Family({{1, 2, 3, 4}, {1, 2, 3, 5}})), 4);
  std::vector<Matroid> brute = BruteMinimalDependent(fig);
  std::vector<Matroid> expected = {Matroid::Uniform(3, 5),
                                   Matroid::FromCircuits(5, Family({{1, 2, 3}}))};
  std::sort(expected.begin(), expected.end());
  CHECK(brute == expected);
  SearchResult search = SearchMinDependent(fig);
  std::sort(search.matroids.begin(), search.matroids.end());
  CHECK(search.matroids == expected);

  Forest star(4, {{1, 2}, {1, 3}, {1, 4}});
  CHECK(BruteMinimalDependent(DeltaForest(star)) == ForestMatroids(star));

  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    Matroid m = testing::RandomRank3Matroid(rng, 3 + trial % 4);
    CHECK(BruteMinimalDependent(ClutterOfMatroid(m)) ==
          std::vector<Matroid>{m});
  }
  Clutter big;
  big.n = 10;
  big.d = 3;
  CHECK_THROWS_AS(BruteMinimalDependent(big), DomainError);
}

TEST_CASE("brute_minimal_dependent results are incomparable and contain the input") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 4 + trial % 3;
    std::vector<Mask> edges;
    for (int e = 0; e < 3; ++e) {
      Mask x = 0;
      while (Popcount(x) < 3) x |= Bit(static_cast<int>(rng() % n));
      edges.push_back(x);
    }
    Clutter delta = PadWithBigCircuits(MinClutter(n, edges), 3);
    std::vector<Matroid> mins = BruteMinimalDependent(delta);
    REQUIRE(!mins.empty());
    for (size_t i = 0; i < mins.size(); ++i) {
      CHECK(ContainsHypergraph(mins[i], delta));
      for (size_t j = 0; j < mins.size(); ++j) {
        if (i != j) CHECK_FALSE(DependencyLeq(mins[i], mins[j]));
      }
    }
    CHECK(MinimalMatroids(SearchMinDependent(delta).matroids) == mins);
  }
}

TEST_CASE("class-minimal pass agrees with the full catalog") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 3 + trial % 5;
    std::vector<Mask> edges;
    const int count = 1 + static_cast<int>(rng() % 4);
    for (int e = 0; e < count; ++e) {
      const int size = 1 + static_cast<int>(rng() % 3);
      Mask x = 0;
      while (Popcount(x) < size) x |= Bit(static_cast<int>(rng() % n));
      edges.push_back(x);
    }
    const int d = 1 + static_cast<int>(rng() % 3);
    Clutter delta = MinClutter(n, edges, 3);
    delta.d = d;
    CHECK(ClassMinimalDependent(delta) == BruteMinimalDependent(delta));
  }
  for (const Forest& g : ForestsUpToIsomorphism(6)) {
    CHECK(ClassMinimalDependent(DeltaForest(g)) ==
          BruteMinimalDependent(DeltaForest(g)));
  }
}

TEST_CASE("forests up to isomorphism") {
  const size_t expected[] = {0, 1, 2, 3, 6, 10, 20, 37};
  CHECK_THROWS_AS(ForestsUpToIsomorphism(0), DomainError);
  for (int n = 1; n <= 7; ++n) {
    CHECK(ForestsUpToIsomorphism(n).size() == expected[n]);
  }
}

TEST_CASE("forest decomposition matches the oracle for n <= 6") {
  for (int n = 1; n <= 6; ++n) {
    std::vector<Forest> forests = ForestsUpToIsomorphism(n);
    std::vector<Clutter> deltas;
    for (const Forest& g : forests) deltas.push_back(DeltaForest(g));
    std::vector<std::vector<Matroid>> brute = BruteMinimalDependent(deltas);
    for (size_t i = 0; i < forests.size(); ++i) {
      CHECK(brute[i] == ForestMatroids(forests[i]));
    }
  }
}

TEST_CASE("grid minimal matroids against the catalog") {
  Clutter delta = PadWithBigCircuits(DeltaGrid({2, 3, 2, 3}), 3);
  CHECK(GridMinimalMatroids(2, 3) == BruteMinimalDependent(delta));
  CHECK_THROWS_AS(GridMinimalMatroids(4, 4), DomainError);
}

TEST_CASE("count_grid_types") {
  const int expected[] = {2, 2, 3, 4};
  for (int l = 3; l <= 6; ++l) {
    GridTypeCount g = CountGridTypes({2, l, 2, 3});
    CHECK(g.line_types == expected[l - 3]);
    CHECK(g.types >= g.line_types);
  }
  CHECK(CountGridTypes({3, 3, 2, 3}).line_types == 2);
  CHECK_THROWS_AS(CountGridTypes({3, 3, 3, 3}), DomainError);
}

TEST_CASE("unique grid matroid is the only minimal one") {
  GridShape shape{3, 3, 3, 3};
  Clutter delta = PadWithBigCircuits(DeltaGrid(shape), 3);
  CHECK(BruteMinimalDependent(delta) ==
        std::vector<Matroid>{UniqueMinimalCircuits(shape, 3)});
}

TEST_CASE("catalog cache round trip") {
  MatroidCatalog c = EnumerateRankLe3(4);
  const std::string path = "oracle_test_catalog.bin";
  WriteCatalogCache(path, c);
  CHECK(ReadCatalogCache(path) == c);
  {
    std::FILE* f = std::fopen(path.c_str(), "wb");
    std::fputs("garbage", f);
    std::fclose(f);
  }
  CHECK_THROWS_AS(ReadCatalogCache(path), DomainError);
  std::remove(path.c_str());
}

}  // namespace
}  // namespace hypermat
