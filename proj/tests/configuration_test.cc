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

#include "hypermat/configuration.h"

#include <random>

#include "doctest.h"
#include "hypermat/collection.h"
#include "hypermat/hardness.h"
#include "test_util.h"

namespace hypermat {
namespace {

using testing::Family;
using testing::S;

Configuration ThreeConcurrent() {
  return Configuration::Make(7, Family({{1, 2, 3}, {1, 4, 5}, {1, 6, 7}}));
}

Configuration EConfiguration() {
  return Configuration::Make(
      15, Family({{1, 2, 3}, {1, 4, 5}, {1, 6, 7}, {2, 8, 9}, {2, 10, 11}, {3, 12, 13}, {3, 14, 15}}));
}

Configuration Triangle() {
  return Configuration::Make(6, Family({{1, 2, 4}, {2, 3, 5}, {1, 3, 6}}));
}

Configuration Fano() { return Configuration::Make(7, FanoLines()); }

TEST_CASE("configuration validation") {
  CHECK_THROWS_AS(Configuration::Make(4, Family({{1, 2}})), DomainError);
  CHECK_THROWS_AS(Configuration::Make(5, Family({{1, 2, 3}, {1, 2, 4}})), DomainError);
  CHECK_THROWS_AS(Configuration::Make(3, Family({{1, 2, 4}})), DomainError);
}

TEST_CASE("config_from_matroid examples") {
  Forest path(7, {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}});
  Matroid line = Simplify(MatroidFromCollection(path, Collection{})).simple;
  Configuration c = ConfigFromMatroid(line);
  REQUIRE(c.lines.size() == 1);
  CHECK(Popcount(c.lines[0]) == 7);

  Matroid star = MatroidOfConfiguration(ThreeConcurrent());
  CHECK(ConfigFromMatroid(star) == ThreeConcurrent());

  Configuration free = ConfigFromMatroid(Matroid::Free(3));
  CHECK(free.n == 3);
  CHECK(free.lines.empty());

  CHECK_THROWS_AS(ConfigFromMatroid(Matroid::Uniform(1, 2)), DomainError);
  CHECK_THROWS_AS(ConfigFromMatroid(Matroid::Free(4)), DomainError);
}

TEST_CASE("configuration round trip") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 200; ++trial) {
    Configuration c = testing::RandomForestLikeConfiguration(rng, 14);
    Matroid m = MatroidOfConfiguration(c);
    CHECK(ConfigFromMatroid(m) == c);
  }
  CHECK(ConfigFromMatroid(MatroidOfConfiguration(Fano())) == Fano());
}

TEST_CASE("is_forest_like examples") {
  ForestLikeResult star = IsForestLike(ThreeConcurrent());
  CHECK(star.forest_like);
  CHECK(star.edges.size() == 6);
  CHECK_FALSE(IsForestLike(Triangle()).forest_like);
  CHECK_FALSE(IsForestLike(Fano()).forest_like);
  CHECK(IsForestLike(EConfiguration()).forest_like);
}

TEST_CASE("is_forest_like ignores point order") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 200; ++trial) {
    Configuration c = rng() % 2 ? testing::RandomForestLikeConfiguration(rng, 12)
                                : ConfigFromMatroid(Simplify(testing::RandomRank3Matroid(rng, 8)).simple);
    std::vector<int> perm(c.n);
    for (int i = 0; i < c.n; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<Mask> lines;
    for (Mask l : c.lines) {
      Mask m = 0;
      ForEachBit(l, [&](int p) { m |= Bit(perm[p]); });
      lines.push_back(m);
    }
    CHECK(IsForestLike(Configuration::Make(c.n, lines)).forest_like == IsForestLike(c).forest_like);
  }
}

TEST_CASE("remove_line examples") {
  Configuration one = Configuration::Make(7, {FullMask(7)});
  Configuration gone = RemoveLine(one, FullMask(7));
  CHECK(gone.points == 0);
  CHECK(gone.lines.empty());
  Configuration two = RemoveLine(ThreeConcurrent(), S({1, 6, 7}));
  CHECK(two.lines == Family({{1, 2, 3}, {1, 4, 5}}));
  CHECK(two.points == S({1, 2, 3, 4, 5}));
  CHECK_THROWS_AS(RemoveLine(ThreeConcurrent(), S({2, 4, 6})), DomainError);
}

TEST_CASE("set_loops examples") {
  CHECK(SetLoops(ThreeConcurrent(), 0) == MatroidOfConfiguration(ThreeConcurrent()));
  Matroid m = SetLoops(ThreeConcurrent(), S({1}));
  CHECK(m.Loops() == S({1}));
  CHECK(m.CircuitsOfSize(3).empty());
  CHECK(m.rank() == 3);
  Matroid e12 = SetLoops(EConfiguration(), S({1, 2}));
  CHECK(e12.Loops() == S({1, 2}));
  CHECK(e12.CircuitsOfSize(3) == Family({{3, 12, 13}, {3, 14, 15}}));
}

TEST_CASE("comb_closure_components examples") {
  auto star = CombClosureComponents(ThreeConcurrent());
  REQUIRE(star.size() == 2);
  CHECK(star[0].loops == 0);
  CHECK(star[1].loops == S({1}));

  auto e = CombClosureComponents(EConfiguration());
  REQUIRE(e.size() == 4);
  CHECK(e[0].loops == 0);
  CHECK(e[1].loops == S({1}));
  CHECK(e[2].loops == S({2}));
  CHECK(e[3].loops == S({3}));

  Configuration chain = Configuration::Make(7, Family({{1, 2, 3}, {3, 4, 5}, {5, 6, 7}}));
  auto single = CombClosureComponents(chain);
  REQUIRE(single.size() == 1);
  CHECK(single[0].matroid == MatroidOfConfiguration(chain));

  CHECK_THROWS_AS(CombClosureComponents(Triangle()), DomainError);
}

TEST_CASE("closure components are bounded and sit above the central one") {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 300; ++trial) {
    Configuration c = testing::RandomForestLikeConfiguration(rng, 16);
    auto comps = CombClosureComponents(c);
    CHECK(comps.size() <= (std::size_t{1} << Popcount(c.MultiPoints())));
    Matroid central = MatroidOfConfiguration(c);
    REQUIRE(!comps.empty());
    CHECK(comps[0].matroid == central);
    for (const auto& comp : comps) CHECK(DependencyLeq(central, comp.matroid));
  }
}

TEST_CASE("irreducibility tags") {
  CHECK(IrreducibilityTagOf(ThreeConcurrent()).kind == IrreducibilityTag::Kind::kForestLike);
  CHECK(IrreducibilityTagOf(Triangle()).kind == IrreducibilityTag::Kind::kAtMostSixLines);
  Configuration five = Configuration::Make(
      10, Family({{1, 2, 3}, {1, 4, 5}, {2, 4, 6}, {3, 5, 7}, {6, 7, 8}}));
  CHECK(IrreducibilityTagOf(five).kind == IrreducibilityTag::Kind::kAtMostSixLines);
  CHECK(IrreducibilityTagOf(Fano()).kind == IrreducibilityTag::Kind::kUnknown);

  // A triangle with four pendant lines hung off one corner: seven lines, not
  // forest-like, and peeling pendants reaches four lines.
  Configuration big = Configuration::Make(
      14, Family({{1, 2, 4}, {2, 3, 5}, {1, 3, 6}, {1, 7, 8}, {1, 9, 10}, {2, 11, 12},
                  {3, 13, 14}}));
  IrreducibilityTag tag = IrreducibilityTagOf(big);
  CHECK(tag.kind == IrreducibilityTag::Kind::kBuildUpChain);
  CHECK(tag.removal_order.size() == 3);
}

}  // namespace
}  // namespace hypermat
