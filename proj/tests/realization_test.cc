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

#include "hypermat/realization.h"

#include <random>

#include "doctest.h"
#include "hypermat/alpha.h"
#include "hypermat/collection.h"
#include "test_util.h"

namespace hypermat {
namespace {

using testing::Family;
using testing::S;

RationalMatrix M(const std::vector<std::vector<int>>& rows) {
  std::vector<RationalVector> r;
  for (const auto& row : rows) {
    RationalVector v;
    for (int x : row) v.emplace_back(x);
    r.push_back(v);
  }
  return RationalMatrix::FromRows(r);
}

// Two lines through a zero column.
RationalMatrix TwoLinesThroughLoop() {
  return M({{1, 1, 0, 0, 0}, {0, 1, 0, 1, 0}, {0, 0, 0, 1, 1}});
}

Configuration TwoLines() {
  return Configuration::Make(5, Family({{1, 2, 3}, {3, 4, 5}}));
}

RationalMatrix MovedPoint(const Rational& eps) {
  RationalMatrix a = TwoLinesThroughLoop();
  a.at(1, 2) = eps;
  return a;
}

TEST_CASE("rational parsing") {
  CHECK(ParseRational("-6/4") == Rational(-3, 2));
  CHECK(FormatRational(ParseRational("10/5")) == "2");
  CHECK_THROWS_AS(ParseRational("1/0"), DomainError);
  CHECK_THROWS_AS(ParseRational("x"), DomainError);
  CHECK_THROWS_AS(ParseRational(""), DomainError);
}

TEST_CASE("matroid_of_matrix") {
  CHECK(MatroidOfMatrix(M({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}), 4) ==
        Matroid::Free(3));
  Matroid with_loop = MatroidOfMatrix(TwoLinesThroughLoop(), 4);
  CHECK(with_loop.Loops() == S({3}));
  CHECK(MatroidOfMatrix(MovedPoint(1), 4) ==
        MatroidOfConfiguration(TwoLines()));
  CHECK(MatroidOfMatrix(RationalMatrix::Zero(0, 3)) ==
        Matroid::Uniform(0, 3));
  CHECK_THROWS_AS(MatroidOfMatrix(TwoLinesThroughLoop(), 5), DomainError);
  // Truncation when max_circuit does not exceed the rank.
  CHECK(MatroidOfMatrix(M({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}), 3) ==
        Matroid::Uniform(2, 3));
}

TEST_CASE("matroid_of_matrix agrees with the plan matroid") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 15; ++trial) {
    Configuration c = testing::RandomForestLikeConfiguration(rng, 9);
    ConfigurationPlan cp = PlanForConfiguration(c);
    PlanRealization r = RealizeByPlan(cp.plan, {trial + 1ULL, 50});
    CHECK(MatroidOfMatrix(r.matrix) == r.matroid);
    CHECK(MatrixRank(r.matrix) == r.matroid.rank());
  }
}

TEST_CASE("verify_realization") {
  RationalMatrix id = M({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  CHECK(VerifyRealization(id, Matroid::Free(3)));
  CHECK_FALSE(VerifyRealization(M({{1, 0, 0}, {0, 1, 0}, {0, 0, 0}}),
                                Matroid::Free(3)));
  CHECK_FALSE(VerifyRealization(id, Matroid::Uniform(2, 3)));
  CHECK_THROWS_AS(VerifyRealization(id, Matroid::Free(4)), DomainError);
}

TEST_CASE("line_meet") {
  RationalVector a1 = {1, 0, 0}, a2 = {0, 1, 0}, b1 = {0, 0, 1},
                 b2 = {1, 1, 1};
  CHECK(LineMeet(a1, a2, b1, b2) == RationalVector{-1, -1, 0});
  CHECK_THROWS_AS(LineMeet(a1, a2, a2, a1), DomainError);
  CHECK_THROWS_AS(LineMeet(a1, a1, b1, b2), DomainError);

  std::mt19937_64 rng(7);
  auto rnd = [&] {
    RationalVector v(3);
    for (Rational& x : v) {
      x = Rational(static_cast<long>(rng() % 41) - 20,
                   static_cast<long>(rng() % 9) + 1);
      x.canonicalize();
    }
    return v;
  };
  auto det = [](const RationalVector& x, const RationalVector& y,
                const RationalVector& z) -> Rational {
    return x[0] * (y[1] * z[2] - y[2] * z[1]) -
           x[1] * (y[0] * z[2] - y[2] * z[0]) +
           x[2] * (y[0] * z[1] - y[1] * z[0]);
  };
  int checked = 0;
  for (int i = 0; i < 200; ++i) {
    RationalVector p = rnd(), q = rnd(), u = rnd(), v = rnd();
    RationalVector m;
    try {
      m = LineMeet(p, q, u, v);
    } catch (const DomainError&) {
      continue;
    }
    ++checked;
    CHECK(det(m, p, q) == 0);
    CHECK(det(m, u, v) == 0);
  }
  CHECK(checked > 150);
}

TEST_CASE("realize_forest_matroid examples") {
  Forest path(5, {{1, 2}, {2, 3}, {3, 4}, {4, 5}});
  RationalMatrix a = RealizeForestMatroid(path, Collection{});
  CHECK(MatrixRank(a) == 2);
  for (int i = 0; i < 5; ++i) {
    for (int j = i + 1; j < 5; ++j) CHECK(MatrixRank(a, Bit(i) | Bit(j)) == 2);
  }

  Forest g(7, {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {4, 7}});
  Collection c;
  c.pairs = {S({3, 4}), S({4, 5})};
  c.Normalize();
  RationalMatrix b = RealizeForestMatroid(g, c);
  CHECK(VerifyRealization(b, MatroidFromCollection(g, c)));
  CHECK(MatrixRank(b, S({3, 4, 5})) == 1);
  CHECK(MatrixRank(b, S({1, 2, 3})) == 2);
  CHECK(MatrixRank(b, S({1, 2, 6, 7})) == 3);

  Collection invalid;
  invalid.singletons = S({1});
  invalid.pairs = {S({1, 2})};
  invalid.Normalize();
  CHECK_THROWS_AS(RealizeForestMatroid(path, invalid), DomainError);
}

TEST_CASE("realize_forest_matroid on every prime collection") {
  std::mt19937_64 rng(2024);
  int realized = 0;
  for (int trial = 0; trial < 8; ++trial) {
    Forest g = testing::RandomForest(rng, 4 + trial % 5);
    for (const Collection& c : EnumeratePrimeCollections(g)) {
      RationalMatrix a = RealizeForestMatroid(g, c, {trial + 3ULL, 50});
      CHECK(VerifyRealization(a, MatroidFromCollection(g, c)));
      ++realized;
    }
  }
  CHECK(realized > 8);
}

TEST_CASE("realize_by_plan") {
  using K = PlanStep::Kind;
  PlanRealization free3 = RealizeByPlan({{K::kColoop}, {K::kColoop},
                                         {K::kColoop}});
  CHECK(free3.matroid == Matroid::Free(3));
  CHECK(free3.matrix.d == 3);

  PlanRealization u23 = RealizeByPlan({{K::kColoop}, {K::kColoop},
                                       {K::kFreeToLineThrough, 0, 1}});
  CHECK(u23.matroid == Matroid::Uniform(2, 3));
  CHECK(u23.matrix.d == 2);
  CHECK(VerifyRealization(u23.matrix, Matroid::Uniform(2, 3)));

  PlanRealization mixed = RealizeByPlan(
      {{K::kLoop}, {K::kColoop}, {K::kParallelTo, 1}, {K::kColoop},
       {K::kColoop}, {K::kFreeToRank3Flat}});
  CHECK(mixed.matroid.Loops() == Bit(0));
  CHECK(mixed.matroid.IsDependent(Bit(1) | Bit(2)));
  CHECK(VerifyRealization(mixed.matrix, mixed.matroid));

  CHECK_THROWS_AS(RealizeByPlan({{K::kColoop}, {K::kFreeToRank3Flat}}),
                  DomainError);
  CHECK_THROWS_AS(RealizeByPlan({{K::kParallelTo, 0}}), DomainError);
  CHECK_THROWS_AS(RealizeByPlan({{K::kLoop}, {K::kParallelTo, 0}}),
                  DomainError);
}

TEST_CASE("plans for forest-like configurations") {
  ConfigurationPlan two = PlanForConfiguration(TwoLines());
  PlanRealization r = RealizeByPlan(two.plan);
  CHECK(Permute(r.matroid, two.order) == MatroidOfConfiguration(TwoLines()));

  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    Configuration c = testing::RandomForestLikeConfiguration(rng, 10);
    ConfigurationPlan cp = PlanForConfiguration(c);
    PlanRealization pr = RealizeByPlan(cp.plan, {trial + 5ULL, 50});
    CHECK(Permute(pr.matroid, cp.order) == MatroidOfConfiguration(c));
  }
  Configuration triangle =
      Configuration::Make(6, Family({{1, 2, 4}, {2, 3, 5}, {1, 3, 6}}));
  CHECK_THROWS_AS(PlanForConfiguration(triangle), DomainError);
}

TEST_CASE("unique_minimal_circuits") {
  Matroid m = UniqueMinimalCircuits({3, 4, 3, 3}, 3);
  CHECK(m.n() == 12);
  CHECK(m.rank() == 3);
  GridCoordinates g = MakeGridCoordinates(3, 4);
  for (int j = 0; j < 4; ++j) CHECK(m.IsDependent(g.cols[j]));
  for (int i = 0; i < 3; ++i) CHECK(m.Rank(g.rows[i]) == 2);

  Matroid m9 = UniqueMinimalCircuits({3, 3, 3, 3}, 3);
  CHECK(m9.CircuitsOfSize(3).size() == 6);

  Matroid m4 = UniqueMinimalCircuits({3, 4, 3, 4}, 4);
  CHECK(m4.rank() == 4);
  CHECK(m4.CircuitsOfSize(3).size() == 4);
  CHECK(m4.CircuitsOfSize(4).size() == 3);
  CHECK(!m4.CircuitsOfSize(5).empty());
  CHECK(m4.CircuitsOfSize(2).empty());

  CHECK_THROWS_AS(UniqueMinimalCircuits({3, 3, 3, 3}, 4), DomainError);
  CHECK_THROWS_AS(UniqueMinimalCircuits({3, 3, 2, 3}, 3), DomainError);
  CHECK_THROWS_AS(UniqueMinimalCircuits({3, 3, 3, 3}, 2), DomainError);

  // Below the range the padded clutter has several minimal matroids.
  Clutter low = PadWithBigCircuits(DeltaGrid({2, 3, 2, 3}), 3);
  bool unique = IsMatroidClutter(low);
  if (!unique) {
    SearchResult r = SearchMinDependent(low);
    CHECK(r.complete);
    CHECK(r.matroids.size() >= 2);
  }
  CHECK_FALSE(unique);
}

TEST_CASE("realize_grid_unique_minimal") {
  RationalMatrix a = RealizeGridUniqueMinimal({3, 4, 3, 3}, 3);
  CHECK(a.d == 3);
  CHECK(a.n == 12);
  for (int j = 0; j < a.n; ++j) CHECK(a.at(0, j) == 1);
  CHECK(VerifyRealization(a, UniqueMinimalCircuits({3, 4, 3, 3}, 3)));
  CHECK(VerifyRealization(RealizeGridUniqueMinimal({3, 3, 3, 3}, 3),
                          UniqueMinimalCircuits({3, 3, 3, 3}, 3)));
  CHECK_THROWS_AS(RealizeGridUniqueMinimal({3, 3, 3, 3}, 4), DomainError);
}

TEST_CASE("realize_grid_unique_minimal over small shapes") {
  int shapes = 0;
  for (int k = 3; k * 3 <= 20; ++k) {
    for (int l = 3; k * l <= 20; ++l) {
      for (int s = 3; s <= k; ++s) {
        for (int t = s; t <= l; ++t) {
          for (int d = t; d <= s + t - 3; ++d) {
            GridShape shape{k, l, s, t};
            RationalMatrix a = RealizeGridUniqueMinimal(shape, d, {7, 50});
            CHECK(VerifyRealization(a, UniqueMinimalCircuits(shape, d)));
            ++shapes;
          }
        }
      }
    }
  }
  CHECK(shapes >= 6);
}

TEST_CASE("perturb_to_realization on two lines through a zero column") {
  const Matroid target = MatroidOfConfiguration(TwoLines());
  for (Rational eps : {Rational(1), Rational(1, 10), Rational(1, 1000)}) {
    RationalMatrix out = PerturbToRealization(TwoLinesThroughLoop(),
                                              TwoLines(), eps);
    CHECK(VerifyRealization(out, target));
    CHECK(SquaredDistance(out, TwoLinesThroughLoop()) < eps * eps);
    RationalVector moved = out.Column(2);
    CHECK(moved != RationalVector{0, 0, 0});
  }
  RationalMatrix already = MovedPoint(Rational(1, 2));
  CHECK(PerturbToRealization(already, TwoLines(), 1) == already);
}

TEST_CASE("perturb_to_realization preconditions") {
  CHECK_THROWS_AS(PerturbToRealization(TwoLinesThroughLoop(), TwoLines(), 0),
                  DomainError);
  // Points 1, 2, 3 independent: outside the closure of the two lines.
  RationalMatrix outside = M({{1, 0, 1, 0, 1}, {0, 1, 2, 0, 1},
                              {0, 0, 3, 1, 1}});
  CHECK_THROWS_AS(PerturbToRealization(outside, TwoLines(), 1), DomainError);
  Configuration looped =
      Configuration::Make(5, Family({{1, 2, 3}, {3, 4, 5}}), S({1}));
  CHECK_THROWS_AS(PerturbToRealization(MovedPoint(1), looped, 1),
                  DomainError);
}

TEST_CASE("perturb_to_realization on degenerated realizations") {
  std::mt19937_64 rng(5);
  int runs = 0;
  for (int trial = 0; trial < 25; ++trial) {
    Configuration c = testing::RandomForestLikeConfiguration(rng, 9);
    ConfigurationPlan cp = PlanForConfiguration(c);
    PlanRealization pr = RealizeByPlan(cp.plan, {trial + 11ULL, 50});
    if (pr.matrix.d != 3) continue;
    RationalMatrix a = RationalMatrix::Zero(3, c.n);
    for (int i = 0; i < c.n; ++i) a.SetColumn(cp.order[i], pr.matrix.Column(i));
    const Matroid target = MatroidOfConfiguration(c);
    REQUIRE(VerifyRealization(a, target));
    // Zero out one point lying on at most two lines.
    int victim = static_cast<int>(rng() % c.n);
    if (c.LineCount(victim) > 2) continue;
    a.SetColumn(victim, {0, 0, 0});
    Rational eps(1, 1 + static_cast<int>(rng() % 50));
    RationalMatrix out = PerturbToRealization(a, c, eps, {trial + 1ULL, 60});
    CHECK(VerifyRealization(out, target));
    CHECK(SquaredDistance(out, a) < eps * eps);
    ++runs;
  }
  CHECK(runs >= 10);
}

}  // namespace
}  // namespace hypermat
