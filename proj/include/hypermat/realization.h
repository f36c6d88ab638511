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

#ifndef HYPERMAT_REALIZATION_H_
#define HYPERMAT_REALIZATION_H_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "hypermat/collection.h"
#include "hypermat/configuration.h"
#include "hypermat/hypergraph.h"
#include "hypermat/matroid.h"

namespace hypermat {

using Rational = mpq_class;
using RationalVector = std::vector<Rational>;

// Parses "p/q" or "p"; throws DomainError on malformed input or zero
// denominator.
Rational ParseRational(const std::string& text);
std::string FormatRational(const Rational& q);

// A d x n matrix over the rationals, stored row-major. Column j realizes
// element j.
struct RationalMatrix {
  int d = 0;
  int n = 0;
  std::vector<Rational> entries;

  static RationalMatrix Zero(int d, int n);
  static RationalMatrix FromRows(const std::vector<RationalVector>& rows);

  Rational& at(int i, int j) { return entries[static_cast<size_t>(i) * n + j]; }
  const Rational& at(int i, int j) const {
    return entries[static_cast<size_t>(i) * n + j];
  }
  RationalVector Column(int j) const;
  void SetColumn(int j, const RationalVector& v);
  // Columns listed in `columns`, kept in increasing order.
  RationalMatrix Columns(Mask columns) const;
  bool operator==(const RationalMatrix& o) const {
    return d == o.d && n == o.n && entries == o.entries;
  }
};

// Exact rank of the columns in `columns`.
int MatrixRank(const RationalMatrix& a, Mask columns);
int MatrixRank(const RationalMatrix& a);

// Circuits are the minimal dependent column sets of size at most
// max_circuit. When max_circuit <= rank(a), the result is the truncation to
// rank max_circuit - 1. Throws DomainError unless 1 <= max_circuit <= d + 1.
Matroid MatroidOfMatrix(const RationalMatrix& a, int max_circuit);
// Exact matroid of the columns.
Matroid MatroidOfMatrix(const RationalMatrix& a);

// True iff the column matroid of a is m. Throws DomainError when the column
// count differs from the ground set.
bool VerifyRealization(const RationalMatrix& a, const Matroid& m);

// Sum over columns of the squared Euclidean distance.
Rational SquaredDistance(const RationalMatrix& a, const RationalMatrix& b);

// A nonzero vector spanning span(a1, a2) & span(b1, b2) in Q^3, namely
// [a1 b1 b2] a2 - [a2 b1 b2] a1. Throws DomainError when either pair is
// dependent or the two planes coincide.
RationalVector LineMeet(const RationalVector& a1, const RationalVector& a2,
                        const RationalVector& b1, const RationalVector& b2);

struct RetryPolicy {
  std::uint64_t seed = 1;
  int max_attempts = 50;
};

// A 3-row realization of the matroid of the collection, placed one vertex at
// a time: a parallel copy when a placed vertex shares its cloud, a point on
// the line of a placed unblocked pair, otherwise a generic vector. Every
// prefix is verified. Throws DomainError unless c is valid for g, and
// BudgetExhausted when sampling keeps failing.
RationalMatrix RealizeForestMatroid(const Forest& g, const Collection& c,
                                    const RetryPolicy& policy = {});

struct PlanStep {
  enum class Kind { kLoop, kColoop, kFreeToRank3Flat, kFreeToLineThrough,
                    kParallelTo };
  Kind kind = Kind::kLoop;
  int a = -1;  // earlier element, for kFreeToLineThrough and kParallelTo
  int b = -1;  // earlier element, for kFreeToLineThrough
};
using BuildPlan = std::vector<PlanStep>;

const char* StepName(PlanStep::Kind kind);

struct PlanRealization {
  Matroid matroid;
  RationalMatrix matrix;
};

// Element i is added by step i. kFreeToRank3Flat adds freely to the whole
// ground set and needs rank 3; a coloop appends a row. Throws DomainError on a
// malformed plan and BudgetExhausted when a step fails verification on every
// attempt.
PlanRealization RealizeByPlan(const BuildPlan& plan,
                              const RetryPolicy& policy = {});

struct ConfigurationPlan {
  BuildPlan plan;
  std::vector<int> order;  // order[i] is the point added by step i
};

// Loops first, then the points on no line, then the lines in a build-up
// order, each line adding one or two spanning points and the rest on the
// line. Throws DomainError unless c is forest-like.
ConfigurationPlan PlanForConfiguration(const Configuration& c);

// min(DeltaGrid(shape) + all (d+1)-subsets) as a matroid of rank d. Throws
// DomainError outside 3 <= s <= t <= l, s <= k, t <= d <= s + t - 3, and
// VerificationFailed if the clutter is not a matroid clutter.
Matroid UniqueMinimalCircuits(const GridShape& shape, int d);

// A d x kl matrix with first row all ones: each row of the grid spans a
// subspace of rank t - 1 and each column one of rank s - 1, chosen at random
// and checked against UniqueMinimalCircuits.
RationalMatrix RealizeGridUniqueMinimal(const GridShape& shape, int d,
                                        const RetryPolicy& policy = {});

// A matrix realizing the configuration matroid within squared distance
// eps^2 of a. Lines are processed in a build-up order; each is tilted to a
// nearby plane through its one earlier point, points are projected onto it,
// and a zero point shared with a later line is moved along the meet of the
// two planes. Returns a unchanged when it already realizes the target. Throws
// DomainError unless c covers every column, c is forest-like, a's column
// matroid is above the target, columns of the configuration's loops are zero
// and every other zero column lies on at most two lines; BudgetExhausted
// when no attempt fits.
RationalMatrix PerturbToRealization(const RationalMatrix& a,
                                    const Configuration& c,
                                    const Rational& eps,
                                    const RetryPolicy& policy = {});

}  // namespace hypermat

#endif  // HYPERMAT_REALIZATION_H_
