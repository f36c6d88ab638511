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

#ifndef HYPERMAT_CONFIGURATION_H_
#define HYPERMAT_CONFIGURATION_H_

#include <utility>
#include <vector>

#include "hypermat/matroid.h"

namespace hypermat {

// Points and lines inside the universe [n] (0-based bits). Lines hold at
// least three points and pairwise share at most one. Loops are points set to
// the zero vector.
struct Configuration {
  int n = 0;
  Mask points = 0;
  std::vector<Mask> lines;  // canonical order
  Mask loops = 0;

  // Validates and sorts; throws DomainError on a malformed configuration.
  static Configuration Make(int n, std::vector<Mask> lines, Mask loops = 0);
  static Configuration Make(int n, Mask points, std::vector<Mask> lines, Mask loops);

  // Number of lines through p.
  int LineCount(int p) const;
  // Points on at least three lines.
  Mask MultiPoints() const;
  bool operator==(const Configuration& o) const {
    return n == o.n && points == o.points && lines == o.lines && loops == o.loops;
  }
};

// Loops as singletons, plus every 3-subset of the non-loop part of a line.
// The ground set is `points`, relabeled in increasing order.
Matroid MatroidOfConfiguration(const Configuration& c);

// Lines are the rank-2 flats with at least three elements. Throws DomainError
// unless m is simple of rank at most 3.
Configuration ConfigFromMatroid(const Matroid& m);

struct ForestLikeResult {
  bool forest_like = false;
  // Consecutive points of each line in ascending order.
  std::vector<std::pair<int, int>> edges;
};
ForestLikeResult IsForestLike(const Configuration& c);

// Drops the line and the points lying on no other line. Throws DomainError
// when the line is absent.
Configuration RemoveLine(const Configuration& c, Mask line);

// The matroid with `loops` added to the configuration's loops.
Matroid SetLoops(const Configuration& c, Mask loops);

// Loops added and lines left with at most two non-loop points removed.
Configuration WithLoops(const Configuration& c, Mask loops);

struct ClosureComponent {
  Mask loops = 0;  // the subset J of multi-points set to loops
  Matroid matroid;
};

// Candidates C_J for J inside the points on at least three lines; C_J is
// kept iff each p in J still lies on three lines of C_{J - p}. Central
// component first, then by |J| and canonical order. Throws DomainError
// unless c is forest-like.
std::vector<ClosureComponent> CombClosureComponents(const Configuration& c);

struct IrreducibilityTag {
  enum class Kind { kForestLike, kAtMostSixLines, kBuildUpChain, kUnknown };
  Kind kind = Kind::kUnknown;
  std::vector<Mask> removal_order;  // for kBuildUpChain
};

const char* TagName(IrreducibilityTag::Kind kind);

IrreducibilityTag IrreducibilityTagOf(const Configuration& c);

}  // namespace hypermat

#endif  // HYPERMAT_CONFIGURATION_H_
