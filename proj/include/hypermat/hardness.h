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

#ifndef HYPERMAT_HARDNESS_H_
#define HYPERMAT_HARDNESS_H_

#include <vector>

#include "hypermat/alpha.h"
#include "hypermat/hypergraph.h"
#include "hypermat/matroid.h"

namespace hypermat {

// Padding data for a matroid M of rank t-1 >= 2: M' adds loops until there
// are at least t-1 of them, M+ adds free elements up to l = n' + 2(t-2).
// Elements of M are relabeled so its non-loops come first and its loops
// occupy the last c positions of [n].
struct HardnessLayout {
  int n = 0;
  int c = 0;       // loops of M
  int t = 0;       // rank + 1
  int cprime = 0;  // loops of M'
  int nprime = 0;
  int l = 0;
  static constexpr int kRows = 5;
  static constexpr int kColumnMinor = 3;
  std::vector<int> relabel;  // element of M -> column of R_1
  Matroid mprime;
  Matroid mplus;
};

HardnessLayout MakeHardnessLayout(const Matroid& m);

// The clutter Lambda_p(M) on the 5 x l grid, built directly from its five
// member classes. Throws DomainError unless 0 <= p <= t-1 and rank(M) >= 2.
Clutter LambdaP(const HardnessLayout& layout, int p);
Clutter LambdaP(const Matroid& m, int p);

struct GridEmbedding {
  GridShape shape;
  std::vector<int> relabel;  // element of M -> column j, sitting at cell (1, j)
  Mask target = 0;           // cells of R_1 holding the copy of M
};

struct HardnessResult {
  GridEmbedding embedding;
  Clutter start;  // the grid clutter the trace starts from
  Clutter final_clutter;
  Matroid result;
  std::vector<TransformStep> trace;
};

// Builds a grid clutter and a sequence of alpha1/alpha2 steps ending in the
// circuits of a matroid N with N restricted to the target cells equal to M
// relabeled by embedding.relabel. Throws VerificationFailed if any step of
// the construction does not behave as required.
HardnessResult HardnessPipeline(const Matroid& m);

struct LineRouteResult {
  GridShape shape;  // s = 2, t = 3, one row per line, one column per point
  Clutter start;
  Clutter before_closure;
  Clutter final_clutter;
  Matroid result;
  int closure_steps = 0;
  std::vector<TransformStep> trace;
};

// Point-line route: lines are 3-subsets of [points], every point on at least
// one line. Row i keeps only the cells of line i; alpha2 closes the rest.
LineRouteResult LineConfigurationRoute(int points, const std::vector<Mask>& lines);

// 124, 136, 157, 235, 267, 347, 456 as 0-based masks.
std::vector<Mask> FanoLines();
Matroid FanoMatroid();

}  // namespace hypermat

#endif  // HYPERMAT_HARDNESS_H_
