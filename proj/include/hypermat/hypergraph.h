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

#ifndef HYPERMAT_HYPERGRAPH_H_
#define HYPERMAT_HYPERGRAPH_H_

#include <string>
#include <utility>
#include <vector>

#include "hypermat/matroid.h"
#include "hypermat/subset.h"

namespace hypermat {

// An antichain of subsets of [n] with ambient dimension d. When implicit_top
// is set, every (d+1)-subset of [n] containing no listed edge is an edge too.
struct Clutter {
  int n = 0;
  int d = 1;
  bool implicit_top = false;
  std::vector<Mask> edges;  // canonical order, antichain

  // All edges, with the implicit ones materialized.
  std::vector<Mask> Expanded() const;
  // True iff some edge (listed or implicit) is contained in a.
  bool ContainsEdgeWithin(Mask a) const;
  bool operator==(const Clutter& o) const {
    return n == o.n && d == o.d && implicit_top == o.implicit_top &&
           edges == o.edges;
  }
};

// Inclusion-minimal members of family, canonical order.
std::vector<Mask> MinimalMembers(std::vector<Mask> family);

// min(family) as a clutter; d defaults to the largest edge size.
Clutter MinClutter(int n, std::vector<Mask> family, int d = 0);

// True iff every edge of delta is dependent in m.
bool ContainsHypergraph(const Matroid& m, const Clutter& delta);

// An acyclic simple graph on [n].
class Forest {
 public:
  // Throws DomainError on loops, repeated edges, out-of-range labels or cycles.
  // Edges use 1-based labels.
  Forest(int n, const std::vector<std::pair<int, int>>& edges);

  int n() const { return n_; }
  // 0-based endpoint pairs, each with first < second, sorted.
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  Mask Neighbors(int v) const { return adj_[v]; }
  int Degree(int v) const { return Popcount(adj_[v]); }
  bool HasEdge(int u, int v) const { return Contains(adj_[u], v); }
  // Component index per vertex.
  const std::vector<int>& component() const { return component_; }
  // Vertices of the unique path from u to v (inclusive), or empty when u and
  // v lie in different components.
  std::vector<int> Path(int u, int v) const;

 private:
  int n_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<Mask> adj_;
  std::vector<int> component_;
  std::vector<int> parent_;
  std::vector<int> depth_;
};

// min(2-paths of G together with all 4-subsets), d = 3, 4-subsets implicit.
Clutter DeltaForest(const Forest& g);

struct GridShape {
  int k = 0;  // rows
  int l = 0;  // columns
  int s = 0;  // column-minor size
  int t = 0;  // row-minor size
  void Validate() const;
};

struct GridCoordinates {
  std::vector<std::vector<int>> y;  // y[i][j] = j*k + i + 1 (1-based label)
  std::vector<Mask> rows;           // R_i
  std::vector<Mask> cols;           // C_j
};

GridCoordinates MakeGridCoordinates(int k, int l);
// 0-based element index of cell (i, j), both 0-based.
inline int GridCell(int k, int i, int j) { return j * k + i; }

// t-subsets of every row and s-subsets of every column; d = max(s, t).
Clutter DeltaGrid(const GridShape& shape);

// min(delta together with all (d+1)-subsets); throws on edges larger than d.
Clutter PadWithBigCircuits(const Clutter& delta, int d);

struct CiModel {
  Clutter clutter;
  std::vector<std::string> statements;
  std::vector<std::string> notes;
  int x_size = 0, y1_size = 0, y2_size = 0, h1_size = 0, h2_size = 0;
};

// Hypergraph of the model {X independent of Y1 given (Y2,H1), X independent
// of Y2 given (Y1,H2)} with |X| = d, |Y1| = k, |Y2| = l, |H1| = s-1,
// |H2| = t-1.
CiModel CiModelToHypergraph(int d, int k, int l, int s, int t);

}  // namespace hypermat

#endif  // HYPERMAT_HYPERGRAPH_H_
