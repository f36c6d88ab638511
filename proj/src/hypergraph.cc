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

#include "hypermat/hypergraph.h"

#include <algorithm>
#include <numeric>
#include <queue>
#include <unordered_set>

#include "hypermat/kernels.h"

namespace hypermat {

std::vector<Mask> Clutter::Expanded() const {
  std::vector<Mask> out = edges;
  if (implicit_top) {
    ForEachSubsetOfSize(FullMask(n), d + 1, [&](Mask s) {
      if (!kernels::AnySubsetOf(edges, s)) out.push_back(s);
    });
    std::sort(out.begin(), out.end(), CanonicalOrder());
  }
  return out;
}

bool Clutter::ContainsEdgeWithin(Mask a) const {
  if (implicit_top && Popcount(a) >= d + 1) return true;
  return kernels::AnySubsetOf(edges, a);
}

std::vector<Mask> MinimalMembers(std::vector<Mask> family) {
  std::sort(family.begin(), family.end(), CanonicalOrder());
  family.erase(std::unique(family.begin(), family.end()), family.end());
  std::vector<Mask> kept;
  std::unordered_set<Mask, MaskHash> kept_set;
  for (Mask c : family) {
    int size = Popcount(c);
    bool dominated = false;
    if (size <= 20 && (std::size_t{1} << size) < kept.size()) {
      ForEachSubmask(c, [&](Mask sub) {
        if (!dominated && sub != c && kept_set.count(sub)) dominated = true;
      });
    } else {
      dominated = kernels::AnySubsetOf(kept, c);
    }
    if (!dominated) {
      kept.push_back(c);
      kept_set.insert(c);
    }
  }
  return kept;
}

Clutter MinClutter(int n, std::vector<Mask> family, int d) {
  Clutter out;
  out.n = n;
  out.edges = MinimalMembers(std::move(family));
  for (Mask e : out.edges) {
    if ((e & ~FullMask(n)) != 0) throw DomainError("edge outside [n]");
  }
  if (d <= 0) {
    d = 1;
    for (Mask e : out.edges) d = std::max(d, Popcount(e));
  }
  out.d = d;
  return out;
}

bool ContainsHypergraph(const Matroid& m, const Clutter& delta) {
  if (m.n() != delta.n) throw DomainError("ground set mismatch");
  for (Mask e : delta.edges) {
    if (!m.IsDependent(e)) return false;
  }
  if (delta.implicit_top && m.rank() > delta.d) {
    bool ok = true;
    ForEachSubsetOfSize(m.ground(), delta.d + 1, [&](Mask s) {
      if (ok && !m.IsDependent(s)) ok = false;
    });
    return ok;
  }
  return true;
}

Forest::Forest(int n, const std::vector<std::pair<int, int>>& edges) : n_(n) {
  if (n < 1 || n > kMaxGround) throw DomainError("forest size out of range");
  adj_.assign(n, 0);
  std::vector<int> uf(n);
  std::iota(uf.begin(), uf.end(), 0);
  auto find = [&](int x) {
    while (uf[x] != x) x = uf[x] = uf[uf[x]];
    return x;
  };
  for (auto [a, b] : edges) {
    if (a < 1 || a > n || b < 1 || b > n || a == b) {
      throw DomainError("bad edge " + std::to_string(a) + "-" +
                        std::to_string(b));
    }
    int u = std::min(a, b) - 1, v = std::max(a, b) - 1;
    if (Contains(adj_[u], v)) throw DomainError("repeated edge");
    int ru = find(u), rv = find(v);
    if (ru == rv) throw DomainError("graph has a cycle");
    uf[ru] = rv;
    adj_[u] |= Bit(v);
    adj_[v] |= Bit(u);
    edges_.push_back({u, v});
  }
  std::sort(edges_.begin(), edges_.end());
  component_.assign(n, -1);
  parent_.assign(n, -1);
  depth_.assign(n, 0);
  int comp = 0;
  for (int r = 0; r < n; ++r) {
    if (component_[r] >= 0) continue;
    std::queue<int> q;
    q.push(r);
    component_[r] = comp;
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      ForEachBit(adj_[v], [&](int w) {
        if (component_[w] >= 0) return;
        component_[w] = comp;
        parent_[w] = v;
        depth_[w] = depth_[v] + 1;
        q.push(w);
      });
    }
    ++comp;
  }
}

std::vector<int> Forest::Path(int u, int v) const {
  if (component_[u] != component_[v]) return {};
  std::vector<int> left, right;
  while (depth_[u] > depth_[v]) {
    left.push_back(u);
    u = parent_[u];
  }
  while (depth_[v] > depth_[u]) {
    right.push_back(v);
    v = parent_[v];
  }
  while (u != v) {
    left.push_back(u);
    right.push_back(v);
    u = parent_[u];
    v = parent_[v];
  }
  left.push_back(u);
  left.insert(left.end(), right.rbegin(), right.rend());
  return left;
}

Clutter DeltaForest(const Forest& g) {
  std::vector<Mask> paths;
  for (int v = 0; v < g.n(); ++v) {
    std::vector<int> nb = Elements(g.Neighbors(v));
    for (std::size_t a = 0; a < nb.size(); ++a) {
      for (std::size_t b = a + 1; b < nb.size(); ++b) {
        paths.push_back(Bit(nb[a]) | Bit(v) | Bit(nb[b]));
      }
    }
  }
  Clutter out;
  out.n = g.n();
  out.d = 3;
  out.implicit_top = true;
  out.edges = MinimalMembers(std::move(paths));
  return out;
}

void GridShape::Validate() const {
  if (k < 1 || l < 1) throw DomainError("grid needs k, l >= 1");
  if (s < 2 || t < 2) throw DomainError("grid needs s, t >= 2");
  if (s > k || t > l) throw DomainError("grid needs s <= k and t <= l");
  if (k * l > kMaxGround) throw DomainError("grid exceeds ground set cap");
}

GridCoordinates MakeGridCoordinates(int k, int l) {
  if (k < 1 || l < 1 || k * l > kMaxGround) {
    throw DomainError("grid dimensions out of range");
  }
  GridCoordinates out;
  out.y.assign(k, std::vector<int>(l));
  out.rows.assign(k, 0);
  out.cols.assign(l, 0);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < l; ++j) {
      int cell = GridCell(k, i, j);
      out.y[i][j] = cell + 1;
      out.rows[i] |= Bit(cell);
      out.cols[j] |= Bit(cell);
    }
  }
  return out;
}

Clutter DeltaGrid(const GridShape& shape) {
  shape.Validate();
  GridCoordinates g = MakeGridCoordinates(shape.k, shape.l);
  std::vector<Mask> family;
  for (Mask r : g.rows) {
    ForEachSubsetOfSize(r, shape.t, [&](Mask s) { family.push_back(s); });
  }
  for (Mask c : g.cols) {
    ForEachSubsetOfSize(c, shape.s, [&](Mask s) { family.push_back(s); });
  }
  return MinClutter(shape.k * shape.l, std::move(family),
                    std::max(shape.s, shape.t));
}

Clutter PadWithBigCircuits(const Clutter& delta, int d) {
  if (d < 1) throw DomainError("ambient dimension must be positive");
  if (delta.implicit_top && delta.d == d) return delta;
  std::vector<Mask> family = delta.Expanded();
  for (Mask e : family) {
    if (Popcount(e) > d) {
      throw DomainError("edge " + ToString(e) + " larger than d = " +
                        std::to_string(d));
    }
  }
  Clutter out;
  out.n = delta.n;
  out.d = d;
  out.implicit_top = true;
  out.edges = MinimalMembers(std::move(family));
  return out;
}

CiModel CiModelToHypergraph(int d, int k, int l, int s, int t) {
  if (d < 1 || k < 1 || l < 1 || s - 1 < 1 || t - 1 < 1) {
    throw DomainError("CI model cardinalities must be at least 1");
  }
  CiModel out;
  out.clutter = DeltaGrid({k, l, s, t});
  out.clutter.d = d;
  out.x_size = d;
  out.y1_size = k;
  out.y2_size = l;
  out.h1_size = s - 1;
  out.h2_size = t - 1;
  out.statements = {"X⊥Y1 | {Y2,H1}", "X⊥Y2 | {Y1,H2}"};
  if (s == 2) {
    out.notes.push_back(
        "H1 is constant: the first statement is X⊥Y1 | Y2, the setting of "
        "the intersection axiom");
  }
  if (t == 2) {
    out.notes.push_back(
        "H2 is constant: the second statement is X⊥Y2 | Y1, the setting of "
        "the intersection axiom");
  }
  if (t == l) out.notes.push_back("row edges are whole rows");
  if (s == k) out.notes.push_back("column edges are whole columns");
  return out;
}

}  // namespace hypermat
