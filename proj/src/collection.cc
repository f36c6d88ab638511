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

#include "hypermat/collection.h"

#include <algorithm>
#include <numeric>
#include <unordered_map>

namespace hypermat {

void Collection::Normalize() {
  std::sort(pairs.begin(), pairs.end(), CanonicalOrder());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
}

bool Collection::operator<(const Collection& o) const {
  if (singletons != o.singletons) return CanonicalLess(singletons, o.singletons);
  if (pairs.size() != o.pairs.size()) return pairs.size() < o.pairs.size();
  return std::lexicographical_compare(pairs.begin(), pairs.end(),
                                      o.pairs.begin(), o.pairs.end(),
                                      CanonicalOrder());
}

namespace {

// 0 when v passes both rules in the graph induced on `alive`, else the rule.
int RuleViolation(const Forest& g, Mask alive, int v) {
  Mask nb = g.Neighbors(v) & alive;
  int deg = Popcount(nb);
  if (deg <= 1) return 1;
  bool next_to_leaf = false;
  ForEachBit(nb, [&](int w) {
    if (Popcount(g.Neighbors(w) & alive) == 1) next_to_leaf = true;
  });
  if (next_to_leaf && deg < 3) return 2;
  return 0;
}

void CheckVertices(const Forest& g, Mask s) {
  if ((s & ~FullMask(g.n())) != 0) throw DomainError("vertex out of range");
}

}  // namespace

SingletonTestResult PrimeSingletonTest(const Forest& g,
                                       const std::vector<int>& ordered) {
  Mask alive = FullMask(g.n());
  Mask seen = 0;
  for (std::size_t i = 0; i < ordered.size(); ++i) {
    int v = ordered[i];
    if (v < 0 || v >= g.n()) throw DomainError("vertex out of range");
    if (Contains(seen, v)) throw DomainError("repeated vertex");
    seen |= Bit(v);
    int rule = RuleViolation(g, alive, v);
    if (rule != 0) return {false, static_cast<int>(i), rule};
    alive &= ~Bit(v);
  }
  return {};
}

namespace {

bool PrimeMemo(const Forest& g, Mask s,
               std::unordered_map<Mask, bool, MaskHash>& memo) {
  if (s == 0) return true;
  auto it = memo.find(s);
  if (it != memo.end()) return it->second;
  bool ok = true;
  const Mask all = FullMask(g.n());
  ForEachBit(s, [&](int v) {
    if (!ok) return;
    Mask rest = s & ~Bit(v);
    if (RuleViolation(g, all & ~rest, v) != 0 || !PrimeMemo(g, rest, memo)) {
      ok = false;
    }
  });
  memo[s] = ok;
  return ok;
}

}  // namespace

bool IsPrimeSingletons(const Forest& g, Mask s) {
  CheckVertices(g, s);
  std::unordered_map<Mask, bool, MaskHash> memo;
  return PrimeMemo(g, s, memo);
}

bool IsPrimeSingletonsAllOrders(const Forest& g, Mask s) {
  CheckVertices(g, s);
  std::vector<int> order = Elements(s);
  do {
    if (!PrimeSingletonTest(g, order).pass) return false;
  } while (std::next_permutation(order.begin(), order.end()));
  return true;
}

bool IsValidCollection(const Forest& g, const Collection& c) {
  const Mask all = FullMask(g.n());
  if ((c.singletons & ~all) != 0) return false;
  for (Mask p : c.pairs) {
    if (Popcount(p) != 2 || (p & ~all) != 0) return false;
    if ((p & c.singletons) != 0) return false;
  }
  return true;
}

bool IsPrimeCollection(const Forest& g, const Collection& c) {
  if (!IsValidCollection(g, c)) return false;
  if (!IsPrimeSingletons(g, c.singletons)) return false;
  const Mask alive = FullMask(g.n()) & ~c.singletons;
  std::vector<Mask> in_s(g.n(), 0);
  for (Mask p : c.pairs) {
    int u = LowestBit(p), v = LowestBit(p & (p - 1));
    if (!g.HasEdge(u, v)) return false;
    in_s[u] |= Bit(v);
    in_s[v] |= Bit(u);
  }
  for (int v = 0; v < g.n(); ++v) {
    if (in_s[v] == 0) continue;
    if ((g.Neighbors(v) & alive & ~in_s[v]) == 0) return false;
  }
  return true;
}

std::vector<Mask> Clouds(const Forest& g, const Collection& c) {
  if (!IsValidCollection(g, c)) throw DomainError("invalid collection");
  std::vector<int> parent(g.n());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  Mask touched = 0;
  for (Mask p : c.pairs) {
    int u = LowestBit(p), v = LowestBit(p & (p - 1));
    parent[find(u)] = find(v);
    touched |= p;
  }
  std::vector<Mask> by_root(g.n(), 0);
  ForEachBit(touched, [&](int v) { by_root[find(v)] |= Bit(v); });
  std::vector<Mask> out;
  for (Mask m : by_root) {
    if (m != 0) out.push_back(m);
  }
  std::sort(out.begin(), out.end(), CanonicalOrder());
  return out;
}

BlockingTable::BlockingTable(const Forest& g, const Collection& c)
    : blocked_(g.n(), 0), clouds_(Clouds(g, c)) {
  const int n = g.n();
  std::vector<int> cloud_of(n, -1);
  for (std::size_t i = 0; i < clouds_.size(); ++i) {
    ForEachBit(clouds_[i], [&](int v) { cloud_of[v] = static_cast<int>(i); });
  }
  for (int v = 0; v < n; ++v) {
    for (int w = v + 1; w < n; ++w) {
      bool blocked = false;
      std::vector<int> path = g.Path(v, w);
      if (path.empty()) {
        blocked = true;
      } else {
        const int len = static_cast<int>(path.size());
        for (int i = 1; i + 1 < len && !blocked; ++i) {
          if (Contains(c.singletons, path[i])) blocked = true;
        }
        // Crossing: j < k in one cloud, with an earlier vertex and a later
        // vertex each outside that cloud.
        for (int j = 1; j < len && !blocked; ++j) {
          int cj = cloud_of[path[j]];
          if (cj < 0) continue;
          bool before = false;
          for (int i = 0; i < j; ++i) before |= cloud_of[path[i]] != cj;
          if (!before) continue;
          for (int k = j + 1; k + 1 < len && !blocked; ++k) {
            if (cloud_of[path[k]] != cj) continue;
            for (int l = k + 1; l < len; ++l) {
              if (cloud_of[path[l]] != cj) {
                blocked = true;
                break;
              }
            }
          }
        }
      }
      if (blocked) {
        blocked_[v] |= Bit(w);
        blocked_[w] |= Bit(v);
      }
    }
  }
}

bool BlockingTable::IsBlocked(Mask a) const {
  bool blocked = false;
  ForEachBit(a, [&](int v) {
    if ((blocked_[v] & a) != 0) blocked = true;
  });
  return blocked;
}

bool IsBlocked(const Forest& g, const Collection& c, Mask a) {
  return BlockingTable(g, c).IsBlocked(a);
}

Matroid MatroidFromCollection(const Forest& g, const Collection& c) {
  if (!IsValidCollection(g, c)) throw DomainError("invalid collection");
  BlockingTable table(g, c);
  std::vector<Mask> small;
  ForEachBit(c.singletons, [&](int v) { small.push_back(Bit(v)); });
  for (Mask cloud : table.clouds()) {
    ForEachSubsetOfSize(cloud, 2, [&](Mask p) { small.push_back(p); });
  }
  std::vector<Mask> listed = small;
  ForEachSubsetOfSize(FullMask(g.n()) & ~c.singletons, 3, [&](Mask t) {
    if (table.IsBlocked(t)) return;
    for (Mask p : listed) {
      if (IsSubset(p, t)) return;
    }
    small.push_back(t);
  });
  return Matroid::FromCircuitsWithTop(g.n(), std::move(small), 3);
}

std::vector<Mask> EnumeratePrimeSingletonSets(const Forest& g) {
  std::unordered_map<Mask, bool, MaskHash> memo;
  std::vector<Mask> out = {0};
  for (std::size_t i = 0; i < out.size(); ++i) {
    Mask s = out[i];
    int start = s == 0 ? 0 : 64 - std::countl_zero(static_cast<std::uint64_t>(s));
    for (int v = start; v < g.n(); ++v) {
      Mask t = s | Bit(v);
      if (PrimeMemo(g, t, memo)) out.push_back(t);
    }
  }
  for (Mask s : out) {
    ForEachBit(s, [&](int v) {
      if (!PrimeMemo(g, s & ~Bit(v), memo)) {
        throw VerificationFailed("prime singleton sets are not subset-closed");
      }
    });
  }
  std::sort(out.begin(), out.end(), CanonicalOrder());
  return out;
}

std::vector<Collection> EnumeratePrimeCollections(const Forest& g) {
  std::vector<Collection> out;
  for (Mask s : EnumeratePrimeSingletonSets(g)) {
    const Mask alive = FullMask(g.n()) & ~s;
    std::vector<Mask> edges;
    for (auto [u, v] : g.edges()) {
      if (Contains(alive, u) && Contains(alive, v)) edges.push_back(Bit(u) | Bit(v));
    }
    const std::size_t m = edges.size();
    std::vector<int> alive_deg(g.n(), 0);
    for (Mask e : edges) ForEachBit(e, [&](int v) { ++alive_deg[v]; });
    for (std::uint64_t choice = 0; choice < (std::uint64_t{1} << m); ++choice) {
      std::vector<int> used(g.n(), 0);
      Collection c;
      c.singletons = s;
      for (std::size_t i = 0; i < m; ++i) {
        if ((choice >> i) & 1) {
          c.pairs.push_back(edges[i]);
          ForEachBit(edges[i], [&](int v) { ++used[v]; });
        }
      }
      bool ok = true;
      for (int v = 0; v < g.n() && ok; ++v) {
        if (used[v] > 0 && used[v] == alive_deg[v]) ok = false;
      }
      if (!ok) continue;
      c.Normalize();
      out.push_back(std::move(c));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<DecompositionEntry> DecomposeForestVariety(const Forest& g) {
  std::vector<DecompositionEntry> out;
  for (Collection& c : EnumeratePrimeCollections(g)) {
    Matroid m = MatroidFromCollection(g, c);
    out.push_back({std::move(c), std::move(m)});
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (std::size_t j = 0; j < out.size(); ++j) {
      if (i != j && DependencyLeq(out[i].matroid, out[j].matroid)) {
        throw VerificationFailed("decomposition entries are comparable");
      }
    }
  }
  return out;
}

}  // namespace hypermat
