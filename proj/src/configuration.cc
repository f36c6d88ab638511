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

#include <algorithm>
#include <numeric>

namespace hypermat {

Configuration Configuration::Make(int n, std::vector<Mask> lines, Mask loops) {
  return Make(n, FullMask(n), std::move(lines), loops);
}

Configuration Configuration::Make(int n, Mask points, std::vector<Mask> lines,
                                  Mask loops) {
  if (n < 0 || n > kMaxGround) throw DomainError("configuration size out of range");
  if ((points & ~FullMask(n)) != 0) throw DomainError("point outside [n]");
  if ((loops & ~points) != 0) throw DomainError("loop is not a point");
  std::sort(lines.begin(), lines.end(), CanonicalOrder());
  if (std::adjacent_find(lines.begin(), lines.end()) != lines.end()) {
    throw DomainError("repeated line");
  }
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (Popcount(lines[i]) < 3) throw DomainError("line " + ToString(lines[i]) + " has fewer than 3 points");
    if ((lines[i] & ~points) != 0) throw DomainError("line " + ToString(lines[i]) + " leaves the point set");
    for (std::size_t j = 0; j < i; ++j) {
      if (Popcount(lines[i] & lines[j]) > 1) {
        throw DomainError("lines " + ToString(lines[j]) + " and " + ToString(lines[i]) +
                          " share two points");
      }
    }
  }
  Configuration c;
  c.n = n;
  c.points = points;
  c.lines = std::move(lines);
  c.loops = loops;
  return c;
}

int Configuration::LineCount(int p) const {
  int count = 0;
  for (Mask l : lines) count += Contains(l, p) ? 1 : 0;
  return count;
}

Mask Configuration::MultiPoints() const {
  Mask out = 0;
  ForEachBit(points, [&](int p) {
    if (LineCount(p) >= 3) out |= Bit(p);
  });
  return out;
}

namespace {

Mask Compress(Mask set, Mask points) {
  Mask out = 0;
  int k = 0;
  ForEachBit(points, [&](int p) {
    if (Contains(set, p)) out |= Bit(k);
    ++k;
  });
  return out;
}

}  // namespace

Matroid MatroidOfConfiguration(const Configuration& c) {
  const Mask loops = c.loops & c.points;
  std::vector<Mask> circuits;
  ForEachBit(loops, [&](int p) { circuits.push_back(Compress(Bit(p), c.points)); });
  for (Mask l : c.lines) {
    Mask live = l & ~loops;
    if (Popcount(live) < 3) continue;
    ForEachSubsetOfSize(live, 3, [&](Mask t) { circuits.push_back(Compress(t, c.points)); });
  }
  return Matroid::FromCircuitsWithTop(Popcount(c.points), std::move(circuits), 3);
}

Configuration ConfigFromMatroid(const Matroid& m) {
  if (m.rank() > 3) throw DomainError("configuration needs rank at most 3");
  if (Simplify(m).simple.n() != m.n() || m.Loops() != 0) {
    throw DomainError("configuration needs a simple matroid");
  }
  std::vector<Mask> lines;
  if (m.rank() >= 2) {
    for (const Flat& f : FlatsOfRank(m, 2)) {
      if (Popcount(f.members) >= 3) lines.push_back(f.members);
    }
  }
  Configuration c = Configuration::Make(m.n(), std::move(lines));
  if (MatroidOfConfiguration(c) != m) {
    throw VerificationFailed("configuration does not reproduce the matroid");
  }
  return c;
}

ForestLikeResult IsForestLike(const Configuration& c) {
  ForestLikeResult out;
  std::vector<int> parent(c.n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  out.forest_like = true;
  for (Mask l : c.lines) {
    std::vector<int> pts = Elements(l);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
      out.edges.emplace_back(pts[i], pts[i + 1]);
      int a = find(pts[i]), b = find(pts[i + 1]);
      if (a == b) {
        out.forest_like = false;
      } else {
        parent[a] = b;
      }
    }
  }
  std::sort(out.edges.begin(), out.edges.end());
  return out;
}

Configuration RemoveLine(const Configuration& c, Mask line) {
  auto it = std::find(c.lines.begin(), c.lines.end(), line);
  if (it == c.lines.end()) throw DomainError("line " + ToString(line) + " is absent");
  std::vector<Mask> rest;
  Mask elsewhere = 0;
  for (Mask l : c.lines) {
    if (l == line) continue;
    rest.push_back(l);
    elsewhere |= l;
  }
  Mask points = c.points & ~(line & ~elsewhere);
  return Configuration::Make(c.n, points, std::move(rest), c.loops & points);
}

Matroid SetLoops(const Configuration& c, Mask loops) {
  if ((loops & ~c.points) != 0) throw DomainError("loop is not a point");
  Configuration looped = c;
  looped.loops |= loops;
  return MatroidOfConfiguration(looped);
}

Configuration WithLoops(const Configuration& c, Mask loops) {
  if ((loops & ~c.points) != 0) throw DomainError("loop is not a point");
  Configuration out = c;
  out.loops |= loops;
  out.lines.clear();
  for (Mask l : c.lines) {
    if (Popcount(l & ~out.loops) >= 3) out.lines.push_back(l);
  }
  return out;
}

std::vector<ClosureComponent> CombClosureComponents(const Configuration& c) {
  if (!IsForestLike(c).forest_like) throw DomainError("configuration is not forest-like");
  const Configuration base = WithLoops(c, 0);
  const Mask multi = base.MultiPoints() & ~base.loops;
  std::vector<Mask> subsets;
  ForEachSubmask(multi, [&](Mask j) { subsets.push_back(j); });
  std::sort(subsets.begin(), subsets.end(), CanonicalOrder());
  std::vector<ClosureComponent> out;
  for (Mask j : subsets) {
    bool kept = true;
    ForEachBit(j, [&](int p) {
      if (kept && WithLoops(base, j & ~Bit(p)).LineCount(p) < 3) kept = false;
    });
    if (kept) out.push_back({j, SetLoops(base, j)});
  }
  return out;
}

const char* TagName(IrreducibilityTag::Kind kind) {
  switch (kind) {
    case IrreducibilityTag::Kind::kForestLike:
      return "ForestLike";
    case IrreducibilityTag::Kind::kAtMostSixLines:
      return "AtMostSixLines";
    case IrreducibilityTag::Kind::kBuildUpChain:
      return "BuildUpChain";
    case IrreducibilityTag::Kind::kUnknown:
      return "Unknown";
  }
  return "?";
}

IrreducibilityTag IrreducibilityTagOf(const Configuration& c) {
  IrreducibilityTag tag;
  if (IsForestLike(c).forest_like) {
    tag.kind = IrreducibilityTag::Kind::kForestLike;
    return tag;
  }
  if (c.lines.size() <= 6) {
    tag.kind = IrreducibilityTag::Kind::kAtMostSixLines;
    return tag;
  }
  // Line counts only drop as lines go, so a removable line stays removable
  // and a greedy order finds a chain whenever one exists.
  Configuration cur = c;
  while (cur.lines.size() > 4) {
    bool removed = false;
    for (Mask l : cur.lines) {
      int busy = 0;
      ForEachBit(l, [&](int p) { busy += cur.LineCount(p) >= 3 ? 1 : 0; });
      if (busy <= 2) {
        tag.removal_order.push_back(l);
        cur = RemoveLine(cur, l);
        removed = true;
        break;
      }
    }
    if (!removed) {
      tag.removal_order.clear();
      tag.kind = IrreducibilityTag::Kind::kUnknown;
      return tag;
    }
  }
  tag.kind = IrreducibilityTag::Kind::kBuildUpChain;
  return tag;
}

}  // namespace hypermat
