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

#include "hypermat/alpha.h"

#include <algorithm>
#include <deque>
#include <unordered_set>

#include "hypermat/kernels.h"

namespace hypermat {

namespace {

struct FamilyKeyHash {
  std::size_t operator()(const std::vector<Mask>& f) const {
    return static_cast<std::size_t>(FamilyHash(f));
  }
};

// Lookup structure over the listed members of a clutter.
class MemberIndex {
 public:
  explicit MemberIndex(const Clutter& c) : c_(c), set_(c.edges.begin(), c.edges.end()) {
    for (Mask e : c.edges) max_size_ = std::max(max_size_, Popcount(e));
    incidence_.assign(c.n, {});
    for (std::size_t i = 0; i < c.edges.size(); ++i) {
      ForEachBit(c.edges[i], [&](int v) { incidence_[v].push_back(i); });
    }
  }

  bool Listed(Mask a) const { return set_.count(a) != 0; }

  // AND of listed members inside b, ~0 when there are none.
  Mask ListedAnd(Mask b) const {
    int size = Popcount(b);
    if (size <= 20 && (std::size_t{1} << size) < c_.edges.size()) {
      Mask acc = ~Mask{0};
      ForEachSubmask(b, [&](Mask sub) {
        if (sub != 0 && Popcount(sub) <= max_size_ && set_.count(sub)) acc &= sub;
      });
      return acc;
    }
    std::size_t hits = 0;
    Mask acc = kernels::AndOfSubsetsOf(c_.edges.data(), c_.edges.size(), b, &hits);
    return hits == 0 ? ~Mask{0} : acc;
  }

  Mask Intersection(Mask b) const {
    const int size = Popcount(b);
    if (c_.implicit_top && size >= c_.d + 2) return 0;
    Mask acc = ListedAnd(b);
    if (c_.implicit_top && size == c_.d + 1 && acc == ~Mask{0}) return b;
    return acc == ~Mask{0} ? FullMask(c_.n) : acc;
  }

  // Calls f(i, j) once for each pair of listed members that intersect.
  template <typename F>
  void ForEachMeetingPair(F&& f) const {
    for (int v = 0; v < c_.n; ++v) {
      const auto& list = incidence_[v];
      for (std::size_t x = 0; x < list.size(); ++x) {
        for (std::size_t y = x + 1; y < list.size(); ++y) {
          Mask meet = c_.edges[list[x]] & c_.edges[list[y]];
          if (LowestBit(meet) == v) f(list[x], list[y]);
        }
      }
    }
  }

 private:
  const Clutter& c_;
  std::unordered_set<Mask, MaskHash> set_;
  std::vector<std::vector<std::size_t>> incidence_;
  int max_size_ = 0;
};

Clutter WithEdges(const Clutter& c, std::vector<Mask> edges) {
  Clutter out;
  out.n = c.n;
  out.d = c.d;
  out.implicit_top = c.implicit_top;
  out.edges = std::move(edges);
  return out;
}

Clutter MergeCandidates(const Clutter& c,
                        const std::unordered_set<Mask, MaskHash>& extra) {
  if (extra.empty()) return c;
  std::vector<Mask> family = c.edges;
  family.insert(family.end(), extra.begin(), extra.end());
  return WithEdges(c, MinimalMembers(std::move(family)));
}

}  // namespace

Mask ILambda(const Clutter& c, Mask b) { return MemberIndex(c).Intersection(b); }

bool IsMember(const Clutter& c, Mask a) {
  if (std::binary_search(c.edges.begin(), c.edges.end(), a, CanonicalOrder())) {
    return true;
  }
  return c.implicit_top && Popcount(a) == c.d + 1 && (a & ~FullMask(c.n)) == 0 &&
         !kernels::AnySubsetOf(c.edges, a);
}

Clutter Alpha1(const Clutter& c, Mask a1, Mask a2) {
  if (a1 == a2) throw DomainError("alpha1 needs two distinct members");
  if (!IsMember(c, a1) || !IsMember(c, a2)) {
    throw DomainError("alpha1 arguments must be members of the clutter");
  }
  if (ILambda(c, a1 | a2) == 0) return c;
  const Mask x = a1 & a2;
  std::vector<Mask> edges;
  edges.reserve(c.edges.size() + 1);
  for (Mask e : c.edges) {
    if (!IsSubset(x, e)) edges.push_back(e);
  }
  edges.push_back(x);
  std::sort(edges.begin(), edges.end(), CanonicalOrder());
  return WithEdges(c, std::move(edges));
}

Clutter Alpha2(const Clutter& c) {
  MemberIndex index(c);
  std::unordered_set<Mask, MaskHash> extra;
  index.ForEachMeetingPair([&](std::size_t i, std::size_t j) {
    Mask u = c.edges[i] | c.edges[j];
    if (c.implicit_top && Popcount(u) > c.d + 1) return;
    ForEachBit(c.edges[i] & c.edges[j], [&](int x) {
      Mask cand = u & ~Bit(x);
      if (!index.Listed(cand)) extra.insert(cand);
    });
  });
  return MergeCandidates(c, extra);
}

Clutter Alpha3(const Clutter& c) {
  MemberIndex index(c);
  std::unordered_set<Mask, MaskHash> extra;
  index.ForEachMeetingPair([&](std::size_t i, std::size_t j) {
    Mask u = c.edges[i] | c.edges[j];
    Mask cand = u & ~index.Intersection(u);
    if (c.implicit_top && Popcount(cand) > c.d) return;
    if (!index.Listed(cand)) extra.insert(cand);
  });
  return MergeCandidates(c, extra);
}

bool IsMatroidClutter(const Clutter& c) {
  MemberIndex index(c);
  bool ok = true;
  index.ForEachMeetingPair([&](std::size_t i, std::size_t j) {
    if (ok && index.Intersection(c.edges[i] | c.edges[j]) != 0) ok = false;
  });
  return ok;
}

Matroid MatroidOfClutter(const Clutter& c) {
  if (!IsMatroidClutter(c)) throw DomainError("clutter is not a circuit family");
  if (c.implicit_top) return Matroid::FromCircuitsWithTop(c.n, c.edges, c.d);
  return Matroid::FromCircuits(c.n, c.edges);
}

Clutter ClutterOfMatroid(const Matroid& m) {
  Clutter out;
  out.n = m.n();
  out.implicit_top = true;
  if (m.rank() == 0) {
    out.d = 1;
    out.edges = m.Circuits();
  } else {
    out.d = m.rank();
    out.edges = m.small_circuits();
  }
  return out;
}

const char* KindName(TransformStep::Kind kind) {
  switch (kind) {
    case TransformStep::Kind::kAlpha1:
      return "a1";
    case TransformStep::Kind::kAlpha2:
      return "a2";
    case TransformStep::Kind::kAlpha3:
      return "a3";
  }
  return "?";
}

std::uint64_t ClutterHash(const Clutter& c) {
  std::uint64_t h = FamilyHash(c.edges);
  h ^= static_cast<std::uint64_t>(c.n) * 0x100000001b3ULL;
  if (c.implicit_top) h ^= static_cast<std::uint64_t>(c.d + 1) << 56;
  return h;
}

Clutter ReplayTrace(const Clutter& c, const std::vector<TransformStep>& trace) {
  Clutter cur = c;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    const TransformStep& step = trace[i];
    if (ClutterHash(cur) != step.input_hash) {
      throw VerificationFailed("trace step " + std::to_string(i) +
                               ": input hash mismatch");
    }
    switch (step.kind) {
      case TransformStep::Kind::kAlpha1:
        cur = Alpha1(cur, step.a1, step.a2);
        break;
      case TransformStep::Kind::kAlpha2:
        cur = Alpha2(cur);
        break;
      case TransformStep::Kind::kAlpha3:
        cur = Alpha3(cur);
        break;
    }
    if (ClutterHash(cur) != step.output_hash) {
      throw VerificationFailed("trace step " + std::to_string(i) +
                               ": output hash mismatch");
    }
  }
  return cur;
}

std::vector<Matroid> MinimalMatroids(std::vector<Matroid> ms) {
  std::sort(ms.begin(), ms.end());
  ms.erase(std::unique(ms.begin(), ms.end()), ms.end());
  std::vector<Matroid> out;
  for (std::size_t i = 0; i < ms.size(); ++i) {
    bool minimal = true;
    for (std::size_t j = 0; j < ms.size() && minimal; ++j) {
      if (i != j && DependencyLeq(ms[j], ms[i])) minimal = false;
    }
    if (minimal) out.push_back(ms[i]);
  }
  return out;
}

SearchResult SearchMinDependent(const Clutter& c, const SearchLimits& limits) {
  if (c.edges.empty() && !c.implicit_top) {
    throw DomainError("search needs a nonempty clutter");
  }
  SearchResult result;
  std::unordered_set<std::vector<Mask>, FamilyKeyHash> seen;
  std::deque<std::pair<Clutter, int>> queue;
  std::vector<Matroid> found;
  seen.insert(c.edges);
  queue.emplace_back(c, 0);
  auto push = [&](Clutter next, int depth) {
    if (depth > limits.max_depth) return;
    if (seen.insert(next.edges).second) queue.emplace_back(std::move(next), depth);
  };
  while (!queue.empty()) {
    if (result.nodes >= limits.max_nodes) {
      result.complete = false;
      break;
    }
    auto [node, depth] = std::move(queue.front());
    queue.pop_front();
    ++result.nodes;
    if (IsMatroidClutter(node)) {
      ++result.terminals;
      found.push_back(MatroidOfClutter(node));
      continue;
    }
    MemberIndex index(node);
    std::vector<std::pair<Mask, Mask>> moves;
    index.ForEachMeetingPair([&](std::size_t i, std::size_t j) {
      if (index.Intersection(node.edges[i] | node.edges[j]) != 0) {
        moves.emplace_back(node.edges[i], node.edges[j]);
      }
    });
    for (auto [a1, a2] : moves) push(Alpha1(node, a1, a2), depth + 1);
    Clutter two = Alpha2(node);
    if (!(two == node)) push(std::move(two), depth + 1);
    Clutter three = Alpha3(node);
    if (!(three == node)) push(std::move(three), depth + 1);
  }
  if (!result.complete && limits.throw_on_budget) {
    throw BudgetExhausted("search explored " + std::to_string(result.nodes) +
                          " clutters without finishing");
  }
  if (limits.keep_non_minimal) {
    std::sort(found.begin(), found.end());
    found.erase(std::unique(found.begin(), found.end()), found.end());
    result.matroids = std::move(found);
  } else {
    result.matroids = MinimalMatroids(std::move(found));
  }
  return result;
}

}  // namespace hypermat
