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

#include "hypermat/oracle.h"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "hypermat/alpha.h"

namespace hypermat {
namespace {

// Words with a 1 at every position whose bit i is clear, for i < 6.
constexpr std::uint64_t kLowHalf[6] = {
    0x5555555555555555ULL, 0x3333333333333333ULL, 0x0F0F0F0F0F0F0F0FULL,
    0x00FF00FF00FF00FFULL, 0x0000FFFF0000FFFFULL, 0x00000000FFFFFFFFULL};

size_t WordCount(int n) { return n < 6 ? 1 : (size_t{1} << (n - 6)); }

// Bitset of the subsets of [n] with more than `rank` elements.
const std::vector<std::uint64_t>& LargeSets(int n, int rank) {
  static std::map<std::pair<int, int>, std::vector<std::uint64_t>> memo;
  auto key = std::make_pair(n, rank);
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;
  std::vector<std::uint64_t> words(WordCount(n), 0);
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
    if (__builtin_popcountll(s) > rank) words[s >> 6] |= std::uint64_t{1} << (s & 63);
  }
  return memo.emplace(key, std::move(words)).first->second;
}

// Online antichain of the minimal elements seen so far.
template <typename Payload>
class MinimalFilter {
 public:
  void Offer(DependentSets dep, const Payload& payload) {
    for (const auto& kept : kept_) {
      if (kept.first.IsSubsetOf(dep)) return;
    }
    kept_.erase(std::remove_if(kept_.begin(), kept_.end(),
                               [&](const auto& kept) {
                                 return dep.IsSubsetOf(kept.first);
                               }),
                kept_.end());
    kept_.emplace_back(std::move(dep), payload);
  }
  const std::vector<std::pair<DependentSets, Payload>>& kept() const {
    return kept_;
  }

 private:
  std::vector<std::pair<DependentSets, Payload>> kept_;
};

// Calls f(block_of) for every set partition of {0..count-1}, with block_of
// a restricted growth string.
template <typename F>
void ForEachPartition(int count, F&& f) {
  std::vector<int> block_of(count, 0);
  std::function<void(int, int)> rec = [&](int i, int blocks) {
    if (i == count) {
      f(block_of, blocks);
      return;
    }
    for (int b = 0; b <= blocks; ++b) {
      block_of[i] = b;
      rec(i + 1, std::max(blocks, b + 1));
    }
  };
  rec(0, 0);
}

Mask UnionOfClasses(const std::vector<Mask>& classes, std::uint32_t which) {
  Mask out = 0;
  for (size_t c = 0; c < classes.size(); ++c) {
    if ((which >> c) & 1) out |= classes[c];
  }
  return out;
}

// Fills rank and lines of s from lines given as class-index masks.
void SetLines(RankLe3Structure& s, const std::vector<std::uint32_t>& lines) {
  const int m = static_cast<int>(s.classes.size());
  s.lines.clear();
  if (m <= 2) {
    s.rank = m;
    return;
  }
  const std::uint32_t all = (std::uint32_t{1} << m) - 1;
  if (lines.size() == 1 && lines[0] == all) {
    s.rank = 2;
  } else {
    s.rank = 3;
  }
  for (std::uint32_t l : lines) s.lines.push_back(UnionOfClasses(s.classes, l));
  std::sort(s.lines.begin(), s.lines.end(), CanonicalOrder());
}

std::string TreeCode(const std::vector<std::vector<int>>& adj, int v,
                     int parent) {
  std::vector<std::string> kids;
  for (int w : adj[v]) {
    if (w != parent) kids.push_back(TreeCode(adj, w, v));
  }
  std::sort(kids.begin(), kids.end());
  std::string out = "(";
  for (const std::string& k : kids) out += k;
  return out + ")";
}

std::string ForestCode(int n, const std::vector<std::pair<int, int>>& edges) {
  std::vector<std::vector<int>> adj(n);
  for (auto [u, v] : edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  std::vector<int> comp(n, -1);
  std::vector<std::string> codes;
  for (int s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    std::vector<int> members = {s};
    comp[s] = s;
    for (size_t i = 0; i < members.size(); ++i) {
      for (int w : adj[members[i]]) {
        if (comp[w] < 0) {
          comp[w] = s;
          members.push_back(w);
        }
      }
    }
    // Centers by repeated leaf removal.
    std::vector<int> degree(n, 0);
    for (int v : members) degree[v] = static_cast<int>(adj[v].size());
    std::vector<int> layer;
    for (int v : members) {
      if (degree[v] <= 1) layer.push_back(v);
    }
    int remaining = static_cast<int>(members.size());
    while (remaining > 2) {
      remaining -= static_cast<int>(layer.size());
      std::vector<int> next;
      for (int v : layer) {
        for (int w : adj[v]) {
          if (--degree[w] == 1) next.push_back(w);
        }
      }
      layer = std::move(next);
    }
    std::string best;
    for (int c : layer) {
      std::string code = TreeCode(adj, c, -1);
      if (best.empty() || code < best) best = code;
    }
    codes.push_back(best);
  }
  std::sort(codes.begin(), codes.end());
  std::string out;
  for (const std::string& c : codes) out += c;
  return out;
}

// Completes s (loops and classes set) with the least line family making
// every edge of delta dependent; false when no family works within rank d.
bool LeastStructure(const Clutter& delta, RankLe3Structure& s) {
  std::vector<int> class_of(s.n, -1);
  for (size_t c = 0; c < s.classes.size(); ++c) {
    ForEachBit(s.classes[c], [&](int e) { class_of[e] = static_cast<int>(c); });
  }
  std::vector<std::uint32_t> lines;
  for (Mask e : delta.edges) {
    if (e & s.loops) continue;
    std::uint32_t hit = 0;
    bool repeated = false;
    ForEachBit(e, [&](int x) {
      const std::uint32_t b = std::uint32_t{1} << class_of[x];
      if (hit & b) repeated = true;
      hit |= b;
    });
    if (!repeated && __builtin_popcount(hit) == 3) lines.push_back(hit);
  }
  for (bool merged = true; merged;) {
    merged = false;
    for (size_t a = 0; a < lines.size() && !merged; ++a) {
      for (size_t b = a + 1; b < lines.size() && !merged; ++b) {
        if (__builtin_popcount(lines[a] & lines[b]) >= 2) {
          lines[a] |= lines[b];
          lines.erase(lines.begin() + static_cast<long>(b));
          merged = true;
        }
      }
    }
  }
  const int m = static_cast<int>(s.classes.size());
  const std::uint32_t all = (std::uint32_t{1} << m) - 1;
  bool full = m >= 3 && delta.d <= 2;
  for (std::uint32_t line : lines) full = full || line == all;
  if (full) lines = {all};
  SetLines(s, lines);
  if (s.rank > delta.d) return false;
  for (Mask e : delta.edges) {
    if (!s.IsDependent(e)) return false;
  }
  return true;
}

constexpr char kCacheMagic[8] = {'H', 'M', 'C', 'A', 'T', 'L', 'O', 'G'};
constexpr std::uint32_t kCacheVersion = 1;

template <typename T>
void Put(std::ostream& out, T value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T Get(std::istream& in) {
  T value{};
  in.read(reinterpret_cast<char*>(&value), sizeof(T));
  if (!in) throw DomainError("truncated catalog cache");
  return value;
}

}  // namespace

DependentSets DependentSets::FromCircuits(int n,
                                          const std::vector<Mask>& circuits,
                                          int rank) {
  if (n < 0 || n > kDependentSetsCap) {
    throw DomainError("dependent-set tables need n <= " +
                      std::to_string(kDependentSetsCap));
  }
  DependentSets out;
  out.n_ = n;
  out.words_.assign(WordCount(n), 0);
  std::vector<std::uint64_t>& w = out.words_;
  for (Mask c : circuits) {
    const auto i = static_cast<std::uint64_t>(c);
    w[i >> 6] |= std::uint64_t{1} << (i & 63);
  }
  for (int i = 0; i < n; ++i) {
    if (i < 6) {
      const int shift = 1 << i;
      for (std::uint64_t& x : w) x |= (x & kLowHalf[i]) << shift;
    } else {
      const size_t step = size_t{1} << (i - 6);
      for (size_t j = 0; j < w.size(); ++j) {
        if (!(j & step)) w[j | step] |= w[j];
      }
    }
  }
  const std::vector<std::uint64_t>& large = LargeSets(n, rank);
  for (size_t j = 0; j < w.size(); ++j) w[j] |= large[j];
  return out;
}

DependentSets DependentSets::Of(const Matroid& m) {
  return FromCircuits(m.n(), m.small_circuits(), m.rank());
}

bool DependentSets::IsSubsetOf(const DependentSets& o) const {
  for (size_t j = 0; j < words_.size(); ++j) {
    if (words_[j] & ~o.words_[j]) return false;
  }
  return true;
}

std::size_t DependentSets::Count() const {
  std::size_t c = 0;
  for (std::uint64_t x : words_) c += __builtin_popcountll(x);
  return c;
}

bool RankLe3Structure::IsDependent(Mask x) const {
  if (x & loops) return true;
  int hit = 0;
  for (Mask c : classes) {
    const int k = Popcount(x & c);
    if (k >= 2) return true;
    hit += k;
  }
  if (hit > rank) return true;
  if (hit == 3 && rank == 3) {
    for (Mask l : lines) {
      if (IsSubset(x, l)) return true;
    }
  }
  return false;
}

std::vector<Mask> RankLe3Structure::SmallCircuits() const {
  std::vector<Mask> out;
  if (rank >= 1) ForEachBit(loops, [&](int e) { out.push_back(Bit(e)); });
  if (rank >= 2) {
    for (Mask c : classes) {
      ForEachSubsetOfSize(c, 2, [&](Mask p) { out.push_back(p); });
    }
  }
  if (rank >= 3) {
    for (Mask l : lines) {
      std::vector<Mask> on;
      for (Mask c : classes) {
        if (IsSubset(c, l)) on.push_back(c);
      }
      for (size_t a = 0; a < on.size(); ++a) {
        for (size_t b = a + 1; b < on.size(); ++b) {
          for (size_t c = b + 1; c < on.size(); ++c) {
            ForEachBit(on[a], [&](int x) {
              ForEachBit(on[b], [&](int y) {
                ForEachBit(on[c], [&](int z) {
                  out.push_back(Bit(x) | Bit(y) | Bit(z));
                });
              });
            });
          }
        }
      }
    }
  }
  return out;
}

Matroid RankLe3Structure::ToMatroid() const {
  return Matroid::FromCircuitsWithTop(n, SmallCircuits(), rank);
}

DependentSets RankLe3Structure::Dependents() const {
  return DependentSets::FromCircuits(n, SmallCircuits(), rank);
}

void ForEachRankLe3(int n,
                    const std::function<void(const RankLe3Structure&)>& visit) {
  if (n < 0 || n > kCatalogCap) {
    throw DomainError("catalog cap exceeded: n <= " +
                      std::to_string(kCatalogCap));
  }
  // Candidate lines on m classes: class-index sets of size >= 3.
  std::vector<std::vector<std::uint32_t>> candidates(n + 1);
  for (int m = 3; m <= n; ++m) {
    for (std::uint32_t s = 0; s < (std::uint32_t{1} << m); ++s) {
      if (__builtin_popcount(s) >= 3) candidates[m].push_back(s);
    }
  }
  RankLe3Structure s;
  s.n = n;
  const Mask full = FullMask(n);
  for (std::uint64_t l = 0; l < (std::uint64_t{1} << n); ++l) {
    s.loops = static_cast<Mask>(l);
    const std::vector<int> rest = Elements(full & ~s.loops);
    ForEachPartition(static_cast<int>(rest.size()),
                     [&](const std::vector<int>& block_of, int blocks) {
      s.classes.assign(blocks, 0);
      for (size_t i = 0; i < rest.size(); ++i) {
        s.classes[block_of[i]] |= Bit(rest[i]);
      }
      std::vector<std::uint32_t> chosen;
      if (blocks <= 2) {
        SetLines(s, chosen);
        visit(s);
        return;
      }
      const std::vector<std::uint32_t>& cand = candidates[blocks];
      std::function<void(size_t)> rec = [&](size_t start) {
        SetLines(s, chosen);
        visit(s);
        for (size_t i = start; i < cand.size(); ++i) {
          bool ok = true;
          for (std::uint32_t c : chosen) {
            if (__builtin_popcount(c & cand[i]) > 1) {
              ok = false;
              break;
            }
          }
          if (!ok) continue;
          chosen.push_back(cand[i]);
          rec(i + 1);
          chosen.pop_back();
        }
      };
      rec(0);
    });
  }
}

MatroidCatalog EnumerateRankLe3(int n) {
  MatroidCatalog out;
  out.n = n;
  ForEachRankLe3(n, [&](const RankLe3Structure& s) {
    out.matroids.push_back(s.ToMatroid());
  });
  std::sort(out.matroids.begin(), out.matroids.end());
  if (std::adjacent_find(out.matroids.begin(), out.matroids.end()) !=
      out.matroids.end()) {
    throw VerificationFailed("catalog produced a duplicate matroid");
  }
  return out;
}

MatroidCatalog EnumerateByAntichains(int n, int max_rank) {
  if (n < 0 || n > kAntichainCap) {
    throw DomainError("antichain enumeration needs n <= " +
                      std::to_string(kAntichainCap));
  }
  std::vector<Mask> subsets;
  for (std::uint64_t s = 1; s < (std::uint64_t{1} << n); ++s) {
    subsets.push_back(static_cast<Mask>(s));
  }
  std::sort(subsets.begin(), subsets.end(), CanonicalOrder());
  MatroidCatalog out;
  out.n = n;
  std::vector<Mask> chosen;
  std::function<void(size_t)> rec = [&](size_t i) {
    if (i == subsets.size()) {
      if (!ValidateCircuits(chosen, n)) return;
      Matroid m = Matroid::FromCircuits(n, chosen);
      if (m.rank() <= max_rank) out.matroids.push_back(std::move(m));
      return;
    }
    rec(i + 1);
    for (Mask c : chosen) {
      if (IsSubset(c, subsets[i]) || IsSubset(subsets[i], c)) return;
    }
    chosen.push_back(subsets[i]);
    rec(i + 1);
    chosen.pop_back();
  };
  rec(0);
  std::sort(out.matroids.begin(), out.matroids.end());
  return out;
}

Matroid CanonicalRepresentative(const Matroid& m) {
  const int n = m.n();
  if (n > 8) throw DomainError("canonical form needs n <= 8");
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<int> best_perm = perm;
  std::vector<Mask> best;
  bool first = true;
  do {
    std::vector<Mask> image;
    image.reserve(m.small_circuits().size());
    for (Mask c : m.small_circuits()) {
      Mask x = 0;
      ForEachBit(c, [&](int e) { x |= Bit(perm[e]); });
      image.push_back(x);
    }
    std::sort(image.begin(), image.end(), CanonicalOrder());
    if (first || std::lexicographical_compare(image.begin(), image.end(),
                                              best.begin(), best.end(),
                                              CanonicalLess)) {
      best = std::move(image);
      best_perm = perm;
      first = false;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return Permute(m, best_perm);
}

std::vector<Matroid> IsomorphismClasses(const std::vector<Matroid>& ms) {
  std::vector<Matroid> reps;
  for (const Matroid& m : ms) {
    bool seen = false;
    for (const Matroid& r : reps) {
      if (IsIsomorphic(r, m)) {
        seen = true;
        break;
      }
    }
    if (!seen) reps.push_back(m);
  }
  for (Matroid& r : reps) {
    if (r.n() <= 8) r = CanonicalRepresentative(r);
  }
  std::sort(reps.begin(), reps.end());
  return reps;
}

std::vector<std::vector<Matroid>> BruteMinimalDependent(
    const std::vector<Clutter>& deltas) {
  std::vector<std::vector<Matroid>> out(deltas.size());
  if (deltas.empty()) return out;
  const int n = deltas[0].n;
  int max_d = 0;
  for (const Clutter& c : deltas) {
    if (c.n != n) throw DomainError("clutters must share the ground set");
    max_d = std::max(max_d, c.d);
  }
  if (max_d <= 3 && n == kCatalogCap) {
    for (size_t i = 0; i < deltas.size(); ++i) {
      out[i] = ClassMinimalDependent(deltas[i]);
    }
    return out;
  }
  if (max_d <= 3 && n < kCatalogCap) {
    std::vector<MinimalFilter<RankLe3Structure>> filters(deltas.size());
    ForEachRankLe3(n, [&](const RankLe3Structure& s) {
      for (size_t i = 0; i < deltas.size(); ++i) {
        if (s.rank > deltas[i].d) continue;
        bool ok = true;
        for (Mask e : deltas[i].edges) {
          if (!s.IsDependent(e)) {
            ok = false;
            break;
          }
        }
        if (ok) filters[i].Offer(s.Dependents(), s);
      }
    });
    for (size_t i = 0; i < deltas.size(); ++i) {
      for (const auto& kept : filters[i].kept()) {
        out[i].push_back(kept.second.ToMatroid());
      }
      std::sort(out[i].begin(), out[i].end());
    }
    return out;
  }
  if (n > kAntichainCap) {
    throw DomainError("oracle cap exceeded: n = " + std::to_string(n) +
                      ", d = " + std::to_string(max_d));
  }
  MatroidCatalog all = EnumerateByAntichains(n, max_d);
  for (size_t i = 0; i < deltas.size(); ++i) {
    MinimalFilter<Matroid> filter;
    for (const Matroid& m : all.matroids) {
      if (m.rank() > deltas[i].d || !ContainsHypergraph(m, deltas[i])) continue;
      filter.Offer(DependentSets::Of(m), m);
    }
    for (const auto& kept : filter.kept()) out[i].push_back(kept.second);
    std::sort(out[i].begin(), out[i].end());
  }
  return out;
}

std::vector<Matroid> ClassMinimalDependent(const Clutter& delta) {
  const int n = delta.n;
  if (n < 0 || n > kCatalogCap || delta.d > 3) {
    throw DomainError("oracle cap exceeded: n = " + std::to_string(n) +
                      ", d = " + std::to_string(delta.d));
  }
  MinimalFilter<RankLe3Structure> filter;
  RankLe3Structure s;
  s.n = n;
  const Mask full = FullMask(n);
  for (std::uint64_t l = 0; l < (std::uint64_t{1} << n); ++l) {
    s.loops = static_cast<Mask>(l);
    const std::vector<int> rest = Elements(full & ~s.loops);
    ForEachPartition(static_cast<int>(rest.size()),
                     [&](const std::vector<int>& block_of, int blocks) {
      s.classes.assign(blocks, 0);
      for (size_t i = 0; i < rest.size(); ++i) {
        s.classes[block_of[i]] |= Bit(rest[i]);
      }
      if (LeastStructure(delta, s)) filter.Offer(s.Dependents(), s);
    });
  }
  std::vector<Matroid> out;
  for (const auto& kept : filter.kept()) out.push_back(kept.second.ToMatroid());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Matroid> BruteMinimalDependent(const Clutter& delta) {
  return BruteMinimalDependent(std::vector<Clutter>{delta})[0];
}

std::vector<Matroid> GridMinimalMatroids(int k, int l) {
  GridShape shape{k, l, 2, 3};
  shape.Validate();
  const int n = k * l;
  if (n > kDependentSetsCap) {
    throw DomainError("grid too large for exhaustive counting: kl <= " +
                      std::to_string(kDependentSetsCap));
  }
  const GridCoordinates g = MakeGridCoordinates(k, l);
  MinimalFilter<RankLe3Structure> filter;
  RankLe3Structure s;
  s.n = n;
  for (std::uint64_t lm = 0; lm < (std::uint64_t{1} << n); ++lm) {
    s.loops = static_cast<Mask>(lm);
    std::vector<Mask> blocks;
    for (Mask col : g.cols) {
      if (col & ~s.loops) blocks.push_back(col & ~s.loops);
    }
    ForEachPartition(static_cast<int>(blocks.size()),
                     [&](const std::vector<int>& block_of, int count) {
      s.classes.assign(count, 0);
      for (size_t b = 0; b < blocks.size(); ++b) {
        s.classes[block_of[b]] |= blocks[b];
      }
      // Rows hitting three classes are forced onto lines; lines sharing two
      // classes merge.
      std::vector<std::uint32_t> lines;
      for (Mask row : g.rows) {
        std::uint32_t hit = 0;
        for (int c = 0; c < count; ++c) {
          if (row & s.classes[c]) hit |= std::uint32_t{1} << c;
        }
        if (__builtin_popcount(hit) >= 3) lines.push_back(hit);
      }
      for (bool merged = true; merged;) {
        merged = false;
        for (size_t a = 0; a < lines.size() && !merged; ++a) {
          for (size_t b = a + 1; b < lines.size() && !merged; ++b) {
            if (__builtin_popcount(lines[a] & lines[b]) >= 2) {
              lines[a] |= lines[b];
              lines.erase(lines.begin() + static_cast<long>(b));
              merged = true;
            }
          }
        }
      }
      const std::uint32_t all = (std::uint32_t{1} << count) - 1;
      for (std::uint32_t line : lines) {
        if (line == all) {
          lines = {all};
          break;
        }
      }
      SetLines(s, lines);
      filter.Offer(s.Dependents(), s);
    });
  }
  std::vector<Matroid> out;
  for (const auto& kept : filter.kept()) out.push_back(kept.second.ToMatroid());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Mask> LineIncidenceKey(const Matroid& simple) {
  std::vector<Mask> lines;
  if (simple.rank() >= 2) {
    for (const Flat& f : FlatsOfRank(simple, 2)) {
      if (Popcount(f.members) >= 3) lines.push_back(f.members);
    }
  }
  Mask shared = 0;
  for (size_t a = 0; a < lines.size(); ++a) {
    for (size_t b = a + 1; b < lines.size(); ++b) shared |= lines[a] & lines[b];
  }
  const std::vector<int> points = Elements(shared);
  if (points.size() > 8) throw DomainError("too many intersection points");
  std::vector<int> perm(points.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<Mask> best;
  bool first = true;
  do {
    std::vector<Mask> key;
    for (Mask l : lines) {
      Mask x = 0;
      for (size_t i = 0; i < points.size(); ++i) {
        if (Contains(l, points[i])) x |= Bit(perm[i]);
      }
      key.push_back(x);
    }
    std::sort(key.begin(), key.end(), CanonicalOrder());
    if (first || std::lexicographical_compare(key.begin(), key.end(),
                                              best.begin(), best.end(),
                                              CanonicalLess)) {
      best = std::move(key);
      first = false;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

GridTypeCount CountGridTypes(const GridShape& shape) {
  if (shape.s != 2 || shape.t != 3) {
    throw DomainError("grid type counting supports s = 2, t = 3 only");
  }
  GridTypeCount out;
  const std::vector<Matroid> mins = GridMinimalMatroids(shape.k, shape.l);
  out.minimal_matroids = static_cast<int>(mins.size());
  std::vector<Matroid> simple;
  for (const Matroid& m : mins) simple.push_back(Simplify(m).simple);
  out.simplifications = IsomorphismClasses(simple);
  out.types = static_cast<int>(out.simplifications.size());
  out.unsimplified_types = static_cast<int>(IsomorphismClasses(mins).size());
  std::set<std::vector<Mask>> keys;
  for (const Matroid& m : simple) keys.insert(LineIncidenceKey(m));
  out.line_keys.assign(keys.begin(), keys.end());
  out.line_types = static_cast<int>(out.line_keys.size());
  out.interpretation =
      "line_types: line-incidence structures (lines and points on two or "
      "more lines) of the simplified minimally dependent matroids of rank "
      "<= 3; types: isomorphism classes of those simplifications "
      "(exhaustive over loops and merges of column classes)";
  return out;
}

std::vector<Forest> ForestsUpToIsomorphism(int n) {
  if (n < 1 || n > 9) throw DomainError("forest enumeration needs 1 <= n <= 9");
  std::map<std::string, std::vector<std::pair<int, int>>> seen;
  std::vector<int> parent(n, -1);
  std::function<void(int)> rec = [&](int v) {
    if (v == n) {
      std::vector<std::pair<int, int>> edges;
      for (int w = 1; w < n; ++w) {
        if (parent[w] >= 0) edges.emplace_back(parent[w], w);
      }
      seen.emplace(ForestCode(n, edges), edges);
      return;
    }
    for (int p = -1; p < v; ++p) {
      parent[v] = p;
      rec(v + 1);
    }
  };
  rec(1);
  std::vector<Forest> out;
  for (const auto& [code, edges] : seen) {
    std::vector<std::pair<int, int>> labels;
    for (auto [u, v] : edges) labels.emplace_back(u + 1, v + 1);
    out.emplace_back(n, labels);
  }
  return out;
}

void WriteCatalogCache(const std::string& path, const MatroidCatalog& catalog) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DomainError("cannot write " + path);
  out.write(kCacheMagic, sizeof(kCacheMagic));
  Put<std::uint32_t>(out, kCacheVersion);
  Put<std::uint32_t>(out, sizeof(Mask));
  Put<std::uint32_t>(out, static_cast<std::uint32_t>(catalog.n));
  Put<std::uint64_t>(out, catalog.matroids.size());
  for (const Matroid& m : catalog.matroids) {
    Put<std::uint8_t>(out, static_cast<std::uint8_t>(m.rank()));
    Put<std::uint32_t>(out, static_cast<std::uint32_t>(m.small_circuits().size()));
    for (Mask c : m.small_circuits()) Put<Mask>(out, c);
  }
  if (!out) throw DomainError("write failed for " + path);
}

MatroidCatalog ReadCatalogCache(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot read " + path);
  char magic[sizeof(kCacheMagic)];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kCacheMagic, sizeof(magic)) != 0) {
    throw DomainError("not a catalog cache: " + path);
  }
  if (Get<std::uint32_t>(in) != kCacheVersion) {
    throw DomainError("unsupported catalog cache version");
  }
  if (Get<std::uint32_t>(in) != sizeof(Mask)) {
    throw DomainError("catalog cache written with another mask width");
  }
  MatroidCatalog out;
  out.n = static_cast<int>(Get<std::uint32_t>(in));
  if (out.n > kMaxGround) throw DomainError("catalog ground set too large");
  const auto count = Get<std::uint64_t>(in);
  for (std::uint64_t i = 0; i < count; ++i) {
    const int rank = Get<std::uint8_t>(in);
    const auto size = Get<std::uint32_t>(in);
    std::vector<Mask> circuits(size);
    for (Mask& c : circuits) c = Get<Mask>(in);
    Matroid m = Matroid::FromCircuitsWithTop(out.n, circuits, rank);
    if (m.rank() != rank) throw DomainError("inconsistent catalog entry");
    out.matroids.push_back(std::move(m));
  }
  return out;
}

}  // namespace hypermat
