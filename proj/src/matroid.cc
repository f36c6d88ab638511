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

#include "hypermat/matroid.h"

#include <algorithm>
#include <numeric>
#include <string>
#include <unordered_set>

#include "hypermat/kernels.h"

namespace hypermat {
namespace {

void SortUnique(std::vector<Mask>& v) {
  std::sort(v.begin(), v.end(), CanonicalOrder());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

// Antichain and elimination check for `family` where, additionally, every
// set of size > top counts as dependent. `family` must be sorted.
bool CheckFamily(int n, const std::vector<Mask>& family, int top,
                 std::string* why) {
  const Mask ground = FullMask(n);
  for (std::size_t i = 0; i < family.size(); ++i) {
    Mask c = family[i];
    if (c == 0 || (c & ~ground) != 0) {
      if (why) *why = "member " + ToString(c) + " is empty or outside [n]";
      return false;
    }
    if (Popcount(c) > top + 1) {
      if (why) *why = "member " + ToString(c) + " exceeds size top+1";
      return false;
    }
    if (kernels::AnySubsetOf(family.data(), i, c)) {
      if (why) *why = "member " + ToString(c) + " contains another member";
      return false;
    }
  }
  std::vector<std::vector<std::size_t>> incident(n);
  for (std::size_t i = 0; i < family.size(); ++i) {
    ForEachBit(family[i], [&](int x) { incident[x].push_back(i); });
  }
  for (int x = 0; x < n; ++x) {
    const auto& list = incident[x];
    for (std::size_t a = 0; a < list.size(); ++a) {
      for (std::size_t b = a + 1; b < list.size(); ++b) {
        Mask u = (family[list[a]] | family[list[b]]) & ~Bit(x);
        if (Popcount(u) > top) continue;
        if (!kernels::AnySubsetOf(family, u)) {
          if (why) {
            *why = "elimination fails for " + ToString(family[list[a]]) +
                   ", " + ToString(family[list[b]]) + " at " +
                   std::to_string(x + 1);
          }
          return false;
        }
      }
    }
  }
  return true;
}

}  // namespace

bool ValidateCircuits(const std::vector<Mask>& family, int n) {
  std::vector<Mask> sorted = family;
  SortUnique(sorted);
  return CheckFamily(n, sorted, n, nullptr);
}

Matroid Matroid::FromCircuits(int n, std::vector<Mask> circuits) {
  return FromCircuitsWithTop(n, std::move(circuits), n);
}

Matroid Matroid::FromCircuitsWithTop(int n, std::vector<Mask> circuits,
                                     int top) {
  if (n < 0 || n > kMaxGround) {
    throw DomainError("ground set size " + std::to_string(n) +
                      " outside supported range");
  }
  if (top < 0) throw DomainError("negative top rank");
  top = std::min(top, n);
  SortUnique(circuits);
  std::string why;
  if (!CheckFamily(n, circuits, top, &why)) {
    throw DomainError("not a circuit family: " + why);
  }
  Mask basis = 0;
  int r = 0;
  for (int i = 0; i < n; ++i) {
    Mask t = basis | Bit(i);
    if (r + 1 <= top && !kernels::AnySubsetOf(circuits, t)) {
      basis = t;
      ++r;
    }
  }
  std::vector<Mask> small;
  small.reserve(circuits.size());
  for (Mask c : circuits) {
    if (Popcount(c) <= r) small.push_back(c);
  }
  return Matroid(n, r, std::move(small));
}

Matroid Matroid::Uniform(int rank, int n) {
  if (rank < 0 || rank > n) throw DomainError("uniform rank out of range");
  return FromCircuitsWithTop(n, {}, rank);
}

std::vector<Mask> Matroid::CircuitsOfSize(int k) const {
  std::vector<Mask> out;
  if (k <= rank_) {
    for (Mask c : small_) {
      if (Popcount(c) == k) out.push_back(c);
    }
  } else if (k == rank_ + 1) {
    ForEachSubsetOfSize(ground(), k, [&](Mask s) {
      if (!kernels::AnySubsetOf(small_, s)) out.push_back(s);
    });
    std::sort(out.begin(), out.end(), CanonicalOrder());
  }
  return out;
}

std::vector<Mask> Matroid::Circuits() const {
  std::vector<Mask> out = small_;
  std::vector<Mask> top = CircuitsOfSize(rank_ + 1);
  out.insert(out.end(), top.begin(), top.end());
  return out;
}

std::size_t Matroid::NumCircuits() const {
  std::size_t count = small_.size();
  ForEachSubsetOfSize(ground(), rank_ + 1, [&](Mask s) {
    if (!kernels::AnySubsetOf(small_, s)) ++count;
  });
  return count;
}

bool Matroid::IsDependent(Mask a) const {
  return Popcount(a) > rank_ || kernels::AnySubsetOf(small_, a);
}

Mask Matroid::Basis(Mask a) const {
  Mask basis = 0;
  int size = 0;
  ForEachBit(a, [&](int i) {
    if (size == rank_) return;
    Mask t = basis | Bit(i);
    if (!kernels::AnySubsetOf(small_, t)) {
      basis = t;
      ++size;
    }
  });
  return basis;
}

int Matroid::Rank(Mask a) const { return Popcount(Basis(a)); }

Mask Matroid::Closure(Mask a) const {
  Mask basis = Basis(a);
  Mask out = a;
  ForEachBit(ground() & ~a, [&](int e) {
    if (IsDependent(basis | Bit(e))) out |= Bit(e);
  });
  return out;
}

Mask Matroid::Loops() const {
  if (rank_ == 0) return ground();
  Mask loops = 0;
  for (Mask c : small_) {
    if (Popcount(c) == 1) loops |= c;
  }
  return loops;
}

bool Matroid::operator<(const Matroid& o) const {
  if (n_ != o.n_) return n_ < o.n_;
  if (rank_ != o.rank_) return rank_ < o.rank_;
  return std::lexicographical_compare(small_.begin(), small_.end(),
                                      o.small_.begin(), o.small_.end(),
                                      CanonicalOrder());
}

std::size_t Matroid::Hash() const {
  std::uint64_t h = FamilyHash(small_);
  h ^= (static_cast<std::uint64_t>(n_) << 32) ^ static_cast<std::uint64_t>(rank_);
  return MaskHash()(static_cast<Mask>(h));
}

bool DependencyLeq(const Matroid& m1, const Matroid& m2) {
  if (m1.n() != m2.n()) throw DomainError("ground set mismatch");
  if (m2.rank() > m1.rank()) return false;
  for (Mask c : m1.small_circuits()) {
    if (!m2.IsDependent(c)) return false;
  }
  return true;
}

Simplification Simplify(const Matroid& m) {
  const int n = m.n();
  Simplification out;
  out.class_of.assign(n, Simplification::kLoop);
  Mask loops = m.Loops();
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (Mask c : m.CircuitsOfSize(2)) {
    int a = LowestBit(c);
    int b = LowestBit(c & (c - 1));
    int ra = find(a), rb = find(b);
    if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
  }
  Mask reps = 0;
  std::vector<int> class_index(n, -1);
  for (int i = 0; i < n; ++i) {
    if (Contains(loops, i)) continue;
    int r = find(i);
    if (class_index[r] < 0) {
      class_index[r] = static_cast<int>(out.classes.size());
      out.classes.push_back(0);
      reps |= Bit(i);
    }
    out.class_of[i] = class_index[r];
    out.classes[class_index[r]] |= Bit(i);
  }
  out.simple = Restrict(m, reps);
  return out;
}

Matroid Restrict(const Matroid& m, Mask a) {
  a &= m.ground();
  std::vector<int> pos(m.n(), -1);
  int k = 0;
  ForEachBit(a, [&](int i) { pos[i] = k++; });
  std::vector<Mask> circuits;
  for (Mask c : m.small_circuits()) {
    if (!IsSubset(c, a)) continue;
    Mask mapped = 0;
    ForEachBit(c, [&](int i) { mapped |= Bit(pos[i]); });
    circuits.push_back(mapped);
  }
  return Matroid::FromCircuitsWithTop(k, std::move(circuits), m.rank());
}

Matroid Extend(const Matroid& m, Coloop) {
  if (m.n() + 1 > kMaxGround) throw DomainError("ground set cap exceeded");
  return Matroid::FromCircuitsWithTop(m.n() + 1, m.Circuits(), m.rank() + 1);
}

std::vector<Flat> AllFlats(const Matroid& m) {
  std::vector<Flat> out;
  std::vector<Mask> level = {m.Closure(0)};
  for (int r = 0; !level.empty(); ++r) {
    for (Mask f : level) out.push_back({f, r});
    if (r == m.rank()) break;
    std::unordered_set<Mask, MaskHash> next;
    for (Mask f : level) {
      ForEachBit(m.ground() & ~f, [&](int e) {
        next.insert(m.Closure(f | Bit(e)));
      });
    }
    level.assign(next.begin(), next.end());
    std::sort(level.begin(), level.end(), CanonicalOrder());
  }
  return out;
}

std::vector<Flat> FlatsOfRank(const Matroid& m, int r) {
  if (r < 0 || r > m.rank()) throw DomainError("flat rank out of range");
  std::vector<Flat> out;
  for (const Flat& f : AllFlats(m)) {
    if (f.rank == r) out.push_back(f);
  }
  return out;
}

std::vector<Flat> FreeExtensionFlats(const Matroid& m, Mask flat) {
  const Mask e = Bit(m.n());
  std::vector<Flat> flats = AllFlats(m);
  std::vector<Flat> out;
  for (const Flat& f : flats) {
    if (!IsSubset(flat, f.members)) out.push_back(f);
  }
  for (const Flat& f : flats) {
    if (IsSubset(flat, f.members)) out.push_back({f.members | e, f.rank});
  }
  for (const Flat& f : flats) {
    if (IsSubset(flat, f.members)) continue;
    bool covered = false;
    for (const Flat& g : flats) {
      if (g.rank == f.rank + 1 && IsSubset(f.members | flat, g.members)) {
        covered = true;
        break;
      }
    }
    if (!covered) out.push_back({f.members | e, f.rank + 1});
  }
  return out;
}

Matroid Extend(const Matroid& m, FreeToFlat mode) {
  const int n = m.n();
  if (n + 1 > kMaxGround) throw DomainError("ground set cap exceeded");
  if ((mode.flat & ~m.ground()) != 0 || !m.IsFlat(mode.flat)) {
    throw DomainError("set " + ToString(mode.flat) + " is not a flat");
  }
  const Mask e = Bit(n);
  std::vector<Flat> flats = FreeExtensionFlats(m, mode.flat);
  // Closure in the extension: the intersection of its flats containing x.
  auto closure = [&](Mask x) {
    Mask acc = FullMask(n + 1);
    for (const Flat& f : flats) {
      if (IsSubset(x, f.members)) acc &= f.members;
    }
    return acc;
  };
  std::vector<Mask> circuits = m.Circuits();
  for (int k = 0; k <= m.rank(); ++k) {
    ForEachSubsetOfSize(m.ground(), k, [&](Mask x) {
      if (m.IsDependent(x)) return;
      if (!Contains(closure(x), n)) return;
      bool minimal = true;
      ForEachBit(x, [&](int y) {
        if (minimal && Contains(closure(x & ~Bit(y)), n)) minimal = false;
      });
      if (minimal) circuits.push_back(x | e);
    });
  }
  return Matroid::FromCircuitsWithTop(n + 1, std::move(circuits), m.rank());
}

Matroid Permute(const Matroid& m, const std::vector<int>& perm) {
  std::vector<Mask> circuits;
  for (Mask c : m.small_circuits()) {
    Mask mapped = 0;
    ForEachBit(c, [&](int i) { mapped |= Bit(perm[i]); });
    circuits.push_back(mapped);
  }
  return Matroid::FromCircuitsWithTop(m.n(), std::move(circuits), m.rank());
}

namespace {

// Per-element invariant: loop flag, then counts of small circuits by size,
// then counts of rank-1 and rank-2 flats through the element by size.
std::vector<std::vector<int>> ElementInvariants(const Matroid& m) {
  const int n = m.n();
  const int width = n + 2;
  std::vector<std::vector<int>> inv(n, std::vector<int>(2 * width, 0));
  for (Mask c : m.small_circuits()) {
    int size = Popcount(c);
    ForEachBit(c, [&](int i) { ++inv[i][size]; });
  }
  if (m.rank() >= 1) {
    for (int r = 1; r <= std::min(2, m.rank()); ++r) {
      for (const Flat& f : FlatsOfRank(m, r)) {
        int size = Popcount(f.members);
        ForEachBit(f.members, [&](int i) { ++inv[i][width + size]; });
      }
    }
  }
  return inv;
}

class IsoSearch {
 public:
  IsoSearch(const Matroid& a, const Matroid& b) : a_(a), b_(b) {
    const int n = a.n();
    inv_a_ = ElementInvariants(a);
    inv_b_ = ElementInvariants(b);
    by_elem_a_.resize(n);
    by_elem_b_.resize(n);
    for (Mask c : a.small_circuits()) {
      ForEachBit(c, [&](int i) { by_elem_a_[i].push_back(c); });
    }
    for (Mask c : b.small_circuits()) {
      set_b_.insert(c);
      ForEachBit(c, [&](int i) { by_elem_b_[i].push_back(c); });
    }
    for (Mask c : a.small_circuits()) set_a_.insert(c);
    order_.resize(n);
    std::iota(order_.begin(), order_.end(), 0);
    std::vector<int> freq(n, 0);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) freq[i] += inv_a_[i] == inv_a_[j];
    }
    std::stable_sort(order_.begin(), order_.end(),
                     [&](int x, int y) { return freq[x] < freq[y]; });
    map_.assign(n, -1);
    inverse_.assign(n, -1);
  }

  std::optional<std::vector<int>> Run() {
    std::vector<std::vector<int>> sa = inv_a_, sb = inv_b_;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return std::nullopt;
    if (Assign(0)) return map_;
    return std::nullopt;
  }

 private:
  bool Consistent(int x, int y) const {
    for (Mask c : by_elem_a_[x]) {
      if (!IsSubset(c, dom_ | Bit(x))) continue;
      Mask img = 0;
      ForEachBit(c, [&](int i) { img |= Bit(i == x ? y : map_[i]); });
      if (!set_b_.count(img)) return false;
    }
    for (Mask c : by_elem_b_[y]) {
      if (!IsSubset(c, img_ | Bit(y))) continue;
      Mask pre = 0;
      ForEachBit(c, [&](int i) { pre |= Bit(i == y ? x : inverse_[i]); });
      if (!set_a_.count(pre)) return false;
    }
    return true;
  }

  bool Assign(std::size_t depth) {
    if (depth == order_.size()) return true;
    int x = order_[depth];
    for (int y = 0; y < b_.n(); ++y) {
      if (inverse_[y] >= 0 || inv_a_[x] != inv_b_[y]) continue;
      if (!Consistent(x, y)) continue;
      map_[x] = y;
      inverse_[y] = x;
      dom_ |= Bit(x);
      img_ |= Bit(y);
      if (Assign(depth + 1)) return true;
      map_[x] = -1;
      inverse_[y] = -1;
      dom_ &= ~Bit(x);
      img_ &= ~Bit(y);
    }
    return false;
  }

  const Matroid& a_;
  const Matroid& b_;
  std::vector<std::vector<int>> inv_a_, inv_b_;
  std::vector<std::vector<Mask>> by_elem_a_, by_elem_b_;
  std::unordered_set<Mask, MaskHash> set_a_, set_b_;
  std::vector<int> order_, map_, inverse_;
  Mask dom_ = 0, img_ = 0;
};

}  // namespace

std::optional<std::vector<int>> IsIsomorphic(const Matroid& m1,
                                             const Matroid& m2) {
  if (m1.n() != m2.n() || m1.rank() != m2.rank() ||
      m1.small_circuits().size() != m2.small_circuits().size()) {
    return std::nullopt;
  }
  return IsoSearch(m1, m2).Run();
}

}  // namespace hypermat
