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

#ifndef HYPERMAT_SUBSET_H_
#define HYPERMAT_SUBSET_H_

#include <bit>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hypermat {

#ifdef HYPERMAT_WIDE_MASK
using Mask = unsigned __int128;
inline constexpr int kMaxGround = 128;
#else
using Mask = std::uint64_t;
inline constexpr int kMaxGround = 64;
#endif

// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input or a violated precondition.
class DomainError : public Error {
 public:
  using Error::Error;
};

// A search or retry budget ran out before the computation finished.
class BudgetExhausted : public Error {
 public:
  using Error::Error;
};

// An internal consistency check failed.
class VerificationFailed : public Error {
 public:
  using Error::Error;
};

inline int Popcount(Mask m) {
#ifdef HYPERMAT_WIDE_MASK
  return std::popcount(static_cast<std::uint64_t>(m)) +
         std::popcount(static_cast<std::uint64_t>(m >> 64));
#else
  return std::popcount(m);
#endif
}

// Index (0-based) of the lowest set bit; m must be nonzero.
inline int LowestBit(Mask m) {
#ifdef HYPERMAT_WIDE_MASK
  auto lo = static_cast<std::uint64_t>(m);
  if (lo != 0) return std::countr_zero(lo);
  return 64 + std::countr_zero(static_cast<std::uint64_t>(m >> 64));
#else
  return std::countr_zero(m);
#endif
}

inline constexpr Mask Bit(int i) { return Mask{1} << i; }

inline Mask FullMask(int n) {
  if (n >= kMaxGround) return ~Mask{0};
  return (Mask{1} << n) - 1;
}

inline bool IsSubset(Mask a, Mask b) { return (a & ~b) == 0; }

inline bool Contains(Mask m, int i) { return (m >> i) & 1; }

// Calls f(i) for every set bit i in increasing order.
template <typename F>
inline void ForEachBit(Mask m, F&& f) {
  while (m != 0) {
    int i = LowestBit(m);
    f(i);
    m &= m - 1;
  }
}

// 0-based element indices of m.
inline std::vector<int> Elements(Mask m) {
  std::vector<int> out;
  ForEachBit(m, [&](int i) { out.push_back(i); });
  return out;
}

// 1-based labels of m.
inline std::vector<int> Labels(Mask m) {
  std::vector<int> out;
  ForEachBit(m, [&](int i) { out.push_back(i + 1); });
  return out;
}

inline Mask FromLabels(const std::vector<int>& labels, int n) {
  Mask m = 0;
  for (int x : labels) {
    if (x < 1 || x > n) {
      throw DomainError("element label " + std::to_string(x) +
                        " outside [1," + std::to_string(n) + "]");
    }
    m |= Bit(x - 1);
  }
  return m;
}

inline std::string ToString(Mask m) {
  std::string s = "{";
  bool first = true;
  ForEachBit(m, [&](int i) {
    if (!first) s += ",";
    s += std::to_string(i + 1);
    first = false;
  });
  return s + "}";
}

// Canonical order: by size, then lexicographically on sorted labels.
inline bool CanonicalLess(Mask a, Mask b) {
  int pa = Popcount(a), pb = Popcount(b);
  if (pa != pb) return pa < pb;
  Mask diff = a ^ b;
  if (diff == 0) return false;
  Mask low = diff & (~diff + 1);
  return (a & low) != 0;
}

struct CanonicalOrder {
  bool operator()(Mask a, Mask b) const { return CanonicalLess(a, b); }
};

struct MaskHash {
  std::size_t operator()(Mask m) const {
#ifdef HYPERMAT_WIDE_MASK
    std::uint64_t x = static_cast<std::uint64_t>(m) ^
                      (static_cast<std::uint64_t>(m >> 64) * 0x9e3779b97f4a7c15ULL);
#else
    std::uint64_t x = m;
#endif
    x ^= x >> 33;
    x *= 0xff51afd7ed558ccdULL;
    x ^= x >> 33;
    x *= 0xc4ceb9fe1a85ec53ULL;
    x ^= x >> 33;
    return static_cast<std::size_t>(x);
  }
};

// Hash of a whole canonical family.
inline std::uint64_t FamilyHash(const std::vector<Mask>& family) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  MaskHash mh;
  for (Mask m : family) {
    h ^= mh(m) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

// Calls f(mask) for every k-subset of the bits in universe.
template <typename F>
inline void ForEachSubsetOfSize(Mask universe, int k, F&& f) {
  std::vector<int> idx = Elements(universe);
  int m = static_cast<int>(idx.size());
  if (k < 0 || k > m) return;
  if (k == 0) {
    f(Mask{0});
    return;
  }
  std::vector<int> pos(k);
  for (int i = 0; i < k; ++i) pos[i] = i;
  while (true) {
    Mask s = 0;
    for (int i = 0; i < k; ++i) s |= Bit(idx[pos[i]]);
    f(s);
    int i = k - 1;
    while (i >= 0 && pos[i] == m - k + i) --i;
    if (i < 0) break;
    ++pos[i];
    for (int j = i + 1; j < k; ++j) pos[j] = pos[j - 1] + 1;
  }
}

// Calls f(sub) for every subset of m, including 0 and m itself.
template <typename F>
inline void ForEachSubmask(Mask m, F&& f) {
  Mask sub = m;
  while (true) {
    f(sub);
    if (sub == 0) break;
    sub = (sub - 1) & m;
  }
}

}  // namespace hypermat

#endif  // HYPERMAT_SUBSET_H_
