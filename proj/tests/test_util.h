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

#ifndef HYPERMAT_TESTS_TEST_UTIL_H_
#define HYPERMAT_TESTS_TEST_UTIL_H_

#include <algorithm>
#include <initializer_list>
#include <random>
#include <vector>

#include "hypermat/configuration.h"
#include "hypermat/hypergraph.h"
#include "hypermat/matroid.h"
#include "hypermat/subset.h"

namespace hypermat {
namespace testing {

// Mask from 1-based labels.
inline Mask S(std::initializer_list<int> labels) {
  Mask m = 0;
  for (int x : labels) m |= Bit(x - 1);
  return m;
}

inline std::vector<Mask> Family(
    std::initializer_list<std::initializer_list<int>> sets) {
  std::vector<Mask> out;
  for (auto s : sets) out.push_back(S(s));
  return out;
}

// Random matroid of rank <= 3: random loops, parallel classes and a random
// family of lines on the classes pairwise meeting in at most one class.
inline Matroid RandomRank3Matroid(std::mt19937_64& rng, int n) {
  std::vector<int> cls(n, -1);
  int classes = 0;
  for (int i = 0; i < n; ++i) {
    if (rng() % 6 == 0) continue;
    if (classes == 0 || rng() % 4 != 0) {
      cls[i] = classes++;
    } else {
      cls[i] = static_cast<int>(rng() % classes);
    }
  }
  std::vector<Mask> lines;
  for (int attempt = 0; attempt < 6 && classes >= 3; ++attempt) {
    Mask line = 0;
    int size = 3 + static_cast<int>(rng() % 2);
    while (Popcount(line) < std::min(size, classes)) {
      line |= Bit(static_cast<int>(rng() % classes));
    }
    bool ok = true;
    for (Mask l : lines) ok = ok && Popcount(l & line) <= 1;
    if (ok) lines.push_back(line);
  }
  std::vector<Mask> circuits;
  for (int i = 0; i < n; ++i) {
    if (cls[i] < 0) circuits.push_back(Bit(i));
    for (int j = i + 1; j < n; ++j) {
      if (cls[i] >= 0 && cls[i] == cls[j]) circuits.push_back(Bit(i) | Bit(j));
      for (int k = j + 1; k < n; ++k) {
        if (cls[i] < 0 || cls[j] < 0 || cls[k] < 0) continue;
        if (cls[i] == cls[j] || cls[j] == cls[k] || cls[i] == cls[k]) continue;
        Mask c = Bit(cls[i]) | Bit(cls[j]) | Bit(cls[k]);
        for (Mask l : lines) {
          if ((c & ~l) == 0) {
            circuits.push_back(Bit(i) | Bit(j) | Bit(k));
            break;
          }
        }
      }
    }
  }
  return Matroid::FromCircuitsWithTop(n, circuits, 3);
}

// Random forest on [n]: each vertex after the first attaches to an earlier
// vertex with probability 4/5.
inline Forest RandomForest(std::mt19937_64& rng, int n) {
  std::vector<std::pair<int, int>> edges;
  for (int v = 2; v <= n; ++v) {
    if (rng() % 5 == 0) continue;
    edges.emplace_back(static_cast<int>(rng() % (v - 1)) + 1, v);
  }
  return Forest(n, edges);
}

// Random forest-like configuration: each new line meets the points used so
// far in at most one point, so the line graph stays a forest.
inline Configuration RandomForestLikeConfiguration(std::mt19937_64& rng,
                                                   int max_points) {
  std::vector<Mask> lines;
  int used = 0;
  const int line_budget = 1 + static_cast<int>(rng() % 6);
  for (int i = 0; i < line_budget; ++i) {
    int size = 3 + static_cast<int>(rng() % 2);
    bool attach = used > 0 && rng() % 5 != 0;
    int fresh = attach ? size - 1 : size;
    if (used + fresh > max_points) break;
    Mask line = 0;
    if (attach) line |= Bit(static_cast<int>(rng() % used));
    for (int k = 0; k < fresh; ++k) line |= Bit(used++);
    lines.push_back(line);
  }
  int extra = used < max_points ? static_cast<int>(rng() % 2) : 0;
  return Configuration::Make(used + extra, lines);
}

// Random matroid of rank up to 5: a rank <= 3 core grown by coloops and free
// extensions to random flats.
inline Matroid RandomMatroid(std::mt19937_64& rng, int n) {
  int core = std::max(1, n - static_cast<int>(rng() % 4));
  Matroid m = RandomRank3Matroid(rng, core);
  while (m.n() < n) {
    if (rng() % 3 == 0 && m.rank() < 5) {
      m = Extend(m, Coloop{});
    } else {
      Mask seed = 0;
      for (int i = 0; i < m.n(); ++i) {
        if (rng() % 3 == 0) seed |= Bit(i);
      }
      m = Extend(m, FreeToFlat{m.Closure(seed)});
    }
  }
  return m;
}

}  // namespace testing
}  // namespace hypermat

#endif  // HYPERMAT_TESTS_TEST_UTIL_H_
