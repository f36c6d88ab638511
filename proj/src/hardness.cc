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

#include "hypermat/hardness.h"

#include <algorithm>
#include <string>

#include "hypermat/kernels.h"

namespace hypermat {

namespace {

constexpr int kRows = HardnessLayout::kRows;

// Element j of M+ sits at cell (row 0, column j).
Mask ToRowOne(Mask columns) {
  Mask out = 0;
  ForEachBit(columns, [&](int j) { out |= Bit(GridCell(kRows, 0, j)); });
  return out;
}

class Recorder {
 public:
  explicit Recorder(Clutter start) : cur_(std::move(start)) {}

  const Clutter& current() const { return cur_; }
  std::vector<TransformStep>& trace() { return trace_; }

  // alpha1 that must add exactly a1 & a2.
  void Reduce(Mask a1, Mask a2, const char* stage) {
    if (!IsMember(cur_, a1) || !IsMember(cur_, a2)) {
      throw VerificationFailed(std::string(stage) + ": " + ToString(a1) + " or " +
                               ToString(a2) + " is not a member");
    }
    if (ILambda(cur_, a1 | a2) == 0) {
      throw VerificationFailed(std::string(stage) + ": empty intersection for " +
                               ToString(a1) + ", " + ToString(a2));
    }
    TransformStep step;
    step.kind = TransformStep::Kind::kAlpha1;
    step.a1 = a1;
    step.a2 = a2;
    step.input_hash = ClutterHash(cur_);
    cur_ = Alpha1(cur_, a1, a2);
    step.output_hash = ClutterHash(cur_);
    trace_.push_back(step);
  }

  void Close() {
    TransformStep step;
    step.kind = TransformStep::Kind::kAlpha2;
    step.input_hash = ClutterHash(cur_);
    cur_ = Alpha2(cur_);
    step.output_hash = ClutterHash(cur_);
    trace_.push_back(step);
  }

  // Repeated alpha2 until the members form a circuit family.
  int CloseToMatroid(const char* stage) {
    int steps = 0;
    while (!IsMatroidClutter(cur_)) {
      if (++steps > 4 * cur_.n + 8) {
        throw VerificationFailed(std::string(stage) + ": alpha2 closure did not settle");
      }
      Close();
    }
    return steps;
  }

  bool Dominated(Mask x) const { return kernels::AnySubsetOf(cur_.edges, x); }

 private:
  Clutter cur_;
  std::vector<TransformStep> trace_;
};

Matroid AddLoops(const Matroid& m, int count) {
  std::vector<Mask> circuits = m.small_circuits();
  for (int i = 0; i < count; ++i) circuits.push_back(Bit(m.n() + i));
  return Matroid::FromCircuitsWithTop(m.n() + count, std::move(circuits), m.rank());
}

Matroid AddFree(const Matroid& m, int count) {
  return Matroid::FromCircuitsWithTop(m.n() + count, m.small_circuits(), m.rank());
}

void CheckRestriction(const Matroid& n, const GridEmbedding& emb, const Matroid& m) {
  Matroid restricted = Restrict(n, emb.target);
  if (restricted != Permute(m, emb.relabel) || !IsIsomorphic(restricted, m)) {
    throw VerificationFailed("restriction to the target cells is not the input matroid");
  }
}

// Sets A + x with x one of the columns l-2p, l-2p+1 and A a (t-p-1)-subset
// of the first l-2p columns containing exactly one circuit of M'.
std::vector<Mask> MarkedSets(const HardnessLayout& lay, int p) {
  std::vector<Mask> out;
  const int size = lay.t - p - 1;
  if (p < 1 || size < 1) return out;
  const std::vector<Mask>& circuits = lay.mprime.small_circuits();
  ForEachSubsetOfSize(FullMask(lay.l - 2 * p), size, [&](Mask a) {
    if (kernels::CountSubsetsOf(circuits.data(), circuits.size(), a) != 1) return;
    for (int x : {lay.l - 2 * p, lay.l - 2 * p + 1}) out.push_back(ToRowOne(a | Bit(x)));
  });
  return out;
}

// Sets added when moving from Lambda_{p-1} to Lambda_p: the (t-p)-circuits of
// M' and the marked sets.
std::vector<Mask> LadderSets(const HardnessLayout& lay, int p) {
  std::vector<Mask> out = MarkedSets(lay, p);
  for (Mask circ : lay.mprime.CircuitsOfSize(lay.t - p)) out.push_back(ToRowOne(circ));
  std::sort(out.begin(), out.end(), CanonicalOrder());
  return out;
}

HardnessResult LowRankPipeline(const Matroid& m) {
  const int n = m.n();
  const Mask loops = m.Loops();
  const int c = Popcount(loops);
  HardnessResult res;
  res.embedding.shape = {2, std::max({c + 1, n, 2}), 2, 2};
  const int l = res.embedding.shape.l;
  res.embedding.relabel.assign(n, 0);
  int next = 0;
  ForEachBit(loops, [&](int i) { res.embedding.relabel[i] = next++; });
  ForEachBit(m.ground() & ~loops, [&](int i) { res.embedding.relabel[i] = next++; });
  for (int j = 0; j < n; ++j) res.embedding.target |= Bit(GridCell(2, 0, j));
  res.start = DeltaGrid(res.embedding.shape);
  Recorder rec(res.start);
  for (int i = 0; i < c; ++i) {
    rec.Reduce(Bit(GridCell(2, 0, i)) | Bit(GridCell(2, 0, l - 1)),
               Bit(GridCell(2, 0, i)) | Bit(GridCell(2, 1, i)), "loop step");
  }
  rec.CloseToMatroid("closure");
  res.final_clutter = rec.current();
  res.trace = std::move(rec.trace());
  res.result = MatroidOfClutter(res.final_clutter);
  CheckRestriction(res.result, res.embedding, m);
  return res;
}

}  // namespace

HardnessLayout MakeHardnessLayout(const Matroid& m) {
  if (m.rank() < 2) throw DomainError("layout needs rank at least 2");
  HardnessLayout lay;
  lay.n = m.n();
  lay.t = m.rank() + 1;
  const Mask loops = m.Loops();
  lay.c = Popcount(loops);
  lay.cprime = std::max(lay.c, lay.t - 1);
  lay.nprime = lay.n + lay.cprime - lay.c;
  lay.l = lay.nprime + 2 * (lay.t - 2);
  if (kRows * lay.l > kMaxGround) {
    throw DomainError("grid of " + std::to_string(kRows * lay.l) +
                      " cells exceeds the ground set cap");
  }
  lay.relabel.assign(lay.n, 0);
  int next = 0;
  ForEachBit(m.ground() & ~loops, [&](int i) { lay.relabel[i] = next++; });
  ForEachBit(loops, [&](int i) { lay.relabel[i] = next++; });
  lay.mprime = AddLoops(Permute(m, lay.relabel), lay.cprime - lay.c);
  lay.mplus = AddFree(lay.mprime, lay.l - lay.nprime);
  return lay;
}

Clutter LambdaP(const HardnessLayout& lay, int p) {
  if (p < 0 || p > lay.t - 1) throw DomainError("p out of range");
  const int l = lay.l;
  const int t = lay.t;
  GridCoordinates g = MakeGridCoordinates(kRows, l);
  std::vector<Mask> family;
  for (Mask col : g.cols) {
    ForEachSubsetOfSize(col, HardnessLayout::kColumnMinor, [&](Mask s) { family.push_back(s); });
  }
  for (Mask row : g.rows) {
    ForEachSubsetOfSize(row, t, [&](Mask s) { family.push_back(s); });
  }
  for (Mask circ : lay.mprime.Circuits()) {
    if (Popcount(circ) >= t - p) family.push_back(ToRowOne(circ));
  }
  for (Mask x : MarkedSets(lay, p)) family.push_back(x);
  for (int i = 0; i < kRows; ++i) {
    for (int j = 0; j < l; ++j) {
      Mask h_pool = g.rows[i] & ~g.cols[j];
      Mask k_pool = g.cols[j] & ~g.rows[i];
      std::vector<Mask> ks;
      ForEachSubsetOfSize(k_pool, 2, [&](Mask k) { ks.push_back(k); });
      ForEachSubsetOfSize(h_pool, t - 1, [&](Mask h) {
        for (Mask k : ks) family.push_back(h | k);
      });
    }
  }
  return MinClutter(kRows * l, std::move(family), t);
}

Clutter LambdaP(const Matroid& m, int p) { return LambdaP(MakeHardnessLayout(m), p); }

HardnessResult HardnessPipeline(const Matroid& m) {
  if (m.rank() <= 1) return LowRankPipeline(m);
  const HardnessLayout lay = MakeHardnessLayout(m);
  const int l = lay.l;
  const int t = lay.t;
  HardnessResult res;
  res.embedding.shape = {kRows, l, HardnessLayout::kColumnMinor, t};
  res.embedding.relabel = lay.relabel;
  res.embedding.target = ToRowOne(FullMask(lay.n));
  res.start = DeltaGrid(res.embedding.shape);
  auto cell = [&](int i, int j) { return Bit(GridCell(kRows, i, j)); };

  Recorder rec(res.start);
  rec.Close();
  if (!(rec.current() == LambdaP(lay, 0))) {
    throw VerificationFailed("alpha2 of the grid clutter differs from Lambda_0");
  }
  for (int p = 1; p <= t - 1; ++p) {
    std::vector<Mask> expected = rec.current().edges;
    std::vector<Mask> gamma = LadderSets(lay, p);
    expected.insert(expected.end(), gamma.begin(), gamma.end());
    expected = MinimalMembers(std::move(expected));
    for (Mask x : gamma) {
      if (rec.Dominated(x)) continue;
      if (p == 1) {
        std::vector<int> free_cols;
        for (int j = 0; j < l && free_cols.size() < 2; ++j) {
          if (!Contains(x, GridCell(kRows, 0, j))) free_cols.push_back(j);
        }
        rec.Reduce(x | cell(1, free_cols[0]) | cell(2, free_cols[0]),
                   x | cell(3, free_cols[1]) | cell(4, free_cols[1]), "ladder");
      } else {
        const int base = l - 2 * (p - 1);
        rec.Reduce(x | cell(0, base), x | cell(0, base + 1), "ladder");
      }
    }
    if (rec.current().edges != expected ||
        ((p == 1 || p == t - 1) && !(rec.current() == LambdaP(lay, p)))) {
      throw VerificationFailed("ladder result differs from Lambda_" + std::to_string(p));
    }
  }

  // Column pairs, except those holding a loop of M'.
  const int first_loop = lay.n - lay.c;
  for (int j = 0; j < l; ++j) {
    const bool loop_column = j >= first_loop && j < lay.nprime;
    for (int m1 = 0; m1 < kRows; ++m1) {
      for (int m2 = m1 + 1; m2 < kRows; ++m2) {
        if (loop_column && m1 == 0) continue;
        Mask x = cell(m1, j) | cell(m2, j);
        if (rec.Dominated(x)) continue;
        std::vector<int> rows;
        for (int r = 1; r < kRows && rows.size() < 2; ++r) {
          if (r != m1 && r != m2) rows.push_back(r);
        }
        Mask k3 = 0, k4 = 0;
        int used = 0;
        for (int col = 0; col < l && used < 2 * (t - 1); ++col) {
          if (col == j) continue;
          if (used < t - 1) {
            k3 |= cell(rows[0], col);
          } else {
            k4 |= cell(rows[1], col);
          }
          ++used;
        }
        rec.Reduce(x | k3, x | k4, "column pairs");
      }
    }
  }

  // Singletons off R_1 outside the loop columns.
  for (int i = 1; i < kRows; ++i) {
    for (int j = 0; j < l; ++j) {
      if (j >= first_loop && j < lay.nprime) continue;
      Mask a1 = cell(i, j);
      for (int col = first_loop; col < first_loop + t - 1; ++col) a1 |= cell(i, col);
      rec.Reduce(a1, cell(i, j) | cell(0, j), "singletons");
    }
  }

  rec.CloseToMatroid("closure");
  res.final_clutter = rec.current();
  res.trace = std::move(rec.trace());
  res.result = MatroidOfClutter(res.final_clutter);
  CheckRestriction(res.result, res.embedding, m);
  return res;
}

std::vector<Mask> FanoLines() {
  std::vector<Mask> out;
  for (auto line : {std::vector<int>{1, 2, 4}, {1, 3, 6}, {1, 5, 7}, {2, 3, 5},
                    {2, 6, 7}, {3, 4, 7}, {4, 5, 6}}) {
    out.push_back(FromLabels(line, 7));
  }
  return out;
}

Matroid FanoMatroid() { return Matroid::FromCircuitsWithTop(7, FanoLines(), 3); }

LineRouteResult LineConfigurationRoute(int points, const std::vector<Mask>& lines) {
  const int k = static_cast<int>(lines.size());
  Mask covered = 0;
  for (Mask line : lines) {
    if (Popcount(line) != 3 || (line & ~FullMask(points)) != 0) {
      throw DomainError("each line must be a 3-subset of the points");
    }
    covered |= line;
  }
  if (covered != FullMask(points)) throw DomainError("every point must lie on a line");
  LineRouteResult res;
  res.shape = {k, points, 2, 3};
  res.start = DeltaGrid(res.shape);
  auto cell = [&](int i, int j) { return Bit(GridCell(k, i, j)); };
  Recorder rec(res.start);
  for (int i = 0; i < k; ++i) {
    const int a = LowestBit(lines[i]);
    const int b = LowestBit(lines[i] & ~Bit(a));
    for (int j = 0; j < points; ++j) {
      if (Contains(lines[i], j)) continue;
      int other = -1;
      for (int i2 = 0; i2 < k && other < 0; ++i2) {
        if (i2 != i && Contains(lines[i2], j)) other = i2;
      }
      rec.Reduce(cell(i, j) | cell(other, j), cell(i, j) | cell(i, a) | cell(i, b),
                 "line rows");
    }
  }
  res.before_closure = rec.current();
  res.closure_steps = rec.CloseToMatroid("closure");
  res.final_clutter = rec.current();
  res.trace = std::move(rec.trace());
  res.result = MatroidOfClutter(res.final_clutter);
  return res;
}

}  // namespace hypermat
