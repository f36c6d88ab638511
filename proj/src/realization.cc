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

#include "hypermat/realization.h"

#include <algorithm>
#include <cctype>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "hypermat/alpha.h"
#include "hypermat/kernels.h"

namespace hypermat {
namespace {

constexpr std::uint64_t kPrime = 2147483629ULL;

RationalVector ZeroVector(int d) { return RationalVector(d, Rational(0)); }

bool IsZero(const RationalVector& v) {
  for (const Rational& x : v) {
    if (sgn(x) != 0) return false;
  }
  return true;
}

RationalVector Add(const RationalVector& a, const RationalVector& b) {
  RationalVector out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

RationalVector Scale(const Rational& s, const RationalVector& v) {
  RationalVector out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out[i] = s * v[i];
  return out;
}

Rational Dot(const RationalVector& a, const RationalVector& b) {
  Rational acc = 0;
  for (size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

RationalVector Cross(const RationalVector& a, const RationalVector& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
          a[0] * b[1] - a[1] * b[0]};
}

Rational Det3(const RationalVector& a, const RationalVector& b,
              const RationalVector& c) {
  return Dot(a, Cross(b, c));
}

// v divided by its largest absolute entry.
RationalVector Normalized(const RationalVector& v) {
  Rational m = 0;
  for (const Rational& x : v) m = std::max(m, Rational(abs(x)));
  if (sgn(m) == 0) return v;
  return Scale(1 / m, v);
}

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  Rational Int(int range) {
    return Rational(std::uniform_int_distribution<int>(-range, range)(rng_));
  }
  Rational NonzeroInt(int range) {
    for (;;) {
      Rational x = Int(range);
      if (sgn(x) != 0) return x;
    }
  }
  RationalVector Vector(int d, int range) {
    RationalVector v(d);
    for (Rational& x : v) x = Int(range);
    return v;
  }
  RationalVector NonzeroVector(int d, int range) {
    for (;;) {
      RationalVector v = Vector(d, range);
      if (!IsZero(v)) return v;
    }
  }

 private:
  std::mt19937_64 rng_;
};

int SampleRange(int attempt) { return 3 + 2 * attempt; }

// Rank of the rows by Gaussian elimination over Q.
int RankOfRows(std::vector<RationalVector> rows) {
  if (rows.empty()) return 0;
  const int cols = static_cast<int>(rows[0].size());
  int r = 0;
  for (int c = 0; c < cols && r < static_cast<int>(rows.size()); ++c) {
    int pivot = -1;
    for (int i = r; i < static_cast<int>(rows.size()); ++i) {
      if (sgn(rows[i][c]) != 0) {
        pivot = i;
        break;
      }
    }
    if (pivot < 0) continue;
    std::swap(rows[r], rows[pivot]);
    for (int i = r + 1; i < static_cast<int>(rows.size()); ++i) {
      if (sgn(rows[i][c]) == 0) continue;
      Rational f = rows[i][c] / rows[r][c];
      for (int j = c; j < cols; ++j) rows[i][j] -= f * rows[r][j];
    }
    ++r;
  }
  return r;
}

// Basis of {x : rows x = 0}.
std::vector<RationalVector> NullSpace(std::vector<RationalVector> rows,
                                      int cols) {
  std::vector<int> pivot_col;
  int r = 0;
  for (int c = 0; c < cols && r < static_cast<int>(rows.size()); ++c) {
    int pivot = -1;
    for (int i = r; i < static_cast<int>(rows.size()); ++i) {
      if (sgn(rows[i][c]) != 0) {
        pivot = i;
        break;
      }
    }
    if (pivot < 0) continue;
    std::swap(rows[r], rows[pivot]);
    Rational inv = 1 / rows[r][c];
    for (int j = 0; j < cols; ++j) rows[r][j] *= inv;
    for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
      if (i == r || sgn(rows[i][c]) == 0) continue;
      Rational f = rows[i][c];
      for (int j = 0; j < cols; ++j) rows[i][j] -= f * rows[r][j];
    }
    pivot_col.push_back(c);
    ++r;
  }
  std::vector<bool> is_pivot(cols, false);
  for (int c : pivot_col) is_pivot[c] = true;
  std::vector<RationalVector> basis;
  for (int free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    RationalVector v = ZeroVector(cols);
    v[free] = 1;
    for (int i = 0; i < r; ++i) v[pivot_col[i]] = -rows[i][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

// Columns scaled to integer vectors, with their residues mod kPrime.
struct IntegerColumns {
  int d = 0;
  std::vector<RationalVector> exact;
  std::vector<std::vector<std::uint64_t>> residue;

  explicit IntegerColumns(const RationalMatrix& a) : d(a.d) {
    for (int j = 0; j < a.n; ++j) {
      RationalVector col = a.Column(j);
      mpz_class l = 1;
      for (const Rational& x : col) l = lcm(l, x.get_den());
      std::vector<std::uint64_t> res(d);
      for (int i = 0; i < d; ++i) {
        col[i] *= l;
        mpz_class v = col[i].get_num();
        res[i] = mpz_fdiv_ui(v.get_mpz_t(), kPrime);
      }
      exact.push_back(std::move(col));
      residue.push_back(std::move(res));
    }
  }

  int RankModPrime(Mask columns) const {
    std::vector<std::vector<std::uint64_t>> rows;
    ForEachBit(columns, [&](int j) { rows.push_back(residue[j]); });
    int r = 0;
    for (int c = 0; c < d && r < static_cast<int>(rows.size()); ++c) {
      int pivot = -1;
      for (int i = r; i < static_cast<int>(rows.size()); ++i) {
        if (rows[i][c] != 0) {
          pivot = i;
          break;
        }
      }
      if (pivot < 0) continue;
      std::swap(rows[r], rows[pivot]);
      std::uint64_t inv = PowMod(rows[r][c], kPrime - 2);
      for (int i = r + 1; i < static_cast<int>(rows.size()); ++i) {
        if (rows[i][c] == 0) continue;
        std::uint64_t f = rows[i][c] * inv % kPrime;
        for (int j = c; j < d; ++j) {
          rows[i][j] = (rows[i][j] + (kPrime - f) * rows[r][j]) % kPrime;
        }
      }
      ++r;
    }
    return r;
  }

  int RankExact(Mask columns) const {
    std::vector<RationalVector> rows;
    ForEachBit(columns, [&](int j) { rows.push_back(exact[j]); });
    return RankOfRows(std::move(rows));
  }

  int Rank(Mask columns) const {
    const int k = Popcount(columns);
    if (RankModPrime(columns) == k) return k;
    return RankExact(columns);
  }

  static std::uint64_t PowMod(std::uint64_t b, std::uint64_t e) {
    std::uint64_t r = 1;
    b %= kPrime;
    while (e) {
      if (e & 1) r = r * b % kPrime;
      b = b * b % kPrime;
      e >>= 1;
    }
    return r;
  }
};

// Effective lines (non-loop part with at least three points) in an order in
// which each line meets the union of the earlier ones in at most one point.
std::vector<Mask> BuildUpOrder(const Configuration& c) {
  std::vector<Mask> rest;
  for (Mask line : c.lines) {
    Mask e = line & ~c.loops;
    if (Popcount(e) >= 3) rest.push_back(e);
  }
  std::vector<Mask> peeled;
  while (!rest.empty()) {
    bool found = false;
    for (size_t i = 0; i < rest.size() && !found; ++i) {
      Mask others = 0;
      for (size_t j = 0; j < rest.size(); ++j) {
        if (j != i) others |= rest[j];
      }
      if (Popcount(rest[i] & others) <= 1) {
        peeled.push_back(rest[i]);
        rest.erase(rest.begin() + static_cast<long>(i));
        found = true;
      }
    }
    if (!found) throw DomainError("configuration is not forest-like");
  }
  std::reverse(peeled.begin(), peeled.end());
  return peeled;
}

Matroid AddLoop(const Matroid& m) {
  std::vector<Mask> circuits = m.Circuits();
  circuits.push_back(Bit(m.n()));
  return Matroid::FromCircuitsWithTop(m.n() + 1, std::move(circuits),
                                      m.rank());
}

}  // namespace

Rational ParseRational(const std::string& text) {
  if (text.empty()) throw DomainError("empty rational");
  for (char ch : text) {
    if (!(std::isdigit(static_cast<unsigned char>(ch)) || ch == '-' ||
          ch == '/')) {
      throw DomainError("malformed rational '" + text + "'");
    }
  }
  Rational q;
  if (q.set_str(text, 10) != 0) {
    throw DomainError("malformed rational '" + text + "'");
  }
  if (sgn(q.get_den()) == 0) throw DomainError("zero denominator");
  q.canonicalize();
  return q;
}

std::string FormatRational(const Rational& q) { return q.get_str(); }

RationalMatrix RationalMatrix::Zero(int d, int n) {
  if (d < 0 || n < 0) throw DomainError("negative matrix shape");
  RationalMatrix m;
  m.d = d;
  m.n = n;
  m.entries.assign(static_cast<size_t>(d) * n, Rational(0));
  return m;
}

RationalMatrix RationalMatrix::FromRows(
    const std::vector<RationalVector>& rows) {
  const int d = static_cast<int>(rows.size());
  const int n = d == 0 ? 0 : static_cast<int>(rows[0].size());
  RationalMatrix m = Zero(d, n);
  for (int i = 0; i < d; ++i) {
    if (static_cast<int>(rows[i].size()) != n) {
      throw DomainError("ragged matrix rows");
    }
    for (int j = 0; j < n; ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

RationalVector RationalMatrix::Column(int j) const {
  RationalVector v(d);
  for (int i = 0; i < d; ++i) v[i] = at(i, j);
  return v;
}

void RationalMatrix::SetColumn(int j, const RationalVector& v) {
  for (int i = 0; i < d; ++i) at(i, j) = v[i];
}

RationalMatrix RationalMatrix::Columns(Mask columns) const {
  RationalMatrix out = Zero(d, Popcount(columns));
  int k = 0;
  ForEachBit(columns, [&](int j) { out.SetColumn(k++, Column(j)); });
  return out;
}

int MatrixRank(const RationalMatrix& a, Mask columns) {
  std::vector<RationalVector> rows;
  ForEachBit(columns, [&](int j) { rows.push_back(a.Column(j)); });
  return RankOfRows(std::move(rows));
}

int MatrixRank(const RationalMatrix& a) {
  return MatrixRank(a, FullMask(a.n));
}

Matroid MatroidOfMatrix(const RationalMatrix& a, int max_circuit) {
  if (max_circuit < 1 || max_circuit > a.d + 1) {
    throw DomainError("max_circuit must lie in [1, d + 1]");
  }
  if (a.n > kMaxGround) throw DomainError("too many columns");
  IntegerColumns cols(a);
  const int top = std::min(cols.RankExact(FullMask(a.n)), max_circuit - 1);
  std::vector<Mask> circuits;
  for (int k = 1; k <= top; ++k) {
    ForEachSubsetOfSize(FullMask(a.n), k, [&](Mask s) {
      if (kernels::AnySubsetOf(circuits, s)) return;
      if (cols.Rank(s) < k) circuits.push_back(s);
    });
  }
  return Matroid::FromCircuitsWithTop(a.n, std::move(circuits), top);
}

Matroid MatroidOfMatrix(const RationalMatrix& a) {
  return MatroidOfMatrix(a, a.d + 1);
}

bool VerifyRealization(const RationalMatrix& a, const Matroid& m) {
  if (a.n != m.n()) {
    throw DomainError("matrix has " + std::to_string(a.n) +
                      " columns but the matroid has " + std::to_string(m.n()) +
                      " elements");
  }
  if (MatrixRank(a) != m.rank()) return false;
  return MatroidOfMatrix(a, m.rank() + 1) == m;
}

Rational SquaredDistance(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.d != b.d || a.n != b.n) throw DomainError("matrix shape mismatch");
  Rational acc = 0;
  for (size_t i = 0; i < a.entries.size(); ++i) {
    Rational diff = a.entries[i] - b.entries[i];
    acc += diff * diff;
  }
  return acc;
}

RationalVector LineMeet(const RationalVector& a1, const RationalVector& a2,
                        const RationalVector& b1, const RationalVector& b2) {
  for (const RationalVector* v : {&a1, &a2, &b1, &b2}) {
    if (v->size() != 3) throw DomainError("line_meet needs 3-vectors");
  }
  if (IsZero(Cross(a1, a2)) || IsZero(Cross(b1, b2))) {
    throw DomainError("degenerate plane");
  }
  RationalVector q = Add(Scale(Det3(a1, b1, b2), a2),
                         Scale(-Det3(a2, b1, b2), a1));
  if (IsZero(q)) throw DomainError("planes coincide");
  return q;
}

RationalMatrix RealizeForestMatroid(const Forest& g, const Collection& c,
                                    const RetryPolicy& policy) {
  if (!IsValidCollection(g, c)) {
    throw DomainError("collection is not valid for the forest");
  }
  const Matroid m = MatroidFromCollection(g, c);
  const int n = g.n();
  const Mask loops = m.Loops();
  RationalMatrix a = RationalMatrix::Zero(3, n);
  Sampler sampler(policy.seed);
  Mask placed = loops;
  for (int v = 0; v < n; ++v) {
    if (Contains(loops, v)) continue;
    const Mask nonloops = placed & ~loops;
    int twin = -1;
    ForEachBit(nonloops, [&](int w) {
      if (twin < 0 && m.IsDependent(Bit(v) | Bit(w))) twin = w;
    });
    std::pair<int, int> witness{-1, -1};
    if (twin < 0) {
      ForEachBit(nonloops, [&](int w) {
        ForEachBit(nonloops & ~FullMask(w + 1), [&](int x) {
          if (witness.first >= 0) return;
          if (m.IsIndependent(Bit(w) | Bit(x)) &&
              m.IsDependent(Bit(v) | Bit(w) | Bit(x))) {
            witness = {w, x};
          }
        });
      });
    }
    const Mask next = placed | Bit(v);
    const Matroid goal = Restrict(m, next);
    bool done = false;
    for (int attempt = 0; attempt < policy.max_attempts && !done; ++attempt) {
      const int range = SampleRange(attempt);
      RationalVector col;
      if (twin >= 0) {
        col = Scale(sampler.NonzeroInt(range), a.Column(twin));
      } else if (witness.first >= 0) {
        col = Add(Scale(sampler.NonzeroInt(range), a.Column(witness.first)),
                  Scale(sampler.NonzeroInt(range), a.Column(witness.second)));
      } else {
        col = sampler.NonzeroVector(3, range);
      }
      a.SetColumn(v, col);
      done = VerifyRealization(a.Columns(next), goal);
    }
    if (!done) {
      throw BudgetExhausted("no sample realizes the prefix ending at vertex " +
                            std::to_string(v + 1));
    }
    placed = next;
  }
  if (!VerifyRealization(a, m)) {
    throw VerificationFailed("assembled matrix does not realize M_S");
  }
  return a;
}

const char* StepName(PlanStep::Kind kind) {
  switch (kind) {
    case PlanStep::Kind::kLoop: return "loop";
    case PlanStep::Kind::kColoop: return "coloop";
    case PlanStep::Kind::kFreeToRank3Flat: return "free";
    case PlanStep::Kind::kFreeToLineThrough: return "line";
    case PlanStep::Kind::kParallelTo: return "parallel";
  }
  return "?";
}

PlanRealization RealizeByPlan(const BuildPlan& plan,
                              const RetryPolicy& policy) {
  Sampler sampler(policy.seed);
  Matroid m = Matroid::Uniform(0, 0);
  std::vector<RationalVector> cols;
  int d = 0;
  auto matrix = [&] {
    RationalMatrix a = RationalMatrix::Zero(d, static_cast<int>(cols.size()));
    for (int j = 0; j < a.n; ++j) a.SetColumn(j, cols[j]);
    return a;
  };
  for (int i = 0; i < static_cast<int>(plan.size()); ++i) {
    const PlanStep& step = plan[i];
    auto earlier = [&](int x) {
      if (x < 0 || x >= i) {
        throw DomainError("step " + std::to_string(i + 1) +
                          " refers to a missing element");
      }
    };
    Matroid next;
    switch (step.kind) {
      case PlanStep::Kind::kLoop:
        next = AddLoop(m);
        break;
      case PlanStep::Kind::kColoop:
        next = Extend(m, Coloop{});
        for (RationalVector& c : cols) c.push_back(0);
        ++d;
        break;
      case PlanStep::Kind::kFreeToRank3Flat:
        if (m.rank() != 3) throw DomainError("free step needs rank 3");
        next = Extend(m, FreeToFlat{m.ground()});
        break;
      case PlanStep::Kind::kFreeToLineThrough:
        earlier(step.a);
        earlier(step.b);
        if (m.Rank(Bit(step.a) | Bit(step.b)) != 2) {
          throw DomainError("line step needs two independent elements");
        }
        next = Extend(m, FreeToFlat{m.Closure(Bit(step.a) | Bit(step.b))});
        break;
      case PlanStep::Kind::kParallelTo:
        earlier(step.a);
        if (m.Rank(Bit(step.a)) != 1) {
          throw DomainError("parallel step needs a non-loop");
        }
        next = Extend(m, FreeToFlat{m.Closure(Bit(step.a))});
        break;
    }
    const Mask basis = m.Basis(m.ground());
    bool done = false;
    cols.emplace_back();
    for (int attempt = 0; attempt < policy.max_attempts && !done; ++attempt) {
      const int range = SampleRange(attempt);
      RationalVector col = ZeroVector(d);
      switch (step.kind) {
        case PlanStep::Kind::kLoop:
          break;
        case PlanStep::Kind::kColoop:
          col[d - 1] = 1;
          break;
        case PlanStep::Kind::kFreeToRank3Flat:
          ForEachBit(basis, [&](int e) {
            col = Add(col, Scale(sampler.NonzeroInt(range), cols[e]));
          });
          break;
        case PlanStep::Kind::kFreeToLineThrough:
          col = Add(Scale(sampler.NonzeroInt(range), cols[step.a]),
                    Scale(sampler.NonzeroInt(range), cols[step.b]));
          break;
        case PlanStep::Kind::kParallelTo:
          col = Scale(sampler.NonzeroInt(range), cols[step.a]);
          break;
      }
      cols.back() = std::move(col);
      done = VerifyRealization(matrix(), next);
    }
    if (!done) {
      throw BudgetExhausted("step " + std::to_string(i + 1) + " (" +
                            StepName(step.kind) + ") failed verification");
    }
    m = std::move(next);
  }
  return {m, matrix()};
}

ConfigurationPlan PlanForConfiguration(const Configuration& c) {
  const std::vector<Mask> lines = BuildUpOrder(c);
  std::vector<int> index(c.n, -1);
  {
    int k = 0;
    ForEachBit(c.points, [&](int p) { index[p] = k++; });
  }
  ConfigurationPlan out;
  std::vector<int> step_of(c.n, -1);
  int rank = 0;
  auto add = [&](int p, PlanStep step) {
    step_of[p] = static_cast<int>(out.plan.size());
    out.plan.push_back(step);
    out.order.push_back(index[p]);
  };
  auto add_spanning = [&](int p) {
    if (rank < 3) {
      add(p, {PlanStep::Kind::kColoop});
      ++rank;
    } else {
      add(p, {PlanStep::Kind::kFreeToRank3Flat});
    }
  };
  const Mask loops = c.loops & c.points;
  ForEachBit(loops, [&](int p) { add(p, {PlanStep::Kind::kLoop}); });
  Mask on_lines = 0;
  for (Mask line : lines) on_lines |= line;
  ForEachBit(c.points & ~loops & ~on_lines, add_spanning);
  Mask placed = 0;
  for (Mask line : lines) {
    Mask shared = line & placed;
    std::vector<int> pts = Elements(line & ~placed);
    int u, w;
    size_t rest;
    if (shared != 0) {
      u = LowestBit(shared);
      w = pts[0];
      add_spanning(w);
      rest = 1;
    } else {
      u = pts[0];
      w = pts[1];
      add_spanning(u);
      add_spanning(w);
      rest = 2;
    }
    for (size_t i = rest; i < pts.size(); ++i) {
      add(pts[i], {PlanStep::Kind::kFreeToLineThrough, step_of[u], step_of[w]});
    }
    placed |= line;
  }
  return out;
}

Matroid UniqueMinimalCircuits(const GridShape& shape, int d) {
  shape.Validate();
  const int s = shape.s, t = shape.t;
  if (s < 3 || s > t || t > shape.l || s > shape.k || d < t || d > s + t - 3) {
    throw DomainError(
        "parameters need 3 <= s <= t <= l, s <= k and t <= d <= s + t - 3");
  }
  Clutter c = PadWithBigCircuits(DeltaGrid(shape), d);
  if (!IsMatroidClutter(c)) {
    throw VerificationFailed("padded grid clutter is not a matroid clutter");
  }
  return MatroidOfClutter(c);
}

RationalMatrix RealizeGridUniqueMinimal(const GridShape& shape, int d,
                                        const RetryPolicy& policy) {
  const Matroid target = UniqueMinimalCircuits(shape, d);
  const int k = shape.k, l = shape.l, s = shape.s, t = shape.t;
  Sampler sampler(policy.seed);
  for (int attempt = 0; attempt < policy.max_attempts; ++attempt) {
    const int range = SampleRange(attempt);
    auto subspace = [&](int dim) {
      std::vector<RationalVector> basis;
      for (int i = 0; i < dim; ++i) basis.push_back(sampler.Vector(d, range));
      return basis;
    };
    std::vector<std::vector<RationalVector>> rows, cols;
    for (int i = 0; i < k; ++i) rows.push_back(subspace(t - 1));
    for (int j = 0; j < l; ++j) cols.push_back(subspace(s - 1));
    RationalMatrix a = RationalMatrix::Zero(d, k * l);
    bool ok = true;
    for (int i = 0; i < k && ok; ++i) {
      for (int j = 0; j < l && ok; ++j) {
        // Solve R_i x = C_j y; the point is R_i x.
        std::vector<RationalVector> system(d, ZeroVector(s + t - 2));
        for (int r = 0; r < d; ++r) {
          for (int q = 0; q < t - 1; ++q) system[r][q] = rows[i][q][r];
          for (int q = 0; q < s - 1; ++q) system[r][t - 1 + q] = -cols[j][q][r];
        }
        std::vector<RationalVector> kernel = NullSpace(system, s + t - 2);
        RationalVector mix = ZeroVector(s + t - 2);
        for (const RationalVector& v : kernel) {
          mix = Add(mix, Scale(sampler.NonzeroInt(range), v));
        }
        RationalVector point = ZeroVector(d);
        for (int q = 0; q < t - 1; ++q) {
          point = Add(point, Scale(mix[q], rows[i][q]));
        }
        if (sgn(point[0]) == 0) {
          ok = false;
          break;
        }
        a.SetColumn(GridCell(k, i, j), Scale(1 / point[0], point));
      }
    }
    if (ok && VerifyRealization(a, target)) return a;
  }
  throw BudgetExhausted("no sampled grid realization verified");
}

RationalMatrix PerturbToRealization(const RationalMatrix& a,
                                    const Configuration& c,
                                    const Rational& eps,
                                    const RetryPolicy& policy) {
  if (sgn(eps) <= 0) throw DomainError("eps must be positive");
  if (a.d != 3) throw DomainError("perturbation works with 3-row matrices");
  if (c.n != a.n || c.points != FullMask(a.n)) {
    throw DomainError("configuration must cover every column");
  }
  const Matroid target = MatroidOfConfiguration(c);
  if (VerifyRealization(a, target)) return a;
  if (!DependencyLeq(target, MatroidOfMatrix(a))) {
    throw DomainError("matrix lies outside the combinatorial closure");
  }
  const std::vector<Mask> lines = BuildUpOrder(c);
  const int n = a.n;
  std::vector<bool> zero(n);
  for (int p = 0; p < n; ++p) {
    zero[p] = IsZero(a.Column(p));
    if (Contains(c.loops, p)) {
      if (!zero[p]) throw DomainError("loop column must be zero");
      continue;
    }
    if (!zero[p]) continue;
    int count = 0;
    for (Mask line : lines) count += Contains(line, p);
    if (count > 2) {
      throw DomainError("zero column on more than two lines");
    }
  }
  Sampler sampler(policy.seed);
  // Orthogonal basis of the plane each line occupies in a.
  struct Plane {
    RationalVector u1, u2, normal;
  };
  std::vector<Plane> planes;
  for (Mask line : lines) {
    RationalVector u1, u2;
    ForEachBit(line, [&](int p) {
      RationalVector v = a.Column(p);
      if (IsZero(v)) return;
      if (u1.empty()) {
        u1 = v;
      } else if (u2.empty() && !IsZero(Cross(u1, v))) {
        u2 = v;
      }
    });
    if (u1.empty()) u1 = sampler.NonzeroVector(3, 3);
    while (u2.empty() || IsZero(Cross(u1, u2))) {
      u2 = sampler.NonzeroVector(3, 3);
    }
    Plane plane;
    plane.normal = Cross(u1, u2);
    plane.u1 = Normalized(u1);
    plane.u2 = Normalized(Cross(plane.normal, u1));
    planes.push_back(std::move(plane));
  }
  Mask on_lines = 0;
  for (Mask line : lines) on_lines |= line;
  Rational eta = eps;
  for (int attempt = 0; attempt < policy.max_attempts; ++attempt, eta /= 2) {
    RationalMatrix out = RationalMatrix::Zero(3, n);
    Mask placed = c.loops;
    bool ok = true;
    for (size_t li = 0; li < lines.size() && ok; ++li) {
      const Mask line = lines[li];
      const Plane& plane = planes[li];
      RationalVector b1, b2;
      const Mask anchor = line & placed;
      if (anchor != 0) {
        b1 = Normalized(out.Column(LowestBit(anchor)));
        RationalVector w = Cross(plane.normal, b1);
        w = IsZero(w) ? plane.u1 : Normalized(w);
        b2 = Add(w, Scale(eta, sampler.Vector(3, 3)));
      } else {
        b1 = Add(plane.u1, Scale(eta, sampler.Vector(3, 3)));
        b2 = Add(plane.u2, Scale(eta, sampler.Vector(3, 3)));
      }
      const RationalVector normal = Cross(b1, b2);
      if (IsZero(normal)) {
        ok = false;
        break;
      }
      b1 = Normalized(b1);
      b2 = Normalized(b2);
      auto in_plane_noise = [&] {
        for (;;) {
          RationalVector v = Add(Scale(sampler.Int(3), b1),
                                 Scale(sampler.Int(3), b2));
          if (!IsZero(v)) return v;
        }
      };
      ForEachBit(line & ~placed, [&](int p) {
        RationalVector x = a.Column(p);
        RationalVector moved;
        if (!zero[p]) {
          Rational along = Dot(x, normal) / Dot(normal, normal);
          moved = Add(Add(x, Scale(-along, normal)),
                      Scale(eta, in_plane_noise()));
        } else {
          int later = -1;
          for (size_t lj = li + 1; lj < lines.size(); ++lj) {
            if (Contains(lines[lj], p)) later = static_cast<int>(lj);
          }
          RationalVector dir;
          if (later >= 0) {
            const Plane& other = planes[later];
            if (!IsZero(Cross(Cross(b1, b2), other.normal))) {
              dir = Normalized(LineMeet(b1, b2, other.u1, other.u2));
            }
          }
          if (dir.empty()) dir = Normalized(in_plane_noise());
          moved = Scale(eta, dir);
        }
        out.SetColumn(p, moved);
      });
      placed |= line;
    }
    if (!ok) continue;
    ForEachBit(FullMask(n) & ~c.loops & ~on_lines, [&](int p) {
      out.SetColumn(p, Add(a.Column(p), Scale(eta, sampler.NonzeroVector(3, 3))));
    });
    if (SquaredDistance(out, a) < eps * eps && VerifyRealization(out, target)) {
      return out;
    }
  }
  throw BudgetExhausted("no perturbation within eps realized the target");
}

}  // namespace hypermat
