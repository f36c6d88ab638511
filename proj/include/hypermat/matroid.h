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

#ifndef HYPERMAT_MATROID_H_
#define HYPERMAT_MATROID_H_

#include <cstddef>
#include <optional>
#include <vector>

#include "hypermat/subset.h"

namespace hypermat {

// True iff family is an antichain of nonempty subsets of [n] satisfying
// circuit elimination.
bool ValidateCircuits(const std::vector<Mask>& family, int n);

// A matroid on [n] given by its circuits.
//
// Stored canonically as the circuits of size at most r = rank; the circuits of
// size r + 1 are implicit (every (r+1)-set containing no stored circuit).
class Matroid {
 public:
  Matroid() = default;

  // The matroid whose circuits are exactly `circuits`. Throws DomainError when
  // the family is not a circuit family.
  static Matroid FromCircuits(int n, std::vector<Mask> circuits);

  // The matroid whose circuits are `circuits` together with every
  // (top+1)-subset of [n] containing none of them.
  static Matroid FromCircuitsWithTop(int n, std::vector<Mask> circuits, int top);

  static Matroid Uniform(int rank, int n);
  static Matroid Free(int n) { return Uniform(n, n); }

  int n() const { return n_; }
  int rank() const { return rank_; }
  Mask ground() const { return FullMask(n_); }

  // Circuits of size at most rank(), canonical order.
  const std::vector<Mask>& small_circuits() const { return small_; }
  // All circuits, canonical order.
  std::vector<Mask> Circuits() const;
  std::vector<Mask> CircuitsOfSize(int k) const;
  std::size_t NumCircuits() const;

  bool IsDependent(Mask a) const;
  bool IsIndependent(Mask a) const { return !IsDependent(a); }
  int Rank(Mask a) const;
  // A maximal independent subset of a, built greedily in increasing order.
  Mask Basis(Mask a) const;
  Mask Closure(Mask a) const;
  bool IsFlat(Mask a) const { return Closure(a) == a; }
  Mask Loops() const;

  // Rank above the ambient dimension d: representable but has no realization
  // in d rows.
  bool ExceedsAmbient(int d) const { return rank_ > d; }

  bool operator==(const Matroid& o) const {
    return n_ == o.n_ && rank_ == o.rank_ && small_ == o.small_;
  }
  bool operator!=(const Matroid& o) const { return !(*this == o); }
  // Total order used for deterministic listings.
  bool operator<(const Matroid& o) const;
  std::size_t Hash() const;

 private:
  Matroid(int n, int rank, std::vector<Mask> small)
      : n_(n), rank_(rank), small_(std::move(small)) {}

  int n_ = 0;
  int rank_ = 0;
  std::vector<Mask> small_;
};

struct MatroidHash {
  std::size_t operator()(const Matroid& m) const { return m.Hash(); }
};

struct Flat {
  Mask members = 0;
  int rank = 0;
  bool operator==(const Flat& o) const {
    return members == o.members && rank == o.rank;
  }
};

// True iff every dependent set of m1 is dependent in m2.
bool DependencyLeq(const Matroid& m1, const Matroid& m2);

struct Simplification {
  static constexpr int kLoop = -1;
  Matroid simple;
  // class_of[i] is the parallel class of element i, or kLoop.
  std::vector<int> class_of;
  // Elements of each class.
  std::vector<Mask> classes;
};

Simplification Simplify(const Matroid& m);

// Circuits of m inside a, relabeled order-preservingly onto [|a|].
Matroid Restrict(const Matroid& m, Mask a);

struct Coloop {};
struct FreeToFlat {
  Mask flat = 0;
};

// Adds element n+1 as a coloop.
Matroid Extend(const Matroid& m, Coloop);
// Adds element n+1 freely to the flat.
Matroid Extend(const Matroid& m, FreeToFlat mode);

// Flats of the free extension of m to `flat`, listed by the three classes:
// flats avoiding `flat`, F+e for flats F containing it, and F+e for flats F
// not covered together with `flat` by a flat of rank r(F)+1.
std::vector<Flat> FreeExtensionFlats(const Matroid& m, Mask flat);

// All flats of m, ordered by rank then canonical order.
std::vector<Flat> AllFlats(const Matroid& m);
std::vector<Flat> FlatsOfRank(const Matroid& m, int r);

// A permutation p with p[i] the image of element i, carrying the circuits of
// m1 onto those of m2.
std::optional<std::vector<int>> IsIsomorphic(const Matroid& m1,
                                             const Matroid& m2);

// Relabels element i to perm[i].
Matroid Permute(const Matroid& m, const std::vector<int>& perm);

}  // namespace hypermat

#endif  // HYPERMAT_MATROID_H_
