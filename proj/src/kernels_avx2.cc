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

#include <immintrin.h>

#include "hypermat/kernels.h"

#ifndef HYPERMAT_WIDE_MASK

#define HYPERMAT_AVX2 __attribute__((target("avx2")))

namespace hypermat {
namespace kernels {
namespace avx2 {

namespace {

// All-ones in each 64-bit lane where (m & ~a) == 0.
HYPERMAT_AVX2 inline __m256i SubsetLanes(__m256i m, __m256i a) {
  return _mm256_cmpeq_epi64(_mm256_andnot_si256(a, m), _mm256_setzero_si256());
}

}  // namespace

HYPERMAT_AVX2 bool AnySubsetOf(const Mask* masks, std::size_t count, Mask a) {
  const __m256i va = _mm256_set1_epi64x(static_cast<long long>(a));
  std::size_t i = 0;
  for (; i + 8 <= count; i += 8) {
    __m256i m0 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(masks + i));
    __m256i m1 =
        _mm256_loadu_si256(reinterpret_cast<const __m256i*>(masks + i + 4));
    __m256i hit = _mm256_or_si256(SubsetLanes(m0, va), SubsetLanes(m1, va));
    if (!_mm256_testz_si256(hit, hit)) return true;
  }
  for (; i + 4 <= count; i += 4) {
    __m256i m0 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(masks + i));
    __m256i hit = SubsetLanes(m0, va);
    if (!_mm256_testz_si256(hit, hit)) return true;
  }
  for (; i < count; ++i) {
    if ((masks[i] & ~a) == 0) return true;
  }
  return false;
}

HYPERMAT_AVX2 std::size_t CountSubsetsOf(const Mask* masks, std::size_t count,
                                         Mask a) {
  const __m256i va = _mm256_set1_epi64x(static_cast<long long>(a));
  std::size_t hits = 0;
  std::size_t i = 0;
  for (; i + 4 <= count; i += 4) {
    __m256i m0 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(masks + i));
    int bits = _mm256_movemask_pd(_mm256_castsi256_pd(SubsetLanes(m0, va)));
    hits += static_cast<std::size_t>(__builtin_popcount(bits));
  }
  for (; i < count; ++i) hits += (masks[i] & ~a) == 0;
  return hits;
}

HYPERMAT_AVX2 bool AnySupersetOf(const Mask* masks, std::size_t count, Mask a) {
  const __m256i va = _mm256_set1_epi64x(static_cast<long long>(a));
  const __m256i zero = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 4 <= count; i += 4) {
    __m256i m0 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(masks + i));
    __m256i hit = _mm256_cmpeq_epi64(_mm256_andnot_si256(m0, va), zero);
    if (!_mm256_testz_si256(hit, hit)) return true;
  }
  for (; i < count; ++i) {
    if ((a & ~masks[i]) == 0) return true;
  }
  return false;
}

HYPERMAT_AVX2 Mask AndOfSubsetsOf(const Mask* masks, std::size_t count, Mask b,
                                  std::size_t* hits) {
  const __m256i vb = _mm256_set1_epi64x(static_cast<long long>(b));
  __m256i acc = _mm256_set1_epi64x(-1);
  std::size_t n = 0;
  std::size_t i = 0;
  for (; i + 4 <= count; i += 4) {
    __m256i m0 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(masks + i));
    __m256i sel = SubsetLanes(m0, vb);
    // Lanes not selected contribute all-ones to the AND.
    acc = _mm256_and_si256(acc, _mm256_or_si256(m0, _mm256_xor_si256(
                                                        sel, _mm256_set1_epi64x(-1))));
    int bits = _mm256_movemask_pd(_mm256_castsi256_pd(sel));
    n += static_cast<std::size_t>(__builtin_popcount(bits));
  }
  alignas(32) std::uint64_t lanes[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc);
  Mask out = lanes[0] & lanes[1] & lanes[2] & lanes[3];
  for (; i < count; ++i) {
    if ((masks[i] & ~b) == 0) {
      out &= masks[i];
      ++n;
    }
  }
  if (hits != nullptr) *hits = n;
  return out;
}

}  // namespace avx2
}  // namespace kernels
}  // namespace hypermat

#endif  // HYPERMAT_WIDE_MASK
