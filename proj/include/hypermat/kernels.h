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

#ifndef HYPERMAT_KERNELS_H_
#define HYPERMAT_KERNELS_H_

#include <cstddef>
#include <vector>

#include "hypermat/subset.h"

namespace hypermat {
namespace kernels {

enum class Backend { kScalar, kAvx2 };

// Backend chosen at first use: AVX2 when the CPU supports it and
// HYPERMAT_FORCE_SCALAR is unset.
Backend ActiveBackend();
const char* BackendName(Backend b);

// True iff some masks[i] is a subset of a.
bool AnySubsetOf(const Mask* masks, std::size_t count, Mask a);
// Number of masks[i] that are subsets of a.
std::size_t CountSubsetsOf(const Mask* masks, std::size_t count, Mask a);
// True iff some masks[i] is a superset of a.
bool AnySupersetOf(const Mask* masks, std::size_t count, Mask a);
// AND of all masks[i] contained in b; *hits receives how many there were.
// Returns ~0 when none is contained.
Mask AndOfSubsetsOf(const Mask* masks, std::size_t count, Mask b,
                    std::size_t* hits);

inline bool AnySubsetOf(const std::vector<Mask>& v, Mask a) {
  return AnySubsetOf(v.data(), v.size(), a);
}
inline bool AnySupersetOf(const std::vector<Mask>& v, Mask a) {
  return AnySupersetOf(v.data(), v.size(), a);
}

namespace scalar {
bool AnySubsetOf(const Mask* masks, std::size_t count, Mask a);
std::size_t CountSubsetsOf(const Mask* masks, std::size_t count, Mask a);
bool AnySupersetOf(const Mask* masks, std::size_t count, Mask a);
Mask AndOfSubsetsOf(const Mask* masks, std::size_t count, Mask b,
                    std::size_t* hits);
}  // namespace scalar

#ifndef HYPERMAT_WIDE_MASK
namespace avx2 {
bool AnySubsetOf(const Mask* masks, std::size_t count, Mask a);
std::size_t CountSubsetsOf(const Mask* masks, std::size_t count, Mask a);
bool AnySupersetOf(const Mask* masks, std::size_t count, Mask a);
Mask AndOfSubsetsOf(const Mask* masks, std::size_t count, Mask b,
                    std::size_t* hits);
}  // namespace avx2
#endif

}  // namespace kernels
}  // namespace hypermat

#endif  // HYPERMAT_KERNELS_H_
