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

#include "hypermat/kernels.h"

#include <cstdlib>

namespace hypermat {
namespace kernels {
namespace scalar {

bool AnySubsetOf(const Mask* masks, std::size_t count, Mask a) {
  const Mask outside = ~a;
  for (std::size_t i = 0; i < count; ++i) {
    if ((masks[i] & outside) == 0) return true;
  }
  return false;
}

std::size_t CountSubsetsOf(const Mask* masks, std::size_t count, Mask a) {
  const Mask outside = ~a;
  std::size_t hits = 0;
  for (std::size_t i = 0; i < count; ++i) {
    hits += (masks[i] & outside) == 0;
  }
  return hits;
}

bool AnySupersetOf(const Mask* masks, std::size_t count, Mask a) {
  for (std::size_t i = 0; i < count; ++i) {
    if ((a & ~masks[i]) == 0) return true;
  }
  return false;
}

Mask AndOfSubsetsOf(const Mask* masks, std::size_t count, Mask b,
                    std::size_t* hits) {
  const Mask outside = ~b;
  Mask acc = ~Mask{0};
  std::size_t n = 0;
  for (std::size_t i = 0; i < count; ++i) {
    if ((masks[i] & outside) == 0) {
      acc &= masks[i];
      ++n;
    }
  }
  if (hits != nullptr) *hits = n;
  return acc;
}

}  // namespace scalar

namespace {

Backend DetectBackend() {
#ifdef HYPERMAT_WIDE_MASK
  return Backend::kScalar;
#else
  const char* force = std::getenv("HYPERMAT_FORCE_SCALAR");
  if (force != nullptr && force[0] != '\0' && force[0] != '0') {
    return Backend::kScalar;
  }
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") ? Backend::kAvx2 : Backend::kScalar;
#endif
}

}  // namespace

Backend ActiveBackend() {
  static const Backend backend = DetectBackend();
  return backend;
}

const char* BackendName(Backend b) {
  return b == Backend::kAvx2 ? "avx2" : "scalar";
}

#ifdef HYPERMAT_WIDE_MASK

bool AnySubsetOf(const Mask* masks, std::size_t count, Mask a) {
  return scalar::AnySubsetOf(masks, count, a);
}
std::size_t CountSubsetsOf(const Mask* masks, std::size_t count, Mask a) {
  return scalar::CountSubsetsOf(masks, count, a);
}
bool AnySupersetOf(const Mask* masks, std::size_t count, Mask a) {
  return scalar::AnySupersetOf(masks, count, a);
}
Mask AndOfSubsetsOf(const Mask* masks, std::size_t count, Mask b,
                    std::size_t* hits) {
  return scalar::AndOfSubsetsOf(masks, count, b, hits);
}

#else

bool AnySubsetOf(const Mask* masks, std::size_t count, Mask a) {
  if (ActiveBackend() == Backend::kAvx2) return avx2::AnySubsetOf(masks, count, a);
  return scalar::AnySubsetOf(masks, count, a);
}

std::size_t CountSubsetsOf(const Mask* masks, std::size_t count, Mask a) {
  if (ActiveBackend() == Backend::kAvx2) {
    return avx2::CountSubsetsOf(masks, count, a);
  }
  return scalar::CountSubsetsOf(masks, count, a);
}

bool AnySupersetOf(const Mask* masks, std::size_t count, Mask a) {
  if (ActiveBackend() == Backend::kAvx2) {
    return avx2::AnySupersetOf(masks, count, a);
  }
  return scalar::AnySupersetOf(masks, count, a);
}

Mask AndOfSubsetsOf(const Mask* masks, std::size_t count, Mask b,
                    std::size_t* hits) {
  if (ActiveBackend() == Backend::kAvx2) {
    return avx2::AndOfSubsetsOf(masks, count, b, hits);
  }
  return scalar::AndOfSubsetsOf(masks, count, b, hits);
}

#endif

}  // namespace kernels
}  // namespace hypermat
