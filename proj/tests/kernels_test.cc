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

#include <random>
#include <vector>

#include "doctest.h"
#include "hypermat/kernels.h"

namespace hypermat {
namespace {

std::vector<Mask> RandomMasks(std::mt19937_64& rng, std::size_t count,
                              int density) {
  std::vector<Mask> out(count);
  for (auto& m : out) {
    m = rng();
    for (int i = 1; i < density; ++i) m &= rng();
  }
  return out;
}

TEST_CASE("active backend is reported") {
  auto b = kernels::ActiveBackend();
  CHECK((b == kernels::Backend::kScalar || b == kernels::Backend::kAvx2));
  MESSAGE("kernel backend: " << kernels::BackendName(b));
}

#ifndef HYPERMAT_WIDE_MASK
TEST_CASE("avx2 kernels agree with the scalar reference") {
  __builtin_cpu_init();
  if (!__builtin_cpu_supports("avx2")) return;
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 2000; ++trial) {
    std::size_t count = rng() % 67;
    int density = 1 + static_cast<int>(rng() % 4);
    auto masks = RandomMasks(rng, count, density);
    Mask probe = rng() | rng();
    if (trial % 3 == 0 && count > 0) probe = masks[rng() % count] | rng() % 16;
    CHECK(kernels::scalar::AnySubsetOf(masks.data(), count, probe) ==
          kernels::avx2::AnySubsetOf(masks.data(), count, probe));
    CHECK(kernels::scalar::CountSubsetsOf(masks.data(), count, probe) ==
          kernels::avx2::CountSubsetsOf(masks.data(), count, probe));
    Mask small = masks.empty() ? Mask{3} : masks[0] & rng();
    CHECK(kernels::scalar::AnySupersetOf(masks.data(), count, small) ==
          kernels::avx2::AnySupersetOf(masks.data(), count, small));
    std::size_t h1 = 0, h2 = 0;
    Mask a1 = kernels::scalar::AndOfSubsetsOf(masks.data(), count, probe, &h1);
    Mask a2 = kernels::avx2::AndOfSubsetsOf(masks.data(), count, probe, &h2);
    CHECK(a1 == a2);
    CHECK(h1 == h2);
  }
}
#endif

TEST_CASE("and of contained masks") {
  std::vector<Mask> masks = {0b011, 0b101, 0b1000};
  std::size_t hits = 0;
  CHECK(kernels::AndOfSubsetsOf(masks.data(), masks.size(), 0b111, &hits) ==
        0b001);
  CHECK(hits == 2);
  CHECK(kernels::AndOfSubsetsOf(masks.data(), masks.size(), 0b100, &hits) ==
        ~Mask{0});
  CHECK(hits == 0);
}

}  // namespace
}  // namespace hypermat
