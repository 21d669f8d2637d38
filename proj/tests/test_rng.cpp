/*
 * Copyright 2026 The Blindfold Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include <doctest.h>

#include <numeric>
#include <set>

#include "blindfold/rng.hpp"

using namespace blindfold;

TEST_SUITE_BEGIN("rng");

TEST_CASE("pcg32 matches the reference sequence") {
  // First outputs of the canonical pcg32 demo after srandom(42, 54).
  Pcg32 rng(42, 54);
  const std::uint32_t expected[] = {0xa15c02b7u, 0x7b47f409u, 0xba1d3330u,
                                    0x83d2f293u, 0xbfa4784bu, 0xcbed606eu};
  for (std::uint32_t e : expected) CHECK(rng.next() == e);
}

TEST_CASE("uniform_below stays in range and is deterministic") {
  Pcg32 a(123), b(123);
  for (int i = 0; i < 10000; ++i) {
    std::uint32_t va = a.uniform_below(7);
    CHECK(va < 7);
    CHECK(va == b.uniform_below(7));
  }
}

TEST_CASE("next_double in [0,1)") {
  Pcg32 rng(99);
  for (int i = 0; i < 10000; ++i) {
    double d = rng.next_double();
    CHECK(d >= 0.0);
    CHECK(d < 1.0);
  }
}

TEST_CASE("fnv1a64 known vectors") {
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(fnv1a64("foobar") == 0x85944171f73967e8ULL);
}

TEST_CASE("cell_seed separates cells and orders of arguments") {
  std::uint64_t s1 = cell_seed(7, "A", "B");
  std::uint64_t s2 = cell_seed(7, "B", "A");
  std::uint64_t s3 = cell_seed(7, "", "B");
  std::uint64_t s4 = cell_seed(8, "A", "B");
  std::set<std::uint64_t> all{s1, s2, s3, s4};
  CHECK(all.size() == 4);
  CHECK(cell_seed(7, "A", "B") == s1);
}

TEST_CASE("deterministic_shuffle is a seeded permutation") {
  std::vector<int> v(50);
  std::iota(v.begin(), v.end(), 0);
  std::vector<int> w = v;
  Pcg32 r1(5), r2(5);
  deterministic_shuffle(v, r1);
  deterministic_shuffle(w, r2);
  CHECK(v == w);
  std::vector<int> sorted = v;
  std::sort(sorted.begin(), sorted.end());
  std::vector<int> identity(50);
  std::iota(identity.begin(), identity.end(), 0);
  CHECK(sorted == identity);
  CHECK(v != identity);  // 50 elements: astronomically unlikely to be identity
}

TEST_SUITE_END();
