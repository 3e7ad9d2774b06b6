// Copyright 2026 The spikelab Authors
// SPDX-License-Identifier: Apache-2.0
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

#include "spikelab/parallel.hpp"
#include "spikelab/rng.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <stdexcept>
#include <vector>

namespace spikelab {
namespace {

TEST(DeriveSeed, PureAndTagSensitive) {
    EXPECT_EQ(derive_seed(1, {2, 3}), derive_seed(1, {2, 3}));
    EXPECT_NE(derive_seed(1, {2, 3}), derive_seed(1, {3, 2}));
    EXPECT_NE(derive_seed(1, {2}), derive_seed(2, {2}));
    EXPECT_NE(derive_seed(1, {}), derive_seed(1, {0}));
    std::set<std::uint64_t> seen;
    for (std::uint64_t i = 0; i < 10000; ++i)
        seen.insert(derive_seed(7, {i}));
    EXPECT_EQ(seen.size(), 10000u);
}

TEST(Tag, StableAndDistinct) {
    EXPECT_EQ(tag("noise"), tag("noise"));
    EXPECT_NE(tag("noise"), tag("victim"));
    EXPECT_NE(tag(""), tag("a"));
}

TEST(Rng, SameSeedSameStream) {
    Rng a(99), b(99);
    for (int i = 0; i < 100; ++i)
        ASSERT_EQ(a.word(), b.word());
}

TEST(Rng, NormalMoments) {
    Rng rng(5);
    const int n = 200000;
    double sum = 0, sq = 0;
    for (int i = 0; i < n; ++i) {
        const double x = rng.normal(0.5, 0.01);
        sum += x;
        sq += x * x;
    }
    const double mean = sum / n;
    const double var = sq / n - mean * mean;
    EXPECT_NEAR(mean, 0.5, 1e-4);
    EXPECT_NEAR(std::sqrt(var), 0.01, 1e-4);
}

TEST(Rng, ZeroSigmaIsExactAndConsumesNothing) {
    Rng a(3), b(3);
    EXPECT_EQ(a.normal(1.25, 0.0), 1.25);
    EXPECT_EQ(a.word(), b.word());
}

TEST(Rng, ByteAndBitAreBalanced) {
    Rng rng(11);
    std::vector<int> counts(256, 0);
    int ones = 0;
    const int n = 256 * 400;
    for (int i = 0; i < n; ++i) {
        ++counts[rng.byte()];
        ones += rng.bit();
    }
    for (int c : counts)
        EXPECT_NEAR(c, 400, 100);
    EXPECT_NEAR(ones, n / 2, 800);
}

TEST(ParallelFor, ResultsIndependentOfWorkerCount) {
    auto compute = [](unsigned workers) {
        std::vector<std::uint64_t> out(1000);
        parallel_for(out.size(), workers, [&](std::size_t i) {
            Rng rng(derive_seed(17, {i}));
            out[i] = rng.word();
        });
        return out;
    };
    const auto serial = compute(1);
    EXPECT_EQ(compute(4), serial);
    EXPECT_EQ(compute(0), serial);
}

TEST(ParallelFor, PropagatesException) {
    EXPECT_THROW(parallel_for(100, 4,
                              [](std::size_t i) {
                                  if (i == 57)
                                      throw std::runtime_error("boom");
                              }),
                 std::runtime_error);
}

TEST(ParallelFor, ZeroItemsIsNoop) {
    int calls = 0;
    parallel_for(0, 4, [&](std::size_t) { ++calls; });
    EXPECT_EQ(calls, 0);
}

} // namespace
} // namespace spikelab
