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

#include "spikelab/errors.hpp"
#include "spikelab/microbench.hpp"
#include "spikelab/rng.hpp"

#include <gtest/gtest.h>

namespace spikelab {
namespace {

// Bit-by-bit popcount, independent of std::popcount.
unsigned slow_popcount(std::uint64_t w) {
    unsigned n = 0;
    for (int i = 0; i < 64; ++i)
        n += (w >> i) & 1u;
    return n;
}

TEST(HammingWeight, Examples) {
    EXPECT_EQ(hamming_weight(0), 0u);
    EXPECT_EQ(hamming_weight(~0ULL), 64u);
    EXPECT_EQ(hamming_weight(kShiftOperand), 24u);
    static_assert(hamming_weight(0xF0) == 4);
}

TEST(HammingDistance, WorkedExampleAndSymmetry) {
    EXPECT_EQ(hamming_distance(5, 5), 0u);
    EXPECT_EQ(hamming_distance(0x000000ffffff0000ULL, 0x0000ffffff000000ULL), 16u);
    Rng rng(42);
    for (int i = 0; i < 1000; ++i) {
        const auto a = rng.word();
        const auto b = rng.word();
        ASSERT_EQ(hamming_distance(a, b), hamming_distance(b, a));
        ASSERT_EQ(hamming_distance(a, b), slow_popcount(a ^ b));
    }
}

TEST(EncodeHwt, LowOrderOnes) {
    EXPECT_EQ(encode_hwt(0), 0u);
    EXPECT_EQ(encode_hwt(64), ~0ULL);
    EXPECT_EQ(encode_hwt(16), 0xFFFFULL);
    for (unsigned h = 0; h <= 64; ++h)
        EXPECT_EQ(slow_popcount(encode_hwt(h)), h);
    EXPECT_THROW(encode_hwt(65), DomainError);
}

TEST(Execute, EmptyHwtLoopLoadsRegisters) {
    const auto out = execute(HwtLoop{0, 32, 0});
    EXPECT_TRUE(out.activity.empty());
    for (auto r : out.snapshot.regs)
        EXPECT_EQ(r, 0x00000000FFFFFFFFULL);
    EXPECT_EQ(out.snapshot.total_hwt(), 27u * 32u);
}

TEST(Execute, HwtLoopHandCount) {
    const auto out = execute(HwtLoop{32, 0, 2});
    const ActivityProfile expected{{800, 0}, {800, 0}};
    EXPECT_EQ(out.activity, expected);
}

TEST(Execute, ConstLoopHasNoActivity) {
    const auto out = execute(ConstLoop{7, 64});
    EXPECT_EQ(out.activity, ActivityProfile(7, ActivitySample{}));
    EXPECT_EQ(out.snapshot.total_hwt(), 27u * 64u);
}

// Literal register simulation of one loop iteration: shift left, then
// shift back. Per-register HD is the sum of both writes.
unsigned literal_iteration_hd(unsigned s) {
    const std::uint64_t x = kShiftOperand;
    const std::uint64_t left = x << s;
    const std::uint64_t back = left >> s;
    return slow_popcount(x ^ left) + slow_popcount(left ^ back);
}

TEST(Execute, HdLoopMatchesLiteralShiftSimulation) {
    for (unsigned s = 1; s <= kMaxShift; ++s) {
        const auto out = execute(HdLoop{s, 0, 3});
        ASSERT_EQ(out.activity.size(), 3u);
        for (const auto &step : out.activity) {
            EXPECT_EQ(step.hd_bits, kShiftWritesPerIteration * literal_iteration_hd(s));
            EXPECT_EQ(step.hd_bits, kShiftWritesPerIteration * 4 * s);
            EXPECT_EQ(step.hwt_bits, kShiftWritesPerIteration * 24);
        }
    }
}

TEST(Execute, HdLoopShiftFourGivesSixteen) {
    EXPECT_EQ(literal_iteration_hd(4), 16u);
    EXPECT_EQ(execute(HdLoop{4, 0, 1}).activity[0].hd_bits / kShiftWritesPerIteration, 16u);
}

TEST(Validate, RejectsOutOfRange) {
    EXPECT_THROW(validate(HwtLoop{65, 0, 1}), DomainError);
    EXPECT_THROW(validate(ConstLoop{1, 70}), DomainError);
    EXPECT_THROW(validate(HdLoop{0, 0, 1}), DomainError);
    EXPECT_THROW(validate(HdLoop{21, 0, 1}), DomainError);
    EXPECT_NO_THROW(validate(HdLoop{20, 64, 1}));
}

TEST(Descriptor, RoundTrip) {
    const MicrobenchSpec specs[] = {ConstLoop{100, 0}, HwtLoop{32, 16, 50},
                                    HdLoop{20, 64, 800}};
    for (const auto &s : specs)
        EXPECT_EQ(parse_microbench(to_string(s)), s);
    EXPECT_EQ(to_string(HwtLoop{32, 0, 100}),
              "hwt_loop(hwt_value_loop=32,hwt_value=0,loop_itr=100)");
}

TEST(Descriptor, RejectsMalformed) {
    EXPECT_THROW(parse_microbench("hwt_loop(hwt_value=1)"), ConfigError);
    EXPECT_THROW(parse_microbench("nop_loop(loop_itr=1)"), ConfigError);
    EXPECT_THROW(parse_microbench("const_loop(loop_itr=1,hwt_value=1,extra=2)"), ConfigError);
    EXPECT_THROW(parse_microbench("const_loop(loop_itr=x,hwt_value=1)"), ConfigError);
    EXPECT_THROW(parse_microbench("hd_loop(shift_value=30,hwt_value=0,loop_itr=1)"), ConfigError);
    EXPECT_THROW(parse_microbench("const_loop"), ConfigError);
}

} // namespace
} // namespace spikelab
