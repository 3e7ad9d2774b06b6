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
#include "spikelab/sike_model.hpp"

#include <gtest/gtest.h>

namespace spikelab::sike {
namespace {

Key bits_of(const std::string &s) {
    Key k;
    for (char c : s)
        k.bits.push_back(c == '1');
    return k;
}

TEST(SikeKey, RandomKeyFixesBitZero) {
    Rng rng(1);
    std::size_t ones = 0;
    for (int i = 0; i < 200; ++i) {
        const auto k = random_key(64, rng);
        ASSERT_EQ(k.size(), 64u);
        ASSERT_EQ(k[0], 0);
        for (auto b : k.bits)
            ones += b;
    }
    EXPECT_NEAR(static_cast<double>(ones) / (200 * 63), 0.5, 0.02);
}

TEST(SikeKey, HexRoundTripMsbFirst) {
    const auto k = parse_key_hex("5a");
    EXPECT_EQ(to_bit_string(k.bits), "01011010");
    EXPECT_EQ(to_hex(k), "5a");
    EXPECT_THROW(parse_key_hex("5g"), DomainError);
    Rng rng(2);
    const auto r = random_key(64, rng);
    EXPECT_EQ(parse_key_hex(to_hex(r)), r);
}

TEST(SikeKey, ValidateRejectsShortOrNonBinary) {
    EXPECT_THROW(bits_of("0").validate(), DomainError);
    Key k{{0, 2}};
    EXPECT_THROW(k.validate(), DomainError);
}

TEST(Ciphertext, FieldExtraction) {
    const auto k = bits_of("0110100110");
    const auto c = generate_ciphertext(k.bits, 5);
    EXPECT_EQ(c.target_bit, 5u);
    EXPECT_EQ(c.assumed_prefix, std::vector<std::uint8_t>(k.bits.begin(), k.bits.begin() + 5));
    EXPECT_EQ(c.guessed_bit, k[5]);
    EXPECT_EQ(c, generate_ciphertext(k.bits, 5));
    EXPECT_THROW(generate_ciphertext(k.bits, 0), DomainError);
    EXPECT_THROW(generate_ciphertext(std::vector<std::uint8_t>{0, 1}, 2), DomainError);
}

TEST(Ciphertext, GuessFollowsAlgorithmFlip) {
    auto prefix = bits_of("0110").bits;
    prefix.push_back(prefix.back() ^ 1);
    EXPECT_EQ(generate_ciphertext(prefix, 4).guessed_bit, 1 - prefix[3]);
}

TEST(Anomaly, PredicateTruthTable) {
    const auto k = bits_of("0110");
    // t = 1: k0 = 0, k1 = 1 differ; correct guess triggers.
    EXPECT_TRUE(triggers_anomaly(k, generate_ciphertext(bits_of("01").bits, 1)));
    EXPECT_FALSE(triggers_anomaly(k, generate_ciphertext(bits_of("00").bits, 1)));
    // t = 2: k1 == k2, never anomalous.
    EXPECT_FALSE(triggers_anomaly(k, generate_ciphertext(bits_of("011").bits, 2)));
    EXPECT_FALSE(triggers_anomaly(k, generate_ciphertext(bits_of("010").bits, 2)));
    // Prefix mismatch blocks the anomaly whatever the guess.
    EXPECT_FALSE(triggers_anomaly(k, generate_ciphertext(bits_of("1111").bits, 3)));
    EXPECT_FALSE(triggers_anomaly(k, generate_ciphertext(bits_of("0010").bits, 3)));
    EXPECT_TRUE(triggers_anomaly(k, generate_ciphertext(bits_of("0110").bits, 3)));
}

TEST(Decapsulation, AnomalyZeroesRegistersAndLaterRounds) {
    const auto k = bits_of("00101101");
    const auto c = generate_ciphertext(k.bits, 2);
    ASSERT_TRUE(triggers_anomaly(k, c));
    Rng rng(3);
    const DecapsulationShape shape{9, 1, 0, true};
    const auto run = decapsulate_profile(k, c, shape, rng);
    EXPECT_TRUE(run.anomalous);
    EXPECT_EQ(run.snapshot.total_hwt(), 0u);
    ASSERT_EQ(run.activity.size(), 9u);
    for (std::size_t r = 3; r < 9; ++r)
        EXPECT_EQ(run.activity[r].hwt_bits, 0u) << r;
    EXPECT_GT(run.activity[0].hwt_bits, 0u);
    // The first zero round toggles every bit that was set before it.
    EXPECT_EQ(run.activity[3].hd_bits, run.activity[2].hwt_bits);
}

TEST(Decapsulation, CleanRunHasRandomRegisters) {
    const auto k = bits_of("00101101");
    const auto c = generate_ciphertext(bits_of("000").bits, 2);
    ASSERT_FALSE(triggers_anomaly(k, c));
    Rng rng(4);
    double total = 0;
    const int n = 10000;
    for (int i = 0; i < n; ++i) {
        const auto run = decapsulate_profile(k, c, 9, 1, rng);
        total += static_cast<double>(run.snapshot.total_hwt()) / kRegisterCount;
    }
    EXPECT_NEAR(total / n, 32.0, 1.0);
}

TEST(Decapsulation, IterationsRepeatOneDecapsulation) {
    const auto k = bits_of("0110");
    const auto c = generate_ciphertext(bits_of("01").bits, 1);
    Rng rng(5);
    const DecapsulationShape shape{5, 3, 5, false};
    const auto run = decapsulate_profile(k, c, shape, rng);
    ASSERT_EQ(run.activity.size(), 30u);
    for (std::size_t i = 0; i < 10; ++i) {
        EXPECT_EQ(run.activity[i], run.activity[i + 10]);
        EXPECT_EQ(run.activity[i], run.activity[i + 20]);
    }
    // Residual shape keeps random registers even under the anomaly.
    EXPECT_GT(run.snapshot.total_hwt(), 0u);
}

TEST(Decapsulation, BothOutcomesShareTheStream) {
    const auto k = bits_of("0110");
    Rng a(6), b(6);
    const DecapsulationShape shape{5, 1, 0, true};
    const auto hit = decapsulate_profile(k, generate_ciphertext(bits_of("01").bits, 1), shape, a);
    const auto miss = decapsulate_profile(k, generate_ciphertext(bits_of("00").bits, 1), shape, b);
    EXPECT_EQ(hit.activity[0], miss.activity[0]);
    EXPECT_EQ(hit.activity[1], miss.activity[1]);
    EXPECT_EQ(a.word(), b.word());
}

TEST(Decapsulation, RejectsBadShapes) {
    const auto k = bits_of("0110");
    const auto c = generate_ciphertext(bits_of("011").bits, 2);
    Rng rng(7);
    EXPECT_THROW(decapsulate_profile(k, c, 3, 1, rng), DomainError);
    EXPECT_THROW(decapsulate_profile(k, c, 4, 0, rng), DomainError);
    EXPECT_NO_THROW(decapsulate_profile(k, c, 4, 1, rng));
}

} // namespace
} // namespace spikelab::sike
