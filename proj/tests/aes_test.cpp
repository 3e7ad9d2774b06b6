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

#include "openssl_oracle.hpp"

#include "spikelab/aes.hpp"
#include "spikelab/errors.hpp"
#include "spikelab/microbench.hpp"

#include <gtest/gtest.h>

#include <set>

namespace spikelab::aes {
namespace {

using spikelab::testing::openssl_encrypt;

const Key kFipsKey = parse_hex("000102030405060708090a0b0c0d0e0f");

TEST(Aes, PublishedVector) {
    const auto pt = parse_hex("00112233445566778899aabbccddeeff");
    EXPECT_EQ(to_hex(encrypt(pt, kFipsKey)), "69c4e0d86a7b0430d8cdb78070b4c55a");
    EXPECT_EQ(encrypt(pt, kFipsKey), openssl_encrypt(kFipsKey, pt));
    EXPECT_EQ(decrypt(encrypt(pt, kFipsKey), kFipsKey), pt);
}

TEST(Aes, AgreesWithOpenSsl) {
    Rng rng(1);
    for (int i = 0; i < 1000; ++i) {
        const auto k = random_block(rng);
        const auto p = random_block(rng);
        ASSERT_EQ(encrypt(p, k), openssl_encrypt(k, p));
    }
}

TEST(Aes, DecryptInvertsEncrypt) {
    Rng rng(2);
    for (int i = 0; i < 1000; ++i) {
        const auto k = random_block(rng);
        const auto p = random_block(rng);
        ASSERT_EQ(decrypt(encrypt(p, k), k), p);
    }
}

TEST(Aes, EncryptIsInjectivePerKey) {
    Rng rng(3);
    const auto rk = expand_key(random_block(rng));
    std::set<Block> pts, cts;
    while (pts.size() < 10000) {
        const auto p = random_block(rng);
        if (pts.insert(p).second)
            cts.insert(encrypt(p, rk));
    }
    EXPECT_EQ(cts.size(), pts.size());
}

TEST(KeySchedule, FipsRound10AndRound0) {
    const auto rk = expand_key(kFipsKey);
    EXPECT_EQ(rk.keys[0], kFipsKey);
    EXPECT_EQ(to_hex(rk.round10()), "13111d7fe3944a17f307a78b4d2b30c5");
    EXPECT_EQ(invert_key_schedule(parse_hex("13111d7fe3944a17f307a78b4d2b30c5")), kFipsKey);
}

TEST(KeySchedule, InversionRoundTrip) {
    Rng rng(4);
    for (int i = 0; i < 100; ++i) {
        const auto k = random_block(rng);
        const auto r10 = expand_key(k).round10();
        const auto back = invert_key_schedule(r10);
        ASSERT_EQ(back, k);
        ASSERT_EQ(expand_key(back).round10(), r10);
    }
}

TEST(Sbox, InverseIsConsistent) {
    for (int x = 0; x < 256; ++x)
        EXPECT_EQ(kInvSbox[kSbox[x]], x);
}

TEST(FinalRound, CiphertextIsShiftRowsXorKey) {
    Rng rng(5);
    for (int i = 0; i < 1000; ++i) {
        const auto rk = expand_key(random_block(rng));
        const auto f = final_round_profile(random_block(rng), rk);
        for (std::size_t j = 0; j < 16; ++j) {
            ASSERT_EQ(f.ciphertext[j], f.shiftrows_out[j] ^ rk.round10()[j]);
            ASSERT_EQ(f.shiftrows_out[j], f.subbytes_out[shiftrows_source(j)]);
        }
    }
}

TEST(FinalRound, ActivityCountsSubBytesAndShiftRowsWeight) {
    Rng rng(6);
    const auto rk = expand_key(random_block(rng));
    const auto f = final_round_profile(random_block(rng), rk);
    std::uint64_t w = 0;
    for (std::size_t j = 0; j < 16; ++j)
        w += hamming_weight(f.subbytes_out[j]) + hamming_weight(f.shiftrows_out[j]);
    EXPECT_EQ(f.activity.hwt_bits, w);
    EXPECT_EQ(f.activity.hd_bits, 0u);
}

TEST(ChosenPlaintext, ForcesTargetByte) {
    const auto rk = expand_key(kFipsKey);
    Rng rng(7);
    const auto p = generate_plaintext(rk, 15, 0xAB, rng);
    EXPECT_EQ(encrypt(p, rk)[15], 0xAB);
}

TEST(ChosenPlaintext, CorrectGuessZeroesShiftRowsByte) {
    Rng rng(8);
    for (int i = 0; i < 50; ++i) {
        const auto rk = expand_key(random_block(rng));
        const std::size_t t = i % 16;
        const auto base = random_block(rng);
        const std::uint8_t right = rk.round10()[t];
        EXPECT_EQ(final_round_profile(plaintext_for_guess(base, t, right, rk), rk)
                      .shiftrows_out[t],
                  0);
        for (int g = 0; g < 256; ++g) {
            const auto guess = static_cast<std::uint8_t>(g);
            const auto f = final_round_profile(plaintext_for_guess(base, t, guess, rk), rk);
            ASSERT_EQ(f.shiftrows_out[t], guess ^ right);
        }
    }
}

TEST(ChosenPlaintext, WrongGuessAddsTwiceItsWeight) {
    Rng rng(9);
    const auto rk = expand_key(random_block(rng));
    const std::size_t t = 6;
    const auto base = random_block(rng);
    const std::uint8_t right = rk.round10()[t];
    const auto good = final_round_profile(plaintext_for_guess(base, t, right, rk), rk);
    for (int g = 0; g < 256; ++g) {
        const auto guess = static_cast<std::uint8_t>(g);
        const auto f = final_round_profile(plaintext_for_guess(base, t, guess, rk), rk);
        // Only the target byte changes; it appears once in SubBytes and
        // once in ShiftRows.
        ASSERT_EQ(f.activity.hwt_bits - good.activity.hwt_bits,
                  2u * hamming_weight(static_cast<std::uint8_t>(guess ^ right)));
    }
}

TEST(Hex, ParseAndFormat) {
    EXPECT_EQ(to_hex(kFipsKey), "000102030405060708090a0b0c0d0e0f");
    EXPECT_EQ(parse_hex("000102030405060708090A0B0C0D0E0F"), kFipsKey);
    EXPECT_THROW(parse_hex("0001"), DomainError);
    EXPECT_THROW(parse_hex("zz0102030405060708090a0b0c0d0e0f"), DomainError);
}

} // namespace
} // namespace spikelab::aes
