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

#include "spikelab/aes.hpp"

#include "spikelab/errors.hpp"
#include "spikelab/microbench.hpp"

#include <cctype>

namespace spikelab::aes {

// clang-format off
const std::array<std::uint8_t, 256> kSbox = {
    0x63, 0x7c, 0x77, 0x7b, 0xf2, 0x6b, 0x6f, 0xc5, 0x30, 0x01, 0x67, 0x2b, 0xfe, 0xd7, 0xab, 0x76,
    0xca, 0x82, 0xc9, 0x7d, 0xfa, 0x59, 0x47, 0xf0, 0xad, 0xd4, 0xa2, 0xaf, 0x9c, 0xa4, 0x72, 0xc0,
    0xb7, 0xfd, 0x93, 0x26, 0x36, 0x3f, 0xf7, 0xcc, 0x34, 0xa5, 0xe5, 0xf1, 0x71, 0xd8, 0x31, 0x15,
    0x04, 0xc7, 0x23, 0xc3, 0x18, 0x96, 0x05, 0x9a, 0x07, 0x12, 0x80, 0xe2, 0xeb, 0x27, 0xb2, 0x75,
    0x09, 0x83, 0x2c, 0x1a, 0x1b, 0x6e, 0x5a, 0xa0, 0x52, 0x3b, 0xd6, 0xb3, 0x29, 0xe3, 0x2f, 0x84,
    0x53, 0xd1, 0x00, 0xed, 0x20, 0xfc, 0xb1, 0x5b, 0x6a, 0xcb, 0xbe, 0x39, 0x4a, 0x4c, 0x58, 0xcf,
    0xd0, 0xef, 0xaa, 0xfb, 0x43, 0x4d, 0x33, 0x85, 0x45, 0xf9, 0x02, 0x7f, 0x50, 0x3c, 0x9f, 0xa8,
    0x51, 0xa3, 0x40, 0x8f, 0x92, 0x9d, 0x38, 0xf5, 0xbc, 0xb6, 0xda, 0x21, 0x10, 0xff, 0xf3, 0xd2,
    0xcd, 0x0c, 0x13, 0xec, 0x5f, 0x97, 0x44, 0x17, 0xc4, 0xa7, 0x7e, 0x3d, 0x64, 0x5d, 0x19, 0x73,
    0x60, 0x81, 0x4f, 0xdc, 0x22, 0x2a, 0x90, 0x88, 0x46, 0xee, 0xb8, 0x14, 0xde, 0x5e, 0x0b, 0xdb,
    0xe0, 0x32, 0x3a, 0x0a, 0x49, 0x06, 0x24, 0x5c, 0xc2, 0xd3, 0xac, 0x62, 0x91, 0x95, 0xe4, 0x79,
    0xe7, 0xc8, 0x37, 0x6d, 0x8d, 0xd5, 0x4e, 0xa9, 0x6c, 0x56, 0xf4, 0xea, 0x65, 0x7a, 0xae, 0x08,
    0xba, 0x78, 0x25, 0x2e, 0x1c, 0xa6, 0xb4, 0xc6, 0xe8, 0xdd, 0x74, 0x1f, 0x4b, 0xbd, 0x8b, 0x8a,
    0x70, 0x3e, 0xb5, 0x66, 0x48, 0x03, 0xf6, 0x0e, 0x61, 0x35, 0x57, 0xb9, 0x86, 0xc1, 0x1d, 0x9e,
    0xe1, 0xf8, 0x98, 0x11, 0x69, 0xd9, 0x8e, 0x94, 0x9b, 0x1e, 0x87, 0xe9, 0xce, 0x55, 0x28, 0xdf,
    0x8c, 0xa1, 0x89, 0x0d, 0xbf, 0xe6, 0x42, 0x68, 0x41, 0x99, 0x2d, 0x0f, 0xb0, 0x54, 0xbb, 0x16,
};
// clang-format on

namespace {

constexpr std::array<std::uint8_t, 256> make_inverse(
    const std::array<std::uint8_t, 256> &s) {
    std::array<std::uint8_t, 256> inv{};
    for (std::size_t i = 0; i < 256; ++i)
        inv[s[i]] = static_cast<std::uint8_t>(i);
    return inv;
}

constexpr std::array<std::uint8_t, 11> kRcon = {0x00, 0x01, 0x02, 0x04, 0x08, 0x10,
                                                0x20, 0x40, 0x80, 0x1b, 0x36};

using Word = std::array<std::uint8_t, 4>;

Word schedule_core(Word w, std::size_t round) {
    // RotWord, SubWord, Rcon
    Word out{kSbox[w[1]], kSbox[w[2]], kSbox[w[3]], kSbox[w[0]]};
    out[0] ^= kRcon[round];
    return out;
}

constexpr std::uint8_t xtime(std::uint8_t x) {
    return static_cast<std::uint8_t>((x << 1) ^ ((x & 0x80) ? 0x1b : 0x00));
}

constexpr std::uint8_t gmul(std::uint8_t a, std::uint8_t b) {
    std::uint8_t r = 0;
    while (b) {
        if (b & 1)
            r ^= a;
        a = xtime(a);
        b >>= 1;
    }
    return r;
}

void add_round_key(Block &s, const Block &k) {
    for (std::size_t i = 0; i < 16; ++i)
        s[i] ^= k[i];
}

void sub_bytes(Block &s) {
    for (auto &b : s)
        b = kSbox[b];
}

void inv_sub_bytes(Block &s) {
    for (auto &b : s)
        b = kInvSbox[b];
}

Block shift_rows(const Block &s) {
    Block out;
    for (std::size_t i = 0; i < 16; ++i)
        out[i] = s[shiftrows_source(i)];
    return out;
}

Block inv_shift_rows(const Block &s) {
    Block out;
    for (std::size_t i = 0; i < 16; ++i)
        out[shiftrows_source(i)] = s[i];
    return out;
}

void mix_columns(Block &s) {
    for (std::size_t c = 0; c < 4; ++c) {
        std::uint8_t *col = &s[4 * c];
        const std::uint8_t a0 = col[0], a1 = col[1], a2 = col[2], a3 = col[3];
        col[0] = static_cast<std::uint8_t>(xtime(a0) ^ (xtime(a1) ^ a1) ^ a2 ^ a3);
        col[1] = static_cast<std::uint8_t>(a0 ^ xtime(a1) ^ (xtime(a2) ^ a2) ^ a3);
        col[2] = static_cast<std::uint8_t>(a0 ^ a1 ^ xtime(a2) ^ (xtime(a3) ^ a3));
        col[3] = static_cast<std::uint8_t>((xtime(a0) ^ a0) ^ a1 ^ a2 ^ xtime(a3));
    }
}

void inv_mix_columns(Block &s) {
    for (std::size_t c = 0; c < 4; ++c) {
        std::uint8_t *col = &s[4 * c];
        const std::uint8_t a0 = col[0], a1 = col[1], a2 = col[2], a3 = col[3];
        col[0] = gmul(a0, 14) ^ gmul(a1, 11) ^ gmul(a2, 13) ^ gmul(a3, 9);
        col[1] = gmul(a0, 9) ^ gmul(a1, 14) ^ gmul(a2, 11) ^ gmul(a3, 13);
        col[2] = gmul(a0, 13) ^ gmul(a1, 9) ^ gmul(a2, 14) ^ gmul(a3, 11);
        col[3] = gmul(a0, 11) ^ gmul(a1, 13) ^ gmul(a2, 9) ^ gmul(a3, 14);
    }
}

unsigned block_hwt(const Block &b) {
    unsigned n = 0;
    for (auto x : b)
        n += hamming_weight(x);
    return n;
}

int hex_value(char c) {
    if (c >= '0' && c <= '9')
        return c - '0';
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (c >= 'a' && c <= 'f')
        return c - 'a' + 10;
    return -1;
}

} // namespace

const std::array<std::uint8_t, 256> kInvSbox = make_inverse(kSbox);

RoundKeys expand_key(const Key &key) {
    RoundKeys rk;
    rk.keys[0] = key;
    for (std::size_t r = 1; r <= 10; ++r) {
        const Block &prev = rk.keys[r - 1];
        Block &next = rk.keys[r];
        Word last{prev[12], prev[13], prev[14], prev[15]};
        Word t = schedule_core(last, r);
        for (std::size_t w = 0; w < 4; ++w) {
            for (std::size_t b = 0; b < 4; ++b) {
                next[4 * w + b] = prev[4 * w + b] ^ t[b];
                t[b] = next[4 * w + b];
            }
        }
    }
    return rk;
}

Key invert_key_schedule(const Block &round10_key) {
    Block cur = round10_key;
    for (std::size_t r = 10; r >= 1; --r) {
        Block prev;
        // Words 1..3 of the previous key are XOR differences of this key.
        for (std::size_t w = 3; w >= 1; --w)
            for (std::size_t b = 0; b < 4; ++b)
                prev[4 * w + b] = cur[4 * w + b] ^ cur[4 * (w - 1) + b];
        const Word t =
            schedule_core(Word{prev[12], prev[13], prev[14], prev[15]}, r);
        for (std::size_t b = 0; b < 4; ++b)
            prev[b] = cur[b] ^ t[b];
        cur = prev;
    }
    return cur;
}

Block encrypt(const Block &pt, const RoundKeys &rk) {
    Block s = pt;
    add_round_key(s, rk.keys[0]);
    for (std::size_t r = 1; r < 10; ++r) {
        sub_bytes(s);
        s = shift_rows(s);
        mix_columns(s);
        add_round_key(s, rk.keys[r]);
    }
    sub_bytes(s);
    s = shift_rows(s);
    add_round_key(s, rk.keys[10]);
    return s;
}

Block decrypt(const Block &ct, const RoundKeys &rk) {
    Block s = ct;
    add_round_key(s, rk.keys[10]);
    s = inv_shift_rows(s);
    inv_sub_bytes(s);
    for (std::size_t r = 9; r >= 1; --r) {
        add_round_key(s, rk.keys[r]);
        inv_mix_columns(s);
        s = inv_shift_rows(s);
        inv_sub_bytes(s);
    }
    add_round_key(s, rk.keys[0]);
    return s;
}

FinalRoundProfile final_round_profile(const Block &pt, const RoundKeys &rk) {
    Block s = pt;
    add_round_key(s, rk.keys[0]);
    for (std::size_t r = 1; r < 10; ++r) {
        sub_bytes(s);
        s = shift_rows(s);
        mix_columns(s);
        add_round_key(s, rk.keys[r]);
    }
    FinalRoundProfile p;
    sub_bytes(s);
    p.subbytes_out = s;
    p.shiftrows_out = shift_rows(s);
    p.ciphertext = p.shiftrows_out;
    add_round_key(p.ciphertext, rk.keys[10]);
    p.activity.hwt_bits = block_hwt(p.subbytes_out) + block_hwt(p.shiftrows_out);
    p.activity.hd_bits = 0;
    return p;
}

Block plaintext_for_guess(Block base_ciphertext, std::size_t target,
                          std::uint8_t guess, const RoundKeys &rk) {
    if (target >= 16)
        throw DomainError("target byte must be in 0..=15");
    base_ciphertext[target] = guess;
    return decrypt(base_ciphertext, rk);
}

Block random_block(Rng &rng) {
    Block b;
    for (auto &x : b)
        x = rng.byte();
    return b;
}

Block generate_plaintext(const RoundKeys &rk, std::size_t target,
                         std::uint8_t guess, Rng &rng) {
    return plaintext_for_guess(random_block(rng), target, guess, rk);
}

std::string to_hex(std::span<const std::uint8_t> bytes) {
    static constexpr char digits[] = "0123456789abcdef";
    std::string out;
    out.reserve(bytes.size() * 2);
    for (auto b : bytes) {
        out.push_back(digits[b >> 4]);
        out.push_back(digits[b & 0xf]);
    }
    return out;
}

Block parse_hex(std::string_view text) {
    if (text.size() != 32)
        throw DomainError("expected 32 hex digits, got " +
                          std::to_string(text.size()) + " characters");
    Block b;
    for (std::size_t i = 0; i < 16; ++i) {
        const int hi = hex_value(text[2 * i]);
        const int lo = hex_value(text[2 * i + 1]);
        if (hi < 0 || lo < 0)
            throw DomainError("invalid hex digit in \"" + std::string(text) + "\"");
        b[i] = static_cast<std::uint8_t>((hi << 4) | lo);
    }
    return b;
}

} // namespace spikelab::aes
