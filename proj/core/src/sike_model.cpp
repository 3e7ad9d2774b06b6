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

#include "spikelab/sike_model.hpp"

#include "spikelab/errors.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace spikelab::sike {

void Key::validate() const {
    if (bits.size() < 2)
        throw DomainError("SIKE key needs at least 2 bits");
    for (auto b : bits)
        if (b > 1)
            throw DomainError("SIKE key bits must be 0 or 1");
}

Key random_key(std::size_t length, Rng &rng) {
    if (length < 2)
        throw DomainError("SIKE key needs at least 2 bits");
    Key k;
    k.bits.resize(length, 0);
    for (std::size_t i = 1; i < length; ++i)
        k.bits[i] = rng.bit() ? 1 : 0;
    return k;
}

Key parse_key_hex(std::string_view hex) {
    Key k;
    for (char c : hex) {
        int v;
        const char lc = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        if (lc >= '0' && lc <= '9')
            v = lc - '0';
        else if (lc >= 'a' && lc <= 'f')
            v = lc - 'a' + 10;
        else
            throw DomainError("invalid hex digit in SIKE key: " + std::string(hex));
        for (int b = 3; b >= 0; --b)
            k.bits.push_back(static_cast<std::uint8_t>((v >> b) & 1));
    }
    k.validate();
    return k;
}

std::string to_hex(const Key &key) {
    static constexpr char digits[] = "0123456789abcdef";
    std::string out;
    for (std::size_t i = 0; i < key.size(); i += 4) {
        int v = 0;
        for (std::size_t j = 0; j < 4; ++j)
            v = (v << 1) | (i + j < key.size() ? key.bits[i + j] : 0);
        out.push_back(digits[v]);
    }
    return out;
}

std::string to_bit_string(std::span<const std::uint8_t> bits) {
    std::string s;
    s.reserve(bits.size());
    for (auto b : bits)
        s.push_back(b ? '1' : '0');
    return s;
}

CraftedCiphertext generate_ciphertext(std::span<const std::uint8_t> prefix_with_guess,
                                      std::size_t t) {
    if (t == 0)
        throw DomainError("bit 0 cannot be targeted; it is fixed by convention");
    if (prefix_with_guess.size() < t + 1)
        throw DomainError("generate_ciphertext: need bits 0..=t");
    CraftedCiphertext c;
    c.target_bit = t;
    c.assumed_prefix.assign(prefix_with_guess.begin(),
                            prefix_with_guess.begin() + static_cast<std::ptrdiff_t>(t));
    c.guessed_bit = prefix_with_guess[t];
    return c;
}

bool triggers_anomaly(const Key &true_key, const CraftedCiphertext &c) {
    const std::size_t t = c.target_bit;
    if (t == 0 || t >= true_key.size() || c.assumed_prefix.size() != t)
        return false;
    const bool prefix_ok = std::equal(c.assumed_prefix.begin(),
                                      c.assumed_prefix.end(),
                                      true_key.bits.begin());
    return prefix_ok && c.guessed_bit == true_key[t] &&
           true_key[t] != true_key[t - 1];
}

DecapsulationRun decapsulate_profile(const Key &true_key,
                                     const CraftedCiphertext &c,
                                     const DecapsulationShape &shape, Rng &rng) {
    true_key.validate();
    if (c.target_bit == 0 || c.target_bit >= true_key.size())
        throw DomainError("target bit outside 1..L-1");
    if (c.assumed_prefix.size() != c.target_bit)
        throw DomainError("assumed prefix length must equal the target bit");
    if (shape.rounds < c.target_bit + 2)
        throw DomainError("ladder needs at least target_bit + 2 rounds");
    if (shape.iterations == 0)
        throw DomainError("iterations must be >= 1");

    DecapsulationRun run;
    run.anomalous = triggers_anomaly(true_key, c);

    const std::size_t steps = shape.rounds + shape.post_ladder_rounds;
    ActivityProfile once;
    once.reserve(steps);
    std::array<std::uint64_t, kWordsPerRound> prev{};
    for (std::size_t r = 0; r < steps; ++r) {
        // Words are always drawn so both anomaly outcomes consume the
        // stream identically.
        std::array<std::uint64_t, kWordsPerRound> words;
        for (auto &w : words)
            w = rng.word();
        if (run.anomalous && r >= c.target_bit + 1)
            words.fill(0);

        ActivitySample s;
        for (std::size_t i = 0; i < kWordsPerRound; ++i) {
            s.hwt_bits += hamming_weight(words[i]);
            s.hd_bits += hamming_distance(words[i], prev[i]);
        }
        once.push_back(s);
        prev = words;
    }

    run.activity.reserve(steps * shape.iterations);
    for (std::size_t i = 0; i < shape.iterations; ++i)
        run.activity.insert(run.activity.end(), once.begin(), once.end());

    for (auto &reg : run.snapshot.regs)
        reg = rng.word();
    if (shape.anomaly_snapshot && run.anomalous)
        run.snapshot.regs.fill(0);
    return run;
}

} // namespace spikelab::sike
