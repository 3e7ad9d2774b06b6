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

#pragma once

// Register-level victim programs: a constant loop followed by a register
// load, an OR loop that isolates the Hamming weight of processed data, and
// a paired-shift loop that isolates the Hamming distance.

#include "spikelab/power_model.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

namespace spikelab {

/// X0..X26.
inline constexpr std::size_t kRegisterCount = 27;

/// Fixed operand of the shift loop, 24 ones in bits 20..43.
inline constexpr std::uint64_t kShiftOperand = 0x00000ffffff00000ULL;

/// Destination registers written per loop iteration.
inline constexpr std::uint64_t kOrWritesPerIteration = 25;
inline constexpr std::uint64_t kShiftWritesPerIteration = 24;

inline constexpr unsigned kMaxShift = 20;

struct RegisterSnapshot {
    std::array<std::uint64_t, kRegisterCount> regs{};

    static RegisterSnapshot filled(std::uint64_t word) noexcept {
        RegisterSnapshot s;
        s.regs.fill(word);
        return s;
    }

    std::uint64_t total_hwt() const noexcept;

    friend bool operator==(const RegisterSnapshot &,
                           const RegisterSnapshot &) = default;
};

constexpr unsigned hamming_weight(std::uint64_t word) noexcept {
    return static_cast<unsigned>(std::popcount(word));
}

constexpr unsigned hamming_distance(std::uint64_t a, std::uint64_t b) noexcept {
    return hamming_weight(a ^ b);
}

/// Word with the h low-order bits set. Throws DomainError for h > 64.
std::uint64_t encode_hwt(unsigned h);

/// Loop that does nothing but count; registers loaded afterwards.
struct ConstLoop {
    std::uint64_t loop_itr = 0;
    unsigned hwt_value = 0;

    friend bool operator==(const ConstLoop &, const ConstLoop &) = default;
};

/// ORs a value of weight hwt_value_loop into X2..X26 every iteration.
struct HwtLoop {
    unsigned hwt_value_loop = 0;
    unsigned hwt_value = 0;
    std::uint64_t loop_itr = 0;

    friend bool operator==(const HwtLoop &, const HwtLoop &) = default;
};

/// Shifts kShiftOperand left by shift_value and back in each of 24
/// registers every iteration.
struct HdLoop {
    unsigned shift_value = 1;
    unsigned hwt_value = 0;
    std::uint64_t loop_itr = 0;

    friend bool operator==(const HdLoop &, const HdLoop &) = default;
};

using MicrobenchSpec = std::variant<ConstLoop, HwtLoop, HdLoop>;

/// Throws DomainError when a weight exceeds 64 or the shift is outside
/// 1..=kMaxShift.
void validate(const MicrobenchSpec &spec);

struct VictimOutput {
    ActivityProfile activity;
    RegisterSnapshot snapshot;
};

VictimOutput execute(const MicrobenchSpec &spec);

/// Text form used in manifests, e.g. `hwt_loop(hwt_value_loop=32,hwt_value=0,loop_itr=100)`.
std::string to_string(const MicrobenchSpec &spec);

/// Inverse of to_string. Throws ConfigError on malformed text.
MicrobenchSpec parse_microbench(std::string_view text);

} // namespace spikelab
