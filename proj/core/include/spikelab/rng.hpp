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

#include <cstdint>
#include <initializer_list>
#include <random>
#include <string_view>

namespace spikelab {

/// Derives a child seed from a parent and a list of tags by chained
/// SplitMix64 finalization. Pure: the same inputs give the same seed on
/// every platform.
std::uint64_t derive_seed(std::uint64_t parent,
                          std::initializer_list<std::uint64_t> tags) noexcept;

/// Stable 64-bit tag for a short ASCII label.
std::uint64_t tag(std::string_view label) noexcept;

/// A random stream. Satisfies UniformRandomBitGenerator so it can drive
/// the standard distributions directly.
class Rng {
  public:
    using result_type = std::uint64_t;

    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    static constexpr result_type min() { return std::mt19937_64::min(); }
    static constexpr result_type max() { return std::mt19937_64::max(); }
    result_type operator()() { return engine_(); }

    std::uint64_t word() { return engine_(); }
    std::uint8_t byte() { return static_cast<std::uint8_t>(engine_() >> 56); }
    bool bit() { return (engine_() >> 63) != 0; }

    /// N(mean, sd^2). sd == 0 returns mean without consuming the stream.
    double normal(double mean, double sd);

    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(engine_);
    }

  private:
    std::mt19937_64 engine_;
};

} // namespace spikelab
