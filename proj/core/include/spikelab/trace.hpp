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
#include <string>
#include <vector>

namespace spikelab {

/// Uniformly sampled voltage time series.
struct Trace {
    double dt_s = 1.0;           ///< sampling interval, s
    std::vector<double> samples; ///< V

    /// Throws DomainError if dt_s <= 0 or any sample is not finite.
    void validate() const;

    friend bool operator==(const Trace &, const Trace &) = default;
};

/// Scalar amplitude extracted from one sleep-induced spike.
struct PeakSample {
    double value = 0.0;          ///< V
    std::string label;           ///< free-form run tag
    std::uint64_t seed_index = 0; ///< repetition number, written as run_id

    friend bool operator==(const PeakSample &, const PeakSample &) = default;
};

} // namespace spikelab
