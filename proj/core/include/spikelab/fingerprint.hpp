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

// Workload identification from spike amplitudes with a nearest-centroid
// rule over the class means.

#include "spikelab/microbench.hpp"
#include "spikelab/spike_synth.hpp"

#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace spikelab {

/// Label of the class whose mean is nearest the observed mean. Ties go to
/// the lexicographically first label. Throws DomainError for fewer than two
/// classes, an empty class or an empty observation.
std::string workload_fingerprint(
    const std::map<std::string, std::vector<double>> &labeled_peaks,
    std::span<const double> observed);

struct WorkloadClass {
    std::string label;
    MicrobenchSpec spec;
};

/// Six synthetic workloads spanning idle, register-heavy, OR-heavy and
/// shift-heavy programs. Returns the first n; throws DomainError if n is
/// outside 2..=6.
std::vector<WorkloadClass> default_workloads(std::size_t n = 6);

struct FingerprintStudy {
    std::vector<std::string> labels;
    /// confusion[actual][predicted] trial counts.
    std::vector<std::vector<std::size_t>> confusion;
    std::size_t trials = 0;
    std::size_t correct = 0;
    /// Class pairs whose means are closer than three standard errors of
    /// an observation mean.
    std::vector<std::pair<std::string, std::string>> indistinguishable;

    double accuracy() const noexcept {
        return trials == 0 ? 0.0
                           : static_cast<double>(correct) /
                                 static_cast<double>(trials);
    }
};

/// Trains class means on env.n_traces spikes per class, then runs `trials`
/// seeded observations of `observation_traces` spikes, cycling through the
/// classes, and classifies each.
FingerprintStudy fingerprint_study(const AttackEnv &env,
                                   const std::vector<WorkloadClass> &classes,
                                   std::size_t trials,
                                   std::size_t observation_traces);

} // namespace spikelab
