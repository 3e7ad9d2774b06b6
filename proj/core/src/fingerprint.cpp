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

#include "spikelab/fingerprint.hpp"

#include "spikelab/acquisition.hpp"
#include "spikelab/errors.hpp"

#include <cmath>
#include <limits>

namespace spikelab {

std::string workload_fingerprint(
    const std::map<std::string, std::vector<double>> &labeled_peaks,
    std::span<const double> observed) {
    if (labeled_peaks.size() < 2)
        throw DomainError("fingerprinting needs at least two classes");
    if (observed.empty())
        throw DomainError("fingerprinting: empty observed set");

    const double m = mean(observed);
    std::string best;
    double best_dist = std::numeric_limits<double>::infinity();
    for (const auto &[label, peaks] : labeled_peaks) {
        if (peaks.empty())
            throw DomainError("fingerprinting: class \"" + label + "\" is empty");
        const double d = std::abs(mean(peaks) - m);
        if (d < best_dist) {
            best_dist = d;
            best = label;
        }
    }
    return best;
}

std::vector<WorkloadClass> default_workloads(std::size_t n) {
    constexpr std::uint64_t kLoop = 100;
    std::vector<WorkloadClass> all = {
        {"idle", ConstLoop{kLoop, 0}},
        {"registers-full", ConstLoop{kLoop, 64}},
        {"or-light", HwtLoop{32, 0, kLoop}},
        {"shift-light", HdLoop{5, 32, kLoop}},
        {"or-heavy", HwtLoop{64, 48, kLoop}},
        {"shift-heavy", HdLoop{20, 64, kLoop}},
    };
    if (n < 2 || n > all.size())
        throw DomainError("workload classes must be in 2..=6");
    all.resize(n);
    return all;
}

FingerprintStudy fingerprint_study(const AttackEnv &env,
                                   const std::vector<WorkloadClass> &classes,
                                   std::size_t trials,
                                   std::size_t observation_traces) {
    if (classes.size() < 2)
        throw DomainError("fingerprinting needs at least two classes");
    if (observation_traces == 0)
        throw DomainError("observation_traces must be >= 1");

    FingerprintStudy study;
    std::map<std::string, std::vector<double>> training;
    std::map<std::string, std::size_t> index;
    std::vector<Summary> stats;
    for (std::size_t c = 0; c < classes.size(); ++c) {
        const auto &cls = classes[c];
        if (!index.emplace(cls.label, c).second)
            throw DomainError("duplicate workload label: " + cls.label);
        study.labels.push_back(cls.label);
        const auto peaks = run_experiment(
            microbench_victim(cls.spec), env.n_traces,
            derive_seed(env.master_seed, {tag("fp-train"), c}), env, cls.label);
        auto values = values_of(peaks);
        stats.push_back(summarize(std::span<const double>(values)));
        training.emplace(cls.label, std::move(values));
    }

    for (std::size_t a = 0; a < classes.size(); ++a)
        for (std::size_t b = a + 1; b < classes.size(); ++b) {
            const double se = std::sqrt(
                (stats[a].stddev * stats[a].stddev +
                 stats[b].stddev * stats[b].stddev) /
                static_cast<double>(observation_traces));
            if (std::abs(stats[a].mean - stats[b].mean) < 3.0 * se)
                study.indistinguishable.emplace_back(study.labels[a],
                                                     study.labels[b]);
        }

    const std::size_t k = classes.size();
    study.confusion.assign(k, std::vector<std::size_t>(k, 0));
    for (std::size_t j = 0; j < trials; ++j) {
        const std::size_t actual = j % k;
        const auto observed = values_of(run_experiment(
            microbench_victim(classes[actual].spec), observation_traces,
            derive_seed(env.master_seed, {tag("fp-trial"), j}), env));
        const auto predicted = index.at(workload_fingerprint(training, observed));
        study.confusion[actual][predicted]++;
        study.trials++;
        study.correct += predicted == actual;
    }
    return study;
}

} // namespace spikelab
