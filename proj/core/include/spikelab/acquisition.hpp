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

// Signal processing shared by synthetic and ingested traces.

#include "spikelab/trace.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace spikelab {

/// Causal running mean: out[i] = mean(in[max(0, i-window+1) ..= i]).
/// Throws DomainError for window == 0.
Trace smooth(const Trace &trace, std::size_t window);

struct Peak {
    std::size_t index = 0;
    double value = 0.0;
};

/// Maximum sample, first occurrence on ties. Throws DomainError if empty.
Peak find_peak(std::span<const double> samples);
inline Peak find_peak(const Trace &trace) { return find_peak(trace.samples); }

/// Throws DomainError if empty.
double mean(std::span<const double> values);
double mean_peak(std::span<const PeakSample> peaks);

struct Summary {
    std::size_t n = 0;
    double mean = 0.0;
    double stddev = 0.0;   ///< sample standard deviation (n-1)
    double std_error = 0.0; ///< stddev / sqrt(n)
};

Summary summarize(std::span<const double> values);
Summary summarize(std::span<const PeakSample> peaks);

std::vector<double> values_of(std::span<const PeakSample> peaks);

/// Equal-width histogram normalized to unit integral.
struct Density {
    std::vector<double> bin_edges;     ///< n_bins + 1 ascending edges, V
    std::vector<double> probabilities; ///< per-bin density, 1/V

    double bin_width() const {
        return bin_edges.size() < 2 ? 0.0 : bin_edges[1] - bin_edges[0];
    }
};

/// Histogram over [min, max]. Throws DomainError when n_bins == 0 or all
/// values are identical.
Density density(std::span<const double> values, std::size_t n_bins);

/// mean_peak(a) - mean_peak(b).
double separation(std::span<const PeakSample> a, std::span<const PeakSample> b);

} // namespace spikelab
