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

#include "spikelab/acquisition.hpp"

#include "spikelab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace spikelab {

void Trace::validate() const {
    if (!(dt_s > 0.0) || !std::isfinite(dt_s))
        throw DomainError("trace dt_s must be finite and > 0");
    for (double v : samples)
        if (!std::isfinite(v))
            throw DomainError("trace contains a non-finite sample");
}

Trace smooth(const Trace &trace, std::size_t window) {
    if (window == 0)
        throw DomainError("smooth: window must be >= 1");

    Trace out{trace.dt_s, std::vector<double>(trace.samples.size())};
    const auto &in = trace.samples;
    // Each window is summed directly: O(n * window), but free of the drift
    // a running sum accumulates. The clamp keeps a rounded mean inside the
    // window's range, so constant stretches come out exactly constant.
    for (std::size_t i = 0; i < in.size(); ++i) {
        const std::size_t count = std::min(i + 1, window);
        double sum = 0.0;
        double lo = in[i];
        double hi = in[i];
        for (std::size_t j = i + 1 - count; j <= i; ++j) {
            sum += in[j];
            lo = std::min(lo, in[j]);
            hi = std::max(hi, in[j]);
        }
        out.samples[i] = std::clamp(sum / static_cast<double>(count), lo, hi);
    }
    return out;
}

Peak find_peak(std::span<const double> samples) {
    if (samples.empty())
        throw DomainError("find_peak: empty trace");
    const auto it = std::max_element(samples.begin(), samples.end());
    return Peak{static_cast<std::size_t>(it - samples.begin()), *it};
}

double mean(std::span<const double> values) {
    if (values.empty())
        throw DomainError("mean of an empty set");
    return std::accumulate(values.begin(), values.end(), 0.0) /
           static_cast<double>(values.size());
}

double mean_peak(std::span<const PeakSample> peaks) {
    if (peaks.empty())
        throw DomainError("mean_peak: empty peak set");
    double sum = 0.0;
    for (const auto &p : peaks)
        sum += p.value;
    return sum / static_cast<double>(peaks.size());
}

Summary summarize(std::span<const double> values) {
    Summary s;
    s.n = values.size();
    s.mean = mean(values);
    if (s.n > 1) {
        double ss = 0.0;
        for (double v : values)
            ss += (v - s.mean) * (v - s.mean);
        s.stddev = std::sqrt(ss / static_cast<double>(s.n - 1));
        s.std_error = s.stddev / std::sqrt(static_cast<double>(s.n));
    }
    return s;
}

std::vector<double> values_of(std::span<const PeakSample> peaks) {
    std::vector<double> v;
    v.reserve(peaks.size());
    for (const auto &p : peaks)
        v.push_back(p.value);
    return v;
}

Summary summarize(std::span<const PeakSample> peaks) {
    const auto v = values_of(peaks);
    return summarize(std::span<const double>(v));
}

Density density(std::span<const double> values, std::size_t n_bins) {
    if (n_bins == 0)
        throw DomainError("density: n_bins must be >= 1");
    if (values.empty())
        throw DomainError("density: empty sample set");
    const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
    const double lo = *lo_it;
    const double hi = *hi_it;
    if (!(hi > lo))
        throw DomainError("density: degenerate support, all values identical");

    Density d;
    const double width = (hi - lo) / static_cast<double>(n_bins);
    d.bin_edges.resize(n_bins + 1);
    for (std::size_t i = 0; i <= n_bins; ++i)
        d.bin_edges[i] = lo + width * static_cast<double>(i);
    d.bin_edges.back() = hi;

    std::vector<std::size_t> counts(n_bins, 0);
    for (double v : values) {
        auto bin = static_cast<std::size_t>((v - lo) / width);
        counts[std::min(bin, n_bins - 1)]++;
    }
    d.probabilities.resize(n_bins);
    const double norm = static_cast<double>(values.size()) * width;
    for (std::size_t i = 0; i < n_bins; ++i)
        d.probabilities[i] = static_cast<double>(counts[i]) / norm;
    return d;
}

double separation(std::span<const PeakSample> a, std::span<const PeakSample> b) {
    return mean_peak(a) - mean_peak(b);
}

} // namespace spikelab
