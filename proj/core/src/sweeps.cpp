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

#include "spikelab/sweeps.hpp"

#include "spikelab/errors.hpp"

#include <string>

namespace spikelab {

Experiment parse_experiment(std::string_view name) {
    if (name == "fig7")
        return Experiment::Fig7;
    if (name == "fig9")
        return Experiment::Fig9;
    if (name == "fig11")
        return Experiment::Fig11;
    if (name == "fig13")
        return Experiment::Fig13;
    throw DomainError("unknown experiment \"" + std::string(name) +
                      "\" (expected fig7, fig9, fig11 or fig13)");
}

std::string_view name_of(Experiment e) noexcept {
    switch (e) {
    case Experiment::Fig7:
        return "fig7";
    case Experiment::Fig9:
        return "fig9";
    case Experiment::Fig11:
        return "fig11";
    case Experiment::Fig13:
        return "fig13";
    }
    return "?";
}

namespace {

struct Planned {
    double x;
    std::string label;
    MicrobenchSpec spec;
};

std::vector<Planned> plan(Experiment e, const SweepConfig &c) {
    std::vector<Planned> out;
    switch (e) {
    case Experiment::Fig7:
        for (unsigned h : c.hwt_grid)
            out.push_back({double(h), "const_loop", ConstLoop{c.loop_itr, h}});
        break;
    case Experiment::Fig9:
        for (unsigned hv : c.hwt_grid)
            for (unsigned hl : c.hwt_grid)
                out.push_back({double(hl), "hwt_value=" + std::to_string(hv),
                               HwtLoop{hl, hv, c.loop_itr}});
        break;
    case Experiment::Fig11:
        for (unsigned hv : c.hwt_grid)
            for (unsigned s : c.shift_grid)
                out.push_back({double(s), "hwt_value=" + std::to_string(hv),
                               HdLoop{s, hv, c.loop_itr}});
        break;
    case Experiment::Fig13:
        for (auto n : c.iteration_grid) {
            out.push_back({double(n), "hwt-cold", HwtLoop{0, 0, n}});
            out.push_back({double(n), "hwt-hot", HwtLoop{64, 64, n}});
            out.push_back({double(n), "hd-cold", HdLoop{2, 0, n}});
            out.push_back({double(n), "hd-hot", HdLoop{20, 64, n}});
        }
        break;
    }
    return out;
}

} // namespace

std::vector<SweepPoint> run_sweep(Experiment experiment, const AttackEnv &env,
                                  std::size_t traces_per_point,
                                  std::uint64_t seed,
                                  const SweepConfig &config) {
    const auto points = plan(experiment, config);
    const std::uint64_t exp_tag = tag(name_of(experiment));
    std::vector<SweepPoint> out;
    out.reserve(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto &p = points[i];
        const auto peaks = run_experiment(microbench_victim(p.spec), traces_per_point,
                                          derive_seed(seed, {exp_tag, i}), env, p.label);
        out.push_back({p.x, p.label, summarize(peaks)});
    }
    return out;
}

} // namespace spikelab
