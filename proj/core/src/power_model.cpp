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

#include "spikelab/power_model.hpp"

#include "spikelab/errors.hpp"

#include <cmath>
#include <string>

namespace spikelab {

namespace {

void require_positive(double v, const char *name) {
    if (!(v > 0.0) || !std::isfinite(v))
        throw ConfigError(std::string(name) + " must be finite and > 0");
}

void check_step(const ThermalParams &tp, double dt) {
    if (!(dt > 0.0) || !(dt < tp.time_constant()))
        throw ConfigError("thermal step dt=" + std::to_string(dt) +
                          " outside (0, c_th*r_th=" +
                          std::to_string(tp.time_constant()) + ")");
}

} // namespace

void CmosParams::validate() const {
    require_positive(v_dd, "cmos.v_dd");
    require_positive(i_leak_scale, "cmos.i_leak_scale");
    require_positive(theta_leak, "cmos.theta_leak");
    require_positive(alpha_hwt, "cmos.alpha_hwt");
    require_positive(alpha_hd, "cmos.alpha_hd");
    if (!(p_short >= 0.0) || !std::isfinite(p_short))
        throw ConfigError("cmos.p_short must be finite and >= 0");
}

void ThermalParams::validate() const {
    require_positive(c_th, "thermal.c_th");
    require_positive(r_th, "thermal.r_th");
    require_positive(t_amb, "thermal.t_amb");
}

double dynamic_power(const ActivitySample &sample,
                     const CmosParams &params) noexcept {
    return params.alpha_hwt * static_cast<double>(sample.hwt_bits) +
           params.alpha_hd * static_cast<double>(sample.hd_bits);
}

double leakage_power(double t, const CmosParams &params) {
    if (!(t > 0.0) || !std::isfinite(t))
        throw DomainError("leakage_power: temperature must be > 0 K, got " +
                          std::to_string(t));
    return params.v_dd * params.i_leak_scale * t * t *
           std::exp(-params.theta_leak / t);
}

double total_power(const ActivitySample &sample, double t,
                   const CmosParams &params) {
    return dynamic_power(sample, params) + leakage_power(t, params) +
           params.p_short;
}

ThermalState thermal_step(ThermalState state, double p_total,
                          const ThermalParams &tp, double dt) {
    check_step(tp, dt);
    const double flow = (state.t - tp.t_amb) / tp.r_th;
    return ThermalState{state.t + (dt / tp.c_th) * (p_total - flow)};
}

ThermalRun simulate_thermal(std::span<const ActivitySample> activity,
                            const CmosParams &cp, const ThermalParams &tp,
                            double dt, double t0) {
    if (!(t0 > 0.0))
        throw DomainError("simulate_thermal: t0 must be > 0 K");
    check_step(tp, dt);

    ThermalRun run{ThermalState{t0}, {}};
    run.power.reserve(activity.size());
    for (const auto &sample : activity) {
        const double p = total_power(sample, run.final_state.t, cp);
        run.power.push_back(p);
        run.final_state = thermal_step(run.final_state, p, tp, dt);
    }
    return run;
}

ThermalState simulate_thermal_final(std::span<const ActivitySample> activity,
                                    const CmosParams &cp,
                                    const ThermalParams &tp, double dt,
                                    double t0) {
    if (!(t0 > 0.0))
        throw DomainError("simulate_thermal: t0 must be > 0 K");
    check_step(tp, dt);

    // Inlined step: this loop dominates attack run time.
    const double gain = dt / tp.c_th;
    double t = t0;
    for (const auto &sample : activity) {
        const double p = total_power(sample, t, cp);
        t += gain * (p - (t - tp.t_amb) / tp.r_th);
    }
    return ThermalState{t};
}

} // namespace spikelab
