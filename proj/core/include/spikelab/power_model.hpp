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

// CMOS power decomposition, temperature dependent leakage and the lumped
// RC thermal network that couples them.

#include <cstdint>
#include <span>
#include <vector>

namespace spikelab {

/// Switching activity of one simulation step.
struct ActivitySample {
    std::uint64_t hwt_bits = 0; ///< one-bits written
    std::uint64_t hd_bits = 0;  ///< bits toggled

    friend bool operator==(const ActivitySample &,
                           const ActivitySample &) = default;
};

/// One sample per executed loop iteration (or ladder round, or encryption).
using ActivityProfile = std::vector<ActivitySample>;

/// Electrical parameters. Leakage follows
///   I_leak(T) = i_leak_scale * T^2 * exp(-theta_leak / T)
/// where theta_leak folds V_th, n and q/k into one activation temperature.
struct CmosParams {
    double v_dd = 5.0;          ///< V
    double i_leak_scale = 1e-9; ///< A/K^2
    double theta_leak = 600.0;  ///< K
    double alpha_hwt = 1e-5;    ///< W per written one-bit
    double alpha_hd = 1e-5;     ///< W per toggled bit
    double p_short = 0.05;      ///< W, short-circuit plus baseline

    /// Throws ConfigError unless every field is positive (p_short >= 0).
    void validate() const;

    friend bool operator==(const CmosParams &, const CmosParams &) = default;
};

struct ThermalParams {
    double c_th = 1.0;    ///< J/K
    double r_th = 5.0;    ///< K/W
    double t_amb = 300.0; ///< K

    void validate() const;
    double time_constant() const noexcept { return c_th * r_th; }

    friend bool operator==(const ThermalParams &,
                           const ThermalParams &) = default;
};

struct ThermalState {
    double t = 300.0; ///< K
};

double dynamic_power(const ActivitySample &sample,
                     const CmosParams &params) noexcept;

/// Throws DomainError for t <= 0 or non-finite t.
double leakage_power(double t, const CmosParams &params);

double total_power(const ActivitySample &sample, double t,
                   const CmosParams &params);

/// One explicit Euler step of C dT/dt = P - (T - T_amb)/R.
/// Requires 0 < dt < C*R, otherwise throws ConfigError.
ThermalState thermal_step(ThermalState state, double p_total,
                          const ThermalParams &tp, double dt);

struct ThermalRun {
    ThermalState final_state;
    std::vector<double> power; ///< total power of every step, W
};

/// Folds thermal_step over the activity, recomputing leakage from the
/// temperature reached by the previous step.
ThermalRun simulate_thermal(std::span<const ActivitySample> activity,
                            const CmosParams &cp, const ThermalParams &tp,
                            double dt, double t0);

/// Same fold without recording the power series.
ThermalState simulate_thermal_final(std::span<const ActivitySample> activity,
                                    const CmosParams &cp,
                                    const ThermalParams &tp, double dt,
                                    double t0);

} // namespace spikelab
