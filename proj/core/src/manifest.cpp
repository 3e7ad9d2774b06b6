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

#include "spikelab/manifest.hpp"

#include "spikelab/errors.hpp"
#include "spikelab/microbench.hpp"
#include "spikelab/trace_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace spikelab {

namespace {

using Getter = std::function<std::string(const ExperimentManifest &)>;
using Setter = std::function<void(ExperimentManifest &, const std::string &)>;

struct Field {
    std::string key;
    Getter get;
    Setter set;
};

double to_double(const std::string &key, const std::string &v) {
    double out = 0.0;
    const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (v.empty() || ec != std::errc{} || p != v.data() + v.size() ||
        !std::isfinite(out))
        throw ConfigError("bad value for " + key + ": \"" + v + "\"");
    return out;
}

std::uint64_t to_u64(const std::string &key, const std::string &v) {
    std::uint64_t out = 0;
    const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (v.empty() || ec != std::errc{} || p != v.data() + v.size())
        throw ConfigError("bad value for " + key + ": \"" + v + "\"");
    return out;
}

template <typename M>
Field real(std::string key, M member) {
    return {key,
            [member](const ExperimentManifest &m) {
                return io::format_number(std::invoke(member, m));
            },
            [member, key](ExperimentManifest &m, const std::string &v) {
                std::invoke(member, m) = to_double(key, v);
            }};
}

template <typename M>
Field count(std::string key, M member) {
    return {key,
            [member](const ExperimentManifest &m) {
                return std::to_string(std::invoke(member, m));
            },
            [member, key](ExperimentManifest &m, const std::string &v) {
                std::invoke(member, m) =
                    static_cast<std::remove_reference_t<decltype(std::invoke(member, m))>>(
                        to_u64(key, v));
            }};
}

// Member accessors as lambdas so nested groups stay readable.
#define SPIKELAB_MEMBER(expr) [](auto &m) -> auto & { return m.expr; }

const std::vector<Field> &fields() {
    static const std::vector<Field> f = {
        count("master_seed", SPIKELAB_MEMBER(master_seed)),
        {"created", [](const ExperimentManifest &m) { return m.created; },
         [](ExperimentManifest &m, const std::string &v) { m.created = v; }},
        {"victim", [](const ExperimentManifest &m) { return m.victim; },
         [](ExperimentManifest &m, const std::string &v) {
             if (v != "none" && v != "sike" && v != "aes" && v != "workload")
                 parse_microbench(v);
             m.victim = v;
         }},
        real("cmos.v_dd", SPIKELAB_MEMBER(cmos.v_dd)),
        real("cmos.i_leak_scale", SPIKELAB_MEMBER(cmos.i_leak_scale)),
        real("cmos.theta_leak", SPIKELAB_MEMBER(cmos.theta_leak)),
        real("cmos.alpha_hwt", SPIKELAB_MEMBER(cmos.alpha_hwt)),
        real("cmos.alpha_hd", SPIKELAB_MEMBER(cmos.alpha_hd)),
        real("cmos.p_short", SPIKELAB_MEMBER(cmos.p_short)),
        real("thermal.c_th", SPIKELAB_MEMBER(thermal.c_th)),
        real("thermal.r_th", SPIKELAB_MEMBER(thermal.r_th)),
        real("thermal.t_amb", SPIKELAB_MEMBER(thermal.t_amb)),
        real("spike.beta0", SPIKELAB_MEMBER(spike.beta0)),
        real("spike.beta_ctx", SPIKELAB_MEMBER(spike.beta_ctx)),
        real("spike.beta_res", SPIKELAB_MEMBER(spike.beta_res)),
        real("spike.sigma_noise", SPIKELAB_MEMBER(spike.sigma_noise)),
        real("attack.dt", SPIKELAB_MEMBER(attack.dt)),
        count("attack.n_traces", SPIKELAB_MEMBER(attack.n_traces)),
        count("attack.sike_key_bits", SPIKELAB_MEMBER(attack.sike_key_bits)),
        count("attack.sike_iterations", SPIKELAB_MEMBER(attack.sike_iterations)),
        count("attack.enc_per_trace", SPIKELAB_MEMBER(attack.enc_per_trace)),
    };
    return f;
}

#undef SPIKELAB_MEMBER

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

ExperimentManifest parse(std::istream &in, bool require_all) {
    std::map<std::string, const Field *, std::less<>> by_key;
    for (const auto &f : fields())
        by_key.emplace(f.key, &f);

    ExperimentManifest m;
    std::map<std::string, bool, std::less<>> seen;
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        const auto line = trim(raw);
        if (line.empty() || line.front() == '#')
            continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError("line " + std::to_string(lineno) +
                              ": expected `key = value`");
        const std::string key(trim(line.substr(0, eq)));
        const std::string value(trim(line.substr(eq + 1)));
        const auto it = by_key.find(key);
        if (it == by_key.end())
            throw ConfigError("unknown key: " + key);
        if (seen[key])
            throw ConfigError("duplicate key: " + key);
        seen[key] = true;
        it->second->set(m, value);
    }

    for (const auto &f : fields())
        if ((require_all || f.key == "master_seed") && !seen[f.key])
            throw ConfigError("missing key: " + f.key);

    m.to_env().validate();
    if (m.attack.sike_key_bits < 2)
        throw ConfigError("attack.sike_key_bits must be >= 2");
    if (m.attack.sike_iterations == 0)
        throw ConfigError("attack.sike_iterations must be >= 1");
    if (m.attack.enc_per_trace == 0)
        throw ConfigError("attack.enc_per_trace must be >= 1");
    return m;
}

std::ifstream open(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config " + path.string());
    return in;
}

} // namespace

AttackEnv ExperimentManifest::to_env(unsigned workers) const {
    AttackEnv env;
    env.cmos = cmos;
    env.thermal = thermal;
    env.spike = spike;
    env.dt = attack.dt;
    env.master_seed = master_seed;
    env.n_traces = attack.n_traces;
    env.workers = workers;
    return env;
}

const std::vector<std::string> &manifest_keys() {
    static const std::vector<std::string> keys = [] {
        std::vector<std::string> k;
        for (const auto &f : fields())
            k.push_back(f.key);
        return k;
    }();
    return keys;
}

void write_manifest(const ExperimentManifest &m, std::ostream &out) {
    for (const auto &f : fields())
        out << f.key << " = " << f.get(m) << '\n';
}

void write_manifest(const ExperimentManifest &m, const std::filesystem::path &path) {
    std::ostringstream os;
    write_manifest(m, os);
    io::write_file_atomic(path, os.str());
}

ExperimentManifest read_manifest(std::istream &in) { return parse(in, true); }

ExperimentManifest read_manifest(const std::filesystem::path &path) {
    auto in = open(path);
    return parse(in, true);
}

ExperimentManifest read_config(std::istream &in) { return parse(in, false); }

ExperimentManifest read_config(const std::filesystem::path &path) {
    auto in = open(path);
    return parse(in, false);
}

} // namespace spikelab
