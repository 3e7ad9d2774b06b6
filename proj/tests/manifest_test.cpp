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

#include "spikelab/errors.hpp"
#include "spikelab/manifest.hpp"

#include <gtest/gtest.h>

#include <sstream>

namespace spikelab {
namespace {

ExperimentManifest sample() {
    ExperimentManifest m;
    m.master_seed = 123456789012345ULL;
    m.created = "2026-10-18";
    m.victim = "hwt_loop(hwt_value_loop=32,hwt_value=0,loop_itr=100)";
    m.cmos.alpha_hwt = 3.3e-6;
    m.thermal.r_th = 4.2;
    m.spike.sigma_noise = 0.1 / 3.0;
    m.attack.n_traces = 77;
    m.attack.enc_per_trace = 150000;
    return m;
}

std::string text_of(const ExperimentManifest &m) {
    std::ostringstream os;
    write_manifest(m, os);
    return os.str();
}

TEST(Manifest, RoundTripIsLossless) {
    const auto m = sample();
    std::istringstream in(text_of(m));
    EXPECT_EQ(read_manifest(in), m);
}

TEST(Manifest, OneKeyPerLineInFixedOrder) {
    const auto text = text_of(sample());
    std::istringstream in(text);
    std::string line;
    std::size_t i = 0;
    while (std::getline(in, line)) {
        ASSERT_LT(i, manifest_keys().size());
        EXPECT_EQ(line.rfind(manifest_keys()[i] + " = ", 0), 0u) << line;
        ++i;
    }
    EXPECT_EQ(i, manifest_keys().size());
    EXPECT_EQ(text, text_of(sample()));
}

TEST(Manifest, MissingSeedIsNamed) {
    std::string text = text_of(sample());
    text.erase(0, text.find('\n') + 1);
    std::istringstream in(text);
    try {
        read_manifest(in);
        FAIL();
    } catch (const ConfigError &e) {
        EXPECT_STREQ(e.what(), "missing key: master_seed");
    }
}

TEST(Manifest, UnknownAndDuplicateKeysRejected) {
    {
        std::istringstream in(text_of(sample()) + "spike.gain = 2\n");
        EXPECT_THROW(read_manifest(in), ConfigError);
    }
    {
        std::istringstream in(text_of(sample()) + "master_seed = 5\n");
        EXPECT_THROW(read_manifest(in), ConfigError);
    }
}

TEST(Manifest, BadValuesRejected) {
    for (const char *line : {"spike.beta0 = nan", "attack.n_traces = -1", "thermal.r_th = abc",
                             "victim = fast_loop(x=1)", "attack.n_traces = 0"}) {
        std::istringstream in(std::string("master_seed = 1\n") + line + "\n");
        EXPECT_THROW(read_config(in), ConfigError) << line;
    }
}

TEST(Config, OverlaysDefaultsButNeedsSeed) {
    std::istringstream in("# comment\n\nmaster_seed = 9\nspike.sigma_noise = 0\n");
    const auto m = read_config(in);
    EXPECT_EQ(m.master_seed, 9u);
    EXPECT_EQ(m.spike.sigma_noise, 0.0);
    EXPECT_EQ(m.cmos, CmosParams{});
    std::istringstream no_seed("spike.sigma_noise = 0\n");
    EXPECT_THROW(read_config(no_seed), ConfigError);
}

TEST(Manifest, EnvCarriesEveryKnob) {
    const auto m = sample();
    const auto env = m.to_env(3);
    EXPECT_EQ(env.cmos, m.cmos);
    EXPECT_EQ(env.thermal, m.thermal);
    EXPECT_EQ(env.spike, m.spike);
    EXPECT_EQ(env.master_seed, m.master_seed);
    EXPECT_EQ(env.n_traces, 77u);
    EXPECT_EQ(env.workers, 3u);
}

} // namespace
} // namespace spikelab
