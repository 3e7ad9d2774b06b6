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

#include "commands.hpp"

#include "spikelab/acquisition.hpp"
#include "spikelab/aes.hpp"
#include "spikelab/aes_attack.hpp"
#include "spikelab/errors.hpp"
#include "spikelab/fingerprint.hpp"
#include "spikelab/manifest.hpp"
#include "spikelab/rng.hpp"
#include "spikelab/sike_attack.hpp"
#include "spikelab/sike_model.hpp"
#include "spikelab/sweeps.hpp"
#include "spikelab/trace_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ostream>
#include <set>
#include <sstream>
#include <string_view>
#include <vector>

namespace spikelab::app {

namespace fs = std::filesystem;

namespace {

// Config file (or defaults), then command-line overrides. Only options
// that change output bytes end up in the manifest; workers never do.
ExperimentManifest load(const CommonOptions &opt, std::size_t default_traces) {
    ExperimentManifest m;
    if (opt.config) {
        m = read_config(*opt.config);
    } else {
        m.attack.n_traces = default_traces;
    }
    if (opt.seed)
        m.master_seed = *opt.seed;
    if (opt.traces) {
        if (*opt.traces == 0)
            throw ConfigError("--traces must be >= 1");
        m.attack.n_traces = *opt.traces;
    }
    return m;
}

void prepare_out(const fs::path &dir) {
    fs::create_directories(dir);
}

void save(const fs::path &path, const std::string &content) {
    io::write_file_atomic(path, content);
}

void save_manifest(const fs::path &dir, const ExperimentManifest &m) {
    write_manifest(m, dir / "manifest.txt");
}

std::string num(double v) { return io::format_number(v); }

double parse_double(std::string_view text, std::string_view what) {
    double v = 0.0;
    const auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc{} || p != text.data() + text.size() ||
        !std::isfinite(v))
        throw ConfigError("bad " + std::string(what) + ": \"" + std::string(text) + "\"");
    return v;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const auto pos = text.find(sep, start);
        parts.push_back(text.substr(start, pos - start));
        if (pos == std::string_view::npos)
            break;
        start = pos + 1;
    }
    return parts;
}

// SIKE key from --key. A hex key fixes the length unless --key-bits is
// given, in which case the hex must cover exactly that many bits with
// zero padding in the last digit.
sike::Key resolve_sike_key(const SikeOptions &opt, ExperimentManifest &m,
                           std::ostream &log) {
    if (opt.key_bits)
        m.attack.sike_key_bits = *opt.key_bits;
    if (opt.key == "random") {
        if (m.attack.sike_key_bits < 2)
            throw ConfigError("--key-bits must be >= 2");
        Rng rng(derive_seed(m.master_seed, {tag("sike-key")}));
        return sike::random_key(m.attack.sike_key_bits, rng);
    }
    auto key = sike::parse_key_hex(opt.key);
    if (opt.key_bits) {
        const std::size_t bits = *opt.key_bits;
        if (bits < 2 || (bits + 3) / 4 != opt.key.size())
            throw ConfigError("--key has " + std::to_string(opt.key.size()) +
                              " hex digits, --key-bits " + std::to_string(bits) +
                              " needs " + std::to_string((bits + 3) / 4));
        if (std::any_of(key.bits.begin() + static_cast<std::ptrdiff_t>(bits),
                        key.bits.end(), [](auto b) { return b != 0; }))
            throw ConfigError("--key sets bits beyond --key-bits");
        key.bits.resize(bits);
    }
    m.attack.sike_key_bits = key.size();
    if (key[0] != 0)
        log << "warning: key bit 0 is 1; recovery fixes bit 0 to 0, so at "
               "most "
            << key.size() - 1 << " bits can match\n";
    return key;
}

std::string sike_bits_csv(const SikeAttackReport &r, const sike::Key &truth) {
    std::ostringstream os;
    os << "bit,mean_value_1_v,mean_value_2_v,recovered,true\n";
    for (const auto &b : r.per_bit)
        os << b.bit << ',' << num(b.mean_value_1) << ',' << num(b.mean_value_2)
           << ',' << int(b.recovered) << ',' << int(truth[b.bit]) << '\n';
    return os.str();
}

int finish_sike(std::string_view command, const SikeOptions &opt,
                const ExperimentManifest &m, const sike::Key &truth,
                const SikeAttackReport &r, std::string_view limit_name,
                std::ostream &log) {
    const sike::Key recovered{r.recovered_bits};
    const std::size_t matching = r.matching_bits(truth);
    const bool full = matching == truth.size();

    std::ostringstream rep;
    rep << "command: " << command << '\n'
        << "master_seed: " << m.master_seed << '\n'
        << "key_bits: " << truth.size() << '\n'
        << "traces_per_hypothesis: " << m.attack.n_traces << '\n';
    if (command == "sike-attack")
        rep << "iterations: " << m.attack.sike_iterations << '\n';
    rep << limit_name << "_v: " << num(r.sep_limit) << '\n'
        << "true_key: " << sike::to_hex(truth) << '\n'
        << "recovered_key: " << sike::to_hex(recovered) << '\n'
        << "recovered_bits: " << sike::to_bit_string(r.recovered_bits) << '\n'
        << "recovered " << matching << '/' << truth.size() << '\n'
        << "match: " << (full ? "yes" : "no") << '\n'
        << "traces_consumed: " << r.traces_consumed << '\n';

    save(opt.out / "sike_bits.csv", sike_bits_csv(r, truth));
    save(opt.out / "report.txt", rep.str());
    save_manifest(opt.out, m);
    log << "recovered " << matching << '/' << truth.size() << " bits\n";
    return full ? kSuccess : kPartial;
}

std::vector<std::size_t> parse_targets(const std::string &text) {
    std::vector<std::size_t> targets;
    if (text == "all") {
        for (std::size_t i = 0; i < 16; ++i)
            targets.push_back(i);
        return targets;
    }
    std::set<std::size_t> seen;
    for (auto part : split(text, ',')) {
        std::size_t t = 0;
        const auto [p, ec] = std::from_chars(part.data(), part.data() + part.size(), t);
        if (part.empty() || ec != std::errc{} || p != part.data() + part.size() || t > 15)
            throw ConfigError("--targets entries must be 0..15, got \"" +
                              std::string(part) + "\"");
        if (!seen.insert(t).second)
            throw ConfigError("--targets repeats byte " + std::to_string(t));
        targets.push_back(t);
    }
    return targets;
}

std::string hex_byte(std::uint8_t b) {
    const std::uint8_t one[1] = {b};
    return aes::to_hex(one);
}

} // namespace

int model_sweep(const SweepOptions &opt, std::ostream &log) {
    const Experiment exp = parse_experiment(opt.experiment);
    auto m = load(opt, 1000);
    m.victim = "none";
    const auto env = m.to_env(opt.workers);
    prepare_out(opt.out);

    const auto points = run_sweep(exp, env, m.attack.n_traces, m.master_seed);
    std::ostringstream os;
    os << "x,label,mean_peak_v,n\n";
    for (const auto &p : points)
        os << num(p.x) << ',' << p.label << ',' << num(p.stats.mean) << ','
           << p.stats.n << '\n';

    const std::string name(name_of(exp));
    save(opt.out / (name + ".csv"), os.str());
    save_manifest(opt.out, m);
    log << "wrote " << points.size() << " points to "
        << (opt.out / (name + ".csv")).string() << '\n';
    return kSuccess;
}

int sike_poc(const SikeOptions &opt, std::ostream &log) {
    auto m = load(opt, 200);
    m.victim = "sike";
    const auto key = resolve_sike_key(opt, m, log);
    const auto env = m.to_env(opt.workers);
    const double threshold = opt.sep_limit == "auto"
                                 ? poc_threshold(env, key.size())
                                 : parse_double(opt.sep_limit, "--sep-limit");
    prepare_out(opt.out);
    const auto report = sike_poc_attack(key, env, threshold);
    return finish_sike("sike-poc", opt, m, key, report, "threshold", log);
}

int sike_attack(const SikeOptions &opt, std::ostream &log) {
    auto m = load(opt, 200);
    m.victim = "sike";
    if (opt.iterations) {
        if (*opt.iterations == 0)
            throw ConfigError("--iterations must be >= 1");
        m.attack.sike_iterations = *opt.iterations;
    }
    const auto key = resolve_sike_key(opt, m, log);
    const auto env = m.to_env(opt.workers);

    double limit = 0.0;
    if (opt.sep_limit == "auto") {
        // Calibrate on a probe key the attacker controls: a fresh random
        // key of the same length, independent of the target.
        Rng rng(derive_seed(m.master_seed, {tag("sike-probe-key")}));
        const auto probe = sike::random_key(key.size(), rng);
        try {
            limit = calibrate_sep_limit(env, probe, m.attack.sike_iterations);
        } catch (const std::exception &e) {
            throw ConfigError(std::string(e.what()) +
                              "; or pass an explicit --sep-limit V");
        }
        log << "calibrated SEP_LIMIT = " << num(limit) << " V\n";
    } else {
        limit = parse_double(opt.sep_limit, "--sep-limit");
    }
    prepare_out(opt.out);
    const auto report = spikelab::sike_attack(key, env, limit, m.attack.sike_iterations);
    return finish_sike("sike-attack", opt, m, key, report, "sep_limit", log);
}

int aes_attack(const AesOptions &opt, std::ostream &log) {
    auto m = load(opt, 200);
    m.victim = "aes";
    if (opt.enc_per_trace) {
        if (*opt.enc_per_trace == 0)
            throw ConfigError("--enc-per-trace must be >= 1");
        m.attack.enc_per_trace = *opt.enc_per_trace;
    }
    aes::Key key{};
    if (opt.key == "random") {
        Rng rng(derive_seed(m.master_seed, {tag("aes-key")}));
        key = aes::random_block(rng);
    } else {
        try {
            key = aes::parse_hex(opt.key);
        } catch (const std::exception &e) {
            throw ConfigError(std::string("--key: ") + e.what());
        }
    }
    const auto targets = parse_targets(opt.targets);
    std::vector<double> multipliers;
    if (!opt.noise_sweep.empty())
        for (auto part : split(opt.noise_sweep, ','))
            multipliers.push_back(parse_double(part, "--noise-sweep multiplier"));

    const auto env = m.to_env(opt.workers);
    prepare_out(opt.out);
    const auto report = spikelab::aes_attack(key, env, targets, m.attack.enc_per_trace);

    for (const auto &b : report.bytes) {
        std::ostringstream os;
        os << "guess,mean_peak_v\n";
        for (std::size_t g = 0; g < 256; ++g)
            os << g << ',' << num(b.means[g]) << '\n';
        save(opt.out / ("aes_byte_" + std::to_string(b.target) + ".csv"), os.str());
    }

    const auto true_round10 = aes::expand_key(key).round10();
    const std::size_t unrecovered = 16 - report.correct_bytes;
    std::ostringstream rep;
    rep << "command: aes-attack\n"
        << "master_seed: " << m.master_seed << '\n'
        << "traces_per_guess: " << m.attack.n_traces << '\n'
        << "encryptions_per_trace: " << m.attack.enc_per_trace << '\n'
        << "true_key: " << aes::to_hex(key) << '\n'
        << "true_round10_key: " << aes::to_hex(true_round10) << '\n';
    for (const auto &b : report.bytes)
        rep << "byte " << b.target << ": chosen 0x" << hex_byte(b.chosen)
            << " true 0x" << hex_byte(b.true_byte) << " rank_of_true "
            << b.rank_of_true << " margin_v " << num(b.margin)
            << (b.correct() ? " ok" : " WRONG") << '\n';
    std::string r10;
    for (const auto &byte : report.round10)
        r10 += byte ? hex_byte(*byte) : std::string("??");
    rep << "recovered_round10_key: " << r10 << '\n'
        << "recovered " << report.correct_bytes << "/16 round-10 bytes ("
        << report.correct_bytes << '/' << targets.size() << " targeted)\n";
    if (report.master_key) {
        rep << "master_key: " << aes::to_hex(*report.master_key) << '\n'
            << "master_key_match: " << (*report.master_key == key ? "yes" : "no")
            << '\n';
    }
    rep << "key search complexity reduced from 2^128 to 2^" << 8 * unrecovered
        << '\n'
        << "traces_consumed: " << report.traces_consumed << '\n';

    if (!multipliers.empty()) {
        const auto rows =
            aes_noise_sweep(key, env, targets, m.attack.enc_per_trace, multipliers);
        std::ostringstream os;
        os << "sigma_noise_v,targets,correct,worst_rank\n";
        for (const auto &r : rows)
            os << num(r.sigma_noise) << ',' << r.targets << ',' << r.correct
               << ',' << r.worst_rank << '\n';
        save(opt.out / "noise_sweep.csv", os.str());
        rep << "noise sweep: see noise_sweep.csv\n";
    }

    save(opt.out / "report.txt", rep.str());
    save_manifest(opt.out, m);

    bool all_targets_ok = true;
    for (const auto &b : report.bytes)
        all_targets_ok = all_targets_ok && b.correct();
    log << "recovered " << report.correct_bytes << '/' << targets.size()
        << " targeted bytes\n";
    return all_targets_ok ? kSuccess : kPartial;
}

int workload_id(const WorkloadOptions &opt, std::ostream &log) {
    if (opt.trials == 0 || opt.observation_traces == 0)
        throw ConfigError("--trials and --obs-traces must be >= 1");
    auto m = load(opt, 200);
    m.victim = "workload";
    const auto classes = default_workloads(opt.classes);
    const auto env = m.to_env(opt.workers);
    prepare_out(opt.out);
    const auto study = fingerprint_study(env, classes, opt.trials, opt.observation_traces);

    std::ostringstream os;
    os << "actual";
    for (const auto &l : study.labels)
        os << ',' << l;
    os << '\n';
    for (std::size_t a = 0; a < study.labels.size(); ++a) {
        os << study.labels[a];
        for (auto c : study.confusion[a])
            os << ',' << c;
        os << '\n';
    }
    save(opt.out / "confusion.csv", os.str());

    std::ostringstream rep;
    rep << "command: workload-id\n"
        << "master_seed: " << m.master_seed << '\n'
        << "classes: " << study.labels.size() << '\n'
        << "training_traces_per_class: " << m.attack.n_traces << '\n'
        << "observation_traces: " << opt.observation_traces << '\n'
        << "trials: " << study.trials << '\n'
        << "correct: " << study.correct << '\n'
        << "accuracy: " << num(study.accuracy()) << '\n';
    for (std::size_t i = 0; i < classes.size(); ++i)
        rep << "class " << classes[i].label << ": " << to_string(classes[i].spec) << '\n';
    for (const auto &[a, b] : study.indistinguishable)
        rep << "indistinguishable: " << a << " / " << b << '\n';
    save(opt.out / "report.txt", rep.str());
    save_manifest(opt.out, m);
    log << "accuracy " << study.correct << '/' << study.trials << '\n';
    return kSuccess;
}

int ingest(const IngestOptions &opt, std::ostream &log) {
    if (opt.smooth == 0)
        throw ConfigError("--smooth must be >= 1");
    // Everything that can fail on bad input happens before any write.
    const Trace raw = io::read_oscilloscope_csv(opt.in);
    const Trace smoothed = smooth(raw, opt.smooth);
    const Peak peak = find_peak(smoothed);

    const fs::path peaks_path = opt.out / "peaks.csv";
    std::vector<PeakSample> peaks;
    if (fs::exists(peaks_path))
        peaks = io::read_peaks(peaks_path);
    std::uint64_t next_id = 0;
    for (const auto &p : peaks)
        next_id = std::max(next_id, p.seed_index + 1);

    PeakSample row;
    row.value = peak.value;
    row.label = opt.label.empty() ? opt.in.stem().string() : opt.label;
    row.seed_index = next_id;
    peaks.push_back(row);

    std::ostringstream os;
    io::write_peaks(peaks, os);
    prepare_out(opt.out);
    save(peaks_path, os.str());
    log << "run_id " << row.seed_index << ": peak " << num(peak.value)
        << " V at sample " << peak.index << " (" << raw.samples.size()
        << " samples, dt " << num(raw.dt_s) << " s)\n";
    return kSuccess;
}

} // namespace spikelab::app
