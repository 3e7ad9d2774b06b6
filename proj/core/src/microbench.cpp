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

#include "spikelab/microbench.hpp"

#include "spikelab/errors.hpp"

#include <charconv>
#include <map>
#include <numeric>

namespace spikelab {

namespace {

void check_weight(unsigned h, const char *name) {
    if (h > 64)
        throw DomainError(std::string(name) + " must be in 0..=64, got " +
                          std::to_string(h));
}

struct Validator {
    void operator()(const ConstLoop &s) const {
        check_weight(s.hwt_value, "hwt_value");
    }
    void operator()(const HwtLoop &s) const {
        check_weight(s.hwt_value_loop, "hwt_value_loop");
        check_weight(s.hwt_value, "hwt_value");
    }
    void operator()(const HdLoop &s) const {
        check_weight(s.hwt_value, "hwt_value");
        if (s.shift_value < 1 || s.shift_value > kMaxShift)
            throw DomainError("shift_value must be in 1..=20, got " +
                              std::to_string(s.shift_value));
    }
};

struct Runner {
    VictimOutput operator()(const ConstLoop &s) const {
        return {ActivityProfile(s.loop_itr, ActivitySample{}),
                RegisterSnapshot::filled(encode_hwt(s.hwt_value))};
    }

    // Every register already holds the loop value, so the OR writes never
    // flip a bit.
    VictimOutput operator()(const HwtLoop &s) const {
        const ActivitySample step{kOrWritesPerIteration * s.hwt_value_loop, 0};
        return {ActivityProfile(s.loop_itr, step),
                RegisterSnapshot::filled(encode_hwt(s.hwt_value))};
    }

    // Each iteration writes operand << shift and then shifts it back, so
    // every destination register toggles 2*shift bits per write.
    VictimOutput operator()(const HdLoop &s) const {
        const ActivitySample step{
            kShiftWritesPerIteration * hamming_weight(kShiftOperand),
            kShiftWritesPerIteration * 4ULL * s.shift_value};
        return {ActivityProfile(s.loop_itr, step),
                RegisterSnapshot::filled(encode_hwt(s.hwt_value))};
    }
};

std::map<std::string, std::uint64_t, std::less<>>
parse_fields(std::string_view body, std::string_view text) {
    std::map<std::string, std::uint64_t, std::less<>> out;
    while (!body.empty()) {
        const auto comma = body.find(',');
        std::string_view item = body.substr(0, comma);
        body = comma == std::string_view::npos ? std::string_view{}
                                               : body.substr(comma + 1);
        const auto eq = item.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError("malformed victim descriptor: " +
                              std::string(text));
        std::string_view value = item.substr(eq + 1);
        std::uint64_t v = 0;
        auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
        if (ec != std::errc{} || p != value.data() + value.size())
            throw ConfigError("non-numeric field in victim descriptor: " +
                              std::string(item));
        out.emplace(std::string(item.substr(0, eq)), v);
    }
    return out;
}

template <typename Map>
std::uint64_t take(Map &fields, const char *key, std::string_view text) {
    auto it = fields.find(key);
    if (it == fields.end())
        throw ConfigError(std::string("victim descriptor missing ") + key +
                          ": " + std::string(text));
    const auto v = it->second;
    fields.erase(it);
    return v;
}

unsigned narrow(std::uint64_t v, const char *key) {
    if (v > 1000)
        throw ConfigError(std::string(key) + " out of range");
    return static_cast<unsigned>(v);
}

} // namespace

std::uint64_t RegisterSnapshot::total_hwt() const noexcept {
    return std::accumulate(regs.begin(), regs.end(), std::uint64_t{0},
                           [](std::uint64_t acc, std::uint64_t w) {
                               return acc + hamming_weight(w);
                           });
}

std::uint64_t encode_hwt(unsigned h) {
    check_weight(h, "hwt");
    return h == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << h) - 1;
}

void validate(const MicrobenchSpec &spec) { std::visit(Validator{}, spec); }

VictimOutput execute(const MicrobenchSpec &spec) {
    validate(spec);
    return std::visit(Runner{}, spec);
}

std::string to_string(const MicrobenchSpec &spec) {
    struct Printer {
        std::string operator()(const ConstLoop &s) const {
            return "const_loop(loop_itr=" + std::to_string(s.loop_itr) +
                   ",hwt_value=" + std::to_string(s.hwt_value) + ")";
        }
        std::string operator()(const HwtLoop &s) const {
            return "hwt_loop(hwt_value_loop=" +
                   std::to_string(s.hwt_value_loop) +
                   ",hwt_value=" + std::to_string(s.hwt_value) +
                   ",loop_itr=" + std::to_string(s.loop_itr) + ")";
        }
        std::string operator()(const HdLoop &s) const {
            return "hd_loop(shift_value=" + std::to_string(s.shift_value) +
                   ",hwt_value=" + std::to_string(s.hwt_value) +
                   ",loop_itr=" + std::to_string(s.loop_itr) + ")";
        }
    };
    return std::visit(Printer{}, spec);
}

MicrobenchSpec parse_microbench(std::string_view text) {
    const auto open = text.find('(');
    if (open == std::string_view::npos || text.empty() || text.back() != ')')
        throw ConfigError("malformed victim descriptor: " + std::string(text));
    const std::string_view kind = text.substr(0, open);
    auto fields =
        parse_fields(text.substr(open + 1, text.size() - open - 2), text);

    MicrobenchSpec spec;
    if (kind == "const_loop") {
        ConstLoop s;
        s.loop_itr = take(fields, "loop_itr", text);
        s.hwt_value = narrow(take(fields, "hwt_value", text), "hwt_value");
        spec = s;
    } else if (kind == "hwt_loop") {
        HwtLoop s;
        s.hwt_value_loop =
            narrow(take(fields, "hwt_value_loop", text), "hwt_value_loop");
        s.hwt_value = narrow(take(fields, "hwt_value", text), "hwt_value");
        s.loop_itr = take(fields, "loop_itr", text);
        spec = s;
    } else if (kind == "hd_loop") {
        HdLoop s;
        s.shift_value = narrow(take(fields, "shift_value", text), "shift_value");
        s.hwt_value = narrow(take(fields, "hwt_value", text), "hwt_value");
        s.loop_itr = take(fields, "loop_itr", text);
        spec = s;
    } else {
        throw ConfigError("unknown victim kind: " + std::string(kind));
    }
    if (!fields.empty())
        throw ConfigError("unknown victim field: " + fields.begin()->first);
    try {
        validate(spec);
    } catch (const DomainError &e) {
        throw ConfigError(e.what());
    }
    return spec;
}

} // namespace spikelab
