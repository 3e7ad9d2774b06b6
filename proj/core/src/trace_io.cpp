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

#include "spikelab/trace_io.hpp"

#include "spikelab/errors.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <string_view>
#include <system_error>

namespace spikelab::io {

namespace {

constexpr std::string_view kTraceHeader = "time_s,voltage_v";
constexpr std::string_view kPeaksHeader = "run_id,label,peak_v";
constexpr double kJitterTolerance = 1e-6;

std::vector<std::string_view> split(std::string_view line, std::string_view seps) {
    std::vector<std::string_view> cells;
    std::size_t start = 0;
    for (;;) {
        const auto pos = line.find_first_of(seps, start);
        cells.push_back(line.substr(start, pos - start));
        if (pos == std::string_view::npos)
            return cells;
        start = pos + 1;
    }
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

bool parse_double(std::string_view cell, double &out) {
    if (!cell.empty() && cell.front() == '+')
        cell.remove_prefix(1);
    if (cell.empty())
        return false;
    const auto [p, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), out);
    return ec == std::errc{} && p == cell.data() + cell.size() && std::isfinite(out);
}

double require_double(std::string_view cell, std::size_t line, const char *what) {
    double v = 0.0;
    if (!parse_double(cell, v))
        throw ParseError(line, std::string("non-numeric ") + what + " \"" +
                                   std::string(cell) + "\"");
    return v;
}

std::ifstream open_in(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParseError(0, "cannot open for reading", path.string());
    return in;
}

template <typename Fn>
auto with_file(const std::filesystem::path &path, Fn &&fn) {
    auto in = open_in(path);
    try {
        return fn(in);
    } catch (const ParseError &e) {
        throw ParseError(e.line(), e.message(), path.string());
    }
}

// Checks that t is strictly after the previous timestamp and, once dt is
// known, on the uniform grid.
struct UniformClock {
    bool strict_grid;
    std::size_t count = 0;
    double first = 0.0;
    double last = 0.0;
    double dt = 0.0;

    void push(double t, std::size_t line) {
        if (count > 0 && !(t > last))
            throw ParseError(line, "non-monotone time");
        if (count == 1)
            dt = t - first;
        else if (count >= 2 && strict_grid &&
                 std::abs((t - last) - dt) > kJitterTolerance * dt)
            throw ParseError(line, "non-uniform sampling: interval " +
                                       format_number(t - last) + " s vs dt " +
                                       format_number(dt) + " s");
        if (count == 0)
            first = t;
        last = t;
        ++count;
    }
};

} // namespace

std::string format_number(double v) {
    char buf[64];
    const auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc{})
        throw DomainError("format_number: conversion failed");
    return std::string(buf, p);
}

void write_trace(const Trace &trace, std::ostream &out) {
    trace.validate();
    out << kTraceHeader << '\n';
    for (std::size_t i = 0; i < trace.samples.size(); ++i)
        out << format_number(static_cast<double>(i) * trace.dt_s) << ','
            << format_number(trace.samples[i]) << '\n';
}

void write_trace(const Trace &trace, const std::filesystem::path &path) {
    std::ostringstream os;
    write_trace(trace, os);
    write_file_atomic(path, os.str());
}

Trace read_trace(std::istream &in) {
    std::string line;
    std::size_t lineno = 1;
    if (!std::getline(in, line))
        throw ParseError(1, "missing header, expected \"time_s,voltage_v\"");
    if (line != kTraceHeader)
        throw ParseError(1, "bad header \"" + line +
                                "\", expected \"time_s,voltage_v\"");

    Trace trace;
    UniformClock clock{true};
    while (std::getline(in, line)) {
        ++lineno;
        const auto cells = split(line, ",");
        if (cells.size() != 2)
            throw ParseError(lineno, "expected 2 cells, found " +
                                         std::to_string(cells.size()));
        const double t = require_double(cells[0], lineno, "time");
        const double v = require_double(cells[1], lineno, "voltage");
        clock.push(t, lineno);
        trace.samples.push_back(v);
    }
    if (trace.samples.size() < 2)
        throw ParseError(0, "need at least 2 samples to recover dt");
    trace.dt_s = clock.dt;
    return trace;
}

Trace read_trace(const std::filesystem::path &path) {
    return with_file(path, [](std::istream &in) { return read_trace(in); });
}

Trace read_oscilloscope_csv(std::istream &in) {
    std::string raw;
    std::size_t lineno = 0;
    bool in_data = false;
    Trace trace;
    UniformClock clock{false};
    while (std::getline(in, raw)) {
        ++lineno;
        const std::string_view line = trim(raw);
        if (!in_data) {
            if (line.empty() || line.front() == '#' ||
                line.find_first_of("0123456789") == std::string_view::npos)
                continue;
            double probe = 0.0;
            if (!parse_double(trim(split(line, ",;\t").front()), probe))
                continue; // text header such as "x-axis,1"
            in_data = true;
        }
        if (line.empty())
            continue;
        const auto cells = split(line, ",;\t");
        if (cells.size() < 2)
            throw ParseError(lineno, "expected at least 2 numeric columns");
        const double t = require_double(trim(cells[0]), lineno, "time");
        const double v = require_double(trim(cells[1]), lineno, "voltage");
        clock.push(t, lineno);
        trace.samples.push_back(v);
    }
    if (trace.samples.empty())
        throw ParseError(0, "no samples");
    if (trace.samples.size() < 2)
        throw ParseError(0, "need at least 2 samples to recover dt");
    trace.dt_s = (clock.last - clock.first) /
                 static_cast<double>(trace.samples.size() - 1);
    return trace;
}

Trace read_oscilloscope_csv(const std::filesystem::path &path) {
    return with_file(path,
                     [](std::istream &in) { return read_oscilloscope_csv(in); });
}

void write_peaks(std::span<const PeakSample> peaks, std::ostream &out) {
    std::set<std::uint64_t> seen;
    for (const auto &p : peaks) {
        if (!seen.insert(p.seed_index).second)
            throw DomainError("duplicate run_id " + std::to_string(p.seed_index));
        if (p.label.find_first_of(",\n\r") != std::string::npos)
            throw DomainError("label of run_id " + std::to_string(p.seed_index) +
                              " contains a comma or line break");
        if (!std::isfinite(p.value))
            throw DomainError("peak of run_id " + std::to_string(p.seed_index) +
                              " is not finite");
    }
    out << kPeaksHeader << '\n';
    for (const auto &p : peaks)
        out << p.seed_index << ',' << p.label << ',' << format_number(p.value)
            << '\n';
}

void write_peaks(std::span<const PeakSample> peaks,
                 const std::filesystem::path &path) {
    std::ostringstream os;
    write_peaks(peaks, os);
    write_file_atomic(path, os.str());
}

std::vector<PeakSample> read_peaks(std::istream &in) {
    std::string line;
    std::size_t lineno = 1;
    if (!std::getline(in, line) || line != kPeaksHeader)
        throw ParseError(1, "bad header, expected \"run_id,label,peak_v\"");

    std::vector<PeakSample> peaks;
    std::set<std::uint64_t> seen;
    while (std::getline(in, line)) {
        ++lineno;
        const auto cells = split(line, ",");
        if (cells.size() != 3)
            throw ParseError(lineno, "expected 3 cells, found " +
                                         std::to_string(cells.size()));
        PeakSample p;
        const auto id = cells[0];
        const auto [ptr, ec] = std::from_chars(id.data(), id.data() + id.size(),
                                               p.seed_index);
        if (id.empty() || ec != std::errc{} || ptr != id.data() + id.size())
            throw ParseError(lineno, "bad run_id \"" + std::string(id) + "\"");
        if (!seen.insert(p.seed_index).second)
            throw ParseError(lineno, "duplicate run_id " + std::string(id));
        p.label = std::string(cells[1]);
        p.value = require_double(cells[2], lineno, "peak_v");
        peaks.push_back(std::move(p));
    }
    return peaks;
}

std::vector<PeakSample> read_peaks(const std::filesystem::path &path) {
    return with_file(path, [](std::istream &in) { return read_peaks(in); });
}

void write_file_atomic(const std::filesystem::path &path,
                       const std::string &content) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw std::system_error(errno, std::generic_category(),
                                    "cannot open " + tmp.string());
        out << content;
        out.flush();
        if (!out)
            throw std::system_error(errno, std::generic_category(),
                                    "write failed: " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

} // namespace spikelab::io
