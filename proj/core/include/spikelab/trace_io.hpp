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

// CSV persistence for traces and peak sets, and a tolerant reader for
// oscilloscope exports.
//
//   trace:  header `time_s,voltage_v`, one sample per row
//   peaks:  header `run_id,label,peak_v`
//
// Writers are deterministic (same value, same bytes), use LF line endings
// and print numbers in shortest round-trip form. Readers reject rather
// than coerce: NaN, Inf and stray cells are parse errors naming the line.

#include "spikelab/trace.hpp"

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace spikelab::io {

/// Shortest decimal text that parses back to exactly `v`.
std::string format_number(double v);

void write_trace(const Trace &trace, std::ostream &out);
void write_trace(const Trace &trace, const std::filesystem::path &path);

/// Needs at least two rows; dt comes from the first two timestamps and
/// every later interval must match it within 1 ppm.
Trace read_trace(std::istream &in);
Trace read_trace(const std::filesystem::path &path);

/// Skips a preamble of comment, text-only or header lines, then maps the
/// first two numeric columns of each row to time and voltage. Extra
/// columns are ignored. dt is the mean interval.
Trace read_oscilloscope_csv(std::istream &in);
Trace read_oscilloscope_csv(const std::filesystem::path &path);

/// Throws DomainError on a duplicate run_id or a label containing a comma
/// or line break.
void write_peaks(std::span<const PeakSample> peaks, std::ostream &out);
void write_peaks(std::span<const PeakSample> peaks,
                 const std::filesystem::path &path);

std::vector<PeakSample> read_peaks(std::istream &in);
std::vector<PeakSample> read_peaks(const std::filesystem::path &path);

/// Writes `content` to a sibling temporary file and renames it over
/// `path`, so readers never observe a partial file.
void write_file_atomic(const std::filesystem::path &path,
                       const std::string &content);

} // namespace spikelab::io
