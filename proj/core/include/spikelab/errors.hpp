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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace spikelab {

/// Input outside an operation's mathematical domain.
class DomainError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// Invalid or incomplete configuration (parameter groups, manifests).
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Malformed input file. Carries the 1-based line number (0 when the
/// error is not tied to a line) and, when known, the file name.
class ParseError : public std::runtime_error {
  public:
    ParseError(std::size_t line, const std::string &message,
               const std::string &file = {})
        : std::runtime_error(compose(line, message, file)), line_(line),
          message_(message) {}

    std::size_t line() const noexcept { return line_; }
    const std::string &message() const noexcept { return message_; }

  private:
    static std::string compose(std::size_t line, const std::string &message,
                               const std::string &file) {
        std::string out = file.empty() ? std::string{} : file + ":";
        if (line != 0)
            out += (file.empty() ? "line " : "") + std::to_string(line) + ": ";
        else if (!file.empty())
            out += " ";
        return out + message;
    }

    std::size_t line_;
    std::string message_;
};

/// Measurement outcome the attack model says cannot happen.
class InconsistencyError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

} // namespace spikelab
