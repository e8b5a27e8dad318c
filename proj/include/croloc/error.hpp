// Copyright (C) 2026 The croloc Authors. All rights reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may not use this file except in compliance
// with the License. You may obtain a copy of the License at
//
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software distributed under the License
// is distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express
// or implied. See the License for the specific language governing permissions and limitations under the License.

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace croloc {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
    using std::runtime_error::runtime_error;
};

/// Malformed input at a known location (line number or record index, 1-based).
class ParseError : public Error {
 public:
    ParseError(std::string source, std::size_t line, const std::string& what)
        : Error(source + ":" + std::to_string(line) + ": " + what), source_(std::move(source)), line_(line) {}

    const std::string& source() const noexcept { return source_; }
    std::size_t line() const noexcept { return line_; }

 private:
    std::string source_;
    std::size_t line_;
};

/// A required pipeline artifact or config key is missing.
class MissingArtifact : public Error {
 public:
    explicit MissingArtifact(std::string name)
        : Error("missing artifact: " + name), name_(std::move(name)) {}
    const std::string& name() const noexcept { return name_; }

 private:
    std::string name_;
};

/// Non-fatal problem worth reporting on stderr.
struct Diagnostic {
    std::string where;
    std::string message;

    std::string str() const { return where.empty() ? message : where + ": " + message; }
};

using Diagnostics = std::vector<Diagnostic>;

}  // namespace croloc
