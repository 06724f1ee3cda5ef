// Copyright 2026 The Lightsim Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file Error.hpp
 * Exception types and abort macros used throughout the library.
 */
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace Lightsim::Util {

/**
 * @brief Base class for every error raised by the library.
 */
class LightsimException : public std::runtime_error {
  public:
    explicit LightsimException(const std::string &msg)
        : std::runtime_error(msg) {}
};

/// Invalid argument or violated precondition.
class ValidationError : public LightsimException {
  public:
    using LightsimException::LightsimException;
};

/// Requested register does not fit in memory or in the index width.
class CapacityError : public LightsimException {
  public:
    using LightsimException::LightsimException;
};

/// Operation is not available for the given gate or observable.
class UnsupportedError : public LightsimException {
  public:
    using LightsimException::LightsimException;
};

/**
 * @brief Syntax error in one of the text formats, with a 1-based location.
 */
class ParseError : public LightsimException {
  public:
    ParseError(const std::string &msg, std::size_t line, std::size_t column,
               const std::string &source_line = {})
        : LightsimException(format(msg, line, column, source_line)),
          line_{line}, column_{column} {}

    [[nodiscard]] auto line() const -> std::size_t { return line_; }
    [[nodiscard]] auto column() const -> std::size_t { return column_; }

  private:
    static auto format(const std::string &msg, std::size_t line,
                       std::size_t column, const std::string &source_line)
        -> std::string {
        std::string out = "line " + std::to_string(line) + ", column " +
                          std::to_string(column) + ": " + msg;
        if (!source_line.empty()) {
            out += "\n  " + source_line + "\n  ";
            out += std::string(column > 0 ? column - 1 : 0, ' ');
            out += '^';
        }
        return out;
    }

    std::size_t line_;
    std::size_t column_;
};

} // namespace Lightsim::Util

#define LS_ABORT_IF(expression, message)                                       \
    if (expression) {                                                          \
        throw ::Lightsim::Util::ValidationError(message);                      \
    }

#define LS_ABORT_IF_NOT(expression, message)                                   \
    if (!(expression)) {                                                       \
        throw ::Lightsim::Util::ValidationError(message);                      \
    }
