/*
   Copyright 2026 The mimocache Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <stdexcept>
#include <string>

namespace mimocache {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Requested derivative order exceeds kMaxDerivativeOrder.
class OrderOverflowError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

/// Co-cluster channel matrix is numerically rank deficient; the caller
/// should redraw the channels.
class RankDeficientError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A computed probability left [0,1] by more than roundoff.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Cache policy violates the budget or box constraints.
class ConstraintViolation : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& field, const std::string& message, int line = 0)
        : std::runtime_error(format(field, message, line)), field_(field), line_(line)
    {
    }

    const std::string& field() const noexcept { return field_; }
    int line() const noexcept { return line_; }

private:
    static std::string format(const std::string& field, const std::string& message, int line)
    {
        std::string out;
        if (line > 0) {
            out += "line " + std::to_string(line) + ": ";
        }
        if (!field.empty()) {
            out += field + ": ";
        }
        return out + message;
    }

    std::string field_;
    int line_;
};

} // namespace mimocache
