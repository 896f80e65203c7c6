/*
 Copyright 2026 The hoopctl Authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/

#ifndef HOOP_ERROR_HPP
#define HOOP_ERROR_HPP

#include <stdexcept>
#include <string>

namespace hoop {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Non-finite or out-of-domain argument.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Physically invalid parameter set (non-positive mass, l >= r, singular
/// inertia, negative discriminant, ...).
class ParameterError : public Error {
public:
    using Error::Error;
};

/// Degenerate configuration where a closed-form expression has a vanishing
/// denominator.
class SingularityError : public Error {
public:
    using Error::Error;
};

/// Malformed configuration file or command-line override. `line` is 0 when
/// the problem is not tied to a specific line.
class ConfigError : public Error {
public:
    ConfigError(const std::string &what, int line = 0)
        : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
          line_(line) {}

    int line() const noexcept { return line_; }

private:
    int line_;
};

} // namespace hoop

#endif // HOOP_ERROR_HPP
