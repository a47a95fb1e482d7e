// Copyright 2026 The heliodac Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
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

namespace heliodac {

// Base of everything the library throws on bad input or impossible requests.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Raised for problems the caller can fix by changing inputs (CLI exit code 2).
class ValidationError : public Error {
public:
    using Error::Error;
};

class ParseError : public ValidationError {
public:
    ParseError(const std::string& source, std::size_t line, const std::string& what);

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class SchemaError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class ArgumentError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class DesignError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class DataError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class InfeasibleError : public Error {
public:
    using Error::Error;
};

class CalibrationError : public Error {
public:
    using Error::Error;
};

} // namespace heliodac
