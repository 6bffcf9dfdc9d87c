/*
 * Copyright 2026 The gnfp Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <stdexcept>
#include <string>

namespace gnfp {

/// Caller violated a documented precondition (wrong arity, radius <= 0, r outside [0,1), ...).
class UsageError : public std::invalid_argument {
public:
    explicit UsageError(const std::string& what) : std::invalid_argument(what) {}
};

/// Data that should have been validated upstream is inconsistent (e.g. a
/// transition that points outside the state grid).
class IntegrityError : public std::logic_error {
public:
    explicit IntegrityError(const std::string& what) : std::logic_error(what) {}
};

/// An iterate or metric value became NaN or infinite.
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace gnfp
