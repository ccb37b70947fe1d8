// Copyright 2026 The qcommit Authors

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
 * @file
 * Exception types shared by every qcommit module.
 */
#pragma once

#include <stdexcept>
#include <string>

namespace qcommit {

/// Base class for all library errors.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Register layout problems: duplicate or unknown names, width mismatches.
class LayoutError : public Error {
  public:
    using Error::Error;
};

/// Operands of incompatible dimension.
class DimensionError : public Error {
  public:
    using Error::Error;
};

/// A requested simulation exceeds the configured qubit cap.
class CapacityError : public Error {
  public:
    using Error::Error;
};

/// An oracle was asked for more queries than it was built for.
class BudgetError : public Error {
  public:
    using Error::Error;
};

/// A caller broke an operation's contract (e.g. an adversary touching C).
class ContractError : public Error {
  public:
    using Error::Error;
};

/// Malformed values handed to a validated type.
class ValueError : public Error {
  public:
    using Error::Error;
};

} // namespace qcommit
