// Copyright 2026 The sicfid Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace sicfid {

/// Base of everything this library throws on purpose.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Bad input (wrong dimension form, malformed file, ...).
struct InvalidInput : Error {
    using Error::Error;
};

/// Something that must hold by construction did not. Indicates a bug.
struct InconsistencyError : Error {
    using Error::Error;
};

/// A numerical stage did not converge or a reconstruction was rejected.
/// Usually cured by more working digits.
struct ComputationError : Error {
    using Error::Error;
};

/// A conjectured identity failed on this instance.
struct ConjectureFailure : Error {
    using Error::Error;
};

/// Outside the supported range (class number above 2, composite d, ...).
struct Unsupported : Error {
    using Error::Error;
};

/// File or schema problem.
struct ParseError : Error {
    using Error::Error;
};

}  // namespace sicfid
