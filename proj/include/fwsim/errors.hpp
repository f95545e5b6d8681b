// Copyright 2026 The fwsim Authors
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

#ifndef FWSIM_ERRORS_HPP
#define FWSIM_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fwsim {

/// Invalid arguments: dimension mismatches, out-of-range indices, bad options.
struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Malformed circuit, state, or frame text.
struct ParseError : UsageError {
    using UsageError::UsageError;
};

/// Request exceeds the size limits of the dense oracle or another bounded routine.
struct Unsupported : UsageError {
    using UsageError::UsageError;
};

/// A qubit has no nonnegative representation in the requested mode.
struct NegativeRepresentation : std::runtime_error {
    NegativeRepresentation(size_t qubit, const std::string &what)
        : std::runtime_error(what), qubit(qubit) {
    }
    size_t qubit;
};

/// The reduced frame still has cubic terms; more qubits must be traced out.
struct NeedMoreTracing : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A reduced frame that should be linear for every selector is not.
struct InstantiatedFrameNonlinear : std::logic_error {
    using std::logic_error::logic_error;
};

}  // namespace fwsim

#endif
