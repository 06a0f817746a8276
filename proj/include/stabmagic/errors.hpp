// Copyright 2026 The stabmagic Authors
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

namespace stabmagic {

/// Operands disagree on qubit count, or an index is out of range.
struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Generators are dependent, anticommute, or generate -I.
struct InvalidGroupError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A dense object would exceed the configured qubit cap.
struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Input outside the domain of a formula (singular dimensions, alpha < 1, ...).
struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A numeric tolerance produced an inconsistent result (e.g. nullity closure failure).
struct ToleranceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed experiment configuration or incompatible options.
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Caps on dense objects. Overridable per call.
struct Limits {
    int max_dense_qubits = 14;
    int max_spectrum_qubits = 12;

    void require_dense(int n, const char *what) const {
        if (n > max_dense_qubits) {
            throw ResourceError(std::string(what) + ": " + std::to_string(n) + " qubits exceeds dense cap of " +
                                std::to_string(max_dense_qubits));
        }
    }
    void require_spectrum(int n, const char *what) const {
        if (n > max_spectrum_qubits) {
            throw ResourceError(std::string(what) + ": " + std::to_string(n) + " qubits exceeds spectrum cap of " +
                                std::to_string(max_spectrum_qubits));
        }
    }
};

}  // namespace stabmagic
