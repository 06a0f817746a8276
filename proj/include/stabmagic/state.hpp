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

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "stabmagic/errors.hpp"

namespace stabmagic {

using cplx = std::complex<double>;

/// Pure state of n qubits. Qubit q is bit q of the amplitude index.
struct DenseState {
    int n = 0;
    std::vector<cplx> amplitudes;

    DenseState() = default;
    explicit DenseState(int num_qubits) : n(num_qubits), amplitudes(size_t{1} << num_qubits) {
    }
    DenseState(int num_qubits, std::vector<cplx> amps) : n(num_qubits), amplitudes(std::move(amps)) {
        if (amplitudes.size() != (size_t{1} << n)) {
            throw DimensionError("DenseState: amplitude count does not match 2^n");
        }
    }

    /// Computational basis state |index>.
    static DenseState basis(int num_qubits, uint64_t index) {
        DenseState s(num_qubits);
        s.amplitudes.at(index) = 1.0;
        return s;
    }

    size_t dim() const {
        return amplitudes.size();
    }
    cplx &operator[](size_t k) {
        return amplitudes[k];
    }
    const cplx &operator[](size_t k) const {
        return amplitudes[k];
    }

    double norm() const {
        double t = 0;
        for (const auto &a : amplitudes) {
            t += std::norm(a);
        }
        return std::sqrt(t);
    }
    void normalize() {
        double s = norm();
        if (s == 0) {
            throw DomainError("DenseState::normalize: zero vector");
        }
        for (auto &a : amplitudes) {
            a /= s;
        }
    }
};

/// <a|b>.
inline cplx inner(const DenseState &a, const DenseState &b) {
    if (a.n != b.n) {
        throw DimensionError("inner: qubit count mismatch");
    }
    cplx t = 0;
    for (size_t k = 0; k < a.dim(); k++) {
        t += std::conj(a[k]) * b[k];
    }
    return t;
}

/// |<a|b>| close to 1, i.e. equal up to global phase.
inline bool equal_up_to_phase(const DenseState &a, const DenseState &b, double tol = 1e-9) {
    return a.n == b.n && std::abs(std::abs(inner(a, b)) - 1.0) <= tol;
}

}  // namespace stabmagic
