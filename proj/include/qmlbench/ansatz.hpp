// Copyright 2026 The qmlbench authors
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

#include <stdexcept>
#include <vector>

#include "qmlbench/circuit.hpp"

namespace qmlbench {

/// Hardware-efficient trainable block: RY rotation layers alternating with
/// linear-chain CNOT layers, ending on a rotation layer. Parameter count is
/// n_qubits * (reps + 1).
struct Ansatz {
    int n_qubits = 1;
    int reps = 3;
    std::vector<double> theta;

    static int param_count(int n_qubits, int reps) {
        return n_qubits * (reps + 1);
    }

    Circuit circuit() const {
        if (n_qubits < 1 || reps < 1) {
            throw std::invalid_argument("Ansatz: n_qubits and reps must be >= 1");
        }
        if (static_cast<int>(theta.size()) != param_count(n_qubits, reps)) {
            throw std::invalid_argument(
                "Ansatz: theta length must be n_qubits * (reps + 1)");
        }
        Circuit c;
        c.n_qubits = n_qubits;
        std::size_t p = 0;
        for (int q = 0; q < n_qubits; ++q) c.add(Gate::ry(q, theta[p++]));
        for (int layer = 0; layer < reps; ++layer) {
            for (int q = 0; q + 1 < n_qubits; ++q) c.add(Gate::cnot(q, q + 1));
            for (int q = 0; q < n_qubits; ++q) c.add(Gate::ry(q, theta[p++]));
        }
        return c;
    }
};

}  // namespace qmlbench
