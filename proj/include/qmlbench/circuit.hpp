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

#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "qmlbench/statevector.hpp"

namespace qmlbench {

enum class GateKind {
    H, X, Y, Z, S, T, RX, RY, RZ, Phase, CNOT, CZ, Swap
};

/// One gate application. q0 is the target for single-qubit kinds, the
/// control for CNOT, and the first operand for CZ/Swap; q1 is the second
/// operand of two-qubit kinds. Rotation conventions:
///   RX/RY/RZ(theta) = exp(-i theta P / 2),  Phase(theta) = diag(1, e^{i theta}).
struct Gate {
    GateKind kind = GateKind::H;
    int q0 = 0;
    int q1 = -1;
    double angle = 0.0;

    static Gate h(int q) { return {GateKind::H, q}; }
    static Gate x(int q) { return {GateKind::X, q}; }
    static Gate y(int q) { return {GateKind::Y, q}; }
    static Gate z(int q) { return {GateKind::Z, q}; }
    static Gate s(int q) { return {GateKind::S, q}; }
    static Gate t(int q) { return {GateKind::T, q}; }
    static Gate rx(int q, double a) { return {GateKind::RX, q, -1, a}; }
    static Gate ry(int q, double a) { return {GateKind::RY, q, -1, a}; }
    static Gate rz(int q, double a) { return {GateKind::RZ, q, -1, a}; }
    static Gate phase(int q, double a) { return {GateKind::Phase, q, -1, a}; }
    static Gate cnot(int control, int target) {
        return {GateKind::CNOT, control, target};
    }
    static Gate cz(int a, int b) { return {GateKind::CZ, a, b}; }
    static Gate swap(int a, int b) { return {GateKind::Swap, a, b}; }

    bool is_two_qubit() const {
        return kind == GateKind::CNOT || kind == GateKind::CZ ||
               kind == GateKind::Swap;
    }

    bool has_angle() const {
        return kind == GateKind::RX || kind == GateKind::RY ||
               kind == GateKind::RZ || kind == GateKind::Phase;
    }

    void validate(int n_qubits) const {
        if (q0 < 0 || q0 >= n_qubits) {
            throw std::out_of_range("Gate: qubit index out of range");
        }
        if (is_two_qubit()) {
            if (q1 < 0 || q1 >= n_qubits) {
                throw std::out_of_range("Gate: qubit index out of range");
            }
            if (q1 == q0) {
                throw std::invalid_argument(
                    "Gate: two-qubit gate needs distinct qubits");
            }
        }
    }
};

/// 2x2 matrix (row-major) of a single-qubit gate kind.
inline std::array<cdouble, 4> single_qubit_matrix(GateKind kind,
                                                  double angle = 0.0) {
    constexpr double inv_sqrt2 = 0.7071067811865475244;
    const cdouble i{0.0, 1.0};
    switch (kind) {
        case GateKind::H:
            return {inv_sqrt2, inv_sqrt2, inv_sqrt2, -inv_sqrt2};
        case GateKind::X:
            return {0.0, 1.0, 1.0, 0.0};
        case GateKind::Y:
            return {0.0, -i, i, 0.0};
        case GateKind::Z:
            return {1.0, 0.0, 0.0, -1.0};
        case GateKind::S:
            return {1.0, 0.0, 0.0, i};
        case GateKind::T:
            return {1.0, 0.0, 0.0, std::polar(1.0, std::numbers::pi / 4)};
        case GateKind::RX: {
            const double c = std::cos(angle / 2), s = std::sin(angle / 2);
            return {c, -i * s, -i * s, c};
        }
        case GateKind::RY: {
            const double c = std::cos(angle / 2), s = std::sin(angle / 2);
            return {c, -s, s, c};
        }
        case GateKind::RZ:
            return {std::polar(1.0, -angle / 2), 0.0, 0.0,
                    std::polar(1.0, angle / 2)};
        case GateKind::Phase:
            return {1.0, 0.0, 0.0, std::polar(1.0, angle)};
        default:
            throw std::invalid_argument(
                "single_qubit_matrix: not a single-qubit gate");
    }
}

namespace detail {

inline void apply_2x2(Statevector& state, int target,
                      const std::array<cdouble, 4>& m) {
    auto& amps = state.amplitudes();
    const std::size_t step = std::size_t{1} << target;
    const std::size_t dim = amps.size();
    for (std::size_t base = 0; base < dim; base += 2 * step) {
        for (std::size_t off = 0; off < step; ++off) {
            const std::size_t k0 = base + off;
            const std::size_t k1 = k0 + step;
            const cdouble a0 = amps[k0];
            const cdouble a1 = amps[k1];
            amps[k0] = m[0] * a0 + m[1] * a1;
            amps[k1] = m[2] * a0 + m[3] * a1;
        }
    }
}

// Multiply amplitudes whose target bit is set by a scalar.
inline void apply_phase_if_set(Statevector& state, int target, cdouble factor) {
    auto& amps = state.amplitudes();
    const std::size_t step = std::size_t{1} << target;
    for (std::size_t base = 0; base < amps.size(); base += 2 * step) {
        for (std::size_t off = 0; off < step; ++off) {
            amps[base + off + step] *= factor;
        }
    }
}

}  // namespace detail

/// Apply one gate in place. O(2^n); no full matrices are materialized.
inline void apply_gate(Statevector& state, const Gate& g) {
    g.validate(state.n_qubits());
    const std::size_t dim = state.dim();
    auto& amps = state.amplitudes();
    switch (g.kind) {
        case GateKind::H:
        case GateKind::X:
        case GateKind::Y:
        case GateKind::RX:
        case GateKind::RY:
            detail::apply_2x2(state, g.q0, single_qubit_matrix(g.kind, g.angle));
            return;
        case GateKind::Z:
            detail::apply_phase_if_set(state, g.q0, -1.0);
            return;
        case GateKind::S:
            detail::apply_phase_if_set(state, g.q0, cdouble{0.0, 1.0});
            return;
        case GateKind::T:
            detail::apply_phase_if_set(state, g.q0,
                                       std::polar(1.0, std::numbers::pi / 4));
            return;
        case GateKind::Phase:
            detail::apply_phase_if_set(state, g.q0, std::polar(1.0, g.angle));
            return;
        case GateKind::RZ: {
            const cdouble lo = std::polar(1.0, -g.angle / 2);
            const cdouble hi = std::polar(1.0, g.angle / 2);
            const std::size_t bit = std::size_t{1} << g.q0;
            for (std::size_t k = 0; k < dim; ++k) {
                amps[k] *= (k & bit) ? hi : lo;
            }
            return;
        }
        case GateKind::CNOT: {
            const std::size_t cbit = std::size_t{1} << g.q0;
            const std::size_t tbit = std::size_t{1} << g.q1;
            for (std::size_t k = 0; k < dim; ++k) {
                if ((k & cbit) && !(k & tbit)) {
                    std::swap(amps[k], amps[k | tbit]);
                }
            }
            return;
        }
        case GateKind::CZ: {
            const std::size_t mask =
                (std::size_t{1} << g.q0) | (std::size_t{1} << g.q1);
            for (std::size_t k = 0; k < dim; ++k) {
                if ((k & mask) == mask) amps[k] = -amps[k];
            }
            return;
        }
        case GateKind::Swap: {
            const std::size_t b0 = std::size_t{1} << g.q0;
            const std::size_t b1 = std::size_t{1} << g.q1;
            for (std::size_t k = 0; k < dim; ++k) {
                if ((k & b0) && !(k & b1)) {
                    std::swap(amps[k], amps[(k & ~b0) | b1]);
                }
            }
            return;
        }
    }
    throw std::logic_error("apply_gate: unhandled gate kind");
}

/// Gate applied to a copy.
inline Statevector apply_gate_copy(Statevector state, const Gate& g) {
    apply_gate(state, g);
    return state;
}

/// Ordered gate sequence on a fixed-width register.
struct Circuit {
    int n_qubits = 1;
    std::vector<Gate> gates;

    void add(const Gate& g) {
        g.validate(n_qubits);
        gates.push_back(g);
    }

    void append(const Circuit& other) {
        if (other.n_qubits != n_qubits) {
            throw std::invalid_argument("Circuit::append: qubit counts differ");
        }
        gates.insert(gates.end(), other.gates.begin(), other.gates.end());
    }

    std::size_t two_qubit_gate_count() const {
        std::size_t c = 0;
        for (const auto& g : gates) c += g.is_two_qubit() ? 1 : 0;
        return c;
    }

    /// Exact inverse: reversed order; rotation/phase angles negated; S and
    /// T become Phase(-pi/2) and Phase(-pi/4); the rest are self-inverse.
    Circuit inverse() const {
        Circuit inv;
        inv.n_qubits = n_qubits;
        inv.gates.reserve(gates.size());
        for (auto it = gates.rbegin(); it != gates.rend(); ++it) {
            Gate g = *it;
            switch (g.kind) {
                case GateKind::RX:
                case GateKind::RY:
                case GateKind::RZ:
                case GateKind::Phase:
                    g.angle = -g.angle;
                    break;
                case GateKind::S:
                    g = Gate::phase(g.q0, -std::numbers::pi / 2);
                    break;
                case GateKind::T:
                    g = Gate::phase(g.q0, -std::numbers::pi / 4);
                    break;
                default:
                    break;  // self-inverse
            }
            inv.gates.push_back(g);
        }
        return inv;
    }
};

/// Sequential gate application starting from the given state.
inline Statevector run_circuit(const Circuit& circuit, Statevector initial) {
    if (circuit.n_qubits != initial.n_qubits()) {
        throw std::invalid_argument("run_circuit: qubit counts differ");
    }
    for (const auto& g : circuit.gates) apply_gate(initial, g);
    return initial;
}

/// Sequential application starting from |0...0>.
inline Statevector run_circuit(const Circuit& circuit) {
    return run_circuit(circuit, Statevector(circuit.n_qubits));
}

}  // namespace qmlbench
