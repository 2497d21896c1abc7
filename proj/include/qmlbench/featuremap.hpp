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

#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qmlbench/circuit.hpp"

namespace qmlbench {

enum class FeatureMapFamily { Z, ZZ, Pauli };
enum class Entanglement { Full, Linear };

/// Configuration of a data-encoding circuit. One qubit per feature.
///
/// Families:
///  - Z:     first-order Z evolution; no entangling gates.
///  - ZZ:    Z plus pairwise ZZ interactions over the entanglement topology.
///  - Pauli: arbitrary Pauli strings; X/Y characters are realized by basis
///           change around the Z-evolution block (H for X, RX(pi/2) for Y).
struct FeatureMapSpec {
    FeatureMapFamily family = FeatureMapFamily::Z;
    int n_features = 4;
    int reps = 2;
    Entanglement entanglement = Entanglement::Full;
    std::vector<std::string> pauli_strings = {"Z", "ZZ"};  // Pauli family only
};

/// Data-mapping function: phi({i}, x) = x_i; for |S| > 1,
/// phi(S, x) = prod_{j in S} (pi - x_j).
inline double phi(const std::vector<int>& index_set,
                  std::span<const double> x) {
    if (index_set.empty()) {
        throw std::invalid_argument("phi: index set must be non-empty");
    }
    for (int j : index_set) {
        if (j < 0 || static_cast<std::size_t>(j) >= x.size()) {
            throw std::out_of_range("phi: index outside feature vector");
        }
    }
    if (index_set.size() == 1) return x[static_cast<std::size_t>(index_set[0])];
    double prod = 1.0;
    for (int j : index_set) {
        prod *= std::numbers::pi - x[static_cast<std::size_t>(j)];
    }
    return prod;
}

namespace detail {

struct PauliTerm {
    std::vector<char> paulis;  // non-identity characters, in order
};

inline PauliTerm parse_pauli_string(const std::string& s, int n_features) {
    PauliTerm term;
    for (char c : s) {
        switch (c) {
            case 'I': break;
            case 'X':
            case 'Y':
            case 'Z': term.paulis.push_back(c); break;
            default:
                throw std::invalid_argument(
                    "FeatureMapSpec: Pauli strings may only contain I, X, Y, Z");
        }
    }
    if (term.paulis.empty()) {
        throw std::invalid_argument(
            "FeatureMapSpec: Pauli string needs at least one non-identity");
    }
    if (static_cast<int>(term.paulis.size()) > n_features) {
        throw std::invalid_argument(
            "FeatureMapSpec: Pauli string is wider than the feature count");
    }
    return term;
}

/// Qubit subsets of size `weight` in topology order: all combinations in
/// lexicographic order for Full, consecutive windows for Linear.
inline std::vector<std::vector<int>> interaction_sets(int n_qubits, int weight,
                                                      Entanglement ent) {
    std::vector<std::vector<int>> sets;
    if (weight == 1) {
        for (int q = 0; q < n_qubits; ++q) sets.push_back({q});
        return sets;
    }
    if (ent == Entanglement::Linear) {
        for (int start = 0; start + weight <= n_qubits; ++start) {
            std::vector<int> s(static_cast<std::size_t>(weight));
            for (int i = 0; i < weight; ++i) s[static_cast<std::size_t>(i)] = start + i;
            sets.push_back(std::move(s));
        }
        return sets;
    }
    std::vector<int> combo(static_cast<std::size_t>(weight));
    for (int i = 0; i < weight; ++i) combo[static_cast<std::size_t>(i)] = i;
    while (true) {
        sets.push_back(combo);
        int i = weight - 1;
        while (i >= 0 && combo[static_cast<std::size_t>(i)] == n_qubits - weight + i) --i;
        if (i < 0) break;
        ++combo[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < weight; ++j) {
            combo[static_cast<std::size_t>(j)] = combo[static_cast<std::size_t>(j - 1)] + 1;
        }
    }
    return sets;
}

// exp-of-Pauli-product block: basis changes, CNOT parity chain, Phase(angle)
// on the last qubit, then everything undone in reverse.
inline void add_evolution_block(Circuit& c, const std::vector<int>& qubits,
                                const std::vector<char>& paulis, double angle) {
    const std::size_t w = qubits.size();
    for (std::size_t i = 0; i < w; ++i) {
        if (paulis[i] == 'X') c.add(Gate::h(qubits[i]));
        if (paulis[i] == 'Y') c.add(Gate::rx(qubits[i], std::numbers::pi / 2));
    }
    for (std::size_t i = 0; i + 1 < w; ++i) {
        c.add(Gate::cnot(qubits[i], qubits[i + 1]));
    }
    c.add(Gate::phase(qubits[w - 1], angle));
    for (std::size_t i = w - 1; i-- > 0;) {
        c.add(Gate::cnot(qubits[i], qubits[i + 1]));
    }
    for (std::size_t i = w; i-- > 0;) {
        if (paulis[i] == 'X') c.add(Gate::h(qubits[i]));
        if (paulis[i] == 'Y') c.add(Gate::rx(qubits[i], -std::numbers::pi / 2));
    }
}

inline std::vector<std::string> family_pauli_strings(const FeatureMapSpec& spec) {
    switch (spec.family) {
        case FeatureMapFamily::Z: return {"Z"};
        case FeatureMapFamily::ZZ: return {"Z", "ZZ"};
        case FeatureMapFamily::Pauli: return spec.pauli_strings;
    }
    throw std::logic_error("family_pauli_strings: unhandled family");
}

}  // namespace detail

/// Build the data-encoding circuit for the given feature vector. Each
/// repetition applies a Hadamard layer, then for every Pauli term and every
/// interaction set S in topology order an evolution block with angle
/// 2 * phi(S, x). Features are expected pre-scaled to [0, pi].
inline Circuit build_feature_map(const FeatureMapSpec& spec,
                                 std::span<const double> x) {
    if (spec.n_features < 1) {
        throw std::invalid_argument("FeatureMapSpec: n_features must be >= 1");
    }
    if (spec.reps < 1) {
        throw std::invalid_argument("FeatureMapSpec: reps must be >= 1");
    }
    if (static_cast<int>(x.size()) != spec.n_features) {
        throw std::invalid_argument(
            "build_feature_map: feature vector length does not match spec");
    }
    std::vector<detail::PauliTerm> terms;
    for (const auto& s : detail::family_pauli_strings(spec)) {
        terms.push_back(detail::parse_pauli_string(s, spec.n_features));
    }
    if (terms.empty()) {
        throw std::invalid_argument("FeatureMapSpec: no Pauli strings given");
    }

    Circuit c;
    c.n_qubits = spec.n_features;
    for (int rep = 0; rep < spec.reps; ++rep) {
        for (int q = 0; q < spec.n_features; ++q) c.add(Gate::h(q));
        for (const auto& term : terms) {
            const int weight = static_cast<int>(term.paulis.size());
            for (const auto& set : detail::interaction_sets(
                     spec.n_features, weight, spec.entanglement)) {
                detail::add_evolution_block(c, set, term.paulis,
                                            2.0 * phi(set, x));
            }
        }
    }
    return c;
}

/// Encoded state: the feature-map circuit applied to |0...0>.
inline Statevector encode_to_state(const FeatureMapSpec& spec,
                                   std::span<const double> x) {
    return run_circuit(build_feature_map(spec, x));
}

}  // namespace qmlbench
