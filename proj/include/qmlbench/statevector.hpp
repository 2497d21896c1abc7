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

#include <bit>
#include <complex>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qmlbench/rng.hpp"

namespace qmlbench {

using cdouble = std::complex<double>;

/// Dense amplitude vector of an n-qubit register.
///
/// Conventions used throughout the library:
///  - qubit 0 is the least significant bit of the basis index;
///  - a bitstring is written with the character at position q holding the
///    value of qubit q (so "10" means qubit 0 = 1, qubit 1 = 0).
class Statevector {
  public:
    static constexpr int kMaxQubits = 12;

    /// |0...0> on n qubits.
    explicit Statevector(int n_qubits)
        : n_qubits_(checked_qubits(n_qubits)),
          amps_(std::size_t{1} << n_qubits) {
        amps_[0] = cdouble{1.0, 0.0};
    }

    Statevector(int n_qubits, std::vector<cdouble> amplitudes)
        : n_qubits_(checked_qubits(n_qubits)), amps_(std::move(amplitudes)) {
        if (amps_.size() != (std::size_t{1} << n_qubits_)) {
            throw std::invalid_argument(
                "Statevector: amplitude count must be 2^n_qubits");
        }
    }

    int n_qubits() const { return n_qubits_; }
    std::size_t dim() const { return amps_.size(); }

    const std::vector<cdouble>& amplitudes() const { return amps_; }
    std::vector<cdouble>& amplitudes() { return amps_; }

    const cdouble& amp(std::size_t k) const { return amps_[k]; }
    cdouble& amp(std::size_t k) { return amps_[k]; }

    /// L2 norm of the amplitude vector.
    double norm() const {
        double s = 0.0;
        for (const auto& a : amps_) s += std::norm(a);
        return std::sqrt(s);
    }

  private:
    static int checked_qubits(int n) {
        if (n < 1 || n > kMaxQubits) {
            throw std::invalid_argument(
                "Statevector: n_qubits must be in [1, 12]");
        }
        return n;
    }

    int n_qubits_;
    std::vector<cdouble> amps_;
};

/// Histogram of measured bitstrings. counts sums to shots.
struct ShotResult {
    std::map<std::string, int> counts;
    int shots = 0;
};

inline std::string index_to_bitstring(std::size_t k, int n_qubits) {
    std::string s(static_cast<std::size_t>(n_qubits), '0');
    for (int q = 0; q < n_qubits; ++q) {
        if (k & (std::size_t{1} << q)) s[static_cast<std::size_t>(q)] = '1';
    }
    return s;
}

inline std::size_t bitstring_to_index(std::string_view bits) {
    std::size_t k = 0;
    for (std::size_t q = 0; q < bits.size(); ++q) {
        if (bits[q] == '1') {
            k |= std::size_t{1} << q;
        } else if (bits[q] != '0') {
            throw std::invalid_argument("bitstring_to_index: invalid character");
        }
    }
    return k;
}

/// Exact outcome probabilities |amp_k|^2.
inline std::vector<double> probabilities(const Statevector& state) {
    std::vector<double> p(state.dim());
    for (std::size_t k = 0; k < state.dim(); ++k) p[k] = std::norm(state.amp(k));
    return p;
}

/// Multinomial sampling of measurement outcomes; deterministic per seed.
inline ShotResult sample(const Statevector& state, int shots,
                         std::uint64_t seed) {
    if (shots < 1) throw std::invalid_argument("sample: shots must be >= 1");
    const std::vector<double> probs = probabilities(state);
    std::vector<double> cdf(probs.size());
    double acc = 0.0;
    for (std::size_t k = 0; k < probs.size(); ++k) {
        acc += probs[k];
        cdf[k] = acc;
    }
    cdf.back() = 1.0;  // guard against rounding in the tail

    SplitMix64 rng(seed);
    std::map<std::size_t, int> hits;
    for (int s = 0; s < shots; ++s) {
        const double u = rng.next_double();
        std::size_t lo = 0, hi = cdf.size() - 1;
        while (lo < hi) {
            const std::size_t mid = (lo + hi) / 2;
            if (u < cdf[mid]) {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        ++hits[lo];
    }

    ShotResult result;
    result.shots = shots;
    for (const auto& [k, c] : hits) {
        result.counts.emplace(index_to_bitstring(k, state.n_qubits()), c);
    }
    return result;
}

/// <a|b>.
inline cdouble inner_product(const Statevector& a, const Statevector& b) {
    if (a.n_qubits() != b.n_qubits()) {
        throw std::invalid_argument("inner_product: qubit counts differ");
    }
    cdouble s{0.0, 0.0};
    for (std::size_t k = 0; k < a.dim(); ++k) {
        s += std::conj(a.amp(k)) * b.amp(k);
    }
    return s;
}

/// |<a|b>|^2.
inline double fidelity(const Statevector& a, const Statevector& b) {
    return std::norm(inner_product(a, b));
}

/// <psi| P |psi> for P a tensor product of I/X/Y/Z; paulis[q] acts on
/// qubit q. The result of a Hermitian observable is real up to rounding;
/// only the real part is returned.
inline double pauli_expectation(const Statevector& state,
                                std::string_view paulis) {
    if (static_cast<int>(paulis.size()) != state.n_qubits()) {
        throw std::invalid_argument(
            "pauli_expectation: string length must equal n_qubits");
    }
    std::size_t x_mask = 0, sign_mask = 0;
    int n_y = 0;
    for (std::size_t q = 0; q < paulis.size(); ++q) {
        const std::size_t bit = std::size_t{1} << q;
        switch (paulis[q]) {
            case 'I': break;
            case 'X': x_mask |= bit; break;
            case 'Y': x_mask |= bit; sign_mask |= bit; ++n_y; break;
            case 'Z': sign_mask |= bit; break;
            default:
                throw std::invalid_argument(
                    "pauli_expectation: characters must be one of I, X, Y, Z");
        }
    }
    // P|k> = i^{n_y} * (-1)^{popcount(k & sign_mask)} |k ^ x_mask>
    static constexpr cdouble kIPow[4] = {
        {1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
    const cdouble y_factor = kIPow[n_y % 4];
    cdouble total{0.0, 0.0};
    for (std::size_t k = 0; k < state.dim(); ++k) {
        const double sign =
            (std::popcount(k & sign_mask) & 1) ? -1.0 : 1.0;
        total += std::conj(state.amp(k ^ x_mask)) * (sign * state.amp(k));
    }
    total *= y_factor;
    return total.real();
}

}  // namespace qmlbench
