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

#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qmlbench/featuremap.hpp"
#include "qmlbench/io.hpp"
#include "qmlbench/linalg.hpp"

namespace qmlbench {

/// Symmetric Gram matrix of pairwise state fidelities.
struct KernelMatrix {
    std::size_t n = 0;
    std::vector<double> values;  // row-major, n*n

    KernelMatrix() = default;
    explicit KernelMatrix(std::size_t size) : n(size), values(size * size, 0.0) {}

    double at(std::size_t i, std::size_t j) const { return values[i * n + j]; }
    double& at(std::size_t i, std::size_t j) { return values[i * n + j]; }
};

enum class KernelMode { Exact, Shots };

/// Fidelity kernel |<psi(x2)|psi(x)>|^2 from exact statevectors.
inline double kernel_exact(const FeatureMapSpec& spec,
                           std::span<const double> x,
                           std::span<const double> x2) {
    if (x.size() != x2.size()) {
        throw std::invalid_argument("kernel_exact: feature lengths differ");
    }
    return fidelity(encode_to_state(spec, x2), encode_to_state(spec, x));
}

/// Compute-uncompute fidelity estimate: run U(x) then U(x2)^-1 from
/// |0...0>, sample, and report the frequency of the all-zeros bitstring.
inline double kernel_shots(const FeatureMapSpec& spec,
                           std::span<const double> x,
                           std::span<const double> x2, int shots,
                           std::uint64_t seed) {
    if (x.size() != x2.size()) {
        throw std::invalid_argument("kernel_shots: feature lengths differ");
    }
    if (shots < 1) throw std::invalid_argument("kernel_shots: shots must be >= 1");
    Circuit c = build_feature_map(spec, x);
    c.append(build_feature_map(spec, x2).inverse());
    const ShotResult result = sample(run_circuit(c), shots, seed);
    const std::string zeros(static_cast<std::size_t>(spec.n_features), '0');
    const auto it = result.counts.find(zeros);
    const int hits = it == result.counts.end() ? 0 : it->second;
    return static_cast<double>(hits) / static_cast<double>(shots);
}

/// Gram matrix over the sample rows; only the upper triangle is computed
/// and mirrored. Shot mode derives one child seed per entry, so the result
/// does not depend on evaluation order.
inline KernelMatrix gram_matrix(const FeatureMapSpec& spec,
                                const std::vector<std::vector<double>>& samples,
                                KernelMode mode, int shots = 0,
                                std::uint64_t seed = 0) {
    if (samples.empty()) {
        throw std::invalid_argument("gram_matrix: no samples");
    }
    const std::size_t n = samples.size();
    KernelMatrix gram(n);
    if (mode == KernelMode::Exact) {
        std::vector<Statevector> states;
        states.reserve(n);
        for (const auto& row : samples) states.push_back(encode_to_state(spec, row));
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i; j < n; ++j) {
                const double k = fidelity(states[i], states[j]);
                gram.at(i, j) = k;
                gram.at(j, i) = k;
            }
        }
    } else {
        const SplitMix64 root(seed);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i; j < n; ++j) {
                const std::uint64_t entry_seed =
                    SplitMix64(root.split(i * n + j).next_u64()).next_u64();
                const double k =
                    kernel_shots(spec, samples[i], samples[j], shots, entry_seed);
                gram.at(i, j) = k;
                gram.at(j, i) = k;
            }
        }
    }
    return gram;
}

/// Minimum eigenvalue of the Gram matrix (PSD check).
inline double min_eigenvalue(const KernelMatrix& gram) {
    return min_symmetric_eigenvalue(gram.values, gram.n);
}

/// Project onto the PSD cone by clamping negative eigenvalues to zero.
/// Used on shot-estimated Gram matrices before SVM training; exact-mode
/// matrices are already PSD.
inline KernelMatrix clip_to_psd(const KernelMatrix& gram) {
    const SymmetricEigen eig = symmetric_eigen(gram.values, gram.n);
    KernelMatrix out(gram.n);
    for (std::size_t c = 0; c < gram.n; ++c) {
        const double lambda = eig.eigenvalues[c];
        if (lambda <= 0.0) continue;
        const auto& v = eig.eigenvectors[c];
        for (std::size_t i = 0; i < gram.n; ++i) {
            for (std::size_t j = 0; j < gram.n; ++j) {
                out.at(i, j) += lambda * v[i] * v[j];
            }
        }
    }
    return out;
}

/// CSV export: header row of sample ids, one row per sample.
inline void write_kernel_csv(std::ostream& os, const KernelMatrix& gram,
                             const std::vector<std::string>& ids) {
    if (ids.size() != gram.n) {
        throw std::invalid_argument("write_kernel_csv: id count mismatch");
    }
    os << "id";
    for (const auto& id : ids) os << ',' << id;
    os << '\n';
    for (std::size_t i = 0; i < gram.n; ++i) {
        os << ids[i];
        for (std::size_t j = 0; j < gram.n; ++j) {
            os << ',' << format_double(gram.at(i, j));
        }
        os << '\n';
    }
}

inline void write_kernel_csv(const std::string& path, const KernelMatrix& gram,
                             const std::vector<std::string>& ids) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("write_kernel_csv: cannot open " + path);
    write_kernel_csv(os, gram, ids);
}

inline KernelMatrix read_kernel_csv(std::istream& is,
                                    std::vector<std::string>* ids_out = nullptr) {
    std::string line;
    if (!std::getline(is, line)) {
        throw std::runtime_error("read_kernel_csv: empty input");
    }
    std::vector<std::string> header = split_csv_line(line);
    if (header.size() < 2 || header[0] != "id") {
        throw std::runtime_error("read_kernel_csv: malformed header");
    }
    const std::size_t n = header.size() - 1;
    KernelMatrix gram(n);
    std::vector<std::string> ids(header.begin() + 1, header.end());
    std::size_t row = 0;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (row >= n) throw std::runtime_error("read_kernel_csv: too many rows");
        const std::vector<std::string> fields = split_csv_line(line);
        if (fields.size() != n + 1) {
            throw std::runtime_error("read_kernel_csv: wrong column count");
        }
        for (std::size_t j = 0; j < n; ++j) {
            gram.at(row, j) = std::stod(fields[j + 1]);
        }
        ++row;
    }
    if (row != n) throw std::runtime_error("read_kernel_csv: missing rows");
    if (ids_out) *ids_out = std::move(ids);
    return gram;
}

inline KernelMatrix read_kernel_csv(const std::string& path,
                                    std::vector<std::string>* ids_out = nullptr) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("read_kernel_csv: cannot open " + path);
    return read_kernel_csv(is, ids_out);
}

}  // namespace qmlbench
