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

#include <Eigen/Dense>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace qmlbench {

/// Eigendecomposition of a symmetric matrix given as a row-major flat
/// buffer. Eigenvalues ascending; eigenvectors[c] is the unit eigenvector
/// belonging to eigenvalues[c].
struct SymmetricEigen {
    std::vector<double> eigenvalues;
    std::vector<std::vector<double>> eigenvectors;
};

inline SymmetricEigen symmetric_eigen(const std::vector<double>& values,
                                      std::size_t n) {
    if (values.size() != n * n) {
        throw std::invalid_argument("symmetric_eigen: buffer is not n x n");
    }
    Eigen::MatrixXd m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                values[i * n + j];
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("symmetric_eigen: decomposition failed");
    }

    SymmetricEigen out;
    out.eigenvalues.resize(n);
    out.eigenvectors.assign(n, std::vector<double>(n));
    for (std::size_t c = 0; c < n; ++c) {
        out.eigenvalues[c] = solver.eigenvalues()(static_cast<Eigen::Index>(c));
        for (std::size_t r = 0; r < n; ++r) {
            out.eigenvectors[c][r] = solver.eigenvectors()(
                static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
        }
    }
    return out;
}

inline double min_symmetric_eigenvalue(const std::vector<double>& values,
                                       std::size_t n) {
    return symmetric_eigen(values, n).eigenvalues.front();
}

}  // namespace qmlbench
