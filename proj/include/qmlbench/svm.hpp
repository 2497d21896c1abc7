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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "qmlbench/kernel.hpp"

namespace qmlbench {

/// Solution of the soft-margin SVM dual with a precomputed kernel.
struct SmoSolution {
    std::vector<double> alpha;  // dual variables, in [0, C]
    double bias = 0.0;
    double objective = 0.0;     // dual objective at the solution
    int updates = 0;            // successful pair updates
};

namespace detail {

// Analytic two-variable update; returns false when the pair cannot move.
inline bool smo_pair_step(const KernelMatrix& K, const std::vector<int>& y,
                          double C, std::vector<double>& alpha,
                          std::vector<double>& g, double& b, std::size_t i,
                          std::size_t j) {
    if (i == j) return false;
    const double yi = y[i], yj = y[j];
    const double Ei = g[i] + b - yi;
    const double Ej = g[j] + b - yj;

    double L, H;
    if (yi != yj) {
        L = std::max(0.0, alpha[j] - alpha[i]);
        H = std::min(C, C + alpha[j] - alpha[i]);
    } else {
        L = std::max(0.0, alpha[i] + alpha[j] - C);
        H = std::min(C, alpha[i] + alpha[j]);
    }
    if (H - L < 1e-12) return false;

    const double eta = K.at(i, i) + K.at(j, j) - 2.0 * K.at(i, j);
    if (eta <= 1e-12) return false;

    double aj = alpha[j] + yj * (Ei - Ej) / eta;
    aj = std::clamp(aj, L, H);
    const double dj = aj - alpha[j];
    if (std::abs(dj) < 1e-12) return false;
    const double ai = alpha[i] - yi * yj * dj;
    const double di = ai - alpha[i];

    const double b1 = b - Ei - yi * di * K.at(i, i) - yj * dj * K.at(i, j);
    const double b2 = b - Ej - yi * di * K.at(i, j) - yj * dj * K.at(j, j);
    const bool i_interior = ai > 1e-10 && ai < C - 1e-10;
    const bool j_interior = aj > 1e-10 && aj < C - 1e-10;
    b = i_interior ? b1 : (j_interior ? b2 : 0.5 * (b1 + b2));

    alpha[i] = ai;
    alpha[j] = aj;
    for (std::size_t k = 0; k < alpha.size(); ++k) {
        g[k] += yi * di * K.at(i, k) + yj * dj * K.at(j, k);
    }
    return true;
}

}  // namespace detail

/// Sequential minimal optimization on the dual
///   max  sum a_i - 1/2 sum a_i a_j y_i y_j K_ij
///   s.t. 0 <= a_i <= C,  sum a_i y_i = 0
/// with y in {-1, +1}. Pairs are chosen by maximal KKT violation; the
/// second index maximizes |E_i - E_j|. Stops when the largest violation
/// falls below tol or after max_stall consecutive fruitless selections.
inline SmoSolution solve_svm_dual(const KernelMatrix& K,
                                  const std::vector<int>& y, double C,
                                  double tol = 1e-3, int max_stall = 10) {
    const std::size_t n = K.n;
    if (y.size() != n) throw std::invalid_argument("solve_svm_dual: label count");
    if (C <= 0.0) throw std::invalid_argument("solve_svm_dual: C must be > 0");
    bool has_pos = false, has_neg = false;
    for (int v : y) {
        if (v == 1) has_pos = true;
        else if (v == -1) has_neg = true;
        else throw std::invalid_argument("solve_svm_dual: labels must be -1/+1");
    }
    if (!has_pos || !has_neg) {
        throw std::invalid_argument("solve_svm_dual: both classes required");
    }

    SmoSolution sol;
    sol.alpha.assign(n, 0.0);
    std::vector<double> g(n, 0.0);  // g_i = sum_j alpha_j y_j K_ij
    double b = 0.0;

    int stall = 0;
    const long guard_max = 20000L * static_cast<long>(n);
    for (long iter = 0; iter < guard_max; ++iter) {
        // most violating point
        std::size_t i_best = n;
        double v_best = tol;
        for (std::size_t i = 0; i < n; ++i) {
            const double r = y[i] * (g[i] + b) - 1.0;
            double v = 0.0;
            if (sol.alpha[i] < C - 1e-12 && r < -tol) v = -r;
            else if (sol.alpha[i] > 1e-12 && r > tol) v = r;
            if (v > v_best) {
                v_best = v;
                i_best = i;
            }
        }
        if (i_best == n) break;  // KKT satisfied within tol

        // partners ordered by |E_i - E_j| descending, index ascending on ties
        const double Ei = g[i_best] + b - y[i_best];
        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t c) {
            const double da = std::abs(Ei - (g[a] + b - y[a]));
            const double dc = std::abs(Ei - (g[c] + b - y[c]));
            if (da != dc) return da > dc;
            return a < c;
        });
        bool progressed = false;
        for (std::size_t j : order) {
            if (detail::smo_pair_step(K, y, C, sol.alpha, g, b, i_best, j)) {
                progressed = true;
                ++sol.updates;
                break;
            }
        }
        if (progressed) {
            stall = 0;
        } else if (++stall >= max_stall) {
            break;
        }
    }

    // Final bias from the optimality interval; interior vectors pin it,
    // otherwise take the midpoint of the feasible range.
    double interior_sum = 0.0;
    std::size_t interior_count = 0;
    double b_lo = -std::numeric_limits<double>::infinity();
    double b_hi = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        const double r = y[i] - g[i];
        const bool at_zero = sol.alpha[i] <= 1e-10;
        const bool at_c = sol.alpha[i] >= C - 1e-10;
        if (!at_zero && !at_c) {
            interior_sum += r;
            ++interior_count;
        } else if ((at_zero && y[i] == 1) || (at_c && y[i] == -1)) {
            b_lo = std::max(b_lo, r);
        } else {
            b_hi = std::min(b_hi, r);
        }
    }
    if (interior_count > 0) {
        sol.bias = interior_sum / static_cast<double>(interior_count);
    } else if (std::isfinite(b_lo) && std::isfinite(b_hi)) {
        sol.bias = 0.5 * (b_lo + b_hi);
    } else {
        sol.bias = std::isfinite(b_lo) ? b_lo : (std::isfinite(b_hi) ? b_hi : b);
    }

    double obj = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        obj += sol.alpha[i] - 0.5 * sol.alpha[i] * y[i] * g[i];
    }
    sol.objective = obj;
    return sol;
}

/// Trained fidelity-kernel support-vector classifier. alphas are the
/// class-folded coefficients alpha_j * y_j of the stored support vectors.
struct QsvcModel {
    std::vector<double> alphas;
    double bias = 0.0;
    std::vector<std::vector<double>> support_vectors;
    FeatureMapSpec spec;
    double C = 1.0;
};

/// Train from a precomputed Gram matrix over the rows of `samples`.
/// Labels are {0,1} and are folded to {-1,+1} internally; only support
/// vectors (alpha > 1e-8) are retained in the model.
inline QsvcModel train_qsvc(const KernelMatrix& gram,
                            const std::vector<int>& labels, double C,
                            const std::vector<std::vector<double>>& samples,
                            const FeatureMapSpec& spec) {
    if (labels.size() != gram.n || samples.size() != gram.n) {
        throw std::invalid_argument("train_qsvc: size mismatch");
    }
    std::vector<int> y(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] != 0 && labels[i] != 1) {
            throw std::invalid_argument("train_qsvc: labels must be 0/1");
        }
        y[i] = labels[i] == 1 ? 1 : -1;
    }
    const SmoSolution sol = solve_svm_dual(gram, y, C);

    QsvcModel model;
    model.bias = sol.bias;
    model.spec = spec;
    model.C = C;
    for (std::size_t i = 0; i < sol.alpha.size(); ++i) {
        if (sol.alpha[i] > 1e-8) {
            model.alphas.push_back(sol.alpha[i] * y[i]);
            model.support_vectors.push_back(samples[i]);
        }
    }
    return model;
}

struct Decision {
    int label = 0;      // 1 iff value > 0
    double value = 0.0; // f(x) = sum_j alpha_j K(x, x_j) + b
};

inline Decision predict_qsvc(const QsvcModel& model, std::span<const double> x) {
    if (model.support_vectors.empty()) {
        throw std::invalid_argument("predict_qsvc: model has no support vectors");
    }
    double f = model.bias;
    const Statevector psi = encode_to_state(model.spec, x);
    for (std::size_t j = 0; j < model.support_vectors.size(); ++j) {
        f += model.alphas[j] *
             fidelity(encode_to_state(model.spec, model.support_vectors[j]), psi);
    }
    return {f > 0.0 ? 1 : 0, f};
}

/// Batch prediction with support-vector states encoded once.
inline std::vector<Decision> predict_qsvc_batch(
    const QsvcModel& model, const std::vector<std::vector<double>>& xs) {
    if (model.support_vectors.empty()) {
        throw std::invalid_argument("predict_qsvc: model has no support vectors");
    }
    std::vector<Statevector> sv_states;
    sv_states.reserve(model.support_vectors.size());
    for (const auto& sv : model.support_vectors) {
        sv_states.push_back(encode_to_state(model.spec, sv));
    }
    std::vector<Decision> out;
    out.reserve(xs.size());
    for (const auto& x : xs) {
        const Statevector psi = encode_to_state(model.spec, x);
        double f = model.bias;
        for (std::size_t j = 0; j < sv_states.size(); ++j) {
            f += model.alphas[j] * fidelity(sv_states[j], psi);
        }
        out.push_back({f > 0.0 ? 1 : 0, f});
    }
    return out;
}

}  // namespace qmlbench
