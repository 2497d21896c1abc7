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
#include <bit>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qmlbench/ansatz.hpp"
#include "qmlbench/featuremap.hpp"
#include "qmlbench/optimize.hpp"

namespace qmlbench {

enum class ModelKind { Vqc, EstimatorQnn, SamplerQnn };
enum class LossKind { CrossEntropy, SquaredError };

/// Affine readout head of the Estimator QNN: logits = W * features + b,
/// here 2 outputs from the single Z...Z expectation value.
struct LinearHead {
    std::vector<std::vector<double>> weights;  // outputs x inputs
    std::vector<double> bias;                  // outputs
};

struct VariationalModel {
    ModelKind kind = ModelKind::Vqc;
    FeatureMapSpec spec;
    Ansatz ansatz;
    std::optional<LinearHead> head;  // EstimatorQnn only
    LossKind loss_kind = LossKind::CrossEntropy;
};

/// One loss evaluation during training.
struct TrainRecord {
    int iteration = 0;
    double loss = 0.0;
    std::vector<double> theta_snapshot;
};

struct ProbPair {
    double p0 = 0.0;
    double p1 = 0.0;
};

/// Uniform [0,1] initial parameters, seeded.
inline std::vector<double> init_theta(int length, std::uint64_t seed) {
    if (length < 1) throw std::invalid_argument("init_theta: length must be >= 1");
    SplitMix64 rng(seed);
    std::vector<double> theta(static_cast<std::size_t>(length));
    for (auto& t : theta) t = rng.next_double();
    return theta;
}

inline VariationalModel make_model(ModelKind kind, const FeatureMapSpec& spec,
                                   int ansatz_reps, std::uint64_t seed) {
    VariationalModel m;
    m.kind = kind;
    m.spec = spec;
    m.ansatz.n_qubits = spec.n_features;
    m.ansatz.reps = ansatz_reps;
    const int n_theta = Ansatz::param_count(spec.n_features, ansatz_reps);
    const int n_head = kind == ModelKind::EstimatorQnn ? 4 : 0;
    std::vector<double> init = init_theta(n_theta + n_head, seed);
    m.ansatz.theta.assign(init.begin(), init.begin() + n_theta);
    if (kind == ModelKind::EstimatorQnn) {
        m.head = LinearHead{{{init[static_cast<std::size_t>(n_theta)]},
                             {init[static_cast<std::size_t>(n_theta) + 1]}},
                            {init[static_cast<std::size_t>(n_theta) + 2],
                             init[static_cast<std::size_t>(n_theta) + 3]}};
    }
    return m;
}

namespace detail {

inline Statevector model_state(const VariationalModel& m,
                               std::span<const double> x) {
    Circuit c = build_feature_map(m.spec, x);
    c.append(m.ansatz.circuit());
    return run_circuit(c);
}

inline double odd_parity_probability(const Statevector& state) {
    double p1 = 0.0;
    for (std::size_t k = 0; k < state.dim(); ++k) {
        if (std::popcount(k) & 1) p1 += std::norm(state.amp(k));
    }
    return p1;
}

inline ProbPair softmax2(double l0, double l1) {
    const double m = std::max(l0, l1);
    const double e0 = std::exp(l0 - m), e1 = std::exp(l1 - m);
    return {e0 / (e0 + e1), e1 / (e0 + e1)};
}

}  // namespace detail

/// Z...Z expectation of the encoded + ansatz state (Estimator QNN feature).
inline double eqnn_expectation(const VariationalModel& model,
                               std::span<const double> x) {
    const std::string all_z(static_cast<std::size_t>(model.spec.n_features), 'Z');
    return pauli_expectation(detail::model_state(model, x), all_z);
}

/// VQC forward pass: p1 is the total probability of odd-parity bitstrings.
inline ProbPair forward_vqc(const VariationalModel& model,
                            std::span<const double> x) {
    const double p1 = detail::odd_parity_probability(detail::model_state(model, x));
    return {1.0 - p1, p1};
}

/// Estimator QNN forward pass: affine head on the Z...Z expectation,
/// normalized exponential over the two logits.
inline ProbPair forward_eqnn(const VariationalModel& model,
                             std::span<const double> x) {
    if (!model.head) throw std::invalid_argument("forward_eqnn: model has no head");
    const double e = eqnn_expectation(model, x);
    const auto& h = *model.head;
    return detail::softmax2(h.weights[0][0] * e + h.bias[0],
                            h.weights[1][0] * e + h.bias[1]);
}

/// Sampler QNN forward pass: p1 is the fraction of odd-parity bitstrings
/// among `shots` samples; shots == 0 selects the exact distribution, which
/// coincides with forward_vqc.
inline ProbPair forward_sqnn(const VariationalModel& model,
                             std::span<const double> x, int shots,
                             std::uint64_t seed) {
    const Statevector state = detail::model_state(model, x);
    if (shots == 0) {
        const double p1 = detail::odd_parity_probability(state);
        return {1.0 - p1, p1};
    }
    const ShotResult result = sample(state, shots, seed);
    long odd = 0;
    for (const auto& [bits, count] : result.counts) {
        const int ones =
            static_cast<int>(std::count(bits.begin(), bits.end(), '1'));
        if (ones & 1) odd += count;
    }
    const double p1 = static_cast<double>(odd) / static_cast<double>(shots);
    return {1.0 - p1, p1};
}

/// Forward pass for any model kind.
inline ProbPair forward(const VariationalModel& model, std::span<const double> x,
                        int shots = 0, std::uint64_t seed = 0) {
    switch (model.kind) {
        case ModelKind::Vqc: return forward_vqc(model, x);
        case ModelKind::EstimatorQnn: return forward_eqnn(model, x);
        case ModelKind::SamplerQnn: return forward_sqnn(model, x, shots, seed);
    }
    throw std::logic_error("forward: unhandled model kind");
}

/// Batch loss. Cross-entropy is the mean of -log p_y (p clamped at 1e-12);
/// squared error (Estimator QNN only) is the mean of (e_i - t_i)^2 with
/// targets t in {-1, +1}.
inline double loss(const VariationalModel& model,
                   const std::vector<std::vector<double>>& xs,
                   const std::vector<int>& ys, int shots = 0,
                   std::uint64_t seed = 0) {
    if (xs.empty() || xs.size() != ys.size()) {
        throw std::invalid_argument("loss: batch is empty or mismatched");
    }
    const SplitMix64 root(seed);
    double total = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (ys[i] != 0 && ys[i] != 1) {
            throw std::invalid_argument("loss: labels must be 0/1");
        }
        if (model.loss_kind == LossKind::SquaredError) {
            if (model.kind != ModelKind::EstimatorQnn) {
                throw std::invalid_argument(
                    "loss: squared error applies to the Estimator QNN only");
            }
            const double e = eqnn_expectation(model, xs[i]);
            const double t = ys[i] == 1 ? 1.0 : -1.0;
            total += (e - t) * (e - t);
        } else {
            const ProbPair p =
                forward(model, xs[i], shots, root.split(i).next_u64());
            const double py = std::max(ys[i] == 1 ? p.p1 : p.p0, 1e-12);
            total += -std::log(py);
        }
    }
    return total / static_cast<double>(xs.size());
}

/// Class prediction: argmax of the probability pair, ties toward class 0.
inline int predict(const VariationalModel& model, std::span<const double> x,
                   int shots = 0, std::uint64_t seed = 0) {
    const ProbPair p = forward(model, x, shots, seed);
    return p.p1 > p.p0 ? 1 : 0;
}

namespace detail {

inline std::vector<double> flatten_params(const VariationalModel& m) {
    std::vector<double> v = m.ansatz.theta;
    if (m.kind == ModelKind::EstimatorQnn) {
        const auto& h = *m.head;
        v.push_back(h.weights[0][0]);
        v.push_back(h.weights[1][0]);
        v.push_back(h.bias[0]);
        v.push_back(h.bias[1]);
    }
    return v;
}

inline void unflatten_params(VariationalModel& m, std::span<const double> v) {
    const std::size_t n_theta = m.ansatz.theta.size();
    for (std::size_t i = 0; i < n_theta; ++i) m.ansatz.theta[i] = v[i];
    if (m.kind == ModelKind::EstimatorQnn) {
        auto& h = *m.head;
        h.weights[0][0] = v[n_theta];
        h.weights[1][0] = v[n_theta + 1];
        h.bias[0] = v[n_theta + 2];
        h.bias[1] = v[n_theta + 3];
    }
}

}  // namespace detail

struct TrainOutcome {
    VariationalModel model;
    std::vector<TrainRecord> records;
};

/// Optimize the circuit parameters (jointly with the head for the
/// Estimator QNN) against the batch loss. Every objective evaluation is
/// recorded; the returned model carries the best-loss parameters, not the
/// last ones. maxiter == 0 returns the model unchanged after a single
/// recorded evaluation.
inline TrainOutcome train(const VariationalModel& model,
                          const std::vector<std::vector<double>>& xs,
                          const std::vector<int>& ys,
                          const OptimizerConfig& optimizer, int shots = 0,
                          std::uint64_t seed = 0) {
    bool has0 = false, has1 = false;
    for (int y : ys) {
        if (y == 0) has0 = true;
        if (y == 1) has1 = true;
    }
    if (!has0 || !has1) {
        throw std::invalid_argument("train: both classes must be present");
    }

    TrainOutcome outcome;
    outcome.model = model;
    const SplitMix64 root(seed);
    int eval_index = 0;
    auto objective = [&](std::span<const double> v) {
        VariationalModel candidate = model;
        detail::unflatten_params(candidate, v);
        const std::uint64_t eval_seed =
            root.split(static_cast<std::uint64_t>(eval_index)).next_u64();
        const double value = loss(candidate, xs, ys, shots, eval_seed);
        ++eval_index;
        outcome.records.push_back(
            {eval_index, value, std::vector<double>(v.begin(), v.end())});
        return value;
    };

    const std::vector<double> x0 = detail::flatten_params(model);
    if (optimizer.maxiter == 0) {
        objective(x0);
        return outcome;
    }
    minimize(objective, x0, optimizer);

    const auto best = std::min_element(
        outcome.records.begin(), outcome.records.end(),
        [](const TrainRecord& a, const TrainRecord& b) { return a.loss < b.loss; });
    detail::unflatten_params(outcome.model, best->theta_snapshot);
    return outcome;
}

}  // namespace qmlbench
