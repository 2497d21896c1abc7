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
#include <stdexcept>
#include <string>
#include <vector>

#include "qmlbench/dataset.hpp"
#include "qmlbench/linalg.hpp"

namespace qmlbench {

struct RankedFeature {
    std::string name;
    double weight = 0.0;  // explained-variance-weighted absolute loading
};

/// PCA-based feature ranking over column-major data: columns are z-scored,
/// the covariance matrix is eigendecomposed, and each feature is scored by
/// the explained-variance-weighted absolute loading summed over the
/// retained components. Retention keeps eigenvalues above the
/// Marchenko-Pastur noise edge (1 + sqrt(d/m))^2 times the mean
/// eigenvalue, and always keeps the leading component. Zero-variance
/// features score zero and therefore rank last.
inline std::vector<RankedFeature> pca_rank_columns(
    const std::vector<std::vector<double>>& columns,
    const std::vector<std::string>& names) {
    const std::size_t d = columns.size();
    if (d == 0 || names.size() != d) {
        throw std::invalid_argument("pca_rank: bad column/name arity");
    }
    const std::size_t m = columns[0].size();
    if (m < 2) throw std::invalid_argument("pca_rank: need at least 2 rows");
    for (const auto& c : columns) {
        if (c.size() != m) throw std::invalid_argument("pca_rank: ragged data");
    }

    // z-score columns; constant columns become all zeros
    std::vector<std::vector<double>> z(d, std::vector<double>(m, 0.0));
    std::vector<bool> constant(d, false);
    for (std::size_t f = 0; f < d; ++f) {
        double mean = 0.0;
        for (double v : columns[f]) mean += v;
        mean /= static_cast<double>(m);
        double var = 0.0;
        for (double v : columns[f]) var += (v - mean) * (v - mean);
        var /= static_cast<double>(m - 1);
        if (var <= 0.0) {
            constant[f] = true;
            continue;
        }
        const double sd = std::sqrt(var);
        for (std::size_t r = 0; r < m; ++r) z[f][r] = (columns[f][r] - mean) / sd;
    }

    std::vector<double> cov(d * d, 0.0);
    for (std::size_t a = 0; a < d; ++a) {
        for (std::size_t b = a; b < d; ++b) {
            double s = 0.0;
            for (std::size_t r = 0; r < m; ++r) s += z[a][r] * z[b][r];
            s /= static_cast<double>(m - 1);
            cov[a * d + b] = s;
            cov[b * d + a] = s;
        }
    }

    const SymmetricEigen eig = symmetric_eigen(cov, d);
    double total = 0.0;
    std::size_t informative = 0;
    for (std::size_t f = 0; f < d; ++f) informative += constant[f] ? 0 : 1;
    for (double lambda : eig.eigenvalues) total += std::max(lambda, 0.0);
    const double mean_lambda =
        informative == 0 ? 0.0 : total / static_cast<double>(informative);
    const double ratio =
        static_cast<double>(informative) / static_cast<double>(m);
    const double noise_edge =
        mean_lambda * (1.0 + std::sqrt(ratio)) * (1.0 + std::sqrt(ratio));

    std::vector<bool> retained(d, false);
    bool any = false;
    for (std::size_t c = 0; c < d; ++c) {
        if (eig.eigenvalues[c] > noise_edge) {
            retained[c] = true;
            any = true;
        }
    }
    if (!any && d > 0) retained[d - 1] = true;  // eigenvalues are ascending

    std::vector<RankedFeature> ranked(d);
    for (std::size_t f = 0; f < d; ++f) {
        ranked[f].name = names[f];
        if (constant[f] || total <= 0.0) continue;
        double score = 0.0;
        for (std::size_t c = 0; c < d; ++c) {
            if (!retained[c]) continue;
            score += (std::max(eig.eigenvalues[c], 0.0) / total) *
                     std::abs(eig.eigenvectors[c][f]);
        }
        ranked[f].weight = score;
    }
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const RankedFeature& a, const RankedFeature& b) {
                         return a.weight > b.weight;
                     });
    return ranked;
}

/// All nine feature columns of the BankSim schema, label-encoded where
/// categorical, as column-major numeric data.
inline std::pair<std::vector<std::vector<double>>, std::vector<std::string>>
encode_all_columns(const std::vector<RawTransaction>& rows) {
    if (rows.empty()) throw std::invalid_argument("encode_all_columns: no rows");
    const std::size_t m = rows.size();
    auto encode_strings = [&](auto getter) {
        std::vector<std::string> raw;
        raw.reserve(m);
        for (const auto& r : rows) raw.push_back(detail::strip_quotes(getter(r)));
        const LabelEncoding enc = encode_labels(raw);
        std::vector<double> out(m);
        for (std::size_t i = 0; i < m; ++i) out[i] = enc.codes[i];
        return out;
    };

    std::vector<std::vector<double>> cols;
    std::vector<std::string> names;
    names.assign(banksim_columns().begin(), banksim_columns().end() - 1);

    std::vector<double> step(m), age(m), amount(m);
    for (std::size_t i = 0; i < m; ++i) {
        step[i] = rows[i].step;
        age[i] = clean_age(rows[i].age);
        amount[i] = rows[i].amount;
    }
    cols.push_back(std::move(step));
    cols.push_back(encode_strings([](const RawTransaction& r) { return r.customer; }));
    cols.push_back(std::move(age));
    cols.push_back(encode_strings([](const RawTransaction& r) { return r.gender; }));
    cols.push_back(encode_strings([](const RawTransaction& r) { return r.zipcode_ori; }));
    cols.push_back(encode_strings([](const RawTransaction& r) { return r.merchant; }));
    cols.push_back(encode_strings([](const RawTransaction& r) { return r.zip_merchant; }));
    cols.push_back(encode_strings([](const RawTransaction& r) { return r.category; }));
    cols.push_back(std::move(amount));
    return {std::move(cols), std::move(names)};
}

/// PCA ranking of the nine encoded BankSim feature columns.
inline std::vector<RankedFeature> pca_rank(
    const std::vector<RawTransaction>& rows) {
    auto [cols, names] = encode_all_columns(rows);
    return pca_rank_columns(cols, names);
}

struct CorrelationMatrix {
    std::vector<std::string> names;
    std::vector<double> values;  // row-major, names.size()^2

    double at(std::size_t i, std::size_t j) const {
        return values[i * names.size() + j];
    }
};

/// Pearson correlation of column-major data. Unit diagonal; pairs with a
/// constant column get correlation 0 by convention.
inline CorrelationMatrix correlation_columns(
    const std::vector<std::vector<double>>& columns,
    const std::vector<std::string>& names) {
    const std::size_t d = columns.size();
    if (d == 0 || names.size() != d) {
        throw std::invalid_argument("correlation: bad column/name arity");
    }
    const std::size_t m = columns[0].size();
    if (m < 2) throw std::invalid_argument("correlation: need at least 2 rows");

    std::vector<double> mean(d, 0.0), sd(d, 0.0);
    for (std::size_t f = 0; f < d; ++f) {
        for (double v : columns[f]) mean[f] += v;
        mean[f] /= static_cast<double>(m);
        for (double v : columns[f]) sd[f] += (v - mean[f]) * (v - mean[f]);
        sd[f] = std::sqrt(sd[f]);
    }

    CorrelationMatrix corr;
    corr.names = names;
    corr.values.assign(d * d, 0.0);
    for (std::size_t a = 0; a < d; ++a) {
        corr.values[a * d + a] = 1.0;
        for (std::size_t b = a + 1; b < d; ++b) {
            double r = 0.0;
            if (sd[a] > 0.0 && sd[b] > 0.0) {
                double s = 0.0;
                for (std::size_t i = 0; i < m; ++i) {
                    s += (columns[a][i] - mean[a]) * (columns[b][i] - mean[b]);
                }
                r = s / (sd[a] * sd[b]);
            }
            corr.values[a * d + b] = r;
            corr.values[b * d + a] = r;
        }
    }
    return corr;
}

/// 5x5 correlation over the selected model features and the target:
/// age, gender, category, amount, fraud.
inline CorrelationMatrix correlation_matrix(
    const std::vector<RawTransaction>& rows) {
    if (rows.size() < 2) {
        throw std::invalid_argument("correlation_matrix: need at least 2 rows");
    }
    const EncodedDataset ds = encode_dataset(rows);
    const std::size_t m = rows.size();
    std::vector<std::vector<double>> cols(5, std::vector<double>(m));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t f = 0; f < 4; ++f) cols[f][i] = ds.features[i][f];
        cols[4][i] = ds.labels[i];
    }
    return correlation_columns(cols,
                               {"age", "gender", "category", "amount", "fraud"});
}

}  // namespace qmlbench
