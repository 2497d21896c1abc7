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
#include <array>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <initializer_list>
#include <limits>
#include <map>
#include <numbers>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qmlbench/io.hpp"
#include "qmlbench/rng.hpp"

namespace qmlbench {

/// One BankSim-schema transaction record. String fields keep their raw
/// (possibly single-quoted) form as found in the file.
struct RawTransaction {
    int step = 0;
    std::string customer;
    std::string age;     // category "0".."6" or "U"
    std::string gender;  // E, F, M, U
    std::string zipcode_ori;
    std::string merchant;
    std::string zip_merchant;
    std::string category;
    double amount = 0.0;
    int fraud = 0;
};

inline const std::array<std::string, 10>& banksim_columns() {
    static const std::array<std::string, 10> cols = {
        "step",     "customer",    "age",      "gender", "zipcodeOri",
        "merchant", "zipMerchant", "category", "amount", "fraud"};
    return cols;
}

namespace detail {

inline std::string strip_quotes(const std::string& s) {
    if (s.size() >= 2 && s.front() == '\'' && s.back() == '\'') {
        return s.substr(1, s.size() - 2);
    }
    return s;
}

}  // namespace detail

/// Age category to integer: the digit embedded in the token, or 7 for the
/// "U" (unknown) group.
inline int clean_age(const std::string& raw) {
    std::string digits;
    bool has_u = false;
    for (char c : raw) {
        if (std::isdigit(static_cast<unsigned char>(c))) digits.push_back(c);
        if (c == 'U' || c == 'u') has_u = true;
    }
    if (digits.empty()) {
        if (has_u) return 7;
        throw std::invalid_argument("clean_age: no digit in '" + raw + "'");
    }
    const int v = std::stoi(digits);
    if (v > 6) throw std::invalid_argument("clean_age: unknown age group " + digits);
    return v;
}

/// Parse a BankSim CSV file. Values may be single-quoted; the header must
/// contain all ten schema columns (any order).
inline std::vector<RawTransaction> load_banksim_csv(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("load_banksim_csv: cannot open " + path);

    std::string line;
    if (!std::getline(is, line)) {
        throw std::runtime_error("load_banksim_csv: missing header");
    }
    std::vector<std::string> header = split_csv_line(line);
    for (auto& h : header) h = detail::strip_quotes(h);
    std::map<std::string, std::size_t> col;
    for (std::size_t i = 0; i < header.size(); ++i) col[header[i]] = i;
    for (const auto& name : banksim_columns()) {
        if (!col.count(name)) {
            throw std::runtime_error("load_banksim_csv: missing column '" +
                                     name + "'");
        }
    }

    std::vector<RawTransaction> rows;
    std::size_t line_no = 1;
    while (std::getline(is, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        const std::vector<std::string> fields = split_csv_line(line);
        if (fields.size() != header.size()) {
            throw std::runtime_error("load_banksim_csv: line " +
                                     std::to_string(line_no) +
                                     ": wrong field count");
        }
        auto field = [&](const std::string& name) {
            return detail::strip_quotes(fields[col.at(name)]);
        };
        RawTransaction t;
        try {
            t.step = std::stoi(field("step"));
        } catch (const std::exception&) {
            throw std::runtime_error("load_banksim_csv: line " +
                                     std::to_string(line_no) + ": bad step");
        }
        t.customer = field("customer");
        t.age = field("age");
        t.gender = field("gender");
        t.zipcode_ori = field("zipcodeOri");
        t.merchant = field("merchant");
        t.zip_merchant = field("zipMerchant");
        t.category = field("category");
        try {
            std::size_t used = 0;
            t.amount = std::stod(field("amount"), &used);
            if (used != field("amount").size()) throw std::invalid_argument("");
        } catch (const std::exception&) {
            throw std::runtime_error("load_banksim_csv: line " +
                                     std::to_string(line_no) +
                                     ": unparsable amount");
        }
        if (t.amount < 0.0) {
            throw std::runtime_error("load_banksim_csv: line " +
                                     std::to_string(line_no) +
                                     ": negative amount");
        }
        const std::string fraud_s = field("fraud");
        if (fraud_s == "0") {
            t.fraud = 0;
        } else if (fraud_s == "1") {
            t.fraud = 1;
        } else {
            throw std::runtime_error("load_banksim_csv: line " +
                                     std::to_string(line_no) +
                                     ": fraud must be 0 or 1");
        }
        rows.push_back(std::move(t));
    }
    return rows;
}

/// Lexicographic label encoding plus the vocabulary for inverse lookup.
struct LabelEncoding {
    std::vector<int> codes;
    std::vector<std::string> vocabulary;
};

inline LabelEncoding encode_labels(const std::vector<std::string>& values) {
    if (values.empty()) throw std::invalid_argument("encode_labels: empty input");
    std::set<std::string> uniq(values.begin(), values.end());
    LabelEncoding enc;
    enc.vocabulary.assign(uniq.begin(), uniq.end());
    std::map<std::string, int> index;
    for (std::size_t i = 0; i < enc.vocabulary.size(); ++i) {
        index[enc.vocabulary[i]] = static_cast<int>(i);
    }
    enc.codes.reserve(values.size());
    for (const auto& v : values) enc.codes.push_back(index.at(v));
    return enc;
}

/// Seeded sample of exactly n_per_class rows of each class, without
/// replacement, in shuffled order.
inline std::vector<RawTransaction> balanced_subset(
    const std::vector<RawTransaction>& rows, int n_per_class,
    std::uint64_t seed) {
    if (n_per_class < 1) {
        throw std::invalid_argument("balanced_subset: n_per_class must be >= 1");
    }
    std::vector<std::size_t> idx0, idx1;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        (rows[i].fraud == 1 ? idx1 : idx0).push_back(i);
    }
    const auto need = static_cast<std::size_t>(n_per_class);
    if (idx0.size() < need || idx1.size() < need) {
        throw std::invalid_argument(
            "balanced_subset: a class has fewer rows than n_per_class");
    }
    SplitMix64 rng(seed);
    auto pick = [&](std::vector<std::size_t>& pool) {
        // partial Fisher-Yates: the first n_per_class entries are the sample
        for (std::size_t i = 0; i < need; ++i) {
            const std::size_t j =
                i + rng.next_below(static_cast<std::uint64_t>(pool.size() - i));
            std::swap(pool[i], pool[j]);
        }
        pool.resize(need);
    };
    pick(idx0);
    pick(idx1);

    std::vector<std::size_t> chosen;
    chosen.reserve(2 * need);
    chosen.insert(chosen.end(), idx0.begin(), idx0.end());
    chosen.insert(chosen.end(), idx1.begin(), idx1.end());
    for (std::size_t i = chosen.size(); i-- > 1;) {
        const std::size_t j = rng.next_below(static_cast<std::uint64_t>(i + 1));
        std::swap(chosen[i], chosen[j]);
    }
    std::vector<RawTransaction> out;
    out.reserve(chosen.size());
    for (std::size_t i : chosen) out.push_back(rows[i]);
    return out;
}

/// Scaled sample fed to the feature maps: (age, gender, category, amount)
/// each mapped to [0, pi].
struct EncodedSample {
    std::array<double, 4> features{};
    int label = 0;
};

inline const std::array<std::string, 4>& model_feature_names() {
    static const std::array<std::string, 4> names = {"age", "gender", "category",
                                                     "amount"};
    return names;
}

/// Per-feature min-max parameters mapping onto [0, pi]. Transforming data
/// outside the fitted range clips to the ends; a constant feature maps
/// to 0.
struct ScalingParams {
    std::vector<double> min;
    std::vector<double> max;

    double transform_one(std::size_t f, double v) const {
        const double lo = min[f], hi = max[f];
        if (hi <= lo) return 0.0;
        const double t = (std::clamp(v, lo, hi) - lo) / (hi - lo);
        return t * std::numbers::pi;
    }

    std::vector<double> transform(const std::vector<double>& x) const {
        std::vector<double> out(x.size());
        for (std::size_t f = 0; f < x.size(); ++f) out[f] = transform_one(f, x[f]);
        return out;
    }
};

inline ScalingParams fit_scaling(const std::vector<std::vector<double>>& xs) {
    if (xs.empty()) throw std::invalid_argument("fit_scaling: no samples");
    const std::size_t d = xs[0].size();
    ScalingParams p;
    p.min.assign(d, std::numeric_limits<double>::infinity());
    p.max.assign(d, -std::numeric_limits<double>::infinity());
    for (const auto& x : xs) {
        for (std::size_t f = 0; f < d; ++f) {
            p.min[f] = std::min(p.min[f], x[f]);
            p.max[f] = std::max(p.max[f], x[f]);
        }
    }
    return p;
}

/// Min-max scale each feature onto [0, pi]; fit and transform in one step.
inline std::pair<std::vector<EncodedSample>, ScalingParams> scale_features(
    const std::vector<std::vector<double>>& xs, const std::vector<int>& ys) {
    if (xs.size() != ys.size() || xs.empty()) {
        throw std::invalid_argument("scale_features: bad batch");
    }
    const ScalingParams params = fit_scaling(xs);
    std::vector<EncodedSample> out(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const std::vector<double> t = params.transform(xs[i]);
        if (t.size() != 4) {
            throw std::invalid_argument("scale_features: expected 4 features");
        }
        std::copy(t.begin(), t.end(), out[i].features.begin());
        out[i].label = ys[i];
    }
    return {out, params};
}

/// Unscaled feature matrix for the four model features plus the label
/// vector and categorical vocabularies.
struct EncodedDataset {
    std::vector<std::vector<double>> features;  // age, gender, category, amount
    std::vector<int> labels;
    std::vector<std::string> gender_vocabulary;
    std::vector<std::string> category_vocabulary;
};

inline EncodedDataset encode_dataset(const std::vector<RawTransaction>& rows) {
    if (rows.empty()) throw std::invalid_argument("encode_dataset: no rows");
    std::vector<std::string> genders, categories;
    genders.reserve(rows.size());
    categories.reserve(rows.size());
    for (const auto& r : rows) {
        genders.push_back(detail::strip_quotes(r.gender));
        categories.push_back(detail::strip_quotes(r.category));
    }
    const LabelEncoding g = encode_labels(genders);
    const LabelEncoding c = encode_labels(categories);

    EncodedDataset ds;
    ds.gender_vocabulary = g.vocabulary;
    ds.category_vocabulary = c.vocabulary;
    ds.features.reserve(rows.size());
    ds.labels.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        ds.features.push_back({static_cast<double>(clean_age(rows[i].age)),
                               static_cast<double>(g.codes[i]),
                               static_cast<double>(c.codes[i]),
                               rows[i].amount});
        ds.labels.push_back(rows[i].fraud);
    }
    return ds;
}

/// Stratified split with scaling fitted on the training partition only.
struct SplitDataset {
    std::vector<std::vector<double>> x_train;
    std::vector<int> y_train;
    std::vector<std::vector<double>> x_test;
    std::vector<int> y_test;
    std::vector<std::size_t> train_indices;
    std::vector<std::size_t> test_indices;
    ScalingParams scaler;
};

inline SplitDataset split_dataset(const std::vector<std::vector<double>>& xs,
                                  const std::vector<int>& ys,
                                  double test_fraction, std::uint64_t seed) {
    if (!(test_fraction > 0.0) || !(test_fraction < 1.0)) {
        throw std::invalid_argument("split_dataset: test_fraction in (0, 1)");
    }
    if (xs.size() != ys.size() || xs.empty()) {
        throw std::invalid_argument("split_dataset: bad batch");
    }
    std::vector<std::size_t> idx0, idx1;
    for (std::size_t i = 0; i < ys.size(); ++i) {
        (ys[i] == 1 ? idx1 : idx0).push_back(i);
    }
    SplitMix64 rng(seed);
    SplitDataset out;
    auto assign = [&](std::vector<std::size_t>& pool) {
        const std::size_t n_test = static_cast<std::size_t>(
            std::llround(test_fraction * static_cast<double>(pool.size())));
        if (n_test == 0 || n_test >= pool.size()) {
            throw std::invalid_argument(
                "split_dataset: split would empty a class partition");
        }
        for (std::size_t i = pool.size(); i-- > 1;) {
            const std::size_t j = rng.next_below(static_cast<std::uint64_t>(i + 1));
            std::swap(pool[i], pool[j]);
        }
        for (std::size_t i = 0; i < pool.size(); ++i) {
            (i < n_test ? out.test_indices : out.train_indices).push_back(pool[i]);
        }
    };
    assign(idx0);
    assign(idx1);
    std::sort(out.train_indices.begin(), out.train_indices.end());
    std::sort(out.test_indices.begin(), out.test_indices.end());

    std::vector<std::vector<double>> raw_train;
    for (std::size_t i : out.train_indices) raw_train.push_back(xs[i]);
    out.scaler = fit_scaling(raw_train);
    for (std::size_t i : out.train_indices) {
        out.x_train.push_back(out.scaler.transform(xs[i]));
        out.y_train.push_back(ys[i]);
    }
    for (std::size_t i : out.test_indices) {
        out.x_test.push_back(out.scaler.transform(xs[i]));
        out.y_test.push_back(ys[i]);
    }
    return out;
}

namespace detail {

struct WeightedChoice {
    std::vector<std::string> values;
    std::vector<double> cumulative;

    WeightedChoice(std::initializer_list<std::pair<std::string, double>> items) {
        double acc = 0.0;
        for (const auto& [v, w] : items) {
            values.push_back(v);
            acc += w;
            cumulative.push_back(acc);
        }
        for (auto& c : cumulative) c /= acc;
    }

    const std::string& draw(SplitMix64& rng) const {
        const double u = rng.next_double();
        for (std::size_t i = 0; i < cumulative.size(); ++i) {
            if (u < cumulative[i]) return values[i];
        }
        return values.back();
    }
};

inline double truncated_normal_at_zero(SplitMix64& rng, double mean,
                                       double stddev) {
    for (int attempt = 0; attempt < 1000; ++attempt) {
        const double v = rng.next_normal(mean, stddev);
        if (v >= 0.0) return v;
    }
    return 0.0;
}

}  // namespace detail

/// Synthetic BankSim-like rows calibrated to the reported class statistics:
/// fraud amounts ~ N(567.23, 128.47) truncated at zero, non-fraud amounts
/// ~ N(145.68, 50.32) truncated at zero; fraud concentrated in age group 2
/// (45%) and 3 (32%); fraud gender split F 56% / M 34%; fraud categories
/// led by sports & toys (20%) and health (15%).
inline std::vector<RawTransaction> synthesize(int n_per_class,
                                              std::uint64_t seed) {
    if (n_per_class < 1) {
        throw std::invalid_argument("synthesize: n_per_class must be >= 1");
    }
    static const detail::WeightedChoice fraud_age{
        {"2", 0.45}, {"3", 0.32}, {"1", 0.08}, {"4", 0.07},
        {"0", 0.03}, {"5", 0.03}, {"6", 0.015}, {"U", 0.005}};
    static const detail::WeightedChoice normal_age{
        {"0", 0.02}, {"1", 0.03}, {"2", 0.06}, {"3", 0.10},
        {"4", 0.18}, {"5", 0.30}, {"6", 0.30}, {"U", 0.01}};
    static const detail::WeightedChoice fraud_gender{
        {"F", 0.56}, {"M", 0.34}, {"E", 0.04}, {"U", 0.06}};
    static const detail::WeightedChoice normal_gender{
        {"F", 0.45}, {"M", 0.45}, {"E", 0.06}, {"U", 0.04}};
    static const detail::WeightedChoice fraud_category{
        {"es_sportsandtoys", 0.20}, {"es_health", 0.15},
        {"es_travel", 0.18},        {"es_tech", 0.15},
        {"es_wellnessandbeauty", 0.17}, {"es_leisure", 0.15}};
    static const detail::WeightedChoice normal_category{
        {"es_barsandrestaurants", 0.30}, {"es_food", 0.30},
        {"es_fashion", 0.20},            {"es_hyper", 0.10},
        {"es_transportation", 0.08},     {"es_health", 0.02}};

    SplitMix64 rng = SplitMix64(seed).split(0x5942);
    std::vector<RawTransaction> rows;
    rows.reserve(2 * static_cast<std::size_t>(n_per_class));
    for (int fraud = 0; fraud <= 1; ++fraud) {
        for (int i = 0; i < n_per_class; ++i) {
            RawTransaction t;
            t.step = static_cast<int>(rng.next_below(180));
            t.customer = "C" + std::to_string(1000000000ULL + rng.next_below(999999999ULL));
            t.merchant = "M" + std::to_string(1000000000ULL + rng.next_below(999999999ULL));
            t.zipcode_ori = "28007";
            t.zip_merchant = "28007";
            t.fraud = fraud;
            if (fraud == 1) {
                t.age = fraud_age.draw(rng);
                t.gender = fraud_gender.draw(rng);
                t.category = fraud_category.draw(rng);
                t.amount = detail::truncated_normal_at_zero(rng, 567.23, 128.47);
            } else {
                t.age = normal_age.draw(rng);
                t.gender = normal_gender.draw(rng);
                t.category = normal_category.draw(rng);
                t.amount = detail::truncated_normal_at_zero(rng, 145.68, 50.32);
            }
            rows.push_back(std::move(t));
        }
    }
    // interleave classes deterministically
    for (std::size_t i = rows.size(); i-- > 1;) {
        const std::size_t j = rng.next_below(static_cast<std::uint64_t>(i + 1));
        std::swap(rows[i], rows[j]);
    }
    return rows;
}

}  // namespace qmlbench
