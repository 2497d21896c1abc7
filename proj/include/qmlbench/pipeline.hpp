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

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "qmlbench/analysis.hpp"
#include "qmlbench/config.hpp"
#include "qmlbench/dataset.hpp"
#include "qmlbench/kernel.hpp"
#include "qmlbench/metrics.hpp"
#include "qmlbench/svm.hpp"
#include "qmlbench/variational.hpp"

namespace qmlbench {

/// Configuration or input errors; the CLI maps these to exit code 2.
class UsageError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

inline const std::vector<std::string>& benchmark_models() {
    static const std::vector<std::string> models = {"qsvc", "vqc", "eqnn", "sqnn"};
    return models;
}

inline const std::vector<std::string>& benchmark_featuremaps() {
    static const std::vector<std::string> maps = {"zz", "pauli", "z"};
    return maps;
}

/// Stable per-cell seed: cells are reproducible independent of execution
/// order, and a single-model run matches its benchmark-grid cell.
inline std::uint64_t cell_seed(std::uint64_t run_seed, const std::string& model,
                               const std::string& fm) {
    std::size_t mi = 0, fi = 0;
    for (std::size_t i = 0; i < benchmark_models().size(); ++i) {
        if (benchmark_models()[i] == model) mi = i;
    }
    for (std::size_t i = 0; i < benchmark_featuremaps().size(); ++i) {
        if (benchmark_featuremaps()[i] == fm) fi = i;
    }
    return SplitMix64(run_seed).split(0xce11 + mi * 3 + fi).next_u64();
}

struct PreparedDataset {
    std::vector<RawTransaction> rows;  // balanced subset, shuffled
    EncodedDataset encoded;            // unscaled 4-feature matrix + labels
    SplitDataset split;                // stratified, scaled on train stats
};

/// Source rows (synthetic or CSV) -> balanced subset -> encode -> split.
inline PreparedDataset prepare_dataset(const RunConfig& config) {
    config.validate();
    PreparedDataset prep;
    std::vector<RawTransaction> all;
    if (config.source == "synthetic") {
        // the generator is balanced already; sampling keeps the code path shared
        all = synthesize(config.n_per_class, config.seed);
    } else {
        if (!std::filesystem::exists(config.source)) {
            throw UsageError("data file not found: " + config.source);
        }
        all = load_banksim_csv(config.source);
    }
    prep.rows = balanced_subset(all, config.n_per_class,
                                SplitMix64(config.seed).split(1).next_u64());
    prep.encoded = encode_dataset(prep.rows);
    prep.split = split_dataset(prep.encoded.features, prep.encoded.labels,
                               config.test_fraction,
                               SplitMix64(config.seed).split(2).next_u64());
    return prep;
}

// ---- prepare artifacts on disk ----

inline std::string encoded_csv_path(const std::string& out) {
    return (std::filesystem::path(out) / "encoded.csv").string();
}
inline std::string split_csv_path(const std::string& out) {
    return (std::filesystem::path(out) / "split.csv").string();
}

/// encoded.csv: scaled features + label for every subset row (train-fitted
/// scaling, test rows clipped into range); split.csv: row -> partition;
/// pca.json: nine-column PCA ranking; correlation.csv: 5x5 Pearson matrix.
inline void write_prepare_artifacts(const PreparedDataset& prep,
                                    const RunConfig& config) {
    std::filesystem::create_directories(config.out_dir);

    std::vector<std::string> partition(prep.rows.size());
    for (std::size_t i : prep.split.train_indices) partition[i] = "train";
    for (std::size_t i : prep.split.test_indices) partition[i] = "test";

    std::string encoded = "age,gender,category,amount,label\n";
    for (std::size_t i = 0; i < prep.rows.size(); ++i) {
        const std::vector<double> x =
            prep.split.scaler.transform(prep.encoded.features[i]);
        for (double v : x) {
            encoded += format_double(v);
            encoded += ',';
        }
        encoded += std::to_string(prep.encoded.labels[i]);
        encoded += '\n';
    }
    write_text_file(encoded_csv_path(config.out_dir), encoded);

    std::string split = "index,partition\n";
    for (std::size_t i = 0; i < partition.size(); ++i) {
        split += std::to_string(i) + ',' + partition[i] + '\n';
    }
    write_text_file(split_csv_path(config.out_dir), split);

    json pca = json::array();
    for (const auto& rf : pca_rank(prep.rows)) {
        pca.push_back({{"feature", rf.name}, {"weight", rf.weight}});
    }
    write_json_file(
        (std::filesystem::path(config.out_dir) / "pca.json").string(),
        json{{"format", "qmlbench-pca-ranking"}, {"version", 1}, {"ranking", pca}});

    const CorrelationMatrix corr = correlation_matrix(prep.rows);
    std::string corr_csv = "column";
    for (const auto& n : corr.names) corr_csv += ',' + n;
    corr_csv += '\n';
    for (std::size_t i = 0; i < corr.names.size(); ++i) {
        corr_csv += corr.names[i];
        for (std::size_t j = 0; j < corr.names.size(); ++j) {
            corr_csv += ',' + format_double(corr.at(i, j));
        }
        corr_csv += '\n';
    }
    write_text_file(
        (std::filesystem::path(config.out_dir) / "correlation.csv").string(),
        corr_csv);
}

/// Scaled samples reloaded from the prepare artifacts.
struct PreparedTable {
    std::vector<std::vector<double>> x_train, x_test;
    std::vector<int> y_train, y_test;
    std::vector<std::vector<double>> x_all;  // encoded.csv row order
    std::vector<int> y_all;
};

inline PreparedTable load_prepared(const std::string& out_dir) {
    const std::string enc_path = encoded_csv_path(out_dir);
    const std::string split_path = split_csv_path(out_dir);
    if (!std::filesystem::exists(enc_path) ||
        !std::filesystem::exists(split_path)) {
        throw UsageError("prepared dataset not found in '" + out_dir +
                         "' (run the prepare command first)");
    }

    std::vector<std::vector<double>> features;
    std::vector<int> labels;
    {
        std::ifstream is(enc_path, std::ios::binary);
        std::string line;
        std::getline(is, line);  // header
        while (std::getline(is, line)) {
            if (line.empty()) continue;
            const auto fields = split_csv_line(line);
            if (fields.size() != 5) {
                throw std::runtime_error("encoded.csv: wrong column count");
            }
            features.push_back({std::stod(fields[0]), std::stod(fields[1]),
                                std::stod(fields[2]), std::stod(fields[3])});
            labels.push_back(std::stoi(fields[4]));
        }
    }

    PreparedTable table;
    {
        std::ifstream is(split_path, std::ios::binary);
        std::string line;
        std::getline(is, line);  // header
        while (std::getline(is, line)) {
            if (line.empty()) continue;
            const auto fields = split_csv_line(line);
            if (fields.size() != 2) {
                throw std::runtime_error("split.csv: wrong column count");
            }
            const std::size_t idx = std::stoul(fields[0]);
            if (idx >= features.size()) {
                throw std::runtime_error("split.csv: index out of range");
            }
            if (fields[1] == "train") {
                table.x_train.push_back(features[idx]);
                table.y_train.push_back(labels[idx]);
            } else if (fields[1] == "test") {
                table.x_test.push_back(features[idx]);
                table.y_test.push_back(labels[idx]);
            } else {
                throw std::runtime_error("split.csv: unknown partition");
            }
        }
    }
    if (table.x_train.empty() || table.x_test.empty()) {
        throw UsageError("prepared dataset is empty");
    }
    table.x_all = std::move(features);
    table.y_all = std::move(labels);
    return table;
}

// ---- model training cells ----

struct CellResult {
    std::string model;
    std::string featuremap;
    bool failed = false;
    std::string error;
    ClassificationReport test_report;
    std::vector<TrainRecord> records;  // empty for qsvc
    json model_json;
};

inline FeatureMapSpec cell_featuremap(const RunConfig& config,
                                      const std::string& fm_name) {
    FeatureMapSpec spec = config.featuremap;
    spec.family = featuremap_from_name(fm_name);
    spec.n_features = 4;
    return spec;
}

/// Train one (model, feature map) cell on the prepared table and evaluate
/// on the test partition.
inline CellResult run_cell(const PreparedTable& table, const std::string& model,
                           const std::string& fm_name, const RunConfig& config) {
    CellResult cell;
    cell.model = model;
    cell.featuremap = fm_name;
    const FeatureMapSpec spec = cell_featuremap(config, fm_name);
    const std::uint64_t seed = cell_seed(config.seed, model, fm_name);

    if (model == "qsvc") {
        KernelMatrix gram =
            config.shots > 0
                ? clip_to_psd(gram_matrix(spec, table.x_train, KernelMode::Shots,
                                          config.shots, seed))
                : gram_matrix(spec, table.x_train, KernelMode::Exact);
        const QsvcModel trained =
            train_qsvc(gram, table.y_train, config.svm_c, table.x_train, spec);
        std::vector<int> y_pred;
        for (const Decision& d : predict_qsvc_batch(trained, table.x_test)) {
            y_pred.push_back(d.label);
        }
        cell.test_report = report(table.y_test, y_pred);
        cell.model_json = qsvc_to_json(trained);
        return cell;
    }

    ModelKind kind;
    if (model == "vqc") kind = ModelKind::Vqc;
    else if (model == "eqnn") kind = ModelKind::EstimatorQnn;
    else if (model == "sqnn") kind = ModelKind::SamplerQnn;
    else throw UsageError("unknown model '" + model +
                          "' (expected one of: qsvc, vqc, eqnn, sqnn)");

    VariationalModel m = make_model(kind, spec, config.ansatz_reps,
                                    SplitMix64(seed).split(7).next_u64());
    m.loss_kind = loss_from_name(config.loss);
    const int shots = config.shots;
    TrainOutcome outcome = train(m, table.x_train, table.y_train,
                                 config.optimizer, shots,
                                 SplitMix64(seed).split(8).next_u64());
    std::vector<int> y_pred;
    const SplitMix64 pred_root = SplitMix64(seed).split(9);
    for (std::size_t i = 0; i < table.x_test.size(); ++i) {
        y_pred.push_back(predict(outcome.model, table.x_test[i], shots,
                                 pred_root.split(i).next_u64()));
    }
    cell.test_report = report(table.y_test, y_pred);
    cell.records = std::move(outcome.records);
    cell.model_json = variational_to_json(outcome.model);
    return cell;
}

struct BenchmarkResult {
    std::vector<CellResult> cells;
    std::string table_text;
};

/// The full 4-model x 3-feature-map grid over one shared prepared split.
/// A failed cell is reported in place without aborting the rest.
inline BenchmarkResult run_benchmark(const PreparedTable& table,
                                     const RunConfig& config) {
    BenchmarkResult result;
    for (const auto& model : benchmark_models()) {
        for (const auto& fm : benchmark_featuremaps()) {
            try {
                result.cells.push_back(run_cell(table, model, fm, config));
            } catch (const std::exception& e) {
                CellResult failed;
                failed.model = model;
                failed.featuremap = fm;
                failed.failed = true;
                failed.error = e.what();
                result.cells.push_back(std::move(failed));
            }
        }
    }
    std::vector<ReportCell> view;
    for (const auto& c : result.cells) {
        ReportCell rc;
        rc.model = c.model;
        rc.featuremap = c.featuremap;
        if (!c.failed) rc.report = c.test_report;
        rc.error = c.error;
        view.push_back(std::move(rc));
    }
    result.table_text = render_table(view);
    return result;
}

/// Write one cell's artifacts under the output directory. The prefix is
/// empty for single-model runs (model.json, report.json, loss.csv) and
/// "<model>_<fm>_" for grid cells.
inline void write_cell_artifacts(const CellResult& cell,
                                 const std::string& out_dir,
                                 const std::string& prefix) {
    const std::filesystem::path dir(out_dir);
    std::filesystem::create_directories(dir);
    write_json_file((dir / (prefix + "model.json")).string(), cell.model_json);
    write_json_file((dir / (prefix + "report.json")).string(),
                    report_to_json(cell.test_report));
    if (!cell.records.empty()) {
        std::string body = "iteration,loss\n";
        for (const auto& r : cell.records) {
            body += std::to_string(r.iteration);
            body += ',';
            body += format_double(r.loss);
            body += '\n';
        }
        write_text_file((dir / (prefix + "loss.csv")).string(), body);
    }
}

inline json benchmark_to_json(const BenchmarkResult& result) {
    json cells = json::array();
    for (const auto& c : result.cells) {
        json entry{{"model", c.model}, {"featuremap", c.featuremap}};
        if (c.failed) {
            entry["error"] = c.error;
        } else {
            entry["report"] = report_to_json(c.test_report);
        }
        cells.push_back(std::move(entry));
    }
    return json{{"format", "qmlbench-benchmark"}, {"version", 1}, {"cells", cells}};
}

}  // namespace qmlbench
