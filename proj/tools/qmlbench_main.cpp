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

#include <CLI11.hpp>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "qmlbench/pipeline.hpp"

namespace {

using namespace qmlbench;

// Flag values shared by all subcommands. Precedence: defaults, then the
// config file, then explicitly passed flags.
struct Flags {
    std::string config_path;
    std::string data_path;
    bool synthetic = false;
    int n_per_class = 100;
    double test_fraction = 0.2;
    std::string featuremap = "z";
    int reps = 2;
    std::string entanglement = "full";
    std::vector<std::string> pauli_strings;
    std::string model = "qsvc";
    double svm_c = 1.0;
    int ansatz_reps = 3;
    std::string loss = "cross_entropy";
    std::string method = "cobyla";
    int maxiter = 200;
    double rho_begin = 0.5;
    double rho_end = 1e-4;
    int shots = 0;
    std::uint64_t seed = 12345;
    std::string out = "out";
};

void add_common_flags(CLI::App* cmd, Flags& f) {
    cmd->add_option("--config", f.config_path, "JSON config file");
    cmd->add_option("--seed", f.seed, "root seed for every stochastic step");
    cmd->add_option("--out", f.out, "output directory");
    cmd->add_option("--shots", f.shots, "shots per estimate (0 = exact)");
}

void add_data_flags(CLI::App* cmd, Flags& f) {
    cmd->add_option("--data", f.data_path, "BankSim CSV path");
    cmd->add_flag("--synthetic", f.synthetic,
                  "use the calibrated synthetic generator");
    cmd->add_option("--n-per-class", f.n_per_class, "subset rows per class");
    cmd->add_option("--test-fraction", f.test_fraction,
                    "held-out fraction (stratified)");
}

void add_featuremap_flags(CLI::App* cmd, Flags& f) {
    cmd->add_option("--featuremap", f.featuremap, "z, zz, or pauli");
    cmd->add_option("--reps", f.reps, "feature-map repetitions");
    cmd->add_option("--entanglement", f.entanglement, "full or linear");
    cmd->add_option("--pauli-strings", f.pauli_strings,
                    "Pauli-family strings, e.g. Z ZZ ZZZZ");
}

void add_model_flags(CLI::App* cmd, Flags& f) {
    cmd->add_option("--model", f.model, "qsvc, vqc, eqnn, or sqnn");
    cmd->add_option("--svm-c", f.svm_c, "QSVC box constraint C");
    cmd->add_option("--ansatz-reps", f.ansatz_reps, "ansatz layers");
    cmd->add_option("--loss", f.loss, "cross_entropy or squared_error");
    cmd->add_option("--optimizer", f.method, "cobyla or neldermead");
    cmd->add_option("--maxiter", f.maxiter, "optimizer evaluation budget");
    cmd->add_option("--rho-begin", f.rho_begin, "initial trust radius");
    cmd->add_option("--rho-end", f.rho_end, "final trust radius");
}

RunConfig build_config(const CLI::App* cmd, const Flags& f) {
    RunConfig c;
    if (cmd->count("--config")) {
        try {
            c = load_config(f.config_path);
        } catch (const std::exception& e) {
            throw UsageError(std::string("cannot load config: ") + e.what());
        }
    }
    auto passed = [&](const std::string& name) {
        return cmd->get_option_no_throw(name) != nullptr &&
               cmd->count(name) > 0;
    };
    try {
        if (passed("--data")) c.source = f.data_path;
        if (passed("--synthetic")) c.source = "synthetic";
        if (passed("--n-per-class")) c.n_per_class = f.n_per_class;
        if (passed("--test-fraction")) c.test_fraction = f.test_fraction;
        if (passed("--featuremap")) {
            c.featuremap.family = featuremap_from_name(f.featuremap);
        }
        if (passed("--reps")) c.featuremap.reps = f.reps;
        if (passed("--entanglement")) {
            c.featuremap.entanglement = entanglement_from_name(f.entanglement);
        }
        if (passed("--pauli-strings")) {
            c.featuremap.pauli_strings = f.pauli_strings;
        }
        if (passed("--model")) c.model = f.model;
        if (passed("--svm-c")) c.svm_c = f.svm_c;
        if (passed("--ansatz-reps")) c.ansatz_reps = f.ansatz_reps;
        if (passed("--loss")) c.loss = f.loss;
        if (passed("--optimizer")) {
            c.optimizer.method = method_from_name(f.method);
        }
        if (passed("--maxiter")) c.optimizer.maxiter = f.maxiter;
        if (passed("--rho-begin")) c.optimizer.rho_begin = f.rho_begin;
        if (passed("--rho-end")) c.optimizer.rho_end = f.rho_end;
        if (passed("--shots")) c.shots = f.shots;
        if (passed("--seed")) c.seed = f.seed;
        if (passed("--out")) c.out_dir = f.out;
        c.featuremap.n_features = 4;
        c.validate();
    } catch (const UsageError&) {
        throw;
    } catch (const std::exception& e) {
        throw UsageError(e.what());
    }
    return c;
}

int cmd_prepare(const RunConfig& config) {
    const PreparedDataset prep = prepare_dataset(config);
    write_prepare_artifacts(prep, config);
    std::cout << "prepared " << prep.rows.size() << " rows ("
              << prep.split.x_train.size() << " train / "
              << prep.split.x_test.size() << " test) in " << config.out_dir
              << "\n";
    return 0;
}

int cmd_train(const RunConfig& config) {
    const PreparedTable table = load_prepared(config.out_dir);
    const std::string fm_name = featuremap_name(config.featuremap.family);
    const CellResult cell = run_cell(table, config.model, fm_name, config);
    write_cell_artifacts(cell, config.out_dir, "");
    ReportCell view;
    view.model = cell.model;
    view.featuremap = cell.featuremap;
    view.report = cell.test_report;
    std::cout << render_table({view});
    return 0;
}

int cmd_benchmark(const RunConfig& config) {
    const PreparedTable table = load_prepared(config.out_dir);
    const BenchmarkResult result = run_benchmark(table, config);
    for (const auto& cell : result.cells) {
        if (!cell.failed) {
            write_cell_artifacts(cell, config.out_dir,
                                 cell.model + "_" + cell.featuremap + "_");
        }
    }
    write_text_file((std::filesystem::path(config.out_dir) / "benchmark.txt")
                        .string(),
                    result.table_text);
    write_json_file((std::filesystem::path(config.out_dir) / "benchmark.json")
                        .string(),
                    benchmark_to_json(result));
    std::cout << result.table_text;
    for (const auto& cell : result.cells) {
        if (cell.failed) {
            std::cerr << "cell " << cell.model << "/" << cell.featuremap
                      << " failed: " << cell.error << "\n";
        }
    }
    return 0;
}

int cmd_kernel(const RunConfig& config) {
    const PreparedTable table = load_prepared(config.out_dir);
    const FeatureMapSpec spec =
        cell_featuremap(config, featuremap_name(config.featuremap.family));
    const KernelMatrix gram =
        config.shots > 0
            ? gram_matrix(spec, table.x_all, KernelMode::Shots, config.shots,
                          cell_seed(config.seed, "qsvc",
                                    featuremap_name(config.featuremap.family)))
            : gram_matrix(spec, table.x_all, KernelMode::Exact);
    std::vector<std::string> ids;
    for (std::size_t i = 0; i < gram.n; ++i) ids.push_back("s" + std::to_string(i));
    const std::string path =
        (std::filesystem::path(config.out_dir) / "kernel.csv").string();
    write_kernel_csv(path, gram, ids);
    std::cout << "wrote " << gram.n << "x" << gram.n << " Gram matrix to "
              << path << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantum machine-learning fraud-detection benchmark"};
    app.require_subcommand(1);

    Flags flags;
    CLI::App* prepare =
        app.add_subcommand("prepare", "build and analyze the dataset");
    add_common_flags(prepare, flags);
    add_data_flags(prepare, flags);

    CLI::App* train =
        app.add_subcommand("train", "train one model on the prepared dataset");
    add_common_flags(train, flags);
    add_data_flags(train, flags);
    add_featuremap_flags(train, flags);
    add_model_flags(train, flags);

    CLI::App* benchmark =
        app.add_subcommand("benchmark", "run the 4-model x 3-feature-map grid");
    add_common_flags(benchmark, flags);
    add_data_flags(benchmark, flags);
    add_featuremap_flags(benchmark, flags);
    add_model_flags(benchmark, flags);

    CLI::App* kernel =
        app.add_subcommand("kernel", "dump the Gram matrix as CSV");
    add_common_flags(kernel, flags);
    add_featuremap_flags(kernel, flags);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (prepare->parsed()) return cmd_prepare(build_config(prepare, flags));
        if (train->parsed()) return cmd_train(build_config(train, flags));
        if (benchmark->parsed()) {
            return cmd_benchmark(build_config(benchmark, flags));
        }
        if (kernel->parsed()) return cmd_kernel(build_config(kernel, flags));
    } catch (const qmlbench::UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
