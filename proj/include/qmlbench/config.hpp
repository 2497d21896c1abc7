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
#include <string>

#include "qmlbench/serialize.hpp"

namespace qmlbench {

/// Full description of one pipeline run. Serializes losslessly to a JSON
/// config file; command-line flags override file values.
struct RunConfig {
    std::string source = "synthetic";  // "synthetic" or a BankSim CSV path
    int n_per_class = 100;
    double test_fraction = 0.2;
    FeatureMapSpec featuremap;         // n_features pinned to 4 by the pipeline
    std::string model = "qsvc";        // qsvc | vqc | eqnn | sqnn
    double svm_c = 1.0;
    int ansatz_reps = 3;
    std::string loss = "cross_entropy";
    OptimizerConfig optimizer;         // maxiter defaults to 200
    int shots = 0;                     // 0 = exact simulation
    std::uint64_t seed = 12345;
    std::string out_dir = "out";

    void validate() const {
        if (n_per_class < 1) {
            throw std::invalid_argument("config: n_per_class must be >= 1");
        }
        if (!(test_fraction > 0.0) || !(test_fraction < 1.0)) {
            throw std::invalid_argument("config: test_fraction in (0, 1)");
        }
        if (shots < 0) throw std::invalid_argument("config: shots must be >= 0");
        if (svm_c <= 0.0) throw std::invalid_argument("config: C must be > 0");
        if (ansatz_reps < 1) {
            throw std::invalid_argument("config: ansatz_reps must be >= 1");
        }
        if (model != "qsvc" && model != "vqc" && model != "eqnn" &&
            model != "sqnn") {
            throw std::invalid_argument(
                "config: unknown model '" + model +
                "' (expected one of: qsvc, vqc, eqnn, sqnn)");
        }
        loss_from_name(loss);
        if (loss == "squared_error" && model != "eqnn") {
            throw std::invalid_argument(
                "config: squared_error loss applies to eqnn only");
        }
        optimizer.validate();
    }
};

inline json config_to_json(const RunConfig& c) {
    return json{{"format", "qmlbench-config"},
                {"version", 1},
                {"source", c.source},
                {"n_per_class", c.n_per_class},
                {"test_fraction", c.test_fraction},
                {"featuremap", featuremap_to_json(c.featuremap)},
                {"model", c.model},
                {"C", c.svm_c},
                {"ansatz_reps", c.ansatz_reps},
                {"loss", c.loss},
                {"optimizer",
                 {{"method", method_name(c.optimizer.method)},
                  {"maxiter", c.optimizer.maxiter},
                  {"rho_begin", c.optimizer.rho_begin},
                  {"rho_end", c.optimizer.rho_end},
                  {"seed", c.optimizer.seed}}},
                {"shots", c.shots},
                {"seed", c.seed},
                {"out", c.out_dir}};
}

inline RunConfig config_from_json(const json& j) {
    if (j.at("format").get<std::string>() != "qmlbench-config") {
        throw std::runtime_error("config: wrong format tag");
    }
    if (j.at("version").get<int>() != 1) {
        throw std::runtime_error("config: unsupported version");
    }
    RunConfig c;
    c.source = j.at("source").get<std::string>();
    c.n_per_class = j.at("n_per_class").get<int>();
    c.test_fraction = j.at("test_fraction").get<double>();
    c.featuremap = featuremap_from_json(j.at("featuremap"));
    c.model = j.at("model").get<std::string>();
    c.svm_c = j.at("C").get<double>();
    c.ansatz_reps = j.at("ansatz_reps").get<int>();
    c.loss = j.at("loss").get<std::string>();
    const json& opt = j.at("optimizer");
    c.optimizer.method = method_from_name(opt.at("method").get<std::string>());
    c.optimizer.maxiter = opt.at("maxiter").get<int>();
    c.optimizer.rho_begin = opt.at("rho_begin").get<double>();
    c.optimizer.rho_end = opt.at("rho_end").get<double>();
    c.optimizer.seed = opt.at("seed").get<std::uint64_t>();
    c.shots = j.at("shots").get<int>();
    c.seed = j.at("seed").get<std::uint64_t>();
    c.out_dir = j.at("out").get<std::string>();
    return c;
}

inline void save_config(const std::string& path, const RunConfig& c) {
    write_json_file(path, config_to_json(c));
}

inline RunConfig load_config(const std::string& path) {
    return config_from_json(read_json_file(path));
}

}  // namespace qmlbench
