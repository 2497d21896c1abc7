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

#include <json.hpp>
#include <stdexcept>
#include <string>

#include "qmlbench/io.hpp"
#include "qmlbench/metrics.hpp"
#include "qmlbench/svm.hpp"
#include "qmlbench/variational.hpp"

namespace qmlbench {

using json = nlohmann::ordered_json;

// ---- enum / name mappings used by files and the CLI ----

inline std::string featuremap_name(FeatureMapFamily f) {
    switch (f) {
        case FeatureMapFamily::Z: return "z";
        case FeatureMapFamily::ZZ: return "zz";
        case FeatureMapFamily::Pauli: return "pauli";
    }
    throw std::logic_error("featuremap_name");
}

inline FeatureMapFamily featuremap_from_name(const std::string& s) {
    if (s == "z") return FeatureMapFamily::Z;
    if (s == "zz") return FeatureMapFamily::ZZ;
    if (s == "pauli") return FeatureMapFamily::Pauli;
    throw std::invalid_argument("unknown feature map '" + s +
                                "' (expected one of: z, zz, pauli)");
}

inline std::string model_name(ModelKind k) {
    switch (k) {
        case ModelKind::Vqc: return "vqc";
        case ModelKind::EstimatorQnn: return "eqnn";
        case ModelKind::SamplerQnn: return "sqnn";
    }
    throw std::logic_error("model_name");
}

inline std::string entanglement_name(Entanglement e) {
    return e == Entanglement::Full ? "full" : "linear";
}

inline Entanglement entanglement_from_name(const std::string& s) {
    if (s == "full") return Entanglement::Full;
    if (s == "linear") return Entanglement::Linear;
    throw std::invalid_argument("unknown entanglement '" + s +
                                "' (expected one of: full, linear)");
}

inline std::string loss_name(LossKind k) {
    return k == LossKind::CrossEntropy ? "cross_entropy" : "squared_error";
}

inline LossKind loss_from_name(const std::string& s) {
    if (s == "cross_entropy") return LossKind::CrossEntropy;
    if (s == "squared_error") return LossKind::SquaredError;
    throw std::invalid_argument(
        "unknown loss '" + s + "' (expected one of: cross_entropy, squared_error)");
}

inline std::string method_name(OptMethod m) {
    return m == OptMethod::Cobyla ? "cobyla" : "neldermead";
}

inline OptMethod method_from_name(const std::string& s) {
    if (s == "cobyla") return OptMethod::Cobyla;
    if (s == "neldermead") return OptMethod::NelderMead;
    throw std::invalid_argument("unknown optimizer '" + s +
                                "' (expected one of: cobyla, neldermead)");
}

// ---- FeatureMapSpec ----

inline json featuremap_to_json(const FeatureMapSpec& spec) {
    return json{{"family", featuremap_name(spec.family)},
                {"n_features", spec.n_features},
                {"reps", spec.reps},
                {"entanglement", entanglement_name(spec.entanglement)},
                {"pauli_strings", spec.pauli_strings}};
}

inline FeatureMapSpec featuremap_from_json(const json& j) {
    FeatureMapSpec spec;
    spec.family = featuremap_from_name(j.at("family").get<std::string>());
    spec.n_features = j.at("n_features").get<int>();
    spec.reps = j.at("reps").get<int>();
    spec.entanglement =
        entanglement_from_name(j.at("entanglement").get<std::string>());
    spec.pauli_strings = j.at("pauli_strings").get<std::vector<std::string>>();
    return spec;
}

// ---- QSVC model file (versioned) ----

inline json qsvc_to_json(const QsvcModel& model) {
    return json{{"format", "qmlbench-qsvc-model"},
                {"version", 1},
                {"featuremap", featuremap_to_json(model.spec)},
                {"C", model.C},
                {"bias", model.bias},
                {"alphas", model.alphas},
                {"support_vectors", model.support_vectors}};
}

inline QsvcModel qsvc_from_json(const json& j) {
    if (j.at("format").get<std::string>() != "qmlbench-qsvc-model") {
        throw std::runtime_error("qsvc_from_json: wrong format tag");
    }
    if (j.at("version").get<int>() != 1) {
        throw std::runtime_error("qsvc_from_json: unsupported version");
    }
    QsvcModel m;
    m.spec = featuremap_from_json(j.at("featuremap"));
    m.C = j.at("C").get<double>();
    m.bias = j.at("bias").get<double>();
    m.alphas = j.at("alphas").get<std::vector<double>>();
    m.support_vectors =
        j.at("support_vectors").get<std::vector<std::vector<double>>>();
    if (m.alphas.size() != m.support_vectors.size()) {
        throw std::runtime_error("qsvc_from_json: alpha/support size mismatch");
    }
    return m;
}

// ---- variational model file (versioned) ----

inline json variational_to_json(const VariationalModel& model) {
    json j{{"format", "qmlbench-variational-model"},
           {"version", 1},
           {"kind", model_name(model.kind)},
           {"featuremap", featuremap_to_json(model.spec)},
           {"ansatz",
            {{"n_qubits", model.ansatz.n_qubits},
             {"reps", model.ansatz.reps},
             {"theta", model.ansatz.theta}}},
           {"loss", loss_name(model.loss_kind)}};
    if (model.head) {
        j["head"] = {{"weights", model.head->weights}, {"bias", model.head->bias}};
    } else {
        j["head"] = nullptr;
    }
    return j;
}

inline VariationalModel variational_from_json(const json& j) {
    if (j.at("format").get<std::string>() != "qmlbench-variational-model") {
        throw std::runtime_error("variational_from_json: wrong format tag");
    }
    if (j.at("version").get<int>() != 1) {
        throw std::runtime_error("variational_from_json: unsupported version");
    }
    VariationalModel m;
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "vqc") m.kind = ModelKind::Vqc;
    else if (kind == "eqnn") m.kind = ModelKind::EstimatorQnn;
    else if (kind == "sqnn") m.kind = ModelKind::SamplerQnn;
    else throw std::runtime_error("variational_from_json: unknown kind " + kind);
    m.spec = featuremap_from_json(j.at("featuremap"));
    m.ansatz.n_qubits = j.at("ansatz").at("n_qubits").get<int>();
    m.ansatz.reps = j.at("ansatz").at("reps").get<int>();
    m.ansatz.theta = j.at("ansatz").at("theta").get<std::vector<double>>();
    m.loss_kind = loss_from_name(j.at("loss").get<std::string>());
    if (!j.at("head").is_null()) {
        LinearHead head;
        head.weights =
            j.at("head").at("weights").get<std::vector<std::vector<double>>>();
        head.bias = j.at("head").at("bias").get<std::vector<double>>();
        m.head = std::move(head);
    }
    if ((m.kind == ModelKind::EstimatorQnn) != m.head.has_value()) {
        throw std::runtime_error(
            "variational_from_json: head must be present exactly for eqnn");
    }
    return m;
}

// ---- classification report ----

inline json class_metrics_to_json(const ClassMetrics& m) {
    return json{{"precision", m.precision},
                {"recall", m.recall},
                {"f1", m.f1},
                {"support", m.support}};
}

inline json report_to_json(const ClassificationReport& rep) {
    return json{{"format", "qmlbench-report"},
                {"version", 1},
                {"class0", class_metrics_to_json(rep.class0)},
                {"class1", class_metrics_to_json(rep.class1)},
                {"accuracy", rep.accuracy},
                {"macro_avg", class_metrics_to_json(rep.macro_avg)},
                {"weighted_avg", class_metrics_to_json(rep.weighted_avg)},
                {"zero_division", rep.zero_division},
                {"confusion",
                 {{"tp", rep.counts.tp},
                  {"fp", rep.counts.fp},
                  {"tn", rep.counts.tn},
                  {"fn", rep.counts.fn}}}};
}

// ---- file helpers ----

inline void write_json_file(const std::string& path, const json& j) {
    write_text_file(path, j.dump(2) + "\n");
}

inline json read_json_file(const std::string& path) {
    return json::parse(read_text_file(path));
}

}  // namespace qmlbench
