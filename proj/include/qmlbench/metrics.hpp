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

#include <cstdio>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qmlbench/io.hpp"
#include "qmlbench/variational.hpp"

namespace qmlbench {

/// Binary confusion counts with class 1 as the positive class.
struct ConfusionCounts {
    long tp = 0, fp = 0, tn = 0, fn = 0;
    long total() const { return tp + fp + tn + fn; }
};

struct ClassMetrics {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    long support = 0;
};

struct ClassificationReport {
    ClassMetrics class0;
    ClassMetrics class1;
    double accuracy = 0.0;
    ClassMetrics macro_avg;
    ClassMetrics weighted_avg;
    ConfusionCounts counts;
    bool zero_division = false;  // set when any denominator was zero
};

/// Precision/recall/F1/support per class plus accuracy and macro/weighted
/// averages. Zero denominators yield metric 0 and set the zero_division
/// flag.
inline ClassificationReport report(std::span<const int> y_true,
                                   std::span<const int> y_pred) {
    if (y_true.empty()) throw std::invalid_argument("report: empty input");
    if (y_true.size() != y_pred.size()) {
        throw std::invalid_argument("report: length mismatch");
    }
    ClassificationReport rep;
    for (std::size_t i = 0; i < y_true.size(); ++i) {
        if ((y_true[i] != 0 && y_true[i] != 1) ||
            (y_pred[i] != 0 && y_pred[i] != 1)) {
            throw std::invalid_argument("report: labels must be 0/1");
        }
        if (y_true[i] == 1) {
            ++(y_pred[i] == 1 ? rep.counts.tp : rep.counts.fn);
        } else {
            ++(y_pred[i] == 1 ? rep.counts.fp : rep.counts.tn);
        }
    }
    const auto& c = rep.counts;
    auto ratio = [&rep](long num, long den) {
        if (den == 0) {
            rep.zero_division = true;
            return 0.0;
        }
        return static_cast<double>(num) / static_cast<double>(den);
    };
    auto f1_of = [&rep](double p, double r) {
        if (p + r == 0.0) {
            rep.zero_division = true;
            return 0.0;
        }
        return 2.0 * p * r / (p + r);
    };

    rep.class1.precision = ratio(c.tp, c.tp + c.fp);
    rep.class1.recall = ratio(c.tp, c.tp + c.fn);
    rep.class1.f1 = f1_of(rep.class1.precision, rep.class1.recall);
    rep.class1.support = c.tp + c.fn;

    rep.class0.precision = ratio(c.tn, c.tn + c.fn);
    rep.class0.recall = ratio(c.tn, c.tn + c.fp);
    rep.class0.f1 = f1_of(rep.class0.precision, rep.class0.recall);
    rep.class0.support = c.tn + c.fp;

    rep.accuracy = static_cast<double>(c.tp + c.tn) /
                   static_cast<double>(c.total());

    const double s0 = static_cast<double>(rep.class0.support);
    const double s1 = static_cast<double>(rep.class1.support);
    const double total = s0 + s1;
    rep.macro_avg = {(rep.class0.precision + rep.class1.precision) / 2.0,
                     (rep.class0.recall + rep.class1.recall) / 2.0,
                     (rep.class0.f1 + rep.class1.f1) / 2.0, c.total()};
    rep.weighted_avg = {
        (s0 * rep.class0.precision + s1 * rep.class1.precision) / total,
        (s0 * rep.class0.recall + s1 * rep.class1.recall) / total,
        (s0 * rep.class0.f1 + s1 * rep.class1.f1) / total, c.total()};
    return rep;
}

/// One benchmark-grid cell; a failed run carries the error text instead of
/// a report.
struct ReportCell {
    std::string model;
    std::string featuremap;
    std::optional<ClassificationReport> report;
    std::string error;
};

namespace detail {

inline std::string two_decimals(double v) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

}  // namespace detail

/// Text table mirroring the benchmark layout: per model the rows Class 0,
/// Class 1, Accuracy, Macro avg, Weighted avg; per feature map the columns
/// Precision, Recall, F1-score. Values rounded to two decimals.
inline std::string render_table(const std::vector<ReportCell>& cells) {
    if (cells.empty()) throw std::invalid_argument("render_table: no cells");
    std::vector<std::string> models, maps;
    for (const auto& cell : cells) {
        if (std::find(models.begin(), models.end(), cell.model) == models.end()) {
            models.push_back(cell.model);
        }
        if (std::find(maps.begin(), maps.end(), cell.featuremap) == maps.end()) {
            maps.push_back(cell.featuremap);
        }
    }
    auto find_cell = [&](const std::string& m,
                         const std::string& f) -> const ReportCell* {
        for (const auto& cell : cells) {
            if (cell.model == m && cell.featuremap == f) return &cell;
        }
        return nullptr;
    };

    std::ostringstream os;
    const int label_w = 14, col_w = 10;
    auto pad = [&](const std::string& s, int w) {
        std::string out = s;
        if (static_cast<int>(out.size()) < w) {
            out.insert(out.size(), static_cast<std::size_t>(w) - out.size(), ' ');
        }
        return out;
    };

    os << pad("Model", label_w);
    for (const auto& f : maps) {
        os << "| " << pad(f, 3 * col_w - 2) << ' ';
    }
    os << '\n' << pad("", label_w);
    for (std::size_t i = 0; i < maps.size(); ++i) {
        os << "| " << pad("Precision", col_w) << pad("Recall", col_w)
           << pad("F1-score", col_w - 2) << ' ';
    }
    os << '\n';
    os << std::string(label_w + maps.size() * (3 * col_w + 1), '-') << '\n';

    for (const auto& model : models) {
        os << model << '\n';
        struct Row {
            const char* label;
            ClassMetrics ClassificationReport::*metrics;
        };
        const Row rows[] = {{"  Class 0", &ClassificationReport::class0},
                            {"  Class 1", &ClassificationReport::class1}};
        for (const auto& row : rows) {
            os << pad(row.label, label_w);
            for (const auto& f : maps) {
                const ReportCell* cell = find_cell(model, f);
                if (cell && cell->report) {
                    const ClassMetrics& m = (*cell->report).*(row.metrics);
                    os << "| " << pad(detail::two_decimals(m.precision), col_w)
                       << pad(detail::two_decimals(m.recall), col_w)
                       << pad(detail::two_decimals(m.f1), col_w - 2) << ' ';
                } else {
                    os << "| " << pad(cell ? "failed" : "-", 3 * col_w - 2) << ' ';
                }
            }
            os << '\n';
        }
        os << pad("  Accuracy", label_w);
        for (const auto& f : maps) {
            const ReportCell* cell = find_cell(model, f);
            std::string v = "-";
            if (cell && cell->report) v = detail::two_decimals(cell->report->accuracy);
            os << "| " << pad("", col_w) << pad("", col_w) << pad(v, col_w - 2)
               << ' ';
        }
        os << '\n';
        const Row avgs[] = {{"  Macro avg", &ClassificationReport::macro_avg},
                            {"  Weighted avg", &ClassificationReport::weighted_avg}};
        for (const auto& row : avgs) {
            os << pad(row.label, label_w);
            for (const auto& f : maps) {
                const ReportCell* cell = find_cell(model, f);
                if (cell && cell->report) {
                    const ClassMetrics& m = (*cell->report).*(row.metrics);
                    os << "| " << pad(detail::two_decimals(m.precision), col_w)
                       << pad(detail::two_decimals(m.recall), col_w)
                       << pad(detail::two_decimals(m.f1), col_w - 2) << ' ';
                } else {
                    os << "| " << pad(cell ? "failed" : "-", 3 * col_w - 2) << ' ';
                }
            }
            os << '\n';
        }
        os << '\n';
    }
    return os.str();
}

/// Loss-curve export: one "iteration,loss" CSV per (model, feature map).
inline std::vector<std::string> export_loss_curves(
    const std::map<std::pair<std::string, std::string>,
                   std::vector<TrainRecord>>& curves,
    const std::string& directory) {
    if (curves.empty()) {
        throw std::invalid_argument("export_loss_curves: no records");
    }
    std::filesystem::create_directories(directory);
    std::vector<std::string> written;
    for (const auto& [key, records] : curves) {
        if (records.empty()) {
            throw std::invalid_argument("export_loss_curves: empty record list");
        }
        const std::string path = (std::filesystem::path(directory) /
                                  (key.first + "_" + key.second + "_loss.csv"))
                                     .string();
        std::string body = "iteration,loss\n";
        for (const auto& r : records) {
            body += std::to_string(r.iteration);
            body += ',';
            body += format_double(r.loss);
            body += '\n';
        }
        write_text_file(path, body);
        written.push_back(path);
    }
    return written;
}

}  // namespace qmlbench
