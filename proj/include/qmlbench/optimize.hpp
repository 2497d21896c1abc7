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
#include <fstream>
#include <functional>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qmlbench/io.hpp"

namespace qmlbench {

enum class OptMethod { Cobyla, NelderMead };

struct OptimizerConfig {
    OptMethod method = OptMethod::Cobyla;
    int maxiter = 200;        // objective-evaluation budget
    double rho_begin = 0.5;   // initial trust radius / simplex edge
    double rho_end = 1e-4;    // final trust radius
    std::uint64_t seed = 0;   // reserved; both methods are deterministic

    void validate() const {
        if (maxiter < 1) throw std::invalid_argument("OptimizerConfig: maxiter >= 1");
        if (!(rho_begin > 0.0) || !(rho_end > 0.0) || rho_end >= rho_begin) {
            throw std::invalid_argument(
                "OptimizerConfig: need 0 < rho_end < rho_begin");
        }
    }
};

struct OptimizeResult {
    std::vector<double> best_x;
    double best_f = std::numeric_limits<double>::infinity();
    int evaluations = 0;
    std::vector<std::pair<int, double>> trajectory;  // (evaluation index, f)
};

using Objective = std::function<double(std::span<const double>)>;

namespace detail {

// Bookkeeping shared by both methods: sanitizes non-finite values to +inf,
// counts evaluations against the budget, tracks the best point.
class EvalRecorder {
  public:
    EvalRecorder(const Objective& f, int budget, OptimizeResult& out)
        : f_(f), budget_(budget), out_(out) {}

    bool exhausted() const { return out_.evaluations >= budget_; }

    double operator()(const std::vector<double>& x) {
        const double raw = f_(std::span<const double>(x));
        const double v = std::isfinite(raw)
                             ? raw
                             : std::numeric_limits<double>::infinity();
        ++out_.evaluations;
        out_.trajectory.emplace_back(out_.evaluations, v);
        if (v < out_.best_f) {
            out_.best_f = v;
            out_.best_x = x;
        }
        return v;
    }

  private:
    const Objective& f_;
    int budget_;
    OptimizeResult& out_;
};

// Solve A x = rhs by Gaussian elimination with partial pivoting.
// Returns false when the matrix is numerically singular.
inline bool solve_linear(std::vector<std::vector<double>> a,
                         std::vector<double> rhs, std::vector<double>& x,
                         double pivot_floor) {
    const std::size_t n = rhs.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        }
        if (std::abs(a[piv][col]) < pivot_floor) return false;
        std::swap(a[piv], a[col]);
        std::swap(rhs[piv], rhs[col]);
        for (std::size_t r = col + 1; r < n; ++r) {
            const double m = a[r][col] / a[col][col];
            if (m == 0.0) continue;
            for (std::size_t c = col; c < n; ++c) a[r][c] -= m * a[col][c];
            rhs[r] -= m * rhs[col];
        }
    }
    x.assign(n, 0.0);
    for (std::size_t r = n; r-- > 0;) {
        double s = rhs[r];
        for (std::size_t c = r + 1; c < n; ++c) s -= a[r][c] * x[c];
        x[r] = s / a[r][r];
    }
    return true;
}

inline double norm2(const std::vector<double>& v) {
    double s = 0.0;
    for (double e : v) s += e * e;
    return std::sqrt(s);
}

// Linear-approximation trust-region descent over an (n+1)-point simplex
// (Powell's COBYLA specialized to the unconstrained case). Per round:
// repair simplex geometry at scale rho when needed, otherwise step
// distance rho from the best vertex, first along the recent-best
// displacement baseline (a pattern move; plain model-gradient steps
// zig-zag across curved valleys), then along the negative gradient of the
// linear interpolation model. Consecutive pattern-move successes
// re-expand rho up to rho_begin, recovering from a radius collapsed while
// homing onto a valley floor. A failed round earns one axis-aligned
// rebuild of the simplex at the current rho; only a failure with that
// fresh geometry shrinks rho, halving toward rho_end.
inline void cobyla_loop(EvalRecorder& eval, std::vector<double> x0, double f0,
                        const OptimizerConfig& cfg) {
    const std::size_t n = x0.size();
    const double kFarEdge = 2.1;    // vertices farther than this * rho are stale
    const double kNearEdge = 0.25;  // and closer than this * rho carry no info

    std::vector<std::vector<double>> vx;  // vertices
    std::vector<double> vf;               // their objective values
    vx.push_back(x0);
    vf.push_back(f0);
    for (std::size_t i = 0; i < n && !eval.exhausted(); ++i) {
        std::vector<double> v = x0;
        v[i] += cfg.rho_begin;
        vx.push_back(v);
        vf.push_back(eval(v));
    }
    if (vx.size() < n + 1) return;  // budget ended during initialization

    double rho = cfg.rho_begin;
    bool rebuilt_at_rho = false;
    int trail_streak = 0;
    std::vector<double> pattern_dir;  // persists across successful line runs
    bool pattern_blocked = false;     // failed; wait for fresh progress
    std::vector<std::vector<double>> best_trail;  // last few accepted bests
    best_trail.push_back(x0);

    auto rebuild = [&](std::size_t best) {
        const std::vector<double> base = vx[best];
        const double fbase = vf[best];
        vx.assign(1, base);
        vf.assign(1, fbase);
        for (std::size_t i = 0; i < n && !eval.exhausted(); ++i) {
            std::vector<double> v = base;
            v[i] += rho;
            vx.push_back(v);
            vf.push_back(eval(v));
        }
        return vx.size() == n + 1;
    };

    while (!eval.exhausted()) {
        const std::size_t best =
            static_cast<std::size_t>(std::min_element(vf.begin(), vf.end()) -
                                     vf.begin());

        // Edge vectors from the best vertex.
        std::vector<std::vector<double>> edges;
        std::vector<std::size_t> edge_vertex;
        for (std::size_t i = 0; i < vx.size(); ++i) {
            if (i == best) continue;
            std::vector<double> e(n);
            for (std::size_t c = 0; c < n; ++c) e[c] = vx[i][c] - vx[best][c];
            edges.push_back(std::move(e));
            edge_vertex.push_back(i);
        }

        // Pull in any stale vertex before trusting the model.
        std::size_t repair = vx.size();
        double worst_dist = 0.0;
        for (std::size_t k = 0; k < edges.size(); ++k) {
            const double d = norm2(edges[k]);
            if (d > kFarEdge * rho && d > worst_dist) {
                worst_dist = d;
                repair = edge_vertex[k];
            }
        }
        if (repair == vx.size()) {
            for (std::size_t k = 0; k < edges.size(); ++k) {
                if (norm2(edges[k]) < kNearEdge * rho) {
                    repair = edge_vertex[k];
                    break;
                }
            }
        }
        if (repair != vx.size()) {
            const std::size_t k =
                static_cast<std::size_t>(std::find(edge_vertex.begin(),
                                                   edge_vertex.end(), repair) -
                                         edge_vertex.begin());
            const double d = norm2(edges[k]);
            std::vector<double> v(n);
            if (d < 1e-300) {
                v = vx[best];
                v[k % n] += rho;  // degenerate duplicate; use an axis direction
            } else {
                for (std::size_t c = 0; c < n; ++c) {
                    v[c] = vx[best][c] + rho * edges[k][c] / d;
                }
            }
            vx[repair] = v;
            vf[repair] = eval(v);
            continue;
        }

        // Interpolating linear model: edges * g = df.
        std::vector<double> df(edges.size());
        for (std::size_t k = 0; k < edges.size(); ++k) {
            df[k] = vf[edge_vertex[k]] - vf[best];
        }
        std::vector<double> grad;
        const bool solvable =
            solve_linear(edges, df, grad, 1e-10 * std::max(rho, 1e-30));
        const double gnorm = solvable ? norm2(grad) : 0.0;

        if (!solvable) {
            // degenerate at this scale; counts as the rebuild for this rho
            if (!rebuild(best)) return;
            rebuilt_at_rho = true;
            continue;
        }

        // candidate directions, each tried at distance rho from the best:
        // the persistent pattern direction first, then the model gradient
        if (pattern_dir.empty() && !pattern_blocked && best_trail.size() >= 4) {
            std::vector<double> v(n);
            double vnorm = 0.0;
            for (std::size_t c = 0; c < n; ++c) {
                v[c] = vx[best][c] - best_trail.front()[c];
                vnorm += v[c] * v[c];
            }
            vnorm = std::sqrt(vnorm);
            if (vnorm > 1e-300) {
                for (auto& e : v) e /= vnorm;
                pattern_dir = std::move(v);
            }
        }
        std::vector<std::vector<double>> directions;
        std::vector<bool> is_pattern;
        if (!pattern_dir.empty() && !pattern_blocked) {
            directions.push_back(pattern_dir);
            is_pattern.push_back(true);
        }
        if (gnorm > 1e-300 && std::isfinite(gnorm)) {
            std::vector<double> v(n);
            for (std::size_t c = 0; c < n; ++c) v[c] = -grad[c] / gnorm;
            directions.push_back(std::move(v));
            is_pattern.push_back(false);
        }

        bool improved = false;
        const double f_best_before = vf[best];
        for (std::size_t di = 0; di < directions.size(); ++di) {
            if (eval.exhausted()) break;
            std::vector<double> cand(n);
            for (std::size_t c = 0; c < n; ++c) {
                cand[c] = vx[best][c] + rho * directions[di][c];
            }
            const double fc = eval(cand);
            const std::size_t cur_worst = static_cast<std::size_t>(
                std::max_element(vf.begin(), vf.end()) - vf.begin());
            if (fc < vf[cur_worst]) {
                vx[cur_worst] = cand;
                vf[cur_worst] = fc;
            }
            if (fc < f_best_before) {
                best_trail.push_back(cand);
                if (best_trail.size() > 6) best_trail.erase(best_trail.begin());
                improved = true;
                pattern_blocked = false;
                if (is_pattern[di]) {
                    if (++trail_streak >= 2) {
                        rho = std::min(2.0 * rho, cfg.rho_begin);
                    }
                } else {
                    trail_streak = 0;
                    pattern_dir.clear();  // re-derive from the fresh trail
                }
                break;
            }
            if (is_pattern[di]) {
                pattern_blocked = true;  // line run over; wait for progress
                pattern_dir.clear();
            }
        }
        if (improved) {
            rebuilt_at_rho = false;  // progress at this radius
            continue;
        }
        trail_streak = 0;

        // step failed (or the model was flat)
        if (!rebuilt_at_rho) {
            const std::size_t new_best = static_cast<std::size_t>(
                std::min_element(vf.begin(), vf.end()) - vf.begin());
            if (!rebuild(new_best)) return;
            rebuilt_at_rho = true;
            continue;
        }
        if (rho <= cfg.rho_end) break;
        rho = std::max(0.5 * rho, cfg.rho_end);
        rebuilt_at_rho = false;
    }
}

// Standard Nelder-Mead with reflection 1, expansion 2, contraction 0.5,
// shrink 0.5. Stops on budget or when the simplex collapses below rho_end.
inline void nelder_mead_loop(EvalRecorder& eval, std::vector<double> x0,
                             double f0, const OptimizerConfig& cfg) {
    const std::size_t n = x0.size();
    std::vector<std::vector<double>> vx;
    std::vector<double> vf;
    vx.push_back(x0);
    vf.push_back(f0);
    for (std::size_t i = 0; i < n && !eval.exhausted(); ++i) {
        std::vector<double> v = x0;
        v[i] += cfg.rho_begin;
        vx.push_back(v);
        vf.push_back(eval(v));
    }
    if (vx.size() < n + 1) return;

    auto order = [&]() {
        std::vector<std::size_t> idx(vx.size());
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        std::stable_sort(idx.begin(), idx.end(),
                         [&](std::size_t a, std::size_t b) { return vf[a] < vf[b]; });
        std::vector<std::vector<double>> nx(vx.size());
        std::vector<double> nf(vf.size());
        for (std::size_t i = 0; i < idx.size(); ++i) {
            nx[i] = vx[idx[i]];
            nf[i] = vf[idx[i]];
        }
        vx.swap(nx);
        vf.swap(nf);
    };

    while (!eval.exhausted()) {
        order();
        // simplex extent
        double extent = 0.0;
        for (std::size_t i = 1; i < vx.size(); ++i) {
            double d = 0.0;
            for (std::size_t c = 0; c < n; ++c) {
                d += (vx[i][c] - vx[0][c]) * (vx[i][c] - vx[0][c]);
            }
            extent = std::max(extent, std::sqrt(d));
        }
        if (extent < cfg.rho_end) break;

        std::vector<double> centroid(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t c = 0; c < n; ++c) centroid[c] += vx[i][c];
        }
        for (std::size_t c = 0; c < n; ++c) centroid[c] /= static_cast<double>(n);

        auto at = [&](double t) {
            std::vector<double> p(n);
            for (std::size_t c = 0; c < n; ++c) {
                p[c] = centroid[c] + t * (vx[n][c] - centroid[c]);
            }
            return p;
        };

        const std::vector<double> xr = at(-1.0);
        const double fr = eval(xr);
        if (fr < vf[0]) {
            if (eval.exhausted()) {
                vx[n] = xr; vf[n] = fr;
                continue;
            }
            const std::vector<double> xe = at(-2.0);
            const double fe = eval(xe);
            if (fe < fr) { vx[n] = xe; vf[n] = fe; }
            else { vx[n] = xr; vf[n] = fr; }
        } else if (fr < vf[n - 1]) {
            vx[n] = xr; vf[n] = fr;
        } else {
            const bool outside = fr < vf[n];
            if (eval.exhausted()) break;
            const std::vector<double> xc = at(outside ? -0.5 : 0.5);
            const double fc = eval(xc);
            if (fc < (outside ? fr : vf[n])) {
                vx[n] = xc; vf[n] = fc;
            } else {
                for (std::size_t i = 1; i <= n && !eval.exhausted(); ++i) {
                    for (std::size_t c = 0; c < n; ++c) {
                        vx[i][c] = vx[0][c] + 0.5 * (vx[i][c] - vx[0][c]);
                    }
                    vf[i] = eval(vx[i]);
                }
            }
        }
    }
}

}  // namespace detail

/// Minimize a deterministic objective without derivatives. Returns the
/// best point seen; the trajectory holds every evaluation in order.
inline OptimizeResult minimize(const Objective& objective,
                               std::vector<double> x0,
                               const OptimizerConfig& config) {
    config.validate();
    if (x0.empty()) throw std::invalid_argument("minimize: empty start point");

    OptimizeResult result;
    detail::EvalRecorder eval(objective, config.maxiter, result);
    const double f0 = eval(x0);
    if (!std::isfinite(f0)) {
        throw std::invalid_argument("minimize: objective non-finite at x0");
    }
    if (!eval.exhausted()) {
        if (config.method == OptMethod::Cobyla) {
            detail::cobyla_loop(eval, std::move(x0), f0, config);
        } else {
            detail::nelder_mead_loop(eval, std::move(x0), f0, config);
        }
    }
    return result;
}

/// Trajectory export: "evaluation,f" rows.
inline void write_trajectory_csv(const std::string& path,
                                 const OptimizeResult& result) {
    std::string body = "evaluation,f\n";
    for (const auto& [idx, f] : result.trajectory) {
        body += std::to_string(idx);
        body += ',';
        body += format_double(f);
        body += '\n';
    }
    write_text_file(path, body);
}

}  // namespace qmlbench
