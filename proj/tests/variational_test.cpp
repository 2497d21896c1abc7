#include <catch2/catch_amalgamated.hpp>

#include <bit>
#include <cmath>
#include <numbers>
#include <random>

#include "qmlbench/variational.hpp"

using namespace qmlbench;

namespace {

constexpr double kPi = std::numbers::pi;

FeatureMapSpec z1_spec(int reps = 1) {
    FeatureMapSpec spec;
    spec.family = FeatureMapFamily::Z;
    spec.n_features = 1;
    spec.reps = reps;
    return spec;
}

// 1-qubit VQC whose encoded state |+> (x = 0) is rotated by RY(pi/2) into
// |1>: feature map H . Phase(0), ansatz RY(pi/4) RY(pi/4).
VariationalModel forced_one_model() {
    VariationalModel m;
    m.kind = ModelKind::Vqc;
    m.spec = z1_spec();
    m.ansatz.n_qubits = 1;
    m.ansatz.reps = 1;
    m.ansatz.theta = {kPi / 4, kPi / 4};
    return m;
}

// 1-qubit model whose final state is |0>: undoes the H-layer rotation.
VariationalModel forced_zero_model(ModelKind kind) {
    VariationalModel m;
    m.kind = kind;
    m.spec = z1_spec();
    m.ansatz.n_qubits = 1;
    m.ansatz.reps = 1;
    m.ansatz.theta = {-kPi / 4, -kPi / 4};
    if (kind == ModelKind::EstimatorQnn) {
        m.head = LinearHead{{{0.0}, {0.0}}, {0.0, 0.0}};
    }
    return m;
}

}  // namespace

TEST_CASE("init_theta") {
    SECTION("values are in [0, 1]") {
        const auto theta = init_theta(64, 12345);
        for (double t : theta) {
            REQUIRE(t >= 0.0);
            REQUIRE(t <= 1.0);
        }
    }
    SECTION("fixed seed reproduces the vector") {
        REQUIRE(init_theta(16, 7) == init_theta(16, 7));
    }
    SECTION("different seeds differ somewhere") {
        for (std::uint64_t s = 0; s < 10; ++s) {
            REQUIRE(init_theta(8, s) != init_theta(8, s + 1000));
        }
    }
    SECTION("length must be positive") {
        REQUIRE_THROWS_AS(init_theta(0, 1), std::invalid_argument);
    }
}

TEST_CASE("ansatz parameter count and structure") {
    for (int n = 1; n <= 4; ++n) {
        for (int reps = 1; reps <= 4; ++reps) {
            REQUIRE(Ansatz::param_count(n, reps) == n * (reps + 1));
            Ansatz a;
            a.n_qubits = n;
            a.reps = reps;
            a.theta.assign(static_cast<std::size_t>(n * (reps + 1)), 0.1);
            const Circuit c = a.circuit();
            // RY layers (reps+1) of n gates plus reps CNOT chains of n-1
            REQUIRE(c.gates.size() ==
                    static_cast<std::size_t>((reps + 1) * n + reps * (n - 1)));
            REQUIRE(c.two_qubit_gate_count() ==
                    static_cast<std::size_t>(reps * (n - 1)));
        }
    }
    Ansatz bad;
    bad.n_qubits = 2;
    bad.reps = 1;
    bad.theta = {0.1};
    REQUIRE_THROWS_AS(bad.circuit(), std::invalid_argument);
}

TEST_CASE("forward_vqc") {
    SECTION("probabilities sum to one for zeroed parameters") {
        VariationalModel m = make_model(ModelKind::Vqc, z1_spec(), 1, 3);
        m.ansatz.theta.assign(m.ansatz.theta.size(), 0.0);
        const ProbPair p = forward_vqc(m, std::vector<double>{0.4});
        REQUIRE(p.p0 + p.p1 == Catch::Approx(1.0).margin(1e-12));
    }
    SECTION("a forced |1> state has p1 = 1") {
        const ProbPair p = forward_vqc(forced_one_model(),
                                       std::vector<double>{0.0});
        REQUIRE(p.p1 == Catch::Approx(1.0).margin(1e-12));
    }
    SECTION("matches a brute-force parity sum for n <= 4") {
        std::mt19937 rng(97);
        std::uniform_real_distribution<double> feat(0.0, kPi);
        for (int n = 1; n <= 4; ++n) {
            FeatureMapSpec spec;
            spec.family = FeatureMapFamily::ZZ;
            spec.n_features = n;
            if (n == 1) spec.family = FeatureMapFamily::Z;
            VariationalModel m =
                make_model(ModelKind::Vqc, spec, 2, 11 + static_cast<unsigned>(n));
            std::vector<double> x(static_cast<std::size_t>(n));
            for (auto& v : x) v = feat(rng);

            Circuit c = build_feature_map(m.spec, x);
            c.append(m.ansatz.circuit());
            const Statevector s = run_circuit(c);
            double p1 = 0.0;
            for (std::size_t k = 0; k < s.dim(); ++k) {
                if (std::popcount(k) & 1) p1 += std::norm(s.amp(k));
            }
            const ProbPair p = forward_vqc(m, x);
            REQUIRE(p.p1 == Catch::Approx(p1).margin(1e-12));
        }
    }
}

TEST_CASE("forward_eqnn") {
    SECTION("zero head gives the uniform pair") {
        VariationalModel m = forced_zero_model(ModelKind::EstimatorQnn);
        const ProbPair p = forward_eqnn(m, std::vector<double>{0.0});
        REQUIRE(p.p0 == Catch::Approx(0.5).margin(1e-12));
        REQUIRE(p.p1 == Catch::Approx(0.5).margin(1e-12));
    }
    SECTION("p1 grows monotonically with the class-1 weight at e = 1") {
        VariationalModel m = forced_zero_model(ModelKind::EstimatorQnn);
        REQUIRE(eqnn_expectation(m, std::vector<double>{0.0}) ==
                Catch::Approx(1.0).margin(1e-12));
        double prev = 0.5;
        for (double k : {1.0, 5.0, 10.0}) {
            m.head->weights = {{0.0}, {k}};
            const ProbPair p = forward_eqnn(m, std::vector<double>{0.0});
            REQUIRE(p.p1 > prev);
            prev = p.p1;
        }
        REQUIRE(prev > 0.99);
    }
    SECTION("expectation stays in [-1, 1] and probabilities sum to one") {
        std::mt19937 rng(101);
        std::uniform_real_distribution<double> feat(0.0, kPi);
        for (int trial = 0; trial < 10; ++trial) {
            FeatureMapSpec spec;
            spec.family = FeatureMapFamily::ZZ;
            spec.n_features = 3;
            VariationalModel m = make_model(ModelKind::EstimatorQnn, spec, 2,
                                            static_cast<std::uint64_t>(trial));
            std::vector<double> x = {feat(rng), feat(rng), feat(rng)};
            const double e = eqnn_expectation(m, x);
            REQUIRE(e >= -1.0 - 1e-9);
            REQUIRE(e <= 1.0 + 1e-9);
            const ProbPair p = forward_eqnn(m, x);
            REQUIRE(p.p0 + p.p1 == Catch::Approx(1.0).margin(1e-9));
        }
    }
}

TEST_CASE("forward_sqnn") {
    VariationalModel m = make_model(ModelKind::SamplerQnn, z1_spec(), 2, 5);
    const std::vector<double> x = {1.1};
    SECTION("exact mode equals the VQC forward bit-exactly") {
        VariationalModel vqc = m;
        vqc.kind = ModelKind::Vqc;
        const ProbPair a = forward_sqnn(m, x, 0, 0);
        const ProbPair b = forward_vqc(vqc, x);
        REQUIRE(a.p0 == b.p0);
        REQUIRE(a.p1 == b.p1);
    }
    SECTION("1e5 shots tracks the exact value within 0.01") {
        const ProbPair exact = forward_sqnn(m, x, 0, 0);
        const ProbPair est = forward_sqnn(m, x, 100000, 77);
        REQUIRE(std::abs(est.p1 - exact.p1) <= 0.01);
    }
    SECTION("seeded sampling is deterministic") {
        const ProbPair a = forward_sqnn(m, x, 3000, 13);
        const ProbPair b = forward_sqnn(m, x, 3000, 13);
        REQUIRE(a.p1 == b.p1);
        REQUIRE(a.p0 + a.p1 == Catch::Approx(1.0).margin(1e-9));
    }
}

TEST_CASE("loss") {
    SECTION("perfect predictions give zero cross-entropy") {
        const VariationalModel m = forced_one_model();
        REQUIRE(loss(m, {{0.0}}, {1}) == Catch::Approx(0.0).margin(1e-9));
    }
    SECTION("the uniform predictor scores ln 2") {
        VariationalModel m = forced_one_model();
        m.ansatz.theta = {0.0, 0.0};  // identity ansatz keeps |+>
        REQUIRE(loss(m, {{0.0}, {0.0}}, {0, 1}) ==
                Catch::Approx(0.6931471805599453).margin(1e-12));
    }
    SECTION("squared error vanishes when e matches the target") {
        VariationalModel m = forced_zero_model(ModelKind::EstimatorQnn);
        m.loss_kind = LossKind::SquaredError;
        REQUIRE(loss(m, {{0.0}}, {1}) == Catch::Approx(0.0).margin(1e-12));
    }
    SECTION("squared error is rejected outside the Estimator QNN") {
        VariationalModel m = forced_one_model();
        m.loss_kind = LossKind::SquaredError;
        REQUIRE_THROWS_AS(loss(m, {{0.0}}, {1}), std::invalid_argument);
    }
    SECTION("empty batches are rejected") {
        REQUIRE_THROWS_AS(loss(forced_one_model(), {}, {}),
                          std::invalid_argument);
    }
}

TEST_CASE("predict tie-break") {
    REQUIRE(predict(forced_one_model(), std::vector<double>{0.0}) == 1);
    REQUIRE(predict(forced_zero_model(ModelKind::Vqc),
                    std::vector<double>{0.0}) == 0);
    // the zero-head Estimator QNN yields an exact (0.5, 0.5) tie
    const VariationalModel tied = forced_zero_model(ModelKind::EstimatorQnn);
    const ProbPair p = forward_eqnn(tied, std::vector<double>{0.0});
    REQUIRE(p.p0 == 0.5);
    REQUIRE(p.p1 == 0.5);
    REQUIRE(predict(tied, std::vector<double>{0.0}) == 0);
}

TEST_CASE("training") {
    // single feature, labels thresholded at pi/2
    std::vector<std::vector<double>> xs;
    std::vector<int> ys;
    for (int i = 0; i < 16; ++i) {
        const double v = (i + 0.5) * kPi / 16;
        xs.push_back({v});
        ys.push_back(v > kPi / 2 ? 1 : 0);
    }

    SECTION("loss decreases from the initial value across 5 seeds") {
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            VariationalModel m = make_model(ModelKind::Vqc, z1_spec(2), 3, seed);
            OptimizerConfig cfg;
            cfg.maxiter = 100;
            const TrainOutcome out = train(m, xs, ys, cfg, 0, seed);
            REQUIRE_FALSE(out.records.empty());
            const double first = out.records.front().loss;
            const double achieved = loss(out.model, xs, ys);
            REQUIRE(achieved < first);
        }
    }
    SECTION("maxiter = 0 returns the model unchanged with one record") {
        VariationalModel m = make_model(ModelKind::Vqc, z1_spec(2), 3, 21);
        OptimizerConfig cfg;
        cfg.maxiter = 0;
        const TrainOutcome out = train(m, xs, ys, cfg);
        REQUIRE(out.records.size() == 1);
        REQUIRE(out.model.ansatz.theta == m.ansatz.theta);
    }
    SECTION("records are strictly increasing and the running min is monotone") {
        VariationalModel m = make_model(ModelKind::Vqc, z1_spec(2), 3, 22);
        OptimizerConfig cfg;
        cfg.maxiter = 60;
        const TrainOutcome out = train(m, xs, ys, cfg);
        REQUIRE(out.records.size() <= 60);
        double running = std::numeric_limits<double>::infinity();
        int prev_iter = 0;
        for (const auto& r : out.records) {
            REQUIRE(r.iteration == prev_iter + 1);
            prev_iter = r.iteration;
            running = std::min(running, r.loss);
        }
        // best-parameter return: the model's achieved loss equals the
        // running minimum and cannot exceed the first record
        REQUIRE(loss(out.model, xs, ys) == Catch::Approx(running).margin(1e-12));
        REQUIRE(running <= out.records.front().loss);
    }
    SECTION("estimator qnn trains head and circuit jointly") {
        FeatureMapSpec spec = z1_spec(2);
        VariationalModel m = make_model(ModelKind::EstimatorQnn, spec, 2, 23);
        OptimizerConfig cfg;
        cfg.maxiter = 80;
        const TrainOutcome out = train(m, xs, ys, cfg, 0, 23);
        REQUIRE(loss(out.model, xs, ys) <= out.records.front().loss);
        // the head parameters moved away from their initialization
        REQUIRE((out.model.head->weights != m.head->weights ||
                 out.model.head->bias != m.head->bias ||
                 out.model.ansatz.theta != m.ansatz.theta));
    }
    SECTION("single-class batches are rejected") {
        VariationalModel m = make_model(ModelKind::Vqc, z1_spec(), 1, 3);
        OptimizerConfig cfg;
        REQUIRE_THROWS_AS(train(m, {{0.1}, {0.2}}, {1, 1}, cfg),
                          std::invalid_argument);
    }
}
