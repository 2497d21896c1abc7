#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>

#include "qmlbench/config.hpp"

using namespace qmlbench;

TEST_CASE("feature map spec JSON round-trip") {
    FeatureMapSpec spec;
    spec.family = FeatureMapFamily::Pauli;
    spec.n_features = 4;
    spec.reps = 3;
    spec.entanglement = Entanglement::Linear;
    spec.pauli_strings = {"Z", "ZZ", "ZZZZ"};
    const FeatureMapSpec back = featuremap_from_json(featuremap_to_json(spec));
    REQUIRE(featuremap_to_json(back) == featuremap_to_json(spec));
}

TEST_CASE("qsvc model JSON round-trip") {
    QsvcModel m;
    m.alphas = {0.5, -0.25, 0.125};
    m.bias = -0.0625;
    m.support_vectors = {{0.1, 0.2, 0.3, 0.4}, {1.0, 1.1, 1.2, 1.3},
                         {2.0, 2.1, 2.2, 2.3}};
    m.spec.family = FeatureMapFamily::Z;
    m.C = 2.0;
    const QsvcModel back = qsvc_from_json(qsvc_to_json(m));
    REQUIRE(back.alphas == m.alphas);
    REQUIRE(back.bias == m.bias);
    REQUIRE(back.support_vectors == m.support_vectors);
    REQUIRE(back.C == m.C);

    json corrupted = qsvc_to_json(m);
    corrupted["version"] = 99;
    REQUIRE_THROWS_AS(qsvc_from_json(corrupted), std::runtime_error);
}

TEST_CASE("variational model JSON round-trip") {
    VariationalModel m = make_model(ModelKind::EstimatorQnn, FeatureMapSpec{},
                                    3, 77);
    m.loss_kind = LossKind::SquaredError;
    const VariationalModel back = variational_from_json(variational_to_json(m));
    REQUIRE(back.kind == m.kind);
    REQUIRE(back.ansatz.theta == m.ansatz.theta);
    REQUIRE(back.head->weights == m.head->weights);
    REQUIRE(back.head->bias == m.head->bias);
    REQUIRE(back.loss_kind == m.loss_kind);

    json no_head = variational_to_json(m);
    no_head["head"] = nullptr;
    REQUIRE_THROWS_AS(variational_from_json(no_head), std::runtime_error);
}

TEST_CASE("run config round-trips losslessly through its file form") {
    RunConfig c;
    c.source = "data/banksim.csv";
    c.n_per_class = 73;
    c.test_fraction = 0.31;
    c.featuremap.family = FeatureMapFamily::Pauli;
    c.featuremap.reps = 4;
    c.featuremap.entanglement = Entanglement::Linear;
    c.featuremap.pauli_strings = {"Z", "XY"};
    c.model = "eqnn";
    c.svm_c = 3.5;
    c.ansatz_reps = 2;
    c.loss = "squared_error";
    c.optimizer.method = OptMethod::NelderMead;
    c.optimizer.maxiter = 321;
    c.optimizer.rho_begin = 0.25;
    c.optimizer.rho_end = 1e-5;
    c.optimizer.seed = 99;
    c.shots = 2048;
    c.seed = 0xdeadbeef;
    c.out_dir = "elsewhere";

    const auto path =
        (std::filesystem::temp_directory_path() / "qmlb_config.json").string();
    save_config(path, c);
    const RunConfig back = load_config(path);
    REQUIRE(config_to_json(back) == config_to_json(c));
    std::remove(path.c_str());
}

TEST_CASE("config validation rejects bad combinations") {
    RunConfig c;
    REQUIRE_NOTHROW(c.validate());
    c.model = "svm";
    REQUIRE_THROWS_AS(c.validate(), std::invalid_argument);
    c.model = "vqc";
    c.loss = "squared_error";
    REQUIRE_THROWS_AS(c.validate(), std::invalid_argument);
    c.loss = "cross_entropy";
    c.test_fraction = 1.5;
    REQUIRE_THROWS_AS(c.validate(), std::invalid_argument);
}

TEST_CASE("unknown names carry the allowed values in the message") {
    REQUIRE_THROWS_WITH(featuremap_from_name("bogus"),
                        Catch::Matchers::ContainsSubstring("z, zz, pauli"));
    REQUIRE_THROWS_AS(loss_from_name("hinge"), std::invalid_argument);
    REQUIRE_THROWS_AS(method_from_name("adam"), std::invalid_argument);
}
