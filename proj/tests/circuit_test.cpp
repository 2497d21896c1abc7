#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "oracle.hpp"
#include "qmlbench/circuit.hpp"

using namespace qmlbench;

namespace {
constexpr double kInvSqrt2 = 0.7071067811865475244;
}

TEST_CASE("single-gate examples") {
    SECTION("H on |0>") {
        Statevector s(1);
        apply_gate(s, Gate::h(0));
        REQUIRE(std::abs(s.amp(0) - cdouble{kInvSqrt2, 0.0}) < 1e-15);
        REQUIRE(std::abs(s.amp(1) - cdouble{kInvSqrt2, 0.0}) < 1e-15);
    }
    SECTION("CNOT builds the Bell state from (|00>+|10>)/sqrt2") {
        Statevector s(2, {kInvSqrt2, kInvSqrt2, 0.0, 0.0});
        apply_gate(s, Gate::cnot(0, 1));
        REQUIRE(std::abs(s.amp(0) - cdouble{kInvSqrt2, 0.0}) < 1e-15);
        REQUIRE(std::abs(s.amp(3) - cdouble{kInvSqrt2, 0.0}) < 1e-15);
        REQUIRE(std::abs(s.amp(1)) < 1e-15);
        REQUIRE(std::abs(s.amp(2)) < 1e-15);
    }
    SECTION("RZ on |0> only shifts the global phase") {
        for (double theta : {0.3, -1.7, 2.9}) {
            Statevector s(1);
            apply_gate(s, Gate::rz(0, theta));
            const auto p = probabilities(s);
            REQUIRE(p[0] == Catch::Approx(1.0).margin(1e-12));
            REQUIRE(p[1] == Catch::Approx(0.0).margin(1e-12));
        }
    }
    SECTION("out-of-range and duplicate indices are rejected") {
        Statevector s(2);
        REQUIRE_THROWS_AS(apply_gate(s, Gate::h(2)), std::out_of_range);
        REQUIRE_THROWS_AS(apply_gate(s, Gate::cnot(0, 0)), std::invalid_argument);
        REQUIRE_THROWS_AS(apply_gate(s, Gate::cnot(0, 5)), std::out_of_range);
    }
}

TEST_CASE("every gate matrix is unitary within 1e-12") {
    std::mt19937 rng(37);
    std::uniform_real_distribution<double> angle(-3.0, 3.0);
    std::vector<Gate> gates  = {Gate::h(0),  Gate::x(0),  Gate::y(0),
                                Gate::z(0),  Gate::s(0),  Gate::t(0),
                                Gate::cnot(0, 1), Gate::cz(0, 1),
                                Gate::swap(0, 1)};
    for (int i = 0; i < 5; ++i) {
        gates.push_back(Gate::rx(0, angle(rng)));
        gates.push_back(Gate::ry(0, angle(rng)));
        gates.push_back(Gate::rz(0, angle(rng)));
        gates.push_back(Gate::phase(0, angle(rng)));
    }
    for (const auto& g : gates) {
        const oracle::cmat u = oracle::gate_matrix(g, 2);
        // U^dagger U
        for (std::size_t r = 0; r < u.size(); ++r) {
            for (std::size_t c = 0; c < u.size(); ++c) {
                oracle::cd s{0.0, 0.0};
                for (std::size_t k = 0; k < u.size(); ++k) {
                    s += std::conj(u[k][r]) * u[k][c];
                }
                const oracle::cd want = r == c ? oracle::cd{1.0, 0.0}
                                               : oracle::cd{0.0, 0.0};
                REQUIRE(std::abs(s - want) < 1e-12);
            }
        }
    }
}

TEST_CASE("norm is preserved by every gate on random states") {
    std::mt19937 rng(41);
    for (int trial = 0; trial < 60; ++trial) {
        const int n = 1 + trial % 4;
        Statevector s = oracle::random_state(n, rng);
        const Circuit c = oracle::random_circuit(n, 1, rng);
        apply_gate(s, c.gates[0]);
        REQUIRE(s.norm() == Catch::Approx(1.0).margin(1e-9));
    }
}

TEST_CASE("run_circuit") {
    SECTION("empty circuit is the identity") {
        std::mt19937 rng(43);
        const Statevector s = oracle::random_state(3, rng);
        Circuit c;
        c.n_qubits = 3;
        const Statevector out = run_circuit(c, s);
        REQUIRE(oracle::max_abs_diff(
                    oracle::cvec(s.amplitudes().begin(), s.amplitudes().end()),
                    out.amplitudes()) == 0.0);
    }
    SECTION("H twice restores the input within 1e-12") {
        std::mt19937 rng(47);
        const Statevector s = oracle::random_state(1, rng);
        Circuit c;
        c.n_qubits = 1;
        c.add(Gate::h(0));
        c.add(Gate::h(0));
        const Statevector out = run_circuit(c, s);
        for (std::size_t k = 0; k < s.dim(); ++k) {
            REQUIRE(std::abs(out.amp(k) - s.amp(k)) < 1e-12);
        }
    }
    SECTION("random 3-qubit circuit matches the 8x8 matrix chain product") {
        std::mt19937 rng(53);
        const Circuit c = oracle::random_circuit(3, 20, rng);
        // chain-multiply the 20 dense matrices, then apply once
        oracle::cmat u = oracle::identity(8);
        for (const auto& g : c.gates) {
            u = oracle::mat_mat(oracle::gate_matrix(g, 3), u);
        }
        const Statevector in = oracle::random_state(3, rng);
        const oracle::cvec want = oracle::mat_vec(
            u, oracle::cvec(in.amplitudes().begin(), in.amplitudes().end()));
        const Statevector got = run_circuit(c, in);
        REQUIRE(oracle::max_abs_diff(want, got.amplitudes()) < 1e-10);
    }
    SECTION("matches the dense oracle on 100 random circuits, n <= 4") {
        std::mt19937 rng(59);
        std::uniform_int_distribution<int> qubits(1, 4);
        std::uniform_int_distribution<int> length(1, 30);
        for (int trial = 0; trial < 100; ++trial) {
            const int n = qubits(rng);
            const Circuit c = oracle::random_circuit(n, length(rng), rng);
            const Statevector in = oracle::random_state(n, rng);
            const oracle::cvec want = oracle::run_dense(
                c, oracle::cvec(in.amplitudes().begin(), in.amplitudes().end()));
            const Statevector got = run_circuit(c, in);
            REQUIRE(oracle::max_abs_diff(want, got.amplitudes()) < 1e-10);
        }
    }
    SECTION("qubit count mismatch is rejected") {
        Circuit c;
        c.n_qubits = 2;
        REQUIRE_THROWS_AS(run_circuit(c, Statevector(3)), std::invalid_argument);
    }
}

TEST_CASE("circuit inverse undoes the circuit within 1e-9") {
    std::mt19937 rng(61);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 1 + trial % 4;
        const Circuit c = oracle::random_circuit(n, 25, rng);
        const Statevector in = oracle::random_state(n, rng);
        const Statevector roundtrip = run_circuit(c.inverse(), run_circuit(c, in));
        for (std::size_t k = 0; k < in.dim(); ++k) {
            REQUIRE(std::abs(roundtrip.amp(k) - in.amp(k)) < 1e-9);
        }
    }
}

TEST_CASE("two-qubit gate count") {
    Circuit c;
    c.n_qubits = 3;
    c.add(Gate::h(0));
    c.add(Gate::cnot(0, 1));
    c.add(Gate::cz(1, 2));
    c.add(Gate::swap(0, 2));
    c.add(Gate::phase(2, 0.5));
    REQUIRE(c.two_qubit_gate_count() == 3);
}
