#include <catch2/catch_amalgamated.hpp>

#include <bit>
#include <cmath>
#include <random>

#include "oracle.hpp"
#include "qmlbench/statevector.hpp"

using namespace qmlbench;

namespace {
constexpr double kInvSqrt2 = 0.7071067811865475244;
}

TEST_CASE("statevector starts in |0...0> and validates its size") {
    Statevector s(3);
    REQUIRE(s.dim() == 8);
    REQUIRE(s.amp(0) == cdouble{1.0, 0.0});
    REQUIRE(s.norm() == Catch::Approx(1.0));
    REQUIRE_THROWS_AS(Statevector(0), std::invalid_argument);
    REQUIRE_THROWS_AS(Statevector(13), std::invalid_argument);
    REQUIRE_THROWS_AS(Statevector(2, {1.0, 0.0}), std::invalid_argument);
}

TEST_CASE("bitstring conventions: character q is qubit q") {
    REQUIRE(index_to_bitstring(1, 3) == "100");
    REQUIRE(index_to_bitstring(4, 3) == "001");
    REQUIRE(bitstring_to_index("100") == 1);
    REQUIRE(bitstring_to_index("011") == 6);
    REQUIRE_THROWS_AS(bitstring_to_index("01x"), std::invalid_argument);
}

TEST_CASE("probabilities") {
    SECTION("equal superposition") {
        Statevector s(1, {kInvSqrt2, kInvSqrt2});
        const auto p = probabilities(s);
        REQUIRE(p[0] == Catch::Approx(0.5).margin(1e-12));
        REQUIRE(p[1] == Catch::Approx(0.5).margin(1e-12));
    }
    SECTION("|11> on two qubits") {
        Statevector s(2, {0.0, 0.0, 0.0, 1.0});
        const auto p = probabilities(s);
        REQUIRE(p == std::vector<double>{0.0, 0.0, 0.0, 1.0});
    }
    SECTION("matches squared magnitudes on a random 3-qubit state") {
        std::mt19937 rng(7);
        const Statevector s = oracle::random_state(3, rng);
        const auto p = probabilities(s);
        double total = 0.0;
        for (std::size_t k = 0; k < s.dim(); ++k) {
            REQUIRE(p[k] == Catch::Approx(std::norm(s.amp(k))).margin(1e-15));
            total += p[k];
        }
        REQUIRE(total == Catch::Approx(1.0).margin(1e-9));
    }
}

TEST_CASE("sampling") {
    SECTION("point mass puts every shot on the all-zeros bitstring") {
        Statevector s(3);
        const ShotResult r = sample(s, 100, 42);
        REQUIRE(r.shots == 100);
        REQUIRE(r.counts.size() == 1);
        REQUIRE(r.counts.at("000") == 100);
    }
    SECTION("equal superposition frequencies at 1e5 shots") {
        Statevector s(1, {kInvSqrt2, kInvSqrt2});
        const ShotResult r = sample(s, 100000, 9001);
        const double f0 = r.counts.at("0") / 1e5;
        REQUIRE(f0 > 0.49);
        REQUIRE(f0 < 0.51);
    }
    SECTION("same seed twice gives identical counts") {
        std::mt19937 rng(11);
        const Statevector s = oracle::random_state(2, rng);
        const ShotResult a = sample(s, 5000, 1234);
        const ShotResult b = sample(s, 5000, 1234);
        REQUIRE(a.counts == b.counts);
    }
    SECTION("2-qubit sampling converges in total variation at 1e5 shots") {
        std::mt19937 rng(17);
        for (int trial = 0; trial < 5; ++trial) {
            const Statevector s = oracle::random_state(2, rng);
            const auto p = probabilities(s);
            const ShotResult r = sample(s, 100000, 555 + trial);
            double tv = 0.0;
            for (std::size_t k = 0; k < p.size(); ++k) {
                const auto it = r.counts.find(index_to_bitstring(k, 2));
                const double freq =
                    it == r.counts.end() ? 0.0 : it->second / 1e5;
                tv += std::abs(freq - p[k]);
            }
            REQUIRE(tv / 2.0 <= 0.02);
        }
    }
    SECTION("counts always sum to shots") {
        std::mt19937 rng(13);
        for (int trial = 0; trial < 10; ++trial) {
            const Statevector s = oracle::random_state(3, rng);
            const ShotResult r = sample(s, 777, 100 + trial);
            int total = 0;
            for (const auto& [bits, c] : r.counts) total += c;
            REQUIRE(total == 777);
        }
    }
    SECTION("zero shots is rejected") {
        REQUIRE_THROWS_AS(sample(Statevector(1), 0, 0), std::invalid_argument);
    }
}

TEST_CASE("pauli expectation") {
    SECTION("Z on |0> is +1") {
        REQUIRE(pauli_expectation(Statevector(1), "Z") == Catch::Approx(1.0));
    }
    SECTION("ZZ on the Bell state is +1") {
        Statevector bell(2, {kInvSqrt2, 0.0, 0.0, kInvSqrt2});
        REQUIRE(pauli_expectation(bell, "ZZ") ==
                Catch::Approx(1.0).margin(1e-12));
    }
    SECTION("XI on (|00>+|10>)/sqrt2 is +1") {
        // hand check: the state is |+> on qubit 0, |0> on qubit 1
        Statevector s(2, {kInvSqrt2, kInvSqrt2, 0.0, 0.0});
        REQUIRE(pauli_expectation(s, "XI") == Catch::Approx(1.0).margin(1e-12));
    }
    SECTION("result is in [-1, 1] and matches a dense matrix oracle") {
        std::mt19937 rng(23);
        const char alphabet[] = {'I', 'X', 'Y', 'Z'};
        std::uniform_int_distribution<int> pick(0, 3);
        for (int trial = 0; trial < 50; ++trial) {
            const int n = 1 + trial % 4;
            const Statevector s = oracle::random_state(n, rng);
            std::string paulis;
            for (int q = 0; q < n; ++q) paulis.push_back(alphabet[pick(rng)]);

            // dense P = product of single-qubit embeddings
            oracle::cmat p = oracle::identity(s.dim());
            for (int q = 0; q < n; ++q) {
                if (paulis[static_cast<std::size_t>(q)] == 'I') continue;
                qmlbench::Gate g;
                g.q0 = q;
                switch (paulis[static_cast<std::size_t>(q)]) {
                    case 'X': g.kind = GateKind::X; break;
                    case 'Y': g.kind = GateKind::Y; break;
                    default: g.kind = GateKind::Z; break;
                }
                p = oracle::mat_mat(oracle::gate_matrix(g, n), p);
            }
            const oracle::cvec pv = oracle::mat_vec(
                p, oracle::cvec(s.amplitudes().begin(), s.amplitudes().end()));
            oracle::cd expect{0.0, 0.0};
            for (std::size_t k = 0; k < s.dim(); ++k) {
                expect += std::conj(s.amp(k)) * pv[k];
            }
            REQUIRE(std::abs(expect.imag()) < 1e-9);
            const double got = pauli_expectation(s, paulis);
            REQUIRE(got == Catch::Approx(expect.real()).margin(1e-10));
            REQUIRE(got >= -1.0 - 1e-9);
            REQUIRE(got <= 1.0 + 1e-9);
        }
    }
    SECTION("all-Z string equals the parity-weighted probability sum") {
        std::mt19937 rng(29);
        for (int trial = 0; trial < 20; ++trial) {
            const int n = 1 + trial % 4;
            const Statevector s = oracle::random_state(n, rng);
            double by_parity = 0.0;
            for (std::size_t k = 0; k < s.dim(); ++k) {
                const double sign = (std::popcount(k) & 1) ? -1.0 : 1.0;
                by_parity += sign * std::norm(s.amp(k));
            }
            REQUIRE(pauli_expectation(s, std::string(n, 'Z')) ==
                    Catch::Approx(by_parity).margin(1e-14));
        }
    }
    SECTION("bad input is rejected") {
        REQUIRE_THROWS_AS(pauli_expectation(Statevector(2), "Z"),
                          std::invalid_argument);
        REQUIRE_THROWS_AS(pauli_expectation(Statevector(1), "Q"),
                          std::invalid_argument);
    }
}

TEST_CASE("inner product and fidelity") {
    std::mt19937 rng(31);
    const Statevector a = oracle::random_state(3, rng);
    const Statevector b = oracle::random_state(3, rng);
    REQUIRE(fidelity(a, a) == Catch::Approx(1.0).margin(1e-12));
    REQUIRE(fidelity(a, b) == Catch::Approx(fidelity(b, a)).margin(1e-12));
    REQUIRE(std::abs(inner_product(a, b) -
                     std::conj(inner_product(b, a))) < 1e-12);
    REQUIRE_THROWS_AS(inner_product(a, Statevector(2)), std::invalid_argument);
}
