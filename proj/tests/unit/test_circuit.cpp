#include "clockless/circuit.hpp"
#include "clockless/rng.hpp"

#include "clockless/fixtures.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

using namespace clockless;
using clockless::fixtures::layered;

TEST(Validate, CleanCircuit) {
    LayeredCircuit c{2, 0, {{make_gate("CNOT", {0, 1})}}};
    EXPECT_TRUE(validate(c).empty());
}

TEST(Validate, Overlap) {
    LayeredCircuit c{2, 0, {{make_gate("H", {0}), make_gate("CNOT", {0, 1})}}};
    const auto v = validate(c);
    ASSERT_EQ(v.size(), 1u);
    EXPECT_EQ(v[0].kind, "overlap");
    EXPECT_EQ(v[0].layer, 0);
}

TEST(Validate, Coverage) {
    LayeredCircuit c{2, 0, {{make_gate("H", {0})}}};
    const auto v = validate(c);
    ASSERT_EQ(v.size(), 1u);
    EXPECT_EQ(v[0].kind, "coverage");
    EXPECT_EQ(v[0].wires, Qubits{1});
    EXPECT_TRUE(validate(fill_identities(c)).empty());
}

TEST(Validate, RangeAndUnitarity) {
    LayeredCircuit c{1, 0, {{make_gate("H", {3})}}};
    EXPECT_FALSE(validate(c).empty());
    Mat bad = Mat::Identity(2, 2);
    bad(0, 0) = 2.0;
    EXPECT_THROW(make_gate(bad, {0}), std::invalid_argument);
}

TEST(Layer, IdentityAndHadamard) {
    const auto id = fixtures::identity_circuit(2, 1, 0);
    const Vec psi = random_state(4, 1);
    EXPECT_LT((apply_layer(id, 0, psi) - psi).norm(), 1e-15);
    LayeredCircuit h{1, 0, {{make_gate("H", {0})}}};
    const Vec out = apply_layer(h, 0, Vec::Unit(2, 0));
    EXPECT_NEAR(out(0).real(), 1.0 / std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(out(1).real(), 1.0 / std::sqrt(2.0), 1e-15);
    EXPECT_THROW(apply_layer(h, 1, Vec::Unit(2, 0)), std::out_of_range);
}

TEST(Layer, CnotSquaredIsIdentity) {
    LayeredCircuit c{2, 0, {{make_gate("CNOT", {0, 1})}}};
    const Mat u = layer_unitary(c, 0);
    EXPECT_LT((u * u - Mat::Identity(4, 4)).norm(), 1e-14);
    // control on wire 0 (bit 0): |01> in bit order means wire 0 = 1
    const Vec out = apply_layer(c, 0, Vec::Unit(4, 1));
    EXPECT_NEAR(std::abs(out(3)), 1.0, 1e-15);
}

TEST(Circuit, CompositionOfLayers) {
    const auto c = layered(2, 0, {{make_gate("H", {0}), make_gate("T", {1})}, {make_gate("CZ", {0, 1})}});
    const Mat u = circuit_unitary(c);
    EXPECT_LT((u - layer_unitary(c, 1) * layer_unitary(c, 0)).norm(), 1e-14);
    const Vec psi = random_state(4, 2);
    EXPECT_LT((simulate(c, psi) - u * psi).norm(), 1e-14);
}

TEST(Circuit, CliffordDetection) {
    for (const char* g : {"I", "X", "Z", "H", "S", "CNOT", "CZ", "SWAP"}) EXPECT_TRUE(is_clifford(named_unitary(g))) << g;
    EXPECT_FALSE(is_clifford(named_unitary("T")));
    EXPECT_FALSE(is_clifford(named_unitary("CCZ")));
}

TEST(Circuit, InputStatePlacesWitnessAboveAncillas) {
    LayeredCircuit c{3, 1, {}};
    const Vec xi = Vec::Unit(4, 3);
    const Vec psi = input_state(c, xi);
    EXPECT_NEAR(std::abs(psi(6)), 1.0, 1e-15);
}

namespace {

LayeredCircuit random_circuit(int n, int gates, std::uint64_t seed) {
    LayeredCircuit c;
    c.n = n;
    c.a = 0;
    const CounterRng rng{seed, 0};
    for (int t = 0; t < gates; ++t) {
        const int w0 = int(rng.bits(std::uint64_t(3 * t)) % std::uint64_t(n));
        if (n > 1 && rng.uniform(std::uint64_t(3 * t + 1)) < 0.5) {
            const int w1 = (w0 + 1 + int(rng.bits(std::uint64_t(3 * t + 2)) % std::uint64_t(n - 1))) % n;
            c.layers.push_back({make_gate(random_unitary(4, seed, std::uint64_t(t + 1)), {w0, w1})});
        } else {
            c.layers.push_back({make_gate(random_unitary(2, seed, std::uint64_t(t + 1)), {w0})});
        }
    }
    return fill_identities(c);
}

}  // namespace

TEST(DegreeReduce, IdentityCircuitStaysIdentity) {
    const auto r = degree_reduce(fixtures::identity_circuit(2, 2, 0));
    EXPECT_TRUE(validate(r.circuit).empty());
    EXPECT_TRUE(gate_sequence(r.circuit).empty());
}

TEST(DegreeReduce, SemanticsAndDegree) {
    for (int n = 1; n <= 3; ++n)
        for (int T = 1; T <= 3; ++T)
            for (std::uint64_t seed = 1; seed <= 3; ++seed) {
                const auto c = random_circuit(n, T, seed * 100 + std::uint64_t(n * 10 + T));
                const auto r = degree_reduce(c);
                ASSERT_TRUE(validate(r.circuit).empty());
                std::vector<int> touches(std::size_t(r.circuit.n), 0);
                for (const Gate& g : gate_sequence(r.circuit))
                    for (int w : g.wires) ++touches[std::size_t(w)];
                for (int t : touches) EXPECT_LE(t, 3);

                const Vec xi = random_state(Eigen::Index(1) << n, seed);
                const Vec expect = simulate(c, xi);
                const Vec full = simulate(r.circuit, input_state(r.circuit, xi));
                const Mat rho = reduced_density(full, [&] {
                    Qubits q = r.output_wires();
                    std::reverse(q.begin(), q.end());
                    return q;
                }());
                const double fid = expect.dot(rho * expect).real();
                EXPECT_GE(fid, 1.0 - 1e-10) << "n=" << n << " T=" << T;
            }
}

TEST(ParallelRepeat, Structure) {
    const auto c = layered(2, 1, {{make_gate("H", {0}), make_gate("T", {1})}, {make_gate("CNOT", {0, 1})}});
    const auto one = parallel_repeat(c, 1);
    EXPECT_EQ(one.n, c.n);
    EXPECT_EQ(circuit_unitary(one), circuit_unitary(c));
    const auto three = parallel_repeat(c, 3);
    EXPECT_EQ(three.n, 6);
    EXPECT_TRUE(validate(three).empty());
    for (std::size_t l = 0; l < c.layers.size(); ++l) EXPECT_EQ(three.layers[l].size(), 3 * c.layers[l].size());
}

TEST(ParallelRepeat, CopyMarginalMatchesSingle) {
    const auto c = layered(2, 1, {{make_gate("H", {0}), make_gate("T", {1})}, {make_gate("CNOT", {0, 1})}});
    const Vec xi = random_state(2, 5);
    const Vec single = simulate(c, input_state(c, xi));
    const auto rep = parallel_repeat(c, 3);
    // witness of each copy is xi
    Vec wit = kron(kron(Mat(xi), Mat(xi)), Mat(xi)).col(0);
    const Vec full = simulate(rep, input_state(rep, wit));
    const Qubits copy2{repeated_wire(c, 3, 2, 1), repeated_wire(c, 3, 2, 0)};
    const Mat rho = reduced_density(full, copy2);
    const Mat expect = reduced_density(single, Qubits{1, 0});
    Eigen::SelfAdjointEigenSolver<Mat> es(rho - expect);
    EXPECT_LT(0.5 * es.eigenvalues().cwiseAbs().sum(), 1e-12);
}
