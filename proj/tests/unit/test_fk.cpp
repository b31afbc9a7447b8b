#include "clockless/fk.hpp"
#include "clockless/rng.hpp"
#include "clockless/spectral.hpp"

#include "clockless/fixtures.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

using namespace clockless;
using clockless::fixtures::layered;

namespace {

double energy_of(const ClockHamiltonian& h, const Vec& psi, std::initializer_list<FkTermKind> kinds) {
    double e = 0.0;
    for (const auto& t : h.terms)
        if (std::find(kinds.begin(), kinds.end(), t.kind) != kinds.end()) e += expectation(t.op, psi);
    return e;
}

Vec witness_for(const LayeredCircuit& c, std::uint64_t seed) {
    return random_state(Eigen::Index(1) << c.witness_qubits(), seed);
}

Mat density(const Vec& v) { return v * v.adjoint(); }

}  // namespace

TEST(ModifiedFk, IdentityCircuitHistoryState) {
    const auto r = degree_reduce(layered(1, 1, {{}}));
    const auto h = build_modified_fk(r);
    EXPECT_EQ(h.steps, 1);
    const Vec psi = history_state(h, Vec::Ones(1));
    EXPECT_NEAR(psi.norm(), 1.0, 1e-12);
    EXPECT_LT(energy_of(h, psi, {FkTermKind::propagation, FkTermKind::clock}), 1e-10);
}

TEST(ModifiedFk, HistoryStatesAnnihilatePropagationAndClock) {
    for (const auto& f : fixtures::ground_state_fixtures()) {
        const auto r = degree_reduce(f.circuit);
        const auto h = build_modified_fk(r);
        if (h.total_qubits() > 14) continue;
        const Vec psi = history_state(h, witness_for(r.circuit, 3));
        EXPECT_LT(energy_of(h, psi, {FkTermKind::propagation, FkTermKind::clock, FkTermKind::input}), 1e-10)
            << f.name;
    }
}

TEST(ModifiedFk, DegreeAndLocality) {
    for (const auto& f : fixtures::ground_state_fixtures()) {
        const auto h = build_modified_fk(degree_reduce(f.circuit));
        const auto deg = h.degree_table();
        EXPECT_LE(*std::max_element(deg.begin(), deg.end()), 7) << f.name;
        const auto loc = h.term_locality();
        EXPECT_LE(*std::max_element(loc.begin(), loc.end()), 5) << f.name;
    }
}

TEST(ModifiedFk, ManyAncillasReachSevenButNotMore) {
    // Five ancillas all first touched at step 1 pile initialization checks onto the clock.
    LayeredCircuit c = layered(5, 5, {{make_gate("X", {0})}, {make_gate("X", {1})}, {make_gate("X", {2})},
                                      {make_gate("X", {3})}, {make_gate("X", {4})}});
    const auto h = build_modified_fk(c, 0);
    const auto deg = h.degree_table();
    EXPECT_EQ(*std::max_element(deg.begin(), deg.end()), 7);
}

TEST(ModifiedFk, InvalidClockViolatesTwoTerms) {
    const auto h = build_modified_fk(degree_reduce(layered(1, 1, {{make_gate("H", {0})}, {make_gate("T", {0})}})));
    ASSERT_GE(h.steps, 3);
    std::string bits(std::size_t(h.steps), '0');
    bits[1] = '1';
    const Vec psi = clock_basis_state(h, bits, Vec::Unit(Eigen::Index(1) << h.data_qubits, 0));
    const auto v = violated_terms(h, psi);
    EXPECT_EQ(v.size(), 2u);
    int clock = 0;
    for (int i : v) clock += h.terms[std::size_t(i)].kind == FkTermKind::clock;
    EXPECT_EQ(clock, 1);
}

TEST(ModifiedFk, AcceptingCircuitHasZeroGroundEnergy) {
    // X drives the output to 1, so the history state avoids the output penalty.
    const auto good = build_modified_fk(degree_reduce(layered(1, 1, {{make_gate("X", {0})}})));
    const auto bad = build_modified_fk(degree_reduce(layered(1, 1, {{make_gate("H", {0})}})));
    const auto eg = dense_spectrum(good.op(), false).eigenvalues[0];
    const auto eb = dense_spectrum(bad.op(), false).eigenvalues[0];
    EXPECT_LT(std::abs(eg), 1e-10);
    EXPECT_GT(eb, 1e-3);
    const Vec psi = history_state(good, Vec::Ones(1));
    EXPECT_LT(energy_of(good, psi, {FkTermKind::propagation, FkTermKind::clock, FkTermKind::input,
                                    FkTermKind::output}),
              1e-12);
}

TEST(ModifiedFk, RejectsUnreducedCircuits) {
    EXPECT_THROW(build_modified_fk(layered(3, 3, {{make_gate("CCZ", {0, 1, 2})}}), 0), std::invalid_argument);
    const auto busy = layered(1, 1, {{make_gate("H", {0})}, {make_gate("T", {0})}, {make_gate("H", {0})},
                                     {make_gate("T", {0})}});
    EXPECT_THROW(build_modified_fk(busy, 0), std::invalid_argument);
    EXPECT_NO_THROW(build_modified_fk(degree_reduce(busy)));
}

TEST(DlVerifier, SingleProjector) {
    Mat one = Mat::Zero(2, 2);
    one(1, 1) = 1.0;
    const std::vector<LocalOperator> ps{{one, {0}}};
    const auto v = build_dl_verifier(1, ps, {{0}});
    EXPECT_NEAR(dl_accept_probability(v, Vec::Unit(2, 0)), 1.0, 1e-12);
    const Vec plus = Vec::Ones(2) / std::sqrt(2.0);
    EXPECT_NEAR(dl_accept_probability(v, plus), 0.5, 1e-12);
    EXPECT_EQ(v.circuit.layers[0][0].name, "C_hNOT");
}

TEST(DlVerifier, MatchesOperatorProduct) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto proj = [&](std::uint64_t s) {
            const Mat u = random_unitary(4, seed * 10 + s);
            return Mat(u.leftCols(1 + Eigen::Index(s % 2)) * u.leftCols(1 + Eigen::Index(s % 2)).adjoint());
        };
        const std::vector<LocalOperator> ps{{proj(1), {0, 1}}, {proj(2), {2, 3}}, {proj(3), {1, 2}}};
        const std::vector<std::vector<int>> groups{{0, 1}, {2}};
        const auto v = build_dl_verifier(4, ps, groups);
        const Vec xi = random_state(16, seed);
        EXPECT_NEAR(dl_accept_probability(v, xi), dl_operator_probability(4, ps, groups, xi), 1e-12);
        EXPECT_EQ(v.plan.or_tree_depth, 2);
    }
}

TEST(DlVerifier, RejectsBadGroupings) {
    Mat one = Mat::Zero(2, 2);
    one(1, 1) = 1.0;
    const std::vector<LocalOperator> ps{{one, {0}}, {one, {0}}};
    EXPECT_THROW(build_dl_verifier(1, ps, {{0, 1}}), std::invalid_argument);
    EXPECT_THROW(build_dl_verifier(1, ps, {{0}}), std::invalid_argument);
    EXPECT_THROW(build_dl_verifier(1, ps, {{0}, {0, 1}}), std::invalid_argument);
    const std::vector<LocalOperator> half{{0.5 * one, {0}}};
    EXPECT_THROW(build_dl_verifier(1, half, {{0}}), std::invalid_argument);
}

TEST(SwapTest, ClosedFormExamples) {
    const Vec s = random_state(2, 1);
    EXPECT_NEAR(swap_test_accept_probability(density(kron(s, s))).accept, 1.0, 1e-12);
    const auto mixed = swap_test_accept_probability(Mat::Identity(4, 4) / 4.0);
    EXPECT_NEAR(mixed.accept, 0.75, 1e-12);
    EXPECT_NEAR(mixed.fidelity, 1.0, 1e-12);
    EXPECT_THROW(swap_test_accept_probability(Mat::Identity(8, 8) / 8.0), std::invalid_argument);
    EXPECT_THROW(swap_test_accept_probability(Mat::Identity(4, 2)), std::invalid_argument);
}

TEST(SwapTest, CircuitOnPureStates) {
    const Vec a = random_state(4, 2);
    EXPECT_NEAR(swap_test_circuit_probability(kron(a, a), 2), 1.0, 1e-12);
    const Vec e0 = Vec::Unit(2, 0), e1 = Vec::Unit(2, 1);
    EXPECT_NEAR(swap_test_circuit_probability(kron(e0, e1), 1), 0.5, 1e-12);
}

TEST(SwapTest, CircuitMatchesFormulaAndBound) {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        // Two one-qubit registers entangled with a one-qubit environment.
        const Vec psi = random_state(8, 100 + seed);
        const Mat rho = partial_trace(density(psi), Qubits{0, 1});
        const auto r = swap_test_accept_probability(rho);
        EXPECT_NEAR(swap_test_circuit_probability(psi, 1), r.accept, 1e-12);
        EXPECT_TRUE(r.holds) << r.accept << " > " << r.bound;
    }
}

TEST(SwapVerifier, HonestWitnessAcceptsWithCertainty) {
    for (const auto& c : {layered(1, 1, {{make_gate("X", {0})}}),
                          layered(1, 1, {{make_gate("H", {0})}, {make_gate("Z", {0})}, {make_gate("H", {0})}}),
                          layered(2, 1, {{make_gate("Z", {1})}, {make_gate("CNOT", {1, 0})}})}) {
        const auto v = build_swap_test_verifier(c, 0);
        if (v.circuit.n > 16) continue;
        const Vec xi = c.witness_qubits() ? Vec(Vec::Unit(2, 1)) : Vec(Vec::Ones(1));
        const double honest = swap_verifier_accept_probability(v, swap_honest_input(v, c, xi));
        EXPECT_NEAR(honest, 1.0, 1e-12);
        EXPECT_EQ(v.test_ancillas.size(), std::size_t(2 * v.steps - 1));
    }
}

TEST(SwapVerifier, InconsistentRegistersLoseAcceptance) {
    const auto c = layered(1, 1, {{make_gate("H", {0})}, {make_gate("X", {0})}});
    const auto v = build_swap_test_verifier(c, 0);
    const Vec xi = Vec::Ones(1);
    const double honest = swap_verifier_accept_probability(v, swap_honest_input(v, c, xi));
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        std::vector<Vec> regs;
        for (int r = 1; r < 2 * v.steps; ++r) regs.push_back(random_state(2, seed * 7 + std::uint64_t(r)));
        const double cheat = swap_verifier_accept_probability(v, swap_verifier_input(v, c, xi, regs));
        EXPECT_LT(cheat, honest - 1e-6);
    }
    EXPECT_NEAR(swap_soundness_target(2), 1.0 - 1.0 / 8.0, 1e-15);
}
