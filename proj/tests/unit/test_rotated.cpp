#include "clockless/rotated.hpp"
#include "clockless/rng.hpp"

#include "clockless/fixtures.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <map>

using namespace clockless;
using clockless::fixtures::identity_circuit;
using clockless::fixtures::layered;

namespace {

HamiltonianTerm gate_term(const LayeredCircuit& c, int layer, std::size_t index, double delta) {
    const GridLayout g = layout_of(c);
    return propagation_term(g, c.layers[std::size_t(layer)][index], layer, uniform_deltas(c.depth(), delta));
}

Qubits concat(std::initializer_list<Qubits> parts) {
    Qubits out;
    for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
    return out;
}

}  // namespace

TEST(Rotation, IsUnitaryOnRandomStates) {
    const auto c = layered(2, 2, {{make_gate("CNOT", {0, 1})}, {make_gate("T", {0}), make_gate("H", {1})}});
    const RotationUnitary v(c);
    const auto dim = Eigen::Index(1) << v.layout().total_qubits();
    for (std::uint64_t s = 0; s < 20; ++s) {
        const Vec psi = random_state(dim, 11, s);
        const Vec phi = random_state(dim, 12, s);
        const Vec vpsi = v.apply(psi);
        EXPECT_NEAR(vpsi.norm(), 1.0, 1e-12);
        EXPECT_NEAR(std::abs(vpsi.dot(v.apply(phi)) - psi.dot(phi)), 0.0, 1e-12);
        EXPECT_LT((v.apply(vpsi, Direction::adjoint) - psi).norm(), 1e-12);
    }
}

TEST(Rotation, MapsPepsToProductOfPhi0) {
    // V^dagger Psi = phi0^{(x) nD} (x) |0^a xi> up to normalization.
    for (const auto& f : fixtures::ground_state_fixtures()) {
        const auto& c = f.circuit;
        for (double d : {0.3, 0.7}) {
            const auto deltas = uniform_deltas(c.depth(), d);
            const auto psi = build_peps(c, Vec::Ones(1), deltas).amplitudes;
            const RotationUnitary v(c);
            const GridLayout& g = v.layout();
            std::vector<std::pair<Vec, Qubits>> factors;
            for (int s = 0; s < g.site_count(); ++s) factors.push_back({phi0(d), g.site_qubits(s)});
            factors.push_back({Vec::Unit(Eigen::Index(1) << g.n, 0), g.output_register()});
            const Vec expect = product_state(factors, g.total_qubits());
            const Vec got = v.apply(psi, Direction::adjoint).normalized();
            EXPECT_GE(std::norm(expect.dot(got)), 1.0 - 1e-12) << f.name << " delta " << d;
        }
    }
}

TEST(Rotation, ConjugationIsIsospectral) {
    const auto c = layered(1, 1, {{make_gate("T", {0})}, {make_gate("H", {0})}});
    const RotationUnitary v(c);
    const auto t = gate_term(c, 0, 0, 0.4);
    const Mat full = embed(t.block, t.support, v.layout().total_qubits());
    const Eigen::VectorXd a = Eigen::SelfAdjointEigenSolver<Mat>(full).eigenvalues();
    const Eigen::VectorXd b = Eigen::SelfAdjointEigenSolver<Mat>(v.conjugate(t.local())).eigenvalues();
    EXPECT_LT((a - b).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Rotation, FullConjugationRejectsLargeGrids) {
    const auto c = identity_circuit(2, 3, 2);  // 14 qubits
    const RotationUnitary v(c);
    const auto t = gate_term(c, 0, 0, 0.5);
    EXPECT_THROW(v.conjugate(t.local()), std::invalid_argument);
}

TEST(LastLayer, MatchesClosedFormForAnyGate) {
    for (double d : {0.2, 0.5, 0.9}) {
        for (const char* name : {"I", "H", "T"}) {
            const auto c = layered(1, 1, {{make_gate(name, {0})}});
            const RotationUnitary v(c);
            const auto t = gate_term(c, 0, 0, d);
            const auto r = rotate_term(v, t, v.layout().site_qubits(0, 0));
            EXPECT_LT(r.outside_residual, 1e-12) << name;
            EXPECT_LT((r.local - last_layer_closed_form(1, d)).norm(), 1e-12) << name << " delta " << d;
        }
        const auto c = layered(2, 2, {{make_gate("CNOT", {0, 1})}});
        const RotationUnitary v(c);
        const auto t = gate_term(c, 0, 0, d);
        const auto& g = v.layout();
        const auto r = rotate_term(v, t, concat({g.site_qubits(0, 0), g.site_qubits(0, 1)}));
        EXPECT_LT(r.outside_residual, 1e-12);
        EXPECT_LT((r.local - last_layer_closed_form(2, d)).norm(), 1e-12) << "CNOT delta " << d;
    }
}

TEST(Bulk, CliffordClosedForm) {
    for (double d : {0.2, 0.5}) {
        for (const char* name : {"H", "S"}) {
            const auto c = layered(1, 1, {{make_gate(name, {0})}, {}});
            const RotationUnitary v(c);
            const auto& g = v.layout();
            const auto r = rotate_term(v, gate_term(c, 0, 0, d), concat({g.site_qubits(0, 0), g.site_qubits(1, 0)}));
            EXPECT_LT(r.outside_residual, 1e-12) << name;
            EXPECT_LT((r.local - clifford_closed_form(c.layers[0][0].unitary, d, d)).norm(), 1e-11) << name;
        }
        for (const char* name : {"CNOT", "CZ"}) {
            const auto c = layered(2, 2, {{make_gate(name, {0, 1})}, {}});
            const RotationUnitary v(c);
            const auto& g = v.layout();
            const Qubits sup =
                concat({g.site_qubits(0, 0), g.site_qubits(0, 1), g.site_qubits(1, 0), g.site_qubits(1, 1)});
            const auto r = rotate_term(v, gate_term(c, 0, 0, d), sup);
            EXPECT_LT(r.outside_residual, 1e-12) << name;
            EXPECT_LT((r.local - clifford_closed_form(c.layers[0][0].unitary, d, d)).norm(), 1e-10) << name;
        }
    }
}

TEST(Bulk, TGateLeavesResidualOutsideSupport) {
    const auto c = layered(1, 1, {{make_gate("T", {0})}, {}});
    const RotationUnitary v(c);
    const auto& g = v.layout();
    const auto r = rotate_term(v, gate_term(c, 0, 0, 0.2), concat({g.site_qubits(0, 0), g.site_qubits(1, 0)}));
    EXPECT_GT(r.outside_residual, 1e-3);
}

TEST(Bulk, RandomizedModeAgreesWithExact) {
    const auto c = layered(1, 1, {{make_gate("H", {0})}, {}});
    const RotationUnitary v(c);
    const auto& g = v.layout();
    const Qubits sup = concat({g.site_qubits(0, 0), g.site_qubits(1, 0)});
    const auto t = gate_term(c, 0, 0, 0.5);
    const auto exact = rotate_term(v, t, sup, RotateMode::exact);
    const auto sampled = rotate_term(v, t, sup, RotateMode::randomized, 5, 50);
    EXPECT_FALSE(sampled.exact);
    EXPECT_LT(sampled.outside_residual, 1e-12);
    EXPECT_LT((exact.local - sampled.local).norm(), 1e-12);
}

TEST(Bulk, ProjectedFormForAnyGate) {
    for (double d : {0.2, 0.5}) {
        for (const char* name : {"H", "T"}) {
            const auto c = layered(1, 1, {{make_gate(name, {0})}, {}});
            const RotationUnitary v(c);
            const auto& g = v.layout();
            const auto deltas = uniform_deltas(2, d);
            const auto r = project_rotated(v, gate_term(c, 0, 0, d), {g.site_index(1, 0)}, deltas,
                                           g.site_qubits(0, 0));
            EXPECT_LT(r.outside_residual, 1e-12) << name;
            EXPECT_LT((r.local - bulk_projected_closed_form(1, d, d)).norm(), 1e-12) << name << " delta " << d;
        }
    }
}

TEST(Bulk, ProjectedCoefficientAtHalf) {
    EXPECT_NEAR(teleportation_coefficient(0.5), 4.0 / 7.0, 1e-15);
    const Mat a = bulk_projected_closed_form(1, 0.5, 0.5);
    EXPECT_LT((a - 4.0 / 7.0 * last_layer_closed_form(1, 0.5)).norm(), 1e-15);
}

TEST(Bulk, ProjectedTwoQubitGapBoundAtSmallDelta) {
    // Holds at delta = 0.2; fails from about 0.38 upward.
    const double d = 0.2;
    const Eigen::VectorXd w = Eigen::SelfAdjointEigenSolver<Mat>(bulk_projected_closed_form(2, d, d)).eigenvalues();
    EXPECT_NEAR(w(0), 0.0, 1e-14);
    EXPECT_GT(w(1), 1e-10);
    EXPECT_GE(w(1), 15.0 * std::pow(d, 8));
    EXPECT_NEAR(w(1), 1.400008883362329e-4, 1e-12);
}

TEST(Teleport, InputCheckCoefficientOnGrid) {
    for (int i = 1; i <= 9; ++i) {
        const double d = 0.1 * i;
        const auto c = layered(1, 1, {{make_gate("H", {0})}});
        const RotationUnitary v(c);
        const auto& g = v.layout();
        const auto r = project_rotated(v, input_term(g, 0, d), {g.site_index(0, 0)}, uniform_deltas(1, d),
                                       g.output_qubits({0}));
        Mat expect = Mat::Zero(2, 2);
        expect(1, 1) = teleportation_coefficient(d);
        EXPECT_LT(r.outside_residual, 1e-12);
        EXPECT_LT((r.local - expect).norm(), 1e-12) << "delta " << d;
    }
}

TEST(Teleport, TwoQubitStabilizerGetsSquaredCoefficient) {
    const double d = 0.4;
    const auto c = identity_circuit(2, 1, 2);
    const RotationUnitary v(c);
    const auto& g = v.layout();
    const std::vector<PauliCheck> checks{{"ZZ", {0, 1}}};
    const auto terms = stabilizer_terms(g, checks, d);
    ASSERT_EQ(terms.size(), 1u);
    const auto r = project_rotated(v, terms[0], {g.site_index(0, 0), g.site_index(0, 1)}, uniform_deltas(1, d),
                                   g.output_qubits({0, 1}));
    const Mat zz = pauli_check_matrix(checks[0]);
    const Mat expect = std::pow(teleportation_coefficient(d), 2) * (Mat::Identity(4, 4) - zz) / 2.0;
    EXPECT_LT(r.outside_residual, 1e-12);
    EXPECT_LT((r.local - expect).norm(), 1e-12);
}

TEST(CliffordRelation, EveryLabelHasFourToTheKPartners) {
    for (const char* name : {"I", "H", "S", "CNOT", "CZ"}) {
        const Mat u = make_gate(name, name[0] == 'C' ? Qubits{0, 1} : Qubits{0}).unitary;
        const int k = qubit_count(u.rows());
        std::map<std::uint64_t, int> rows;
        for (const auto& p : clifford_relation(u)) {
            EXPECT_NEAR(std::abs(p.phase), 1.0, 1e-12);
            ++rows[p.p];
        }
        EXPECT_EQ(rows.size(), std::size_t(1) << (4 * k)) << name;
        for (const auto& [label, count] : rows) EXPECT_EQ(count, 1 << (2 * k)) << name << " label " << label;
    }
}

TEST(CliffordRelation, HadamardExchangesXAndZ) {
    // Labels are left*4 + right; X = 1, Z = 3. Pair (p, q) = (X_L Z_R, I): U^dagger Z U = X.
    auto has = [](const std::vector<CliffordPair>& rel, std::uint64_t p, std::uint64_t q) {
        for (const auto& r : rel)
            if (r.p == p && r.q == q) return true;
        return false;
    };
    const auto h = clifford_relation(make_gate("H", {0}).unitary);
    const auto id = clifford_relation(make_gate("I", {0}).unitary);
    EXPECT_TRUE(has(h, 1 * 4 + 3, 0));
    EXPECT_FALSE(has(h, 1 * 4 + 1, 0));
    EXPECT_TRUE(has(id, 1 * 4 + 1, 0));
    EXPECT_FALSE(has(id, 1 * 4 + 3, 0));
}

TEST(CliffordRelation, NonCliffordHasMissingPartners) {
    const auto rel = clifford_relation(make_gate("T", {0}).unitary);
    std::map<std::uint64_t, int> rows;
    for (const auto& p : rel) ++rows[p.p];
    bool short_row = rows.size() < 16;
    for (const auto& [label, count] : rows) short_row = short_row || count < 4;
    EXPECT_TRUE(short_row);
    EXPECT_THROW(clifford_relation(random_unitary(8, 1)), std::invalid_argument);
}
