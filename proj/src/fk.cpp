#include "clockless/fk.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

namespace clockless {

std::string fk_kind_name(FkTermKind k) {
    switch (k) {
        case FkTermKind::input: return "input";
        case FkTermKind::propagation: return "propagation";
        case FkTermKind::clock: return "clock";
        case FkTermKind::output: return "output";
    }
    return "?";
}

std::vector<int> ClockHamiltonian::degree_table() const {
    std::vector<int> deg(static_cast<std::size_t>(total_qubits()), 0);
    for (const auto& t : terms)
        for (int q : t.op.support) ++deg[static_cast<std::size_t>(q)];
    return deg;
}

std::vector<int> ClockHamiltonian::term_locality() const {
    std::vector<int> out;
    out.reserve(terms.size());
    for (const auto& t : terms) out.push_back(static_cast<int>(t.op.support.size()));
    return out;
}

SparseOperator ClockHamiltonian::op() const {
    std::vector<LocalOperator> ops;
    ops.reserve(terms.size());
    for (const auto& t : terms) ops.push_back(t.op);
    return SparseOperator(total_qubits(), std::move(ops));
}

namespace {

// Clock qubits among times `ts` that exist (1..T), with the required bit of
// each; virtual qubits 0 (always 1) and T+1 (always 0) must agree with `bits`.
struct ClockPattern {
    Qubits qubits;
    Eigen::Index index = 0;  // basis index, qubits[0] most significant
    bool feasible = true;
};

ClockPattern clock_pattern(int steps, const std::vector<int>& ts, const std::vector<int>& bits) {
    ClockPattern p;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        const int t = ts[i];
        if (t <= 0) {
            p.feasible &= bits[i] == 1;
        } else if (t > steps) {
            p.feasible &= bits[i] == 0;
        } else {
            p.qubits.push_back(t - 1);
            p.index = (p.index << 1) | bits[i];
        }
    }
    return p;
}

Mat basis_projector(Eigen::Index dim, Eigen::Index i) {
    Mat m = Mat::Zero(dim, dim);
    m(i, i) = 1.0;
    return m;
}

Qubits concat(Qubits a, const Qubits& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

}  // namespace

ClockHamiltonian build_modified_fk(const LayeredCircuit& reduced, int output_wire) {
    require_valid(reduced);
    if (output_wire < 0 || output_wire >= reduced.n) throw std::invalid_argument("output wire out of range");
    ClockHamiltonian h;
    h.gates = gate_sequence(reduced);
    // An all-identity circuit still gets one clock step.
    if (h.gates.empty()) h.gates.push_back(identity_gate(0));
    h.steps = static_cast<int>(h.gates.size());
    h.data_qubits = reduced.n;
    h.ancillas = reduced.a;
    h.output_wire = output_wire;
    const int T = h.steps;

    std::vector<int> touches(static_cast<std::size_t>(reduced.n), 0);
    std::vector<int> first(static_cast<std::size_t>(reduced.n), T + 1);
    for (int t = 1; t <= T; ++t) {
        const Gate& g = h.gates[static_cast<std::size_t>(t - 1)];
        if (g.arity() > 2) throw std::invalid_argument("gate '" + g.name + "' acts on more than two wires; terms would exceed 5-local");
        for (int w : g.wires) {
            auto& f = first[static_cast<std::size_t>(w)];
            f = std::min(f, t);
            if (++touches[static_cast<std::size_t>(w)] > 3)
                throw std::invalid_argument("wire " + std::to_string(w) + " is acted on by more than 3 gates; apply degree_reduce first");
        }
    }

    // Propagation: 1/2 (|100><100| + |110><110| - |110><100| U - h.c.) on (t-1, t, t+1).
    for (int t = 1; t <= T; ++t) {
        const Gate& g = h.gates[static_cast<std::size_t>(t - 1)];
        const auto before = clock_pattern(T, {t - 1, t, t + 1}, {1, 0, 0});
        const auto after = clock_pattern(T, {t - 1, t, t + 1}, {1, 1, 0});
        const Eigen::Index cd = Eigen::Index(1) << before.qubits.size();
        Mat a = Mat::Zero(cd, cd), b = Mat::Zero(cd, cd), ba = Mat::Zero(cd, cd);
        a(before.index, before.index) = 1.0;
        b(after.index, after.index) = 1.0;
        ba(after.index, before.index) = 1.0;
        const Mat id = Mat::Identity(g.unitary.rows(), g.unitary.cols());
        Mat block = 0.5 * (kron(a, id) + kron(b, id) - kron(ba, g.unitary) - kron(ba.adjoint(), g.unitary.adjoint()));
        Qubits data;
        for (int w : g.wires) data.push_back(h.data_qubit(w));
        h.terms.push_back({FkTermKind::propagation, {std::move(block), concat(before.qubits, data)}, t, -1});
    }
    for (int t = 2; t <= T; ++t)
        h.terms.push_back({FkTermKind::clock, {basis_projector(4, 1), {t - 2, t - 1}}, t, -1});
    {
        Mat block = kron(basis_projector(2, 1), basis_projector(2, 0));
        h.terms.push_back({FkTermKind::output, {std::move(block), {h.clock_qubit(T), h.data_qubit(output_wire)}}, T, output_wire});
    }

    // Initialization checks |10><10|_{s-1,s} (x) |1><1|_i for some s <= t_i.
    std::vector<int> load(static_cast<std::size_t>(h.total_qubits()), 0);
    for (const auto& term : h.terms)
        for (int q : term.op.support) ++load[static_cast<std::size_t>(q)];
    std::vector<int> order(static_cast<std::size_t>(reduced.a));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int x, int y) { return first[std::size_t(x)] < first[std::size_t(y)]; });
    for (int i : order) {
        const int ti = first[static_cast<std::size_t>(i)];
        int slot = ti;
        for (int s = ti; s >= 1; --s) {
            const auto p = clock_pattern(T, {s - 1, s}, {1, 0});
            const bool fits = std::all_of(p.qubits.begin(), p.qubits.end(),
                                          [&](int q) { return load[static_cast<std::size_t>(q)] < 7; });
            if (fits) {
                slot = s;
                break;
            }
        }
        const auto p = clock_pattern(T, {slot - 1, slot}, {1, 0});
        Mat block = kron(basis_projector(Eigen::Index(1) << p.qubits.size(), p.index), basis_projector(2, 1));
        Qubits support = concat(p.qubits, {h.data_qubit(i)});
        for (int q : support) ++load[static_cast<std::size_t>(q)];
        h.terms.push_back({FkTermKind::input, {std::move(block), std::move(support)}, slot, i});
    }
    return h;
}

ClockHamiltonian build_modified_fk(const DegreeReduced& reduced) {
    return build_modified_fk(reduced.circuit, reduced.output_wires().front());
}

Vec clock_basis_state(const ClockHamiltonian& h, const std::string& clock_bits, const Vec& data) {
    if (static_cast<int>(clock_bits.size()) != h.steps) throw std::invalid_argument("clock string length must equal the step count");
    if (data.size() != (Eigen::Index(1) << h.data_qubits)) throw std::invalid_argument("data vector dimension mismatch");
    Eigen::Index c = 0;
    for (int t = 0; t < h.steps; ++t) {
        const char ch = clock_bits[static_cast<std::size_t>(t)];
        if (ch != '0' && ch != '1') throw std::invalid_argument("clock string must be binary");
        if (ch == '1') c |= Eigen::Index(1) << t;
    }
    Vec out = Vec::Zero(Eigen::Index(1) << h.total_qubits());
    for (Eigen::Index x = 0; x < data.size(); ++x) out((x << h.steps) | c) = data(x);
    return out;
}

Vec history_state(const ClockHamiltonian& h, const Vec& xi) {
    LayeredCircuit shell;
    shell.n = h.data_qubits;
    shell.a = h.ancillas;
    Vec psi = input_state(shell, xi);
    Vec out = Vec::Zero(Eigen::Index(1) << h.total_qubits());
    const double norm = 1.0 / std::sqrt(static_cast<double>(h.steps + 1));
    for (int t = 0; t <= h.steps; ++t) {
        if (t > 0) psi = apply_gate(h.gates[static_cast<std::size_t>(t - 1)], psi);
        const Eigen::Index c = (Eigen::Index(1) << t) - 1;
        for (Eigen::Index x = 0; x < psi.size(); ++x) out((x << h.steps) | c) += norm * psi(x);
    }
    return out;
}

std::vector<int> violated_terms(const ClockHamiltonian& h, const Vec& state, double tol) {
    std::vector<int> out;
    for (std::size_t i = 0; i < h.terms.size(); ++i)
        if (expectation(h.terms[i].op, state) > tol) out.push_back(static_cast<int>(i));
    return out;
}

double accept_probability(const Vec& final_state, const MeasurementPlan& plan) {
    std::uint64_t mask = 0, want = 0;
    for (std::size_t i = 0; i < plan.wires.size(); ++i) {
        mask |= std::uint64_t(1) << plan.wires[i];
        if (plan.expected[i]) want |= std::uint64_t(1) << plan.wires[i];
    }
    double p = 0.0;
    for (Eigen::Index x = 0; x < final_state.size(); ++x)
        if ((static_cast<std::uint64_t>(x) & mask) == want) p += std::norm(final_state(x));
    return p;
}

namespace {

int ceil_log2(int m) {
    int d = 0;
    while ((1 << d) < m) ++d;
    return d;
}

void check_groups(int data_qubits, const std::vector<LocalOperator>& projectors,
                  const std::vector<std::vector<int>>& groups) {
    std::vector<int> seen(projectors.size(), 0);
    for (std::size_t l = 0; l < groups.size(); ++l) {
        std::set<int> used;
        for (int i : groups[l]) {
            if (i < 0 || i >= static_cast<int>(projectors.size())) throw std::invalid_argument("group references unknown term");
            if (seen[static_cast<std::size_t>(i)]++) throw std::invalid_argument("term " + std::to_string(i) + " appears in two groups");
            const auto& p = projectors[static_cast<std::size_t>(i)];
            check_support(p.support, data_qubits, p.block.rows());
            if (!is_projector(p.block)) throw std::invalid_argument("term " + std::to_string(i) + " is not a projector");
            for (int q : p.support)
                if (!used.insert(q).second)
                    throw std::invalid_argument("group " + std::to_string(l) + " has overlapping members on qubit " + std::to_string(q));
        }
    }
    for (std::size_t i = 0; i < seen.size(); ++i)
        if (!seen[i]) throw std::invalid_argument("term " + std::to_string(i) + " is not in any group");
}

}  // namespace

DlVerifier build_dl_verifier(int data_qubits, const std::vector<LocalOperator>& projectors,
                             const std::vector<std::vector<int>>& groups) {
    check_groups(data_qubits, projectors, groups);
    const int m = static_cast<int>(projectors.size());
    DlVerifier v;
    v.data_qubits = data_qubits;
    v.circuit.n = m + data_qubits;
    v.circuit.a = m;
    const Mat x = named_unitary("X");
    for (const auto& group : groups) {
        std::vector<Gate> layer;
        for (int i : group) {
            const auto& p = projectors[static_cast<std::size_t>(i)];
            const Mat id = Mat::Identity(p.block.rows(), p.block.cols());
            Qubits wires;
            for (int q : p.support) wires.push_back(m + q);
            wires.push_back(i);
            Gate g = make_gate(kron(id - p.block, Mat::Identity(2, 2)) + kron(p.block, x), wires);
            g.name = "C_hNOT";
            layer.push_back(std::move(g));
        }
        v.circuit.layers.push_back(std::move(layer));
    }
    v.circuit = fill_identities(std::move(v.circuit));
    for (int i = 0; i < m; ++i) {
        v.plan.wires.push_back(i);
        v.plan.expected.push_back(0);
    }
    v.plan.or_tree_depth = ceil_log2(m);
    return v;
}

double dl_accept_probability(const DlVerifier& v, const Vec& xi) {
    return accept_probability(simulate(v.circuit, input_state(v.circuit, xi)), v.plan);
}

double dl_operator_probability(int data_qubits, const std::vector<LocalOperator>& projectors,
                               const std::vector<std::vector<int>>& groups, const Vec& xi) {
    check_groups(data_qubits, projectors, groups);
    Vec phi = xi;
    for (const auto& group : groups)
        for (int i : group) {
            const auto& p = projectors[static_cast<std::size_t>(i)];
            phi -= apply_on(p.block, p.support, phi);
        }
    return phi.squaredNorm();
}

namespace {

Mat swap_matrix(Eigen::Index d) {
    Mat s = Mat::Zero(d * d, d * d);
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j) s(j * d + i, i * d + j) = 1.0;
    return s;
}

Mat psd_sqrt(const Mat& m) {
    Eigen::SelfAdjointEigenSolver<Mat> es(m);
    const Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

SwapTestResult swap_test_accept_probability(const Mat& rho) {
    if (rho.rows() != rho.cols()) throw std::invalid_argument("density matrix must be square");
    const auto d = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(rho.rows()))));
    if (d * d != rho.rows()) throw std::invalid_argument("subsystem dimensions differ");
    SwapTestResult r;
    r.accept = 0.5 * (1.0 + (swap_matrix(d) * rho).trace().real());
    Mat ra = Mat::Zero(d, d), rb = Mat::Zero(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j)
            for (Eigen::Index k = 0; k < d; ++k) {
                ra(i, j) += rho(i * d + k, j * d + k);
                rb(i, j) += rho(k * d + i, k * d + j);
            }
    // F = ||sqrt(rho_A) sqrt(rho_B)||_1
    Eigen::JacobiSVD<Mat> svd(psd_sqrt(ra) * psd_sqrt(rb));
    r.fidelity = svd.singularValues().sum();
    r.bound = 0.5 * (1.0 + r.fidelity);
    r.holds = r.accept <= r.bound + 1e-12;
    return r;
}

double swap_test_circuit_probability(const Vec& state, int register_qubits) {
    const int n = qubit_count(state.size());
    const int k = register_qubits;
    if (2 * k > n) throw std::invalid_argument("state too small for two registers");
    // ancilla on wire 0, register A on wires 1..k, B on k+1..2k, environment after
    LayeredCircuit c;
    c.n = n + 1;
    c.a = 1;
    c.layers.push_back({make_gate("H", {0})});
    for (int w = 0; w < k; ++w) c.layers.push_back({make_gate("CSWAP", {0, 1 + w, 1 + k + w})});
    c.layers.push_back({make_gate("H", {0})});
    const Vec out = simulate(fill_identities(c), input_state(c, state));
    return accept_probability(out, {{0}, {0}, 0});
}

SwapTestVerifier build_swap_test_verifier(const LayeredCircuit& w, int output_wire) {
    require_valid(w);
    if (output_wire < 0 || output_wire >= w.n) throw std::invalid_argument("output wire out of range");
    auto gates = gate_sequence(w);
    if (gates.empty()) gates.push_back(identity_gate(0));
    const int T = static_cast<int>(gates.size());
    const int n = w.n;
    const int tests = 2 * T - 1;
    SwapTestVerifier v;
    v.steps = T;

    // Wires: test ancillas, register 0's ancillas, register 0's witness, then
    // registers 1 .. 2T-1 (psi_1 a, psi_1 b, ..., psi_T).
    v.registers.assign(static_cast<std::size_t>(2 * T), Qubits(static_cast<std::size_t>(n)));
    const int base0 = tests + w.a;
    for (int q = 0; q < n; ++q) v.registers[0][std::size_t(q)] = q < w.a ? tests + q : base0 + (q - w.a);
    const int base1 = base0 + (n - w.a);
    for (int r = 1; r < 2 * T; ++r)
        for (int q = 0; q < n; ++q) v.registers[std::size_t(r)][std::size_t(q)] = base1 + (r - 1) * n + q;
    v.circuit.n = base1 + (2 * T - 1) * n;
    v.circuit.a = tests + w.a;
    for (int j = 0; j < tests; ++j) v.test_ancillas.push_back(j);

    const auto src = [&](int t) { return t == 0 ? 0 : 2 * t - 1; };   // copy a of psi_t
    const auto dst = [&](int t) { return t == T ? 2 * T - 1 : 2 * t; };  // copy b of psi_t

    const auto swap_tests = [&](const std::vector<std::array<int, 3>>& tests_spec) {
        if (tests_spec.empty()) return;
        std::vector<Gate> h;
        for (const auto& s : tests_spec) h.push_back(make_gate("H", {s[0]}));
        v.circuit.layers.push_back(h);
        for (int q = 0; q < n; ++q) {
            std::vector<Gate> layer;
            for (const auto& s : tests_spec)
                layer.push_back(make_gate("CSWAP", {s[0], v.registers[std::size_t(s[1])][std::size_t(q)],
                                                    v.registers[std::size_t(s[2])][std::size_t(q)]}));
            v.circuit.layers.push_back(std::move(layer));
        }
        v.circuit.layers.push_back(h);
    };

    std::vector<std::array<int, 3>> first_layer, second_layer;
    for (int t = 1; t < T; ++t) first_layer.push_back({t - 1, src(t), dst(t)});
    swap_tests(first_layer);

    std::vector<Gate> apply;
    for (int t = 0; t < T; ++t) {
        Gate g = gates[std::size_t(t)];
        for (int& q : g.wires) q = v.registers[std::size_t(src(t))][std::size_t(q)];
        apply.push_back(std::move(g));
        second_layer.push_back({T - 1 + t, src(t), dst(t + 1)});
    }
    v.circuit.layers.push_back(std::move(apply));
    swap_tests(second_layer);
    v.circuit = fill_identities(std::move(v.circuit));

    for (int j : v.test_ancillas) {
        v.plan.wires.push_back(j);
        v.plan.expected.push_back(0);
    }
    v.plan.wires.push_back(v.registers.back()[std::size_t(output_wire)]);
    v.plan.expected.push_back(1);
    v.plan.or_tree_depth = ceil_log2(tests + 1);
    v.fanout_depth = ceil_log2(n) + 2;
    return v;
}

Vec swap_verifier_input(const SwapTestVerifier& v, const LayeredCircuit& w, const Vec& xi,
                        const std::vector<Vec>& register_states) {
    if (static_cast<int>(register_states.size()) != 2 * v.steps - 1)
        throw std::invalid_argument("expected one state per register after the first");
    std::vector<std::pair<Vec, Qubits>> factors;
    const auto msb_first = [](Qubits q) {
        std::reverse(q.begin(), q.end());
        return q;
    };
    factors.emplace_back(input_state(w, xi), msb_first(v.registers[0]));
    for (std::size_t r = 0; r < register_states.size(); ++r) {
        if (register_states[r].size() != (Eigen::Index(1) << w.n)) throw std::invalid_argument("register state dimension mismatch");
        factors.emplace_back(register_states[r], msb_first(v.registers[r + 1]));
    }
    return product_state(factors, v.circuit.n);
}

Vec swap_honest_input(const SwapTestVerifier& v, const LayeredCircuit& w, const Vec& xi) {
    auto gates = gate_sequence(w);
    if (gates.empty()) gates.push_back(identity_gate(0));
    std::vector<Vec> regs;
    Vec psi = input_state(w, xi);
    for (int t = 1; t <= v.steps; ++t) {
        psi = apply_gate(gates[std::size_t(t - 1)], psi);
        regs.push_back(psi);
        if (t < v.steps) regs.push_back(psi);
    }
    return swap_verifier_input(v, w, xi, regs);
}

double swap_verifier_accept_probability(const SwapTestVerifier& v, const Vec& input) {
    return accept_probability(simulate(v.circuit, input), v.plan);
}

double swap_soundness_target(int steps, double beta) {
    if (steps < 1 || !(beta > 0.0)) throw std::invalid_argument("steps and beta must be positive");
    return 1.0 - std::pow(double(steps), -beta);
}

}  // namespace clockless
