#include "clockless/soundness.hpp"

#include "clockless/parallel.hpp"
#include "clockless/rng.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace clockless {

Vec error_basis_state(const Gate& g, const PauliWord& e) {
    const int k = g.arity();
    if (static_cast<int>(e.size()) != k) throw std::invalid_argument("error word does not match gate arity");
    Qubits outputs;
    for (int i = k - 1; i >= 0; --i) outputs.push_back(i);
    return apply_on(e.matrix(), outputs, choi_state(g.unitary));
}

namespace {

void check_fault(const LayeredCircuit& c, const FaultPattern& f) {
    for (int w : f.inputs)
        if (w < 0 || w >= c.a) throw std::invalid_argument("faulted input " + std::to_string(w) + " is not an ancilla");
    for (auto [l, gi] : f.gates)
        if (l < 0 || l >= c.depth() || gi < 0 || gi >= static_cast<int>(c.layers[std::size_t(l)].size()))
            throw std::invalid_argument("faulted gate (" + std::to_string(l) + ", " + std::to_string(gi) +
                                        ") does not exist");
}

bool contains(const std::vector<int>& v, int x) { return std::find(v.begin(), v.end(), x) != v.end(); }
bool contains(const std::vector<std::pair<int, int>>& v, std::pair<int, int> x) {
    return std::find(v.begin(), v.end(), x) != v.end();
}

Vec ket(int bit) { return Vec::Unit(2, bit); }

Vec lambda_frame(const GridLayout& g, const Vec& state, std::span<const double> deltas) {
    Vec v = state;
    for (int l = 0; l < g.D; ++l) {
        const Mat lam = lambda_map(deltas[std::size_t(l)]);
        for (int r = 0; r < g.n; ++r) v = apply_on(lam, g.site_qubits(l, r), v);
    }
    return v.normalized();
}

Qubits witness_register(const LayeredCircuit& c, const GridLayout& g) {
    Qubits q;
    for (int w = c.n - 1; w >= c.a; --w) q.push_back(g.qubit(w, 0));
    return q;
}

}  // namespace

PepsState build_combinatorial_state(const LayeredCircuit& c, std::span<const double> deltas, const FaultPattern& f,
                                    const FaultPayload& payload, const Vec& xi) {
    require_valid(c);
    check_fault(c, f);
    const GridLayout g = layout_of(c);
    if (xi.size() != (Eigen::Index(1) << c.witness_qubits())) throw std::invalid_argument("witness dimension mismatch");
    std::vector<std::pair<Vec, Qubits>> factors;
    for (int w = 0; w < c.a; ++w) {
        Vec s = ket(0);
        if (contains(f.inputs, w)) {
            auto it = payload.inputs.find(w);
            s = it == payload.inputs.end() ? ket(1) : it->second;
            if (s.size() != 2) throw std::invalid_argument("input payload must be a single-qubit state");
        }
        factors.emplace_back(s, Qubits{g.qubit(w, 0)});
    }
    if (c.witness_qubits() > 0) factors.emplace_back(xi, witness_register(c, g));
    for (int l = 0; l < c.depth(); ++l)
        for (int gi = 0; gi < static_cast<int>(c.layers[std::size_t(l)].size()); ++gi) {
            const Gate& gate = c.layers[std::size_t(l)][std::size_t(gi)];
            Vec s;
            if (contains(f.gates, {l, gi})) {
                auto it = payload.gates.find({l, gi});
                if (it == payload.gates.end()) {
                    PauliWord x(std::size_t(gate.arity()));
                    for (auto& p : x.entries) p = Pauli::X;
                    s = error_basis_state(gate, x);
                } else {
                    s = it->second;
                }
                if (s.size() != (Eigen::Index(1) << (2 * gate.arity())))
                    throw std::invalid_argument("gate payload does not match the Choi register");
            } else {
                s = choi_state(gate.unitary);
            }
            factors.emplace_back(s, choi_qubits(g, l, gate.wires));
        }
    PepsState base{g, product_state(factors, g.total_qubits()), {}, 1.0};
    base.raw_norm = base.amplitudes.norm();
    if (base.raw_norm == 0.0) throw std::invalid_argument("payload produces the zero state");
    base.amplitudes /= base.raw_norm;
    return apply_injective_maps(base, deltas);
}

Decomposition extract_decomposition(const Vec& state, const LayeredCircuit& c, std::span<const double> deltas,
                                    const FaultPattern& f) {
    require_valid(c);
    check_fault(c, f);
    const GridLayout g = layout_of(c);
    check_deltas(deltas, g.D, false);
    const Vec psi = lambda_frame(g, state, deltas);

    // Unfaulted locations must hold |0> or Phi_U.
    Qubits fixed_q;
    Vec fixed_chi = Vec::Ones(1);
    struct Slot {
        Qubits qubits;
        int input_wire = -1;
        const Gate* gate = nullptr;
        int layer = -1;
    };
    std::vector<Slot> slots;
    for (int w = 0; w < c.a; ++w) {
        if (contains(f.inputs, w)) {
            slots.push_back({{g.qubit(w, 0)}, w, nullptr, -1});
        } else {
            fixed_q.push_back(g.qubit(w, 0));
            fixed_chi = kron(fixed_chi, ket(0));
        }
    }
    for (int l = 0; l < c.depth(); ++l)
        for (int gi = 0; gi < static_cast<int>(c.layers[std::size_t(l)].size()); ++gi) {
            const Gate& gate = c.layers[std::size_t(l)][std::size_t(gi)];
            const Qubits cq = choi_qubits(g, l, gate.wires);
            if (contains(f.gates, {l, gi})) {
                slots.push_back({cq, -1, &gate, l});
            } else {
                fixed_q.insert(fixed_q.end(), cq.begin(), cq.end());
                fixed_chi = kron(fixed_chi, choi_state(gate.unitary));
            }
        }
    const Vec rest_vec = project_out(psi, fixed_chi, fixed_q);
    const Qubits rest = complement(fixed_q, g.total_qubits());

    Decomposition d;
    d.captured = rest_vec.squaredNorm();

    // Positions of the slot qubits inside the remaining register.
    Qubits slot_pos;
    std::vector<int> radix;
    for (const Slot& s : slots) {
        for (int q : s.qubits)
            slot_pos.push_back(static_cast<int>(std::find(rest.begin(), rest.end(), q) - rest.begin()));
        radix.push_back(s.gate ? 1 << (2 * s.gate->arity()) : 2);
    }
    const Qubits witness_q = witness_register(c, g);
    Vec recon = Vec::Zero(psi.size());
    std::vector<int> digit(slots.size(), 0);
    while (true) {
        PauliWord err(std::size_t(c.n * (c.depth() + 1)));
        Vec chi = Vec::Ones(1);
        std::vector<std::pair<Vec, Qubits>> factors;
        for (std::size_t i = 0; i < slots.size(); ++i) {
            const Slot& s = slots[i];
            Vec b;
            if (s.gate) {
                const PauliWord e = PauliWord::from_code(std::uint64_t(digit[i]), std::size_t(s.gate->arity()));
                for (int j = 0; j < s.gate->arity(); ++j)
                    err[std::size_t((s.layer + 1) * c.n + s.gate->wires[std::size_t(j)])] = e[std::size_t(j)];
                b = error_basis_state(*s.gate, e);
            } else {
                err[std::size_t(s.input_wire)] = digit[i] ? Pauli::X : Pauli::I;
                b = ket(digit[i]);
            }
            chi = kron(chi, b);
            factors.emplace_back(b, s.qubits);
        }
        const Vec w = slot_pos.empty() ? rest_vec : project_out(rest_vec, chi, slot_pos);
        const double coef = w.norm();
        if (coef > 1e-14) {
            DecompositionTerm t{err, coef, w / coef};
            factors.emplace_back(fixed_chi, fixed_q);
            if (!witness_q.empty()) factors.emplace_back(t.witness, witness_q);
            recon += coef * product_state(factors, g.total_qubits());
            d.terms.push_back(std::move(t));
        }
        std::size_t i = 0;
        for (; i < slots.size(); ++i) {
            if (++digit[i] < radix[i]) break;
            digit[i] = 0;
        }
        if (i == slots.size()) break;
    }
    const double rn = recon.squaredNorm();
    d.fidelity = rn > 0.0 ? std::norm(recon.dot(psi)) / rn : 0.0;
    return d;
}

int threshold_from_alpha(double alpha, int n) {
    if (alpha <= 0.0 || n <= 0) throw std::invalid_argument("alpha and n must be positive");
    return static_cast<int>(std::ceil(alpha * n - 1e-12));
}

double high_weight_mass(const GridLayout& g, const Vec& state, int threshold, const std::vector<int>& sites) {
    const auto dist = pauli_distribution(g, state, sites);
    double mass = 0.0;
    for (std::size_t code = 0; code < dist.size(); ++code)
        if (PauliWord::from_code(code, sites.size()).weight() >= threshold) mass += dist[code];
    return mass;
}

namespace {

Mat kernel_basis(const Mat& h, double tol = kGroundCutoff) {
    Eigen::SelfAdjointEigenSolver<Mat> es(h);
    std::vector<Eigen::Index> idx;
    for (Eigen::Index i = 0; i < h.rows(); ++i)
        if (es.eigenvalues()(i) <= tol) idx.push_back(i);
    Mat k(h.rows(), Eigen::Index(idx.size()));
    for (std::size_t i = 0; i < idx.size(); ++i) k.col(Eigen::Index(i)) = es.eigenvectors().col(idx[i]);
    return k;
}

Mat single_gate_bulk_term(const Mat& u, double delta) {
    const GridLayout g{1, 2};
    const std::vector<double> d{delta, delta};
    return propagation_term(g, make_gate(u, {0}), 0, d).block;
}

}  // namespace

Mat ground_space_span(const Mat& u, double delta) {
    if (u.rows() != 2) throw std::invalid_argument("ground space formula is for single-qubit gates");
    Mat span = Mat::Zero(16, 4);
    for (int m = 0; m < 4; ++m) {
        Mat unit = Mat::Zero(2, 2);
        unit(m / 2, m % 2) = 1.0;
        for (Pauli pl : kPaulis)
            for (Pauli pr : kPaulis) {
                const double w = std::pow(delta, (pl != Pauli::I) + (pr != Pauli::I));
                const Complex t = (unit * pauli_matrix(pr) * u * pauli_matrix(pl)).trace();
                span.col(m) += w * t * kron(bell_state(pl), bell_state(pr));
            }
    }
    return span;
}

IndistinguishabilityReport local_indistinguishability(const Mat& u1, const Mat& u2, double delta) {
    const Mat k1 = kernel_basis(single_gate_bulk_term(u1, delta));
    const Mat k2 = kernel_basis(single_gate_bulk_term(u2, delta));
    IndistinguishabilityReport r;
    r.ground_dim1 = static_cast<int>(k1.cols());
    r.ground_dim2 = static_cast<int>(k2.cols());
    r.overlap = spectral_norm(Mat(k2.adjoint() * k1));
    r.bound = 1.0 - std::pow(delta, 6) / 2.0;
    for (const auto& [u, k] : {std::pair{u1, k1}, std::pair{u2, k2}}) {
        Eigen::HouseholderQR<Mat> qr(ground_space_span(u, delta));
        const Mat q = qr.householderQ() * Mat::Identity(16, 4);
        r.span_residual = std::max(r.span_residual, (q - k * (k.adjoint() * q)).norm());
        r.span_residual = std::max(r.span_residual, (k - q * (q.adjoint() * k)).norm());
    }
    return r;
}

namespace {

double phi0_overlap(const Vec& psi, const Qubits& qs, const Vec& target) {
    const Mat rho = reduced_density(psi, qs);
    return target.dot(rho * target).real();
}

}  // namespace

LemmaCheck last_column_check(const RotationUnitary& v, std::span<const double> deltas, const Vec& psi, int row) {
    const GridLayout& g = v.layout();
    const auto& last = v.circuit().layers.back();
    const Gate* gate = nullptr;
    for (const Gate& gt : last)
        if (gt.arity() == 1 && gt.wires[0] == row) gate = &gt;
    if (!gate || !gate->is_identity()) throw std::invalid_argument("last layer gate on this row is not an identity");
    const double d = deltas[std::size_t(g.D - 1)];
    LemmaCheck c{"last_column", "row " + std::to_string(row)};
    c.alpha = expectation(propagation_term(g, *gate, g.D - 1, deltas).local(), psi);
    const Vec rotated = v.apply(psi, Direction::adjoint);
    c.lhs = phi0_overlap(rotated, g.site_qubits(g.D - 1, row), phi0(d));
    c.rhs = 1.0 - 4.0 * c.alpha;
    c.holds = c.lhs >= c.rhs - 1e-12;
    return c;
}

LemmaCheck bulk_propagation_check(const RotationUnitary& v, std::span<const double> deltas, const Vec& psi, int layer,
                                  int gate_index) {
    const GridLayout& g = v.layout();
    if (layer + 1 >= g.D) throw std::invalid_argument("bulk check needs a following layer");
    const Gate& gate = v.circuit().layers.at(std::size_t(layer)).at(std::size_t(gate_index));
    const int k = gate.arity();
    const double dl = deltas[std::size_t(layer)], dr = deltas[std::size_t(layer + 1)];
    LemmaCheck c{"bulk_propagation", "layer " + std::to_string(layer) + " gate " + std::to_string(gate_index)};
    c.alpha = expectation(propagation_term(g, gate, layer, deltas).local(), psi);
    const Vec rotated = v.apply(psi, Direction::adjoint);
    Qubits left, right;
    Vec tl = Vec::Ones(1), tr = Vec::Ones(1);
    for (int w : gate.wires) {
        for (int q : g.site_qubits(layer, w)) left.push_back(q);
        for (int q : g.site_qubits(layer + 1, w)) right.push_back(q);
        tl = kron(tl, phi0(dl));
        tr = kron(tr, phi0(dr));
    }
    c.eta = 1.0 - phi0_overlap(rotated, right, tr);
    Qubits both = left;
    both.insert(both.end(), right.begin(), right.end());
    c.lhs = phi0_overlap(rotated, both, kron(tl, tr));
    const double d = std::min(dl, dr);
    c.rhs = 1.0 - c.eta / std::pow(d, 4 * k) - c.alpha / std::pow(d, 8 * k);
    c.holds = c.lhs >= c.rhs - 1e-12;
    return c;
}

LemmaCheck teleportation_check(const RotationUnitary& v, std::span<const double> deltas, const Vec& psi, int wire) {
    const GridLayout& g = v.layout();
    const double d = deltas[0];
    LemmaCheck c{"teleportation", "wire " + std::to_string(wire)};
    c.alpha = expectation(input_term(g, wire, d).local(), psi);
    const Vec rotated = v.apply(psi, Direction::adjoint);
    c.eta = 1.0 - phi0_overlap(rotated, g.site_qubits(0, wire), phi0(d));
    const Mat rho = reduced_density(rotated, {g.qubit(wire, 2 * g.D)});
    c.lhs = rho(0, 0).real();
    c.rhs = 1.0 - c.eta / (d * d) - c.alpha / (d * d);
    c.holds = c.lhs >= c.rhs - 1e-12;
    return c;
}

ProbeReport low_energy_probe(const LayeredCircuit& c, std::span<const double> deltas, const Vec& psi) {
    const HamiltonianSpec h = parent_hamiltonian(c, deltas);
    const RotationUnitary v(c);
    const GridLayout& g = v.layout();
    ProbeReport r;
    r.energy = energy(h, psi);
    const Vec rotated = v.apply(psi, Direction::adjoint);
    for (int s = 0; s < g.site_count(); ++s)
        r.site_overlaps.push_back(phi0_overlap(rotated, g.site_qubits(s), phi0(deltas[std::size_t(s / g.n)])));
    for (int w = 0; w < c.a; ++w) r.output_overlaps.push_back(reduced_density(rotated, {g.qubit(w, 2 * g.D)})(0, 0).real());
    for (const Gate& gate : c.layers.back())
        if (gate.arity() == 1 && gate.is_identity()) r.checks.push_back(last_column_check(v, deltas, psi, gate.wires[0]));
    for (int l = 0; l + 1 < g.D; ++l)
        for (int gi = 0; gi < static_cast<int>(c.layers[std::size_t(l)].size()); ++gi)
            r.checks.push_back(bulk_propagation_check(v, deltas, psi, l, gi));
    for (int w = 0; w < c.a; ++w) r.checks.push_back(teleportation_check(v, deltas, psi, w));
    return r;
}

std::string suite_name(LemmaSuite s) {
    switch (s) {
        case LemmaSuite::last_column: return "last_column";
        case LemmaSuite::bulk_propagation: return "bulk_propagation";
        case LemmaSuite::teleportation: return "teleportation";
        case LemmaSuite::detectability: return "detectability";
        case LemmaSuite::union_bound: return "union_bound";
        case LemmaSuite::jordan: return "jordan";
        case LemmaSuite::geometric: return "geometric";
        case LemmaSuite::term_square: return "term_square";
    }
    return "unknown";
}

std::vector<LemmaSuite> all_suites() {
    return {LemmaSuite::last_column, LemmaSuite::bulk_propagation, LemmaSuite::teleportation,
            LemmaSuite::detectability, LemmaSuite::union_bound,      LemmaSuite::jordan,
            LemmaSuite::geometric,     LemmaSuite::term_square};
}

LemmaSuite suite_from_name(const std::string& name) {
    for (LemmaSuite s : all_suites())
        if (suite_name(s) == name) return s;
    throw std::invalid_argument("unknown lemma suite '" + name + "'");
}

namespace {

// Sequential draws from one counter stream.
struct Draws {
    CounterRng rng;
    std::uint64_t next = 0;

    double uniform() { return rng.uniform(next++); }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    int integer(int lo, int hi) { return lo + static_cast<int>(uniform() * (hi - lo + 1)); }
    std::uint64_t seed() { return rng.bits(next++); }
};

Mat random_projector(Eigen::Index dim, Eigen::Index rank, std::uint64_t seed) {
    const Mat u = random_unitary(dim, seed);
    return u.leftCols(rank) * u.leftCols(rank).adjoint();
}

Mat draw_gate(Draws& d, int arity, nlohmann::json& desc) {
    if (arity == 2) {
        const int pick = d.integer(0, 2);
        desc.push_back(pick == 0 ? "CNOT" : pick == 1 ? "CZ" : "haar2");
        return pick == 0 ? named_unitary("CNOT") : pick == 1 ? named_unitary("CZ") : random_unitary(4, d.seed());
    }
    desc.push_back("haar1");
    return random_unitary(2, d.seed());
}

struct RandomGrid {
    LayeredCircuit circuit;
    std::vector<double> deltas;
    Vec psi;
};

// Two-layer circuit whose last layer is idle, and a perturbed ground state.
RandomGrid random_grid(Draws& d, nlohmann::json& params) {
    RandomGrid r;
    const int n = d.integer(1, 2);
    auto& c = r.circuit;
    c.n = n;
    c.a = d.integer(1, n);
    nlohmann::json gates = nlohmann::json::array();
    c.layers.resize(2);
    if (n == 2 && d.uniform() < 0.5) {
        c.layers[0].push_back(make_gate(draw_gate(d, 2, gates), {0, 1}));
    } else {
        for (int w = 0; w < n; ++w) c.layers[0].push_back(make_gate(draw_gate(d, 1, gates), {w}));
    }
    for (int w = 0; w < n; ++w) c.layers[1].push_back(identity_gate(w));
    const double delta = d.uniform(0.3, 1.0);
    r.deltas = uniform_deltas(2, delta);
    const Vec xi = random_state(Eigen::Index(1) << c.witness_qubits(), d.seed());
    const Vec ground = build_peps(c, xi, r.deltas).amplitudes;
    const double eps = std::pow(10.0, -d.uniform(1.0, 5.0));
    const Vec noise = random_state(ground.size(), d.seed());
    r.psi = (ground + eps * noise).normalized();
    params = {{"n", n}, {"a", c.a}, {"delta", delta}, {"gates", gates}, {"epsilon", eps}};
    return r;
}

void fill(SuiteInstance& s, double lhs, double rhs, bool upper) {
    s.lhs = lhs;
    s.rhs = rhs;
    s.slack = upper ? rhs - lhs : lhs - rhs;
    s.holds = s.slack >= -1e-12;
}

std::vector<Mat> random_family(Draws& d, nlohmann::json& params, Vec& psi) {
    const int nq = d.integer(3, 4);
    const int m = d.integer(3, 5);
    std::vector<Mat> out;
    nlohmann::json supports = nlohmann::json::array();
    for (int i = 0; i < m; ++i) {
        const int q0 = d.integer(0, nq - 1);
        int q1 = d.integer(0, nq - 2);
        if (q1 >= q0) ++q1;
        const int rank = d.integer(1, 2);
        out.push_back(embed(random_projector(4, rank, d.seed()), {q0, q1}, nq));
        supports.push_back({q0, q1, rank});
    }
    psi = random_state(Eigen::Index(1) << nq, d.seed());
    params = {{"qubits", nq}, {"projectors", supports}};
    return out;
}

}  // namespace

SuiteInstance run_lemma_instance(LemmaSuite suite, std::uint64_t seed, std::uint64_t index) {
    Draws d{CounterRng{seed, (static_cast<std::uint64_t>(suite) + 1) * 0x100000001b3ULL + index}};
    SuiteInstance s{suite, seed, index, "", 0, 0, 0, false};
    nlohmann::json params;
    switch (suite) {
        case LemmaSuite::last_column: {
            auto g = random_grid(d, params);
            const RotationUnitary v(g.circuit);
            const int row = d.integer(0, g.circuit.n - 1);
            params["row"] = row;
            const auto c = last_column_check(v, g.deltas, g.psi, row);
            fill(s, c.lhs, c.rhs, false);
            break;
        }
        case LemmaSuite::bulk_propagation: {
            auto g = random_grid(d, params);
            const RotationUnitary v(g.circuit);
            const int gi = d.integer(0, static_cast<int>(g.circuit.layers[0].size()) - 1);
            params["gate_index"] = gi;
            const auto c = bulk_propagation_check(v, g.deltas, g.psi, 0, gi);
            fill(s, c.lhs, c.rhs, false);
            break;
        }
        case LemmaSuite::teleportation: {
            auto g = random_grid(d, params);
            const RotationUnitary v(g.circuit);
            const int wire = d.integer(0, g.circuit.a - 1);
            params["wire"] = wire;
            const auto c = teleportation_check(v, g.deltas, g.psi, wire);
            fill(s, c.lhs, c.rhs, false);
            break;
        }
        case LemmaSuite::detectability: {
            Vec psi;
            const auto family = random_family(d, params, psi);
            const auto c = detectability_check(family, psi);
            fill(s, c.lhs, c.rhs, true);
            break;
        }
        case LemmaSuite::union_bound: {
            Vec psi;
            const auto family = random_family(d, params, psi);
            const auto c = union_bound_check(family, psi);
            fill(s, c.lhs, c.rhs, false);
            break;
        }
        case LemmaSuite::jordan: {
            const int dim = 2 * d.integer(2, 4);
            const int r1 = d.integer(1, dim - 1), r2 = d.integer(1, dim - 1);
            Mat p1 = random_projector(dim, r1, d.seed());
            Mat p2 = random_projector(dim, r2, d.seed());
            const bool shared = d.uniform() < 0.3;
            if (shared) {
                // Force a common vector so the angle-zero case is exercised.
                const Mat u = random_unitary(dim, d.seed());
                p1 = u.leftCols(r1) * u.leftCols(r1).adjoint();
                Mat cols(dim, r2);
                cols.col(0) = u.col(0);
                if (r2 > 1) cols.rightCols(r2 - 1) = random_unitary(dim, d.seed()).leftCols(r2 - 1);
                Eigen::HouseholderQR<Mat> qr(cols);
                const Mat q = qr.householderQ() * Mat::Identity(dim, r2);
                p2 = q * q.adjoint();
            }
            params = {{"dim", dim}, {"rank1", r1}, {"rank2", r2}, {"shared", shared}};
            const auto j = jordan_angles(p1, p2);
            fill(s, std::max(j.invariance_residual, j.reconstruction_residual), 1e-10, true);
            break;
        }
        case LemmaSuite::geometric: {
            const int dim = d.integer(4, 8);
            auto random_psd = [&](int rank) {
                const Mat u = random_unitary(dim, d.seed());
                Mat m = Mat::Zero(dim, dim);
                for (int i = 0; i < rank; ++i) m += d.uniform(0.2, 2.0) * u.col(i) * u.col(i).adjoint();
                return m;
            };
            const int ra = d.integer(1, dim - 1), rb = d.integer(1, dim - 1);
            const Mat a = random_psd(ra), b = random_psd(rb);
            params = {{"dim", dim}, {"rank_a", ra}, {"rank_b", rb}};
            const auto gb = geometric_bound(a, b);
            fill(s, gb.min_eigenvalue, gb.bound, false);
            break;
        }
        case LemmaSuite::term_square: {
            const int k = d.integer(1, 2);
            nlohmann::json gates = nlohmann::json::array();
            const Mat u = draw_gate(d, k, gates);
            const double delta = d.uniform(0.1, 1.0);
            const GridLayout g{k, 2};
            Qubits wires;
            for (int i = 0; i < k; ++i) wires.push_back(i);
            const std::vector<double> deltas{delta, delta};
            const Mat h = propagation_term(g, make_gate(u, wires), 0, deltas).block;
            Eigen::SelfAdjointEigenSolver<Mat> es(h, Eigen::EigenvaluesOnly);
            double smallest = std::numeric_limits<double>::infinity();
            for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
                if (es.eigenvalues()(i) > kGroundCutoff) smallest = std::min(smallest, es.eigenvalues()(i));
            params = {{"arity", k}, {"delta", delta}, {"gates", gates}};
            fill(s, smallest, std::pow(delta, 4 * k), false);
            break;
        }
    }
    s.params = params.dump();
    return s;
}

std::vector<SuiteInstance> run_lemma_suite(LemmaSuite suite, std::uint64_t seed, std::size_t count) {
    std::vector<SuiteInstance> out(count);
    parallel_for(count, [&](std::size_t i) { out[i] = run_lemma_instance(suite, seed, i); });
    return out;
}

}  // namespace clockless
