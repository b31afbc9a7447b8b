#include "clockless/verify.hpp"

#include "clockless/rotated.hpp"

#include <algorithm>
#include <cmath>

namespace clockless {

namespace {

struct Recorder {
    std::string circuit;
    double delta;
    const VerifyOptions& opts;
    std::vector<CheckResult> out;

    void add(const std::string& check, const std::string& location, double value, double default_tol,
             bool overridable = true) {
        CheckResult r{circuit, delta, check, location, value, default_tol, false, ""};
        if (overridable && opts.tolerance) r.tolerance = *opts.tolerance;
        r.pass = std::isfinite(value) && value <= r.tolerance;
        if (!r.pass) r.category = std::isfinite(value) && value <= kCorrectnessLimit ? "tolerance" : "correctness";
        out.push_back(std::move(r));
    }
};

std::string gate_location(int layer, std::size_t index) {
    return "layer " + std::to_string(layer) + " gate " + std::to_string(index);
}

Qubits site_block(const GridLayout& g, int layer, const Qubits& wires) {
    Qubits q;
    for (int w : wires)
        for (int x : g.site_qubits(layer, w)) q.push_back(x);
    return q;
}

double closed_form_error(const RotatedTerm& r, const Mat& expect) {
    return std::max(spectral_norm(Mat(r.local - expect)), r.outside_residual);
}

bool all_identity(const LayeredCircuit& c) {
    for (const auto& layer : c.layers)
        for (const Gate& g : layer)
            if (!g.is_identity()) return false;
    return true;
}

void rotated_checks(Recorder& rec, const LayeredCircuit& c, std::span<const double> deltas) {
    const RotationUnitary v(c);
    const GridLayout& g = v.layout();
    const int D = c.depth();
    for (int l = 0; l < D; ++l)
        for (std::size_t i = 0; i < c.layers[std::size_t(l)].size(); ++i) {
            const Gate& gate = c.layers[std::size_t(l)][i];
            const int k = gate.arity();
            const auto term = propagation_term(g, gate, l, deltas);
            const Qubits left = site_block(g, l, gate.wires);
            if (l == D - 1) {
                const auto r = rotate_term(v, term, left);
                rec.add("last_layer", gate_location(l, i),
                        closed_form_error(r, last_layer_closed_form(k, deltas[std::size_t(l)])), 1e-10);
                continue;
            }
            const double dl = deltas[std::size_t(l)], dr = deltas[std::size_t(l + 1)];
            if (k <= 2 && gate.is_clifford()) {
                Qubits both = left;
                const Qubits right = site_block(g, l + 1, gate.wires);
                both.insert(both.end(), right.begin(), right.end());
                const auto r = rotate_term(v, term, both);
                rec.add("bulk_clifford", gate_location(l, i),
                        closed_form_error(r, clifford_closed_form(gate.unitary, dl, dr)), 1e-10);
            }
            std::vector<int> right_sites;
            for (int w : gate.wires) right_sites.push_back(g.site_index(l + 1, w));
            const auto r = project_rotated(v, term, right_sites, deltas, left);
            rec.add("bulk_projected", gate_location(l, i),
                    closed_form_error(r, bulk_projected_closed_form(k, dl, dr)), 1e-10);
        }
    for (int w = 0; w < c.a; ++w) {
        const auto r = project_rotated(v, input_term(g, w, deltas[0]), {g.site_index(0, w)}, deltas,
                                       g.output_qubits({w}));
        Mat expect = Mat::Zero(2, 2);
        expect(1, 1) = teleportation_coefficient(deltas[0]);
        rec.add("teleportation", "wire " + std::to_string(w), closed_form_error(r, expect), 1e-10);
    }
}

}  // namespace

std::vector<CheckResult> verify_circuit(const std::string& name, const LayeredCircuit& c,
                                        std::span<const double> deltas, const VerifyOptions& opts) {
    require_valid(c);
    Recorder rec{name, deltas.empty() ? 0.0 : deltas[0], opts, {}};
    const Vec xi = zero_witness(c);
    const PepsState peps = build_peps(c, xi, deltas);
    const GridLayout& g = peps.layout;

    HamiltonianSpec h = parent_hamiltonian(c, deltas);
    {
        HamiltonianSpec checked = h;
        if (opts.injected_delta) {
            const auto [index, wrong] = *opts.injected_delta;
            if (index < 0 || index >= static_cast<int>(checked.terms.size()))
                throw std::invalid_argument("injected term index out of range");
            auto& t = checked.terms[std::size_t(index)];
            const auto wrong_deltas = uniform_deltas(c.depth(), wrong);
            if (t.kind == TermKind::propagation) {
                const auto& layer = c.layers[std::size_t(t.layer)];
                const auto it = std::find_if(layer.begin(), layer.end(), [&](const Gate& x) { return x.wires == t.wires; });
                t = propagation_term(g, *it, t.layer, wrong_deltas);
            } else if (t.kind == TermKind::input) {
                t = input_term(g, t.wires.front(), wrong);
            } else {
                throw std::invalid_argument("delta injection needs an input or propagation term");
            }
        }
        const auto e = energy(checked, peps.amplitudes, 0.0);
        const auto worst = std::max_element(e.per_term.begin(), e.per_term.end());
        rec.add("frustration_free",
                worst == e.per_term.end() ? "" : "term " + std::to_string(worst - e.per_term.begin()),
                worst == e.per_term.end() ? 0.0 : std::abs(*worst), 1e-10);
    }

    {
        const SparseOperator op = assemble(h);
        const int expected = 1 << c.witness_qubits();
        SpectralReport r;
        const bool dense = opts.method ? *opts.method == SolverMethod::dense : op.dim() <= kDenseLimit;
        if (dense) {
            if (op.dim() > kDenseLimit) throw std::invalid_argument("dense solver limited to dimension 2^12");
            r = dense_spectrum(op, true);
        } else {
            LanczosOptions lo = opts.lanczos;
            lo.k = std::min<int>(std::max(lo.k, expected + 1), static_cast<int>(op.dim()));
            r = low_spectrum(op, lo);
        }
        rec.add("ground_energy", "", std::abs(r.eigenvalues.front()), 1e-10);
        rec.add("ground_degeneracy", "expected " + std::to_string(expected),
                std::abs(double(r.ground_dim - expected)), 0.5, false);
        const Mat basis = r.eigenvectors.leftCols(std::min<Eigen::Index>(r.ground_dim, r.eigenvectors.cols()));
        const double captured = (basis.adjoint() * peps.amplitudes).squaredNorm();
        rec.add("ground_fidelity", "", std::max(0.0, 1.0 - captured), 1e-12);
    }

    {
        const Vec re = reassemble(expansion(c, xi, deltas));
        rec.add("expansion", "", std::max(0.0, 1.0 - std::norm(re.dot(peps.amplitudes))), 1e-12);
    }

    if (all_identity(c)) {
        const Mat rho = reduced_density(peps, g.output_register());
        rec.add("depolarizing_marginal", "", trace_distance(rho, depolarized_register(input_state(c, xi), deltas)),
                1e-10);
    }

    if (g.total_qubits() <= opts.rotation_qubit_limit) rotated_checks(rec, c, deltas);
    return std::move(rec.out);
}

}  // namespace clockless
