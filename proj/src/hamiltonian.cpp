#include "clockless/hamiltonian.hpp"

#include <cmath>
#include <stdexcept>

namespace clockless {

std::string term_kind_name(TermKind k) {
    switch (k) {
        case TermKind::input: return "input";
        case TermKind::propagation: return "propagation";
        case TermKind::stabilizer: return "stabilizer";
        case TermKind::output: return "output";
    }
    return "unknown";
}

namespace {

Qubits range_positions(int first, int count, int step = 1) {
    Qubits q;
    for (int i = 0; i < count; ++i) q.push_back(first + i * step);
    return q;
}

// Positions count along the support, so position p of an m-qubit block is bit m - 1 - p.
Qubits block_bits(const Qubits& positions, int m) {
    Qubits b;
    for (int p : positions) b.push_back(m - 1 - p);
    return b;
}

// Product of Lambda(delta) over position pairs of an m-qubit block.
Mat lambda_dressing(const std::vector<std::pair<Qubits, double>>& sites, int m) {
    const auto dim = Eigen::Index(1) << m;
    Mat l = Mat::Identity(dim, dim);
    for (const auto& [pos, delta] : sites) {
        const Mat site = lambda_map(delta);
        const Qubits bits = block_bits(pos, m);
        for (Eigen::Index j = 0; j < dim; ++j) l.col(j) = apply_on(site, bits, Vec(l.col(j)));
    }
    return l;
}

}  // namespace

Qubits propagation_support(const GridLayout& g, int layer, const Qubits& wires) {
    if (layer < 0 || layer >= g.D) throw std::invalid_argument("layer outside circuit depth");
    Qubits s;
    for (int w : wires) {
        const Qubits site = g.site_qubits(layer, w);
        s.insert(s.end(), site.begin(), site.end());
    }
    if (layer + 1 < g.D) {
        for (int w : wires) {
            const Qubits site = g.site_qubits(layer + 1, w);
            s.insert(s.end(), site.begin(), site.end());
        }
    } else {
        for (int w : wires) s.push_back(g.qubit(w, 2 * g.D));
    }
    return s;
}

HamiltonianTerm propagation_term(const GridLayout& g, const Gate& gate, int layer, std::span<const double> deltas) {
    check_deltas(deltas, g.D, false);
    const int k = gate.arity();
    const bool last = layer + 1 == g.D;
    HamiltonianTerm t{TermKind::propagation, propagation_support(g, layer, gate.wires), {}, layer, gate.wires};
    const int m = static_cast<int>(t.support.size());

    Qubits choi_pos;
    for (int i = 0; i < k; ++i) choi_pos.push_back(2 * i + 1);
    for (int i = 0; i < k; ++i) choi_pos.push_back(last ? 2 * k + i : 2 * k + 2 * i);

    std::vector<std::pair<Qubits, double>> sites;
    for (int i = 0; i < k; ++i) sites.push_back({{2 * i, 2 * i + 1}, deltas[std::size_t(layer)]});
    if (!last)
        for (int i = 0; i < k; ++i) sites.push_back({{2 * k + 2 * i, 2 * k + 2 * i + 1}, deltas[std::size_t(layer + 1)]});

    const Vec choi = choi_state(gate.unitary);
    const auto dim = Eigen::Index(1) << m;
    const Mat x = Mat::Identity(dim, dim) - embed(Mat(choi * choi.adjoint()), block_bits(choi_pos, m), m);
    const Mat l = lambda_dressing(sites, m);
    t.block = l * x * l;
    return t;
}

HamiltonianTerm input_term(const GridLayout& g, const Qubits& wires, const Mat& projector, double delta) {
    if (!is_projector(projector)) throw std::invalid_argument("input check is not a projector");
    if (projector.rows() != (Eigen::Index(1) << wires.size()))
        throw std::invalid_argument("input projector does not match wire count");
    const int k = static_cast<int>(wires.size());
    HamiltonianTerm t{TermKind::input, {}, {}, -1, wires};
    std::vector<std::pair<Qubits, double>> sites;
    for (int i = 0; i < k; ++i) {
        const Qubits site = g.site_qubits(0, wires[std::size_t(i)]);
        t.support.insert(t.support.end(), site.begin(), site.end());
        sites.push_back({{2 * i, 2 * i + 1}, delta});
    }
    const Mat l = lambda_dressing(sites, 2 * k);
    t.block = l * embed(projector, block_bits(range_positions(0, k, 2), 2 * k), 2 * k) * l;
    return t;
}

HamiltonianTerm input_term(const GridLayout& g, int wire, double delta) {
    Mat one = Mat::Zero(2, 2);
    one(1, 1) = 1.0;
    return input_term(g, {wire}, one, delta);
}

Mat pauli_check_matrix(const PauliCheck& check) {
    if (check.paulis.size() != check.wires.size() || check.paulis.empty())
        throw std::invalid_argument("Pauli check '" + check.paulis + "' does not match its wires");
    const Complex i(0.0, 1.0);
    Mat s = Mat::Identity(1, 1);
    for (char c : check.paulis) {
        Mat p = Mat::Zero(2, 2);
        switch (c) {
            case 'I': p << 1, 0, 0, 1; break;
            case 'X': p << 0, 1, 1, 0; break;
            case 'Y': p << 0, -i, i, 0; break;
            case 'Z': p << 1, 0, 0, -1; break;
            default: throw std::invalid_argument(std::string("non-Pauli letter '") + c + "' in check");
        }
        s = kron(s, p);
    }
    return s;
}

std::vector<HamiltonianTerm> stabilizer_terms(const GridLayout& g, std::span<const PauliCheck> checks, double delta) {
    std::vector<HamiltonianTerm> out;
    for (const auto& c : checks) {
        const Mat s = pauli_check_matrix(c);
        HamiltonianTerm t = input_term(g, c.wires, 0.5 * (Mat::Identity(s.rows(), s.cols()) - s), delta);
        t.kind = TermKind::stabilizer;
        out.push_back(std::move(t));
    }
    return out;
}

HamiltonianTerm output_term(const GridLayout& g, const Qubits& wires, const Mat& projector) {
    if (!is_projector(projector)) throw std::invalid_argument("output check is not a projector");
    if (projector.rows() != (Eigen::Index(1) << wires.size()))
        throw std::invalid_argument("output projector does not match wire count");
    return {TermKind::output, g.output_qubits(wires), projector, g.D, wires};
}

HamiltonianTerm output_term(const GridLayout& g, int wire) {
    Mat zero = Mat::Zero(2, 2);
    zero(0, 0) = 1.0;
    return output_term(g, {wire}, zero);
}

HamiltonianSpec parent_hamiltonian(const LayeredCircuit& c, std::span<const double> deltas, const ParentOptions& opts) {
    require_valid(c);
    const GridLayout g = layout_of(c);
    check_deltas(deltas, g.D, false);
    HamiltonianSpec h{g, {}, opts.out_scale};
    if (opts.input_terms)
        for (int w = 0; w < c.a; ++w) h.terms.push_back(input_term(g, w, deltas[0]));
    for (int l = 0; l < g.D; ++l)
        for (const Gate& gate : c.layers[std::size_t(l)]) h.terms.push_back(propagation_term(g, gate, l, deltas));
    for (auto& t : stabilizer_terms(g, opts.stabilizers, deltas[0])) h.terms.push_back(std::move(t));
    for (int w : opts.output_wires) h.terms.push_back(output_term(g, w));
    return h;
}

SparseOperator::SparseOperator(int nqubits, std::vector<LocalOperator> terms)
    : nqubits_(nqubits), terms_(std::move(terms)) {
    for (const auto& t : terms_) check_support(t.support, nqubits_, t.block.rows());
}

Vec SparseOperator::apply(const Vec& v) const {
    if (v.size() != dim()) throw std::invalid_argument("vector size does not match operator dimension");
    Vec out = Vec::Zero(dim());
    for (const auto& t : terms_) out += apply_on(t.block, t.support, v);
    return out;
}

Eigen::SparseMatrix<Complex> SparseOperator::to_sparse() const {
    std::vector<Eigen::Triplet<Complex>> trip;
    for (const auto& t : terms_) {
        const auto offs = local_offsets(t.support);
        for_each_base(static_cast<std::uint64_t>(dim()), support_mask(t.support), [&](std::uint64_t base) {
            for (std::size_t i = 0; i < offs.size(); ++i)
                for (std::size_t j = 0; j < offs.size(); ++j) {
                    const Complex v = t.block(Eigen::Index(i), Eigen::Index(j));
                    if (v != Complex(0.0)) trip.emplace_back(Eigen::Index(base + offs[i]), Eigen::Index(base + offs[j]), v);
                }
        });
    }
    Eigen::SparseMatrix<Complex> m(dim(), dim());
    m.setFromTriplets(trip.begin(), trip.end());
    m.prune(Complex(0.0), 0.0);
    return m;
}

Mat SparseOperator::to_dense() const {
    Mat m = Mat::Zero(dim(), dim());
    for (const auto& t : terms_) m += embed(t.block, t.support, nqubits_);
    return m;
}

SparseOperator assemble(const HamiltonianSpec& h) {
    std::vector<LocalOperator> ops;
    for (const auto& t : h.terms)
        ops.push_back({t.kind == TermKind::output ? Mat(h.out_scale * t.block) : t.block, t.support});
    return SparseOperator(h.layout.total_qubits(), std::move(ops));
}

double expectation(const LocalOperator& op, const Vec& state) {
    return (reduced_density(state, op.support) * op.block).trace().real();
}

EnergyReport energy(const HamiltonianSpec& h, const Vec& state, double tol) {
    if (state.size() != (Eigen::Index(1) << h.layout.total_qubits()))
        throw std::invalid_argument("state dimension does not match the grid");
    if (std::abs(state.norm() - 1.0) > 1e-10) throw std::invalid_argument("state is not normalized");
    EnergyReport r;
    for (std::size_t i = 0; i < h.terms.size(); ++i) {
        double e = expectation(h.terms[i].local(), state);
        if (h.terms[i].kind == TermKind::output) e *= h.out_scale;
        r.per_term.push_back(e);
        r.total += e;
        if (e > tol) r.violations.push_back(static_cast<int>(i));
    }
    r.density = h.terms.empty() ? 0.0 : r.total / static_cast<double>(h.terms.size());
    return r;
}

}  // namespace clockless
