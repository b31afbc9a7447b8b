#include "clockless/circuit.hpp"

#include "clockless/pauli.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace clockless {

namespace {

Mat controlled(const Mat& u) {
    const auto d = u.rows();
    Mat c = Mat::Identity(2 * d, 2 * d);
    c.bottomRightCorner(d, d) = u;
    return c;
}

std::string wires_text(const Qubits& w) {
    std::string s = "[";
    for (std::size_t i = 0; i < w.size(); ++i) s += (i ? "," : "") + std::to_string(w[i]);
    return s + "]";
}

}  // namespace

Mat named_unitary(std::string_view name) {
    const Complex i(0.0, 1.0);
    Mat m;
    if (name == "I") {
        m = Mat::Identity(2, 2);
    } else if (name == "X") {
        m = pauli_matrix(Pauli::X);
    } else if (name == "Z") {
        m = pauli_matrix(Pauli::Z);
    } else if (name == "H") {
        m = Mat(2, 2);
        m << 1, 1, 1, -1;
        m /= std::sqrt(2.0);
    } else if (name == "S") {
        m = Mat::Identity(2, 2);
        m(1, 1) = i;
    } else if (name == "T") {
        m = Mat::Identity(2, 2);
        m(1, 1) = std::exp(i * (std::numbers::pi / 4));
    } else if (name == "CNOT") {
        m = controlled(pauli_matrix(Pauli::X));
    } else if (name == "CZ") {
        m = controlled(pauli_matrix(Pauli::Z));
    } else if (name == "SWAP") {
        m = Mat::Zero(4, 4);
        m(0, 0) = m(1, 2) = m(2, 1) = m(3, 3) = 1;
    } else if (name == "CCZ") {
        m = controlled(controlled(pauli_matrix(Pauli::Z)));
    } else if (name == "CSWAP") {
        m = controlled(named_unitary("SWAP"));
    } else {
        throw std::invalid_argument("unknown gate '" + std::string(name) + "'");
    }
    return m;
}

Gate make_gate(std::string_view name, Qubits wires) {
    Gate g{std::move(wires), named_unitary(name), std::string(name), std::nullopt};
    if (g.unitary.rows() != (Eigen::Index(1) << g.wires.size()))
        throw std::invalid_argument("gate " + g.name + " expects " + std::to_string(qubit_count(g.unitary.rows())) +
                                    " wires, got " + std::to_string(g.wires.size()));
    return g;
}

Gate make_gate(Mat unitary, Qubits wires) {
    if (unitary.rows() != unitary.cols() || unitary.rows() != (Eigen::Index(1) << wires.size()))
        throw std::invalid_argument("unitary of size " + std::to_string(unitary.rows()) + "x" +
                                    std::to_string(unitary.cols()) + " does not fit " +
                                    std::to_string(wires.size()) + " wires");
    if (!is_unitary(unitary)) throw std::invalid_argument("matrix is not unitary");
    return Gate{std::move(wires), std::move(unitary), "", std::nullopt};
}

Gate identity_gate(int wire) { return make_gate("I", {wire}); }

bool Gate::is_identity(double tol) const {
    return (unitary - Mat::Identity(unitary.rows(), unitary.cols())).cwiseAbs().maxCoeff() <= tol;
}

bool Gate::is_clifford() const { return clifford.value_or(clockless::is_clifford(unitary)); }

bool is_unitary(const Mat& u, double tol) {
    if (u.rows() != u.cols()) return false;
    return (u.adjoint() * u - Mat::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff() <= tol;
}

bool is_clifford(const Mat& u, double tol) {
    const int k = qubit_count(u.rows());
    const std::uint64_t words = std::uint64_t(1) << (2 * k);
    std::vector<Mat> basis;
    basis.reserve(words);
    for (std::uint64_t c = 0; c < words; ++c) basis.push_back(PauliWord::from_code(c, std::size_t(k)).matrix());
    const double dim = static_cast<double>(u.rows());
    // Images of the X_j and Z_j generators must be Pauli words up to phase.
    for (int j = 0; j < k; ++j) {
        for (Pauli g : {Pauli::X, Pauli::Z}) {
            PauliWord w{static_cast<std::size_t>(k)};
            w[std::size_t(j)] = g;
            const Mat img = u * w.matrix() * u.adjoint();
            int hits = 0;
            for (const Mat& q : basis) {
                const double mag = std::abs((q.adjoint() * img).trace()) / dim;
                if (std::abs(mag - 1.0) <= tol) ++hits;
                else if (mag > tol) return false;
            }
            if (hits != 1) return false;
        }
    }
    return true;
}

std::vector<CircuitViolation> validate(const LayeredCircuit& c) {
    std::vector<CircuitViolation> out;
    if (c.n <= 0) out.push_back({-1, {}, "range", "circuit needs at least one wire"});
    if (c.a < 0 || c.a > c.n) out.push_back({-1, {}, "range", "ancilla count outside [0, n]"});
    if (c.layers.empty()) out.push_back({-1, {}, "shape", "circuit has no layers"});
    for (int l = 0; l < c.depth(); ++l) {
        std::vector<int> owner(std::size_t(std::max(c.n, 0)), -1);
        for (std::size_t gi = 0; gi < c.layers[std::size_t(l)].size(); ++gi) {
            const Gate& g = c.layers[std::size_t(l)][gi];
            if (g.wires.empty()) {
                out.push_back({l, g.wires, "shape", "gate acts on no wires"});
                continue;
            }
            if (g.unitary.rows() != g.unitary.cols() || g.unitary.rows() != (Eigen::Index(1) << g.wires.size())) {
                out.push_back({l, g.wires, "shape", "matrix size does not match wires " + wires_text(g.wires)});
                continue;
            }
            if (!is_unitary(g.unitary))
                out.push_back({l, g.wires, "unitary", "gate on " + wires_text(g.wires) + " is not unitary"});
            for (int w : g.wires) {
                if (w < 0 || w >= c.n) {
                    out.push_back({l, g.wires, "range", "wire " + std::to_string(w) + " outside [0, n)"});
                    continue;
                }
                if (owner[std::size_t(w)] >= 0) {
                    out.push_back({l, g.wires, "overlap",
                                   "layer " + std::to_string(l) + " uses wire " + std::to_string(w) + " twice"});
                    continue;
                }
                owner[std::size_t(w)] = static_cast<int>(gi);
            }
        }
        for (int w = 0; w < c.n; ++w)
            if (owner[std::size_t(w)] < 0)
                out.push_back({l, {w}, "coverage", "layer " + std::to_string(l) + " leaves wire " +
                                                       std::to_string(w) + " without a gate"});
    }
    return out;
}

void require_valid(const LayeredCircuit& c) {
    const auto v = validate(c);
    if (!v.empty()) throw std::invalid_argument("invalid circuit: " + v.front().message);
}

LayeredCircuit fill_identities(LayeredCircuit c) {
    for (auto& layer : c.layers) {
        std::vector<bool> used(std::size_t(c.n), false);
        for (const Gate& g : layer)
            for (int w : g.wires)
                if (w >= 0 && w < c.n) used[std::size_t(w)] = true;
        for (int w = 0; w < c.n; ++w)
            if (!used[std::size_t(w)]) layer.push_back(identity_gate(w));
    }
    return c;
}

Vec apply_gate(const Gate& g, const Vec& state) { return apply_on(g.unitary, g.wires, state); }

Vec apply_layer(const LayeredCircuit& c, int layer, const Vec& state) {
    Vec s = state;
    for (const Gate& g : c.layers.at(std::size_t(layer)))
        if (!g.is_identity()) s = apply_gate(g, s);
    return s;
}

Vec simulate(const LayeredCircuit& c, const Vec& state) {
    Vec s = state;
    for (int l = 0; l < c.depth(); ++l) s = apply_layer(c, l, s);
    return s;
}

Mat layer_unitary(const LayeredCircuit& c, int layer) {
    const auto dim = Eigen::Index(1) << c.n;
    Mat u(dim, dim);
    for (Eigen::Index j = 0; j < dim; ++j) u.col(j) = apply_layer(c, layer, Vec::Unit(dim, j));
    return u;
}

Mat circuit_unitary(const LayeredCircuit& c) {
    const auto dim = Eigen::Index(1) << c.n;
    Mat u = Mat::Identity(dim, dim);
    for (int l = 0; l < c.depth(); ++l) u = layer_unitary(c, l) * u;
    return u;
}

Vec input_state(const LayeredCircuit& c, const Vec& xi) {
    if (xi.size() != (Eigen::Index(1) << c.witness_qubits()))
        throw std::invalid_argument("witness has dimension " + std::to_string(xi.size()) + ", expected 2^" +
                                    std::to_string(c.witness_qubits()));
    Vec s = Vec::Zero(Eigen::Index(1) << c.n);
    for (Eigen::Index j = 0; j < xi.size(); ++j) s(j << c.a) = xi(j);
    return s;
}

Vec zero_witness(const LayeredCircuit& c) { return Vec::Unit(Eigen::Index(1) << c.witness_qubits(), 0); }

std::vector<Gate> gate_sequence(const LayeredCircuit& c) {
    std::vector<Gate> seq;
    for (const auto& layer : c.layers)
        for (const Gate& g : layer)
            if (!g.is_identity()) seq.push_back(g);
    return seq;
}

std::vector<int> layer_locality(const LayeredCircuit& c) {
    std::vector<int> k;
    for (const auto& layer : c.layers) {
        int m = 1;
        for (const Gate& g : layer) m = std::max(m, g.arity());
        k.push_back(m);
    }
    return k;
}

DegreeReduced degree_reduce(const LayeredCircuit& c) {
    require_valid(c);
    const auto gates = gate_sequence(c);
    DegreeReduced r;
    r.blocks = std::max<int>(1, static_cast<int>(gates.size()));
    r.block_size = c.n;
    const int total = c.n * r.blocks;
    const int witness = c.n - c.a;
    r.wire_of.assign(std::size_t(r.blocks), std::vector<int>(std::size_t(c.n)));
    for (int b = 0; b < r.blocks; ++b)
        for (int w = 0; w < c.n; ++w)
            r.wire_of[std::size_t(b)][std::size_t(w)] =
                b == 0 ? (w < c.a ? w : total - witness + (w - c.a)) : c.a + (b - 1) * c.n + w;

    r.circuit.n = total;
    r.circuit.a = total - witness;
    for (std::size_t t = 0; t < gates.size(); ++t) {
        Gate g = gates[t];
        for (int& w : g.wires) w = r.wire_of[t][std::size_t(w)];
        r.circuit.layers.push_back({g});
        if (t + 1 < gates.size()) {
            std::vector<Gate> swaps;
            for (int w = 0; w < c.n; ++w)
                swaps.push_back(make_gate("SWAP", {r.wire_of[t][std::size_t(w)], r.wire_of[t + 1][std::size_t(w)]}));
            r.circuit.layers.push_back(std::move(swaps));
        }
    }
    if (gates.empty()) r.circuit.layers.emplace_back();
    r.circuit = fill_identities(std::move(r.circuit));
    return r;
}

int repeated_wire(const LayeredCircuit& single, int copies, int copy, int wire) {
    if (copy < 0 || copy >= copies || wire < 0 || wire >= single.n)
        throw std::invalid_argument("copy or wire out of range");
    return wire < single.a ? copy * single.a + wire
                           : copies * single.a + copy * single.witness_qubits() + (wire - single.a);
}

LayeredCircuit parallel_repeat(const LayeredCircuit& c, int k) {
    if (k < 1) throw std::invalid_argument("repetition count must be positive");
    require_valid(c);
    LayeredCircuit r;
    r.n = c.n * k;
    r.a = c.a * k;
    r.layers.resize(c.layers.size());
    for (std::size_t l = 0; l < c.layers.size(); ++l)
        for (int copy = 0; copy < k; ++copy)
            for (Gate g : c.layers[l]) {
                for (int& w : g.wires) w = repeated_wire(c, k, copy, w);
                r.layers[l].push_back(std::move(g));
            }
    return r;
}

}  // namespace clockless
