#pragma once

#include "clockless/qubit_ops.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace clockless {

struct Gate {
    Qubits wires;  // wires[0] is the most significant bit of `unitary`
    Mat unitary;
    std::string name;  // empty for explicit matrices
    std::optional<bool> clifford;

    int arity() const { return static_cast<int>(wires.size()); }
    bool is_identity(double tol = 1e-14) const;
    bool is_clifford() const;
};

// I, X, Z, H, S, T, CNOT, CZ, SWAP, CCZ, CSWAP
Mat named_unitary(std::string_view name);
Gate make_gate(std::string_view name, Qubits wires);
Gate make_gate(Mat unitary, Qubits wires);
Gate identity_gate(int wire);

bool is_unitary(const Mat& u, double tol = 1e-10);
// U P U^dagger is proportional to a Pauli word for every Pauli word P.
bool is_clifford(const Mat& u, double tol = 1e-10);

// The first `a` wires start in |0>; the remaining n - a carry the witness.
// Register vectors store wire w in bit w.
struct LayeredCircuit {
    int n = 0;
    int a = 0;
    std::vector<std::vector<Gate>> layers;

    int depth() const { return static_cast<int>(layers.size()); }
    int witness_qubits() const { return n - a; }
};

struct CircuitViolation {
    int layer;
    Qubits wires;
    std::string kind;  // overlap, coverage, range, unitary, shape
    std::string message;
};

std::vector<CircuitViolation> validate(const LayeredCircuit& c);
// Throws std::invalid_argument carrying the first violation.
void require_valid(const LayeredCircuit& c);
// Adds single-qubit identities on idle wires so every layer covers all wires.
LayeredCircuit fill_identities(LayeredCircuit c);

Vec apply_gate(const Gate& g, const Vec& state);
Vec apply_layer(const LayeredCircuit& c, int layer, const Vec& state);
Vec simulate(const LayeredCircuit& c, const Vec& state);
Mat layer_unitary(const LayeredCircuit& c, int layer);
Mat circuit_unitary(const LayeredCircuit& c);
// |0^a> (x) xi, with xi over the witness wires a..n-1 (wire a in bit 0).
Vec input_state(const LayeredCircuit& c, const Vec& xi);
Vec zero_witness(const LayeredCircuit& c);
// Nontrivial gates in layer order.
std::vector<Gate> gate_sequence(const LayeredCircuit& c);
// max over layers of the largest gate arity in that layer.
std::vector<int> layer_locality(const LayeredCircuit& c);

// One gate per block, with SWAP layers moving the register to the next block.
// Every wire of the result is touched by at most three nontrivial gates.
struct DegreeReduced {
    LayeredCircuit circuit;
    int blocks = 1;
    int block_size = 0;
    // Physical wire of (block, logical wire); witness wires of block 0 stay last.
    std::vector<std::vector<int>> wire_of;

    Qubits output_wires() const { return wire_of.back(); }
};

DegreeReduced degree_reduce(const LayeredCircuit& c);

// k disjoint copies. Copy c's ancilla j sits on wire c*a + j and its witness
// wire a + j on k*a + c*(n - a) + j.
LayeredCircuit parallel_repeat(const LayeredCircuit& c, int k);
int repeated_wire(const LayeredCircuit& single, int copies, int copy, int wire);

}  // namespace clockless
