#pragma once

#include "clockless/hamiltonian.hpp"

#include <string>
#include <vector>

namespace clockless {

enum class FkTermKind { input, propagation, clock, output };

std::string fk_kind_name(FkTermKind k);

struct FkTerm {
    FkTermKind kind;
    LocalOperator op;
    int time = 0;   // clock step the term refers to, 1-based
    int wire = -1;  // data wire for input and output terms
};

// Unary clock on qubits 0..T-1 (clock qubit t is qubit t-1), data wire w on
// qubit T + w. Clock qubit 0 is fixed to 1 and clock qubit T + 1 to 0, so the
// boundary terms drop them.
struct ClockHamiltonian {
    int steps = 0;         // T
    int data_qubits = 0;
    int ancillas = 0;
    int output_wire = 0;
    std::vector<Gate> gates;  // U_1 ... U_T on data wires
    std::vector<FkTerm> terms;

    int total_qubits() const { return steps + data_qubits; }
    int clock_qubit(int t) const { return t - 1; }
    int data_qubit(int w) const { return steps + w; }
    std::vector<int> degree_table() const;
    std::vector<int> term_locality() const;
    SparseOperator op() const;
};

// Initialization checks are moved as early as the first gate on each ancilla
// allows, keeping every qubit in at most seven terms where possible.
ClockHamiltonian build_modified_fk(const LayeredCircuit& reduced, int output_wire);
ClockHamiltonian build_modified_fk(const DegreeReduced& reduced);

// |u(t)> = |1^t 0^{T-t}> on the clock, data in ascending wire order.
Vec clock_basis_state(const ClockHamiltonian& h, const std::string& clock_bits, const Vec& data);
// (T+1)^{-1/2} sum_t |u(t)> (x) U_t ... U_1 |0^a xi>
Vec history_state(const ClockHamiltonian& h, const Vec& xi);
std::vector<int> violated_terms(const ClockHamiltonian& h, const Vec& state, double tol = 1e-9);

struct MeasurementPlan {
    Qubits wires;
    std::vector<int> expected;  // accepted outcome per wire
    int or_tree_depth = 0;
};

double accept_probability(const Vec& final_state, const MeasurementPlan& plan);

// One ancilla per projector; ancilla wires come first, data wire j is wire m + j.
struct DlVerifier {
    LayeredCircuit circuit;
    int data_qubits = 0;
    MeasurementPlan plan;
};

// C_h NOT = (I - h) (x) I + h (x) X, one layer per group of disjoint projectors.
DlVerifier build_dl_verifier(int data_qubits, const std::vector<LocalOperator>& projectors,
                             const std::vector<std::vector<int>>& groups);
double dl_accept_probability(const DlVerifier& v, const Vec& xi);
// ||Pi_L ... Pi_1 xi||^2 with Pi_l = prod_{i in group l} (I - h_i).
double dl_operator_probability(int data_qubits, const std::vector<LocalOperator>& projectors,
                               const std::vector<std::vector<int>>& groups, const Vec& xi);

struct SwapTestResult {
    double accept = 0.0;  // (1 + Tr(SWAP rho)) / 2
    double fidelity = 0.0;
    double bound = 0.0;   // (1 + F(rho_A, rho_B)) / 2
    bool holds = false;
};

// rho on two registers of equal dimension, first register most significant.
SwapTestResult swap_test_accept_probability(const Mat& rho);
// Simulates H, controlled SWAPs, H on an ancilla; registers A = wires [0, k),
// B = wires [k, 2k); any further wires are an untouched environment.
double swap_test_circuit_probability(const Vec& state, int register_qubits);

// Witness psi_0 psi_1^{(x)2} ... psi_{T-1}^{(x)2} psi_T. Copies of psi_t are
// tested against each other, then U_{t+1} psi_t is tested against psi_{t+1}.
struct SwapTestVerifier {
    LayeredCircuit circuit;
    int steps = 0;
    std::vector<Qubits> registers;  // register r, logical wire w -> physical wire
    Qubits test_ancillas;
    MeasurementPlan plan;
    int fanout_depth = 0;  // depth of a log-depth fan-out of each control
};

SwapTestVerifier build_swap_test_verifier(const LayeredCircuit& w, int output_wire = 0);
// register_states[r] for r = 1 .. 2T-1; register 0 holds |0^a> xi.
Vec swap_verifier_input(const SwapTestVerifier& v, const LayeredCircuit& w, const Vec& xi,
                        const std::vector<Vec>& register_states);
Vec swap_honest_input(const SwapTestVerifier& v, const LayeredCircuit& w, const Vec& xi);
double swap_verifier_accept_probability(const SwapTestVerifier& v, const Vec& input);
// 1 - T^{-beta}, the soundness target of the amplified verifier; reported, never asserted.
double swap_soundness_target(int steps, double beta = 3.0);

}  // namespace clockless
