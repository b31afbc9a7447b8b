#pragma once

#include "clockless/peps.hpp"

#include <Eigen/SparseCore>

#include <span>
#include <string>
#include <vector>

namespace clockless {

enum class TermKind { input, propagation, stabilizer, output };

std::string term_kind_name(TermKind k);

struct HamiltonianTerm {
    TermKind kind;
    Qubits support;
    Mat block;
    int layer = -1;  // gate layer for propagation terms
    Qubits wires;    // circuit wires the term refers to

    LocalOperator local() const { return {block, support}; }
};

struct HamiltonianSpec {
    GridLayout layout;
    std::vector<HamiltonianTerm> terms;
    double out_scale = 1.0;  // weight of output terms when assembled

    std::size_t term_count() const { return terms.size(); }
};

// Support of a gate term: left sites (2l, 2l+1) of each wire, then the right
// sites (2l+2, 2l+3) of each wire, or the output qubits for the last layer.
Qubits propagation_support(const GridLayout& g, int layer, const Qubits& wires);

// Lambda^{(x)} (I - |Phi_U><Phi_U|) Lambda^{(x)}; each site uses its own layer's delta.
HamiltonianTerm propagation_term(const GridLayout& g, const Gate& gate, int layer, std::span<const double> deltas);
// Lambda (Pi (x) I) Lambda on the first-layer sites of `wires`; Pi acts on the
// input qubits (wires[0] most significant). Defaults to |1><1| on one wire.
HamiltonianTerm input_term(const GridLayout& g, const Qubits& wires, const Mat& projector, double delta);
HamiltonianTerm input_term(const GridLayout& g, int wire, double delta);

// Pauli check on input wires, e.g. {"ZZ", {0, 1}}; letters I, X, Y, Z.
struct PauliCheck {
    std::string paulis;
    Qubits wires;
};

Mat pauli_check_matrix(const PauliCheck& check);
// Lambda-dressed (1 - S)/2 for each check.
std::vector<HamiltonianTerm> stabilizer_terms(const GridLayout& g, std::span<const PauliCheck> checks, double delta);

// Projector on output qubits of `wires`; defaults to |0><0| on one wire.
HamiltonianTerm output_term(const GridLayout& g, const Qubits& wires, const Mat& projector);
HamiltonianTerm output_term(const GridLayout& g, int wire);

struct ParentOptions {
    bool input_terms = true;  // |1><1| check on every ancilla wire
    std::vector<PauliCheck> stabilizers;
    std::vector<int> output_wires;  // |0><0| penalties on these output wires
    double out_scale = 1.0;
};

HamiltonianSpec parent_hamiltonian(const LayeredCircuit& c, std::span<const double> deltas,
                                   const ParentOptions& opts = {});

// Matrix-free sum of local terms.
class SparseOperator {
public:
    SparseOperator(int nqubits, std::vector<LocalOperator> terms);

    int qubits() const { return nqubits_; }
    Eigen::Index dim() const { return Eigen::Index(1) << nqubits_; }
    const std::vector<LocalOperator>& terms() const { return terms_; }
    Vec apply(const Vec& v) const;
    Eigen::SparseMatrix<Complex> to_sparse() const;
    Mat to_dense() const;

private:
    int nqubits_;
    std::vector<LocalOperator> terms_;
};

SparseOperator assemble(const HamiltonianSpec& h);

struct EnergyReport {
    double total = 0.0;
    double density = 0.0;  // total / term count
    std::vector<double> per_term;
    std::vector<int> violations;  // terms with energy above the tolerance
};

// Requires a normalized state.
EnergyReport energy(const HamiltonianSpec& h, const Vec& state, double tol = 1e-9);
// <psi|h|psi> for an arbitrary vector, no normalization.
double expectation(const LocalOperator& op, const Vec& state);

}  // namespace clockless
