#pragma once

#include "clockless/rotated.hpp"
#include "clockless/spectral.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace clockless {

// Faulted input wires and faulted gates (layer, index within layer).
struct FaultPattern {
    std::vector<int> inputs;
    std::vector<std::pair<int, int>> gates;
};

// Local states placed at faulted locations in the Lambda frame. Missing
// entries default to |1> for inputs and (I (x) X^{(x)k}) Phi_U for gates.
struct FaultPayload {
    std::map<int, Vec> inputs;
    std::map<std::pair<int, int>, Vec> gates;
};

// Error basis element (I (x) E) Phi_U, E acting on the gate's outputs.
Vec error_basis_state(const Gate& g, const PauliWord& e);

// Q^{(x)nD} applied to the product of |0>, Phi_U and the payloads with the
// witness xi on the input column; normalized.
PepsState build_combinatorial_state(const LayeredCircuit& c, std::span<const double> deltas, const FaultPattern& f,
                                    const FaultPayload& payload, const Vec& xi);

struct DecompositionTerm {
    PauliWord error;     // n(D+1) slots; slot l*n + w, slot row 0 is the input column
    double coefficient;  // non-negative
    Vec witness;         // normalized
};

struct Decomposition {
    std::vector<DecompositionTerm> terms;
    double captured = 0.0;  // squared norm inside the combinatorial form
    double fidelity = 0.0;  // overlap of the reassembled state with the input
};

Decomposition extract_decomposition(const Vec& state, const LayeredCircuit& c, std::span<const double> deltas,
                                    const FaultPattern& f);

int threshold_from_alpha(double alpha, int n);
// Mass of Bell-basis words with weight >= threshold on `sites`.
double high_weight_mass(const GridLayout& g, const Vec& state, int threshold, const std::vector<int>& sites);

struct IndistinguishabilityReport {
    double overlap = 0.0;  // ||pi_U2 pi_U1||
    double bound = 0.0;    // 1 - delta^6 / 2
    int ground_dim1 = 0;
    int ground_dim2 = 0;
    double span_residual = 0.0;  // kernel against the closed-form spanning set
};

// Kernels of single-qubit bulk propagation terms for two gates.
IndistinguishabilityReport local_indistinguishability(const Mat& u1, const Mat& u2, double delta);
// sum_{p_L,p_R} delta^{|p_L|+|p_R|} Tr[M p_R U p_L] |Phi_{p_L}>|Phi_{p_R}> for M in the matrix units.
Mat ground_space_span(const Mat& u, double delta);

struct LemmaCheck {
    std::string lemma;
    std::string location;
    double alpha = 0.0;  // energy of the relevant term
    double eta = 0.0;    // phi0 deficit of the neighbouring sites
    double lhs = 0.0;
    double rhs = 0.0;
    bool holds = false;
};

// Lemma checks on a grid state; `v` must be built from the same circuit.
LemmaCheck last_column_check(const RotationUnitary& v, std::span<const double> deltas, const Vec& psi, int row);
LemmaCheck bulk_propagation_check(const RotationUnitary& v, std::span<const double> deltas, const Vec& psi, int layer,
                                  int gate_index);
LemmaCheck teleportation_check(const RotationUnitary& v, std::span<const double> deltas, const Vec& psi, int wire);

struct ProbeReport {
    EnergyReport energy;
    std::vector<double> site_overlaps;    // Tr(psi' phi0) per EPR site in the rotated frame
    std::vector<double> output_overlaps;  // Tr(psi' (I - Pi_j)) per ancilla wire
    std::vector<LemmaCheck> checks;
};

ProbeReport low_energy_probe(const LayeredCircuit& c, std::span<const double> deltas, const Vec& psi);

enum class LemmaSuite { last_column, bulk_propagation, teleportation, detectability, union_bound, jordan, geometric,
                        term_square };

std::string suite_name(LemmaSuite s);
LemmaSuite suite_from_name(const std::string& name);
std::vector<LemmaSuite> all_suites();

struct SuiteInstance {
    LemmaSuite suite;
    std::uint64_t seed;
    std::uint64_t index;
    std::string params;  // JSON description of the generated instance
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0;  // margin, positive when the inequality holds
    bool holds = false;
};

// Each instance is a pure function of (suite, seed, index).
SuiteInstance run_lemma_instance(LemmaSuite s, std::uint64_t seed, std::uint64_t index);
std::vector<SuiteInstance> run_lemma_suite(LemmaSuite s, std::uint64_t seed, std::size_t count);

}  // namespace clockless
