#pragma once

#include "clockless/circuit.hpp"
#include "clockless/pauli.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace clockless {

// n rows by 2D+1 columns. Column 0 holds the input, layer l (0-based) puts
// its Choi halves on columns 2l+1 and 2l+2, and column 2D is the output.
// The EPR site of (layer l, row r) is the pair (2l, 2l+1).
struct GridLayout {
    int n = 0;
    int D = 0;

    int columns() const { return 2 * D + 1; }
    int total_qubits() const { return n * columns(); }
    int qubit(int row, int col) const;
    int site_count() const { return n * D; }
    int site_index(int layer, int row) const { return layer * n + row; }
    Qubits site_qubits(int layer, int row) const;
    Qubits site_qubits(int site) const { return site_qubits(site / n, site % n); }
    // Register qubits in MSB-first order, so wire w lands on bit w.
    Qubits column_register(int col) const;
    Qubits output_register() const { return column_register(2 * D); }
    Qubits output_qubits(const Qubits& wires) const;
};

GridLayout layout_of(const LayeredCircuit& c);

// (I (x) U)|Phi_I>^k on [inputs..., outputs...].
Vec choi_state(const Mat& u);
// Choi qubits of a gate on `wires` at `layer`: columns 2l+1 then 2l+2.
Qubits choi_qubits(const GridLayout& g, int layer, const Qubits& wires);

struct PepsState {
    GridLayout layout;
    Vec amplitudes;
    std::vector<double> deltas;  // empty for the base state
    double raw_norm = 1.0;       // norm before the final normalization
};

std::vector<double> uniform_deltas(int depth, double delta);
void check_deltas(std::span<const double> deltas, int depth, bool allow_zero);

// |0^a> xi on column 0 and a Choi state per gate.
PepsState base_state(const LayeredCircuit& c, const Vec& xi);
// Applies Q(delta_l) on every EPR site of layer l, then normalizes.
PepsState apply_injective_maps(const PepsState& base, std::span<const double> deltas);
PepsState build_peps(const LayeredCircuit& c, const Vec& xi, std::span<const double> deltas);

struct ExpansionTerm {
    PauliWord word;       // one entry per EPR site, site index l*n + r
    double coefficient;   // prod_l delta_l^{|P_l|}
    Vec output;           // W_D P_D ... W_1 P_1 |0^a xi>
};

struct Expansion {
    GridLayout layout;
    std::vector<ExpansionTerm> terms;
    double unscaled_norm2 = 0.0;   // sum over all words of coefficient^2
    double truncated_mass = 0.0;   // normalized weight of the dropped words
};

// Words of weight above `max_weight` are dropped; `budget` caps the term count.
Expansion expansion(const LayeredCircuit& c, const Vec& xi, std::span<const double> deltas,
                    std::optional<int> max_weight = std::nullopt, std::size_t budget = std::size_t(1) << 20);
// Normalized grid state sum_P c_P |Phi_P> (x) out_P.
Vec reassemble(const Expansion& e);
// W_D P_D ... W_1 P_1 applied to a register state.
Vec noisy_circuit(const LayeredCircuit& c, const PauliWord& word, const Vec& state);

Mat reduced_density(const PepsState& s, const Qubits& qubits);
double contract_observable(const PepsState& s, const LocalOperator& obs);

// Born distribution of the Bell-basis outcome on `sites`, indexed by PauliWord code.
std::vector<double> pauli_distribution(const GridLayout& g, const Vec& state, const std::vector<int>& sites);
// Samples the Bell-basis outcome on every EPR site; sample i depends only on (seed, i).
std::vector<PauliWord> sample_pauli_patterns(const PepsState& s, std::size_t count, std::uint64_t seed);

// Probability that the error mass is i.i.d. weight >= t over `sites` EPR pairs.
double binomial_tail(int sites, int threshold, double delta);
double site_error_rate(double delta);

// (1 - 3p) rho + p sum_{E in X, XZ, Z} E rho E^dagger on one wire.
Mat depolarize(const Mat& rho, int wire, double p);
// Register state after one depolarizing round per layer on every wire, rate
// site_error_rate(delta_l) / 3 per Pauli; the all-identity output marginal.
Mat depolarized_register(const Vec& input, std::span<const double> deltas);

}  // namespace clockless
