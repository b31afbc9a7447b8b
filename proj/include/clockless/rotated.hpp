#pragma once

#include "clockless/hamiltonian.hpp"

#include <cstdint>
#include <vector>

namespace clockless {

enum class Direction { forward, adjoint };

// V = sum_P |Phi_P><Phi_P| (x) W_D P_D ... W_1 P_1, with the circuit acting on
// the output column. Applied block-wise in the Bell frame of the EPR sites.
class RotationUnitary {
public:
    explicit RotationUnitary(LayeredCircuit c);

    const GridLayout& layout() const { return layout_; }
    const LayeredCircuit& circuit() const { return circuit_; }
    Vec apply(const Vec& state, Direction dir = Direction::forward) const;
    // Column-wise, building each branch unitary W(P) once.
    Mat apply(const Mat& states, Direction dir) const;
    // V^dagger h V as a dense operator on the whole grid.
    Mat conjugate(const LocalOperator& h) const;
    Vec conjugate_apply(const LocalOperator& h, const Vec& state) const;

private:
    LayeredCircuit circuit_;
    GridLayout layout_;
};

inline constexpr Eigen::Index kFullConjugationLimit = Eigen::Index(1) << 10;

enum class RotateMode { automatic, exact, randomized };

struct RotatedTerm {
    Mat local;               // operator on the claimed support
    Qubits support;
    double outside_residual; // operator-norm residual (exact) or max sampled residual
    bool exact = true;
};

// V^dagger h V restricted to `claimed_support`. The randomized mode tests the
// identity outside the support on `samples` seeded random states.
RotatedTerm rotate_term(const RotationUnitary& v, const HamiltonianTerm& term, const Qubits& claimed_support,
                        RotateMode mode = RotateMode::automatic, std::uint64_t seed = 0, int samples = 50);

// <phi0|^{(x)} V^dagger h V |phi0>^{(x)} with phi0(delta_l) on the listed EPR
// sites, restricted to `claimed_support`.
RotatedTerm project_rotated(const RotationUnitary& v, const HamiltonianTerm& term, const std::vector<int>& sites,
                            std::span<const double> deltas, const Qubits& claimed_support);

// 4 delta^2 / (1 + 3 delta^2)
double teleportation_coefficient(double delta);

// Lambda^{(x)k} (I - |s><s|^{(x)k}) Lambda^{(x)k}, s = (1/2) sum_p Phi_p, on k EPR sites.
Mat last_layer_closed_form(int k, double delta);
// coefficient^k times the above, with phi0(delta_right) projected out of the right sites.
Mat bulk_projected_closed_form(int k, double delta_left, double delta_right);

struct CliffordPair {
    std::uint64_t p;  // Bell labels, left sites then right sites, first entry most significant
    std::uint64_t q;
    Complex phase;    // U^dagger (q_R p_R) U = phase * (p_L q_L)
};

// Pairs related by the gate; each label has 4^k partners for a Clifford gate.
std::vector<CliffordPair> clifford_relation(const Mat& u);
// Lambda^{(x)2k} (sum |Phi_p><Phi_p| - 4^{-k} sum_{p~q} |Phi_p><Phi_q|) Lambda^{(x)2k}
// on [left sites..., right sites...].
Mat clifford_closed_form(const Mat& u, double delta_left, double delta_right);

}  // namespace clockless
