#pragma once

#include "clockless/hamiltonian.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

namespace clockless {

inline constexpr double kGroundCutoff = 1e-9;
inline constexpr Eigen::Index kDenseLimit = Eigen::Index(1) << 12;

enum class SolverMethod { dense, iterative };

struct SpectralReport {
    std::vector<double> eigenvalues;  // ascending
    Mat eigenvectors;                 // columns match eigenvalues; empty if not requested
    std::vector<double> residuals;    // ||H x - lambda x||
    int ground_dim = 0;               // eigenvalues within the cutoff of the lowest
    double gap = 0.0;                 // NaN when no excited value was computed
    SolverMethod method = SolverMethod::dense;
    int iterations = 0;
};

class NonConvergence : public std::runtime_error {
public:
    NonConvergence(const std::string& what, int iterations) : std::runtime_error(what), iterations(iterations) {}
    int iterations;
};

SpectralReport dense_spectrum(const Mat& h, bool vectors = true, double ground_tol = kGroundCutoff);
SpectralReport dense_spectrum(const SparseOperator& op, bool vectors = true, double ground_tol = kGroundCutoff);

struct LanczosOptions {
    int k = 1;
    double tol = 1e-10;   // residual norm for locking a Ritz pair
    int max_restarts = 400;
    int krylov_dim = 0;   // 0 picks min(dim, max(40, 2k + 20))
    std::uint64_t seed = 0;
    double ground_tol = kGroundCutoff;
};

using LinearMap = std::function<Vec(const Vec&)>;

// Restarted Lanczos with full reorthogonalization and locking; each locked
// pair starts a fresh seeded Krylov space so degenerate levels are resolved.
SpectralReport low_spectrum(const LinearMap& op, Eigen::Index dim, const LanczosOptions& opts);
SpectralReport low_spectrum(const SparseOperator& op, const LanczosOptions& opts);
// Dense up to the dense limit, iterative above it.
SpectralReport lowest_levels(const SparseOperator& op, int k, std::uint64_t seed = 0);

struct GapReport {
    double gap = 0.0;
    double lowest = 0.0;
    int ground_dim = 0;
    double bound_product = 0.0;  // prod over initialization and layers of delta^{8 k}
    SolverMethod method = SolverMethod::dense;
};

// Gap of the parent Hamiltonian; layer locality defaults to the largest gate arity.
// Without `method`, dense up to the dense limit and iterative above it.
GapReport gap_vs_bound(const LayeredCircuit& c, std::span<const double> deltas, const std::vector<int>& locality = {},
                       std::optional<SolverMethod> method = std::nullopt, const LanczosOptions& lanczos = {});

struct InequalityCheck {
    double lhs = 0.0;
    double rhs = 0.0;
    bool holds = false;
    double slack = 0.0;  // signed margin, positive when the inequality holds
};

// Largest number of other projectors that fail to commute with any one of them.
int commutation_degree(const std::vector<Mat>& projectors, double tol = 1e-12);
// phi = (1 - Q_m) ... (1 - Q_1) psi; checks ||phi||^2 <= 1 / (e_phi / g^2 + 1).
// g < 0 computes the commutation degree.
InequalityCheck detectability_check(const std::vector<Mat>& projectors, const Vec& psi, int g = -1);
// ||phi||^2 >= 1 - 4 <psi| sum Q_i |psi>.
InequalityCheck union_bound_check(const std::vector<Mat>& projectors, const Vec& psi);

struct JordanDecomposition {
    std::vector<double> cosines;  // principal angle cosines between the two ranges
    std::vector<Mat> blocks;      // orthonormal bases of the invariant blocks
    double invariance_residual = 0.0;
    double reconstruction_residual = 0.0;
};

JordanDecomposition jordan_angles(const Mat& p1, const Mat& p2);

struct GeometricBound {
    double gamma = 0.0;      // smallest nonzero eigenvalue over A and B
    double cos_theta = 0.0;  // largest overlap between the null spaces
    double bound = 0.0;      // gamma (1 - cos theta)
    double min_eigenvalue = 0.0;
    bool holds = false;
};

GeometricBound geometric_bound(const Mat& a, const Mat& b, double zero_tol = kGroundCutoff);

}  // namespace clockless
