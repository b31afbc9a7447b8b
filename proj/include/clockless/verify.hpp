#pragma once

#include "clockless/spectral.hpp"

#include <optional>
#include <string>
#include <vector>

namespace clockless {

// Failures up to this size are reported as tolerance misses, larger ones as
// correctness failures.
inline constexpr double kCorrectnessLimit = 1e-6;

struct CheckResult {
    std::string circuit;
    double delta = 0.0;       // uniform delta, or the first layer's
    std::string check;
    std::string location;
    double value = 0.0;       // error measure, 0 is ideal
    double tolerance = 0.0;
    bool pass = false;
    std::string category;     // empty, "tolerance" or "correctness"
};

struct VerifyOptions {
    std::optional<double> tolerance;  // overrides every per-check default
    // Rebuilds term `first` with this uniform delta before the energy check.
    std::optional<std::pair<int, double>> injected_delta;
    std::optional<SolverMethod> method;
    LanczosOptions lanczos;  // k is raised to the expected ground dimension + 1
    int rotation_qubit_limit = 10;  // rotated checks run on grids up to this size
};

// Frustration-freeness, ground-space fidelity, expansion, depolarizing marginal
// (all-identity circuits) and the rotated closed forms.
std::vector<CheckResult> verify_circuit(const std::string& name, const LayeredCircuit& c,
                                        std::span<const double> deltas, const VerifyOptions& opts = {});

}  // namespace clockless
