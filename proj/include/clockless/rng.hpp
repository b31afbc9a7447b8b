#pragma once

#include "clockless/qubit_ops.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>

namespace clockless {

// Counter-based generator: every draw is a pure function of (seed, stream, index).
struct CounterRng {
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;

    static std::uint64_t mix(std::uint64_t x) {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }
    std::uint64_t bits(std::uint64_t index) const { return mix(mix(seed ^ mix(stream)) + index); }
    // Uniform in [0, 1).
    double uniform(std::uint64_t index) const { return double(bits(index) >> 11) * 0x1.0p-53; }
    // Standard normal via Box-Muller on draws 2*index and 2*index+1.
    double normal(std::uint64_t index) const {
        const double u1 = 1.0 - uniform(2 * index);
        const double u2 = uniform(2 * index + 1);
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }
};

// Haar-random unit vector of length `dim`.
inline Vec random_state(Eigen::Index dim, std::uint64_t seed, std::uint64_t stream = 0) {
    const CounterRng rng{seed, stream};
    Vec v(dim);
    for (Eigen::Index i = 0; i < dim; ++i)
        v(i) = Complex(rng.normal(std::uint64_t(2 * i)), rng.normal(std::uint64_t(2 * i + 1)));
    return v.normalized();
}

// Haar-random unitary via QR of a Gaussian matrix with the phase fix.
inline Mat random_unitary(Eigen::Index dim, std::uint64_t seed, std::uint64_t stream = 0) {
    const CounterRng rng{seed, stream};
    Mat g(dim, dim);
    for (Eigen::Index i = 0; i < dim * dim; ++i)
        g(i % dim, i / dim) = Complex(rng.normal(std::uint64_t(2 * i)), rng.normal(std::uint64_t(2 * i + 1)));
    Eigen::HouseholderQR<Mat> qr(g);
    Mat q = qr.householderQ();
    const Mat r = qr.matrixQR();
    for (Eigen::Index j = 0; j < dim; ++j) q.col(j) *= r(j, j) / std::abs(r(j, j));
    return q;
}

}  // namespace clockless
