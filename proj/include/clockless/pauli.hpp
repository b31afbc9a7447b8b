#pragma once

#include "clockless/qubit_ops.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace clockless {

// XZ is kept as its own real tag rather than folded into Y = i XZ.
enum class Pauli : std::uint8_t { I = 0, X = 1, XZ = 2, Z = 3 };

inline constexpr std::array<Pauli, 4> kPaulis = {Pauli::I, Pauli::X, Pauli::XZ, Pauli::Z};

Mat pauli_matrix(Pauli p);
char pauli_char(Pauli p);  // 'I', 'X', 'W' (for XZ), 'Z'
std::string pauli_name(Pauli p);

struct PauliWord {
    std::vector<Pauli> entries;

    PauliWord() = default;
    explicit PauliWord(std::size_t length) : entries(length, Pauli::I) {}
    explicit PauliWord(std::vector<Pauli> e) : entries(std::move(e)) {}

    std::size_t size() const { return entries.size(); }
    int weight() const;
    Pauli operator[](std::size_t i) const { return entries[i]; }
    Pauli& operator[](std::size_t i) { return entries[i]; }
    bool operator==(const PauliWord&) const = default;

    // Base-4 code with entries[0] as the most significant digit.
    std::uint64_t code() const;
    static PauliWord from_code(std::uint64_t code, std::size_t length);
    std::string to_string() const;
    // Tensor product, entries[0] most significant.
    Mat matrix() const;
};

// (I (x) p)(|00> + |11>)/sqrt(2)
Vec bell_state(Pauli p);
// Columns are the Bell states in the order I, X, XZ, Z.
Mat bell_basis();
// Uniform superposition of the four Bell states, (1/2) sum_p |Phi_p>.
Vec bell_uniform();

enum class SiteMapKind { Q, Lambda };

struct SiteMap {
    SiteMapKind kind;
    double delta;
};

// Q = |Phi_I><Phi_I| + delta sum_{p != I} |Phi_p><Phi_p|
// Lambda = delta |Phi_I><Phi_I| + sum_{p != I} |Phi_p><Phi_p|
// Requires 0 < delta <= 1.
Mat site_map_matrix(const SiteMap& m);
Mat q_map(double delta);
Mat lambda_map(double delta);
// Q at delta in [0, 1]; delta = 0 is the noiseless projector limit.
Mat perturbed_projector(double delta);

// (Phi_I + delta sum_{p != I} Phi_p) / sqrt(1 + 3 delta^2), for delta in [0, 1].
Vec phi0(double delta);

// Coefficient c with a = c * b when a is a Pauli-proportional operator; zero
// when they are not proportional.
Complex proportionality(const Mat& a, const Mat& b, double tol = 1e-10);

}  // namespace clockless
