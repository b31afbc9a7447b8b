#pragma once

#include "clockless/circuit.hpp"

#include <string>
#include <vector>

namespace clockless::fixtures {

struct Fixture {
    std::string name;
    LayeredCircuit circuit;
};

inline LayeredCircuit layered(int n, int a, std::vector<std::vector<Gate>> layers) {
    LayeredCircuit c;
    c.n = n;
    c.a = a;
    c.layers = std::move(layers);
    return fill_identities(std::move(c));
}

inline LayeredCircuit identity_circuit(int n, int depth, int a) {
    return layered(n, a, std::vector<std::vector<Gate>>(std::size_t(depth)));
}

// n <= 2, D <= 2, gates from {I, H, CNOT, CZ, T}; every wire an ancilla.
inline std::vector<Fixture> ground_state_fixtures() {
    return {
        {"I", layered(1, 1, {{}})},
        {"H", layered(1, 1, {{make_gate("H", {0})}})},
        {"T", layered(1, 1, {{make_gate("T", {0})}})},
        {"H.T", layered(1, 1, {{make_gate("H", {0})}, {make_gate("T", {0})}})},
        {"CNOT", layered(2, 2, {{make_gate("CNOT", {0, 1})}})},
        {"CZ", layered(2, 2, {{make_gate("CZ", {0, 1})}})},
        {"H|T", layered(2, 2, {{make_gate("H", {0}), make_gate("T", {1})}})},
        {"H.CNOT", layered(2, 2, {{make_gate("H", {0})}, {make_gate("CNOT", {0, 1})}})},
        {"CZ.T|H", layered(2, 2, {{make_gate("CZ", {0, 1})}, {make_gate("T", {0}), make_gate("H", {1})}})},
        {"I.I", identity_circuit(2, 2, 2)},
    };
}

inline const std::vector<double>& fixture_deltas() {
    static const std::vector<double> d{0.2, 0.5, 0.8};
    return d;
}

}  // namespace clockless::fixtures
