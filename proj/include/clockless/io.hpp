#pragma once

#include "clockless/hamiltonian.hpp"
#include "clockless/soundness.hpp"

#include <json.hpp>

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace clockless {

// Malformed input. `field` is a JSON pointer ("/layers/0/1/wires") or empty;
// `line` and `column` are 1-based, 0 when unknown.
class InputError : public std::runtime_error {
public:
    InputError(const std::string& what, std::string field = {}, int line = 0, int column = 0);
    std::string field;
    int line;
    int column;
};

inline constexpr int kCircuitSchemaVersion = 1;

// {"version":1,"n":..,"a":..,"layers":[[{"gate":"CNOT","wires":[0,1]} |
//  {"unitary":[[re,im],...],"wires":[...]}]]}; unitaries row-major.
LayeredCircuit parse_circuit(std::string_view text);
LayeredCircuit load_circuit(const std::filesystem::path& path);
nlohmann::ordered_json circuit_to_json(const LayeredCircuit& c);

// {"inputs":[w,...],"gates":[[layer,index],...]}
FaultPattern parse_fault_pattern(std::string_view text);
FaultPattern load_fault_pattern(const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);
// Writes to a sibling temp file, then renames over `path`.
void write_atomic(const std::filesystem::path& path, std::string_view bytes);

// Little-endian float64, re and im interleaved.
std::string state_bytes(const Vec& v);
Vec state_from_bytes(std::string_view bytes);

// Complex Hermitian coordinate format, lower triangle, 1-based indices.
std::string matrix_market(const Eigen::SparseMatrix<Complex>& m, double drop_tol = 0.0);

// 17 significant digits, '.' decimal point regardless of locale.
std::string format_double(double x);

class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header);
    void add_row(std::vector<std::string> cells);
    std::size_t rows() const { return rows_.size(); }
    std::string str() const;

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

nlohmann::ordered_json term_manifest(const HamiltonianSpec& h);

}  // namespace clockless
