#include "clockless/io.hpp"
#include "clockless/rng.hpp"

#include "clockless/fixtures.hpp"

#include <gtest/gtest.h>

#include <clocale>
#include <filesystem>

using namespace clockless;
using clockless::fixtures::layered;

namespace {

InputError parse_error(std::string_view text) {
    try {
        parse_circuit(text);
    } catch (const InputError& e) {
        return e;
    }
    ADD_FAILURE() << "no error for " << text;
    return InputError("none");
}

std::filesystem::path scratch(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / "clockless_io_test";
    std::filesystem::create_directories(dir);
    return dir / name;
}

}  // namespace

TEST(CircuitJson, ParsesNamedAndExplicitGates) {
    const auto c = parse_circuit(R"({"version":1,"n":2,"a":1,"layers":[
        [{"gate":"CNOT","wires":[0,1]}],
        [{"unitary":[[0,0],[1,0],[1,0],[0,0]],"wires":[0],"name":"flip"},{"gate":"T","wires":[1]}]]})");
    EXPECT_EQ(c.n, 2);
    EXPECT_EQ(c.a, 1);
    ASSERT_EQ(c.depth(), 2);
    EXPECT_EQ(c.layers[1][0].name, "flip");
    EXPECT_LT((c.layers[1][0].unitary - named_unitary("X")).norm(), 1e-15);
}

TEST(CircuitJson, RowsOfPairsAreAccepted) {
    const auto c = parse_circuit(R"({"version":1,"n":1,"a":1,"layers":[
        [{"unitary":[[[1,0],[0,0]],[[0,0],[0,1]]],"wires":[0]}]]})");
    EXPECT_LT((c.layers[0][0].unitary - named_unitary("S")).norm(), 1e-15);
}

TEST(CircuitJson, RoundTrip) {
    const auto c = layered(2, 2, {{make_gate("H", {0}), make_gate(random_unitary(2, 3), {1})}, {make_gate("CZ", {0, 1})}});
    const auto back = parse_circuit(circuit_to_json(c).dump());
    ASSERT_EQ(back.depth(), c.depth());
    for (int l = 0; l < c.depth(); ++l)
        for (std::size_t i = 0; i < c.layers[std::size_t(l)].size(); ++i) {
            EXPECT_EQ(back.layers[std::size_t(l)][i].wires, c.layers[std::size_t(l)][i].wires);
            EXPECT_LT((back.layers[std::size_t(l)][i].unitary - c.layers[std::size_t(l)][i].unitary).norm(), 1e-15);
        }
}

TEST(CircuitJson, SyntaxErrorsCarryLineAndColumn) {
    const auto e = parse_error("{\"version\":1,\n\"n\":1,\n\"a\": ]}");
    EXPECT_EQ(e.line, 3);
    EXPECT_GT(e.column, 0);
}

TEST(CircuitJson, SchemaErrorsCarryField) {
    EXPECT_EQ(parse_error(R"({"n":1,"a":1,"layers":[]})").field, "/version");
    EXPECT_EQ(parse_error(R"({"version":2,"n":1,"a":1,"layers":[]})").field, "/version");
    EXPECT_EQ(parse_error(R"({"version":1,"n":1.5,"a":1,"layers":[]})").field, "/n");
    EXPECT_EQ(parse_error(R"({"version":1,"n":1,"a":1,"layers":[[{"gate":"NOPE","wires":[0]}]]})").field,
              "/layers/0/0/gate");
    EXPECT_EQ(parse_error(R"({"version":1,"n":1,"a":1,"layers":[[{"gate":"H"}]]})").field, "/layers/0/0/wires");
    EXPECT_EQ(parse_error(R"({"version":1,"n":1,"a":1,"layers":[[{"unitary":[[1,0],[1,0],[0,0],[1,0]],"wires":[0]}]]})")
                  .field.rfind("/layers/0/0", 0),
              0u);
    // A wire used twice in a layer is reported by validation.
    const auto dup = parse_error(R"({"version":1,"n":2,"a":2,"layers":[[{"gate":"H","wires":[0]},{"gate":"T","wires":[0]}]]})");
    EXPECT_FALSE(dup.field.empty());
}

TEST(FaultFile, Parses) {
    const auto f = parse_fault_pattern(R"({"inputs":[0,2],"gates":[[1,0],[0,1]]})");
    EXPECT_EQ(f.inputs, (std::vector<int>{0, 2}));
    ASSERT_EQ(f.gates.size(), 2u);
    EXPECT_EQ(f.gates[0], (std::pair<int, int>{1, 0}));
    EXPECT_THROW(parse_fault_pattern(R"({"inputs":"x"})"), InputError);
}

TEST(StateBytes, RoundTripIsExact) {
    const Vec v = random_state(8, 42);
    const std::string b = state_bytes(v);
    EXPECT_EQ(b.size(), 8u * 16u);
    EXPECT_EQ(state_from_bytes(b), v);
    EXPECT_THROW(state_from_bytes(b.substr(1)), InputError);
}

TEST(MatrixMarket, LowerTriangleOneBased) {
    Eigen::SparseMatrix<Complex> m(2, 2);
    m.insert(0, 0) = 1.0;
    m.insert(1, 0) = Complex(0.5, -0.25);
    m.insert(0, 1) = Complex(0.5, 0.25);
    m.insert(1, 1) = 2.0;
    const std::string s = matrix_market(m);
    EXPECT_EQ(s.rfind("%%MatrixMarket matrix coordinate complex hermitian\n", 0), 0u);
    EXPECT_NE(s.find("2 2 3\n"), std::string::npos);
    EXPECT_NE(s.find("2 1 0.5 -0.25\n"), std::string::npos);
    EXPECT_EQ(s.find("1 2 "), std::string::npos);
}

TEST(Format, SeventeenDigitsAndLocaleFree) {
    EXPECT_EQ(format_double(0.1), "0.10000000000000001");
    EXPECT_EQ(format_double(1.0), "1");
    std::setlocale(LC_NUMERIC, "de_DE.UTF-8");
    EXPECT_EQ(format_double(2.5), "2.5");
    std::setlocale(LC_NUMERIC, "C");
    EXPECT_EQ(std::stod(format_double(1.0 / 3.0)), 1.0 / 3.0);
}

TEST(Csv, QuotesAndHeaderOnly) {
    CsvTable t({"a", "b"});
    EXPECT_EQ(t.str(), "a,b\n");
    t.add_row({"x,y", "say \"hi\""});
    EXPECT_EQ(t.str(), "a,b\n\"x,y\",\"say \"\"hi\"\"\"\n");
    EXPECT_THROW(t.add_row({"only one"}), std::invalid_argument);
}

TEST(Files, AtomicWriteReplacesContent) {
    const auto p = scratch("atomic.txt");
    write_atomic(p, "first");
    write_atomic(p, "second");
    EXPECT_EQ(read_file(p), "second");
    for (const auto& e : std::filesystem::directory_iterator(p.parent_path()))
        EXPECT_EQ(e.path().filename().string().find(".tmp"), std::string::npos);
    EXPECT_THROW(read_file(scratch("missing.json")), InputError);
}

TEST(Manifest, ListsEveryTerm) {
    const auto c = layered(1, 1, {{}});
    const auto h = parent_hamiltonian(c, uniform_deltas(1, 0.5));
    const auto m = term_manifest(h);
    EXPECT_EQ(m["terms"].size(), h.term_count());
    EXPECT_EQ(m["qubits"], 3);
}
