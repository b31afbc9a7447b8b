#include "clockless/io.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>
#include <tuple>

namespace clockless {

using nlohmann::json;

InputError::InputError(const std::string& what, std::string f, int l, int c)
    : std::runtime_error(what), field(std::move(f)), line(l), column(c) {}

namespace {

// Line and column of a byte offset.
std::pair<int, int> locate(std::string_view text, std::size_t offset) {
    int line = 1, col = 1;
    for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

json parse_json(std::string_view text) {
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        const auto [line, col] = locate(text, e.byte == 0 ? 0 : e.byte - 1);
        throw InputError("line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + e.what(), {}, line,
                         col);
    }
}

[[noreturn]] void field_error(const std::string& path, const std::string& msg) {
    throw InputError("field " + path + ": " + msg, path);
}

int get_int(const json& j, const std::string& key, const std::string& path) {
    const std::string p = path + "/" + key;
    if (!j.contains(key)) field_error(p, "missing");
    const auto& v = j.at(key);
    if (!v.is_number_integer()) field_error(p, "expected an integer");
    return v.get<int>();
}

Qubits get_wires(const json& g, const std::string& path) {
    const std::string p = path + "/wires";
    if (!g.contains("wires")) field_error(p, "missing");
    const auto& w = g.at("wires");
    if (!w.is_array() || w.empty()) field_error(p, "expected a non-empty array of integers");
    Qubits out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (!w[i].is_number_integer()) field_error(p + "/" + std::to_string(i), "expected an integer");
        out.push_back(w[i].get<int>());
    }
    return out;
}

Complex get_pair(const json& e, const std::string& path) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
        field_error(path, "expected [re, im]");
    return {e[0].get<double>(), e[1].get<double>()};
}

Mat get_unitary(const json& u, std::size_t arity, const std::string& path) {
    if (!u.is_array()) field_error(path, "expected an array of [re, im] pairs");
    const Eigen::Index d = Eigen::Index(1) << arity;
    std::vector<Complex> flat;
    // Either a flat row-major list of pairs or a list of rows.
    const bool rows = !u.empty() && u[0].is_array() && !u[0].empty() && u[0][0].is_array();
    if (rows) {
        for (std::size_t r = 0; r < u.size(); ++r) {
            if (!u[r].is_array()) field_error(path + "/" + std::to_string(r), "expected a row");
            for (std::size_t c = 0; c < u[r].size(); ++c)
                flat.push_back(get_pair(u[r][c], path + "/" + std::to_string(r) + "/" + std::to_string(c)));
        }
    } else {
        for (std::size_t i = 0; i < u.size(); ++i) flat.push_back(get_pair(u[i], path + "/" + std::to_string(i)));
    }
    if (static_cast<Eigen::Index>(flat.size()) != d * d)
        field_error(path, "expected " + std::to_string(d * d) + " entries for " + std::to_string(arity) + " wires, got " +
                              std::to_string(flat.size()));
    Mat m(d, d);
    for (Eigen::Index r = 0; r < d; ++r)
        for (Eigen::Index c = 0; c < d; ++c) m(r, c) = flat[static_cast<std::size_t>(r * d + c)];
    return m;
}

}  // namespace

LayeredCircuit parse_circuit(std::string_view text) {
    const json j = parse_json(text);
    if (!j.is_object()) field_error("", "top level must be an object");
    if (!j.contains("version")) field_error("/version", "missing (required)");
    if (!j.at("version").is_number_integer() || j.at("version").get<int>() != kCircuitSchemaVersion)
        field_error("/version", "unsupported version, expected " + std::to_string(kCircuitSchemaVersion));
    LayeredCircuit c;
    c.n = get_int(j, "n", "");
    c.a = j.contains("a") ? get_int(j, "a", "") : 0;
    if (c.n <= 0) field_error("/n", "must be positive");
    if (c.a < 0 || c.a > c.n) field_error("/a", "must lie in [0, n]");
    if (!j.contains("layers") || !j.at("layers").is_array()) field_error("/layers", "expected an array of layers");
    const auto& layers = j.at("layers");
    for (std::size_t l = 0; l < layers.size(); ++l) {
        const std::string lp = "/layers/" + std::to_string(l);
        if (!layers[l].is_array()) field_error(lp, "expected an array of gates");
        std::vector<Gate> layer;
        for (std::size_t i = 0; i < layers[l].size(); ++i) {
            const std::string gp = lp + "/" + std::to_string(i);
            const auto& g = layers[l][i];
            if (!g.is_object()) field_error(gp, "expected an object");
            Qubits wires = get_wires(g, gp);
            const bool named = g.contains("gate"), explicit_u = g.contains("unitary");
            if (named == explicit_u) field_error(gp, "exactly one of 'gate' or 'unitary' is required");
            try {
                if (named) {
                    if (!g.at("gate").is_string()) field_error(gp + "/gate", "expected a string");
                    try {
                        named_unitary(g.at("gate").get<std::string>());
                    } catch (const std::exception& e) {
                        field_error(gp + "/gate", e.what());
                    }
                    layer.push_back(make_gate(g.at("gate").get<std::string>(), std::move(wires)));
                } else {
                    Mat u = get_unitary(g.at("unitary"), wires.size(), gp + "/unitary");
                    Gate gate = make_gate(std::move(u), std::move(wires));
                    if (g.contains("name") && g.at("name").is_string()) gate.name = g.at("name").get<std::string>();
                    layer.push_back(std::move(gate));
                }
            } catch (const InputError&) {
                throw;
            } catch (const std::exception& e) {
                field_error(gp, e.what());
            }
        }
        c.layers.push_back(std::move(layer));
    }
    for (const auto& v : validate(c)) {
        const std::string p = "/layers/" + std::to_string(v.layer);
        throw InputError("field " + p + ": " + v.kind + ": " + v.message, p);
    }
    return c;
}

LayeredCircuit load_circuit(const std::filesystem::path& path) {
    try {
        return parse_circuit(read_file(path));
    } catch (const InputError& e) {
        throw InputError(path.string() + ": " + e.what(), e.field, e.line, e.column);
    }
}

nlohmann::ordered_json circuit_to_json(const LayeredCircuit& c) {
    nlohmann::ordered_json j;
    j["version"] = kCircuitSchemaVersion;
    j["n"] = c.n;
    j["a"] = c.a;
    j["layers"] = nlohmann::ordered_json::array();
    for (const auto& layer : c.layers) {
        auto jl = nlohmann::ordered_json::array();
        for (const auto& g : layer) {
            nlohmann::ordered_json jg;
            bool named = false;
            if (!g.name.empty()) {
                try {
                    named = (named_unitary(g.name) - g.unitary).norm() == 0.0;
                } catch (const std::exception&) {
                }
            }
            if (named) {
                jg["gate"] = g.name;
            } else {
                auto u = nlohmann::ordered_json::array();
                for (Eigen::Index r = 0; r < g.unitary.rows(); ++r)
                    for (Eigen::Index k = 0; k < g.unitary.cols(); ++k)
                        u.push_back({g.unitary(r, k).real(), g.unitary(r, k).imag()});
                jg["unitary"] = std::move(u);
                if (!g.name.empty()) jg["name"] = g.name;
            }
            jg["wires"] = g.wires;
            jl.push_back(std::move(jg));
        }
        j["layers"].push_back(std::move(jl));
    }
    return j;
}

FaultPattern parse_fault_pattern(std::string_view text) {
    const json j = parse_json(text);
    if (!j.is_object()) field_error("", "top level must be an object");
    FaultPattern f;
    if (j.contains("inputs")) {
        const auto& in = j.at("inputs");
        if (!in.is_array()) field_error("/inputs", "expected an array of wires");
        for (std::size_t i = 0; i < in.size(); ++i) {
            if (!in[i].is_number_integer()) field_error("/inputs/" + std::to_string(i), "expected an integer");
            f.inputs.push_back(in[i].get<int>());
        }
    }
    if (j.contains("gates")) {
        const auto& gs = j.at("gates");
        if (!gs.is_array()) field_error("/gates", "expected an array of [layer, index]");
        for (std::size_t i = 0; i < gs.size(); ++i) {
            const auto& g = gs[i];
            if (!g.is_array() || g.size() != 2 || !g[0].is_number_integer() || !g[1].is_number_integer())
                field_error("/gates/" + std::to_string(i), "expected [layer, index]");
            f.gates.emplace_back(g[0].get<int>(), g[1].get<int>());
        }
    }
    return f;
}

FaultPattern load_fault_pattern(const std::filesystem::path& path) {
    try {
        return parse_fault_pattern(read_file(path));
    } catch (const InputError& e) {
        throw InputError(path.string() + ": " + e.what(), e.field, e.line, e.column);
    }
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_atomic(const std::filesystem::path& path, std::string_view bytes) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    const auto tmp = std::filesystem::path(path.string() + ".tmp");
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        if (!out) throw std::runtime_error("write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

namespace {

void put_le(std::string& out, double x) {
    auto bits = std::bit_cast<std::uint64_t>(x);
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((bits >> (8 * i)) & 0xff));
}

double get_le(const char* p) {
    std::uint64_t bits = 0;
    for (int i = 0; i < 8; ++i) bits |= std::uint64_t(static_cast<unsigned char>(p[i])) << (8 * i);
    return std::bit_cast<double>(bits);
}

}  // namespace

std::string state_bytes(const Vec& v) {
    std::string out;
    out.reserve(static_cast<std::size_t>(v.size()) * 16);
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        put_le(out, v(i).real());
        put_le(out, v(i).imag());
    }
    return out;
}

Vec state_from_bytes(std::string_view bytes) {
    if (bytes.size() % 16 != 0) throw InputError("state file size is not a multiple of 16 bytes");
    Vec v(static_cast<Eigen::Index>(bytes.size() / 16));
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const char* p = bytes.data() + 16 * i;
        v(i) = Complex(get_le(p), get_le(p + 8));
    }
    return v;
}

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
    return std::string(buf, r.ptr);
}

std::string matrix_market(const Eigen::SparseMatrix<Complex>& m, double drop_tol) {
    std::vector<std::tuple<Eigen::Index, Eigen::Index, Complex>> entries;
    for (Eigen::Index k = 0; k < m.outerSize(); ++k)
        for (Eigen::SparseMatrix<Complex>::InnerIterator it(m, k); it; ++it)
            if (it.row() >= it.col() && std::abs(it.value()) > drop_tol) entries.emplace_back(it.row(), it.col(), it.value());
    std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
        return std::tie(std::get<1>(a), std::get<0>(a)) < std::tie(std::get<1>(b), std::get<0>(b));
    });
    std::string out = "%%MatrixMarket matrix coordinate complex hermitian\n";
    out += std::to_string(m.rows()) + " " + std::to_string(m.cols()) + " " + std::to_string(entries.size()) + "\n";
    for (const auto& [r, c, v] : entries)
        out += std::to_string(r + 1) + " " + std::to_string(c + 1) + " " + format_double(v.real()) + " " +
               format_double(v.imag()) + "\n";
    return out;
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

void CsvTable::add_row(std::vector<std::string> cells) {
    if (cells.size() != header_.size()) throw std::invalid_argument("CSV row width does not match the header");
    rows_.push_back(std::move(cells));
}

std::string CsvTable::str() const {
    const auto line = [](const std::vector<std::string>& cells) {
        std::string s;
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) s += ',';
            const bool quote = cells[i].find_first_of(",\"\n") != std::string::npos;
            if (!quote) {
                s += cells[i];
                continue;
            }
            s += '"';
            for (char ch : cells[i]) {
                if (ch == '"') s += '"';
                s += ch;
            }
            s += '"';
        }
        return s + "\n";
    };
    std::string out = line(header_);
    for (const auto& r : rows_) out += line(r);
    return out;
}

nlohmann::ordered_json term_manifest(const HamiltonianSpec& h) {
    nlohmann::ordered_json j;
    j["qubits"] = h.layout.total_qubits();
    j["rows"] = h.layout.n;
    j["depth"] = h.layout.D;
    j["out_scale"] = h.out_scale;
    j["terms"] = nlohmann::ordered_json::array();
    for (const auto& t : h.terms) {
        nlohmann::ordered_json jt;
        jt["kind"] = term_kind_name(t.kind);
        jt["layer"] = t.layer;
        jt["wires"] = t.wires;
        jt["support"] = t.support;
        jt["trace"] = t.block.trace().real();
        j["terms"].push_back(std::move(jt));
    }
    return j;
}

}  // namespace clockless
