#include "clockless/fixtures.hpp"
#include "clockless/fk.hpp"
#include "clockless/io.hpp"
#include "clockless/verify.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace clockless;
using json = nlohmann::ordered_json;

constexpr int kExitCheck = 1;
constexpr int kExitInput = 2;
// Largest grid scan will diagonalize; 2^18 amplitudes keep a Krylov basis near 200 MiB.
constexpr int kScanQubitLimit = 18;
constexpr int kSimulationQubitLimit = 20;

struct RunConfig {
    std::string command;
    std::string circuit;
    std::optional<double> delta;
    std::vector<std::string> delta_layer;
    std::uint64_t seed = 0;
    std::string out = "out";
    std::optional<double> tolerance;
    std::string solver = "auto";
    int k = 1;
    double tol = 1e-10;
    int max_iter = 400;
    double alpha = 0.5;
    double epsilon = 0.1;
    std::string fault_file;
    bool mtx = false;
    std::vector<std::string> suites;
    std::size_t instances = 200;
    std::string replay;
    std::optional<std::vector<double>> grid;
    std::optional<int> inject_term;
    double inject_delta = 0.3;
    int output_wire = 0;
    double beta = 3.0;
};

json to_json(const RunConfig& c) {
    json j;
    j["command"] = c.command;
    j["circuit"] = c.circuit;
    j["delta"] = c.delta ? json(*c.delta) : json(nullptr);
    j["delta_layer"] = c.delta_layer;
    j["seed"] = c.seed;
    j["out"] = c.out;
    j["tolerance"] = c.tolerance ? json(*c.tolerance) : json(nullptr);
    j["solver"] = c.solver;
    j["k"] = c.k;
    j["tol"] = c.tol;
    j["max_iter"] = c.max_iter;
    j["alpha"] = c.alpha;
    j["epsilon"] = c.epsilon;
    j["fault_file"] = c.fault_file;
    j["mtx"] = c.mtx;
    j["suite"] = c.suites;
    j["instances"] = c.instances;
    j["replay"] = c.replay;
    j["grid"] = c.grid ? json(*c.grid) : json(nullptr);
    j["inject_term"] = c.inject_term ? json(*c.inject_term) : json(nullptr);
    j["inject_delta"] = c.inject_delta;
    j["output_wire"] = c.output_wire;
    j["beta"] = c.beta;
    return j;
}

double parse_number(const std::string& text, const std::string& what) {
    double v = 0.0;
    const char* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc() || ptr != end || !std::isfinite(v)) throw InputError("bad number '" + text + "' for " + what);
    return v;
}

std::vector<double> parse_grid(const std::string& text) {
    std::vector<double> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t comma = std::min(text.find(',', start), text.size());
        std::string item = text.substr(start, comma - start);
        item.erase(0, item.find_first_not_of(" \t"));
        item.erase(item.find_last_not_of(" \t") + 1);
        if (!item.empty()) out.push_back(parse_number(item, "--grid"));
        start = comma + 1;
    }
    return out;
}

template <class T>
void read_value(const json& v, T& t) {
    t = v.get<T>();
}

template <class T>
void read_value(const json& v, std::optional<T>& t) {
    t = v.get<T>();
}

// Flags win over the config file; keys match the echoed config.json.
void apply_config_file(const std::string& path, RunConfig& cfg, const CLI::App& app) {
    json j;
    try {
        j = json::parse(read_file(path));
    } catch (const json::parse_error& e) {
        throw InputError(path + ": " + e.what());
    }
    if (!j.is_object()) throw InputError(path + ": config must be a JSON object", "/");
    auto set = [&](const std::string& key, const std::string& flag, auto& target) {
        if (!j.contains(key) || (!flag.empty() && app.count(flag) > 0)) return;
        try {
            if (j[key].is_null()) return;
            read_value(j[key], target);
        } catch (const json::exception&) {
            throw InputError(path + ": wrong type for '" + key + "'", "/" + key);
        }
    };
    static const std::vector<std::string> known{
        "command", "circuit", "delta", "delta_layer", "seed", "out", "tolerance", "solver", "k", "tol", "max_iter",
        "alpha", "epsilon", "fault_file", "mtx", "suite", "instances", "replay", "grid", "inject_term",
        "inject_delta", "output_wire", "beta"};
    for (const auto& [key, value] : j.items())
        if (std::find(known.begin(), known.end(), key) == known.end())
            throw InputError(path + ": unknown key '" + key + "'", "/" + key);
    set("circuit", "--circuit", cfg.circuit);
    set("delta", "--delta", cfg.delta);
    set("delta_layer", "--delta-layer", cfg.delta_layer);
    set("seed", "--seed", cfg.seed);
    set("out", "--out", cfg.out);
    set("tolerance", "--tolerance", cfg.tolerance);
    if (app.count("--dense") == 0 && app.count("--iterative") == 0) set("solver", "", cfg.solver);
    set("k", "--k", cfg.k);
    set("tol", "--tol", cfg.tol);
    set("max_iter", "--max-iter", cfg.max_iter);
    set("alpha", "--alpha", cfg.alpha);
    set("epsilon", "--epsilon", cfg.epsilon);
    set("fault_file", "--fault-file", cfg.fault_file);
    set("mtx", "--mtx", cfg.mtx);
    set("suite", "--suite", cfg.suites);
    set("instances", "--instances", cfg.instances);
    set("replay", "--replay", cfg.replay);
    set("grid", "--grid", cfg.grid);
    set("inject_term", "--inject-term", cfg.inject_term);
    set("inject_delta", "--inject-delta", cfg.inject_delta);
    set("output_wire", "--output-wire", cfg.output_wire);
    set("beta", "--beta", cfg.beta);
}

std::vector<double> schedule(const RunConfig& cfg, int depth, double delta) {
    std::vector<double> d = uniform_deltas(depth, delta);
    for (const std::string& item : cfg.delta_layer) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw InputError("--delta-layer expects l=v, got '" + item + "'");
        const double l = parse_number(item.substr(0, eq), "--delta-layer");
        if (l != std::floor(l) || l < 0 || l >= depth)
            throw InputError("--delta-layer layer '" + item.substr(0, eq) + "' outside [0, " +
                             std::to_string(depth) + ")");
        d[std::size_t(l)] = parse_number(item.substr(eq + 1), "--delta-layer");
    }
    check_deltas(d, depth, false);
    return d;
}

std::string join(const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ";" : "") + format_double(v[i]);
    return s;
}

std::optional<SolverMethod> solver_method(const RunConfig& cfg) {
    if (cfg.solver == "dense") return SolverMethod::dense;
    if (cfg.solver == "iterative") return SolverMethod::iterative;
    if (cfg.solver == "auto") return std::nullopt;
    throw InputError("solver must be auto, dense or iterative", "/solver");
}

LanczosOptions lanczos_options(const RunConfig& cfg) {
    LanczosOptions o;
    o.k = cfg.k;
    o.tol = cfg.tol;
    o.max_restarts = cfg.max_iter;
    o.seed = cfg.seed;
    return o;
}

LayeredCircuit require_circuit(const RunConfig& cfg) {
    if (cfg.circuit.empty()) throw InputError(cfg.command + " needs --circuit");
    return load_circuit(cfg.circuit);
}

struct Outputs {
    std::vector<std::pair<std::string, std::string>> files;
    void add(std::string name, std::string bytes) { files.emplace_back(std::move(name), std::move(bytes)); }
};

std::string dump(const json& j) { return j.dump(2) + "\n"; }

int cmd_build(const RunConfig& cfg, Outputs& out) {
    const LayeredCircuit c = require_circuit(cfg);
    const auto deltas = schedule(cfg, c.depth(), cfg.delta.value_or(0.5));
    const PepsState s = build_peps(c, zero_witness(c), deltas);
    const HamiltonianSpec h = parent_hamiltonian(c, deltas);
    json m;
    m["circuit"] = cfg.circuit;
    m["deltas"] = deltas;
    m["qubits"] = s.layout.total_qubits();
    m["state_file"] = "state.bin";
    m["state_format"] = "float64 little-endian, re/im interleaved, qubit q = bit q of the index";
    m["raw_norm"] = s.raw_norm;
    m["hamiltonian"] = term_manifest(h);
    out.add("state.bin", state_bytes(s.amplitudes));
    out.add("manifest.json", dump(m));
    if (cfg.mtx) {
        if (s.layout.total_qubits() > kSimulationQubitLimit) throw InputError("--mtx limited to 20 qubits");
        out.add("hamiltonian.mtx", matrix_market(assemble(h).to_sparse()));
    }
    std::cout << "build: " << s.layout.total_qubits() << " qubits, " << h.term_count() << " terms\n";
    return 0;
}

int cmd_verify(const RunConfig& cfg, Outputs& out) {
    struct Job {
        std::string name;
        LayeredCircuit circuit;
        std::vector<double> deltas;
    };
    std::vector<Job> jobs;
    if (!cfg.circuit.empty()) {
        const LayeredCircuit c = require_circuit(cfg);
        jobs.push_back({std::filesystem::path(cfg.circuit).stem().string(), c,
                        schedule(cfg, c.depth(), cfg.delta.value_or(0.5))});
    } else {
        for (const auto& f : fixtures::ground_state_fixtures()) {
            const std::vector<double> grid = cfg.delta ? std::vector<double>{*cfg.delta} : fixtures::fixture_deltas();
            for (double d : grid) jobs.push_back({f.name, f.circuit, schedule(cfg, f.circuit.depth(), d)});
        }
    }
    VerifyOptions opts;
    opts.tolerance = cfg.tolerance;
    opts.method = solver_method(cfg);
    opts.lanczos = lanczos_options(cfg);
    if (cfg.inject_term) opts.injected_delta = std::pair{*cfg.inject_term, cfg.inject_delta};

    CsvTable csv({"circuit", "delta", "check", "location", "value", "tolerance", "pass", "category"});
    std::optional<CheckResult> first_failure;
    std::size_t failures = 0;
    for (const Job& job : jobs)
        for (const CheckResult& r : verify_circuit(job.name, job.circuit, job.deltas, opts)) {
            csv.add_row({r.circuit, format_double(r.delta), r.check, r.location, format_double(r.value),
                         format_double(r.tolerance), r.pass ? "true" : "false", r.category});
            if (!r.pass) {
                ++failures;
                if (!first_failure) first_failure = r;
            }
        }
    out.add("verify.csv", csv.str());
    std::cout << "verify: " << csv.rows() << " checks, " << failures << " failed\n";
    if (!first_failure) return 0;
    const CheckResult& f = *first_failure;
    std::cerr << "verify: check '" << f.check << "' failed on " << f.circuit << " at delta " << format_double(f.delta)
              << (f.location.empty() ? "" : " (" + f.location + ")") << ": " << format_double(f.value) << " > "
              << format_double(f.tolerance) << " [" << f.category << "]\n";
    return kExitCheck;
}

int cmd_scan(const RunConfig& cfg, Outputs& out) {
    const LayeredCircuit c = cfg.circuit.empty() ? fixtures::identity_circuit(1, 1, 1) : require_circuit(cfg);
    const std::vector<double> grid = cfg.grid.value_or(std::vector<double>{0.2, 0.35, 0.5, 0.65, 0.8});
    const int qubits = layout_of(c).total_qubits();
    if (!grid.empty() && qubits > kScanQubitLimit) {
        const double mib = std::ldexp(16.0, qubits) / (1024.0 * 1024.0);
        throw InputError("scan grid needs " + std::to_string(qubits) + " qubits: 2^" + std::to_string(qubits) +
                         " amplitudes, about " + std::to_string(static_cast<long long>(mib)) +
                         " MiB per vector and " + std::to_string(static_cast<long long>(40 * mib)) +
                         " MiB for the Krylov basis; limit is " + std::to_string(kScanQubitLimit) + " qubits");
    }
    const auto method = solver_method(cfg);
    CsvTable csv({"delta", "schedule", "gap", "lowest", "ground_dim", "bound_product", "teleport_coefficient",
                  "overlap_bound", "method"});
    for (double d : grid) {
        const auto deltas = schedule(cfg, c.depth(), d);
        const GapReport g = gap_vs_bound(c, deltas, {}, method, lanczos_options(cfg));
        csv.add_row({format_double(d), join(deltas), format_double(g.gap), format_double(g.lowest),
                     std::to_string(g.ground_dim), format_double(g.bound_product),
                     format_double(teleportation_coefficient(deltas[0])),
                     format_double(1.0 - std::pow(deltas[0], 6) / 2.0),
                     g.method == SolverMethod::dense ? "dense" : "iterative"});
    }
    out.add("scan.csv", csv.str());
    std::cout << "scan: " << csv.rows() << " grid points\n";
    return 0;
}

json combinatorial_report(const RunConfig& cfg, bool& ok) {
    const LayeredCircuit c = require_circuit(cfg);
    const FaultPattern f = load_fault_pattern(cfg.fault_file);
    const auto deltas = schedule(cfg, c.depth(), cfg.delta.value_or(0.5));
    const PepsState s = build_combinatorial_state(c, deltas, f, {}, zero_witness(c));
    const auto e = energy(parent_hamiltonian(c, deltas), s.amplitudes, 1e-9);
    const Decomposition dec = extract_decomposition(s.amplitudes, c, deltas, f);
    const std::size_t faults = f.inputs.size() + f.gates.size();
    const int locations = c.a + static_cast<int>(gate_sequence(c).size());

    json j;
    j["faults"] = faults;
    j["fault_budget"] = static_cast<int>(std::floor(cfg.epsilon * locations));
    j["violations"] = e.violations;
    j["energy"] = e.total;
    j["decomposition_terms"] = dec.terms.size();
    j["decomposition_fidelity"] = dec.fidelity;
    const int threshold = threshold_from_alpha(cfg.alpha, c.n);
    j["alpha"] = cfg.alpha;
    j["threshold"] = threshold;
    json cols = json::array();
    for (int l = 0; l < c.depth(); ++l) {
        std::vector<int> sites;
        for (int r = 0; r < c.n; ++r) sites.push_back(s.layout.site_index(l, r));
        json col;
        col["layer"] = l;
        col["high_weight_mass"] = high_weight_mass(s.layout, s.amplitudes, threshold, sites);
        col["binomial_tail"] = binomial_tail(c.n, threshold, deltas[std::size_t(l)]);
        cols.push_back(std::move(col));
    }
    j["columns"] = std::move(cols);
    ok = e.violations.size() == faults && dec.fidelity >= 1.0 - 1e-12;
    return j;
}

std::pair<LemmaSuite, std::uint64_t> parse_replay(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) throw InputError("--replay expects suite:index");
    std::uint64_t index = 0;
    const std::string idx = text.substr(colon + 1);
    const auto [ptr, ec] = std::from_chars(idx.data(), idx.data() + idx.size(), index);
    if (ec != std::errc() || ptr != idx.data() + idx.size()) throw InputError("bad replay index '" + idx + "'");
    return {suite_from_name(text.substr(0, colon)), index};
}

json instance_json(const SuiteInstance& r) {
    json j;
    j["suite"] = suite_name(r.suite);
    j["seed"] = r.seed;
    j["index"] = r.index;
    j["params"] = json::parse(r.params);
    j["lhs"] = r.lhs;
    j["rhs"] = r.rhs;
    j["slack"] = r.slack;
    j["holds"] = r.holds;
    return j;
}

int cmd_soundness(const RunConfig& cfg, Outputs& out) {
    if (!cfg.replay.empty()) {
        const auto [suite, index] = parse_replay(cfg.replay);
        const SuiteInstance r = run_lemma_instance(suite, cfg.seed, index);
        out.add("replay.json", dump(instance_json(r)));
        std::cout << instance_json(r).dump() << "\n";
        if (r.holds) return 0;
        std::cerr << "soundness: " << cfg.replay << " violated, slack " << format_double(r.slack) << "\n";
        return kExitCheck;
    }
    std::vector<LemmaSuite> suites;
    for (const auto& name : cfg.suites) suites.push_back(suite_from_name(name));
    if (suites.empty()) suites = all_suites();

    CsvTable csv({"suite", "seed", "index", "params", "lhs", "rhs", "slack", "holds"});
    json manifest;
    manifest["seed"] = cfg.seed;
    manifest["instances"] = cfg.instances;
    manifest["replay"] = "clockless soundness --seed <seed> --replay <suite>:<index>";
    manifest["suites"] = json::array();
    std::string first_violation;
    for (LemmaSuite s : suites) {
        const auto runs = run_lemma_suite(s, cfg.seed, cfg.instances);
        std::size_t violations = 0;
        double min_slack = runs.empty() ? 0.0 : runs.front().slack;
        for (const auto& r : runs) {
            csv.add_row({suite_name(s), std::to_string(r.seed), std::to_string(r.index), r.params,
                         format_double(r.lhs), format_double(r.rhs), format_double(r.slack),
                         r.holds ? "true" : "false"});
            min_slack = std::min(min_slack, r.slack);
            if (!r.holds) {
                ++violations;
                if (first_violation.empty()) first_violation = suite_name(s) + ":" + std::to_string(r.index);
            }
        }
        json js;
        js["suite"] = suite_name(s);
        js["instances"] = runs.size();
        js["violations"] = violations;
        js["min_slack"] = min_slack;
        manifest["suites"].push_back(std::move(js));
    }
    bool combinatorial_ok = true;
    if (!cfg.circuit.empty() && !cfg.fault_file.empty()) {
        const json report = combinatorial_report(cfg, combinatorial_ok);
        out.add("combinatorial.json", dump(report));
        if (!combinatorial_ok)
            std::cerr << "soundness: combinatorial state violates " << report["violations"].size() << " terms for "
                      << report["faults"].get<std::size_t>() << " faults\n";
    }
    out.add("soundness.csv", csv.str());
    out.add("soundness_manifest.json", dump(manifest));
    std::cout << "soundness: " << csv.rows() << " instances\n";
    if (!first_violation.empty()) {
        std::cerr << "soundness: first violation " << first_violation << "\n";
        return kExitCheck;
    }
    return combinatorial_ok ? 0 : kExitCheck;
}

int cmd_fk(const RunConfig& cfg, Outputs& out) {
    const LayeredCircuit c = require_circuit(cfg);
    if (cfg.output_wire < 0 || cfg.output_wire >= c.n) throw InputError("--output-wire outside the circuit");
    const DegreeReduced r = degree_reduce(c);
    const ClockHamiltonian h = build_modified_fk(r.circuit, r.output_wires()[std::size_t(cfg.output_wire)]);

    const auto deg = h.degree_table();
    const auto loc = h.term_locality();
    CsvTable table({"qubit", "role", "index", "degree"});
    for (int q = 0; q < h.total_qubits(); ++q) {
        const bool clock = q < h.steps;
        table.add_row({std::to_string(q), clock ? "clock" : "data", std::to_string(clock ? q + 1 : q - h.steps),
                       std::to_string(deg[std::size_t(q)])});
    }
    json terms = json::array();
    for (const auto& t : h.terms) {
        json jt;
        jt["kind"] = fk_kind_name(t.kind);
        jt["time"] = t.time;
        jt["wire"] = t.wire;
        jt["support"] = t.op.support;
        terms.push_back(std::move(jt));
    }

    const int max_degree = deg.empty() ? 0 : *std::max_element(deg.begin(), deg.end());
    const int max_locality = loc.empty() ? 0 : *std::max_element(loc.begin(), loc.end());
    const double tol = cfg.tolerance.value_or(1e-10);
    json report;
    report["steps"] = h.steps;
    report["data_qubits"] = h.data_qubits;
    report["ancillas"] = h.ancillas;
    report["output_wire"] = h.output_wire;
    report["terms"] = h.terms.size();
    report["max_degree"] = max_degree;
    report["max_locality"] = max_locality;
    std::string failure;
    if (max_degree > 7) failure = "degree " + std::to_string(max_degree) + " > 7";
    if (max_locality > 5 && failure.empty()) failure = "locality " + std::to_string(max_locality) + " > 5";
    if (h.total_qubits() <= kSimulationQubitLimit) {
        const Vec psi = history_state(h, zero_witness(r.circuit));
        double e = 0.0;
        for (const auto& t : h.terms)
            if (t.kind == FkTermKind::propagation || t.kind == FkTermKind::clock) e += expectation(t.op, psi);
        report["history_energy"] = e;
        if (e > tol && failure.empty()) failure = "history energy " + format_double(e);
        if (h.steps >= 2) {
            std::string bits(std::size_t(h.steps), '0');
            bits[1] = '1';
            const auto v = violated_terms(h, clock_basis_state(h, bits, Vec::Unit(Eigen::Index(1) << h.data_qubits, 0)));
            json inv;
            inv["clock"] = bits;
            inv["violated"] = v;
            std::vector<std::string> kinds;
            for (int i : v) kinds.push_back(fk_kind_name(h.terms[std::size_t(i)].kind));
            inv["kinds"] = kinds;
            report["invalid_clock"] = std::move(inv);
        }
    }
    if (h.op().dim() <= kDenseLimit) report["ground_energy"] = dense_spectrum(h.op(), false).eigenvalues[0];

    out.add("fk_circuit.json", dump(circuit_to_json(r.circuit)));
    out.add("fk_degrees.csv", table.str());
    out.add("fk_terms.json", dump(terms));
    out.add("fk_report.json", dump(report));
    std::cout << "fk: " << h.steps << " clock qubits, " << h.data_qubits << " data qubits, max degree " << max_degree
              << "\n";
    if (failure.empty()) return 0;
    std::cerr << "fk: " << failure << "\n";
    return kExitCheck;
}

int cmd_swapqma(const RunConfig& cfg, Outputs& out) {
    const LayeredCircuit c = require_circuit(cfg);
    if (cfg.output_wire < 0 || cfg.output_wire >= c.n) throw InputError("--output-wire outside the circuit");
    const SwapTestVerifier v = build_swap_test_verifier(c, cfg.output_wire);
    json report;
    report["steps"] = v.steps;
    report["wires"] = v.circuit.n;
    report["depth"] = v.circuit.depth();
    report["registers"] = v.registers;
    report["test_ancillas"] = v.test_ancillas;
    report["measured_wires"] = v.plan.wires;
    report["expected"] = v.plan.expected;
    report["or_tree_depth"] = v.plan.or_tree_depth;
    report["fanout_depth"] = v.fanout_depth;
    report["beta"] = cfg.beta;
    report["soundness_target"] = swap_soundness_target(v.steps, cfg.beta);
    if (v.circuit.n <= kSimulationQubitLimit)
        report["honest_accept"] =
            swap_verifier_accept_probability(v, swap_honest_input(v, c, zero_witness(c)));
    out.add("swap_verifier.json", dump(circuit_to_json(v.circuit)));
    out.add("swap_report.json", dump(report));
    std::cout << "swapqma: " << v.circuit.n << " wires, depth " << v.circuit.depth() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Clock-free circuit-to-Hamiltonian builder and checker"};
    app.fallthrough();
    app.require_subcommand(1);
    RunConfig cfg;
    std::string config_file, grid_text;
    std::optional<double> delta, tolerance;
    std::optional<int> inject_term;
    bool dense = false, iterative = false;

    app.add_option("--config", config_file, "JSON config; flags override its keys");
    app.add_option("--circuit", cfg.circuit, "circuit JSON file");
    app.add_option("--delta", delta, "uniform injectivity parameter");
    app.add_option("--delta-layer", cfg.delta_layer, "per-layer override l=v")->take_all();
    app.add_option("--seed", cfg.seed);
    app.add_option("--out", cfg.out, "output directory");
    app.add_option("--tolerance", tolerance, "override every check tolerance");
    auto* dense_flag = app.add_flag("--dense", dense, "dense eigensolver");
    app.add_flag("--iterative", iterative, "Lanczos eigensolver")->excludes(dense_flag);
    app.add_option("--k", cfg.k, "eigenpairs for the iterative solver");
    app.add_option("--tol", cfg.tol, "iterative residual tolerance");
    app.add_option("--max-iter", cfg.max_iter, "iterative restart limit");
    app.add_option("--alpha", cfg.alpha, "high-weight threshold fraction");
    app.add_option("--epsilon", cfg.epsilon, "fault budget fraction");
    app.add_option("--fault-file", cfg.fault_file, "fault pattern JSON");
    app.add_flag("--mtx", cfg.mtx, "also write the Hamiltonian in Matrix Market form");
    app.add_option("--suite", cfg.suites, "lemma suite (repeatable)");
    app.add_option("--instances", cfg.instances, "instances per suite");
    app.add_option("--replay", cfg.replay, "rerun one instance, suite:index");
    app.add_option("--grid", grid_text, "comma-separated delta values");
    app.add_option("--inject-term", inject_term, "rebuild this term with --inject-delta before the energy check");
    app.add_option("--inject-delta", cfg.inject_delta);
    app.add_option("--output-wire", cfg.output_wire);
    app.add_option("--beta", cfg.beta, "soundness exponent of the SWAP verifier");

    const std::vector<std::pair<std::string, std::string>> verbs{
        {"build", "PEPS state, term manifest and optional Matrix Market Hamiltonian"},
        {"verify", "closed-form, frustration-freeness and ground-space checks"},
        {"scan", "spectral gap over a delta grid"},
        {"soundness", "randomized lemma suites and combinatorial fault states"},
        {"fk", "degree-reduced clock Hamiltonian"},
        {"swapqma", "SWAP-test verifier circuit"}};
    for (const auto& [name, help] : verbs) app.add_subcommand(name, help);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kExitInput;
    }

    cfg.command = app.get_subcommands().front()->get_name();
    if (delta) cfg.delta = delta;
    if (tolerance) cfg.tolerance = tolerance;
    if (inject_term) cfg.inject_term = inject_term;
    if (dense) cfg.solver = "dense";
    if (iterative) cfg.solver = "iterative";

    Outputs out;
    int code = 0;
    try {
        if (app.count("--grid")) cfg.grid = parse_grid(grid_text);
        if (!config_file.empty()) apply_config_file(config_file, cfg, app);
        if (!cfg.delta && !(cfg.command == "verify" && cfg.circuit.empty())) cfg.delta = 0.5;
        if (cfg.command == "build") code = cmd_build(cfg, out);
        else if (cfg.command == "verify") code = cmd_verify(cfg, out);
        else if (cfg.command == "scan") code = cmd_scan(cfg, out);
        else if (cfg.command == "soundness") code = cmd_soundness(cfg, out);
        else if (cfg.command == "fk") code = cmd_fk(cfg, out);
        else code = cmd_swapqma(cfg, out);
        out.add("config.json", dump(to_json(cfg)));
        const std::filesystem::path dir(cfg.out);
        std::filesystem::create_directories(dir);
        for (const auto& [name, bytes] : out.files) write_atomic(dir / name, bytes);
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCheck;
    }
    return code;
}
