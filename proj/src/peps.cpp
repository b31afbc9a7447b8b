#include "clockless/peps.hpp"

#include "clockless/rng.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace clockless {

int GridLayout::qubit(int row, int col) const {
    if (row < 0 || row >= n || col < 0 || col >= columns())
        throw std::invalid_argument("grid position (" + std::to_string(row) + ", " + std::to_string(col) +
                                    ") outside layout");
    return row * columns() + col;
}

Qubits GridLayout::site_qubits(int layer, int row) const {
    if (layer < 0 || layer >= D) throw std::invalid_argument("layer " + std::to_string(layer) + " outside [0, D)");
    return {qubit(row, 2 * layer), qubit(row, 2 * layer + 1)};
}

Qubits GridLayout::column_register(int col) const {
    Qubits q;
    for (int w = n - 1; w >= 0; --w) q.push_back(qubit(w, col));
    return q;
}

Qubits GridLayout::output_qubits(const Qubits& wires) const {
    Qubits q;
    for (int w : wires) q.push_back(qubit(w, 2 * D));
    return q;
}

GridLayout layout_of(const LayeredCircuit& c) { return GridLayout{c.n, c.depth()}; }

std::vector<double> uniform_deltas(int depth, double delta) { return std::vector<double>(std::size_t(depth), delta); }

void check_deltas(std::span<const double> deltas, int depth, bool allow_zero) {
    if (static_cast<int>(deltas.size()) != depth)
        throw std::invalid_argument("expected " + std::to_string(depth) + " layer deltas, got " +
                                    std::to_string(deltas.size()));
    for (double d : deltas)
        if (!std::isfinite(d) || d > 1.0 || d < 0.0 || (!allow_zero && d == 0.0))
            throw std::invalid_argument("delta " + std::to_string(d) + " outside " + (allow_zero ? "[0, 1]" : "(0, 1]"));
}

Vec choi_state(const Mat& u) {
    const int k = qubit_count(u.rows());
    const auto d = u.rows();
    Vec v = Vec::Zero(d * d);
    const double scale = 1.0 / std::sqrt(static_cast<double>(d));
    for (Eigen::Index x = 0; x < d; ++x)
        for (Eigen::Index y = 0; y < d; ++y) v((x << k) | y) = u(y, x) * scale;
    return v;
}

Qubits choi_qubits(const GridLayout& g, int layer, const Qubits& wires) {
    Qubits q;
    for (int w : wires) q.push_back(g.qubit(w, 2 * layer + 1));
    for (int w : wires) q.push_back(g.qubit(w, 2 * layer + 2));
    return q;
}

PepsState base_state(const LayeredCircuit& c, const Vec& xi) {
    require_valid(c);
    const GridLayout g = layout_of(c);
    std::vector<std::pair<Vec, Qubits>> factors;
    factors.emplace_back(input_state(c, xi), g.column_register(0));
    for (int l = 0; l < c.depth(); ++l)
        for (const Gate& gate : c.layers[std::size_t(l)])
            factors.emplace_back(choi_state(gate.unitary), choi_qubits(g, l, gate.wires));
    PepsState s{g, product_state(factors, g.total_qubits()), {}, 1.0};
    s.raw_norm = s.amplitudes.norm();
    s.amplitudes /= s.raw_norm;
    return s;
}

PepsState apply_injective_maps(const PepsState& base, std::span<const double> deltas) {
    check_deltas(deltas, base.layout.D, true);
    PepsState s = base;
    s.deltas.assign(deltas.begin(), deltas.end());
    for (int l = 0; l < base.layout.D; ++l) {
        const Mat q = perturbed_projector(deltas[std::size_t(l)]);
        for (int r = 0; r < base.layout.n; ++r) s.amplitudes = apply_on(q, base.layout.site_qubits(l, r), s.amplitudes);
    }
    s.raw_norm = base.raw_norm * s.amplitudes.norm();
    s.amplitudes.normalize();
    return s;
}

PepsState build_peps(const LayeredCircuit& c, const Vec& xi, std::span<const double> deltas) {
    return apply_injective_maps(base_state(c, xi), deltas);
}

Vec noisy_circuit(const LayeredCircuit& c, const PauliWord& word, const Vec& state) {
    if (word.size() != std::size_t(c.n * c.depth())) throw std::invalid_argument("Pauli word length mismatch");
    Vec s = state;
    for (int l = 0; l < c.depth(); ++l) {
        for (int r = 0; r < c.n; ++r) {
            const Pauli p = word[std::size_t(l * c.n + r)];
            if (p != Pauli::I) s = apply_on(pauli_matrix(p), {r}, s);
        }
        s = apply_layer(c, l, s);
    }
    return s;
}

namespace {

// Weight polynomial of prod_sites (1 + 3 delta^2 x); entry w is the mass of weight w.
std::vector<double> weight_masses(const GridLayout& g, std::span<const double> deltas) {
    std::vector<double> poly{1.0};
    for (int l = 0; l < g.D; ++l)
        for (int r = 0; r < g.n; ++r) {
            const double e = 3.0 * deltas[std::size_t(l)] * deltas[std::size_t(l)];
            std::vector<double> next(poly.size() + 1, 0.0);
            for (std::size_t w = 0; w < poly.size(); ++w) {
                next[w] += poly[w];
                next[w + 1] += e * poly[w];
            }
            poly = std::move(next);
        }
    return poly;
}

}  // namespace

Expansion expansion(const LayeredCircuit& c, const Vec& xi, std::span<const double> deltas,
                    std::optional<int> max_weight, std::size_t budget) {
    require_valid(c);
    const GridLayout g = layout_of(c);
    check_deltas(deltas, g.D, true);
    const int sites = g.site_count();
    const int wmax = std::min(max_weight.value_or(sites), sites);
    if (wmax < 0) throw std::invalid_argument("maximum weight must be non-negative");

    const auto masses = weight_masses(g, deltas);
    Expansion e;
    e.layout = g;
    for (double m : masses) e.unscaled_norm2 += m;
    double dropped = 0.0;
    for (std::size_t w = std::size_t(wmax) + 1; w < masses.size(); ++w) dropped += masses[w];
    e.truncated_mass = dropped / e.unscaled_norm2;

    // Term count sum_{w <= wmax} C(sites, w) 3^w.
    double count = 0.0, binom = 1.0;
    for (int w = 0; w <= wmax; ++w) {
        count += binom * std::pow(3.0, w);
        binom = binom * (sites - w) / (w + 1);
    }
    if (count > static_cast<double>(budget))
        throw std::length_error("expansion needs " + std::to_string(static_cast<long long>(count)) +
                                " terms, budget is " + std::to_string(budget));

    const Vec in = input_state(c, xi);
    const std::uint64_t words = std::uint64_t(1) << (2 * sites);
    for (std::uint64_t code = 0; code < words; ++code) {
        PauliWord word = PauliWord::from_code(code, std::size_t(sites));
        if (word.weight() > wmax) continue;
        double coef = 1.0;
        for (int s = 0; s < sites; ++s)
            if (word[std::size_t(s)] != Pauli::I) coef *= deltas[std::size_t(s / g.n)];
        if (coef == 0.0) continue;
        Vec out = noisy_circuit(c, word, in);
        e.terms.push_back({std::move(word), coef, std::move(out)});
    }
    return e;
}

Vec reassemble(const Expansion& e) {
    const GridLayout& g = e.layout;
    Vec total = Vec::Zero(Eigen::Index(1) << g.total_qubits());
    std::vector<Vec> bells;
    for (Pauli p : kPaulis) bells.push_back(bell_state(p));
    for (const auto& t : e.terms) {
        std::vector<std::pair<Vec, Qubits>> f;
        for (int s = 0; s < g.site_count(); ++s) f.emplace_back(bells[std::size_t(t.word[std::size_t(s)])], g.site_qubits(s));
        f.emplace_back(t.output, g.output_register());
        total += t.coefficient * product_state(f, g.total_qubits());
    }
    const double nrm = total.norm();
    if (nrm == 0.0) throw std::invalid_argument("expansion has no terms");
    return total / nrm;
}

Mat reduced_density(const PepsState& s, const Qubits& qubits) { return reduced_density(s.amplitudes, qubits); }

double contract_observable(const PepsState& s, const LocalOperator& obs) {
    if ((obs.block - obs.block.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
        throw std::invalid_argument("observable is not Hermitian");
    const Mat rho = reduced_density(s.amplitudes, obs.support);
    return (rho * obs.block).trace().real();
}

std::vector<double> pauli_distribution(const GridLayout& g, const Vec& state, const std::vector<int>& sites) {
    const Mat bdag = bell_basis().adjoint();
    Vec v = state;
    std::vector<Qubits> qs;
    for (int s : sites) {
        qs.push_back(g.site_qubits(s));
        v = apply_on(bdag, qs.back(), v);
    }
    std::vector<double> dist(std::size_t(1) << (2 * sites.size()), 0.0);
    for (Eigen::Index idx = 0; idx < v.size(); ++idx) {
        std::uint64_t code = 0;
        for (const Qubits& q : qs) code = code * 4 + ((std::uint64_t(idx) >> q[0]) & 1U) * 2 + ((std::uint64_t(idx) >> q[1]) & 1U);
        dist[code] += std::norm(v(idx));
    }
    return dist;
}

std::vector<PauliWord> sample_pauli_patterns(const PepsState& s, std::size_t count, std::uint64_t seed) {
    std::vector<int> sites(std::size_t(s.layout.site_count()));
    for (std::size_t i = 0; i < sites.size(); ++i) sites[i] = static_cast<int>(i);
    auto dist = pauli_distribution(s.layout, s.amplitudes, sites);
    for (std::size_t i = 1; i < dist.size(); ++i) dist[i] += dist[i - 1];
    const CounterRng rng{seed, 0};
    std::vector<PauliWord> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double u = rng.uniform(i) * dist.back();
        auto it = std::upper_bound(dist.begin(), dist.end(), u);
        const auto code = static_cast<std::uint64_t>(std::min<std::ptrdiff_t>(it - dist.begin(), std::ptrdiff_t(dist.size()) - 1));
        out.push_back(PauliWord::from_code(code, sites.size()));
    }
    return out;
}

double site_error_rate(double delta) { return 3.0 * delta * delta / (1.0 + 3.0 * delta * delta); }

Mat depolarize(const Mat& rho, int wire, double p) {
    const int n = qubit_count(rho.rows());
    Mat out = (1.0 - 3.0 * p) * rho;
    for (Pauli q : {Pauli::X, Pauli::XZ, Pauli::Z}) {
        const Mat e = embed(pauli_matrix(q), {wire}, n);
        out += p * e * rho * e.adjoint();
    }
    return out;
}

Mat depolarized_register(const Vec& input, std::span<const double> deltas) {
    const int n = qubit_count(input.size());
    Mat rho = input * input.adjoint();
    for (double d : deltas)
        for (int w = 0; w < n; ++w) rho = depolarize(rho, w, site_error_rate(d) / 3.0);
    return rho;
}

double binomial_tail(int sites, int threshold, double delta) {
    const double mu = site_error_rate(delta);
    double tail = 0.0, binom = 1.0;
    for (int w = 0; w <= sites; ++w) {
        if (w >= threshold) tail += binom * std::pow(mu, w) * std::pow(1.0 - mu, sites - w);
        binom = binom * (sites - w) / (w + 1);
    }
    return tail;
}

}  // namespace clockless
