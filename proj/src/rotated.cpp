#include "clockless/rotated.hpp"

#include "clockless/rng.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace clockless {

RotationUnitary::RotationUnitary(LayeredCircuit c) : circuit_(std::move(c)), layout_(layout_of(circuit_)) {
    require_valid(circuit_);
}

Vec RotationUnitary::apply(const Vec& state, Direction dir) const {
    const GridLayout& g = layout_;
    if (state.size() != (Eigen::Index(1) << g.total_qubits())) throw std::invalid_argument("state does not match grid");
    const Mat b = bell_basis();
    const Mat bdag = b.adjoint();
    Vec v = state;
    std::vector<Qubits> sites;
    for (int s = 0; s < g.site_count(); ++s) {
        sites.push_back(g.site_qubits(s));
        v = apply_on(bdag, sites.back(), v);
    }
    const Qubits out = g.output_register();
    const auto offs = local_offsets(out);
    const auto rdim = static_cast<Eigen::Index>(offs.size());
    const std::size_t nsites = sites.size();
    Vec reg(rdim);
    for_each_base(static_cast<std::uint64_t>(v.size()), support_mask(out), [&](std::uint64_t base) {
        PauliWord word(nsites);
        for (std::size_t s = 0; s < nsites; ++s)
            word[s] = static_cast<Pauli>(((base >> sites[s][0]) & 1U) * 2 + ((base >> sites[s][1]) & 1U));
        for (Eigen::Index i = 0; i < rdim; ++i) reg(i) = v(Eigen::Index(base + offs[std::size_t(i)]));
        if (dir == Direction::forward) {
            reg = noisy_circuit(circuit_, word, reg);
        } else {
            for (int l = circuit_.depth() - 1; l >= 0; --l) {
                for (const Gate& gate : circuit_.layers[std::size_t(l)])
                    if (!gate.is_identity()) reg = apply_on(gate.unitary.adjoint(), gate.wires, reg);
                for (int r = 0; r < g.n; ++r) {
                    const Pauli p = word[std::size_t(l * g.n + r)];
                    if (p != Pauli::I) reg = apply_on(Mat(pauli_matrix(p).adjoint()), {r}, reg);
                }
            }
        }
        for (Eigen::Index i = 0; i < rdim; ++i) v(Eigen::Index(base + offs[std::size_t(i)])) = reg(i);
    });
    for (const Qubits& s : sites) v = apply_on(b, s, v);
    return v;
}

Mat RotationUnitary::apply(const Mat& states, Direction dir) const {
    const GridLayout& g = layout_;
    if (states.rows() != (Eigen::Index(1) << g.total_qubits())) throw std::invalid_argument("states do not match grid");
    using RowMat = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    const Mat b = bell_basis();
    std::vector<Qubits> sites;
    for (int s = 0; s < g.site_count(); ++s) sites.push_back(g.site_qubits(s));
    const auto rotate_sites = [&](RowMat& m, const Mat& op) {
        RowMat in(4, m.cols()), res(4, m.cols());
        for (const Qubits& s : sites) {
            const auto o = local_offsets(s);
            for_each_base(static_cast<std::uint64_t>(m.rows()), support_mask(s), [&](std::uint64_t base) {
                for (Eigen::Index i = 0; i < 4; ++i) in.row(i) = m.row(Eigen::Index(base + o[std::size_t(i)]));
                res.noalias() = op * in;
                for (Eigen::Index i = 0; i < 4; ++i) m.row(Eigen::Index(base + o[std::size_t(i)])) = res.row(i);
            });
        }
    };
    RowMat m = states;
    rotate_sites(m, b.adjoint());
    const Qubits out = g.output_register();
    const auto offs = local_offsets(out);
    const auto rdim = static_cast<Eigen::Index>(offs.size());
    const std::size_t nsites = sites.size();
    RowMat block(rdim, m.cols()), res(rdim, m.cols());
    Mat w(rdim, rdim);
    for_each_base(static_cast<std::uint64_t>(m.rows()), support_mask(out), [&](std::uint64_t base) {
        PauliWord word(nsites);
        for (std::size_t s = 0; s < nsites; ++s)
            word[s] = static_cast<Pauli>(((base >> sites[s][0]) & 1U) * 2 + ((base >> sites[s][1]) & 1U));
        for (Eigen::Index j = 0; j < rdim; ++j) w.col(j) = noisy_circuit(circuit_, word, Vec::Unit(rdim, j));
        if (dir == Direction::adjoint) w.adjointInPlace();
        for (Eigen::Index i = 0; i < rdim; ++i) block.row(i) = m.row(Eigen::Index(base + offs[std::size_t(i)]));
        res.noalias() = w * block;
        for (Eigen::Index i = 0; i < rdim; ++i) m.row(Eigen::Index(base + offs[std::size_t(i)])) = res.row(i);
    });
    rotate_sites(m, b);
    return m;
}

Vec RotationUnitary::conjugate_apply(const LocalOperator& h, const Vec& state) const {
    return apply(apply_on(h.block, h.support, apply(state, Direction::forward)), Direction::adjoint);
}

Mat RotationUnitary::conjugate(const LocalOperator& h) const {
    const auto dim = Eigen::Index(1) << layout_.total_qubits();
    if (dim > kFullConjugationLimit) throw std::invalid_argument("full conjugation limited to dimension 2^10");
    const Mat v = apply(Mat(Mat::Identity(dim, dim)), Direction::forward);
    return apply(apply_rows(h.block, h.support, v), Direction::adjoint);
}

RotatedTerm rotate_term(const RotationUnitary& v, const HamiltonianTerm& term, const Qubits& claimed_support,
                        RotateMode mode, std::uint64_t seed, int samples) {
    const int n = v.layout().total_qubits();
    const auto dim = Eigen::Index(1) << n;
    check_support(claimed_support, n, Eigen::Index(1) << claimed_support.size());
    if (mode == RotateMode::automatic) mode = dim <= kFullConjugationLimit ? RotateMode::exact : RotateMode::randomized;
    if (mode == RotateMode::exact) {
        const auto r = restrict_to_support(v.conjugate(term.local()), claimed_support);
        return {r.local, claimed_support, r.residual, true};
    }
    // Local part read off against one fixed random state of the complement.
    const Qubits rest = complement(claimed_support, n);
    const Vec r0 = random_state(Eigen::Index(1) << rest.size(), seed, 0);
    const auto k = Eigen::Index(1) << claimed_support.size();
    std::vector<std::pair<Vec, Qubits>> f{{Vec::Zero(k), claimed_support}, {r0, rest}};
    Qubits rest_msb(rest.rbegin(), rest.rend());
    f[1].second = rest_msb;
    Mat local(k, k);
    std::vector<Vec> embedded;
    for (Eigen::Index j = 0; j < k; ++j) {
        f[0].first = Vec::Unit(k, j);
        embedded.push_back(product_state(f, n));
    }
    for (Eigen::Index j = 0; j < k; ++j) {
        const Vec col = v.conjugate_apply(term.local(), embedded[std::size_t(j)]);
        for (Eigen::Index i = 0; i < k; ++i) local(i, j) = embedded[std::size_t(i)].dot(col);
    }
    double worst = 0.0;
    for (int s = 0; s < samples; ++s) {
        const Vec psi = random_state(dim, seed, std::uint64_t(s) + 1);
        worst = std::max(worst, (v.conjugate_apply(term.local(), psi) - apply_on(local, claimed_support, psi)).norm());
    }
    return {local, claimed_support, worst, false};
}

RotatedTerm project_rotated(const RotationUnitary& v, const HamiltonianTerm& term, const std::vector<int>& sites,
                            std::span<const double> deltas, const Qubits& claimed_support) {
    const GridLayout& g = v.layout();
    check_deltas(deltas, g.D, false);
    Qubits qs;
    Vec chi = Vec::Ones(1);
    for (int s : sites) {
        const Qubits sq = g.site_qubits(s);
        qs.insert(qs.end(), sq.begin(), sq.end());
        chi = kron(chi, phi0(deltas[std::size_t(s / g.n)]));
    }
    const Mat projected = contract_state(v.conjugate(term.local()), chi, qs);
    const Qubits rest = complement(qs, g.total_qubits());
    Qubits mapped;
    for (int q : claimed_support) {
        auto it = std::find(rest.begin(), rest.end(), q);
        if (it == rest.end()) throw std::invalid_argument("claimed support overlaps a projected site");
        mapped.push_back(static_cast<int>(it - rest.begin()));
    }
    const auto r = restrict_to_support(projected, mapped);
    return {r.local, claimed_support, r.residual, true};
}

double teleportation_coefficient(double delta) { return 4.0 * delta * delta / (1.0 + 3.0 * delta * delta); }

Mat last_layer_closed_form(int k, double delta) {
    const Vec s = bell_uniform();
    const Mat sk = kron_power(Mat(s * s.adjoint()), k);
    const Mat l = kron_power(lambda_map(delta), k);
    return l * (Mat::Identity(sk.rows(), sk.cols()) - sk) * l;
}

Mat bulk_projected_closed_form(int k, double delta_left, double delta_right) {
    return std::pow(teleportation_coefficient(delta_right), k) * last_layer_closed_form(k, delta_left);
}

std::vector<CliffordPair> clifford_relation(const Mat& u) {
    const int k = qubit_count(u.rows());
    if (k > 2) throw std::invalid_argument("Clifford relation enumerated for gates of at most two qubits");
    const std::uint64_t half = std::uint64_t(1) << (2 * k);
    std::vector<Mat> words;
    for (std::uint64_t c = 0; c < half; ++c) words.push_back(PauliWord::from_code(c, std::size_t(k)).matrix());
    std::vector<CliffordPair> out;
    for (std::uint64_t pl = 0; pl < half; ++pl)
        for (std::uint64_t ql = 0; ql < half; ++ql) {
            const Mat left = words[pl] * words[ql];
            for (std::uint64_t pr = 0; pr < half; ++pr)
                for (std::uint64_t qr = 0; qr < half; ++qr) {
                    const Mat right = u.adjoint() * words[qr] * words[pr] * u;
                    const Complex c = proportionality(right, left);
                    if (std::abs(c) > 0.5) out.push_back({pl * half + pr, ql * half + qr, c});
                }
        }
    return out;
}

Mat clifford_closed_form(const Mat& u, double delta_left, double delta_right) {
    const int k = qubit_count(u.rows());
    // Bell labels per wire: entry i of the left (right) half is wire i's site.
    const std::uint64_t half = std::uint64_t(1) << (2 * k);
    const auto dim = Eigen::Index(half * half);
    Mat rel = Mat::Zero(dim, dim);
    for (const auto& pr : clifford_relation(u)) rel(Eigen::Index(pr.p), Eigen::Index(pr.q)) = 1.0;
    const Mat b = kron_power(bell_basis(), 2 * k);
    const Mat l = kron(kron_power(lambda_map(delta_left), k), kron_power(lambda_map(delta_right), k));
    return l * (Mat::Identity(dim, dim) - b * rel * b.adjoint() / double(half)) * l;
}

}  // namespace clockless
