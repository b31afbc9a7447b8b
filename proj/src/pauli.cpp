#include "clockless/pauli.hpp"

#include <cmath>
#include <stdexcept>

namespace clockless {

Mat pauli_matrix(Pauli p) {
    Mat m = Mat::Zero(2, 2);
    switch (p) {
        case Pauli::I: m << 1, 0, 0, 1; break;
        case Pauli::X: m << 0, 1, 1, 0; break;
        case Pauli::XZ: m << 0, -1, 1, 0; break;
        case Pauli::Z: m << 1, 0, 0, -1; break;
    }
    return m;
}

char pauli_char(Pauli p) {
    static constexpr char names[] = {'I', 'X', 'W', 'Z'};
    return names[static_cast<int>(p)];
}

std::string pauli_name(Pauli p) { return p == Pauli::XZ ? "XZ" : std::string(1, pauli_char(p)); }

int PauliWord::weight() const {
    int w = 0;
    for (Pauli p : entries) w += p != Pauli::I;
    return w;
}

std::uint64_t PauliWord::code() const {
    std::uint64_t c = 0;
    for (Pauli p : entries) c = c * 4 + static_cast<std::uint64_t>(p);
    return c;
}

PauliWord PauliWord::from_code(std::uint64_t code, std::size_t length) {
    PauliWord w(length);
    for (std::size_t i = length; i-- > 0;) {
        w.entries[i] = static_cast<Pauli>(code & 3U);
        code >>= 2;
    }
    return w;
}

std::string PauliWord::to_string() const {
    std::string s;
    for (Pauli p : entries) s += pauli_char(p);
    return s;
}

Mat PauliWord::matrix() const {
    Mat m = Mat::Identity(1, 1);
    for (Pauli p : entries) m = kron(m, pauli_matrix(p));
    return m;
}

Vec bell_state(Pauli p) {
    Vec phi = Vec::Zero(4);
    phi(0) = phi(3) = 1.0 / std::sqrt(2.0);
    return kron(Mat::Identity(2, 2), pauli_matrix(p)) * phi;
}

Mat bell_basis() {
    Mat b(4, 4);
    for (Pauli p : kPaulis) b.col(static_cast<int>(p)) = bell_state(p);
    return b;
}

Vec bell_uniform() { return bell_basis() * Vec::Constant(4, 0.5); }

namespace {

void check_delta(double delta, bool allow_zero) {
    if (!std::isfinite(delta) || delta > 1.0 || delta < 0.0 || (!allow_zero && delta == 0.0))
        throw std::invalid_argument("delta must lie in " + std::string(allow_zero ? "[0, 1]" : "(0, 1]") +
                                    ", got " + std::to_string(delta));
}

Mat bell_diagonal(double d_identity, double d_other) {
    const Mat b = bell_basis();
    Eigen::Vector4cd diag(d_identity, d_other, d_other, d_other);
    return b * diag.asDiagonal() * b.adjoint();
}

}  // namespace

Mat site_map_matrix(const SiteMap& m) {
    check_delta(m.delta, false);
    return m.kind == SiteMapKind::Q ? bell_diagonal(1.0, m.delta) : bell_diagonal(m.delta, 1.0);
}

Mat q_map(double delta) { return site_map_matrix({SiteMapKind::Q, delta}); }
Mat lambda_map(double delta) { return site_map_matrix({SiteMapKind::Lambda, delta}); }

Mat perturbed_projector(double delta) {
    check_delta(delta, true);
    return bell_diagonal(1.0, delta);
}

Vec phi0(double delta) {
    check_delta(delta, true);
    Vec v = bell_state(Pauli::I) + delta * (bell_state(Pauli::X) + bell_state(Pauli::XZ) + bell_state(Pauli::Z));
    return v / std::sqrt(1.0 + 3.0 * delta * delta);
}

Complex proportionality(const Mat& a, const Mat& b, double tol) {
    const double bb = b.squaredNorm();
    if (bb == 0.0) return 0.0;
    const Complex c = b.cwiseProduct(a.conjugate()).sum();  // <b, a> conjugated below
    const Complex coef = std::conj(c) / bb;
    if ((a - coef * b).norm() > tol * std::max(1.0, a.norm())) return 0.0;
    return coef;
}

}  // namespace clockless
