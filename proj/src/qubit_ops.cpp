#include "clockless/qubit_ops.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace clockless {

int qubit_count(Eigen::Index dim) {
    if (dim <= 0 || (dim & (dim - 1)) != 0)
        throw std::invalid_argument("dimension " + std::to_string(dim) + " is not a power of two");
    int n = 0;
    while ((Eigen::Index(1) << n) < dim) ++n;
    return n;
}

std::uint64_t support_mask(const Qubits& qs) {
    std::uint64_t m = 0;
    for (int q : qs) m |= std::uint64_t(1) << q;
    return m;
}

std::vector<std::uint64_t> local_offsets(const Qubits& qs) {
    const std::size_t k = qs.size();
    std::vector<std::uint64_t> offs(std::size_t(1) << k, 0);
    for (std::size_t j = 0; j < offs.size(); ++j)
        for (std::size_t i = 0; i < k; ++i)
            if ((j >> (k - 1 - i)) & 1U) offs[j] |= std::uint64_t(1) << qs[i];
    return offs;
}

std::uint64_t deposit_bits(std::uint64_t r, const Qubits& positions) {
    std::uint64_t out = 0;
    for (std::size_t i = 0; i < positions.size(); ++i)
        if ((r >> i) & 1U) out |= std::uint64_t(1) << positions[i];
    return out;
}

Qubits complement(const Qubits& qs, int nqubits) {
    Qubits rest;
    for (int q = 0; q < nqubits; ++q)
        if (std::find(qs.begin(), qs.end(), q) == qs.end()) rest.push_back(q);
    return rest;
}

void check_support(const Qubits& qs, int nqubits, Eigen::Index block_dim) {
    if (qs.size() >= 63 || (Eigen::Index(1) << qs.size()) != block_dim)
        throw std::invalid_argument("block dimension " + std::to_string(block_dim) + " does not match support of " +
                                    std::to_string(qs.size()) + " qubits");
    std::uint64_t seen = 0;
    for (int q : qs) {
        if (q < 0 || q >= nqubits)
            throw std::invalid_argument("qubit " + std::to_string(q) + " outside register of " +
                                        std::to_string(nqubits));
        if (seen & (std::uint64_t(1) << q)) throw std::invalid_argument("repeated qubit " + std::to_string(q));
        seen |= std::uint64_t(1) << q;
    }
}

Vec product_state(const std::vector<std::pair<Vec, Qubits>>& factors, int nqubits) {
    Qubits all;
    for (const auto& [v, qs] : factors) {
        check_support(qs, nqubits, v.size());
        all.insert(all.end(), qs.begin(), qs.end());
    }
    check_support(all, nqubits, Eigen::Index(1) << all.size());
    const Qubits rest = complement(all, nqubits);
    std::vector<std::vector<std::uint64_t>> offs;
    for (const auto& f : factors) offs.push_back(local_offsets(f.second));

    Vec out = Vec::Zero(Eigen::Index(1) << nqubits);
    // Enumerate the joint local index as a mixed-radix counter.
    std::vector<std::size_t> digit(factors.size(), 0);
    while (true) {
        Complex amp(1.0, 0.0);
        std::uint64_t idx = 0;
        for (std::size_t f = 0; f < factors.size(); ++f) {
            amp *= factors[f].first(Eigen::Index(digit[f]));
            idx |= offs[f][digit[f]];
        }
        out(Eigen::Index(idx)) = amp;
        std::size_t f = 0;
        for (; f < factors.size(); ++f) {
            if (++digit[f] < offs[f].size()) break;
            digit[f] = 0;
        }
        if (f == factors.size()) break;
    }
    return out;
}

Mat kron(const Mat& a, const Mat& b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

Mat kron_power(const Mat& a, int k) {
    Mat out = Mat::Identity(1, 1);
    for (int i = 0; i < k; ++i) out = kron(out, a);
    return out;
}

bool is_projector(const Mat& p, double tol) {
    return p.rows() == p.cols() && p.rows() > 0 && (p - p.adjoint()).cwiseAbs().maxCoeff() <= tol &&
           (p * p - p).cwiseAbs().maxCoeff() <= tol;
}

double hermitian_norm(const Mat& m) {
    if (m.size() == 0) return 0.0;
    Eigen::SelfAdjointEigenSolver<Mat> es(m, Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

double spectral_norm(const Mat& m) {
    if (m.size() == 0) return 0.0;
    Eigen::JacobiSVD<Mat> svd(m);
    return svd.singularValues()(0);
}

Mat apply_rows(const Mat& op, const Qubits& qs, const Mat& m) {
    check_support(qs, qubit_count(m.rows()), op.rows());
    using RowMat = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    const auto offs = local_offsets(qs);
    const auto k = static_cast<Eigen::Index>(offs.size());
    RowMat r = m;
    RowMat in(k, m.cols()), res(k, m.cols());
    for_each_base(static_cast<std::uint64_t>(m.rows()), support_mask(qs), [&](std::uint64_t base) {
        for (Eigen::Index i = 0; i < k; ++i) in.row(i) = r.row(Eigen::Index(base + offs[std::size_t(i)]));
        res.noalias() = op * in;
        for (Eigen::Index i = 0; i < k; ++i) r.row(Eigen::Index(base + offs[std::size_t(i)])) = res.row(i);
    });
    return r;
}

double trace_distance(const Mat& a, const Mat& b) {
    Eigen::SelfAdjointEigenSolver<Mat> es(a - b, Eigen::EigenvaluesOnly);
    return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

SupportRestriction restrict_to_support(const Mat& m, const Qubits& support) {
    const int n = qubit_count(m.rows());
    const double rest_dim = std::ldexp(1.0, n - static_cast<int>(support.size()));
    SupportRestriction r;
    r.local = partial_trace(m, support) / rest_dim;
    const Mat diff = m - embed(r.local, support, n);
    const bool hermitian = (m - m.adjoint()).norm() <= 1e-12 * std::max(1.0, m.norm());
    r.residual = hermitian ? hermitian_norm(diff) : spectral_norm(diff);
    return r;
}

}  // namespace clockless
