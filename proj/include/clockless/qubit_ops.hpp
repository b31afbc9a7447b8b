#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

namespace clockless {

using Complex = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;
using Qubits = std::vector<int>;

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

// Qubit q is bit q of an amplitude index. A block acting on an ordered
// support treats support[0] as its most significant bit, so kron(A, B) on
// {q0, q1} puts A on q0.
struct LocalOperator {
    Mat block;
    Qubits support;
};

int qubit_count(Eigen::Index dim);
std::uint64_t support_mask(const Qubits& qs);
std::vector<std::uint64_t> local_offsets(const Qubits& qs);
// Spreads the bits of `r` over `positions` (positions[0] receives bit 0).
std::uint64_t deposit_bits(std::uint64_t r, const Qubits& positions);
Qubits complement(const Qubits& qs, int nqubits);
void check_support(const Qubits& qs, int nqubits, Eigen::Index block_dim);

// Iterates base indices whose support bits are all zero.
template <typename F>
void for_each_base(std::uint64_t dim, std::uint64_t mask, F&& f) {
    for (std::uint64_t base = 0; base < dim; base = ((base | mask) + 1) & ~mask) f(base);
}

template <typename Derived, typename VDerived>
VectorX<typename Derived::Scalar> apply_on(const Eigen::MatrixBase<Derived>& op, const Qubits& qs,
                                           const Eigen::MatrixBase<VDerived>& psi) {
    using Scalar = typename Derived::Scalar;
    check_support(qs, qubit_count(psi.size()), op.rows());
    const auto offs = local_offsets(qs);
    const auto k = static_cast<Eigen::Index>(offs.size());
    VectorX<Scalar> out(psi.size());
    VectorX<Scalar> in(k), res(k);
    for_each_base(static_cast<std::uint64_t>(psi.size()), support_mask(qs), [&](std::uint64_t base) {
        for (Eigen::Index i = 0; i < k; ++i) in(i) = psi(static_cast<Eigen::Index>(base + offs[i]));
        res.noalias() = op * in;
        for (Eigen::Index i = 0; i < k; ++i) out(static_cast<Eigen::Index>(base + offs[i])) = res(i);
    });
    return out;
}

// op on `qs` applied to every column of `m`.
Mat apply_rows(const Mat& op, const Qubits& qs, const Mat& m);

template <typename VDerived>
MatrixX<typename VDerived::Scalar> reduced_density(const Eigen::MatrixBase<VDerived>& psi, const Qubits& qs) {
    using Scalar = typename VDerived::Scalar;
    check_support(qs, qubit_count(psi.size()), Eigen::Index(1) << qs.size());
    const auto offs = local_offsets(qs);
    const auto k = static_cast<Eigen::Index>(offs.size());
    MatrixX<Scalar> rho = MatrixX<Scalar>::Zero(k, k);
    VectorX<Scalar> v(k);
    for_each_base(static_cast<std::uint64_t>(psi.size()), support_mask(qs), [&](std::uint64_t base) {
        for (Eigen::Index i = 0; i < k; ++i) v(i) = psi(static_cast<Eigen::Index>(base + offs[i]));
        rho.noalias() += v * v.adjoint();
    });
    return rho;
}

template <typename Derived>
MatrixX<typename Derived::Scalar> embed(const Eigen::MatrixBase<Derived>& op, const Qubits& qs, int nqubits) {
    using Scalar = typename Derived::Scalar;
    check_support(qs, nqubits, op.rows());
    const auto offs = local_offsets(qs);
    const auto dim = Eigen::Index(1) << nqubits;
    MatrixX<Scalar> out = MatrixX<Scalar>::Zero(dim, dim);
    for_each_base(static_cast<std::uint64_t>(dim), support_mask(qs), [&](std::uint64_t base) {
        for (std::size_t i = 0; i < offs.size(); ++i)
            for (std::size_t j = 0; j < offs.size(); ++j)
                out(Eigen::Index(base + offs[i]), Eigen::Index(base + offs[j])) = op(Eigen::Index(i), Eigen::Index(j));
    });
    return out;
}

// Tr over every qubit outside `keep`; result is ordered like `keep`.
template <typename Derived>
MatrixX<typename Derived::Scalar> partial_trace(const Eigen::MatrixBase<Derived>& m, const Qubits& keep) {
    using Scalar = typename Derived::Scalar;
    check_support(keep, qubit_count(m.rows()), Eigen::Index(1) << keep.size());
    const auto offs = local_offsets(keep);
    const auto k = static_cast<Eigen::Index>(offs.size());
    MatrixX<Scalar> out = MatrixX<Scalar>::Zero(k, k);
    for_each_base(static_cast<std::uint64_t>(m.rows()), support_mask(keep), [&](std::uint64_t base) {
        for (Eigen::Index i = 0; i < k; ++i)
            for (Eigen::Index j = 0; j < k; ++j)
                out(i, j) += m(Eigen::Index(base + offs[i]), Eigen::Index(base + offs[j]));
    });
    return out;
}

// <chi|_qs M |chi>_qs, an operator on the remaining qubits in ascending order
// (lowest remaining qubit is the least significant bit of the result).
template <typename Derived, typename VDerived>
MatrixX<typename Derived::Scalar> contract_state(const Eigen::MatrixBase<Derived>& m,
                                                 const Eigen::MatrixBase<VDerived>& chi, const Qubits& qs) {
    using Scalar = typename Derived::Scalar;
    const int n = qubit_count(m.rows());
    check_support(qs, n, chi.size());
    const auto offs = local_offsets(qs);
    const Qubits rest = complement(qs, n);
    const auto rdim = Eigen::Index(1) << rest.size();
    const auto k = static_cast<Eigen::Index>(offs.size());
    // E maps the remaining register into the full space with chi on qs.
    Eigen::SparseMatrix<Scalar> e(m.rows(), rdim);
    std::vector<Eigen::Triplet<Scalar>> trip;
    trip.reserve(static_cast<std::size_t>(rdim * k));
    for (Eigen::Index r = 0; r < rdim; ++r) {
        const auto base = deposit_bits(static_cast<std::uint64_t>(r), rest);
        for (Eigen::Index i = 0; i < k; ++i)
            if (chi(i) != Scalar(0)) trip.emplace_back(Eigen::Index(base + offs[i]), r, chi(i));
    }
    e.setFromTriplets(trip.begin(), trip.end());
    MatrixX<Scalar> me = m * e;
    return MatrixX<Scalar>(e.adjoint() * me);
}

// (<chi|_qs (x) I) psi over the remaining qubits in ascending order.
template <typename VDerived, typename CDerived>
VectorX<typename VDerived::Scalar> project_out(const Eigen::MatrixBase<VDerived>& psi,
                                               const Eigen::MatrixBase<CDerived>& chi, const Qubits& qs) {
    using Scalar = typename VDerived::Scalar;
    const int n = qubit_count(psi.size());
    check_support(qs, n, chi.size());
    const auto offs = local_offsets(qs);
    const Qubits rest = complement(qs, n);
    VectorX<Scalar> out(Eigen::Index(1) << rest.size());
    for (Eigen::Index r = 0; r < out.size(); ++r) {
        const auto base = deposit_bits(static_cast<std::uint64_t>(r), rest);
        Scalar acc(0);
        for (Eigen::Index i = 0; i < chi.size(); ++i)
            acc += Eigen::numext::conj(chi(i)) * psi(Eigen::Index(base + offs[std::size_t(i)]));
        out(r) = acc;
    }
    return out;
}

// Product of local states; qubits outside every factor are |0>.
Vec product_state(const std::vector<std::pair<Vec, Qubits>>& factors, int nqubits);

Mat kron(const Mat& a, const Mat& b);
Mat kron_power(const Mat& a, int k);
bool is_projector(const Mat& p, double tol = 1e-10);
double hermitian_norm(const Mat& m);
double spectral_norm(const Mat& m);
// Half the trace norm of a Hermitian difference.
double trace_distance(const Mat& a, const Mat& b);

struct SupportRestriction {
    Mat local;
    double residual = 0.0;
};

// Best R with M close to R (x) I on `support`, and the operator-norm residual.
SupportRestriction restrict_to_support(const Mat& m, const Qubits& support);

}  // namespace clockless
