#include "clockless/spectral.hpp"

#include "clockless/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace clockless {

namespace {

void finish_report(SpectralReport& r, double ground_tol) {
    r.ground_dim = 0;
    if (r.eigenvalues.empty()) return;
    for (double e : r.eigenvalues)
        if (e <= r.eigenvalues.front() + ground_tol) ++r.ground_dim;
    r.gap = r.ground_dim < static_cast<int>(r.eigenvalues.size())
                ? r.eigenvalues[std::size_t(r.ground_dim)] - r.eigenvalues.front()
                : std::numeric_limits<double>::quiet_NaN();
}

// Orthogonalizes v against the columns of `basis` twice; returns the remaining norm.
double orthogonalize(Vec& v, const Mat& basis, Eigen::Index cols) {
    for (int pass = 0; pass < 2; ++pass)
        if (cols > 0) v -= basis.leftCols(cols) * (basis.leftCols(cols).adjoint() * v);
    return v.norm();
}

}  // namespace

SpectralReport dense_spectrum(const Mat& h, bool vectors, double ground_tol) {
    if (h.rows() != h.cols()) throw std::invalid_argument("operator is not square");
    if (h.rows() > kDenseLimit) throw std::invalid_argument("dense solve limited to dimension 2^12");
    Eigen::SelfAdjointEigenSolver<Mat> es(h, vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw NonConvergence("dense eigensolver failed", 0);
    SpectralReport r;
    r.method = SolverMethod::dense;
    r.eigenvalues.assign(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
    if (vectors) {
        r.eigenvectors = es.eigenvectors();
        for (Eigen::Index j = 0; j < h.cols(); ++j)
            r.residuals.push_back((h * r.eigenvectors.col(j) - r.eigenvalues[std::size_t(j)] * r.eigenvectors.col(j)).norm());
    }
    finish_report(r, ground_tol);
    return r;
}

SpectralReport dense_spectrum(const SparseOperator& op, bool vectors, double ground_tol) {
    if (op.dim() > kDenseLimit) throw std::invalid_argument("dense solve limited to dimension 2^12");
    return dense_spectrum(Mat(op.to_sparse()), vectors, ground_tol);
}

SpectralReport low_spectrum(const LinearMap& op, Eigen::Index dim, const LanczosOptions& opts) {
    if (opts.k < 1 || opts.k > dim) throw std::invalid_argument("requested eigenpair count outside [1, dim]");
    // One guard pair confirms no lower level was skipped.
    const int wanted = static_cast<int>(std::min<Eigen::Index>(dim, opts.k + 1));
    const Eigen::Index m_cap =
        opts.krylov_dim > 0 ? std::min<Eigen::Index>(dim, opts.krylov_dim) : std::min<Eigen::Index>(dim, std::max(40, 2 * opts.k + 20));
    const int keep = 4;

    Mat locked(dim, wanted);
    std::vector<double> values;
    Mat retained(dim, 0);
    int iterations = 0;

    for (int target = 0; target < wanted; ++target) {
        const Eigen::Index nl = target;
        const Eigen::Index space = dim - nl;
        const Eigen::Index m = std::min(m_cap, space);
        Vec start = random_state(dim, opts.seed, std::uint64_t(target) + 1);
        bool done = false;
        for (int restart = 0; restart <= opts.max_restarts && !done; ++restart) {
            ++iterations;
            Mat v(dim, m), hv(dim, m);
            Eigen::Index cols = 0;
            // Alternating passes against the locked and Krylov bases; a single
            // pass lets a nearly dependent vector regrow locked components.
            auto push = [&](Vec x) {
                if (cols >= m) return false;
                const double n0 = x.norm();
                if (n0 == 0.0) return false;
                x /= n0;
                double nrm = 1.0;
                for (int pass = 0; pass < 3; ++pass) {
                    orthogonalize(x, locked, nl);
                    nrm = orthogonalize(x, v, cols);
                    if (nrm < 1e-8) return false;
                    x /= nrm;
                }
                v.col(cols) = x;
                hv.col(cols) = op(v.col(cols));
                ++cols;
                return true;
            };
            for (Eigen::Index j = 0; j < retained.cols(); ++j) push(retained.col(j));
            push(start);
            bool invariant = false;
            while (cols < m) {
                if (!push(hv.col(cols - 1))) {
                    invariant = true;
                    break;
                }
            }
            Mat t = v.leftCols(cols).adjoint() * hv.leftCols(cols);
            t = 0.5 * (t + t.adjoint()).eval();
            Eigen::SelfAdjointEigenSolver<Mat> es(t);
            const Mat x = v.leftCols(cols) * es.eigenvectors();
            const Mat hx = hv.leftCols(cols) * es.eigenvectors();
            const double theta = es.eigenvalues()(0);
            Vec res = hx.col(0) - theta * x.col(0);
            orthogonalize(res, locked, nl);
            const double rnorm = res.norm();
            const Eigen::Index nkeep = std::min<Eigen::Index>(keep, cols);
            if (rnorm <= opts.tol || (invariant && cols == space)) {
                locked.col(nl) = x.col(0);
                values.push_back(theta);
                retained = x.middleCols(1, nkeep - 1);
                done = true;
            } else {
                retained = x.leftCols(nkeep);
                start = res / rnorm;
            }
        }
        if (!done)
            throw NonConvergence("Lanczos did not converge for eigenpair " + std::to_string(target) + " after " +
                                     std::to_string(iterations) + " restarts",
                                 iterations);
    }

    std::vector<int> order(values.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int i, int j) { return values[std::size_t(i)] < values[std::size_t(j)]; });
    SpectralReport r;
    r.method = SolverMethod::iterative;
    r.iterations = iterations;
    r.eigenvectors.resize(dim, opts.k);
    for (int i = 0; i < opts.k; ++i) {
        const int o = order[std::size_t(i)];
        r.eigenvalues.push_back(values[std::size_t(o)]);
        r.eigenvectors.col(i) = locked.col(o);
        r.residuals.push_back((op(locked.col(o)) - values[std::size_t(o)] * locked.col(o)).norm());
    }
    // Levels beyond the k requested are reported only to size the gap.
    if (wanted > opts.k) {
        r.eigenvalues.push_back(values[std::size_t(order[std::size_t(opts.k)])]);
        finish_report(r, opts.ground_tol);
        r.eigenvalues.pop_back();
    } else {
        finish_report(r, opts.ground_tol);
    }
    return r;
}

SpectralReport low_spectrum(const SparseOperator& op, const LanczosOptions& opts) {
    return low_spectrum([&op](const Vec& v) { return op.apply(v); }, op.dim(), opts);
}

SpectralReport lowest_levels(const SparseOperator& op, int k, std::uint64_t seed) {
    if (op.dim() <= kDenseLimit) {
        SpectralReport r = dense_spectrum(op, true);
        const auto keep = std::min<std::size_t>(std::size_t(k), r.eigenvalues.size());
        r.eigenvalues.resize(keep);
        r.eigenvectors = r.eigenvectors.leftCols(Eigen::Index(keep)).eval();
        r.residuals.resize(keep);
        return r;
    }
    LanczosOptions o;
    o.k = k;
    o.seed = seed;
    return low_spectrum(op, o);
}

GapReport gap_vs_bound(const LayeredCircuit& c, std::span<const double> deltas, const std::vector<int>& locality,
                       std::optional<SolverMethod> method, const LanczosOptions& lanczos) {
    const HamiltonianSpec h = parent_hamiltonian(c, deltas);
    const SparseOperator op = assemble(h);
    const int expected_ground = 1 << c.witness_qubits();
    GapReport g;
    SpectralReport r;
    if (method == SolverMethod::dense && op.dim() > kDenseLimit)
        throw std::invalid_argument("dense solver limited to dimension " + std::to_string(kDenseLimit));
    if (method == SolverMethod::dense || (!method && op.dim() <= kDenseLimit)) {
        r = dense_spectrum(op, false);
    } else {
        LanczosOptions o = lanczos;
        o.k = std::min<int>(std::max(o.k, expected_ground + 1), static_cast<int>(op.dim()));
        r = low_spectrum(op, o);
    }
    g.method = r.method;
    g.lowest = r.eigenvalues.front();
    g.ground_dim = r.ground_dim;
    g.gap = r.gap;
    const std::vector<int> k = locality.empty() ? layer_locality(c) : locality;
    if (static_cast<int>(k.size()) != c.depth()) throw std::invalid_argument("one locality per layer expected");
    g.bound_product = std::pow(deltas[0], 8.0);
    for (int l = 0; l < c.depth(); ++l) g.bound_product *= std::pow(deltas[std::size_t(l)], 8.0 * k[std::size_t(l)]);
    return g;
}

int commutation_degree(const std::vector<Mat>& projectors, double tol) {
    int g = 0;
    for (std::size_t i = 0; i < projectors.size(); ++i) {
        int count = 0;
        for (std::size_t j = 0; j < projectors.size(); ++j)
            if (i != j && (projectors[i] * projectors[j] - projectors[j] * projectors[i]).cwiseAbs().maxCoeff() > tol)
                ++count;
        g = std::max(g, count);
    }
    return g;
}

namespace {

Vec detectability_image(const std::vector<Mat>& projectors, const Vec& psi) {
    Vec phi = psi;
    for (const Mat& q : projectors) {
        if (!is_projector(q)) throw std::invalid_argument("detectability input is not a projector");
        phi -= q * phi;
    }
    return phi;
}

}  // namespace

InequalityCheck detectability_check(const std::vector<Mat>& projectors, const Vec& psi, int g) {
    if (std::abs(psi.norm() - 1.0) > 1e-10) throw std::invalid_argument("state is not normalized");
    const Vec phi = detectability_image(projectors, psi);
    const int degree = std::max(1, g < 0 ? commutation_degree(projectors) : g);
    InequalityCheck c;
    c.lhs = phi.squaredNorm();
    if (c.lhs < 1e-300) {
        c.rhs = 1.0;
    } else {
        double e = 0.0;
        for (const Mat& q : projectors) e += phi.dot(q * phi).real();
        e /= c.lhs;
        c.rhs = 1.0 / (e / (double(degree) * degree) + 1.0);
    }
    c.slack = c.rhs - c.lhs;
    c.holds = c.slack >= -1e-12;
    return c;
}

InequalityCheck union_bound_check(const std::vector<Mat>& projectors, const Vec& psi) {
    if (std::abs(psi.norm() - 1.0) > 1e-10) throw std::invalid_argument("state is not normalized");
    const Vec phi = detectability_image(projectors, psi);
    double e = 0.0;
    for (const Mat& q : projectors) e += psi.dot(q * psi).real();
    InequalityCheck c;
    c.lhs = phi.squaredNorm();
    c.rhs = 1.0 - 4.0 * e;
    c.slack = c.lhs - c.rhs;
    c.holds = c.slack >= -1e-12;
    return c;
}

namespace {

Mat range_basis(const Mat& p) {
    Eigen::SelfAdjointEigenSolver<Mat> es(p);
    std::vector<Eigen::Index> idx;
    for (Eigen::Index i = 0; i < p.rows(); ++i)
        if (es.eigenvalues()(i) > 0.5) idx.push_back(i);
    Mat b(p.rows(), Eigen::Index(idx.size()));
    for (std::size_t i = 0; i < idx.size(); ++i) b.col(Eigen::Index(i)) = es.eigenvectors().col(idx[i]);
    return b;
}

Mat orthonormalize(const Mat& cols) {
    Eigen::JacobiSVD<Mat> svd(cols, Eigen::ComputeThinU);
    Eigen::Index r = 0;
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
        if (svd.singularValues()(i) > 1e-10) ++r;
    return svd.matrixU().leftCols(r);
}

Mat null_basis(const Mat& h, double zero_tol, double* gamma) {
    if ((h - h.adjoint()).norm() > 1e-10) throw std::invalid_argument("operator is not Hermitian");
    Eigen::SelfAdjointEigenSolver<Mat> es(h);
    if (h.rows() > 0 && es.eigenvalues()(0) < -zero_tol) throw std::invalid_argument("operator is not positive semidefinite");
    std::vector<Eigen::Index> idx;
    for (Eigen::Index i = 0; i < h.rows(); ++i) {
        const double e = es.eigenvalues()(i);
        if (std::abs(e) <= zero_tol) idx.push_back(i);
        else *gamma = std::min(*gamma, e);
    }
    Mat b(h.rows(), Eigen::Index(idx.size()));
    for (std::size_t i = 0; i < idx.size(); ++i) b.col(Eigen::Index(i)) = es.eigenvectors().col(idx[i]);
    return b;
}

}  // namespace

JordanDecomposition jordan_angles(const Mat& p1, const Mat& p2) {
    if (!is_projector(p1) || !is_projector(p2) || p1.rows() != p2.rows())
        throw std::invalid_argument("Jordan decomposition needs two projectors of equal size");
    const Eigen::Index d = p1.rows();
    const Mat a = range_basis(p1), b = range_basis(p2);
    JordanDecomposition j;
    Mat covered(d, 0);
    auto add_block = [&](const Mat& cols) {
        Mat q = orthonormalize(cols);
        if (covered.cols() > 0) q = orthonormalize(q - covered * (covered.adjoint() * q));
        if (q.cols() == 0) return;
        j.blocks.push_back(q);
        Mat next(d, covered.cols() + q.cols());
        next << covered, q;
        covered = next;
    };
    if (a.cols() > 0 && b.cols() > 0) {
        Eigen::JacobiSVD<Mat> svd(a.adjoint() * b, Eigen::ComputeFullU | Eigen::ComputeFullV);
        const auto& s = svd.singularValues();
        for (Eigen::Index i = 0; i < s.size(); ++i) {
            j.cosines.push_back(std::min(1.0, s(i)));
            Mat cols(d, 2);
            cols << a * svd.matrixU().col(i), b * svd.matrixV().col(i);
            add_block(cols);
        }
        for (Eigen::Index i = s.size(); i < a.cols(); ++i) add_block(a * svd.matrixU().col(i));
        for (Eigen::Index i = s.size(); i < b.cols(); ++i) add_block(b * svd.matrixV().col(i));
    } else {
        for (Eigen::Index i = 0; i < a.cols(); ++i) add_block(a.col(i));
        for (Eigen::Index i = 0; i < b.cols(); ++i) add_block(b.col(i));
    }
    // The common null space splits into one-dimensional blocks.
    if (covered.cols() < d) {
        const Mat rest = orthonormalize(Mat::Identity(d, d) - covered * covered.adjoint());
        for (Eigen::Index i = 0; i < rest.cols(); ++i) add_block(rest.col(i));
    }
    Mat r1 = Mat::Zero(d, d), r2 = Mat::Zero(d, d);
    for (const Mat& q : j.blocks) {
        const Mat pb = q * q.adjoint();
        j.invariance_residual = std::max(
            {j.invariance_residual, ((Mat::Identity(d, d) - pb) * p1 * pb).norm(), ((Mat::Identity(d, d) - pb) * p2 * pb).norm()});
        r1 += pb * p1 * pb;
        r2 += pb * p2 * pb;
        if (q.cols() > 2) j.invariance_residual = std::max(j.invariance_residual, 1.0);
    }
    j.reconstruction_residual = std::max((r1 - p1).norm(), (r2 - p2).norm());
    return j;
}

GeometricBound geometric_bound(const Mat& a, const Mat& b, double zero_tol) {
    if (a.rows() != b.rows()) throw std::invalid_argument("operators differ in size");
    GeometricBound g;
    g.gamma = std::numeric_limits<double>::infinity();
    const Mat na = null_basis(a, zero_tol, &g.gamma);
    const Mat nb = null_basis(b, zero_tol, &g.gamma);
    if (!std::isfinite(g.gamma)) g.gamma = 0.0;
    if (na.cols() > 0 && nb.cols() > 0) {
        Eigen::JacobiSVD<Mat> svd(na.adjoint() * nb);
        g.cos_theta = std::min(1.0, svd.singularValues()(0));
    }
    g.bound = g.gamma * (1.0 - g.cos_theta);
    Eigen::SelfAdjointEigenSolver<Mat> es(a + b, Eigen::EigenvaluesOnly);
    g.min_eigenvalue = es.eigenvalues()(0);
    g.holds = g.min_eigenvalue >= g.bound - 1e-12;
    return g;
}

}  // namespace clockless
