#include "spinport/lanczos.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace spinport {

namespace {

LowestPairs dense_lowest(const SymmetricOp& op, int dim, int k) {
    Eigen::MatrixXd a(dim, dim);
    Eigen::VectorXd e = Eigen::VectorXd::Zero(dim), col(dim);
    for (int i = 0; i < dim; ++i) {
        e(i) = 1.0;
        op(e, col);
        a.col(i) = col;
        e(i) = 0.0;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("dense symmetric eigensolve failed");
    LowestPairs out;
    out.values = es.eigenvalues().head(k);
    out.vectors = es.eigenvectors().leftCols(k);
    return out;
}

}  // namespace

LowestPairs lowest_eigenpairs(const SymmetricOp& op, int dim, int k,
                              double scale, int dense_cutoff, double tol,
                              int max_iter) {
    if (k < 1 || k > dim) throw std::invalid_argument("bad eigenpair count");
    if (dim <= dense_cutoff || dim < 8) return dense_lowest(op, dim, k);

    int m_max = std::min(dim, max_iter);
    Eigen::MatrixXd basis(dim, m_max);
    Eigen::VectorXd alpha(m_max), beta(m_max);

    std::mt19937_64 rng(0x5EEDBA5E);
    std::normal_distribution<double> g(0.0, 1.0);
    Eigen::VectorXd v(dim), w(dim);
    for (int i = 0; i < dim; ++i) v(i) = g(rng);
    v.normalize();
    basis.col(0) = v;

    double conv_scale = std::max(1.0, scale);
    int m = 0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> small;
    for (; m < m_max; ++m) {
        op(basis.col(m), w);
        alpha(m) = basis.col(m).dot(w);
        w -= alpha(m) * basis.col(m);
        if (m > 0) w -= beta(m - 1) * basis.col(m - 1);
        // full reorthogonalization keeps the Ritz extraction trustworthy
        for (int pass = 0; pass < 2; ++pass)
            w -= basis.leftCols(m + 1) * (basis.leftCols(m + 1).transpose() * w);
        beta(m) = w.norm();

        bool breakdown = beta(m) < 1e-13 * conv_scale;
        if (m + 1 >= std::max(2 * k, 12) || breakdown || m + 1 == m_max) {
            Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m + 1, m + 1);
            for (int i = 0; i <= m; ++i) {
                t(i, i) = alpha(i);
                if (i < m) t(i, i + 1) = t(i + 1, i) = beta(i);
            }
            small.compute(t);
            bool done = breakdown || (m + 1 >= dim);
            if (!done && m + 1 >= k) {
                done = true;
                for (int i = 0; i < k; ++i) {
                    double resid = beta(m) * std::abs(small.eigenvectors()(m, i));
                    if (resid > tol * conv_scale) {
                        done = false;
                        break;
                    }
                }
            }
            if (done) {
                LowestPairs out;
                out.values = small.eigenvalues().head(k);
                out.vectors = basis.leftCols(m + 1) * small.eigenvectors().leftCols(k);
                for (int i = 0; i < k; ++i) out.vectors.col(i).normalize();
                return out;
            }
            if (breakdown || m + 1 == m_max) break;
        }
        basis.col(m + 1) = w / beta(m);
    }

    if (dim <= 4096) return dense_lowest(op, dim, k);
    throw std::runtime_error("lanczos failed to converge");
}

}  // namespace spinport
