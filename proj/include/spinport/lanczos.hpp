#pragma once

#include <Eigen/Dense>

#include <functional>

namespace spinport {

/// y = A x for a real symmetric A given implicitly.
using SymmetricOp = std::function<void(const Eigen::VectorXd&, Eigen::VectorXd&)>;

struct LowestPairs {
    Eigen::VectorXd values;   // the k smallest eigenvalues, ascending
    Eigen::MatrixXd vectors;  // matching columns
};

/// Smallest-k eigenpairs of a real symmetric operator. Dense fallback below
/// `dense_cutoff`; Lanczos with full reorthogonalization above it.
/// `scale` should bound the spectral radius (used in convergence tests).
LowestPairs lowest_eigenpairs(const SymmetricOp& op, int dim, int k,
                              double scale, int dense_cutoff = 600,
                              double tol = 1e-11, int max_iter = 500);

}  // namespace spinport
