#pragma once

#include <Eigen/Dense>

#include <functional>

namespace spinport {

struct ScalarMaxResult {
    double x = 0.0;
    double value = 0.0;
    bool endpoint_warning = false;  // an endpoint beat the interior optimum
};

/// Golden-section maximization on [lo, hi]. Ties break toward smaller x.
ScalarMaxResult golden_section_max(const std::function<double(double)>& f,
                                   double lo, double hi, int iters = 40);

struct SimplexResult {
    Eigen::VectorXd x;
    double value = 0.0;
    int evaluations = 0;
};

/// Nelder-Mead minimization started from x0 with the given initial step.
SimplexResult nelder_mead_min(const std::function<double(const Eigen::VectorXd&)>& f,
                              const Eigen::VectorXd& x0, double step,
                              int max_evals = 4000, double tol = 1e-10);

}  // namespace spinport
