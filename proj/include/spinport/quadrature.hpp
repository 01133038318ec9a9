#pragma once

#include <vector>

namespace spinport {

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Gauss-Legendre rule on [a, b].
QuadratureRule gauss_legendre(int n, double a, double b);

}  // namespace spinport
