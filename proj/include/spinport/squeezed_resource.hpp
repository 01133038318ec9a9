#pragma once

#include "spinport/spin_core.hpp"

namespace spinport {

/// Two-mode squeezed entanglement resource: the minimal-eigenvalue state of
///   (Jz^(1)+Jz^(2))^2 + (Jy^(1)-Jy^(2))^2 - mu (Jx^(1)+Jx^(2))
/// together with its diagnostic moments.
struct SqueezedResource {
    SpinJ j;
    double mu = 0.0;
    PureState state;
    double nu = 0.0;        // minimal eigenvalue
    double vz_plus = 0.0;   // Var(Jz^(+))
    double vy_minus = 0.0;  // Var(Jy^(-))
    double mean_jx_plus = 0.0;
    double residual = 0.0;  // ||H state - nu state||
    bool degenerate = false;
    double gap = 0.0;  // distance to the second eigenvalue
};

/// Ground state of the constrained squeezing problem at multiplier mu.
/// Throws if (2j+1)^2 exceeds dim_cap or the eigensolver fails. A ground-space
/// gap below 1e-10 is reported through `degenerate`, not an error.
SqueezedResource solve_resource(SpinJ j, double mu, int dim_cap = 10000);

/// V(Jz^(+)) + V(Jy^(-)) - mu <Jx^(+)> for a two-mode state of equal mode
/// dimensions. True variances, not second moments.
double chi(const PureState& state, double mu);

/// chi(1) < -1e-10 certifies entanglement; false is inconclusive.
bool is_witnessed_entangled(const PureState& state);

struct ChiMinimum {
    PureState state;
    double chi_value = 0.0;
    bool converged = false;
    int iterations = 0;
};

/// Direct minimization of chi over normalized two-mode amplitudes from
/// `seeds` random starts (projected gradient descent, step halving on
/// non-decrease, per-start iteration cap). Returns the best run.
ChiMinimum minimize_chi_direct(SpinJ j, double mu, int seeds,
                               std::uint64_t rng_seed, int max_iter = 500);

struct SqueezeCurveRow {
    double mu = 0.0;
    double mean_jx_norm = 0.0;  // <Jx^(+)> / 2j
    double v_sigma_norm = 0.0;  // (Vz^(+) + Vy^(-)) / 2j
};

std::vector<SqueezeCurveRow> squeeze_curve(SpinJ j,
                                           const std::vector<double>& mu_grid);

/// mu = 0 plus 60 log-spaced points over [1e-3, 1e3].
std::vector<double> default_mu_grid();

}  // namespace spinport
