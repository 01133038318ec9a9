#pragma once

#include "spinport/spin_core.hpp"
#include "spinport/teleport.hpp"

namespace spinport {

/// Entropy of entanglement of a two-mode pure state in base-N logarithm, so
/// a maximally entangled pair scores 1 at every dimension.
double entanglement_of_formation(const PureState& state);

struct SwapBranch {
    double a = 0.0;
    double b = 0.0;
    double probability = 0.0;
    double entanglement = 0.0;
};

struct SwapResult {
    SpinJ j;
    InteractionSpec interaction;
    double resource_mu = 0.0;
    std::vector<SwapBranch> per_branch;
    double average_entanglement = 0.0;
};

/// Four-mode protocol: resource(1,2) at the given mu, maximally entangled
/// pair on (3,4), interaction on (2,3), joint measurement of Jz^(2) and
/// Jy^(3). Entanglement of the (1,4) pair is averaged over branches; no
/// receiver rotation is applied since it cannot change entanglement.
SwapResult entanglement_swap(SpinJ j, double resource_mu,
                             const InteractionSpec& spec, int max_two_j = 40);

/// Same protocol with a caller-supplied resource state on modes (1,2).
SwapResult entanglement_swap(SpinJ j, const PureState& resource,
                             const InteractionSpec& spec, int max_two_j = 40);

struct AlphaOptimum {
    double alpha = 0.0;
    double entanglement = 0.0;
};

/// Coupling maximizing the swapped entanglement over (0, 2pi]: 64-point scan
/// refined by golden section.
AlphaOptimum optimize_alpha(SpinJ j, double resource_mu = 0.0);

struct General16Optimum {
    std::array<double, 16> coeffs{};
    double entanglement = 0.0;
};

/// Derivative-free maximization over the 16 bilinear coefficients; restarted
/// simplex, one restart seeded from the scalar-coupling optimum, the rest
/// random in [-pi, pi]^16.
General16Optimum optimize_general_interaction(SpinJ j, double resource_mu,
                                              std::uint64_t rng_seed,
                                              int restarts = 8,
                                              int max_evals_per_restart = 2500);

}  // namespace spinport
