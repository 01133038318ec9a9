#pragma once

#include "spinport/spin_core.hpp"

#include <array>
#include <cstdint>
#include <functional>

namespace spinport {

enum class InteractionKind { KP, ScaledAlpha, General16 };

/// Two-mode coupling used for the Bell-type measurement. The KP kind pins the
/// coupling to 1/j; ScaledAlpha carries an explicit alpha; General16 carries
/// the 16 coefficients of the full bilinear generator
///   sum_{A,B in {Jx,Jy,Jz,I}} c_{AB} A^(2) B^(3)
/// in row-major order (JxJx, JxJy, JxJz, JxI, JyJx, ...).
struct InteractionSpec {
    InteractionKind kind = InteractionKind::KP;
    double alpha = 0.0;
    std::array<double, 16> coeffs{};

    static InteractionSpec kp() { return InteractionSpec{InteractionKind::KP, 0.0, {}}; }
    static InteractionSpec scaled(double alpha) {
        return InteractionSpec{InteractionKind::ScaledAlpha, alpha, {}};
    }
    static InteractionSpec general16(const std::array<double, 16>& c) {
        return InteractionSpec{InteractionKind::General16, 0.0, c};
    }

    double effective_alpha(SpinJ j) const;
};

enum class CorrectionStrategy { Simple, OrientationPreserving };

/// One protocol branch: measured values of Jz on the resource half and Jy on
/// the input mode, the branch probability, and the corrected output state.
struct TeleportOutcome {
    double a = 0.0;
    double b = 0.0;
    double probability = 0.0;
    PureState output;
};

/// A branch before the receiver-side rotation.
struct RawBranch {
    double a = 0.0;
    double b = 0.0;
    double probability = 0.0;
    PureState post;
};

/// Outcome-indexed receiver rotations, one per (a, b) pair, a and b ascending.
struct CorrectionSet {
    int n = 0;
    std::vector<double> labels;  // ascending eigenvalues -j..+j
    std::vector<Mat> unitaries;  // index = ia*n + ib

    const Mat& at(int ia, int ib) const { return unitaries[ia * n + ib]; }
};

/// Dense pair unitary for the interaction, acting on (mode2, mode3) with
/// mode-2-major index layout. General16 is capped at 2j <= 7.
ModeOperator build_interaction(const InteractionSpec& spec, SpinJ j);

/// Applies the interaction to modes (mode_a, mode_a+1) of a multimode state.
/// KP/ScaledAlpha use the diagonal-in-product-eigenbasis route; General16
/// applies the dense pair unitary.
PureState apply_interaction(const PureState& state, const InteractionSpec& spec,
                            SpinJ j, int mode_a);

/// Runs interaction + joint measurement of Jz^(2), Jy^(3) on
/// resource(1,2) (x) input(3); returns all branches sorted by (a, b),
/// uncorrected, with branches below probability 1e-14 dropped.
std::vector<RawBranch> teleport_branches(const PureState& input,
                                         const PureState& resource,
                                         const InteractionSpec& spec);

/// exp[i (a Jy - b Jz)/j] for every outcome pair.
CorrectionSet make_simple_corrections(SpinJ j);

/// Outcome-dependent rotations about axes in the y-z plane chosen so that a
/// +x highest-weight input comes out with <Jy> = <Jz> = 0; cached per (a, b)
/// and applied to every input.
CorrectionSet make_orientation_corrections(SpinJ j, const PureState& resource,
                                           const InteractionSpec& spec);

CorrectionSet make_corrections(SpinJ j, CorrectionStrategy strategy,
                               const PureState& resource,
                               const InteractionSpec& spec);

/// Arbitrary outcome-indexed rotations built from a callback.
CorrectionSet make_custom_corrections(SpinJ j,
                                      const std::function<Mat(double, double)>& fn);

/// Applies one correction set to already-measured branches; lets several
/// correction sets share a single interaction + measurement pass.
std::vector<TeleportOutcome> apply_corrections(const std::vector<RawBranch>& branches,
                                               const CorrectionSet& corrections,
                                               SpinJ j);

std::vector<TeleportOutcome> teleport(const PureState& input,
                                      const PureState& resource,
                                      const InteractionSpec& spec,
                                      const CorrectionSet& corrections);

std::vector<TeleportOutcome> teleport(const PureState& input,
                                      const PureState& resource,
                                      const InteractionSpec& spec,
                                      CorrectionStrategy strategy);

double fidelity_conditional(const PureState& input, const TeleportOutcome& outcome);

/// Probability-weighted fidelity over the branches of one protocol run.
double fidelity_unconditional(const PureState& input,
                              const std::vector<TeleportOutcome>& outcomes);

/// Probability-weighted Var(J_axis) of the corrected outputs.
double output_variance(const std::vector<TeleportOutcome>& outcomes, Axis axis);

/// Weighted coherent-state ensemble e^{-theta^2/sigma} with solid-angle
/// quadrature nodes.
struct EnsembleSpec {
    double sigma = 0.0;           // radians^2
    double lambda = 0.0;          // 2 / (sigma j)
    std::vector<double> theta_nodes;
    std::vector<double> theta_weights;
    std::vector<double> phi_nodes;

    static EnsembleSpec make(double sigma, SpinJ j, int n_theta = 64,
                             int n_phi = 32);
};

/// Ensemble-averaged unconditional fidelity, normalized by the ensemble
/// weight on the same grid.
double average_fidelity_ensemble(const EnsembleSpec& ensemble,
                                 const PureState& resource,
                                 const InteractionSpec& spec,
                                 const CorrectionSet& corrections, SpinJ j);

/// One quadrature pass evaluated under several correction sets at once.
std::vector<double> average_fidelity_ensemble_multi(
    const EnsembleSpec& ensemble, const PureState& resource,
    const InteractionSpec& spec,
    const std::vector<const CorrectionSet*>& corrections, SpinJ j);

/// Best classically achievable average fidelity for the same ensemble:
/// (sigma j + 2) / (2 (sigma j + 1)).
double classical_bound(double sigma, SpinJ j);

struct MuOptimum {
    double mu = 0.0;
    double value = 0.0;
    bool endpoint_warning = false;
};

/// Golden-section search on log10(mu) for an arbitrary fidelity objective.
MuOptimum optimize_mu(const std::function<double(double)>& objective,
                      double mu_lo = 1e-3, double mu_hi = 1e3, int iters = 40);

/// Convenience objective: fidelity of teleporting the +x highest-weight state
/// with the simple rotation and the resource solved at each mu.
MuOptimum optimize_mu_for_coherent(SpinJ j, const InteractionSpec& spec);

/// Ground state of J_axis^2 - mu_s Jx (single mode); axis y or z.
PureState squeezed_input(SpinJ j, double mu_s, Axis axis);

/// Normalized e^{i theta Jy}|jj>_x - e^{-i theta Jy}|jj>_x. Throws when theta
/// is so small the difference vanishes.
PureState superposition_input(SpinJ j, double theta);

}  // namespace spinport
