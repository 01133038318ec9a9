#pragma once

#include "spinport/spin_core.hpp"
#include "spinport/teleport.hpp"

#include <array>

namespace spinport {

/// The N^2 generalized Bell states
///   |p,q> = N^{-1/2} sum_m e^{i s1 2pi m p / N} |m> (x) |s2 m + s3 q mod N>
/// over the computational basis m = 1..N, plus the sign conventions used for
/// the conjugate (Fourier) bases of the two modes.
struct BellBasis {
    int n = 0;
    std::array<int, 3> signs{1, 1, 1};
    std::array<int, 2> conjugate_signs{1, 1};
    std::vector<PureState> states;  // index (p-1)*n + (q-1)

    const PureState& at(int p, int q) const {
        return states[(p - 1) * n + (q - 1)];
    }
};

BellBasis bell_basis(int n, std::array<int, 3> signs = {1, 1, 1},
                     std::array<int, 2> conjugate_signs = {1, 1});

struct IdentityReport {
    bool pass = false;
    double max_deviation = 0.0;
};

/// Verifies that every Bell state over the (Jy-eigenstate, z-phase-state)
/// mode identification factorizes as e^{+-i (2pi/N) Jy^(2) Jz^(3)} applied to
/// a product of phase states. `positive_sign` selects the |m>|m+q> (true) or
/// |m>|q-m> (false) Bell family.
IdentityReport bell_factorization_check(SpinJ j, bool positive_sign = true);

/// Per-outcome conditional maps of the exact protocol and the receiver
/// rotations that undo them. channels[k] is the unnormalized conditional map
/// for outcome index k = ip*N + iq; unitaries[k] is its unitary inverse with
/// a unit-determinant phase convention.
struct CorrectionTable {
    SpinJ j;
    std::vector<Mat> channels;
    std::vector<Mat> unitaries;

    int n() const { return j.dim(); }
    const Mat& channel(int ip, int iq) const { return channels[ip * n() + iq]; }
    const Mat& unitary(int ip, int iq) const { return unitaries[ip * n() + iq]; }
};

/// Derives the correction for every phase-measurement outcome by teleporting
/// the probe states through the exact protocol (resource = the y-diagonal
/// maximally entangled pair, coupling 2pi/N, phase measurements on both
/// measured modes) and inverting the assembled conditional maps. Throws if an
/// assembled map is not proportional to a unitary. Probes default to the
/// computational basis; any spanning set gives the same table.
CorrectionTable derive_correction(SpinJ j);
CorrectionTable derive_correction(SpinJ j, const std::vector<Vec>& probes);

/// Exact teleportation of a single-mode input. Outcome labels (a, b) are the
/// phase labels (p, q) in -j..+j; all branch probabilities are 1/N^2 and all
/// conditional fidelities are 1 up to roundoff.
std::vector<TeleportOutcome> perfect_teleport(const PureState& input,
                                              const CorrectionTable& table);

/// Same protocol teleporting one mode of a larger state; spectator modes ride
/// along unchanged, and the teleported mode keeps its position.
std::vector<TeleportOutcome> perfect_teleport_mode(const PureState& carrier,
                                                   int mode,
                                                   const CorrectionTable& table);

/// Checks that each Bell state |p,q> is an eigenstate of the mod-N difference
/// of number operators with eigenvalue q and of the mod-N sum of phase
/// operators with eigenvalue p.
IdentityReport appendix_equivalence_check(SpinJ j);

}  // namespace spinport
