#pragma once

#include <Eigen/Dense>

#include <complex>
#include <random>
#include <string>
#include <vector>

namespace spinport {

using Complex = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;
using RealVec = Eigen::VectorXd;
using RealMat = Eigen::MatrixXd;

/// Half-integer spin quantum number, stored as 2j to keep it exact.
struct SpinJ {
    int two_j = 0;

    static SpinJ from(double j);

    double value() const { return 0.5 * two_j; }
    int dim() const { return two_j + 1; }
    bool is_integer() const { return two_j % 2 == 0; }
};

enum class Axis { X, Y, Z };

const char* to_string(Axis axis);

enum class BasisKind { Spin, Phase };

/// Which single-mode basis a vector of amplitudes (or matrix of entries) is
/// expressed in. Everything the library constructs lives in the z-spin
/// representation unless a function explicitly changes it.
struct BasisTag {
    Axis axis = Axis::Z;
    BasisKind kind = BasisKind::Spin;
};

/// Complex matrix acting on one mode or on a labeled pair of modes.
struct ModeOperator {
    int dim = 0;
    Mat entries;
    BasisTag tag;

    bool is_hermitian(double tol = 1e-12) const;
    bool is_unitary(double tol = 1e-12) const;
};

/// Normalized state on an ordered tensor product of modes. Amplitude layout is
/// mode-0 major: index = ((i0*d1 + i1)*d2 + i2)...
struct PureState {
    std::vector<int> dims;
    Vec amp;
    std::vector<BasisTag> tags;

    int num_modes() const { return static_cast<int>(dims.size()); }
    int total_dim() const;
    double norm() const { return amp.norm(); }
};

PureState make_state(std::vector<int> dims, Vec amp);

/// One branch of a projective measurement: joint eigenvalues, probability and
/// the renormalized state of the unmeasured modes.
struct MeasurementBranch {
    std::vector<double> outcomes;
    double probability = 0.0;
    PureState post;
};

// ---------------------------------------------------------------------------
// Single-mode constructions
// ---------------------------------------------------------------------------

/// Angular momentum component in the z-spin basis. Basis order is m = j, j-1,
/// ..., -j (index i holds m = j - i).
ModeOperator spin_operator(SpinJ j, Axis axis);

/// Eigenvalue of index i under any spin component: m = j - i.
double spin_label(SpinJ j, int index);

/// Unitary with columns |j, j-i>_axis obtained by rotating the z basis
/// (identity for z). Column phases are fixed by the rotation itself so that
/// sums like sum_m |jm>|jm> built from these columns behave coherently.
Mat spin_eigenbasis(SpinJ j, Axis axis);

/// Eigenstate of J_axis with eigenvalue +j, largest z-amplitude real positive.
PureState highest_weight_state(SpinJ j, Axis axis);

/// e^{i phi Jx} e^{i theta Jy} applied to the +x highest-weight state.
PureState coherent_state(SpinJ j, double theta, double phi);

/// exp(i angle (gx Jx + gy Jy + gz Jz)) via spectral decomposition.
ModeOperator rotation(SpinJ j, double gx, double gy, double gz, double angle);

/// exp(i scale H) for Hermitian H.
Mat exp_hermitian(const Mat& h, double scale);

/// Fixes the global phase: largest-magnitude entry becomes real positive.
void fix_global_phase(Vec& v);

// ---------------------------------------------------------------------------
// Composition and reduction
// ---------------------------------------------------------------------------

PureState tensor(const PureState& a, const PureState& b);
ModeOperator tensor(const ModeOperator& a, const ModeOperator& b);

/// Pads identity on every mode except `mode` and returns the full operator.
ModeOperator embed_operator(const ModeOperator& op, int mode,
                            const std::vector<int>& dims);

/// Applies a single-mode matrix to one mode of a multi-mode state.
PureState apply_mode_matrix(const PureState& state, const Mat& m, int mode);

/// Applies a matrix acting jointly on two adjacent modes (mode, mode+1).
PureState apply_pair_matrix(const PureState& state, const Mat& m, int mode);

/// Reorders modes; amplitude layout follows.
PureState permute_modes(const PureState& state, const std::vector<int>& order);

/// Reduced density matrix over the kept modes (in the order given).
Mat partial_trace(const PureState& state, const std::vector<int>& keep);

Complex expectation(const PureState& state, const Mat& op, int mode);
double variance(const PureState& state, const Mat& op, int mode);

// ---------------------------------------------------------------------------
// Measurement
// ---------------------------------------------------------------------------

/// Joint projective measurement of observables on distinct modes. Enumerates
/// all joint eigenvalue tuples; branches with probability < 1e-14 are dropped
/// and the retained probabilities are not rescaled.
std::vector<MeasurementBranch> measure_commuting(
    const PureState& state,
    const std::vector<std::pair<int, ModeOperator>>& observables);

/// Same measurement semantics, but in explicitly given orthonormal bases with
/// caller-supplied outcome labels. Column k of each basis is the eigenvector
/// labeled labels[k].
struct BasisMeasurement {
    int mode;
    Mat basis;
    std::vector<double> labels;
};
std::vector<MeasurementBranch> measure_in_bases(
    const PureState& state, const std::vector<BasisMeasurement>& measurements);

// ---------------------------------------------------------------------------
// Ising-type pair interaction
// ---------------------------------------------------------------------------

/// exp(i alpha J_a^{(mode_a)} J_b^{(mode_b)}) applied by switching both modes
/// to the appropriate spin eigenbases and multiplying diagonal phases. Cost is
/// a few dense mode-local products instead of one dim^2 x dim^2 exponential.
PureState apply_pair_spin_interaction(const PureState& state, int mode_a,
                                      Axis axis_a, int mode_b, Axis axis_b,
                                      double alpha);

// ---------------------------------------------------------------------------
// Phase (conjugate) basis
// ---------------------------------------------------------------------------

/// The N discrete-Fourier conjugates of the axis spin basis, ordered
/// m = -j..+j. Integer spin uses phases e^{i 2pi m n / N}; half-odd-integer
/// spin uses e^{i 2pi (m+1/2)(n+1/2) / N}.
std::vector<PureState> phase_states(SpinJ j, Axis axis);

/// Same states as matrix columns (column k holds label m = -j + k).
Mat phase_basis_matrix(SpinJ j, Axis axis);

/// Hermitian operator with the phase states as eigenvectors and spectrum
/// -j..+j.
ModeOperator phase_operator(SpinJ j, Axis axis);

// ---------------------------------------------------------------------------
// Shared entangled pair
// ---------------------------------------------------------------------------

/// (2j+1)^{-1/2} sum_m |jm>_y |jm>_y: the zero-variance, zero-mean two-mode
/// state; maximally entangled.
PureState maximally_entangled_pair(SpinJ j);

/// Normalized state with i.i.d. complex Gaussian amplitudes.
Vec random_state_vector(int dim, std::mt19937_64& rng);
PureState random_state(const std::vector<int>& dims, std::mt19937_64& rng);

}  // namespace spinport
