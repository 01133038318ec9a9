#include "spinport/spin_core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace spinport {

namespace {

constexpr double kBranchPruneTol = 1e-14;
constexpr Complex kI{0.0, 1.0};

int checked_product(const std::vector<int>& dims) {
    int p = 1;
    for (int d : dims) {
        if (d < 1) throw std::invalid_argument("mode dimension must be >= 1");
        p *= d;
    }
    return p;
}

}  // namespace

SpinJ SpinJ::from(double j) {
    double tj = 2.0 * j;
    int two_j = static_cast<int>(std::lround(tj));
    if (two_j < 0 || std::abs(tj - two_j) > 1e-9)
        throw std::invalid_argument("spin must be a non-negative half-integer");
    return SpinJ{two_j};
}

const char* to_string(Axis axis) {
    switch (axis) {
        case Axis::X: return "x";
        case Axis::Y: return "y";
        case Axis::Z: return "z";
    }
    return "?";
}

bool ModeOperator::is_hermitian(double tol) const {
    return (entries - entries.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool ModeOperator::is_unitary(double tol) const {
    Mat d = entries * entries.adjoint() - Mat::Identity(dim, dim);
    return d.cwiseAbs().maxCoeff() <= tol;
}

int PureState::total_dim() const {
    int p = 1;
    for (int d : dims) p *= d;
    return p;
}

PureState make_state(std::vector<int> dims, Vec amp) {
    int total = checked_product(dims);
    if (amp.size() != total)
        throw std::invalid_argument("amplitude length does not match mode dimensions");
    double n = amp.norm();
    if (std::abs(n - 1.0) > 1e-12) {
        if (n < 1e-13) throw std::invalid_argument("cannot normalize a zero state");
        amp /= n;
    }
    PureState s;
    s.dims = std::move(dims);
    s.amp = std::move(amp);
    s.tags.assign(s.dims.size(), BasisTag{});
    return s;
}

double spin_label(SpinJ j, int index) { return j.value() - index; }

ModeOperator spin_operator(SpinJ j, Axis axis) {
    int n = j.dim();
    double jj = j.value();
    Mat m = Mat::Zero(n, n);
    switch (axis) {
        case Axis::Z:
            for (int i = 0; i < n; ++i) m(i, i) = jj - i;
            break;
        case Axis::X:
        case Axis::Y:
            // J+ |j m> = sqrt((j-m)(j+m+1)) |j m+1>, m = j - i.
            for (int i = 1; i < n; ++i) {
                double m_low = jj - i;
                double c = std::sqrt((jj - m_low) * (jj + m_low + 1.0));
                if (axis == Axis::X) {
                    m(i - 1, i) = 0.5 * c;
                    m(i, i - 1) = 0.5 * c;
                } else {
                    m(i - 1, i) = c / (2.0 * kI);
                    m(i, i - 1) = -c / (2.0 * kI);
                }
            }
            break;
    }
    return ModeOperator{n, std::move(m), BasisTag{}};
}

Mat exp_hermitian(const Mat& h, double scale) {
    Eigen::SelfAdjointEigenSolver<Mat> es(h);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("hermitian eigendecomposition failed");
    Vec phases(h.rows());
    for (Eigen::Index k = 0; k < h.rows(); ++k)
        phases(k) = std::exp(kI * scale * es.eigenvalues()(k));
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

ModeOperator rotation(SpinJ j, double gx, double gy, double gz, double angle) {
    if (!std::isfinite(gx) || !std::isfinite(gy) || !std::isfinite(gz) ||
        !std::isfinite(angle))
        throw std::invalid_argument("rotation parameters must be finite");
    Mat g = gx * spin_operator(j, Axis::X).entries +
            gy * spin_operator(j, Axis::Y).entries +
            gz * spin_operator(j, Axis::Z).entries;
    return ModeOperator{j.dim(), exp_hermitian(g, angle), BasisTag{}};
}

Mat spin_eigenbasis(SpinJ j, Axis axis) {
    int n = j.dim();
    switch (axis) {
        case Axis::Z: return Mat::Identity(n, n);
        // V Jz V^dag = Jx for V = e^{-i (pi/2) Jy}, and = Jy for
        // V = e^{+i (pi/2) Jx}; columns inherit the z-basis order m = j - i.
        case Axis::X: return rotation(j, 0, 1, 0, -M_PI / 2).entries;
        case Axis::Y: return rotation(j, 1, 0, 0, M_PI / 2).entries;
    }
    throw std::invalid_argument("bad axis");
}

void fix_global_phase(Vec& v) {
    Eigen::Index k = 0;
    double best = -1.0;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        double a = std::abs(v(i));
        if (a > best + 1e-15) {
            best = a;
            k = i;
        }
    }
    if (best <= 0.0) return;
    v *= std::conj(v(k)) / best;
}

PureState highest_weight_state(SpinJ j, Axis axis) {
    Vec v = spin_eigenbasis(j, axis).col(0);
    fix_global_phase(v);
    return make_state({j.dim()}, std::move(v));
}

PureState coherent_state(SpinJ j, double theta, double phi) {
    PureState hw = highest_weight_state(j, Axis::X);
    Vec v = rotation(j, 0, 1, 0, theta).entries * hw.amp;
    v = rotation(j, 1, 0, 0, phi).entries * v;
    fix_global_phase(v);
    return make_state({j.dim()}, std::move(v));
}

PureState tensor(const PureState& a, const PureState& b) {
    PureState out;
    out.dims = a.dims;
    out.dims.insert(out.dims.end(), b.dims.begin(), b.dims.end());
    out.tags = a.tags;
    out.tags.insert(out.tags.end(), b.tags.begin(), b.tags.end());
    out.amp.resize(a.amp.size() * b.amp.size());
    for (Eigen::Index i = 0; i < a.amp.size(); ++i)
        out.amp.segment(i * b.amp.size(), b.amp.size()) = a.amp(i) * b.amp;
    return out;
}

ModeOperator tensor(const ModeOperator& a, const ModeOperator& b) {
    ModeOperator out;
    out.dim = a.dim * b.dim;
    out.tag = a.tag;
    out.entries.resize(out.dim, out.dim);
    for (int i = 0; i < a.dim; ++i)
        for (int k = 0; k < a.dim; ++k)
            out.entries.block(i * b.dim, k * b.dim, b.dim, b.dim) =
                a.entries(i, k) * b.entries;
    return out;
}

ModeOperator embed_operator(const ModeOperator& op, int mode,
                            const std::vector<int>& dims) {
    if (mode < 0 || mode >= static_cast<int>(dims.size()))
        throw std::invalid_argument("mode index out of range");
    if (dims[mode] != op.dim)
        throw std::invalid_argument("operator dimension does not match mode");
    ModeOperator out{1, Mat::Ones(1, 1), op.tag};
    for (int m = 0; m < static_cast<int>(dims.size()); ++m) {
        ModeOperator next =
            (m == mode) ? op
                        : ModeOperator{dims[m], Mat::Identity(dims[m], dims[m]),
                                       BasisTag{}};
        out = tensor(out, next);
    }
    return out;
}

PureState apply_mode_matrix(const PureState& state, const Mat& m, int mode) {
    if (mode < 0 || mode >= state.num_modes())
        throw std::invalid_argument("mode index out of range");
    int d = state.dims[mode];
    if (m.rows() != d || m.cols() != d)
        throw std::invalid_argument("matrix does not match mode dimension");
    int inner = 1;
    for (int k = mode + 1; k < state.num_modes(); ++k) inner *= state.dims[k];
    int outer = state.total_dim() / (d * inner);

    PureState out = state;
    Vec scratch(d);
    for (int o = 0; o < outer; ++o) {
        for (int in = 0; in < inner; ++in) {
            Eigen::Index base = (static_cast<Eigen::Index>(o) * d) * inner + in;
            for (int k = 0; k < d; ++k)
                scratch(k) = state.amp(base + static_cast<Eigen::Index>(k) * inner);
            Vec res = m * scratch;
            for (int k = 0; k < d; ++k)
                out.amp(base + static_cast<Eigen::Index>(k) * inner) = res(k);
        }
    }
    return out;
}

PureState apply_pair_matrix(const PureState& state, const Mat& m, int mode) {
    if (mode < 0 || mode + 1 >= state.num_modes())
        throw std::invalid_argument("pair must name two adjacent modes");
    int d = state.dims[mode] * state.dims[mode + 1];
    if (m.rows() != d || m.cols() != d)
        throw std::invalid_argument("matrix does not match pair dimension");
    int inner = 1;
    for (int k = mode + 2; k < state.num_modes(); ++k) inner *= state.dims[k];
    int outer = state.total_dim() / (d * inner);

    PureState out = state;
    Vec scratch(d);
    for (int o = 0; o < outer; ++o) {
        for (int in = 0; in < inner; ++in) {
            Eigen::Index base = (static_cast<Eigen::Index>(o) * d) * inner + in;
            for (int k = 0; k < d; ++k)
                scratch(k) = state.amp(base + static_cast<Eigen::Index>(k) * inner);
            Vec res = m * scratch;
            for (int k = 0; k < d; ++k)
                out.amp(base + static_cast<Eigen::Index>(k) * inner) = res(k);
        }
    }
    return out;
}

PureState permute_modes(const PureState& state, const std::vector<int>& order) {
    int n = state.num_modes();
    if (static_cast<int>(order.size()) != n)
        throw std::invalid_argument("permutation length mismatch");
    std::vector<bool> seen(n, false);
    for (int o : order) {
        if (o < 0 || o >= n || seen[o])
            throw std::invalid_argument("invalid mode permutation");
        seen[o] = true;
    }

    std::vector<int> old_strides(n, 1);
    for (int k = n - 2; k >= 0; --k)
        old_strides[k] = old_strides[k + 1] * state.dims[k + 1];

    PureState out;
    out.dims.resize(n);
    out.tags.resize(n);
    for (int k = 0; k < n; ++k) {
        out.dims[k] = state.dims[order[k]];
        out.tags[k] = state.tags[order[k]];
    }
    out.amp.resize(state.amp.size());

    Eigen::Index total = state.amp.size();
    for (Eigen::Index new_index = 0; new_index < total; ++new_index) {
        Eigen::Index block = total;
        Eigen::Index rem = new_index;
        Eigen::Index old_index = 0;
        for (int k = 0; k < n; ++k) {
            block /= out.dims[k];
            int digit = static_cast<int>(rem / block);
            rem %= block;
            old_index += static_cast<Eigen::Index>(digit) * old_strides[order[k]];
        }
        out.amp(new_index) = state.amp(old_index);
    }
    return out;
}

Mat partial_trace(const PureState& state, const std::vector<int>& keep) {
    if (keep.empty()) throw std::invalid_argument("keep set must be non-empty");
    int n = state.num_modes();
    std::vector<bool> kept(n, false);
    for (int k : keep) {
        if (k < 0 || k >= n || kept[k])
            throw std::invalid_argument("invalid keep set");
        kept[k] = true;
    }
    std::vector<int> order(keep.begin(), keep.end());
    for (int k = 0; k < n; ++k)
        if (!kept[k]) order.push_back(k);
    PureState p = permute_modes(state, order);

    int kd = 1;
    for (int k : keep) kd *= state.dims[k];
    int td = p.total_dim() / kd;
    // Column-major map: psi(t, k) = amp[k*td + t], so
    // rho(k, k') = sum_t psi(t, k) conj(psi(t, k')).
    Eigen::Map<const Mat> psi(p.amp.data(), td, kd);
    return (psi.adjoint() * psi).conjugate();
}

Complex expectation(const PureState& state, const Mat& op, int mode) {
    PureState applied = apply_mode_matrix(state, op, mode);
    return state.amp.dot(applied.amp);
}

double variance(const PureState& state, const Mat& op, int mode) {
    // Hermitian observables only: <A^2> = ||A psi||^2.
    PureState applied = apply_mode_matrix(state, op, mode);
    double mean = std::real(state.amp.dot(applied.amp));
    return applied.amp.squaredNorm() - mean * mean;
}

std::vector<MeasurementBranch> measure_in_bases(
    const PureState& state, const std::vector<BasisMeasurement>& measurements) {
    int n = state.num_modes();
    std::vector<bool> measured(n, false);
    for (const auto& m : measurements) {
        if (m.mode < 0 || m.mode >= n)
            throw std::invalid_argument("measured mode out of range");
        if (measured[m.mode])
            throw std::invalid_argument("repeated mode in measurement");
        if (static_cast<int>(m.labels.size()) != state.dims[m.mode])
            throw std::invalid_argument("label count does not match mode dimension");
        measured[m.mode] = true;
    }

    // Rotate each measured mode into its measurement basis, then bring the
    // measured modes to the front so every joint outcome is one contiguous
    // slice over the unmeasured modes.
    PureState rotated = state;
    for (const auto& m : measurements)
        rotated = apply_mode_matrix(rotated, m.basis.adjoint(), m.mode);

    std::vector<int> order;
    for (const auto& m : measurements) order.push_back(m.mode);
    for (int k = 0; k < n; ++k)
        if (!measured[k]) order.push_back(k);
    rotated = permute_modes(rotated, order);

    int branches = 1;
    for (const auto& m : measurements) branches *= state.dims[m.mode];
    int rest = rotated.total_dim() / branches;

    std::vector<int> rest_dims(rotated.dims.begin() + measurements.size(),
                               rotated.dims.end());
    if (rest_dims.empty()) rest_dims = {1};

    std::vector<MeasurementBranch> out;
    out.reserve(branches);
    for (int b = 0; b < branches; ++b) {
        Vec slice = rotated.amp.segment(static_cast<Eigen::Index>(b) * rest, rest);
        double p = slice.squaredNorm();
        if (p < kBranchPruneTol) continue;
        MeasurementBranch br;
        br.probability = p;
        int rem = b;
        br.outcomes.resize(measurements.size());
        for (int k = static_cast<int>(measurements.size()) - 1; k >= 0; --k) {
            int d = state.dims[measurements[k].mode];
            br.outcomes[k] = measurements[k].labels[rem % d];
            rem /= d;
        }
        br.post.dims = rest_dims;
        br.post.tags.assign(rest_dims.size(), BasisTag{});
        br.post.amp = slice / std::sqrt(p);
        out.push_back(std::move(br));
    }
    return out;
}

std::vector<MeasurementBranch> measure_commuting(
    const PureState& state,
    const std::vector<std::pair<int, ModeOperator>>& observables) {
    std::vector<BasisMeasurement> ms;
    ms.reserve(observables.size());
    for (const auto& [mode, op] : observables) {
        if (mode < 0 || mode >= state.num_modes())
            throw std::invalid_argument("measured mode out of range");
        if (op.dim != state.dims[mode])
            throw std::invalid_argument("observable dimension mismatch");
        Eigen::SelfAdjointEigenSolver<Mat> es(op.entries);
        if (es.info() != Eigen::Success)
            throw std::runtime_error("observable eigendecomposition failed");
        BasisMeasurement m;
        m.mode = mode;
        m.basis = es.eigenvectors();
        for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
            Vec col = m.basis.col(k);
            fix_global_phase(col);
            m.basis.col(k) = col;
            m.labels.push_back(es.eigenvalues()(k));
        }
        ms.push_back(std::move(m));
    }
    return measure_in_bases(state, ms);
}

PureState apply_pair_spin_interaction(const PureState& state, int mode_a,
                                      Axis axis_a, int mode_b, Axis axis_b,
                                      double alpha) {
    if (mode_a == mode_b)
        throw std::invalid_argument("interaction modes must be distinct");
    SpinJ ja = SpinJ{state.dims[mode_a] - 1};
    SpinJ jb = SpinJ{state.dims[mode_b] - 1};
    Mat ba = spin_eigenbasis(ja, axis_a);
    Mat bb = spin_eigenbasis(jb, axis_b);

    PureState s = state;
    if (axis_a != Axis::Z) s = apply_mode_matrix(s, ba.adjoint(), mode_a);
    if (axis_b != Axis::Z) s = apply_mode_matrix(s, bb.adjoint(), mode_b);

    // Diagonal phases e^{i alpha m_a m_b} over the joint eigenbasis.
    int n = s.num_modes();
    std::vector<int> strides(n, 1);
    for (int k = n - 2; k >= 0; --k) strides[k] = strides[k + 1] * s.dims[k + 1];
    Eigen::Index total = s.amp.size();
    for (Eigen::Index idx = 0; idx < total; ++idx) {
        int ia = static_cast<int>((idx / strides[mode_a]) % s.dims[mode_a]);
        int ib = static_cast<int>((idx / strides[mode_b]) % s.dims[mode_b]);
        double phase = alpha * spin_label(ja, ia) * spin_label(jb, ib);
        s.amp(idx) *= std::exp(kI * phase);
    }

    if (axis_a != Axis::Z) s = apply_mode_matrix(s, ba, mode_a);
    if (axis_b != Axis::Z) s = apply_mode_matrix(s, bb, mode_b);
    return s;
}

Mat phase_basis_matrix(SpinJ j, Axis axis) {
    int n = j.dim();
    Mat spin_basis = spin_eigenbasis(j, axis);
    Mat out(n, n);
    bool integer = j.is_integer();
    for (int col = 0; col < n; ++col) {
        double m = -j.value() + col;
        Vec v = Vec::Zero(n);
        for (int row_spin = 0; row_spin < n; ++row_spin) {
            double nn = spin_label(j, row_spin);
            double arg = integer
                             ? 2.0 * M_PI * m * nn / n
                             : 2.0 * M_PI * (m + 0.5) * (nn + 0.5) / n;
            v += (std::exp(kI * arg) / std::sqrt(double(n))) *
                 spin_basis.col(row_spin);
        }
        out.col(col) = v;
    }
    return out;
}

std::vector<PureState> phase_states(SpinJ j, Axis axis) {
    Mat m = phase_basis_matrix(j, axis);
    std::vector<PureState> out;
    out.reserve(j.dim());
    for (int k = 0; k < j.dim(); ++k) {
        Vec v = m.col(k);
        PureState s = make_state({j.dim()}, std::move(v));
        s.tags[0] = BasisTag{axis, BasisKind::Phase};
        out.push_back(std::move(s));
    }
    return out;
}

ModeOperator phase_operator(SpinJ j, Axis axis) {
    Mat basis = phase_basis_matrix(j, axis);
    Mat op = Mat::Zero(j.dim(), j.dim());
    for (int k = 0; k < j.dim(); ++k) {
        double m = -j.value() + k;
        op += m * (basis.col(k) * basis.col(k).adjoint());
    }
    return ModeOperator{j.dim(), std::move(op), BasisTag{}};
}

PureState maximally_entangled_pair(SpinJ j) {
    int n = j.dim();
    Mat basis = spin_eigenbasis(j, Axis::Y);
    Vec amp = Vec::Zero(static_cast<Eigen::Index>(n) * n);
    for (int m = 0; m < n; ++m) {
        const Vec col = basis.col(m);
        for (int a = 0; a < n; ++a)
            amp.segment(static_cast<Eigen::Index>(a) * n, n) += col(a) * col;
    }
    amp /= std::sqrt(double(n));
    fix_global_phase(amp);
    return make_state({n, n}, std::move(amp));
}

Vec random_state_vector(int dim, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    Vec v(dim);
    for (int i = 0; i < dim; ++i) v(i) = Complex(g(rng), g(rng));
    v /= v.norm();
    return v;
}

PureState random_state(const std::vector<int>& dims, std::mt19937_64& rng) {
    int total = checked_product(dims);
    return make_state(dims, random_state_vector(total, rng));
}

}  // namespace spinport
