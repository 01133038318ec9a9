#include "spinport/perfect_tele.hpp"

#include <cmath>
#include <stdexcept>

namespace spinport {

namespace {

constexpr Complex kI{0.0, 1.0};

int mod1n(long long x, int n) {
    long long r = (x - 1) % n;
    if (r < 0) r += n;
    return static_cast<int>(r) + 1;  // canonical range 1..N
}

// index of the phase-state label x (labels run -j..+j and are periodic mod N)
int phase_index(double label, SpinJ j) {
    long long shifted = std::llround(label + j.value());
    long long r = shifted % j.dim();
    if (r < 0) r += j.dim();
    return static_cast<int>(r);
}

// conjugate (discrete Fourier) basis over computational labels 1..N:
// column m-1 holds N^{-1/2} sum_n e^{i s 2pi m n / N} |n>
Mat fourier_basis(int n, int sign) {
    Mat f(n, n);
    for (int m = 1; m <= n; ++m)
        for (int r = 1; r <= n; ++r)
            f(r - 1, m - 1) =
                std::exp(kI * (sign * 2.0 * M_PI * m * r / n)) / std::sqrt(double(n));
    return f;
}

}  // namespace

BellBasis bell_basis(int n, std::array<int, 3> signs,
                     std::array<int, 2> conjugate_signs) {
    if (n < 2) throw std::invalid_argument("bell basis needs dimension >= 2");
    for (int s : signs)
        if (s != 1 && s != -1) throw std::invalid_argument("signs must be +-1");
    for (int s : conjugate_signs)
        if (s != 1 && s != -1) throw std::invalid_argument("signs must be +-1");

    BellBasis basis;
    basis.n = n;
    basis.signs = signs;
    basis.conjugate_signs = conjugate_signs;
    basis.states.reserve(n * n);
    for (int p = 1; p <= n; ++p)
        for (int q = 1; q <= n; ++q) {
            Vec amp = Vec::Zero(static_cast<Eigen::Index>(n) * n);
            for (int m = 1; m <= n; ++m) {
                int second = mod1n(static_cast<long long>(signs[1]) * m +
                                       static_cast<long long>(signs[2]) * q,
                                   n);
                Complex phase =
                    std::exp(kI * (signs[0] * 2.0 * M_PI * m * p / n));
                amp((m - 1) * n + (second - 1)) = phase / std::sqrt(double(n));
            }
            basis.states.push_back(make_state({n, n}, std::move(amp)));
        }
    return basis;
}

IdentityReport bell_factorization_check(SpinJ j, bool positive_sign) {
    int n = j.dim();
    bool integer = j.is_integer();
    Mat y_basis = spin_eigenbasis(j, Axis::Y);
    Mat phase_y = phase_basis_matrix(j, Axis::Y);
    Mat phase_z = phase_basis_matrix(j, Axis::Z);

    IdentityReport report;
    report.max_deviation = 0.0;
    double alpha = (positive_sign ? 1.0 : -1.0) * 2.0 * M_PI / n;

    for (int ip = 0; ip < n; ++ip) {
        double p = -j.value() + ip;
        for (int iq = 0; iq < n; ++iq) {
            double q = -j.value() + iq;

            // Bell state over the (Jy eigenstate, z phase state) mode
            // identification, written out as a double sum over the Jy (x) Jz
            // eigenvalue grid and then expanded into the z (x) z
            // representation. The |m>|q - m> family shifts the index of the
            // second-mode phase state by one because 2(j+1) = N + 1.
            Vec coeff(static_cast<Eigen::Index>(n) * n);
            for (int ia = 0; ia < n; ++ia) {
                double m = j.value() - ia;  // Jy eigenvalue of column ia
                for (int iz = 0; iz < n; ++iz) {
                    double nn = j.value() - iz;  // Jz eigenvalue of row iz
                    double second = positive_sign ? m + q : q - 1.0 - m;
                    double arg;
                    if (integer)
                        arg = 2.0 * M_PI * (m * p + second * nn) / n;
                    else
                        arg = 2.0 * M_PI *
                              (m * p + (second + 0.5) * (nn + 0.5)) / n;
                    coeff(static_cast<Eigen::Index>(ia) * n + iz) =
                        std::exp(kI * arg) / double(n);
                }
            }
            PureState lhs = make_state({n, n}, std::move(coeff));
            lhs = apply_mode_matrix(lhs, y_basis, 0);

            int ipp = positive_sign ? ip : (integer ? ip : phase_index(p - 1.0, j));
            int iqq = positive_sign ? iq : phase_index(q - 1.0, j);
            Vec prod(static_cast<Eigen::Index>(n) * n);
            for (int r = 0; r < n; ++r)
                prod.segment(static_cast<Eigen::Index>(r) * n, n) =
                    phase_y(r, ipp) * phase_z.col(iqq);
            PureState rhs = make_state({n, n}, std::move(prod));
            rhs = apply_pair_spin_interaction(rhs, 0, Axis::Y, 1, Axis::Z, alpha);

            double dev = 1.0 - std::abs(lhs.amp.dot(rhs.amp));
            report.max_deviation = std::max(report.max_deviation, dev);
        }
    }
    report.pass = report.max_deviation < 1e-10;
    return report;
}

CorrectionTable derive_correction(SpinJ j) {
    std::vector<Vec> probes;
    for (int k = 0; k < j.dim(); ++k) {
        Vec e = Vec::Zero(j.dim());
        e(k) = 1.0;
        probes.push_back(std::move(e));
    }
    return derive_correction(j, probes);
}

CorrectionTable derive_correction(SpinJ j, const std::vector<Vec>& probes) {
    int n = j.dim();
    if (static_cast<int>(probes.size()) != n)
        throw std::invalid_argument("need exactly N spanning probe states");

    Mat probe_mat(n, n);
    for (int k = 0; k < n; ++k) {
        if (probes[k].size() != n)
            throw std::invalid_argument("probe dimension mismatch");
        probe_mat.col(k) = probes[k];
    }
    Eigen::FullPivLU<Mat> lu(probe_mat);
    if (!lu.isInvertible())
        throw std::invalid_argument("probe states do not span the input space");

    PureState resource = maximally_entangled_pair(j);
    Mat phase_y = phase_basis_matrix(j, Axis::Y);
    Mat phase_z = phase_basis_matrix(j, Axis::Z);

    // raw(pq): conditional output per probe, assembled into columns
    std::vector<Mat> raw(n * n, Mat::Zero(n, n));
    for (int k = 0; k < n; ++k) {
        Vec pv = probes[k];
        pv /= pv.norm();
        PureState joint = tensor(resource, make_state({n}, pv));
        joint = apply_pair_spin_interaction(joint, 1, Axis::Y, 2, Axis::Z,
                                            2.0 * M_PI / n);
        joint = apply_mode_matrix(joint, phase_y.adjoint(), 1);
        joint = apply_mode_matrix(joint, phase_z.adjoint(), 2);
        double scale = probes[k].norm();
        for (int ip = 0; ip < n; ++ip)
            for (int iq = 0; iq < n; ++iq)
                for (int i1 = 0; i1 < n; ++i1)
                    raw[ip * n + iq](i1, k) =
                        scale *
                        joint.amp((static_cast<Eigen::Index>(i1) * n + ip) * n + iq);
    }

    Mat probe_inv = probe_mat.inverse();

    CorrectionTable table;
    table.j = j;
    table.channels.resize(n * n);
    table.unitaries.resize(n * n);
    for (int k = 0; k < n * n; ++k) {
        Mat a = raw[k] * probe_inv;  // conditional map on an arbitrary input
        double sigma = std::sqrt(std::real((a.adjoint() * a).trace()) / n);
        if (sigma < 1e-14)
            throw std::runtime_error("conditional map vanished");
        Mat v = a / sigma;
        double dev = (v.adjoint() * v - Mat::Identity(n, n)).cwiseAbs().maxCoeff();
        if (dev > 1e-8)
            throw std::runtime_error(
                "conditional map is not proportional to a unitary");
        Complex det = v.determinant();
        v *= std::exp(-kI * std::arg(det) / double(n));
        table.channels[k] = std::move(a);
        table.unitaries[k] = v.adjoint();
    }
    return table;
}

std::vector<TeleportOutcome> perfect_teleport(const PureState& input,
                                              const CorrectionTable& table) {
    if (input.num_modes() != 1 || input.dims[0] != table.n())
        throw std::invalid_argument("input dimension mismatch");
    int n = table.n();
    std::vector<TeleportOutcome> out;
    out.reserve(n * n);
    for (int ip = 0; ip < n; ++ip)
        for (int iq = 0; iq < n; ++iq) {
            Vec raw = table.channel(ip, iq) * input.amp;
            double p = raw.squaredNorm();
            TeleportOutcome oc;
            oc.a = -table.j.value() + ip;
            oc.b = -table.j.value() + iq;
            oc.probability = p;
            Vec corrected = table.unitary(ip, iq) * raw;
            corrected /= corrected.norm();
            oc.output = make_state({n}, std::move(corrected));
            out.push_back(std::move(oc));
        }
    return out;
}

std::vector<TeleportOutcome> perfect_teleport_mode(const PureState& carrier,
                                                   int mode,
                                                   const CorrectionTable& table) {
    if (mode < 0 || mode >= carrier.num_modes())
        throw std::invalid_argument("mode index out of range");
    if (carrier.dims[mode] != table.n())
        throw std::invalid_argument("teleported mode dimension mismatch");
    int n = table.n();
    std::vector<TeleportOutcome> out;
    out.reserve(n * n);
    for (int ip = 0; ip < n; ++ip)
        for (int iq = 0; iq < n; ++iq) {
            PureState raw = apply_mode_matrix(carrier, table.channel(ip, iq), mode);
            double p = raw.amp.squaredNorm();
            raw.amp /= std::sqrt(p);
            TeleportOutcome oc;
            oc.a = -table.j.value() + ip;
            oc.b = -table.j.value() + iq;
            oc.probability = p;
            oc.output = apply_mode_matrix(raw, table.unitary(ip, iq), mode);
            out.push_back(std::move(oc));
        }
    return out;
}

IdentityReport appendix_equivalence_check(SpinJ j) {
    int n = j.dim();
    BellBasis basis = bell_basis(n);
    Mat f = fourier_basis(n, +1);

    // number difference, diagonal in the computational product basis
    Vec diff_diag(static_cast<Eigen::Index>(n) * n);
    Vec sum_diag(static_cast<Eigen::Index>(n) * n);
    for (int m2 = 1; m2 <= n; ++m2)
        for (int m3 = 1; m3 <= n; ++m3) {
            diff_diag((m2 - 1) * n + (m3 - 1)) = mod1n(m3 - m2, n);
            sum_diag((m2 - 1) * n + (m3 - 1)) = mod1n(m2 + m3, n);
        }

    IdentityReport report;
    report.max_deviation = 0.0;
    for (int p = 1; p <= n; ++p)
        for (int q = 1; q <= n; ++q) {
            const PureState& bell = basis.at(p, q);
            Vec d = diff_diag.cwiseProduct(bell.amp) - double(q) * bell.amp;
            report.max_deviation = std::max(report.max_deviation, d.norm());

            // phase-sum operator: conjugate the mod-N diagonal by F (x) F
            PureState rotated = apply_mode_matrix(bell, f.adjoint(), 0);
            rotated = apply_mode_matrix(rotated, f.adjoint(), 1);
            Vec s = sum_diag.cwiseProduct(rotated.amp) - double(p) * rotated.amp;
            report.max_deviation = std::max(report.max_deviation, s.norm());
        }
    report.pass = report.max_deviation < 1e-10;
    return report;
}

}  // namespace spinport
