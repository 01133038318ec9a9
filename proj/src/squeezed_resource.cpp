#include "spinport/squeezed_resource.hpp"

#include "spinport/lanczos.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace spinport {

namespace {

// Real tridiagonal pieces of the collective operators in the z (x) basis:
// X = Jx, K = i Jy (real antisymmetric). (Jy^(-))^2 = -(K^(-))^2.
struct CollectiveReal {
    int n;
    Eigen::VectorXd couplings;  // c_i between levels i-1 and i
    Eigen::VectorXd m_values;   // m = j - i

    explicit CollectiveReal(SpinJ j) : n(j.dim()), couplings(j.dim()), m_values(j.dim()) {
        double jj = j.value();
        couplings(0) = 0.0;
        for (int i = 1; i < n; ++i) {
            double m_low = jj - i;
            couplings(i) = std::sqrt((jj - m_low) * (jj + m_low + 1.0));
        }
        for (int i = 0; i < n; ++i) m_values(i) = jj - i;
    }

    // y += s * (X x) on the given mode of an n x n layout (mode-0 major)
    void add_x(const Eigen::VectorXd& x, Eigen::VectorXd& y, int mode, double s) const {
        int stride = (mode == 0) ? n : 1;
        int other = (mode == 0) ? 1 : n;
        for (int o = 0; o < n; ++o) {
            int base = o * other;
            for (int i = 1; i < n; ++i) {
                double c = 0.5 * s * couplings(i);
                y(base + (i - 1) * stride) += c * x(base + i * stride);
                y(base + i * stride) += c * x(base + (i - 1) * stride);
            }
        }
    }

    // y += s * (K x), K = i Jy
    void add_k(const Eigen::VectorXd& x, Eigen::VectorXd& y, int mode, double s) const {
        int stride = (mode == 0) ? n : 1;
        int other = (mode == 0) ? 1 : n;
        for (int o = 0; o < n; ++o) {
            int base = o * other;
            for (int i = 1; i < n; ++i) {
                double c = 0.5 * s * couplings(i);
                y(base + (i - 1) * stride) += c * x(base + i * stride);
                y(base + i * stride) -= c * x(base + (i - 1) * stride);
            }
        }
    }
};

struct TwoModeOps {
    Mat jx, jy, jz;
    explicit TwoModeOps(SpinJ j)
        : jx(spin_operator(j, Axis::X).entries),
          jy(spin_operator(j, Axis::Y).entries),
          jz(spin_operator(j, Axis::Z).entries) {}
};

// w = (A ox I + s I ox A) psi for a two-mode state
Vec collective_apply(const PureState& state, const Mat& a, double s) {
    Vec w = apply_mode_matrix(state, a, 0).amp;
    w += s * apply_mode_matrix(state, a, 1).amp;
    return w;
}

struct ChiParts {
    double vz_plus, vy_minus, mean_jx_plus;
};

ChiParts chi_parts(const PureState& state, const TwoModeOps& ops) {
    Vec wz = collective_apply(state, ops.jz, +1.0);
    Vec wy = collective_apply(state, ops.jy, -1.0);
    Vec wx = collective_apply(state, ops.jx, +1.0);
    double mz = std::real(state.amp.dot(wz));
    double my = std::real(state.amp.dot(wy));
    return ChiParts{wz.squaredNorm() - mz * mz, wy.squaredNorm() - my * my,
                    std::real(state.amp.dot(wx))};
}

void check_two_mode(const PureState& state) {
    if (state.num_modes() != 2 || state.dims[0] != state.dims[1])
        throw std::invalid_argument("expected two modes of equal dimension");
}

}  // namespace

SqueezedResource solve_resource(SpinJ j, double mu, int dim_cap) {
    if (!std::isfinite(mu)) throw std::invalid_argument("mu must be finite");
    int n = j.dim();
    int dim = n * n;
    if (dim > dim_cap)
        throw std::invalid_argument("two-mode dimension exceeds the configured cap");

    CollectiveReal c(j);
    Eigen::VectorXd dz2(dim);
    for (int i1 = 0; i1 < n; ++i1)
        for (int i2 = 0; i2 < n; ++i2) {
            double m = c.m_values(i1) + c.m_values(i2);
            dz2(i1 * n + i2) = m * m;
        }

    SymmetricOp h = [&](const Eigen::VectorXd& x, Eigen::VectorXd& y) {
        y = dz2.cwiseProduct(x);
        Eigen::VectorXd k1 = Eigen::VectorXd::Zero(dim);
        c.add_k(x, k1, 0, 1.0);
        c.add_k(x, k1, 1, -1.0);
        Eigen::VectorXd k2 = Eigen::VectorXd::Zero(dim);
        c.add_k(k1, k2, 0, 1.0);
        c.add_k(k1, k2, 1, -1.0);
        y -= k2;  // (Jy^(-))^2 = -(K^(-))^2
        if (mu != 0.0) {
            c.add_x(x, y, 0, -mu);
            c.add_x(x, y, 1, -mu);
        }
    };

    double jj = j.value();
    double scale = 8.0 * jj * jj + 2.0 * jj * std::abs(mu) + 1.0;
    LowestPairs pairs = lowest_eigenpairs(h, dim, std::min(2, dim), scale);

    SqueezedResource res;
    res.j = j;
    res.mu = mu;
    res.nu = pairs.values(0);
    if (pairs.values.size() > 1) {
        res.gap = pairs.values(1) - pairs.values(0);
        res.degenerate = res.gap < 1e-10;
    }

    Eigen::VectorXd ground = pairs.vectors.col(0);
    Eigen::VectorXd hx(dim);
    h(ground, hx);
    res.residual = (hx - res.nu * ground).norm();
    if (res.residual > 1e-8 * scale)
        throw std::runtime_error("resource eigensolve failed to converge");

    Vec amp = ground.cast<Complex>();
    fix_global_phase(amp);
    res.state = make_state({n, n}, std::move(amp));

    TwoModeOps ops(j);
    ChiParts parts = chi_parts(res.state, ops);
    res.vz_plus = parts.vz_plus;
    res.vy_minus = parts.vy_minus;
    res.mean_jx_plus = parts.mean_jx_plus;
    return res;
}

double chi(const PureState& state, double mu) {
    check_two_mode(state);
    SpinJ j{state.dims[0] - 1};
    TwoModeOps ops(j);
    ChiParts parts = chi_parts(state, ops);
    return parts.vz_plus + parts.vy_minus - mu * parts.mean_jx_plus;
}

bool is_witnessed_entangled(const PureState& state) {
    return chi(state, 1.0) < -1e-10;
}

ChiMinimum minimize_chi_direct(SpinJ j, double mu, int seeds,
                               std::uint64_t rng_seed, int max_iter) {
    int n = j.dim();
    TwoModeOps ops(j);
    std::mt19937_64 rng(rng_seed);

    auto chi_and_grad = [&](const PureState& s, Vec* grad) {
        Vec wz = collective_apply(s, ops.jz, +1.0);
        Vec wy = collective_apply(s, ops.jy, -1.0);
        Vec wx = collective_apply(s, ops.jx, +1.0);
        double mz = std::real(s.amp.dot(wz));
        double my = std::real(s.amp.dot(wy));
        double mx = std::real(s.amp.dot(wx));
        double vz = wz.squaredNorm() - mz * mz;
        double vy = wy.squaredNorm() - my * my;
        double value = vz + vy - mu * mx;
        if (grad) {
            PureState tz = s, ty = s;
            tz.amp = wz;
            ty.amp = wy;
            Vec g = collective_apply(tz, ops.jz, +1.0) - 2.0 * mz * wz;
            g += collective_apply(ty, ops.jy, -1.0) - 2.0 * my * wy;
            g -= mu * wx;
            g -= s.amp.dot(g) * s.amp;  // tangent projection on the sphere
            *grad = std::move(g);
        }
        return value;
    };

    ChiMinimum best;
    best.chi_value = std::numeric_limits<double>::infinity();
    for (int seed_run = 0; seed_run < seeds; ++seed_run) {
        PureState s = random_state({n, n}, rng);
        Vec grad;
        double value = chi_and_grad(s, &grad);
        double step = 0.1;
        bool converged = false;
        int iter = 0;
        for (; iter < max_iter; ++iter) {
            if (grad.norm() < 1e-10 * std::max(1.0, std::abs(value))) {
                converged = true;
                break;
            }
            bool accepted = false;
            for (int halve = 0; halve < 40; ++halve) {
                Vec trial = s.amp - step * grad;
                trial /= trial.norm();
                PureState t = s;
                t.amp = std::move(trial);
                double tv = chi_and_grad(t, nullptr);
                if (tv < value) {
                    s = std::move(t);
                    value = chi_and_grad(s, &grad);
                    step *= 1.3;
                    accepted = true;
                    break;
                }
                step *= 0.5;
            }
            if (!accepted) {
                converged = true;  // no descent direction left at double precision
                break;
            }
        }
        if (value < best.chi_value) {
            best.state = s;
            best.chi_value = value;
            best.converged = converged;
            best.iterations = iter;
        }
    }
    return best;
}

std::vector<SqueezeCurveRow> squeeze_curve(SpinJ j,
                                           const std::vector<double>& mu_grid) {
    if (mu_grid.empty()) throw std::invalid_argument("mu grid must be non-empty");
    std::vector<SqueezeCurveRow> rows;
    rows.reserve(mu_grid.size());
    double norm = 2.0 * j.value();
    for (double mu : mu_grid) {
        SqueezedResource r = solve_resource(j, mu);
        rows.push_back(SqueezeCurveRow{mu, r.mean_jx_plus / norm,
                                       (r.vz_plus + r.vy_minus) / norm});
    }
    return rows;
}

std::vector<double> default_mu_grid() {
    std::vector<double> grid{0.0};
    const int points = 60;
    for (int i = 0; i < points; ++i) {
        double t = -3.0 + 6.0 * i / (points - 1);
        grid.push_back(std::pow(10.0, t));
    }
    return grid;
}

}  // namespace spinport
