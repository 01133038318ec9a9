#include "spinport/teleport.hpp"

#include "spinport/parallel.hpp"
#include "spinport/quadrature.hpp"
#include "spinport/optimize.hpp"
#include "spinport/squeezed_resource.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace spinport {

namespace {

constexpr Complex kI{0.0, 1.0};

std::vector<double> ascending_labels(SpinJ j) {
    std::vector<double> labels(j.dim());
    for (int i = 0; i < j.dim(); ++i) labels[i] = -j.value() + i;
    return labels;
}

void check_teleport_dims(const PureState& input, const PureState& resource) {
    if (input.num_modes() != 1)
        throw std::invalid_argument("input must be a single mode");
    if (resource.num_modes() != 2 || resource.dims[0] != resource.dims[1])
        throw std::invalid_argument("resource must be two modes of equal dimension");
    if (input.dims[0] != resource.dims[0])
        throw std::invalid_argument("input dimension must match the resource modes");
}

Mat general16_generator(const InteractionSpec& spec, SpinJ j) {
    int n = j.dim();
    std::array<Mat, 4> ops = {spin_operator(j, Axis::X).entries,
                              spin_operator(j, Axis::Y).entries,
                              spin_operator(j, Axis::Z).entries,
                              Mat::Identity(n, n)};
    Mat g = Mat::Zero(n * n, n * n);
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) {
            double coeff = spec.coeffs[r * 4 + c];
            if (coeff == 0.0) continue;
            ModeOperator pair = tensor(ModeOperator{n, ops[r], BasisTag{}},
                                       ModeOperator{n, ops[c], BasisTag{}});
            g += coeff * pair.entries;
        }
    return g;
}

}  // namespace

double InteractionSpec::effective_alpha(SpinJ j) const {
    switch (kind) {
        case InteractionKind::KP:
            if (j.two_j == 0) throw std::invalid_argument("KP coupling needs j > 0");
            return 1.0 / j.value();
        case InteractionKind::ScaledAlpha:
            return alpha;
        case InteractionKind::General16:
            throw std::logic_error("general interaction has no scalar coupling");
    }
    return 0.0;
}

ModeOperator build_interaction(const InteractionSpec& spec, SpinJ j) {
    int n = j.dim();
    if (spec.kind == InteractionKind::General16) {
        if (j.two_j > 7)
            throw std::invalid_argument("general interaction capped at 2j <= 7");
        return ModeOperator{n * n, exp_hermitian(general16_generator(spec, j), 1.0),
                            BasisTag{}};
    }
    double a = spec.effective_alpha(j);
    ModeOperator gen = tensor(spin_operator(j, Axis::Y), spin_operator(j, Axis::Z));
    return ModeOperator{n * n, exp_hermitian(gen.entries, a), BasisTag{}};
}

PureState apply_interaction(const PureState& state, const InteractionSpec& spec,
                            SpinJ j, int mode_a) {
    if (spec.kind == InteractionKind::General16) {
        ModeOperator u = build_interaction(spec, j);
        return apply_pair_matrix(state, u.entries, mode_a);
    }
    return apply_pair_spin_interaction(state, mode_a, Axis::Y, mode_a + 1,
                                       Axis::Z, spec.effective_alpha(j));
}

std::vector<RawBranch> teleport_branches(const PureState& input,
                                         const PureState& resource,
                                         const InteractionSpec& spec) {
    check_teleport_dims(input, resource);
    SpinJ j{input.dims[0] - 1};

    PureState joint = tensor(resource, input);
    joint = apply_interaction(joint, spec, j, 1);

    std::vector<double> labels = ascending_labels(j);
    std::vector<double> desc(labels.rbegin(), labels.rend());
    std::vector<BasisMeasurement> ms;
    ms.push_back({1, Mat::Identity(j.dim(), j.dim()), desc});
    ms.push_back({2, spin_eigenbasis(j, Axis::Y), desc});
    std::vector<MeasurementBranch> branches = measure_in_bases(joint, ms);

    std::vector<RawBranch> out;
    out.reserve(branches.size());
    for (auto& br : branches)
        out.push_back(RawBranch{br.outcomes[0], br.outcomes[1], br.probability,
                                std::move(br.post)});
    std::sort(out.begin(), out.end(), [](const RawBranch& l, const RawBranch& r) {
        if (l.a != r.a) return l.a < r.a;
        return l.b < r.b;
    });
    return out;
}

CorrectionSet make_simple_corrections(SpinJ j) {
    CorrectionSet set;
    set.n = j.dim();
    set.labels = ascending_labels(j);
    set.unitaries.reserve(set.n * set.n);
    for (double a : set.labels)
        for (double b : set.labels)
            set.unitaries.push_back(
                rotation(j, 0.0, a / j.value(), -b / j.value(), 1.0).entries);
    return set;
}

CorrectionSet make_custom_corrections(SpinJ j,
                                      const std::function<Mat(double, double)>& fn) {
    CorrectionSet set;
    set.n = j.dim();
    set.labels = ascending_labels(j);
    set.unitaries.reserve(set.n * set.n);
    for (double a : set.labels)
        for (double b : set.labels) set.unitaries.push_back(fn(a, b));
    return set;
}

CorrectionSet make_orientation_corrections(SpinJ j, const PureState& resource,
                                           const InteractionSpec& spec) {
    PureState reference = highest_weight_state(j, Axis::X);
    std::vector<RawBranch> branches = teleport_branches(reference, resource, spec);

    Mat jx = spin_operator(j, Axis::X).entries;
    Mat jy = spin_operator(j, Axis::Y).entries;
    Mat jz = spin_operator(j, Axis::Z).entries;
    Mat identity = Mat::Identity(j.dim(), j.dim());

    CorrectionSet set;
    set.n = j.dim();
    set.labels = ascending_labels(j);
    set.unitaries.assign(set.n * set.n, identity);
    for (const RawBranch& br : branches) {
        double x = std::real(expectation(br.post, jx, 0));
        double y = std::real(expectation(br.post, jy, 0));
        double z = std::real(expectation(br.post, jz, 0));
        double transverse = std::sqrt(y * y + z * z);
        int ia = static_cast<int>(std::lround(br.a + j.value()));
        int ib = static_cast<int>(std::lround(br.b + j.value()));
        if (transverse < 1e-12) continue;  // already points along +-x
        double len = std::sqrt(x * x + y * y + z * z);
        double cosang = std::clamp(x / len, -1.0, 1.0);
        double xi = std::acos(cosang) / transverse;
        // Rotation about the y-z-plane axis perpendicular to the mean vector;
        // angle equal to the tilt away from +x. Generator xi (y Jz - z Jy).
        set.unitaries[ia * set.n + ib] =
            rotation(j, 0.0, -xi * z, xi * y, 1.0).entries;
    }
    return set;
}

CorrectionSet make_corrections(SpinJ j, CorrectionStrategy strategy,
                               const PureState& resource,
                               const InteractionSpec& spec) {
    if (strategy == CorrectionStrategy::Simple) return make_simple_corrections(j);
    return make_orientation_corrections(j, resource, spec);
}

std::vector<TeleportOutcome> apply_corrections(const std::vector<RawBranch>& branches,
                                               const CorrectionSet& corrections,
                                               SpinJ j) {
    std::vector<TeleportOutcome> out;
    out.reserve(branches.size());
    for (const RawBranch& br : branches) {
        int ia = static_cast<int>(std::lround(br.a + j.value()));
        int ib = static_cast<int>(std::lround(br.b + j.value()));
        TeleportOutcome oc;
        oc.a = br.a;
        oc.b = br.b;
        oc.probability = br.probability;
        oc.output = br.post;
        oc.output.amp = corrections.at(ia, ib) * br.post.amp;
        out.push_back(std::move(oc));
    }
    return out;
}

std::vector<TeleportOutcome> teleport(const PureState& input,
                                      const PureState& resource,
                                      const InteractionSpec& spec,
                                      const CorrectionSet& corrections) {
    SpinJ j{input.dims.empty() ? 0 : input.dims[0] - 1};
    return apply_corrections(teleport_branches(input, resource, spec), corrections, j);
}

std::vector<TeleportOutcome> teleport(const PureState& input,
                                      const PureState& resource,
                                      const InteractionSpec& spec,
                                      CorrectionStrategy strategy) {
    SpinJ j{input.dims[0] - 1};
    return teleport(input, resource, spec,
                    make_corrections(j, strategy, resource, spec));
}

double fidelity_conditional(const PureState& input, const TeleportOutcome& outcome) {
    return std::norm(input.amp.dot(outcome.output.amp));
}

double fidelity_unconditional(const PureState& input,
                              const std::vector<TeleportOutcome>& outcomes) {
    double f = 0.0;
    for (const auto& oc : outcomes)
        f += oc.probability * fidelity_conditional(input, oc);
    return f;
}

double output_variance(const std::vector<TeleportOutcome>& outcomes, Axis axis) {
    if (outcomes.empty()) throw std::invalid_argument("no outcomes");
    SpinJ j{outcomes.front().output.dims[0] - 1};
    Mat op = spin_operator(j, axis).entries;
    double total = 0.0, weight = 0.0;
    for (const auto& oc : outcomes) {
        total += oc.probability * variance(oc.output, op, 0);
        weight += oc.probability;
    }
    return total / weight;
}

EnsembleSpec EnsembleSpec::make(double sigma, SpinJ j, int n_theta, int n_phi) {
    if (sigma <= 0.0) throw std::invalid_argument("sigma must be positive");
    EnsembleSpec e;
    e.sigma = sigma;
    e.lambda = 2.0 / (sigma * std::max(j.value(), 1e-300));
    QuadratureRule rule = gauss_legendre(n_theta, 0.0, M_PI);
    e.theta_nodes = rule.nodes;
    e.theta_weights = rule.weights;
    e.phi_nodes.resize(n_phi);
    for (int k = 0; k < n_phi; ++k) e.phi_nodes[k] = 2.0 * M_PI * k / n_phi;
    return e;
}

std::vector<double> average_fidelity_ensemble_multi(
    const EnsembleSpec& ensemble, const PureState& resource,
    const InteractionSpec& spec,
    const std::vector<const CorrectionSet*>& corrections, SpinJ j) {
    int n_theta = static_cast<int>(ensemble.theta_nodes.size());
    int n_sets = static_cast<int>(corrections.size());
    std::vector<std::vector<double>> node_fidelity(
        n_theta, std::vector<double>(n_sets, 0.0));
    parallel_for(n_theta, [&](int i) {
        double theta = ensemble.theta_nodes[i];
        for (double phi : ensemble.phi_nodes) {
            PureState input = coherent_state(j, theta, phi);
            auto branches = teleport_branches(input, resource, spec);
            for (int s = 0; s < n_sets; ++s)
                node_fidelity[i][s] += fidelity_unconditional(
                    input, apply_corrections(branches, *corrections[s], j));
        }
        for (int s = 0; s < n_sets; ++s)
            node_fidelity[i][s] /= ensemble.phi_nodes.size();
    });

    std::vector<double> numerator(n_sets, 0.0);
    double denominator = 0.0;
    for (int i = 0; i < n_theta; ++i) {
        double theta = ensemble.theta_nodes[i];
        double wt = ensemble.theta_weights[i] * std::sin(theta) *
                    std::exp(-theta * theta / ensemble.sigma);
        for (int s = 0; s < n_sets; ++s) numerator[s] += wt * node_fidelity[i][s];
        denominator += wt;
    }
    for (int s = 0; s < n_sets; ++s) numerator[s] /= denominator;
    return numerator;
}

double average_fidelity_ensemble(const EnsembleSpec& ensemble,
                                 const PureState& resource,
                                 const InteractionSpec& spec,
                                 const CorrectionSet& corrections, SpinJ j) {
    return average_fidelity_ensemble_multi(ensemble, resource, spec, {&corrections},
                                           j)[0];
}

double classical_bound(double sigma, SpinJ j) {
    if (sigma <= 0.0) throw std::invalid_argument("sigma must be positive");
    double sj = sigma * j.value();
    return 0.5 * (sj + 2.0) / (sj + 1.0);
}

MuOptimum optimize_mu(const std::function<double(double)>& objective,
                      double mu_lo, double mu_hi, int iters) {
    auto on_log = [&](double t) { return objective(std::pow(10.0, t)); };
    ScalarMaxResult r =
        golden_section_max(on_log, std::log10(mu_lo), std::log10(mu_hi), iters);
    return MuOptimum{std::pow(10.0, r.x), r.value, r.endpoint_warning};
}

MuOptimum optimize_mu_for_coherent(SpinJ j, const InteractionSpec& spec) {
    CorrectionSet corrections = make_simple_corrections(j);
    PureState input = highest_weight_state(j, Axis::X);
    auto objective = [&](double mu) {
        PureState resource = solve_resource(j, mu).state;
        return fidelity_unconditional(input,
                                      teleport(input, resource, spec, corrections));
    };
    return optimize_mu(objective);
}

PureState squeezed_input(SpinJ j, double mu_s, Axis axis) {
    if (axis == Axis::X) throw std::invalid_argument("squeezing axis must be y or z");
    if (mu_s < 0.0) throw std::invalid_argument("mu_s must be non-negative");
    Mat a = spin_operator(j, axis).entries;
    Mat h = a * a - mu_s * spin_operator(j, Axis::X).entries;
    Eigen::SelfAdjointEigenSolver<Mat> es(h);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("squeezed input eigensolve failed");
    Vec v = es.eigenvectors().col(0);
    fix_global_phase(v);
    return make_state({j.dim()}, std::move(v));
}

PureState superposition_input(SpinJ j, double theta) {
    PureState hw = highest_weight_state(j, Axis::X);
    Mat plus = rotation(j, 0.0, 1.0, 0.0, theta).entries;
    Vec v = plus * hw.amp - plus.adjoint() * hw.amp;
    double n = v.norm();
    if (n < 1e-13)
        throw std::invalid_argument("superposition input degenerates at this angle");
    v /= n;
    fix_global_phase(v);
    return make_state({j.dim()}, std::move(v));
}

}  // namespace spinport
