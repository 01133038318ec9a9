#include "spinport/teleport.hpp"

#include "spinport/squeezed_resource.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace spinport;

namespace {

// e^{-i pi b Jz} e^{+i pi a Jy}: the measured Jz value feeds the Jy generator
// and vice versa, matching the pairing in the V(a,b) rotation
CorrectionSet pi_corrections(SpinJ j) {
    return make_custom_corrections(j, [&](double a, double b) {
        return Mat(rotation(j, 0, 0, 1, -M_PI * b).entries *
                   rotation(j, 0, 1, 0, M_PI * a).entries);
    });
}

double branch_total(const std::vector<TeleportOutcome>& outcomes) {
    double p = 0.0;
    for (const auto& oc : outcomes) p += oc.probability;
    return p;
}

}  // namespace

TEST_CASE("spin-1/2 protocol with alpha = pi and the z/y rotations is exact") {
    SpinJ j = SpinJ::from(0.5);
    PureState resource = maximally_entangled_pair(j);
    InteractionSpec spec = InteractionSpec::scaled(M_PI);
    CorrectionSet corrections = pi_corrections(j);

    std::mt19937_64 rng(51);
    for (int it = 0; it < 10; ++it) {
        PureState input = random_state({2}, rng);
        auto outcomes = teleport(input, resource, spec, corrections);
        CHECK(std::abs(branch_total(outcomes) - 1.0) < 1e-10);
        for (const auto& oc : outcomes)
            CHECK(fidelity_conditional(input, oc) == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(fidelity_unconditional(input, outcomes) ==
              doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("KP coupling at j = 1/2 equals the scaled coupling at 2") {
    SpinJ j = SpinJ::from(0.5);
    CHECK(InteractionSpec::kp().effective_alpha(j) == doctest::Approx(2.0));
    std::mt19937_64 rng(5);
    PureState psi = random_state({2, 2, 2}, rng);
    PureState a = apply_interaction(psi, InteractionSpec::kp(), j, 1);
    PureState b = apply_interaction(psi, InteractionSpec::scaled(2.0), j, 1);
    CHECK((a.amp - b.amp).norm() < 1e-13);
}

TEST_CASE("general interaction with only the JyJz slot reduces to the scaled one") {
    SpinJ j = SpinJ::from(1.0);
    double alpha = 0.8;
    std::array<double, 16> coeffs{};
    coeffs[6] = alpha;  // Jy (x) Jz
    Mat general = build_interaction(InteractionSpec::general16(coeffs), j).entries;
    Mat scaled = build_interaction(InteractionSpec::scaled(alpha), j).entries;
    CHECK((general - scaled).cwiseAbs().maxCoeff() < 1e-12);

    CHECK(build_interaction(InteractionSpec::scaled(0.0), j)
              .entries.isApprox(Mat::Identity(9, 9), 1e-12));
    CHECK_THROWS(build_interaction(InteractionSpec::general16(coeffs),
                                   SpinJ::from(4.0)));
}

TEST_CASE("branch probabilities always sum to one") {
    std::mt19937_64 rng(77);
    for (double jv : {0.5, 1.0, 2.0}) {
        SpinJ j = SpinJ::from(jv);
        PureState resource = solve_resource(j, 2.0).state;
        PureState input = random_state({j.dim()}, rng);
        auto outcomes =
            teleport(input, resource, InteractionSpec::kp(), CorrectionStrategy::Simple);
        CHECK(std::abs(branch_total(outcomes) - 1.0) < 1e-10);
        for (const auto& oc : outcomes) {
            double f = fidelity_conditional(input, oc);
            CHECK(f >= 0.0);
            CHECK(f <= 1.0 + 1e-12);
        }
    }
}

TEST_CASE("unconditional fidelity is a convex combination and order-free") {
    SpinJ j = SpinJ::from(1.0);
    PureState resource = solve_resource(j, 1.0).state;
    std::mt19937_64 rng(9);
    PureState input = random_state({3}, rng);
    auto outcomes =
        teleport(input, resource, InteractionSpec::kp(), CorrectionStrategy::Simple);

    double f = fidelity_unconditional(input, outcomes);
    double lo = 1.0, hi = 0.0;
    for (const auto& oc : outcomes) {
        lo = std::min(lo, fidelity_conditional(input, oc));
        hi = std::max(hi, fidelity_conditional(input, oc));
    }
    CHECK(f >= lo - 1e-12);
    CHECK(f <= hi + 1e-12);

    auto shuffled = outcomes;
    std::reverse(shuffled.begin(), shuffled.end());
    CHECK(fidelity_unconditional(input, shuffled) == doctest::Approx(f).epsilon(1e-14));
}

TEST_CASE("identical input and outcome give conditional fidelity one") {
    SpinJ j = SpinJ::from(1.0);
    PureState s = highest_weight_state(j, Axis::X);
    TeleportOutcome oc;
    oc.output = s;
    CHECK(fidelity_conditional(s, oc) == doctest::Approx(1.0));
    TeleportOutcome orth;
    orth.output = highest_weight_state(j, Axis::Z);
    PureState bottom = coherent_state(j, M_PI, 0.0);
    CHECK(fidelity_conditional(bottom, oc) < 1e-10);
}

TEST_CASE("orientation corrections zero the transverse means of the reference") {
    for (double jv : {1.0, 2.0, 5.0}) {
        SpinJ j = SpinJ::from(jv);
        PureState resource = solve_resource(j, 1.0).state;
        InteractionSpec spec = InteractionSpec::kp();
        CorrectionSet orient = make_orientation_corrections(j, resource, spec);

        PureState reference = highest_weight_state(j, Axis::X);
        auto outcomes = teleport(reference, resource, spec, orient);
        Mat jy = spin_operator(j, Axis::Y).entries;
        Mat jz = spin_operator(j, Axis::Z).entries;
        for (const auto& oc : outcomes) {
            if (oc.probability < 1e-9) continue;
            CHECK(std::abs(std::real(expectation(oc.output, jy, 0))) < 1e-8);
            CHECK(std::abs(std::real(expectation(oc.output, jz, 0))) < 1e-8);
        }
    }
}

TEST_CASE("orientation strategy beats the simple one for the reference input") {
    double sigma = std::pow(20.0 * M_PI / 180.0, 2.0);
    for (double jv : {2.0, 3.0}) {
        SpinJ j = SpinJ::from(jv);
        InteractionSpec spec = InteractionSpec::kp();
        MuOptimum mu = optimize_mu_for_coherent(j, spec);
        PureState resource = solve_resource(j, mu.mu).state;
        PureState reference = highest_weight_state(j, Axis::X);

        double f_simple = fidelity_unconditional(
            reference, teleport(reference, resource, spec, CorrectionStrategy::Simple));
        double f_orient = fidelity_unconditional(
            reference,
            teleport(reference, resource, spec, CorrectionStrategy::OrientationPreserving));
        CHECK(f_orient >= f_simple - 1e-10);
        CHECK(f_simple > classical_bound(sigma, j));
    }
}

TEST_CASE("classical bound closed form") {
    CHECK(classical_bound(2.0, SpinJ::from(1.0)) == doctest::Approx(2.0 / 3.0));
    double sigma = 0.349 * 0.349;
    CHECK(classical_bound(sigma, SpinJ::from(20.0)) ==
          doctest::Approx(0.6455).epsilon(2e-4));
    CHECK(classical_bound(1e9, SpinJ::from(10.0)) == doctest::Approx(0.5).epsilon(1e-6));
    CHECK_THROWS(classical_bound(0.0, SpinJ::from(1.0)));
}

TEST_CASE("no entanglement leaves the ensemble fidelity near one half") {
    SpinJ j = SpinJ::from(10.0);
    double sigma = std::pow(20.0 * M_PI / 180.0, 2.0);
    PureState product = tensor(highest_weight_state(j, Axis::X),
                               highest_weight_state(j, Axis::X));
    EnsembleSpec ensemble = EnsembleSpec::make(sigma, j, 32, 16);
    double f = average_fidelity_ensemble(ensemble, product, InteractionSpec::kp(),
                                         make_simple_corrections(j), j);
    CHECK(std::abs(f - 0.5) < 0.1);
    CHECK(f < classical_bound(sigma, j));
}

TEST_CASE("ensemble average for a narrow weight matches the reference fidelity") {
    SpinJ j = SpinJ::from(2.0);
    PureState resource = solve_resource(j, 1.0).state;
    InteractionSpec spec = InteractionSpec::kp();
    CorrectionSet simple = make_simple_corrections(j);

    PureState reference = highest_weight_state(j, Axis::X);
    double f_ref =
        fidelity_unconditional(reference, teleport(reference, resource, spec, simple));
    EnsembleSpec narrow = EnsembleSpec::make(1e-6, j, 48, 8);
    double f_av = average_fidelity_ensemble(narrow, resource, spec, simple, j);
    CHECK(std::abs(f_av - f_ref) < 1e-4);
}

TEST_CASE("mu optimization lands on an interior local optimum") {
    SpinJ j = SpinJ::from(1.0);
    InteractionSpec spec = InteractionSpec::kp();
    MuOptimum best = optimize_mu_for_coherent(j, spec);
    CHECK(!best.endpoint_warning);
    CHECK(best.mu > 1e-3);
    CHECK(best.mu < 1e3);

    PureState reference = highest_weight_state(j, Axis::X);
    CorrectionSet simple = make_simple_corrections(j);
    auto fidelity_at = [&](double mu) {
        PureState resource = solve_resource(j, mu).state;
        return fidelity_unconditional(reference,
                                      teleport(reference, resource, spec, simple));
    };
    CHECK(best.value >= fidelity_at(2.0 * best.mu) - 1e-9);
    CHECK(best.value >= fidelity_at(0.5 * best.mu) - 1e-9);

    // coarse grid oracle
    double grid_best = 0.0, grid_mu = 0.0;
    for (int i = 0; i <= 60; ++i) {
        double mu = std::pow(10.0, -3.0 + 6.0 * i / 60.0);
        double f = fidelity_at(mu);
        if (f > grid_best) {
            grid_best = f;
            grid_mu = mu;
        }
    }
    CHECK(best.value >= grid_best - 1e-6);
    CHECK(std::abs(std::log10(best.mu) - std::log10(grid_mu)) < 0.2);
}

TEST_CASE("squeezed inputs") {
    SpinJ j = SpinJ::from(1.0);
    Mat jy = spin_operator(j, Axis::Y).entries;

    PureState near_coherent = squeezed_input(j, 1e8, Axis::Y);
    PureState hw = highest_weight_state(j, Axis::X);
    CHECK(std::abs(std::abs(near_coherent.amp.dot(hw.amp)) - 1.0) < 1e-6);
    CHECK(variance(near_coherent, jy, 0) == doctest::Approx(0.5).epsilon(1e-4));

    PureState squeezed = squeezed_input(j, 0.5, Axis::Y);
    CHECK(variance(squeezed, jy, 0) < 0.5);
    CHECK(std::abs(std::real(expectation(squeezed, jy, 0))) < 1e-10);

    double prev = -1.0;
    for (double mu_s : {0.1, 1.0, 10.0, 100.0}) {
        double v = variance(squeezed_input(j, mu_s, Axis::Y), jy, 0);
        CHECK(v >= prev - 1e-12);
        prev = v;
    }
    CHECK_THROWS(squeezed_input(j, 1.0, Axis::X));
}

TEST_CASE("superposition inputs") {
    SpinJ j = SpinJ::from(0.5);
    PureState plus = superposition_input(j, M_PI / 2);
    Vec expected(2);
    expected << 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0);
    CHECK(std::abs(std::abs(plus.amp.dot(expected)) - 1.0) < 1e-12);

    SpinJ j2 = SpinJ::from(2.0);
    PureState a = superposition_input(j2, 0.3);
    PureState b = superposition_input(j2, -0.3);
    CHECK(std::abs(std::abs(a.amp.dot(b.amp)) - 1.0) < 1e-12);

    // unnormalized norm identity
    PureState hw = highest_weight_state(j2, Axis::X);
    double theta = 0.4;
    Mat r = rotation(j2, 0, 1, 0, theta).entries;
    Vec raw = r * hw.amp - r.adjoint() * hw.amp;
    Mat r2 = rotation(j2, 0, 1, 0, -2.0 * theta).entries;
    double predicted = std::sqrt(2.0 - 2.0 * std::real(hw.amp.dot(r2 * hw.amp)));
    CHECK(raw.norm() == doctest::Approx(predicted).epsilon(1e-12));

    CHECK_THROWS(superposition_input(j2, 0.0));
}

TEST_CASE("dimension mismatches are rejected") {
    PureState input = highest_weight_state(SpinJ::from(1.0), Axis::X);
    PureState resource = maximally_entangled_pair(SpinJ::from(0.5));
    CHECK_THROWS(teleport_branches(input, resource, InteractionSpec::kp()));
    PureState not_two_modes = highest_weight_state(SpinJ::from(0.5), Axis::X);
    CHECK_THROWS(teleport_branches(input, not_two_modes, InteractionSpec::kp()));
}

TEST_CASE("perfect spin-1/2 teleportation preserves the coherent variance") {
    SpinJ j = SpinJ::from(0.5);
    PureState resource = maximally_entangled_pair(j);
    InteractionSpec spec = InteractionSpec::scaled(M_PI);
    CorrectionSet corrections = pi_corrections(j);
    PureState input = coherent_state(j, 0.4, 1.1);
    auto outcomes = teleport(input, resource, spec, corrections);
    for (Axis axis : {Axis::Y, Axis::Z}) {
        Mat op = spin_operator(j, axis).entries;
        double vin = variance(input, op, 0);
        CHECK(output_variance(outcomes, axis) == doctest::Approx(vin).epsilon(1e-10));
    }
}
