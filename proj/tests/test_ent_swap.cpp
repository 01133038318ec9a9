#include "spinport/ent_swap.hpp"

#include "spinport/squeezed_resource.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace spinport;

namespace {

// swap protocol rebuilt from primitives, with an arbitrary state on modes 3-4
double swap_average_entanglement(SpinJ j, const PureState& resource,
                                 const PureState& pair,
                                 const InteractionSpec& spec) {
    PureState joint = tensor(resource, pair);
    joint = apply_interaction(joint, spec, j, 1);
    std::vector<double> desc(j.dim());
    for (int i = 0; i < j.dim(); ++i) desc[i] = j.value() - i;
    std::vector<BasisMeasurement> ms;
    ms.push_back({1, Mat::Identity(j.dim(), j.dim()), desc});
    ms.push_back({2, spin_eigenbasis(j, Axis::Y), desc});
    double e = 0.0;
    for (const auto& br : measure_in_bases(joint, ms))
        e += br.probability * entanglement_of_formation(br.post);
    return e;
}

}  // namespace

TEST_CASE("entanglement of formation on known states") {
    std::mt19937_64 rng(61);
    for (double jv : {0.5, 1.0, 2.0}) {
        SpinJ j = SpinJ::from(jv);
        PureState product =
            tensor(random_state({j.dim()}, rng), random_state({j.dim()}, rng));
        CHECK(std::abs(entanglement_of_formation(product)) < 1e-10);
        CHECK(entanglement_of_formation(maximally_entangled_pair(j)) ==
              doctest::Approx(1.0).epsilon(1e-10));
    }

    // alpha |up up> + beta |down down> with |alpha|^2 = 1/4
    Vec amp = Vec::Zero(4);
    amp(0) = 0.5;
    amp(3) = std::sqrt(3.0) / 2.0;
    double h_quarter = 0.8112781244591328;  // binary entropy of 1/4
    CHECK(entanglement_of_formation(make_state({2, 2}, amp)) ==
          doctest::Approx(h_quarter).epsilon(1e-12));
}

TEST_CASE("spin-1/2 swap is perfect at alpha = pi and dead at alpha = 0") {
    SpinJ j = SpinJ::from(0.5);
    SwapResult perfect = entanglement_swap(j, 0.0, InteractionSpec::scaled(M_PI));
    CHECK(perfect.average_entanglement == doctest::Approx(1.0).epsilon(1e-10));
    double total = 0.0;
    for (const auto& br : perfect.per_branch) {
        total += br.probability;
        CHECK(br.entanglement == doctest::Approx(1.0).epsilon(1e-10));
    }
    CHECK(std::abs(total - 1.0) < 1e-10);

    SwapResult dead = entanglement_swap(j, 0.0, InteractionSpec::scaled(0.0));
    CHECK(std::abs(dead.average_entanglement) < 1e-10);
}

TEST_CASE("KP interaction at j = 1 swaps some but not all entanglement") {
    SwapResult r = entanglement_swap(SpinJ::from(1.0), 0.0, InteractionSpec::kp());
    CHECK(r.average_entanglement > 0.05);
    CHECK(r.average_entanglement < 0.95);
    for (const auto& br : r.per_branch) {
        CHECK(br.entanglement >= -1e-12);
        CHECK(br.entanglement <= 1.0 + 1e-12);
    }
}

TEST_CASE("average entanglement is consistent and recomputable from branches") {
    SwapResult r = entanglement_swap(SpinJ::from(1.5), 0.0,
                                     InteractionSpec::scaled(1.2));
    double acc = 0.0;
    for (const auto& br : r.per_branch) acc += br.probability * br.entanglement;
    CHECK(std::abs(acc - r.average_entanglement) < 1e-10);
}

TEST_CASE("the swapped entanglement ignores local unitaries on the idle mode") {
    std::mt19937_64 rng(67);
    for (double jv : {0.5, 1.0}) {
        SpinJ j = SpinJ::from(jv);
        PureState resource = solve_resource(j, 0.5).state;
        InteractionSpec spec = InteractionSpec::kp();

        PureState pair = maximally_entangled_pair(j);
        double base = swap_average_entanglement(j, resource, pair, spec);

        SwapResult lib = entanglement_swap(j, resource, spec);
        CHECK(std::abs(lib.average_entanglement - base) < 1e-12);

        Mat h = Mat::Random(j.dim(), j.dim());
        h = (h + h.adjoint()).eval();
        Mat u = exp_hermitian(h, 0.7);
        PureState rotated = apply_mode_matrix(pair, u, 1);
        double moved = swap_average_entanglement(j, resource, rotated, spec);
        CHECK(std::abs(moved - base) < 1e-10);
    }
}

TEST_CASE("optimal coupling at j = 1/2 is pi with perfect swapping") {
    AlphaOptimum best = optimize_alpha(SpinJ::from(0.5));
    CHECK(std::abs(best.alpha - M_PI) < 1e-5);
    CHECK(best.entanglement == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("optimal coupling tracks 2 pi / N and beats the KP value") {
    for (double jv : {1.0, 1.5}) {
        SpinJ j = SpinJ::from(jv);
        AlphaOptimum best = optimize_alpha(j);
        double predicted = M_PI / (jv + 0.5);
        CHECK(std::abs(best.alpha - predicted) / predicted < 0.02);

        double kp = entanglement_swap(j, 0.0, InteractionSpec::kp())
                        .average_entanglement;
        CHECK(best.entanglement > kp);
    }
}

TEST_CASE("the teleportation-optimal resource swaps less than the pair") {
    SpinJ j = SpinJ::from(1.0);
    MuOptimum mu = optimize_mu_for_coherent(j, InteractionSpec::kp());
    double with_pair =
        entanglement_swap(j, 0.0, InteractionSpec::kp()).average_entanglement;
    double with_mu =
        entanglement_swap(j, mu.mu, InteractionSpec::kp()).average_entanglement;
    CHECK(with_pair >= with_mu - 1e-12);
}

TEST_CASE("general interaction embeds the scalar one and can only improve") {
    SpinJ j = SpinJ::from(1.0);
    AlphaOptimum scalar = optimize_alpha(j);

    std::array<double, 16> embedded{};
    embedded[6] = scalar.alpha;
    double replayed =
        entanglement_swap(j, 0.0, InteractionSpec::general16(embedded))
            .average_entanglement;
    CHECK(std::abs(replayed - scalar.entanglement) < 1e-10);

    General16Optimum general = optimize_general_interaction(j, 0.0, 2024, 4, 1200);
    CHECK(general.entanglement >= scalar.entanglement - 1e-9);
    CHECK(general.entanglement <= 1.0 + 1e-12);
}

TEST_CASE("general interaction is exact at spin 1/2") {
    General16Optimum general =
        optimize_general_interaction(SpinJ::from(0.5), 0.0, 99, 4, 1200);
    CHECK(general.entanglement == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("size caps") {
    CHECK_THROWS(entanglement_swap(SpinJ::from(3.0), 0.0, InteractionSpec::kp(), 4));
    CHECK_THROWS(optimize_general_interaction(SpinJ::from(4.0), 0.0, 1));
}

TEST_CASE("swap-optimized interactions teleport poorly") {
    // the couplings that maximize swapped entanglement are not good
    // teleportation couplings under the orientation rotations
    SpinJ j = SpinJ::from(1.0);
    General16Optimum g = optimize_general_interaction(j, 0.0, 11, 4, 1200);
    InteractionSpec improved = InteractionSpec::general16(g.coeffs);

    PureState maxent = maximally_entangled_pair(j);
    PureState reference = highest_weight_state(j, Axis::X);
    double f_improved = fidelity_unconditional(
        reference,
        teleport(reference, maxent, improved,
                 make_orientation_corrections(j, maxent, improved)));

    MuOptimum mu = optimize_mu_for_coherent(j, InteractionSpec::kp());
    PureState resource = solve_resource(j, mu.mu).state;
    double f_kp = fidelity_unconditional(
        reference, teleport(reference, resource, InteractionSpec::kp(),
                            CorrectionStrategy::Simple));
    CHECK(f_improved < f_kp);
}
