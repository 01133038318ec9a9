// Acceptance suite: end-to-end checks of the protocol stack at the tolerances
// the library promises. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include "spinport/ent_swap.hpp"
#include "spinport/perfect_tele.hpp"
#include "spinport/squeezed_resource.hpp"
#include "spinport/teleport.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <random>
#include <string>
#include <vector>

using namespace spinport;

namespace {

constexpr double kDegree = M_PI / 180.0;
const double kSigma = std::pow(20.0 * kDegree, 2.0);

struct Criterion {
    int id;
    std::string name;
    bool pass = true;
    std::vector<std::string> notes;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            notes.push_back(what);
        }
    }
    void info(const std::string& what) { notes.push_back(what); }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
}

void report(const Criterion& c, double elapsed) {
    std::printf("[%s] criterion %d: %s (%.1f s)\n", c.pass ? "PASS" : "FAIL", c.id,
                c.name.c_str(), elapsed);
    for (const auto& note : c.notes) std::printf("       %s\n", note.c_str());
    std::fflush(stdout);
}

// teleportation setup at the coherent-optimal mu, cached per spin
struct Setup {
    double mu;
    PureState resource;
    CorrectionSet simple;
    CorrectionSet orient;
};

std::map<int, Setup> setup_cache;

const Setup& setup_for(SpinJ j) {
    auto it = setup_cache.find(j.two_j);
    if (it != setup_cache.end()) return it->second;
    InteractionSpec kp = InteractionSpec::kp();
    Setup s;
    s.mu = optimize_mu_for_coherent(j, kp).mu;
    s.resource = solve_resource(j, s.mu).state;
    s.simple = make_simple_corrections(j);
    s.orient = make_orientation_corrections(j, s.resource, kp);
    return setup_cache.emplace(j.two_j, std::move(s)).first->second;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

// --------------------------------------------------------------------------

Criterion criterion_1() {
    Criterion c{1, "exact teleportation: unit fidelity, uniform outcomes"};
    std::mt19937_64 rng(1);
    for (int two_j = 1; two_j <= 6; ++two_j) {
        SpinJ j{two_j};
        CorrectionTable table = derive_correction(j);
        double uniform = 1.0 / (j.dim() * j.dim());
        double worst_f = 1.0, worst_p = 0.0;
        for (int it = 0; it < 20; ++it) {
            PureState input = random_state({j.dim()}, rng);
            for (const auto& oc : perfect_teleport(input, table)) {
                worst_f = std::min(worst_f, fidelity_conditional(input, oc));
                worst_p = std::max(worst_p, std::abs(oc.probability - uniform));
            }
        }
        c.require(worst_f > 1.0 - 1e-10,
                  "2j=" + std::to_string(two_j) + " min fidelity " + fmt(worst_f));
        c.require(worst_p < 1e-10, "2j=" + std::to_string(two_j) +
                                       " probability deviation " + fmt(worst_p));
    }
    return c;
}

Criterion criterion_2() {
    Criterion c{2, "spin-1/2 exactness at coupling pi"};
    SpinJ j = SpinJ::from(0.5);
    PureState resource = maximally_entangled_pair(j);
    InteractionSpec spec = InteractionSpec::scaled(M_PI);
    CorrectionSet corrections =
        make_custom_corrections(j, [&](double a, double b) {
            return Mat(rotation(j, 0, 0, 1, -M_PI * b).entries *
                       rotation(j, 0, 1, 0, M_PI * a).entries);
        });
    c.info("receiver rotations e^{-i pi b Jz} e^{+i pi a Jy}");

    std::mt19937_64 rng(2);
    double worst = 1.0;
    for (int it = 0; it < 10; ++it) {
        PureState input = random_state({2}, rng);
        worst = std::min(worst, fidelity_unconditional(
                                    input, teleport(input, resource, spec,
                                                    corrections)));
    }
    c.require(worst > 1.0 - 1e-10, "min unconditional fidelity " + fmt(worst));

    double e = entanglement_swap(j, 0.0, spec).average_entanglement;
    c.require(std::abs(e - 1.0) < 1e-10, "swapped entanglement " + fmt(e));
    return c;
}

Criterion criterion_3() {
    Criterion c{3, "optimal coupling tracks 2 pi / N"};
    for (double jv : {1.0, 1.5, 2.0, 3.0, 4.0, 5.0}) {
        SpinJ j = SpinJ::from(jv);
        AlphaOptimum best = optimize_alpha(j);
        double predicted = M_PI / (jv + 0.5);
        double rel = std::abs(best.alpha - predicted) / predicted;
        double bound = (jv >= 3.0) ? 0.005 : 0.02;
        c.require(rel < bound, "j=" + fmt(jv) + " relative deviation " + fmt(rel));
    }
    return c;
}

Criterion criterion_4() {
    Criterion c{4, "resource anchors: kernel state, product limit, oracle"};
    for (int two_j = 1; two_j <= 20; ++two_j) {
        SpinJ j{two_j};
        SqueezedResource r = solve_resource(j, 0.0);
        double overlap =
            std::abs(maximally_entangled_pair(j).amp.dot(r.state.amp));
        c.require(overlap > 1.0 - 1e-10,
                  "2j=" + std::to_string(two_j) + " overlap " + fmt(overlap));
        c.require(std::abs(r.nu) < 1e-9,
                  "2j=" + std::to_string(two_j) + " nu " + fmt(r.nu));
    }
    for (double jv : {0.5, 2.0, 10.0}) {
        SpinJ j = SpinJ::from(jv);
        SqueezedResource r = solve_resource(j, 1e6);
        double mean_norm = r.mean_jx_plus / (2.0 * jv);
        double v_norm = (r.vz_plus + r.vy_minus) / (2.0 * jv);
        c.require(std::abs(mean_norm - 1.0) < 1e-3 && std::abs(v_norm - 1.0) < 1e-3,
                  "j=" + fmt(jv) + " product limit (" + fmt(mean_norm) + ", " +
                      fmt(v_norm) + ")");
    }
    for (double jv : {0.5, 1.0, 1.5, 2.0})
        for (double mu : {0.1, 1.0, 10.0}) {
            SpinJ j = SpinJ::from(jv);
            double eig = chi(solve_resource(j, mu).state, mu);
            ChiMinimum direct = minimize_chi_direct(j, mu, 20, 12345);
            c.require(std::abs(direct.chi_value - eig) < 1e-6,
                      "j=" + fmt(jv) + " mu=" + fmt(mu) + " |direct-eig|=" +
                          fmt(std::abs(direct.chi_value - eig)));
        }
    return c;
}

Criterion criterion_5() {
    Criterion c{5, "entanglement witness: sound on products, fires inside"};
    std::mt19937_64 rng(5);
    for (double jv : {0.5, 1.0, 2.0}) {
        SpinJ j = SpinJ::from(jv);
        double worst = 0.0;
        for (int it = 0; it < 1000; ++it) {
            PureState s =
                tensor(random_state({j.dim()}, rng), random_state({j.dim()}, rng));
            worst = std::min(worst, chi(s, 1.0));
        }
        c.require(worst >= -1e-10, "j=" + fmt(jv) + " min chi(1) " + fmt(worst));
    }
    std::vector<double> grid = default_mu_grid();
    for (double jv : {0.5, 1.0, 1.5, 2.0, 3.0, 4.0, 5.0}) {
        SpinJ j = SpinJ::from(jv);
        for (const auto& row : squeeze_curve(j, grid)) {
            if (row.mu <= 0.0) continue;
            if (row.mean_jx_norm <= 1e-6 || row.mean_jx_norm >= 1.0 - 1e-6) continue;
            c.require(row.v_sigma_norm < row.mean_jx_norm,
                      "j=" + fmt(jv) + " mu=" + fmt(row.mu) + " not below the line");
        }
    }
    return c;
}

Criterion criterion_6() {
    Criterion c{6, "fidelity landscape: high averages, beats the bound, angle asymmetry"};
    InteractionSpec kp = InteractionSpec::kp();

    for (double jv : {10.0, 15.0, 20.0}) {
        SpinJ j = SpinJ::from(jv);
        const Setup& s = setup_for(j);
        EnsembleSpec ensemble = EnsembleSpec::make(kSigma, j, 64, 32);
        std::vector<double> favs = average_fidelity_ensemble_multi(
            ensemble, s.resource, kp, {&s.simple, &s.orient}, j);
        c.require(favs[0] > 0.9,
                  "j=" + fmt(jv) + " Fav simple " + fmt(favs[0]));
        c.require(favs[1] > 0.9,
                  "j=" + fmt(jv) + " Fav orient " + fmt(favs[1]));
    }

    for (double jv : {2.0, 3.0, 4.0, 5.0, 7.0, 10.0, 15.0, 20.0}) {
        SpinJ j = SpinJ::from(jv);
        const Setup& s = setup_for(j);
        PureState reference = highest_weight_state(j, Axis::X);
        auto branches = teleport_branches(reference, s.resource, kp);
        double bound = classical_bound(kSigma, j);
        double f_simple = fidelity_unconditional(
            reference, apply_corrections(branches, s.simple, j));
        double f_orient = fidelity_unconditional(
            reference, apply_corrections(branches, s.orient, j));
        c.require(f_simple > bound && f_orient > bound,
                  "j=" + fmt(jv) + " F=(" + fmt(f_simple) + ", " + fmt(f_orient) +
                      ") bound " + fmt(bound));
    }

    {
        SpinJ j = SpinJ::from(20.0);
        const Setup& s = setup_for(j);
        double theta = 30.0 * kDegree;
        PureState in_y = coherent_state(j, theta, 0.0);       // tilt about y
        PureState in_z = coherent_state(j, theta, M_PI / 2);  // tilt about z
        double f_y = fidelity_unconditional(
            in_y, teleport(in_y, s.resource, kp, s.simple));
        double f_z = fidelity_unconditional(
            in_z, teleport(in_z, s.resource, kp, s.simple));
        c.require(f_y > f_z, "F_y(30deg)=" + fmt(f_y) + " vs F_z(30deg)=" + fmt(f_z));
        if (f_y <= f_z)
            c.info("the asymmetry is present with the axes exchanged: F_z > F_y holds; "
                   "see the z-direction variance enhancement in criterion 7");
    }
    return c;
}

Criterion criterion_7() {
    Criterion c{7, "squeezing transfer at j=20: enhancement near j/2, loss when deep"};
    SpinJ j = SpinJ::from(20.0);
    const Setup& s = setup_for(j);
    InteractionSpec kp = InteractionSpec::kp();
    double coherent_v = j.value() / 2.0;

    int near_checked = 0;
    for (double mu_s : {300.0, 1000.0}) {
        PureState input = squeezed_input(j, mu_s, Axis::Z);
        Mat jz = spin_operator(j, Axis::Z).entries;
        double v_in = variance(input, jz, 0);
        if (v_in < 0.9 * coherent_v || v_in > coherent_v) continue;
        ++near_checked;
        auto branches = teleport_branches(input, s.resource, kp);
        for (const CorrectionSet* set : {&s.simple, &s.orient}) {
            double v_out =
                output_variance(apply_corrections(branches, *set, j), Axis::Z);
            c.require(v_out < v_in, "mu_s=" + fmt(mu_s) + " v_out " + fmt(v_out) +
                                        " !< v_in " + fmt(v_in));
        }
    }
    c.require(near_checked >= 2, "near-coherent z inputs probed: " +
                                     std::to_string(near_checked));

    int deep_checked = 0;
    for (Axis axis : {Axis::Y, Axis::Z}) {
        Mat op = spin_operator(j, axis).entries;
        for (double mu_s : {0.2, 0.5, 1.0, 2.0}) {
            PureState input = squeezed_input(j, mu_s, axis);
            double v_in = variance(input, op, 0);
            if (v_in >= j.value() / 8.0) continue;
            ++deep_checked;
            auto branches = teleport_branches(input, s.resource, kp);
            for (const CorrectionSet* set : {&s.simple, &s.orient}) {
                double v_out =
                    output_variance(apply_corrections(branches, *set, j), axis);
                c.require(v_out > v_in, std::string(to_string(axis)) + " mu_s=" +
                                            fmt(mu_s) + " v_out " + fmt(v_out) +
                                            " !> v_in " + fmt(v_in));
            }
        }
    }
    c.require(deep_checked >= 4,
              "strongly squeezed inputs probed: " + std::to_string(deep_checked));
    return c;
}

Criterion criterion_8() {
    Criterion c{8, "superpositions: fidelity falls with angle, rises with spin"};
    InteractionSpec kp = InteractionSpec::kp();
    {
        SpinJ j = SpinJ::from(20.0);
        const Setup& s = setup_for(j);
        double prev_simple = 2.0, prev_orient = 2.0;
        for (int deg = 1; deg <= 10; ++deg) {
            PureState input = superposition_input(j, deg * kDegree);
            auto branches = teleport_branches(input, s.resource, kp);
            double f_simple = fidelity_unconditional(
                input, apply_corrections(branches, s.simple, j));
            double f_orient = fidelity_unconditional(
                input, apply_corrections(branches, s.orient, j));
            c.require(f_simple <= prev_simple + 1e-12,
                      "simple fidelity rose at theta=" + std::to_string(deg));
            c.require(f_orient <= prev_orient + 1e-12,
                      "orient fidelity rose at theta=" + std::to_string(deg));
            c.require(f_simple > f_orient,
                      "orient beat simple at theta=" + std::to_string(deg) +
                          " (" + fmt(f_orient) + " vs " + fmt(f_simple) + ")");
            prev_simple = f_simple;
            prev_orient = f_orient;
        }
    }
    {
        double prev_simple = 0.0, prev_orient = 0.0;
        for (double jv : {5.0, 10.0, 15.0, 20.0}) {
            SpinJ j = SpinJ::from(jv);
            const Setup& s = setup_for(j);
            PureState input = superposition_input(j, kDegree);
            auto branches = teleport_branches(input, s.resource, kp);
            double f_simple = fidelity_unconditional(
                input, apply_corrections(branches, s.simple, j));
            double f_orient = fidelity_unconditional(
                input, apply_corrections(branches, s.orient, j));
            c.require(f_simple >= prev_simple - 1e-12,
                      "simple fidelity fell between spins at j=" + fmt(jv));
            c.require(f_orient >= prev_orient - 1e-12,
                      "orient fidelity fell between spins at j=" + fmt(jv));
            prev_simple = f_simple;
            prev_orient = f_orient;
        }
    }
    return c;
}

Criterion criterion_9() {
    Criterion c{9, "swapping hierarchy and teleported entanglement fraction"};
    for (int two_j = 1; two_j <= 7; ++two_j) {
        SpinJ j{two_j};
        double e_kp =
            entanglement_swap(j, 0.0, InteractionSpec::kp()).average_entanglement;
        AlphaOptimum scalar = optimize_alpha(j);
        General16Optimum general =
            optimize_general_interaction(j, 0.0, 0, 8, 2500);
        c.require(e_kp <= scalar.entanglement + 1e-9,
                  "2j=" + std::to_string(two_j) + " KP " + fmt(e_kp) +
                      " > scalar optimum " + fmt(scalar.entanglement));
        c.require(scalar.entanglement <= general.entanglement + 1e-9,
                  "2j=" + std::to_string(two_j) + " scalar " +
                      fmt(scalar.entanglement) + " > general " +
                      fmt(general.entanglement));
    }
    for (double jv : {2.0, 3.0}) {
        SpinJ j = SpinJ::from(jv);
        const Setup& s = setup_for(j);
        double e = entanglement_swap(j, s.resource, InteractionSpec::kp())
                       .average_entanglement;
        c.require(e >= 0.25 && e <= 0.55,
                  "j=" + fmt(jv) + " teleported entanglement " + fmt(e));
    }
    return c;
}

Criterion criterion_10() {
    Criterion c{10, "structural identities: factorization, conjugate outcomes, bases"};
    for (int two_j = 1; two_j <= 8; ++two_j) {
        SpinJ j{two_j};
        IdentityReport pos = bell_factorization_check(j, true);
        IdentityReport neg = bell_factorization_check(j, false);
        IdentityReport appc = appendix_equivalence_check(j);
        c.require(pos.pass && pos.max_deviation < 1e-10,
                  "2j=" + std::to_string(two_j) + " factorization(+) " +
                      fmt(pos.max_deviation));
        c.require(neg.pass && neg.max_deviation < 1e-10,
                  "2j=" + std::to_string(two_j) + " factorization(-) " +
                      fmt(neg.max_deviation));
        c.require(appc.pass && appc.max_deviation < 1e-10,
                  "2j=" + std::to_string(two_j) + " conjugate outcomes " +
                      fmt(appc.max_deviation));
    }
    for (int n = 2; n <= 9; ++n)
        for (int s1 : {1, -1})
            for (int s2 : {1, -1})
                for (int s3 : {1, -1}) {
                    BellBasis basis = bell_basis(n, {s1, s2, s3});
                    double gram_dev = 0.0, ent_dev = 0.0;
                    for (int a = 0; a < n * n; ++a) {
                        for (int b = a; b < n * n; ++b) {
                            double g =
                                std::abs(basis.states[a].amp.dot(basis.states[b].amp));
                            gram_dev = std::max(
                                gram_dev, std::abs(g - (a == b ? 1.0 : 0.0)));
                        }
                        ent_dev = std::max(
                            ent_dev,
                            std::abs(entanglement_of_formation(basis.states[a]) -
                                     1.0));
                    }
                    c.require(gram_dev < 1e-12 && ent_dev < 1e-10,
                              "N=" + std::to_string(n) + " signs(" +
                                  std::to_string(s1) + "," + std::to_string(s2) +
                                  "," + std::to_string(s3) + ") gram " +
                                  fmt(gram_dev) + " ent " + fmt(ent_dev));
                }
    return c;
}

}  // namespace

int main() {
    using CriterionFn = Criterion (*)();
    CriterionFn criteria[] = {criterion_1, criterion_2, criterion_3, criterion_4,
                              criterion_5, criterion_6, criterion_7, criterion_8,
                              criterion_9, criterion_10};
    int failures = 0;
    auto total0 = std::chrono::steady_clock::now();
    for (CriterionFn fn : criteria) {
        auto t0 = std::chrono::steady_clock::now();
        Criterion c = fn();
        report(c, seconds_since(t0));
        if (!c.pass) ++failures;
    }
    std::printf("%d/10 criteria passed (total %.1f s)\n", 10 - failures,
                seconds_since(total0));
    return failures == 0 ? 0 : 1;
}
