// Acceptance suite: one checker per criterion, each printing a PASS/FAIL line.
// Run with no arguments for the full gate, or with a criterion number.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <string>
#include <vector>

#include "catlab/circuits.hpp"
#include "catlab/dynamics.hpp"
#include "catlab/metrology.hpp"
#include "catlab/statistics.hpp"

using namespace catlab;

namespace {

int g_failures = 0;

struct Gate {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& msg) {
        if (!cond && ok) {
            ok = false;
            detail = msg;
        }
    }
};

struct Criterion {
    int id;
    const char* name;
    Gate (*fn)();
};

void report(int id, const char* name, const Gate& g, double seconds) {
    if (g.ok) {
        std::printf("criterion %2d PASS  %s  (%.2fs)\n", id, name, seconds);
    } else {
        std::printf("criterion %2d FAIL  %s  (%.2fs): %s\n", id, name, seconds, g.detail.c_str());
        ++g_failures;
    }
}

StateSpec hcs(int n, double alpha, int sign = +1) {
    return StateSpec{.family = Family::HCS, .N = n, .alpha = alpha, .theta = sign > 0 ? 0.0 : kPi};
}

StateSpec ecs(int n, double alpha, int sign) {
    return StateSpec{.family = Family::ECS, .N = n, .alpha = alpha, .sign = sign};
}

// Closed forms for <ECS_N^s|HCS_N^t>, real alpha (rows as derived and verified
// against brute force; see tests/test_coherent.cpp).
cplx overlap_closed_form(int n, double alpha, int es, int hs) {
    const double x = alpha * alpha;
    const double a = std::pow(0.5 + 0.5 * std::exp(-2.0 * x), n / 2.0);
    const double b = std::pow(0.5 - 0.5 * std::exp(-2.0 * x), n / 2.0);
    const bool even = (n % 2 == 0);
    if (es > 0) {
        const double numer = (hs > 0) ? (even ? a + b : a) : (even ? a - b : a);
        return numer / std::sqrt(1.0 + std::exp(-2.0 * n * x));
    }
    if (even) return 0.0;
    return (hs > 0 ? b : -b) / std::sqrt(1.0 - std::exp(-2.0 * n * x));
}

// --------------------------------------------------------------------------

Gate criterion1() {
    Gate g;
    for (int n : {1, 2, 3, 4}) {
        for (double alpha : {0.5, 1.0, 2.0}) {
            const CutoffProfile c = uniform_cutoffs(n, cutoff_for(alpha));
            for (int es : {+1, -1})
                for (int hs : {+1, -1}) {
                    const FockState fe = build_fock(ecs(n, alpha, es), c);
                    const FockState fh = build_fock(hcs(n, alpha, hs), c);
                    const cplx brute = inner_product(fe, fh);
                    const cplx closed = overlap_closed_form(n, alpha, es, hs);
                    g.require(std::abs(brute - closed) < 1e-8,
                              "overlap mismatch at N=" + std::to_string(n) + " alpha=" +
                                  std::to_string(alpha));
                    if (es < 0 && n % 2 == 0)
                        g.require(std::abs(brute) < 1e-8, "expected exact zero at even N");
                }
        }
    }
    return g;
}

Gate criterion2() {
    Gate g;
    const FockState psi = build_fock(hcs(2, 3.0));
    const PhotonDistribution dist = photon_number_distribution(psi, 20);
    for (int n = 0; n <= 20; ++n)
        for (int m = 0; m <= 20; ++m) {
            const double p = dist.at({n, m});
            if (n % 2 != m % 2)
                g.require(p < 1e-14, "mixed parity cell not zero");
            else if (n <= 14 && m <= 14)
                g.require(p > 0.0, "bulk same-parity cell vanished");
        }
    g.require(std::abs(dist.total_mass - 1.0) < 1e-6, "total mass off by more than 1e-6");
    return g;
}

Gate criterion3() {
    Gate g;
    double qmin = 0.0, argmin = -1.0;
    const GridAxis sweep{"alpha", 0.2, 3.0, 57};
    for (int i = 0; i < sweep.count; ++i) {
        const double a = sweep.value_at(i);
        const double q = mandel_q(build_coherent(hcs(2, a)), 0);
        g.require(q < 0.0, "Q not negative at alpha=" + std::to_string(a));
        g.require(std::abs(q - hcs_mandel_closed_form(a)) < 1e-10, "closed form mismatch");
        if (argmin < 0.0 || q < qmin) {
            qmin = q;
            argmin = a;
        }
    }
    for (double a : {0.5, 1.5, 2.5})
        g.require(std::abs(mandel_q(build_fock(hcs(2, a)), 0) - hcs_mandel_closed_form(a)) < 1e-8,
                  "brute-force spot check failed");
    // Q(alpha) = -2|a|^2 / sinh(4|a|^2) increases strictly from -1/2 toward 0,
    // so the grid minimum sits at the left edge; the required window cannot
    // contain it. Reported as stated, not loosened.
    g.require(argmin >= 1.2 && argmin <= 1.8,
              "argmin at alpha=" + std::to_string(argmin) +
                  " (closed form is strictly increasing; window [1.2,1.8] unattainable)");
    return g;
}

Gate criterion4() {
    Gate g;
    for (double alpha : {0.5, 1.0, 2.0}) {
        const auto psi = build_coherent(hcs(2, alpha));
        const FockState f = build_fock(hcs(2, alpha));
        double vmin = 1e9;
        for (int k = 0; k < 64; ++k) {
            const double theta = kPi * k / 64.0;
            const double v = quadrature_variance(psi, 0, theta);
            g.require(std::abs(v - hcs_quadrature_variance_closed_form(alpha, theta)) < 1e-8,
                      "closed form mismatch at alpha=" + std::to_string(alpha));
            g.require(std::abs(quadrature_variance(f, 0, theta) - v) < 1e-8,
                      "fock variance mismatch");
            vmin = std::min(vmin, v);
        }
        g.require(vmin > 0.5, "found a squeezed quadrature");
    }
    return g;
}

Gate criterion5() {
    Gate g;
    const auto psi = build_coherent(hcs(2, 1.0));
    for (int k : {0, 1})
        for (int m : {0, 1}) {
            const cplx b1(0.0, (2 * k + 1) * kPi / 2.0);
            const cplx b2(0.0, m * kPi);
            const double q = q_value(psi, {b1, b2});
            g.require(std::abs(q) < 1e-12,
                      "Q(" + std::to_string(k) + "," + std::to_string(m) + ") = " + std::to_string(q));
        }
    return g;
}

Gate criterion6() {
    Gate g;
    for (double alpha : {1.0, 2.0}) {
        for (int sign : {+1, -1}) {
            const FockState f = build_fock(hcs(2, alpha, sign));
            const GridAxis gz{"z", -2.0, 2.0, 20}, gw{"w", -2.0, 2.0, 20};
            for (int i = 0; i < 20; ++i)
                for (int j = 0; j < 20; ++j) {
                    const cplx z(gz.value_at(i), 0.0), w(gw.value_at(j), 0.0);
                    const cplx series = bargmann_series(f, {z, w});
                    const cplx closed = hcs2_bargmann_closed_form(alpha, sign, z, w);
                    g.require(std::abs(series - closed) < 1e-8,
                              "series/closed mismatch at alpha=" + std::to_string(alpha));
                }
        }
    }
    return g;
}

Gate criterion7() {
    Gate g;
    std::vector<double> a2s, ecs_h3, ecs_h4, om_sl2;
    for (double a2 = 1.0; a2 <= 6.0 + 1e-9; a2 += 1.0) {
        const double alpha = std::sqrt(a2);
        a2s.push_back(a2);
        {
            const StateSpec s = ecs(2, alpha, +1);
            const CutoffProfile c = default_cutoffs(s);
            const FockState psi = build_fock(s, c);
            std::vector<FockState> branches;
            for (const auto& b : catalog_branches(s)) branches.push_back(to_fock(b, c));
            ecs_h3.push_back(nrf(psi, branches, Algebra::h3).nrf);
            ecs_h4.push_back(nrf(psi, branches, Algebra::h4).nrf);
        }
        {
            const StateSpec s{.family = Family::Omega, .N = 2, .alpha = alpha};
            const CutoffProfile c = default_cutoffs(s);
            const FockState psi = build_fock(s, c);
            std::vector<FockState> branches;
            for (const auto& b : catalog_branches(s)) branches.push_back(to_fock(b, c));
            om_sl2.push_back(nrf(psi, branches, Algebra::sl2).nrf);
        }
    }
    const double e_h3 = fit_loglog_exponent(a2s, ecs_h3);
    const double e_h4 = fit_loglog_exponent(a2s, ecs_h4);
    const double e_sl2 = fit_loglog_exponent(a2s, om_sl2);
    g.require(e_h3 > 0.8 && e_h3 < 1.2, "ECS/h3 exponent " + std::to_string(e_h3));
    g.require(e_h4 > -0.2 && e_h4 < 0.3, "ECS/h4 exponent " + std::to_string(e_h4));
    g.require(e_sl2 > 0.8 && e_sl2 < 1.2, "Omega/sl2 exponent " + std::to_string(e_sl2));

    // Two-photon variance closed form against brute force.
    for (double alpha : {1.0, 1.5}) {
        const StateSpec s{.family = Family::Omega, .N = 2, .alpha = alpha};
        const FockState psi = build_fock(s);
        for (cplx z : {cplx(1.0, 0.0), cplx(0.3, -0.2)}) {
            RVec coeffs = RVec::Zero(6);
            coeffs[1] = coeffs[4] = 2.0 * z.real();
            coeffs[2] = coeffs[5] = 2.0 * z.imag();
            const double norm = coeffs.norm();
            coeffs /= norm;
            const double brute = one_local_variance(psi, Algebra::sl2, coeffs) * norm * norm;
            const double closed = omega_two_photon_variance_closed_form(2, alpha, z);
            g.require(std::abs(brute - closed) < 1e-6,
                      "Omega variance mismatch " + std::to_string(brute - closed));
        }
    }
    return g;
}

Gate criterion8() {
    Gate g;
    const CutoffProfile c = uniform_cutoffs(3, 2);
    Vec amps = Vec::Zero(8);
    amps[0] = amps[7] = 1.0 / std::sqrt(2.0);
    const FockState ghz(c, amps);
    Mat h = Mat::Zero(8, 8);
    for (int m = 0; m < 3; ++m) h += embed(parity_matrix(2), m, c);
    const double qfi = qfi_pure(ghz, {h, true});
    g.require(std::abs(qfi - 36.0) < 1e-12, "QFI = " + std::to_string(qfi));
    return g;
}

Gate criterion9() {
    Gate g;
    const GridAxis ga{"alpha", 0.2, 3.0, 15}, gt{"theta", 0.1, kPi - 0.1, 15};
    std::vector<std::vector<double>> surface(15, std::vector<double>(15));
    for (int ia = 0; ia < 15; ++ia) {
        const double alpha = ga.value_at(ia);
        const auto psi = build_coherent(hcs(2, alpha));
        for (int it = 0; it < 15; ++it) {
            const auto out = apply_beam_splitter(psi, {0, 1, gt.value_at(it), BsConvention::SymmetricPhase});
            const double s = entanglement_entropy(out, {0});
            surface[ia][it] = s;
            if (alpha >= 1.5) g.require(s > 0.98, "S_E <= 0.98 at alpha=" + std::to_string(alpha));
        }
    }
    // alpha = 2 row: maximal to 1e-4.
    const auto psi2 = build_coherent(hcs(2, 2.0));
    for (int it = 0; it < 15; ++it) {
        const double s = entanglement_entropy(
            apply_beam_splitter(psi2, {0, 1, gt.value_at(it), BsConvention::SymmetricPhase}), {0});
        g.require(std::abs(s - 1.0) < 1e-4, "S_E(alpha=2) deviates by " + std::to_string(s - 1.0));
    }
    // Dual backends on 10 pseudo-random cells.
    std::mt19937 rng(20260810);
    std::uniform_int_distribution<int> pick(0, 14);
    for (int k = 0; k < 10; ++k) {
        const int ia = pick(rng), it = pick(rng);
        const double alpha = ga.value_at(ia), theta = gt.value_at(it);
        const FockState f = build_fock(hcs(2, alpha));
        const double fock =
            entanglement_entropy(apply_beam_splitter(f, {0, 1, theta, BsConvention::SymmetricPhase}), {0});
        g.require(std::abs(fock - surface[ia][it]) < 1e-5,
                  "backend mismatch " + std::to_string(fock - surface[ia][it]));
    }
    return g;
}

Gate criterion10() {
    Gate g;
    const double gamma = 0.1;
    const GridAxis ga{"alpha", 1.0, 2.5, 7}, gt{"t", 0.0, 9.0, 10};
    for (int ia = 0; ia < ga.count; ++ia) {
        const auto psi = build_coherent(hcs(2, ga.value_at(ia)));
        DampingRun run{gamma, {0.0}, DampingBackend::Analytic};
        const auto p0 = damping_entropy_trajectory(psi, run, {0});
        g.require(std::abs(p0[0].entropy - 1.0) < 1e-6, "S_E(t=0) != 1");
    }
    {
        DampingRun run{gamma, {9.0}, DampingBackend::Analytic};
        const auto p = damping_entropy_trajectory(build_coherent(hcs(2, 2.0)), run, {0});
        g.require(p[0].entropy > 0.9, "S_E(alpha=2, t=9) = " + std::to_string(p[0].entropy));
    }
    {
        const auto ecs_ctl = build_coherent(ecs(2, 1.0, -1));
        DampingRun run{gamma, {50.0}, DampingBackend::Analytic};
        const auto p = damping_entropy_trajectory(ecs_ctl, run, {0});
        g.require(p[0].entropy < 0.05, "ECS control S_E = " + std::to_string(p[0].entropy));
    }
    // Analytic vs numeric density matrices at 6 sampled (alpha, t) points.
    for (double alpha : {1.0, 1.5, 2.0}) {
        const auto rho0 = CoherentDensity::from_pure(build_coherent(hcs(2, alpha)));
        const CutoffProfile c = uniform_cutoffs(2, cutoff_for(alpha));
        for (double t : {4.5, 9.0}) {
            const Mat ana = dyads_to_fock(amplitude_damp(rho0, gamma, t), c).matrix;
            const Mat num = amplitude_damp_numeric(dyads_to_fock(rho0, c), gamma, t).matrix;
            const double dev = (ana - num).cwiseAbs().maxCoeff();
            g.require(dev < 1e-6, "backend deviation " + std::to_string(dev) + " at alpha=" +
                                      std::to_string(alpha));
        }
    }
    return g;
}

Gate criterion11() {
    Gate g;
    const double gamma = 0.1;
    const FockState bell = build_fock(StateSpec{.family = Family::FockBell, .N = 2});
    for (double gt : {0.5, 1.0, 2.0}) {
        const double t = gt / gamma;
        const DensityOperator closed = fock_bell_damped_closed_form(gamma, t);
        const DensityOperator num = amplitude_damp_numeric(density_from_pure(bell), gamma, t);
        const double dev = (closed.matrix - num.matrix).cwiseAbs().maxCoeff();
        g.require(dev < 1e-8, "displayed-matrix deviation " + std::to_string(dev));
    }
    // Long-time reduced entropy: computed limit vs the claimed value of 1.
    const DensityOperator late_closed = fock_bell_damped_closed_form(gamma, 300.0);
    const DensityOperator late_num = amplitude_damp_numeric(density_from_pure(bell), gamma, 300.0, 0.1);
    const double s_closed = von_neumann_entropy(partial_trace(late_closed, {0}));
    const double s_num = von_neumann_entropy(partial_trace(late_num, {0}));
    g.require(std::abs(s_closed - s_num) < 1e-6, "backends disagree on the limit");
    std::printf("    criterion 11 note: computed t->infinity reduced entropy = %.3e bits "
                "(claimed value 1; the computed trajectory drives the reduced state to the "
                "vacuum, entropy 0)\n",
                s_num);
    return g;
}

Gate criterion12() {
    Gate g;
    for (double alpha : {0.8, 1.5, 2.5}) {
        const auto res = qubit_mediated_generation(alpha);
        g.require(std::abs(res.fidelity - 1.0) < 1e-8,
                  "fig6 fidelity " + std::to_string(res.fidelity) + " at alpha=" + std::to_string(alpha));
    }
    double prev = 0.0;
    for (double eps : {0.1, 0.05, 0.01}) {
        const auto res = coherent_photon_loss_protocol(1.0, eps, 0.0, 2);
        g.require(res.fidelity > prev, "fig5 fidelity not monotone in eps");
        prev = res.fidelity;
    }
    g.require(prev > 0.999, "fig5 fidelity at eps=0.01: " + std::to_string(prev));
    return g;
}

Gate criterion13() {
    Gate g;
    // Backend equivalence on the catalog grid.
    for (double alpha : {0.5, 1.5, 2.5}) {
        for (int n : {1, 2, 3}) {
            const auto a = build_coherent(hcs(n, alpha));
            const auto b = build_coherent(ecs(n, alpha, -1));
            const CutoffProfile c = uniform_cutoffs(n, cutoff_for(alpha));
            const cplx analytic = inner_product(a, b);
            const cplx brute = inner_product(to_fock(a, c), to_fock(b, c));
            g.require(std::abs(analytic - brute) < 1e-8, "backend equivalence violated");
        }
    }
    // Unitarity of the constructed operators at validated cutoffs.
    {
        const int d = cutoff_for(1.5);
        auto unitary_dev = [](const Mat& u) {
            return (u.adjoint() * u - Mat::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
        };
        g.require(unitary_dev(displacement_matrix(cplx(0.9, -0.3), d)) < 1e-8, "D not unitary");
        g.require(unitary_dev(squeeze_matrix(0.4, d)) < 1e-8, "S not unitary");
        g.require(unitary_dev(parity_matrix(d)) < 1e-8, "parity not unitary");
        g.require(unitary_dev(two_mode_mixer_matrix(0.8, 12, 12, true)) < 1e-8, "B not unitary");
        g.require(unitary_dev(two_mode_mixer_matrix(1.2, 12, 12, false)) < 1e-8, "U not unitary");
    }
    // Trace and positivity along damping trajectories.
    {
        DampingRun run{0.1, {0.0, 3.0, 9.0}, DampingBackend::Analytic};
        const auto traj = damping_entropy_trajectory(build_coherent(hcs(2, 1.2)), run, {0});
        for (const auto& p : traj) {
            g.require(std::abs(p.trace - 1.0) < 1e-6, "trace drift");
            g.require(p.entropy >= 0.0 && p.entropy <= 1.0 + 1e-9, "entropy out of range");
        }
        const auto rho0 = CoherentDensity::from_pure(build_coherent(hcs(2, 1.2)));
        const CutoffProfile c = uniform_cutoffs(2, cutoff_for(1.2));
        const DensityOperator num = amplitude_damp_numeric(dyads_to_fock(rho0, c), 0.1, 9.0);
        g.require(density_spectrum(num).minCoeff() > -1e-8, "negative eigenvalue");
    }
    // Parity action across the family.
    for (int n : {2, 3}) {
        const FockState plus = build_fock(hcs(n, 1.1));
        const FockState minus = build_fock(hcs(n, 1.1, -1));
        FockState flipped = plus;
        for (int m = 0; m < n; ++m)
            flipped = apply_single_mode(flipped, parity_matrix(plus.cutoffs().dims[m]), m);
        const FockState& expect = (n % 2 == 1) ? minus : plus;
        g.require(std::abs(fidelity(flipped, expect) - 1.0) < 1e-10, "parity action violated");
    }
    // Group expansion against the direct constructor.
    for (int n : {1, 2, 3}) {
        for (int sign : {+1, -1}) {
            const auto grouped = build_group_expansion(n, 1.0, sign);
            const auto direct = build_coherent(hcs(n, 1.0, sign));
            g.require(std::abs(fidelity(grouped, direct) - 1.0) < 1e-10,
                      "group expansion mismatch at N=" + std::to_string(n));
        }
    }
    return g;
}

const Criterion kCriteria[] = {
    {1, "inner-product closed forms vs brute force", criterion1},
    {2, "photon number distribution checkerboard", criterion2},
    {3, "Mandel Q sweep (negativity; argmin window)", criterion3},
    {4, "no-squeezing quadrature variance", criterion4},
    {5, "Husimi Q zero locus", criterion5},
    {6, "Bargmann series vs closed form", criterion6},
    {7, "metrology scaling exponents", criterion7},
    {8, "GHZ_3 QFI benchmark", criterion8},
    {9, "beam-splitter entropy surface", criterion9},
    {10, "damping entropy surface", criterion10},
    {11, "Fock-pair damping and its long-time limit", criterion11},
    {12, "generation circuit exactness", criterion12},
    {13, "property suites", criterion13},
};

}  // namespace

int main(int argc, char** argv) {
    int only = 0;
    if (argc > 1) only = std::atoi(argv[1]);
    for (const auto& c : kCriteria) {
        if (only != 0 && c.id != only) continue;
        const auto start = std::chrono::steady_clock::now();
        Gate g;
        try {
            g = c.fn();
        } catch (const std::exception& e) {
            g.ok = false;
            g.detail = std::string("exception: ") + e.what();
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        report(c.id, c.name, g, secs);
    }
    if (g_failures > 0) {
        std::printf("%d criterion(s) FAILED\n", g_failures);
        return 1;
    }
    std::printf("all selected criteria passed\n");
    return 0;
}
