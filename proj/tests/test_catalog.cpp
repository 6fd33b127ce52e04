#include <catch2/catch_amalgamated.hpp>

#include "catlab/catalog.hpp"

using namespace catlab;

TEST_CASE("HCS low-power limit approaches the Fock pair state", "[catalog]") {
    const StateSpec hcs{.family = Family::HCS, .N = 2, .alpha = 1e-3, .theta = 0.0};
    const CutoffProfile c = uniform_cutoffs(2, 12);
    const FockState psi = to_fock(build_coherent(hcs), c);
    const FockState bell = build_fock(StateSpec{.family = Family::FockBell, .N = 2}, c);
    REQUIRE(fidelity(psi, bell) > 1.0 - 1e-5);
}

TEST_CASE("single-mode ECS coincides with the cat states", "[catalog]") {
    for (int sign : {+1, -1}) {
        const auto ecs = build_coherent(StateSpec{.family = Family::ECS, .N = 1, .alpha = 1.1, .sign = sign});
        const auto cat = cat_state(1.1, sign);
        REQUIRE(std::abs(inner_product(ecs, cat) - 1.0) < 1e-12);
    }
}

TEST_CASE("Z/4Z basis states", "[catalog]") {
    const double alpha = 1.2;
    SECTION("photon support sits on n = j (mod 4)") {
        const CutoffProfile c({cutoff_for(alpha)});
        for (int j = 0; j < 4; ++j) {
            const FockState f = to_fock(z4_basis_state(alpha, j), c);
            for (int n = 0; n < c.dims[0]; ++n) {
                if (n % 4 == j) continue;
                REQUIRE(std::abs(f.amp()[n]) < 1e-15);
            }
            // Some population does live on the allowed classes.
            REQUIRE(f.amp().cwiseAbs().maxCoeff() > 0.1);
        }
    }
    SECTION("the four states are orthonormal") {
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k) {
                const cplx ip = inner_product(z4_basis_state(alpha, j), z4_basis_state(alpha, k));
                REQUIRE(std::abs(ip - (j == k ? 1.0 : 0.0)) < 1e-12);
            }
    }
    SECTION("unnormalized norms match the quarter-class character sums") {
        // |e_j>'s four-term numerator has squared norm 4 e^{-x} (2 cosh x +- 2 cos x)
        // resp. (2 sinh x +- 2 sin x), x = |alpha|^2.
        const double x = alpha * alpha;
        const std::array<double, 4> expect = {
            2.0 * std::cosh(x) + 2.0 * std::cos(x), 2.0 * std::sinh(x) + 2.0 * std::sin(x),
            2.0 * std::cosh(x) - 2.0 * std::cos(x), 2.0 * std::sinh(x) - 2.0 * std::sin(x)};
        static const cplx roots[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
        for (int j = 0; j < 4; ++j) {
            std::vector<CoherentTerm> terms;
            for (int k = 0; k < 4; ++k)
                terms.push_back({roots[(4 - (j * k) % 4) % 4], {roots[k] * alpha}});
            const CoherentSuperposition raw(1, std::move(terms));
            const double n2 = raw.self_inner().real();
            REQUIRE(std::abs(n2 - 4.0 * std::exp(-x) * expect[static_cast<std::size_t>(j)]) < 1e-10);
        }
    }
}

TEST_CASE("general two-branch construction", "[catalog]") {
    const CutoffProfile c({cutoff_for(1.0)});

    SECTION("coherent seed with parity isometry gives the ECS") {
        const FockState phi = to_fock(CoherentSuperposition::coherent({1.0}), c);
        const auto res = build_general_two_branch(phi, {PartialIsometrySpec::Kind::Parity}, 3);
        REQUIRE(std::abs(res.branch_overlap - std::exp(-2.0)) < 1e-10);
        const FockState ecs = build_fock(StateSpec{.family = Family::ECS, .N = 3, .alpha = 1.0, .sign = +1},
                                         uniform_cutoffs(3, c.dims[0]));
        REQUIRE(std::abs(fidelity(res.state, ecs) - 1.0) < 1e-10);
    }
    SECTION("Fock seed with a level-swap isometry gives the Fock pair family") {
        const int d = 4, n = 0, m = 2;
        PartialIsometrySpec swap;
        swap.kind = PartialIsometrySpec::Kind::Explicit;
        Mat u = Mat::Identity(d, d);
        u(n, n) = u(m, m) = 0.0;
        u(n, m) = u(m, n) = 1.0;
        swap.explicit_op = u;
        const FockState phi = FockState::basis(CutoffProfile({d}), {n});
        const auto res = build_general_two_branch(phi, swap, 2);
        REQUIRE(std::abs(res.branch_overlap) < 1e-15);  // z = 0: orthogonal branches
        const FockState expect = build_fock(StateSpec{.family = Family::FockBell, .N = 2,
                                                      .fock_n = n, .fock_m = m},
                                            uniform_cutoffs(2, d));
        REQUIRE(std::abs(fidelity(res.state, expect) - 1.0) < 1e-12);
    }
    SECTION("non-isometric operator is rejected") {
        PartialIsometrySpec bad;
        bad.kind = PartialIsometrySpec::Kind::Explicit;
        bad.explicit_op = 0.5 * Mat::Identity(c.dims[0], c.dims[0]);
        const FockState phi = to_fock(CoherentSuperposition::coherent({1.0}), c);
        REQUIRE_THROWS_AS(build_general_two_branch(phi, bad, 2), ConfigError);
    }
}

TEST_CASE("general hierarchical construction", "[catalog]") {
    const CutoffProfile c({cutoff_for(1.0)});
    const FockState phi = to_fock(CoherentSuperposition::coherent({1.0}), c);

    SECTION("parity kitten isometry reproduces the HCS catalog state") {
        const auto res = build_general_hcs(phi, {PartialIsometrySpec::Kind::Parity}, 2, 0.0);
        REQUIRE(std::abs(res.branch_overlap.imag()) < 1e-12);
        const FockState hcs = build_fock(StateSpec{.family = Family::HCS, .N = 2, .alpha = 1.0},
                                         uniform_cutoffs(2, c.dims[0]));
        REQUIRE(std::abs(fidelity(res.state, hcs) - 1.0) < 1e-10);
    }
    SECTION("w = +-1 collapses a kitten and is rejected") {
        const FockState vac = FockState::vacuum(c);
        REQUIRE_THROWS_AS(build_general_hcs(vac, {PartialIsometrySpec::Kind::Parity}, 2, 0.0),
                          DegenerateStateError);
    }
}

TEST_CASE("group expansion", "[catalog]") {
    SECTION("N = 1 reduces to the equal cat superposition (psi+ +- psi-)/sqrt(2)") {
        for (int sign : {+1, -1}) {
            const auto g = build_group_expansion(1, 0.9, sign);
            const auto expect = add(cat_state(0.9, +1).scaled(1.0 / std::sqrt(2.0)),
                                    cat_state(0.9, -1).scaled(sign / std::sqrt(2.0)));
            REQUIRE(std::abs(inner_product(g, expect) - 1.0) < 1e-12);
            // Each single-mode cat carries exactly half the weight.
            REQUIRE(std::abs(std::abs(inner_product(g, cat_state(0.9, sign))) - 1.0 / std::sqrt(2.0)) < 1e-12);
        }
    }
    SECTION("matches the direct constructor at N = 2") {
        for (int sign : {+1, -1}) {
            const auto direct =
                build_coherent(StateSpec{.family = Family::HCS, .N = 2, .alpha = 1.0,
                                          .theta = sign > 0 ? 0.0 : kPi});
            const auto g = build_group_expansion(2, 1.0, sign);
            REQUIRE(std::abs(fidelity(g, direct) - 1.0) < 1e-10);
            REQUIRE(std::abs(g.self_inner().real() - 1.0) < 1e-12);
        }
    }
    SECTION("term count is the group order 2^N") {
        REQUIRE(build_group_expansion(3, 1.0, +1).terms().size() == 8);
    }
}

TEST_CASE("concatenated families", "[catalog]") {
    SECTION("single block reduces to (HCS+ +- HCS-)/sqrt(2)") {
        for (int sign : {+1, -1}) {
            const auto chcs = build_coherent(StateSpec{.family = Family::CHCS, .N = 2, .M = 1,
                                                        .alpha = 1.0, .sign = sign});
            const auto hp = build_coherent(StateSpec{.family = Family::HCS, .N = 2, .alpha = 1.0, .theta = 0.0});
            const auto hm = build_coherent(StateSpec{.family = Family::HCS, .N = 2, .alpha = 1.0, .theta = kPi});
            const auto expect =
                add(hp.scaled(1.0 / std::sqrt(2.0)), hm.scaled(sign / std::sqrt(2.0)));
            REQUIRE(std::abs(fidelity(chcs, expect) - 1.0) < 1e-12);
        }
    }
    SECTION("C-ECS(M=2, N=1) is exactly normalized") {
        const auto cecs = build_coherent(StateSpec{.family = Family::CECS, .N = 1, .M = 2, .alpha = 0.8});
        REQUIRE(std::abs(cecs.self_inner().real() - 1.0) < 1e-10);
        REQUIRE(cecs.num_modes() == 2);
    }
    SECTION("tracing out one block of C-HCS leaves a one-bit block mixture") {
        const auto chcs = build_coherent(StateSpec{.family = Family::CHCS, .N = 2, .M = 2, .alpha = 1.0});
        const auto red = reduce(CoherentDensity::from_pure(chcs), {0, 1});
        REQUIRE(std::abs(entropy_from_gram(red) - 1.0) < 1e-8);
    }
    SECTION("C-ECS rejects the degenerate alpha = 0 point") {
        REQUIRE_THROWS_AS(
            build_coherent(StateSpec{.family = Family::CECS, .N = 1, .M = 2, .alpha = 0.0}),
            DegenerateStateError);
    }
}

TEST_CASE("degenerate normalizations are rejected", "[catalog]") {
    REQUIRE_THROWS_AS(build_coherent(StateSpec{.family = Family::OddCat, .N = 1, .alpha = 0.0}),
                      DegenerateStateError);
    REQUIRE_THROWS_AS(build_coherent(StateSpec{.family = Family::ECS, .N = 2, .alpha = 0.0, .sign = -1}),
                      DegenerateStateError);
}

TEST_CASE("HCS branch orthogonality and parity action", "[catalog][property]") {
    for (double alpha : {0.3, 1.0, 2.2}) {
        for (int N : {1, 2, 3}) {
            const auto branches = catalog_branches(StateSpec{.family = Family::HCS,
                                                              .N = N, .alpha = alpha});
            REQUIRE(std::abs(inner_product(branches[0], branches[1])) < 1e-12);
        }
    }
    // All-mode parity maps HCS_N^+- to HCS_N^-+ for odd N and fixes it for even N.
    for (int N : {2, 3}) {
        const FockState plus = build_fock(StateSpec{.family = Family::HCS, .N = N, .alpha = 1.1});
        const FockState minus =
            build_fock(StateSpec{.family = Family::HCS, .N = N, .alpha = 1.1, .theta = kPi});
        FockState flipped = plus;
        for (int m = 0; m < N; ++m)
            flipped = apply_single_mode(flipped, parity_matrix(plus.cutoffs().dims[m]), m);
        const FockState& expect = (N % 2 == 1) ? minus : plus;
        REQUIRE(std::abs(fidelity(flipped, expect) - 1.0) < 1e-10);
    }
}

TEST_CASE("per-mode two-photon eigenrelation on each branch", "[catalog][property]") {
    const double alpha = 1.2;
    for (int sign : {+1, -1}) {
        const FockState branch = build_fock(StateSpec{
            .family = sign > 0 ? Family::EvenCat : Family::OddCat, .N = 2, .alpha = alpha});
        for (int m = 0; m < 2; ++m) {
            const Mat a = annihilation_matrix(branch.cutoffs().dims[m]);
            const FockState a2 = apply_single_mode(apply_single_mode(branch, a, m), a, m);
            REQUIRE(std::abs(inner_product(branch, a2) - alpha * alpha) < 1e-8);
        }
    }
}

TEST_CASE("state spec JSON codec", "[catalog]") {
    SECTION("canonical round trip") {
        const StateSpec s{.family = Family::HCS, .N = 2, .alpha = cplx(1.5, 0.0), .theta = 0.25};
        const json j = to_json(s);
        const StateSpec back = state_spec_from_json(j);
        REQUIRE(back.family == Family::HCS);
        REQUIRE(back.N == 2);
        REQUIRE(back.alpha == cplx(1.5, 0.0));
        REQUIRE(back.theta == 0.25);
        REQUIRE(to_json(back) == j);
    }
    SECTION("sign shorthand for HCS maps onto theta") {
        const auto s = state_spec_from_json(json::parse(R"({"family":"HCS","N":2,"alpha":1.0,"sign":"-"})"));
        REQUIRE(s.theta == kPi);
    }
    SECTION("complex alpha encodings") {
        const auto s = state_spec_from_json(json::parse(R"({"family":"Coherent","N":1,"alpha":[0.5,-0.25]})"));
        REQUIRE(s.alpha == cplx(0.5, -0.25));
    }
    SECTION("invalid specs are rejected") {
        REQUIRE_THROWS_AS(state_spec_from_json(json::parse(R"({"family":"Nope"})")), ConfigError);
        REQUIRE_THROWS_AS(state_spec_from_json(json::parse(R"({"N":2})")), ConfigError);
        REQUIRE_THROWS_AS(
            state_spec_from_json(json::parse(R"({"family":"Z4Basis","N":1,"alpha":1.0,"j":7})")),
            ConfigError);
    }
}
