// catalog.hpp
// Constructors for every named state family, in both backends, plus the
// general two-branch and group-expansion constructions used to cross-check
// them. StateSpec carries the canonical JSON encoding consumed by the CLI.

#pragma once

#include <nlohmann/json.hpp>

#include <cmath>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "catlab/coherent.hpp"
#include "catlab/common.hpp"
#include "catlab/fock.hpp"

namespace catlab {

using json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// StateSpec
// ---------------------------------------------------------------------------

enum class Family {
    Coherent,
    EvenCat,
    OddCat,
    ECS,
    HCS,
    Omega,
    Z4Basis,
    SqueezedHCS,
    GeneralTwoBranch,
    GeneralHCS,
    CHCS,
    CECS,
    FockBell,
};

inline std::string family_name(Family f) {
    switch (f) {
        case Family::Coherent: return "Coherent";
        case Family::EvenCat: return "EvenCat";
        case Family::OddCat: return "OddCat";
        case Family::ECS: return "ECS";
        case Family::HCS: return "HCS";
        case Family::Omega: return "Omega";
        case Family::Z4Basis: return "Z4Basis";
        case Family::SqueezedHCS: return "SqueezedHCS";
        case Family::GeneralTwoBranch: return "GeneralTwoBranch";
        case Family::GeneralHCS: return "GeneralHCS";
        case Family::CHCS: return "CHCS";
        case Family::CECS: return "CECS";
        case Family::FockBell: return "FockBell";
    }
    throw ConfigError("family_name: unknown family");
}

inline Family family_from_name(const std::string& s) {
    for (Family f : {Family::Coherent, Family::EvenCat, Family::OddCat, Family::ECS, Family::HCS,
                     Family::Omega, Family::Z4Basis, Family::SqueezedHCS, Family::GeneralTwoBranch,
                     Family::GeneralHCS, Family::CHCS, Family::CECS, Family::FockBell})
        if (family_name(f) == s) return f;
    throw ConfigError("unknown state family: " + s);
}

// Named single-mode partial isometries for the general two-branch construction,
// or an explicit truncated operator supplied through the C++ API.
struct PartialIsometrySpec {
    enum class Kind { Parity, PhaseShift, DisplacedPhase, Explicit };
    Kind kind = Kind::Parity;
    double phase = 0.0;  // e^{i phase n}
    cplx beta = 0.0;     // displacement for DisplacedPhase
    Mat explicit_op;     // for Kind::Explicit

    Mat to_matrix(int d) const {
        switch (kind) {
            case Kind::Parity: return parity_matrix(d);
            case Kind::PhaseShift: return phase_matrix(phase, d);
            case Kind::DisplacedPhase: return phase_matrix(phase, d) * displacement_matrix(beta, d);
            case Kind::Explicit:
                if (explicit_op.rows() != d || explicit_op.cols() != d)
                    throw ConfigError("PartialIsometrySpec: explicit operator dimension mismatch");
                return explicit_op;
        }
        throw ConfigError("PartialIsometrySpec: unknown kind");
    }
};

struct StateSpec {
    Family family = Family::HCS;
    int N = 1;           // modes (per block for concatenated families)
    int M = 1;           // blocks
    cplx alpha = 1.0;    // coherent amplitude
    double theta = 0.0;  // relative branch phase (HCS); sign families use 0 / pi
    int sign = +1;       // +1 / -1 for ECS, CHCS, CECS
    double w = 0.0;      // squeeze parameter (real)
    int j = 0;           // Z/4Z class index
    int fock_n = 0;      // FockBell lower level
    int fock_m = 1;      // FockBell upper level

    void validate() const {
        if (N < 1) throw ConfigError("StateSpec: N must be >= 1");
        if (M < 1) throw ConfigError("StateSpec: M must be >= 1");
        if (family == Family::Z4Basis && (j < 0 || j > 3))
            throw ConfigError("StateSpec: Z4 index must be in 0..3");
        if (family == Family::FockBell && fock_n == fock_m)
            throw ConfigError("StateSpec: FockBell levels must differ");
        if (sign != 1 && sign != -1) throw ConfigError("StateSpec: sign must be +1 or -1");
    }
};

inline json complex_to_json(cplx z) {
    if (z.imag() == 0.0) return json(z.real());
    return json::array({z.real(), z.imag()});
}

inline cplx complex_from_json(const json& v) {
    if (v.is_number()) return cplx(v.get<double>(), 0.0);
    if (v.is_array() && v.size() == 2) return cplx(v[0].get<double>(), v[1].get<double>());
    if (v.is_object() && v.contains("re")) return cplx(v["re"].get<double>(), v.value("im", 0.0));
    throw ConfigError("complex value must be a number, [re, im], or {re, im}");
}

inline json to_json(const StateSpec& s) {
    json out;
    out["family"] = family_name(s.family);
    switch (s.family) {
        case Family::Coherent:
        case Family::EvenCat:
        case Family::OddCat:
        case Family::Omega:
            out["N"] = s.N;
            out["alpha"] = complex_to_json(s.alpha);
            break;
        case Family::ECS:
            out["N"] = s.N;
            out["alpha"] = complex_to_json(s.alpha);
            out["sign"] = s.sign > 0 ? "+" : "-";
            break;
        case Family::HCS:
            out["N"] = s.N;
            out["alpha"] = complex_to_json(s.alpha);
            out["theta"] = s.theta;
            break;
        case Family::Z4Basis:
            out["N"] = s.N;
            out["alpha"] = complex_to_json(s.alpha);
            out["j"] = s.j;
            break;
        case Family::SqueezedHCS:
            out["N"] = s.N;
            out["alpha"] = complex_to_json(s.alpha);
            out["w"] = s.w;
            break;
        case Family::CHCS:
        case Family::CECS:
            out["M"] = s.M;
            out["N"] = s.N;
            out["alpha"] = complex_to_json(s.alpha);
            out["sign"] = s.sign > 0 ? "+" : "-";
            break;
        case Family::FockBell:
            out["N"] = s.N;
            out["n"] = s.fock_n;
            out["m"] = s.fock_m;
            break;
        case Family::GeneralTwoBranch:
        case Family::GeneralHCS:
            throw ConfigError("General two-branch specs have no JSON form; use the C++ API");
    }
    return out;
}

inline StateSpec state_spec_from_json(const json& v) {
    if (!v.is_object() || !v.contains("family")) throw ConfigError("state spec: missing 'family'");
    StateSpec s;
    s.family = family_from_name(v["family"].get<std::string>());
    s.N = v.value("N", 1);
    s.M = v.value("M", 1);
    if (v.contains("alpha")) s.alpha = complex_from_json(v["alpha"]);
    if (v.contains("theta")) s.theta = v["theta"].get<double>();
    if (v.contains("sign")) {
        const auto& sv = v["sign"];
        if (sv.is_string())
            s.sign = (sv.get<std::string>() == "-") ? -1 : +1;
        else
            s.sign = sv.get<int>() < 0 ? -1 : +1;
        if (s.family == Family::HCS) s.theta = s.sign > 0 ? 0.0 : kPi;
    }
    s.w = v.value("w", 0.0);
    s.j = v.value("j", 0);
    s.fock_n = v.value("n", 0);
    s.fock_m = v.value("m", 1);
    s.validate();
    return s;
}

// ---------------------------------------------------------------------------
// Single-mode building blocks
// ---------------------------------------------------------------------------

// Normalized even (+) / odd (-) coherent state. Rejects the degenerate odd cat
// at alpha = 0, whose norm sqrt(2 - 2<alpha|-alpha>) vanishes.
inline CoherentSuperposition cat_state(cplx alpha, int sign) {
    CoherentSuperposition raw(1, {{1.0, {alpha}}, {static_cast<double>(sign), {-alpha}}});
    const double n2 = raw.self_inner().real();
    if (n2 < 1e-12)
        throw DegenerateStateError("cat_state: degenerate normalization (alpha too small for sign " +
                                   std::to_string(sign) + ")");
    return raw.scaled(1.0 / std::sqrt(n2));
}

// e^{i pi n / 2} applied to the odd cat: the imaginary-axis odd cat.
inline CoherentSuperposition rotated_odd_cat(cplx alpha) {
    const cplx i(0.0, 1.0);
    CoherentSuperposition raw(1, {{1.0, {i * alpha}}, {-1.0, {-i * alpha}}});
    const double n2 = raw.self_inner().real();
    if (n2 < 1e-12) throw DegenerateStateError("rotated_odd_cat: degenerate normalization");
    return raw.scaled(1.0 / std::sqrt(n2));
}

// Z/4Z coherent-state basis member |e_j>, photon support on n = j (mod 4).
// Character sum over the 4th roots of unity: coefficient of |i^k alpha> is i^{-jk}.
inline CoherentSuperposition z4_basis_state(cplx alpha, int j) {
    if (j < 0 || j > 3) throw ConfigError("z4_basis_state: j must be in 0..3");
    static const cplx roots[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    std::vector<CoherentTerm> terms;
    for (int k = 0; k < 4; ++k) {
        const cplx chi = roots[(4 - (j * k) % 4) % 4];
        terms.push_back({chi, {roots[k] * alpha}});
    }
    CoherentSuperposition raw(1, std::move(terms));
    const double n2 = raw.self_inner().real();
    if (n2 < 1e-12) throw DegenerateStateError("z4_basis_state: degenerate normalization");
    return raw.scaled(1.0 / std::sqrt(n2));
}

// ---------------------------------------------------------------------------
// Catalog constructors (analytic backend)
// ---------------------------------------------------------------------------

inline CoherentSuperposition build_ecs(int N, cplx alpha, int sign) {
    std::vector<cplx> plus(static_cast<std::size_t>(N), alpha);
    std::vector<cplx> minus(static_cast<std::size_t>(N), -alpha);
    CoherentSuperposition raw(N, {{1.0, plus}, {static_cast<double>(sign), minus}});
    const double n2 = raw.self_inner().real();
    if (n2 < 1e-12) throw DegenerateStateError("build_ecs: degenerate normalization");
    return raw.scaled(1.0 / std::sqrt(n2));
}

// (psi_+^N + e^{i theta} psi_-^N) / sqrt(2); branches are exactly orthogonal.
inline CoherentSuperposition build_hcs(int N, cplx alpha, double theta) {
    const CoherentSuperposition bp = tensor_power(cat_state(alpha, +1), N);
    const CoherentSuperposition bm = tensor_power(cat_state(alpha, -1), N);
    return add(bp.scaled(1.0 / std::sqrt(2.0)), bm.scaled(std::exp(cplx(0.0, theta)) / std::sqrt(2.0)));
}

inline CoherentSuperposition build_omega(int N, cplx alpha) {
    const CoherentSuperposition bp = tensor_power(cat_state(alpha, +1), N);
    const CoherentSuperposition bm = tensor_power(rotated_odd_cat(alpha), N);
    return add(bp.scaled(1.0 / std::sqrt(2.0)), bm.scaled(1.0 / std::sqrt(2.0)));
}

// Branch states of the two-branch families, used as the denominator states of
// the metrological-usefulness ratio.
inline std::vector<CoherentSuperposition> catalog_branches(const StateSpec& s) {
    s.validate();
    switch (s.family) {
        case Family::ECS: {
            std::vector<cplx> plus(static_cast<std::size_t>(s.N), s.alpha);
            std::vector<cplx> minus(static_cast<std::size_t>(s.N), -s.alpha);
            return {CoherentSuperposition::coherent(plus), CoherentSuperposition::coherent(minus)};
        }
        case Family::HCS:
            return {tensor_power(cat_state(s.alpha, +1), s.N), tensor_power(cat_state(s.alpha, -1), s.N)};
        case Family::Omega:
            return {tensor_power(cat_state(s.alpha, +1), s.N), tensor_power(rotated_odd_cat(s.alpha), s.N)};
        default:
            throw ConfigError("catalog_branches: family has no canonical branch decomposition");
    }
}

inline CoherentSuperposition build_concatenated(Family f, int M, int N, cplx alpha, int sign) {
    if (f != Family::CHCS && f != Family::CECS) throw ConfigError("build_concatenated: CHCS or CECS only");
    CoherentSuperposition xp = (f == Family::CHCS) ? build_hcs(N, alpha, 0.0) : build_ecs(N, alpha, +1);
    CoherentSuperposition xm = (f == Family::CHCS) ? build_hcs(N, alpha, kPi) : build_ecs(N, alpha, -1);
    CoherentSuperposition raw = add(tensor_power(xp, M), tensor_power(xm, M).scaled(static_cast<double>(sign)));
    const double n2 = raw.self_inner().real();
    if (n2 < 1e-12) throw DegenerateStateError("build_concatenated: degenerate normalization");
    return raw.scaled(1.0 / std::sqrt(n2));
}

// Coherent-backend catalog entry point. Families without a finite coherent
// expansion (SqueezedHCS, FockBell, the general constructions) are fock-only.
inline CoherentSuperposition build_coherent(const StateSpec& s) {
    s.validate();
    switch (s.family) {
        case Family::Coherent:
            return CoherentSuperposition::coherent(std::vector<cplx>(static_cast<std::size_t>(s.N), s.alpha));
        case Family::EvenCat:
            return tensor_power(cat_state(s.alpha, +1), s.N);
        case Family::OddCat:
            return tensor_power(cat_state(s.alpha, -1), s.N);
        case Family::ECS:
            return build_ecs(s.N, s.alpha, s.sign);
        case Family::HCS:
            return build_hcs(s.N, s.alpha, s.theta);
        case Family::Omega:
            return build_omega(s.N, s.alpha);
        case Family::Z4Basis:
            return tensor_power(z4_basis_state(s.alpha, s.j), s.N);
        case Family::CHCS:
        case Family::CECS:
            return build_concatenated(s.family, s.M, s.N, s.alpha, s.sign);
        default:
            throw ConfigError("build_coherent: family '" + family_name(s.family) + "' is fock-only");
    }
}

// ---------------------------------------------------------------------------
// General two-branch constructions (fock backend)
// ---------------------------------------------------------------------------

struct TwoBranchResult {
    FockState state;
    cplx branch_overlap;  // z = <phi|U|phi> (or the HCS kitten overlap w)
};

// (I + U^{xN}) |phi>^{xN} / sqrt(2 + 2 Re z^N), U isometric on phi.
inline TwoBranchResult build_general_two_branch(const FockState& phi, const PartialIsometrySpec& u, int N) {
    if (phi.num_modes() != 1) throw ConfigError("build_general_two_branch: phi must be single-mode");
    const int d = phi.cutoffs().dims[0];
    const Mat um = u.to_matrix(d);
    const Vec uphi = um * phi.amp();
    if (std::abs(uphi.norm() - 1.0) > 1e-10)
        throw ConfigError("build_general_two_branch: U is not isometric on phi (|U phi| = " +
                          std::to_string(uphi.norm()) + ")");
    const cplx z = phi.amp().dot(uphi);
    const double denom = 2.0 + 2.0 * std::real(std::pow(z, N));
    if (denom < 1e-12) throw DegenerateStateError("build_general_two_branch: degenerate normalization");

    const FockState branch1 = tensor_power(phi, N);
    const FockState branch2 = tensor_power(FockState(phi.cutoffs(), uphi), N);
    Vec amps = (branch1.amp() + branch2.amp()) / std::sqrt(denom);
    return {FockState(branch1.cutoffs(), std::move(amps)), z};
}

// Hierarchical construction: kittens e1/e2 = (I +- V)|phi'> / sqrt(2 +- 2w),
// with w = <phi'|V|phi'> real; state = (e1^{xN} + e^{i theta} e2^{xN}) / sqrt(2).
inline TwoBranchResult build_general_hcs(const FockState& phi_prime, const PartialIsometrySpec& v, int N,
                                         double theta) {
    if (phi_prime.num_modes() != 1) throw ConfigError("build_general_hcs: phi' must be single-mode");
    const int d = phi_prime.cutoffs().dims[0];
    const Mat vm = v.to_matrix(d);
    const Vec vphi = vm * phi_prime.amp();
    if (std::abs(vphi.norm() - 1.0) > 1e-10)
        throw ConfigError("build_general_hcs: V is not isometric on phi'");
    const cplx w = phi_prime.amp().dot(vphi);
    if (std::abs(w.imag()) > 1e-10)
        throw ConfigError("build_general_hcs: <phi'|V|phi'> must be real (got imag " +
                          std::to_string(w.imag()) + ")");
    const double wr = w.real();
    if (2.0 - 2.0 * std::abs(wr) < 1e-12)
        throw DegenerateStateError("build_general_hcs: w = +-1 collapses a kitten");

    const Vec e1 = (phi_prime.amp() + vphi) / std::sqrt(2.0 + 2.0 * wr);
    const Vec e2 = (phi_prime.amp() - vphi) / std::sqrt(2.0 - 2.0 * wr);
    const FockState b1 = tensor_power(FockState(phi_prime.cutoffs(), e1), N);
    const FockState b2 = tensor_power(FockState(phi_prime.cutoffs(), e2), N);
    Vec amps = (b1.amp() + std::exp(cplx(0.0, theta)) * b2.amp()) / std::sqrt(2.0);
    return {FockState(b1.cutoffs(), std::move(amps)), w};
}

// ---------------------------------------------------------------------------
// Group-expansion constructor (alternative route to HCS, used as cross-check)
// ---------------------------------------------------------------------------

// HCS_N^{+-}(alpha) as a sum over the 2^N sign patterns u|alpha>^{xN},
// weighted by the subgroup (even/odd flip count) coefficients
//   e^{N alpha^2 / 2} / 2^{N + 1/2} * (cosh^{-N/2}(alpha^2) +- (-1)^{j-1} sinh^{-N/2}(alpha^2)).
inline CoherentSuperposition build_group_expansion(int N, double alpha, int sign) {
    if (alpha <= 0.0) throw DegenerateStateError("build_group_expansion: alpha must be positive");
    const double x = alpha * alpha;
    const double pref = std::exp(0.5 * N * x) / std::pow(2.0, N + 0.5);
    const double ch = std::pow(std::cosh(x), -0.5 * N);
    const double sh = std::pow(std::sinh(x), -0.5 * N);
    const double w_even = pref * (ch + sign * sh);  // subgroup with even flip count
    const double w_odd = pref * (ch - sign * sh);

    std::vector<CoherentTerm> terms;
    terms.reserve(1u << N);
    for (unsigned mask = 0; mask < (1u << N); ++mask) {
        int flips = 0;
        std::vector<cplx> alphas(static_cast<std::size_t>(N));
        for (int m = 0; m < N; ++m) {
            const bool flip = (mask >> m) & 1u;
            flips += flip ? 1 : 0;
            alphas[static_cast<std::size_t>(m)] = flip ? -alpha : alpha;
        }
        terms.push_back({(flips % 2 == 0) ? w_even : w_odd, std::move(alphas)});
    }
    return CoherentSuperposition(N, std::move(terms));
}

// ---------------------------------------------------------------------------
// Fock-backend catalog
// ---------------------------------------------------------------------------

inline CutoffProfile default_cutoffs(const StateSpec& s, double tail = 1e-10) {
    s.validate();
    const double a = std::abs(s.alpha);
    int d = 2;
    switch (s.family) {
        case Family::FockBell:
            d = std::max(s.fock_n, s.fock_m) + 1;
            break;
        case Family::SqueezedHCS:
            d = cutoff_for(a * std::exp(s.w), s.w);
            break;
        default:
            d = cutoff_for(a);
            break;
    }
    const int total_modes = s.N * (s.family == Family::CHCS || s.family == Family::CECS ? s.M : 1);
    return uniform_cutoffs(total_modes, d, tail);
}

inline FockState build_fock(const StateSpec& s, std::optional<CutoffProfile> cutoffs = std::nullopt) {
    s.validate();
    const CutoffProfile c = cutoffs ? *cutoffs : default_cutoffs(s);
    switch (s.family) {
        case Family::FockBell: {
            const FockState b1 = tensor_power(FockState::basis(CutoffProfile({c.dims[0]}, c.tail_tolerance),
                                                               {s.fock_n}),
                                              s.N);
            const FockState b2 = tensor_power(FockState::basis(CutoffProfile({c.dims[0]}, c.tail_tolerance),
                                                               {s.fock_m}),
                                              s.N);
            Vec amps = (b1.amp() + b2.amp()) / std::sqrt(2.0);
            return FockState(b1.cutoffs(), std::move(amps));
        }
        case Family::SqueezedHCS: {
            if (std::abs(s.alpha.imag()) > 0.0)
                throw ConfigError("SqueezedHCS: alpha must be real");
            StateSpec omega = s;
            omega.family = Family::Omega;
            omega.alpha = s.alpha * std::exp(s.w);
            FockState psi = to_fock(build_coherent(omega), c);
            const Mat sq = squeeze_matrix(s.w, c.dims[0]);
            for (int m = 0; m < psi.num_modes(); ++m) psi = apply_single_mode(psi, sq, m);
            psi.check_tail();
            return psi;
        }
        default:
            return to_fock(build_coherent(s), c);
    }
}

}  // namespace catlab
