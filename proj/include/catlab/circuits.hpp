// circuits.hpp
// Hybrid field/qubit circuit execution and the two HCS_2^+ generation
// protocols: the coherent-photon-loss linear-optics circuit and the
// qubit-mediated Hadamard/CNOT scheme. Qubits are cutoff-2 modes in the same
// tensor engine (|g> = level 0, |e> = level 1).

#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "catlab/catalog.hpp"
#include "catlab/coherent.hpp"
#include "catlab/common.hpp"
#include "catlab/dynamics.hpp"
#include "catlab/fock.hpp"

namespace catlab {

// ---------------------------------------------------------------------------
// Subspace gates on K = span{psi_+, psi_-}
// ---------------------------------------------------------------------------

// P_K M P_K + (I - P_K): the 2x2 target in the orthonormal cat basis,
// extended by the identity on the orthogonal complement.
inline Mat subspace_gate(const Mat& m2, double alpha, int d) {
    if (!(alpha > 0.0)) throw ConfigError("subspace_gate: alpha must be positive (K degenerates)");
    if (m2.rows() != 2 || m2.cols() != 2) throw ConfigError("subspace_gate: target must be 2x2");
    const CutoffProfile c({d});
    Mat basis(d, 2);
    basis.col(0) = to_fock(cat_state(alpha, +1), c).amp();
    basis.col(1) = to_fock(cat_state(alpha, -1), c).amp();
    const Mat pk = basis * basis.adjoint();
    return basis * m2 * basis.adjoint() + Mat::Identity(d, d) - pk;
}

inline Mat subspace_hadamard_matrix(double alpha, int d) {
    Mat h(2, 2);
    h << 1.0, 1.0, 1.0, -1.0;
    return subspace_gate(h / std::sqrt(2.0), alpha, d);
}

inline Mat subspace_sigma_x_matrix(double alpha, int d) {
    Mat sx(2, 2);
    sx << 0.0, 1.0, 1.0, 0.0;
    return subspace_gate(sx, alpha, d);
}

// ---------------------------------------------------------------------------
// Circuit operations
// ---------------------------------------------------------------------------

struct BeamSplitterOp {
    BeamSplitterSpec spec;
};
struct PhaseShiftOp {
    int mode;
    double phi;
};
struct PhotodetectOp {
    int mode;
};
struct TraceOutOp {
    std::vector<int> modes;
};
struct QubitGateOp {
    std::vector<int> targets;  // one or two cutoff-2 modes
    Mat u;                     // 2x2 or 4x4 unitary
};
struct ConditionalParityFlipOp {
    int field_mode;
    int qubit;
};
struct ConditionalFieldPiOp {
    int field_mode;
    int qubit;
};
struct SubspaceHadamardOp {
    int field_mode;
    double alpha;
};
struct SubspaceSigmaXOp {
    int field_mode;
    double alpha;
};

using CircuitOp = std::variant<BeamSplitterOp, PhaseShiftOp, PhotodetectOp, TraceOutOp, QubitGateOp,
                               ConditionalParityFlipOp, ConditionalFieldPiOp, SubspaceHadamardOp,
                               SubspaceSigmaXOp>;

struct CircuitResult {
    FockState state;
    std::optional<DensityOperator> density;  // set when the circuit ends in TraceOut
    double success_weight = 1.0;             // product of photodetection probabilities
};

namespace detail {

inline void check_unitary(const Mat& u, const char* what) {
    const double dev = (u.adjoint() * u - Mat::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
    if (dev > 1e-8) throw NumericError(std::string(what) + ": not unitary (deviation " + std::to_string(dev) + ")");
}

inline void check_qubit_mode(const FockState& psi, int mode) {
    if (mode < 0 || mode >= psi.num_modes()) throw ConfigError("circuit: qubit mode out of range");
    if (psi.cutoffs().dims[mode] != 2) throw ConfigError("circuit: target is not a cutoff-2 mode");
}

// Qubit flip conditioned on the photon parity of the field mode:
// P_even x I + P_odd x sigma_x, on the ordered pair (field, qubit).
inline Mat conditional_parity_flip_matrix(int d_field) {
    Mat m = Mat::Zero(2 * d_field, 2 * d_field);
    for (int n = 0; n < d_field; ++n) {
        if (n % 2 == 0) {
            m(2 * n, 2 * n) = 1.0;
            m(2 * n + 1, 2 * n + 1) = 1.0;
        } else {
            m(2 * n, 2 * n + 1) = 1.0;
            m(2 * n + 1, 2 * n) = 1.0;
        }
    }
    return m;
}

// Field pi rotation conditioned on the qubit being excited:
// I x |g><g| + e^{i pi n} x |e><e|, on the ordered pair (field, qubit).
inline Mat conditional_field_pi_matrix(int d_field) {
    Mat m = Mat::Zero(2 * d_field, 2 * d_field);
    for (int n = 0; n < d_field; ++n) {
        m(2 * n, 2 * n) = 1.0;
        m(2 * n + 1, 2 * n + 1) = (n % 2 == 0) ? 1.0 : -1.0;
    }
    return m;
}

}  // namespace detail

inline CircuitResult run_circuit(const FockState& initial, const std::vector<CircuitOp>& ops) {
    CircuitResult res{initial, std::nullopt, 1.0};
    for (std::size_t k = 0; k < ops.size(); ++k) {
        if (res.density)
            throw ConfigError("run_circuit: TraceOut must be the final operation");
        const CircuitOp& op = ops[k];
        if (const auto* bs = std::get_if<BeamSplitterOp>(&op)) {
            res.state = apply_beam_splitter(res.state, bs->spec);
        } else if (const auto* ps = std::get_if<PhaseShiftOp>(&op)) {
            res.state = apply_single_mode(
                res.state, phase_matrix(ps->phi, res.state.cutoffs().dims[ps->mode]), ps->mode);
        } else if (const auto* pd = std::get_if<PhotodetectOp>(&op)) {
            const FockState lowered = apply_single_mode(
                res.state, annihilation_matrix(res.state.cutoffs().dims[pd->mode]), pd->mode);
            const double p = lowered.amp().squaredNorm();
            if (p < 1e-24)
                throw DegenerateStateError("run_circuit: photodetection on a dark mode (zero amplitude)");
            res.success_weight *= p;
            res.state = lowered.normalized();
        } else if (const auto* to = std::get_if<TraceOutOp>(&op)) {
            std::vector<int> keep;
            for (int m = 0; m < res.state.num_modes(); ++m)
                if (std::find(to->modes.begin(), to->modes.end(), m) == to->modes.end()) keep.push_back(m);
            res.density = reduced_density(res.state, keep);
        } else if (const auto* qg = std::get_if<QubitGateOp>(&op)) {
            detail::check_unitary(qg->u, "qubit gate");
            if (qg->targets.size() == 1) {
                detail::check_qubit_mode(res.state, qg->targets[0]);
                if (qg->u.rows() != 2) throw ConfigError("run_circuit: one target needs a 2x2 gate");
                res.state = apply_single_mode(res.state, qg->u, qg->targets[0]);
            } else if (qg->targets.size() == 2) {
                detail::check_qubit_mode(res.state, qg->targets[0]);
                detail::check_qubit_mode(res.state, qg->targets[1]);
                if (qg->u.rows() != 4) throw ConfigError("run_circuit: two targets need a 4x4 gate");
                res.state = apply_two_mode(res.state, qg->u, qg->targets[0], qg->targets[1]);
            } else {
                throw ConfigError("run_circuit: qubit gates take one or two targets");
            }
        } else if (const auto* cp = std::get_if<ConditionalParityFlipOp>(&op)) {
            detail::check_qubit_mode(res.state, cp->qubit);
            res.state = apply_two_mode(
                res.state, detail::conditional_parity_flip_matrix(res.state.cutoffs().dims[cp->field_mode]),
                cp->field_mode, cp->qubit);
        } else if (const auto* cf = std::get_if<ConditionalFieldPiOp>(&op)) {
            detail::check_qubit_mode(res.state, cf->qubit);
            res.state = apply_two_mode(
                res.state, detail::conditional_field_pi_matrix(res.state.cutoffs().dims[cf->field_mode]),
                cf->field_mode, cf->qubit);
        } else if (const auto* sh = std::get_if<SubspaceHadamardOp>(&op)) {
            res.state = apply_single_mode(
                res.state, subspace_hadamard_matrix(sh->alpha, res.state.cutoffs().dims[sh->field_mode]),
                sh->field_mode);
        } else if (const auto* sx = std::get_if<SubspaceSigmaXOp>(&op)) {
            res.state = apply_single_mode(
                res.state, subspace_sigma_x_matrix(sx->alpha, res.state.cutoffs().dims[sx->field_mode]),
                sx->field_mode);
        }
    }
    return res;
}

// ---------------------------------------------------------------------------
// Coherent-photon-loss protocol
// ---------------------------------------------------------------------------

// The epsilon -> 0 output of the loss circuit, derived from the four-term
// intermediate: detecting the first auxiliary mode produces
//   psi_+ x psi_+ + s e^{-i phi} tanh(alpha^2) psi_- x psi_-   (normalized),
// with s = +1 (first) / -1 (second auxiliary). Equal branch weights are only
// reached as alpha grows.
inline CoherentSuperposition loss_protocol_target(double alpha, double phi, int detect_mode) {
    const double s = (detect_mode == 2) ? 1.0 : -1.0;
    const cplx weight = s * std::exp(cplx(0.0, -phi)) * std::tanh(alpha * alpha);
    const auto bp = tensor_power(cat_state(alpha, +1), 2);
    const auto bm = tensor_power(cat_state(alpha, -1), 2);
    return add(bp, bm.scaled(weight)).normalized();
}

inline CoherentSuperposition equal_weight_phase_family(double alpha, double phi, int detect_mode) {
    const double s = (detect_mode == 2) ? 1.0 : -1.0;
    const cplx weight = s * std::exp(cplx(0.0, -phi));
    const auto bp = tensor_power(cat_state(alpha, +1), 2);
    const auto bm = tensor_power(cat_state(alpha, -1), 2);
    return add(bp.scaled(1.0 / std::sqrt(2.0)), bm.scaled(weight / std::sqrt(2.0)));
}

struct LossProtocolResult {
    DensityOperator output;          // on the two kept field modes
    double fidelity = 0.0;           // against loss_protocol_target
    double fidelity_equal_weight = 0.0;
    double success_weight = 0.0;
    FockState intermediate;          // four-mode state before photodetection
};

// detect_mode uses the circuit's labeling: 2 = first auxiliary, 4 = second.
inline LossProtocolResult coherent_photon_loss_protocol(double alpha, double eps, double phi,
                                                        int detect_mode) {
    if (!(eps > 0.0) || eps >= kPi / 4.0) throw ConfigError("loss protocol: eps must lie in (0, pi/4)");
    if (detect_mode != 2 && detect_mode != 4) throw ConfigError("loss protocol: detect mode is 2 or 4");
    const int d_sig = cutoff_for(alpha);
    const int d_aux = std::max(6, cutoff_for(2.0 * alpha * std::sin(eps)));
    const CutoffProfile c({d_sig, d_aux, d_sig, d_aux});

    const auto minus = cat_state(alpha, -1);
    const auto plus = cat_state(alpha, +1);
    const auto vac = CoherentSuperposition::coherent({0.0});
    const FockState initial = to_fock(tensor(tensor(minus, vac), tensor(plus, vac)), c);

    // Small splitters rotate coherent labels by eps (theta = 2 eps in the
    // half-angle convention); the recombiner is the 50:50 splitter.
    std::vector<CircuitOp> ops = {
        BeamSplitterOp{{0, 1, 2.0 * eps, BsConvention::RealRotation}},
        BeamSplitterOp{{2, 3, 2.0 * eps, BsConvention::RealRotation}},
        PhaseShiftOp{1, phi},
        BeamSplitterOp{{1, 3, kPi / 2.0, BsConvention::RealRotation}},
    };
    CircuitResult pre = run_circuit(initial, ops);

    std::vector<CircuitOp> tail = {
        PhotodetectOp{detect_mode == 2 ? 1 : 3},
        TraceOutOp{{1, 3}},
    };
    CircuitResult post = run_circuit(pre.state, tail);

    LossProtocolResult res{std::move(*post.density), 0.0, 0.0, post.success_weight, std::move(pre.state)};
    const CutoffProfile kept({d_sig, d_sig});
    const Vec target = to_fock(loss_protocol_target(alpha, phi, detect_mode), kept).amp();
    res.fidelity = (target.adjoint() * res.output.matrix * target)(0, 0).real();
    const Vec equal = to_fock(equal_weight_phase_family(alpha, phi, detect_mode), kept).amp();
    res.fidelity_equal_weight = (equal.adjoint() * res.output.matrix * equal)(0, 0).real();
    return res;
}

// The paper-display form of the four-term intermediate, used as the oracle for
// the circuit route.
inline CoherentSuperposition loss_protocol_intermediate_expected(double alpha, double eps, double phi) {
    const cplx eip = std::exp(cplx(0.0, phi));
    const double se = std::sin(eps), ce = std::cos(eps);
    std::vector<CoherentTerm> terms;
    const double np = std::sqrt(2.0 + 2.0 * std::exp(-2.0 * alpha * alpha));
    const double nm = std::sqrt(2.0 - 2.0 * std::exp(-2.0 * alpha * alpha));
    for (double s1 : {1.0, -1.0})
        for (double s3 : {1.0, -1.0}) {
            const cplx coeff = s1 / (nm * np);
            const cplx aux1 = -(s1 * eip + s3) * alpha * se / std::sqrt(2.0);
            const cplx aux3 = (s1 * eip - s3) * alpha * se / std::sqrt(2.0);
            terms.push_back({coeff, {s1 * alpha * ce, aux1, s3 * alpha * ce, aux3}});
        }
    return CoherentSuperposition(4, std::move(terms));
}

// ---------------------------------------------------------------------------
// Qubit-mediated generation (field1, field2, qubit a1, qubit a2)
// ---------------------------------------------------------------------------

inline Mat qubit_cnot_matrix() {
    Mat u = Mat::Zero(4, 4);
    u(0, 0) = u(1, 1) = 1.0;  // control g: identity
    u(2, 3) = u(3, 2) = 1.0;  // control e: flip
    return u;
}

struct QubitProtocolResult {
    FockState final_state;
    double fidelity = 0.0;               // against HCS_2^+ x |gg>
    FockState intermediate;              // after the first qubit-qubit CNOT
    double intermediate_fidelity = 0.0;  // against the four-term display
};

inline std::vector<CircuitOp> qubit_mediated_ops(double alpha, bool skip_second_cnot = false) {
    std::vector<CircuitOp> ops = {
        ConditionalParityFlipOp{0, 2},
        QubitGateOp{{2, 3}, qubit_cnot_matrix()},
        ConditionalFieldPiOp{1, 3},
    };
    if (!skip_second_cnot) ops.push_back(QubitGateOp{{2, 3}, qubit_cnot_matrix()});
    ops.push_back(ConditionalParityFlipOp{0, 2});
    ops.push_back(SubspaceHadamardOp{1, alpha});
    return ops;
}

inline FockState qubit_protocol_initial(double alpha, const CutoffProfile& c) {
    const CutoffProfile field({c.dims[0]});
    FockState f1 = to_fock(cat_state(alpha, +1), field);
    const Mat h = subspace_hadamard_matrix(alpha, c.dims[0]);
    f1 = apply_single_mode(f1, h, 0);
    const FockState qubits = FockState::basis(CutoffProfile({2, 2}), {0, 0});
    return tensor(tensor(f1, f1), qubits);
}

inline QubitProtocolResult qubit_mediated_generation(double alpha) {
    if (!(alpha > 0.0)) throw ConfigError("qubit_mediated_generation: alpha must be positive");
    const int d = cutoff_for(alpha);
    const CutoffProfile c({d, d, 2, 2});
    const FockState initial = qubit_protocol_initial(alpha, c);

    // Run the first three ops to capture the post-CNOT intermediate.
    const std::vector<CircuitOp> head = {
        ConditionalParityFlipOp{0, 2},
        QubitGateOp{{2, 3}, qubit_cnot_matrix()},
    };
    CircuitResult mid = run_circuit(initial, head);

    const std::vector<CircuitOp> tail = {
        ConditionalFieldPiOp{1, 3},
        QubitGateOp{{2, 3}, qubit_cnot_matrix()},
        ConditionalParityFlipOp{0, 2},
        SubspaceHadamardOp{1, alpha},
    };
    CircuitResult fin = run_circuit(mid.state, tail);

    QubitProtocolResult res{fin.state, 0.0, mid.state, 0.0};

    const FockState target = tensor(build_fock(StateSpec{.family = Family::HCS, .N = 2, .alpha = alpha},
                                               CutoffProfile({d, d})),
                                    FockState::basis(CutoffProfile({2, 2}), {0, 0}));
    res.fidelity = fidelity(res.final_state, target);

    // (psi+ (psi+ + psi-) |gg> + psi- (psi+ + psi-) |ee>) / 2
    const CutoffProfile field({d});
    const Vec bp = to_fock(cat_state(alpha, +1), field).amp();
    const Vec bm = to_fock(cat_state(alpha, -1), field).amp();
    const FockState f_pp(field, bp), f_mm(field, bm);
    const Vec mix = (bp + bm) / std::sqrt(2.0);
    const FockState f_mix(field, mix);
    const FockState gg = FockState::basis(CutoffProfile({2, 2}), {0, 0});
    const FockState ee = FockState::basis(CutoffProfile({2, 2}), {1, 1});
    FockState expect = tensor(tensor(f_pp, f_mix), gg);
    Vec amps = (expect.amp() + tensor(tensor(f_mm, f_mix), ee).amp()) / std::sqrt(2.0);
    res.intermediate_fidelity = fidelity(res.intermediate, FockState(expect.cutoffs(), amps));
    return res;
}

// ---------------------------------------------------------------------------
// Direct preparation route
// ---------------------------------------------------------------------------

struct DirectRouteResult {
    FockState bell;          // (psi+ psi- + psi- psi+)/sqrt(2) after the phase shift
    FockState final_state;   // after the subspace sigma_x
    double bell_fidelity = 0.0;
    double fidelity = 0.0;   // against HCS_2^+
};

inline DirectRouteResult direct_preparation_route(double alpha) {
    if (!(alpha > 0.0)) throw ConfigError("direct_preparation_route: alpha must be positive");
    const double big = std::sqrt(2.0) * alpha;
    const int d = cutoff_for(big);
    const CutoffProfile c({d, d});
    const FockState initial = to_fock(tensor(cat_state(big, -1), CoherentSuperposition::coherent({0.0})), c);

    CircuitResult split = run_circuit(initial, {BeamSplitterOp{{0, 1, kPi / 2.0, BsConvention::RealRotation}}});
    CircuitResult belled = run_circuit(split.state, {PhaseShiftOp{1, kPi}});
    CircuitResult fin = run_circuit(belled.state, {SubspaceSigmaXOp{1, alpha}});

    DirectRouteResult res{belled.state, fin.state, 0.0, 0.0};
    const auto bell_expect =
        add(tensor(cat_state(alpha, +1), cat_state(alpha, -1)).scaled(1.0 / std::sqrt(2.0)),
            tensor(cat_state(alpha, -1), cat_state(alpha, +1)).scaled(1.0 / std::sqrt(2.0)));
    res.bell_fidelity = fidelity(res.bell, to_fock(bell_expect, c));
    res.fidelity = fidelity(res.final_state,
                            build_fock(StateSpec{.family = Family::HCS, .N = 2, .alpha = alpha}, c));
    return res;
}

// Photon subtraction on the second mode of the pre-phase antisymmetric Bell
// state |alpha,-alpha> - |-alpha,alpha>: lands exactly on the tanh-weighted
// "-" family psi+ psi+ - tanh(alpha^2) psi- psi- (the equal-weight HCS_2^- is
// its large-alpha limit).
struct AnnihilationVariantResult {
    FockState final_state;
    double fidelity_oracle = 0.0;     // against (a1 - a3) applied to psi- x psi+
    double fidelity_hcs_minus = 0.0;  // against the equal-weight HCS_2^-
};

inline AnnihilationVariantResult direct_route_annihilation_variant(double alpha) {
    const double big = std::sqrt(2.0) * alpha;
    const int d = cutoff_for(big);
    const CutoffProfile c({d, d});
    const FockState initial = to_fock(tensor(cat_state(big, -1), CoherentSuperposition::coherent({0.0})), c);

    CircuitResult run = run_circuit(initial, {BeamSplitterOp{{0, 1, kPi / 2.0, BsConvention::RealRotation}},
                                              PhotodetectOp{1}});
    AnnihilationVariantResult res{run.state, 0.0, 0.0};

    // Oracle: apply (a1 - a3) directly to psi_- x psi_+.
    const FockState seed = to_fock(tensor(cat_state(alpha, -1), cat_state(alpha, +1)), c);
    const Mat a = annihilation_matrix(d);
    Vec oracle = apply_single_mode(seed, a, 0).amp() - apply_single_mode(seed, a, 1).amp();
    const FockState oracle_state = FockState(c, oracle).normalized();
    res.fidelity_oracle = fidelity(run.state, oracle_state);
    res.fidelity_hcs_minus = fidelity(
        run.state, build_fock(StateSpec{.family = Family::HCS, .N = 2, .alpha = alpha, .theta = kPi}, c));
    return res;
}

}  // namespace catlab
