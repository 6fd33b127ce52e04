// dynamics.hpp
// Beam-splitter transformations, entanglement entropy and its fluctuations,
// and zero-temperature amplitude damping with dual analytic/numeric backends.
//
// Damping convention: each mode evolves under the generator
//     d rho / dt = 2 Gamma (a rho a† - {a†a, rho}/2),
// so coherent labels decay as e^{-Gamma t} and number populations as
// e^{-2 Gamma t}. The closed-form Fock-pair solution below is the anchor for
// this convention and both backends reproduce it.

#pragma once

#include <cmath>
#include <vector>

#include "catlab/catalog.hpp"
#include "catlab/coherent.hpp"
#include "catlab/common.hpp"
#include "catlab/fock.hpp"

namespace catlab {

// ---------------------------------------------------------------------------
// Beam splitters
// ---------------------------------------------------------------------------

enum class BsConvention {
    SymmetricPhase,  // B(theta) = exp(i theta/2 (a_i† a_j + a_j† a_i))
    RealRotation,    // U_ij(theta) = exp(theta/2 (a_i† a_j - a_j† a_i))
};

struct BeamSplitterSpec {
    int mode_i = 0;
    int mode_j = 1;
    double theta = 0.0;
    BsConvention convention = BsConvention::SymmetricPhase;
};

// Heisenberg action on coherent labels (a_i, a_j).
inline std::pair<cplx, cplx> beam_splitter_label_map(const BeamSplitterSpec& s, cplx a, cplx b) {
    const double t = s.theta / 2.0;
    if (s.convention == BsConvention::SymmetricPhase) {
        const cplx is(0.0, std::sin(t));
        return {std::cos(t) * a + is * b, is * a + std::cos(t) * b};
    }
    return {std::cos(t) * a + std::sin(t) * b, -std::sin(t) * a + std::cos(t) * b};
}

inline CoherentSuperposition apply_beam_splitter(const CoherentSuperposition& psi,
                                                 const BeamSplitterSpec& s) {
    if (s.mode_i == s.mode_j) throw ConfigError("apply_beam_splitter: modes must differ");
    if (s.mode_i < 0 || s.mode_j < 0 || s.mode_i >= psi.num_modes() || s.mode_j >= psi.num_modes())
        throw ConfigError("apply_beam_splitter: mode out of range");
    std::vector<CoherentTerm> terms = psi.terms();
    for (auto& t : terms) {
        const auto [na, nb] = beam_splitter_label_map(s, t.alphas[s.mode_i], t.alphas[s.mode_j]);
        t.alphas[s.mode_i] = na;
        t.alphas[s.mode_j] = nb;
    }
    return CoherentSuperposition(psi.num_modes(), std::move(terms));
}

inline FockState apply_beam_splitter(const FockState& psi, const BeamSplitterSpec& s) {
    if (s.mode_i == s.mode_j) throw ConfigError("apply_beam_splitter: modes must differ");
    const Mat u = two_mode_mixer_matrix(s.theta, psi.cutoffs().dims[s.mode_i],
                                        psi.cutoffs().dims[s.mode_j],
                                        s.convention == BsConvention::SymmetricPhase);
    return apply_two_mode(psi, u, s.mode_i, s.mode_j);
}

// ---------------------------------------------------------------------------
// Entanglement entropy and its fluctuation
// ---------------------------------------------------------------------------

inline double entanglement_entropy(const FockState& psi, const std::vector<int>& keep) {
    return von_neumann_entropy(reduced_density(psi, keep));
}

inline double entanglement_entropy(const CoherentSuperposition& psi, const std::vector<int>& keep) {
    return entropy_from_gram(reduce(CoherentDensity::from_pure(psi), keep));
}

// Root variance of the entanglement Hamiltonian H_E = -log2(rho_A) on the
// clipped support.
inline double entanglement_fluctuation_from_spectrum(const RVec& probs, double clip = 1e-12) {
    double mean = 0.0, second = 0.0, mass = 0.0;
    for (Eigen::Index i = 0; i < probs.size(); ++i) {
        const double p = probs[i];
        if (p <= clip) continue;
        const double l = -std::log2(p);
        mean += p * l;
        second += p * l * l;
        mass += p;
    }
    if (mass <= 0.0) throw NumericError("entanglement_fluctuation: empty support");
    const double var = second - mean * mean;
    return std::sqrt(std::max(0.0, var));
}

inline double entanglement_fluctuation(const FockState& psi, const std::vector<int>& keep) {
    return entanglement_fluctuation_from_spectrum(density_spectrum(reduced_density(psi, keep)));
}

inline double entanglement_fluctuation(const CoherentSuperposition& psi, const std::vector<int>& keep) {
    return entanglement_fluctuation_from_spectrum(
        gram_spectrum(reduce(CoherentDensity::from_pure(psi), keep)));
}

// ---------------------------------------------------------------------------
// Amplitude damping: analytic dyad map
// ---------------------------------------------------------------------------

// |a><b| -> w(t) |a e^{-Gamma t}><b e^{-Gamma t}| per mode, with the weight
// fixed by trace preservation:
//   w(t) = exp[(conj(b) a - (|a|^2 + |b|^2)/2)(1 - e^{-2 Gamma t})].
inline CoherentDensity amplitude_damp(const CoherentDensity& rho, double gamma, double t) {
    if (gamma < 0.0 || t < 0.0) throw ConfigError("amplitude_damp: need Gamma, t >= 0");
    const double decay = std::exp(-gamma * t);
    const double eaten = 1.0 - decay * decay;
    std::vector<CoherentDyad> out = rho.dyads();
    for (auto& d : out) {
        cplx expo = 0.0;
        for (int j = 0; j < rho.num_modes(); ++j) {
            expo += (std::conj(d.bra[j]) * d.ket[j] -
                     0.5 * (std::norm(d.ket[j]) + std::norm(d.bra[j]))) *
                    eaten;
            d.ket[j] *= decay;
            d.bra[j] *= decay;
        }
        d.coeff *= std::exp(expo);
    }
    return CoherentDensity(rho.num_modes(), std::move(out));
}

// ---------------------------------------------------------------------------
// Amplitude damping: numeric integrator
// ---------------------------------------------------------------------------

namespace detail {

// L[rho] = sum_j 2 Gamma (a_j rho a_j† - {n_j, rho}/2), computed with index
// shifts; no operator matrices are materialized. Column-major pointer loops.
inline Mat damping_rhs(const Mat& rho, const CutoffProfile& c, double gamma,
                       const std::vector<std::vector<int>>& levels) {
    const long dim = rho.rows();
    Mat out = Mat::Zero(dim, dim);
    const cplx* rp = rho.data();
    cplx* op = out.data();
    for (int m = 0; m < c.num_modes(); ++m) {
        const long s = c.stride(m);
        const int d = c.dims[m];
        const auto& lev = levels[static_cast<std::size_t>(m)];
        std::vector<double> sq(static_cast<std::size_t>(d));
        for (int n = 0; n < d; ++n) sq[static_cast<std::size_t>(n)] = std::sqrt(n + 1.0);
        for (long col = 0; col < dim; ++col) {
            const int nc = lev[static_cast<std::size_t>(col)];
            const bool col_shift = nc + 1 < d;
            const cplx* rcol = rp + col * dim;
            const cplx* rcol_s = col_shift ? rp + (col + s) * dim + s : nullptr;
            cplx* ocol = op + col * dim;
            const double gc = gamma * nc;
            const double hop = col_shift ? 2.0 * gamma * sq[static_cast<std::size_t>(nc)] : 0.0;
            for (long r = 0; r < dim; ++r) {
                const int nr = lev[static_cast<std::size_t>(r)];
                cplx acc = -(gamma * nr + gc) * rcol[r];
                if (col_shift && nr + 1 < d) acc += hop * sq[static_cast<std::size_t>(nr)] * rcol_s[r];
                ocol[r] += acc;
            }
        }
    }
    return out;
}

}  // namespace detail

// Classical RK4 with a per-step trace/hermiticity drift monitor; the step is
// halved on violation. Overall trace drift beyond 1e-6 is an error.
inline DensityOperator amplitude_damp_numeric(const DensityOperator& rho0, double gamma, double t,
                                              double step_hint = 0.04) {
    if (gamma < 0.0 || t < 0.0) throw ConfigError("amplitude_damp_numeric: need Gamma, t >= 0");
    const CutoffProfile& c = rho0.cutoffs;
    std::vector<std::vector<int>> levels(static_cast<std::size_t>(c.num_modes()));
    for (int m = 0; m < c.num_modes(); ++m) {
        auto& lev = levels[static_cast<std::size_t>(m)];
        lev.resize(static_cast<std::size_t>(c.dim()));
        for (long i = 0; i < c.dim(); ++i)
            lev[static_cast<std::size_t>(i)] = static_cast<int>((i / c.stride(m)) % c.dims[m]);
    }
    const double trace0 = rho0.trace();
    Mat rho = rho0.matrix;
    double remaining = t;
    double h = std::min(step_hint, t > 0.0 ? t : step_hint);
    int halvings = 0;
    while (remaining > 1e-15) {
        const double step = std::min(h, remaining);
        const Mat k1 = detail::damping_rhs(rho, c, gamma, levels);
        const Mat k2 = detail::damping_rhs(rho + 0.5 * step * k1, c, gamma, levels);
        const Mat k3 = detail::damping_rhs(rho + 0.5 * step * k2, c, gamma, levels);
        const Mat k4 = detail::damping_rhs(rho + step * k3, c, gamma, levels);
        Mat next = rho + (step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        const double drift = std::abs(next.trace().real() - rho.trace().real());
        const double herm = (next - next.adjoint()).cwiseAbs().maxCoeff();
        if (drift > 1e-9 || herm > 1e-9) {
            h *= 0.5;
            if (++halvings > 40) throw NumericError("amplitude_damp_numeric: step control failed");
            continue;
        }
        rho = std::move(next);
        remaining -= step;
    }
    DensityOperator out{c, std::move(rho)};
    const double total_drift = std::abs(out.trace() - trace0);
    if (total_drift > 1e-6)
        throw NumericError("amplitude_damp_numeric: trace drift " + std::to_string(total_drift));
    return out;
}

// ---------------------------------------------------------------------------
// Damping runs and entropy trajectories
// ---------------------------------------------------------------------------

enum class DampingBackend { Analytic, Numeric };

struct DampingRun {
    double gamma = 0.1;
    std::vector<double> times;
    DampingBackend backend = DampingBackend::Analytic;
};

struct TrajectoryPoint {
    double t = 0.0;
    double entropy = 0.0;      // reduced-state von Neumann entropy (bits)
    double fluctuation = 0.0;  // Delta S_E
    double trace = 0.0;
    double purity = 0.0;
};

inline std::vector<TrajectoryPoint> damping_entropy_trajectory(const CoherentSuperposition& psi0,
                                                               const DampingRun& run,
                                                               const std::vector<int>& keep) {
    const CoherentDensity rho0 = CoherentDensity::from_pure(psi0);
    std::vector<TrajectoryPoint> out;
    out.reserve(run.times.size());
    for (double t : run.times) {
        if (t < 0.0) throw ConfigError("damping_entropy_trajectory: negative time");
        TrajectoryPoint p;
        p.t = t;
        if (run.backend == DampingBackend::Analytic) {
            const CoherentDensity rho = amplitude_damp(rho0, run.gamma, t);
            p.trace = rho.trace().real();
            const RVec spec_red = gram_spectrum(reduce(rho, keep));
            p.entropy = binary_entropy_bits(spec_red);
            p.fluctuation = entanglement_fluctuation_from_spectrum(spec_red);
            const RVec spec_full = gram_spectrum(rho);
            p.purity = spec_full.squaredNorm();
        } else {
            const CutoffProfile c = auto_cutoffs(psi0);
            const DensityOperator rho =
                amplitude_damp_numeric(dyads_to_fock(rho0, c), run.gamma, t);
            p.trace = rho.trace();
            const RVec spec_red = density_spectrum(partial_trace(rho, keep));
            p.entropy = binary_entropy_bits(spec_red);
            p.fluctuation = entanglement_fluctuation_from_spectrum(spec_red);
            p.purity = (rho.matrix * rho.matrix).trace().real();
        }
        if (std::abs(p.trace - 1.0) > 1e-6)
            throw NumericError("damping_entropy_trajectory: trace deviates by more than 1e-6");
        out.push_back(p);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Fock-pair damping closed form
// ---------------------------------------------------------------------------

// Exact evolution of (|00> + |11>)/sqrt(2) under the damping generator, with
// eta = e^{-2 Gamma t}:
//   1/2 [ (1 + (1-eta)^2)|00><00| + eta (|00><11| + |11><00|)
//         + eta(1-eta)(|01><01| + |10><10|) + eta^2 |11><11| ].
inline DensityOperator fock_bell_damped_closed_form(double gamma, double t) {
    const double eta = std::exp(-2.0 * gamma * t);
    const CutoffProfile c({2, 2});
    Mat rho = Mat::Zero(4, 4);
    rho(0, 0) = 0.5 * (1.0 + (1.0 - eta) * (1.0 - eta));
    rho(0, 3) = rho(3, 0) = 0.5 * eta;
    rho(1, 1) = rho(2, 2) = 0.5 * eta * (1.0 - eta);
    rho(3, 3) = 0.5 * eta * eta;
    return {c, std::move(rho)};
}

}  // namespace catlab
