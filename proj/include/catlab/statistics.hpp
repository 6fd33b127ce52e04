// statistics.hpp
// Photon statistics, squeezing diagnostics, and the functional representations
// (Husimi Q, Wigner, Bargmann), each with a closed form and a brute-force
// route so they can cross-check each other.

#pragma once

#include <cmath>
#include <complex>
#include <map>
#include <vector>

#include "catlab/catalog.hpp"
#include "catlab/coherent.hpp"
#include "catlab/common.hpp"
#include "catlab/fock.hpp"
#include "catlab/grid.hpp"

namespace catlab {

// ---------------------------------------------------------------------------
// Photon number distribution
// ---------------------------------------------------------------------------

struct PhotonDistribution {
    std::vector<int> dims;        // per-mode range [0, dims_m)
    std::vector<double> probs;    // row-major over the multi-index
    double total_mass = 0.0;      // over the full truncated basis

    double at(const std::vector<int>& n) const {
        long idx = 0;
        for (std::size_t m = 0; m < dims.size(); ++m) {
            if (n[m] < 0 || n[m] >= dims[m]) throw ConfigError("PhotonDistribution: index out of range");
            idx = idx * dims[m] + n[m];
        }
        return probs[static_cast<std::size_t>(idx)];
    }
};

// P(n_vec) = |<n_vec|psi>|^2, reported on [0, max_n]^N. max_n must sit inside
// the state's validated cutoffs.
inline PhotonDistribution photon_number_distribution(const FockState& psi, int max_n) {
    const CutoffProfile& c = psi.cutoffs();
    for (int d : c.dims)
        if (max_n >= d) throw ConfigError("photon_number_distribution: max_n exceeds cutoff");
    PhotonDistribution out;
    out.dims.assign(static_cast<std::size_t>(c.num_modes()), max_n + 1);
    out.probs.assign(static_cast<std::size_t>(std::pow(max_n + 1.0, c.num_modes())), 0.0);
    for (long i = 0; i < psi.dim(); ++i) {
        const double p = std::norm(psi.amp()[i]);
        out.total_mass += p;
        long rem = i, idx = 0;
        bool inside = true;
        for (int m = 0; m < c.num_modes(); ++m) {
            const long level = rem / c.stride(m);
            rem %= c.stride(m);
            if (level > max_n) {
                inside = false;
                break;
            }
            idx = idx * (max_n + 1) + level;
        }
        if (inside) out.probs[static_cast<std::size_t>(idx)] += p;
    }
    return out;
}

inline PhotonDistribution photon_number_distribution(const CoherentSuperposition& psi, int max_n,
                                                     double tail = 1e-10) {
    return photon_number_distribution(to_fock_auto(psi, tail), max_n);
}

// Total-photon-parity weights (|P_e psi|^2, |P_o psi|^2).
inline std::pair<double, double> parity_weights(const FockState& psi) {
    const CutoffProfile& c = psi.cutoffs();
    double even = 0.0, odd = 0.0;
    for (long i = 0; i < psi.dim(); ++i) {
        long rem = i, total = 0;
        for (int m = 0; m < c.num_modes(); ++m) {
            total += rem / c.stride(m);
            rem %= c.stride(m);
        }
        (total % 2 == 0 ? even : odd) += std::norm(psi.amp()[i]);
    }
    return {even, odd};
}

// ---------------------------------------------------------------------------
// Quadrature variance and Mandel Q
// ---------------------------------------------------------------------------

inline double quadrature_variance(const CoherentSuperposition& psi, int mode, double theta) {
    const cplx e = std::exp(cplx(0.0, theta));
    const cplx a1 = moment(psi, mode, 0, 1);
    const cplx a2 = moment(psi, mode, 0, 2);
    const double n = moment(psi, mode, 1, 1).real();
    const cplx mean_x = (a1 * std::conj(e) + std::conj(a1) * e) / std::sqrt(2.0);
    const double x2 = 0.5 * (2.0 * (a2 * std::conj(e) * std::conj(e)).real() + 2.0 * n + 1.0);
    return x2 - mean_x.real() * mean_x.real();
}

inline double quadrature_variance(const FockState& psi, int mode, double theta) {
    return variance_local(psi, quadrature_matrix(theta, psi.cutoffs().dims[mode]), mode);
}

// Var x^{(theta)} in HCS_N^{+-}(alpha): 1/2 + |alpha|^2 (coth 2|alpha|^2 + cos(2 Arg alpha - 2 theta)).
inline double hcs_quadrature_variance_closed_form(cplx alpha, double theta) {
    const double x = std::norm(alpha);
    if (x <= 0.0) throw ConfigError("hcs_quadrature_variance_closed_form: alpha must be nonzero");
    return 0.5 + x * (1.0 / std::tanh(2.0 * x) + std::cos(2.0 * std::arg(alpha) - 2.0 * theta));
}

inline double mandel_q_from_moments(double n_mean, double n2_mean) {
    if (n_mean < 1e-12) throw DegenerateStateError("mandel_q: undefined at zero mean photon number");
    return (n2_mean - n_mean * n_mean - n_mean) / n_mean;
}

inline double mandel_q(const CoherentSuperposition& psi, int mode) {
    const double n = moment(psi, mode, 1, 1).real();
    const double n2 = moment(psi, mode, 2, 2).real() + n;  // <n^2> = <a†² a²> + <n>
    return mandel_q_from_moments(n, n2);
}

inline double mandel_q(const FockState& psi, int mode) {
    const Mat nm = number_matrix(psi.cutoffs().dims[mode]);
    const double n = expectation_local(psi, nm, mode).real();
    const double n2 = expectation_local(psi, Mat(nm * nm), mode).real();
    return mandel_q_from_moments(n, n2);
}

// Per-mode Mandel Q of HCS_N^{+-}(alpha): -2|alpha|^2 / sinh(4|alpha|^2).
// Strictly increasing from -1/2 toward 0 on |alpha| > 0.
inline double hcs_mandel_closed_form(double alpha_abs) {
    const double x = alpha_abs * alpha_abs;
    if (x < 1e-12) throw DegenerateStateError("hcs_mandel_closed_form: undefined at alpha = 0");
    return -2.0 * x / std::sinh(4.0 * x);
}

// ---------------------------------------------------------------------------
// Husimi Q function
// ---------------------------------------------------------------------------

// Q(beta_vec) = (1/pi^N) |<beta_vec|psi>|^2.
inline double q_value(const CoherentSuperposition& psi, const std::vector<cplx>& beta) {
    if (static_cast<int>(beta.size()) != psi.num_modes()) throw ConfigError("q_value: arity mismatch");
    cplx amp = 0.0;
    for (const auto& t : psi.terms()) amp += t.coeff * overlap_kernel(beta, t.alphas);
    return std::norm(amp) / std::pow(kPi, psi.num_modes());
}

// Closed form for Q of HCS_2^+(alpha) (unit-integral 1/pi^2 convention):
//   (1/2)(Q+ Q+ + Q- Q-) + e^{-(|b1|^2+|b2|^2)} [sinh(2Re(b1 a))sinh(2Re(b2 a))
//        - sin(2Im(b1 a))sin(2Im(b2 a))] / (2 pi^2 sinh(2|a|^2))
inline double hcs2_q_closed_form(cplx alpha, cplx beta1, cplx beta2) {
    const double x = std::norm(alpha);
    auto cat_q = [&](cplx b, int sign) {
        const double n2 = 2.0 + 2.0 * sign * std::exp(-2.0 * x);
        const cplx num = std::exp(std::conj(b) * alpha) +
                         static_cast<double>(sign) * std::exp(-std::conj(b) * alpha);
        return std::exp(-std::norm(b) - x) * std::norm(num) / (kPi * n2);
    };
    const double direct = 0.5 * (cat_q(beta1, +1) * cat_q(beta2, +1) + cat_q(beta1, -1) * cat_q(beta2, -1));
    const cplx u1 = std::conj(beta1) * alpha, u2 = std::conj(beta2) * alpha;
    const double cross = std::exp(-(std::norm(beta1) + std::norm(beta2))) *
                         (std::sinh(2.0 * u1.real()) * std::sinh(2.0 * u2.real()) -
                          std::sin(2.0 * u1.imag()) * std::sin(2.0 * u2.imag())) /
                         (2.0 * kPi * kPi * std::sinh(2.0 * x));
    return direct + cross;
}

// ---------------------------------------------------------------------------
// Wigner function
// ---------------------------------------------------------------------------

// <b| D(g) P D(-g) |a> for one mode: D(g) P D(-g)|a> = e^{conj(g)a - g conj(a)} |2g - a>.
inline cplx displaced_parity_kernel(cplx bra, cplx ket, cplx gamma) {
    const cplx phase = std::conj(gamma) * ket - gamma * std::conj(ket);
    const cplx reflected = 2.0 * gamma - ket;
    const cplx ov = std::exp(-0.5 * std::norm(bra) - 0.5 * std::norm(reflected) + std::conj(bra) * reflected);
    return std::exp(phase) * ov;
}

// W(gamma_vec) = (2/pi)^N tr(rho prod_j D(g_j) P_j D(-g_j)); unit integral.
inline double wigner_value(const CoherentDensity& rho, const std::vector<cplx>& gamma) {
    if (static_cast<int>(gamma.size()) != rho.num_modes()) throw ConfigError("wigner_value: arity mismatch");
    cplx acc = 0.0;
    for (const auto& d : rho.dyads()) {
        cplx w = d.coeff;
        for (int j = 0; j < rho.num_modes(); ++j) w *= displaced_parity_kernel(d.bra[j], d.ket[j], gamma[j]);
        acc += w;
    }
    return acc.real() * std::pow(2.0 / kPi, rho.num_modes());
}

inline double wigner_value(const CoherentSuperposition& psi, const std::vector<cplx>& gamma) {
    return wigner_value(CoherentDensity::from_pure(psi), gamma);
}

// Brute-force displaced-parity expectation in the fock backend.
inline double wigner_value_fock(const DensityOperator& rho, const std::vector<cplx>& gamma) {
    if (static_cast<int>(gamma.size()) != rho.cutoffs.num_modes())
        throw ConfigError("wigner_value_fock: arity mismatch");
    Mat op = Mat::Identity(1, 1);
    for (int m = 0; m < rho.cutoffs.num_modes(); ++m) {
        const int d = rho.cutoffs.dims[m];
        const Mat dm = displacement_matrix(gamma[m], d);
        op = kron(op, Mat(dm * parity_matrix(d) * dm.adjoint()));
    }
    return (rho.matrix * op).trace().real() * std::pow(2.0 / kPi, rho.cutoffs.num_modes());
}

// ---------------------------------------------------------------------------
// Bargmann representation
// ---------------------------------------------------------------------------

// f(z_vec) = sum_n c_n prod_j z_j^{n_j} / sqrt(n_j!), from the truncated
// amplitudes. The dropped tail is bounded and rejected above `tail_tol`.
inline cplx bargmann_series(const FockState& psi, const std::vector<cplx>& z, double tail_tol = 1e-9) {
    const CutoffProfile& c = psi.cutoffs();
    if (static_cast<int>(z.size()) != c.num_modes()) throw ConfigError("bargmann_series: arity mismatch");
    // Per-mode monomial tables z^n / sqrt(n!).
    std::vector<std::vector<cplx>> mono(static_cast<std::size_t>(c.num_modes()));
    for (int m = 0; m < c.num_modes(); ++m) {
        auto& t = mono[static_cast<std::size_t>(m)];
        t.resize(static_cast<std::size_t>(c.dims[m]));
        t[0] = 1.0;
        for (int n = 1; n < c.dims[m]; ++n)
            t[static_cast<std::size_t>(n)] = t[static_cast<std::size_t>(n - 1)] * z[static_cast<std::size_t>(m)] /
                                             std::sqrt(static_cast<double>(n));
    }
    cplx acc = 0.0;
    double tail_bound = 0.0;
    for (long i = 0; i < psi.dim(); ++i) {
        cplx w = psi.amp()[i];
        if (w == cplx(0.0, 0.0)) continue;
        long rem = i;
        bool top = false;
        for (int m = 0; m < c.num_modes(); ++m) {
            const long level = rem / c.stride(m);
            rem %= c.stride(m);
            w *= mono[static_cast<std::size_t>(m)][static_cast<std::size_t>(level)];
            if (level == c.dims[m] - 1) top = true;
        }
        acc += w;
        if (top) tail_bound += std::abs(w);
    }
    // The top-level contribution bounds the neglected remainder: the monomial
    // weights z^n/sqrt(n!) decay once n > |z|^2 and the cutoffs sit far beyond.
    if (tail_bound > tail_tol)
        throw TruncationError("bargmann_series: series tail above tolerance at |z| too large for cutoff");
    return acc;
}

// Exact evaluation for finite coherent superpositions:
// f_{|a>}(z) = e^{-|a|^2/2} e^{a z} per mode.
inline cplx bargmann_analytic(const CoherentSuperposition& psi, const std::vector<cplx>& z) {
    if (static_cast<int>(z.size()) != psi.num_modes()) throw ConfigError("bargmann_analytic: arity mismatch");
    cplx acc = 0.0;
    for (const auto& t : psi.terms()) {
        cplx expo = 0.0;
        for (int j = 0; j < psi.num_modes(); ++j)
            expo += t.alphas[j] * z[j] - 0.5 * std::norm(t.alphas[j]);
        acc += t.coeff * std::exp(expo);
    }
    return acc;
}

// Closed form for HCS_2^{+-}:
//   sqrt(2) e^{-|a|^2} [cosh(a(z + s w)) - e^{-2|a|^2} cosh(a(z - s w))] / (1 - e^{-4|a|^2})
// with s the branch sign. The two signs are related by w -> -w, i.e. by the
// single-mode parity that swaps HCS_2^+ and HCS_2^-.
inline cplx hcs2_bargmann_closed_form(cplx alpha, int sign, cplx z, cplx w) {
    const double x = std::norm(alpha);
    const cplx ws = static_cast<double>(sign) * w;
    const cplx num = std::cosh(alpha * (z + ws)) - std::exp(-2.0 * x) * std::cosh(alpha * (z - ws));
    return std::sqrt(2.0) * std::exp(-x) * num / (1.0 - std::exp(-4.0 * x));
}

// ---------------------------------------------------------------------------
// Pauli compressions on the cat subspace
// ---------------------------------------------------------------------------

struct PauliCompressions {
    Mat x_compressed;        // P_K x^{(Arg a)} P_K in the {psi+, psi-} basis
    Mat y_compressed;        // P_K x^{(pi/2 + Arg a)} P_K
    Mat z_two_photon;        // P_K (e^{i pi n} a^2 + a†^2 e^{-i pi n}) P_K
    Mat z_cos;               // P_K cos(pi n) P_K
    cplx x_constant;         // measured constants: compressed = constant * sigma
    cplx y_constant;
    cplx z_constant;
    Mat omega_two_photon;    // (a^2 + a†^2)/(2 a^2) compressed in {psi+, e^{i pi n/2} psi-}
};

inline PauliCompressions pauli_compressions(cplx alpha, int dim = 0) {
    if (std::norm(alpha) < 1e-12) throw ConfigError("pauli_compressions: alpha must be nonzero");
    const int d = dim > 0 ? dim : cutoff_for(std::abs(alpha));
    const CutoffProfile c({d});
    const Vec bp = to_fock(cat_state(alpha, +1), c).amp();
    const Vec bm = to_fock(cat_state(alpha, -1), c).amp();
    Mat basis(d, 2);
    basis.col(0) = bp;
    basis.col(1) = bm;

    const Mat a = annihilation_matrix(d);
    const Mat a2 = a * a;
    const Mat par = parity_matrix(d);
    const double arg = std::arg(alpha);

    PauliCompressions out;
    out.x_compressed = basis.adjoint() * quadrature_matrix(arg, d) * basis;
    out.y_compressed = basis.adjoint() * quadrature_matrix(kPi / 2.0 + arg, d) * basis;
    out.z_two_photon = basis.adjoint() * (par * a2 + a2.adjoint() * par) * basis;
    out.z_cos = basis.adjoint() * par * basis;  // cos(pi n) = (-1)^n
    out.x_constant = out.x_compressed(1, 0);
    out.y_constant = out.y_compressed(1, 0) / cplx(0.0, 1.0);
    out.z_constant = out.z_two_photon(0, 0);

    Mat omega_basis(d, 2);
    omega_basis.col(0) = bp;
    omega_basis.col(1) = to_fock(rotated_odd_cat(alpha), c).amp();
    out.omega_two_photon =
        omega_basis.adjoint() * ((a2 + a2.adjoint()) / (2.0 * alpha * alpha)) * omega_basis;
    return out;
}

// ---------------------------------------------------------------------------
// Grid evaluators
// ---------------------------------------------------------------------------

// Axes come in (re, im) pairs per mode, in mode order.
inline std::vector<cplx> grid_point_to_complex(const std::vector<double>& coords) {
    if (coords.size() % 2 != 0) throw ConfigError("grid_point_to_complex: need re/im axis pairs");
    std::vector<cplx> z(coords.size() / 2);
    for (std::size_t k = 0; k < z.size(); ++k) z[k] = cplx(coords[2 * k], coords[2 * k + 1]);
    return z;
}

inline PhaseSpaceGrid eval_q_grid(const CoherentSuperposition& psi, std::vector<GridAxis> axes) {
    if (static_cast<int>(axes.size()) != 2 * psi.num_modes())
        throw ConfigError("eval_q_grid: need 2N axes");
    PhaseSpaceGrid g{std::move(axes), {"Q"}, {}};
    g.values.resize(static_cast<std::size_t>(g.num_points()));
    for (long p = 0; p < g.num_points(); ++p)
        g.values[static_cast<std::size_t>(p)] = q_value(psi, grid_point_to_complex(g.coords(p)));
    return g;
}

inline PhaseSpaceGrid eval_wigner_grid(const CoherentDensity& rho, std::vector<GridAxis> axes) {
    if (static_cast<int>(axes.size()) != 2 * rho.num_modes())
        throw ConfigError("eval_wigner_grid: need 2N axes");
    PhaseSpaceGrid g{std::move(axes), {"W"}, {}};
    g.values.resize(static_cast<std::size_t>(g.num_points()));
    for (long p = 0; p < g.num_points(); ++p)
        g.values[static_cast<std::size_t>(p)] = wigner_value(rho, grid_point_to_complex(g.coords(p)));
    return g;
}

inline PhaseSpaceGrid eval_bargmann_grid(const CoherentSuperposition& psi, std::vector<GridAxis> axes) {
    if (static_cast<int>(axes.size()) != 2 * psi.num_modes())
        throw ConfigError("eval_bargmann_grid: need 2N axes");
    PhaseSpaceGrid g{std::move(axes), {"re", "im"}, {}};
    g.values.resize(2 * static_cast<std::size_t>(g.num_points()));
    for (long p = 0; p < g.num_points(); ++p) {
        const cplx v = bargmann_analytic(psi, grid_point_to_complex(g.coords(p)));
        g.values[2 * static_cast<std::size_t>(p)] = v.real();
        g.values[2 * static_cast<std::size_t>(p) + 1] = v.imag();
    }
    return g;
}

}  // namespace catlab
