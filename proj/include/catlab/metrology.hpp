// metrology.hpp
// Quantum Fisher information and variance maximization over 1-local
// observable algebras, including the relative-usefulness ratio N^rF of a
// superposition against its branch states.

#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "catlab/catalog.hpp"
#include "catlab/common.hpp"
#include "catlab/fock.hpp"

namespace catlab {

enum class Algebra { h3, h4, sl2 };

inline std::string algebra_name(Algebra a) {
    switch (a) {
        case Algebra::h3: return "h3";
        case Algebra::h4: return "h4";
        case Algebra::sl2: return "sl2";
    }
    throw ConfigError("algebra_name: unknown algebra");
}

inline Algebra algebra_from_name(const std::string& s) {
    if (s == "h3") return Algebra::h3;
    if (s == "h4") return Algebra::h4;
    if (s == "sl2") return Algebra::sl2;
    throw ConfigError("unknown algebra: " + s);
}

// Hermitian single-mode generator basis. The identity is excluded from the
// variance-bearing set (it contributes zero variance).
inline std::vector<Mat> algebra_generators(Algebra a, int d) {
    std::vector<Mat> gens;
    switch (a) {
        case Algebra::h3:
            gens = {quadrature_matrix(0.0, d), quadrature_matrix(kPi / 2.0, d)};
            break;
        case Algebra::h4:
            gens = {quadrature_matrix(0.0, d), quadrature_matrix(kPi / 2.0, d), number_matrix(d)};
            break;
        case Algebra::sl2: {
            const Mat a2 = annihilation_matrix(d) * annihilation_matrix(d);
            gens = {0.5 * number_matrix(d) + 0.25 * Mat::Identity(d, d),
                    0.5 * (a2 + a2.adjoint()),
                    cplx(0.0, 0.5) * (a2 - a2.adjoint())};
            break;
        }
    }
    return gens;
}

struct MetrologyReport {
    double max_variance = 0.0;
    RVec optimal_coefficients;            // length N * |generators|, unit norm
    double qfi = 0.0;                     // 4 * max_variance (pure states)
    double nrf = 0.0;                     // filled by nrf(); 0 when not computed
    std::vector<double> branch_max_variances;
    std::string algebra;
};

namespace detail {

// Symmetrized covariance of the 1-local generator family {G_k^{(j)}}.
// Cov[(j,k),(j',k')] = Re<G_k^{(j)} G_{k'}^{(j')}> - <G_k^{(j)}><G_{k'}^{(j')}>.
inline RMat one_local_covariance(const FockState& psi, const std::vector<Mat>& gens) {
    const int n_modes = psi.num_modes();
    const int n_gen = static_cast<int>(gens.size());
    const int dim = n_modes * n_gen;
    std::vector<FockState> applied;
    applied.reserve(static_cast<std::size_t>(dim));
    RVec means(dim);
    for (int j = 0; j < n_modes; ++j)
        for (int k = 0; k < n_gen; ++k) {
            if (gens[static_cast<std::size_t>(k)].rows() != psi.cutoffs().dims[j])
                throw ConfigError("one_local_covariance: generator dimension mismatch");
            applied.push_back(apply_single_mode(psi, gens[static_cast<std::size_t>(k)], j));
            means[j * n_gen + k] = inner_product(psi, applied.back()).real();
        }
    RMat cov(dim, dim);
    for (int r = 0; r < dim; ++r)
        for (int c = r; c < dim; ++c) {
            const double e2 = inner_product(applied[static_cast<std::size_t>(r)],
                                            applied[static_cast<std::size_t>(c)])
                                  .real();
            cov(r, c) = cov(c, r) = e2 - means[r] * means[c];
        }
    return cov;
}

}  // namespace detail

// Var_psi(H) for H = sum_{j,k} c_{jk} G_k^{(j)}: the exact bilinear form.
inline double one_local_variance(const FockState& psi, Algebra a, const RVec& coeffs) {
    const auto gens = algebra_generators(a, psi.cutoffs().dims[0]);
    if (coeffs.size() != psi.num_modes() * static_cast<long>(gens.size()))
        throw ConfigError("one_local_variance: coefficient length mismatch");
    const RMat cov = detail::one_local_covariance(psi, gens);
    return coeffs.dot(cov * coeffs);
}

// Maximum of the variance over unit-Euclidean-norm coefficient vectors: the
// top eigenvalue of the covariance matrix, with its eigenvector reported as
// the optimal coefficients.
inline MetrologyReport max_one_local_variance(const FockState& psi, Algebra a) {
    const auto gens = algebra_generators(a, psi.cutoffs().dims[0]);
    const RMat cov = detail::one_local_covariance(psi, gens);
    Eigen::SelfAdjointEigenSolver<RMat> es(cov);
    if (es.info() != Eigen::Success) throw NumericError("max_one_local_variance: eigensolve failed");
    if (es.eigenvalues().minCoeff() < -1e-10)
        throw NumericError("max_one_local_variance: covariance not PSD (min eig " +
                           std::to_string(es.eigenvalues().minCoeff()) + ")");
    MetrologyReport rep;
    rep.algebra = algebra_name(a);
    const long top = es.eigenvalues().size() - 1;
    rep.max_variance = es.eigenvalues()[top];
    rep.optimal_coefficients = es.eigenvectors().col(top);
    rep.qfi = 4.0 * rep.max_variance;
    return rep;
}

inline MetrologyReport max_one_local_variance(const FockState& psi, const std::vector<Mat>& gens,
                                              const std::string& algebra_label = "custom") {
    const RMat cov = detail::one_local_covariance(psi, gens);
    Eigen::SelfAdjointEigenSolver<RMat> es(cov);
    if (es.info() != Eigen::Success) throw NumericError("max_one_local_variance: eigensolve failed");
    if (es.eigenvalues().minCoeff() < -1e-10)
        throw NumericError("max_one_local_variance: covariance not PSD (min eig " +
                           std::to_string(es.eigenvalues().minCoeff()) + ")");
    MetrologyReport rep;
    rep.algebra = algebra_label;
    const long top = es.eigenvalues().size() - 1;
    rep.max_variance = es.eigenvalues()[top];
    rep.optimal_coefficients = es.eigenvectors().col(top);
    rep.qfi = 4.0 * rep.max_variance;
    return rep;
}

// N^rF: max 1-local variance of the superposition over the mean of the branch
// maxima. Scaling claims about this quantity are made as exponent fits over
// parameter sweeps, not as absolute constants.
inline MetrologyReport nrf(const FockState& psi, const std::vector<FockState>& branches,
                           const std::vector<Mat>& gens, const std::string& algebra_label = "custom") {
    MetrologyReport rep = max_one_local_variance(psi, gens, algebra_label);
    if (branches.empty()) throw ConfigError("nrf: need at least one branch");
    double mean = 0.0;
    for (const auto& b : branches) {
        rep.branch_max_variances.push_back(max_one_local_variance(b, gens, algebra_label).max_variance);
        mean += rep.branch_max_variances.back();
    }
    mean /= static_cast<double>(branches.size());
    if (mean < 1e-12)
        throw DegenerateStateError("nrf: every branch is a generator eigenvector (denominator ~ 0)");
    rep.nrf = rep.max_variance / mean;
    return rep;
}

inline MetrologyReport nrf(const FockState& psi, const std::vector<FockState>& branches, Algebra a) {
    return nrf(psi, branches, algebra_generators(a, psi.cutoffs().dims[0]), algebra_name(a));
}

// Pure-state quantum Fisher information with respect to a full-space
// Hermitian generator: 4 (<H^2> - <H>^2).
inline double qfi_pure(const FockState& psi, const FockOperator& h) {
    if ((h.matrix - h.matrix.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
        throw ConfigError("qfi_pure: generator must be Hermitian");
    const Vec hpsi = h.matrix * psi.amp();
    const double mean = psi.amp().dot(hpsi).real();
    return 4.0 * (hpsi.squaredNorm() - mean * mean);
}

// Same, for a 1-local generator given by per-mode coefficients.
inline double qfi_pure_one_local(const FockState& psi, Algebra a, const RVec& coeffs) {
    return 4.0 * one_local_variance(psi, a, coeffs);
}

// Derived closed form for the variance of the two-photon 1-local generator
// H = sum_j (conj(z) a_j^2 + z a_j†^2) in Omega(alpha), alpha real:
//   N(N-1) (2 Re(conj(z) a^2))^2
//   + N [2 Re(conj(z)^2 a^4) + 2|z|^2 |a|^4
//        + 2|z|^2 |a|^2 (tanh|a|^2 + coth|a|^2) + 2|z|^2].
inline double omega_two_photon_variance_closed_form(int N, double alpha, cplx z) {
    const double x = alpha * alpha;
    const cplx a2 = alpha * alpha;
    const double mu = 2.0 * std::real(std::conj(z) * a2);
    const double h2 = 2.0 * std::real(std::conj(z) * std::conj(z) * a2 * a2) +
                      2.0 * std::norm(z) * x * x +
                      2.0 * std::norm(z) * x * (std::tanh(x) + 1.0 / std::tanh(x)) +
                      2.0 * std::norm(z);
    return N * (N - 1.0) * mu * mu + N * h2;
}

// N^rF of S(w)^{xN} Omega(alpha e^w) under the sl2 algebra, evaluated in the
// squeeze-transported generator frame S†GS (the squeeze acts on the algebra by
// its adjoint action, so this equals the ratio for Omega(alpha e^w) exactly).
// `fixed_frame_out`, when given, receives the untransported-frame value.
inline double squeezed_hcs_nrf(double alpha, double w, int N, double* fixed_frame_out = nullptr) {
    if (!(alpha > 0.0) || w < 0.0) throw ConfigError("squeezed_hcs_nrf: need alpha > 0, w >= 0");
    const double ap = alpha * std::exp(w);
    const int d = cutoff_for(ap, w);
    const CutoffProfile c = uniform_cutoffs(N, d);

    const StateSpec omega{.family = Family::Omega, .N = N, .alpha = ap};
    FockState psi = to_fock(build_coherent(omega), c);
    auto branches = catalog_branches(omega);
    std::vector<FockState> fb;
    for (const auto& b : branches) fb.push_back(to_fock(b, c));

    const Mat s = squeeze_matrix(w, d);
    for (int m = 0; m < N; ++m) {
        psi = apply_single_mode(psi, s, m);
        for (auto& b : fb) b = apply_single_mode(b, s, m);
    }

    auto ratio_for = [&](const std::vector<Mat>& gens) {
        const RMat cov = detail::one_local_covariance(psi, gens);
        Eigen::SelfAdjointEigenSolver<RMat> es(cov, Eigen::EigenvaluesOnly);
        const double num = es.eigenvalues().maxCoeff();
        double mean = 0.0;
        for (const auto& b : fb) {
            Eigen::SelfAdjointEigenSolver<RMat> eb(detail::one_local_covariance(b, gens),
                                                   Eigen::EigenvaluesOnly);
            mean += eb.eigenvalues().maxCoeff();
        }
        mean /= static_cast<double>(fb.size());
        if (mean < 1e-12) throw DegenerateStateError("squeezed_hcs_nrf: degenerate branch variance");
        return num / mean;
    };

    // Transported frame S G S†, so that <S psi| S G S† ... |S psi> = <psi| G ... |psi>.
    std::vector<Mat> transported = algebra_generators(Algebra::sl2, d);
    for (auto& g : transported) g = (s * g * s.adjoint()).eval();
    const double result = ratio_for(transported);
    if (fixed_frame_out) *fixed_frame_out = ratio_for(algebra_generators(Algebra::sl2, d));
    return result;
}

}  // namespace catlab
