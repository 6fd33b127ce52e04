// coherent.hpp
// Exact analytic backend: states as finite superpositions of multimode coherent
// terms, with closed-form overlaps, normal-ordered moments, partial traces, and
// Gram-matrix entropies. Scales to amplitudes and mode counts where Fock
// truncation is out of reach.

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "catlab/common.hpp"
#include "catlab/fock.hpp"

namespace catlab {

// ---------------------------------------------------------------------------
// Kernel
// ---------------------------------------------------------------------------

// <alpha_vec | beta_vec> = prod_j exp(-|a_j|^2/2 - |b_j|^2/2 + conj(a_j) b_j)
inline cplx overlap_kernel(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    if (a.size() != b.size()) throw ConfigError("overlap_kernel: length mismatch");
    cplx expo = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j)
        expo += std::conj(a[j]) * b[j] - 0.5 * (std::norm(a[j]) + std::norm(b[j]));
    return std::exp(expo);
}

// ---------------------------------------------------------------------------
// Pure states
// ---------------------------------------------------------------------------

struct CoherentTerm {
    cplx coeff;
    std::vector<cplx> alphas;
};

class CoherentSuperposition {
public:
    CoherentSuperposition(int num_modes, std::vector<CoherentTerm> terms)
        : num_modes_(num_modes), terms_(std::move(terms)) {
        if (num_modes_ < 1) throw ConfigError("CoherentSuperposition: need >= 1 mode");
        for (const auto& t : terms_)
            if (static_cast<int>(t.alphas.size()) != num_modes_)
                throw ConfigError("CoherentSuperposition: term arity mismatch");
        merge_duplicates();
    }

    static CoherentSuperposition coherent(const std::vector<cplx>& alphas) {
        return CoherentSuperposition(static_cast<int>(alphas.size()), {{1.0, alphas}});
    }

    int num_modes() const { return num_modes_; }
    const std::vector<CoherentTerm>& terms() const { return terms_; }

    CoherentSuperposition scaled(cplx s) const {
        auto t = terms_;
        for (auto& term : t) term.coeff *= s;
        return CoherentSuperposition(num_modes_, std::move(t));
    }

    CoherentSuperposition normalized() const {
        const double n2 = self_inner().real();
        if (n2 < 1e-24) throw DegenerateStateError("CoherentSuperposition: degenerate normalization");
        return scaled(1.0 / std::sqrt(n2));
    }

    cplx self_inner() const;

private:
    // Alpha-vectors closer than 1e-12 (Euclidean) are physically identical;
    // merging them keeps Gram matrices away from exact singularity.
    void merge_duplicates() {
        std::vector<CoherentTerm> merged;
        for (const auto& t : terms_) {
            bool found = false;
            for (auto& m : merged) {
                double dist2 = 0.0;
                for (int j = 0; j < num_modes_; ++j) dist2 += std::norm(t.alphas[j] - m.alphas[j]);
                if (dist2 < 1e-24) {
                    m.coeff += t.coeff;
                    found = true;
                    break;
                }
            }
            if (!found) merged.push_back(t);
        }
        terms_ = std::move(merged);
    }

    int num_modes_;
    std::vector<CoherentTerm> terms_;
};

inline cplx inner_product(const CoherentSuperposition& psi, const CoherentSuperposition& phi) {
    if (psi.num_modes() != phi.num_modes()) throw ConfigError("inner_product: mode mismatch");
    cplx acc = 0.0;
    for (const auto& a : psi.terms())
        for (const auto& b : phi.terms())
            acc += std::conj(a.coeff) * b.coeff * overlap_kernel(a.alphas, b.alphas);
    return acc;
}

inline cplx CoherentSuperposition::self_inner() const { return inner_product(*this, *this); }

inline double fidelity(const CoherentSuperposition& a, const CoherentSuperposition& b) {
    return std::norm(inner_product(a, b));
}

inline CoherentSuperposition tensor(const CoherentSuperposition& a, const CoherentSuperposition& b) {
    std::vector<CoherentTerm> terms;
    terms.reserve(a.terms().size() * b.terms().size());
    for (const auto& ta : a.terms())
        for (const auto& tb : b.terms()) {
            CoherentTerm t{ta.coeff * tb.coeff, ta.alphas};
            t.alphas.insert(t.alphas.end(), tb.alphas.begin(), tb.alphas.end());
            terms.push_back(std::move(t));
        }
    return CoherentSuperposition(a.num_modes() + b.num_modes(), std::move(terms));
}

inline CoherentSuperposition tensor_power(const CoherentSuperposition& a, int n) {
    if (n < 1) throw ConfigError("tensor_power: n must be >= 1");
    CoherentSuperposition out = a;
    for (int k = 1; k < n; ++k) out = tensor(out, a);
    return out;
}

inline CoherentSuperposition add(const CoherentSuperposition& a, const CoherentSuperposition& b) {
    if (a.num_modes() != b.num_modes()) throw ConfigError("add: mode mismatch");
    std::vector<CoherentTerm> terms = a.terms();
    terms.insert(terms.end(), b.terms().begin(), b.terms().end());
    return CoherentSuperposition(a.num_modes(), std::move(terms));
}

// ---------------------------------------------------------------------------
// Normal-ordered moments
// ---------------------------------------------------------------------------

// One (p, q) pair per mode: powers of a† then a.
struct MonomialSpec {
    std::vector<int> dagger_powers;
    std::vector<int> lower_powers;
};

// <psi| prod_j a_j†^{p_j} a_j^{q_j} |psi>. Each dyad contributes
// conj(alpha_bra)^p alpha_ket^q times the overlap kernel.
inline cplx moment(const CoherentSuperposition& psi, const MonomialSpec& spec) {
    const int n = psi.num_modes();
    if (static_cast<int>(spec.dagger_powers.size()) != n || static_cast<int>(spec.lower_powers.size()) != n)
        throw ConfigError("moment: monomial arity mismatch");
    cplx acc = 0.0;
    for (const auto& bra : psi.terms())
        for (const auto& ket : psi.terms()) {
            cplx w = std::conj(bra.coeff) * ket.coeff * overlap_kernel(bra.alphas, ket.alphas);
            for (int j = 0; j < n; ++j) {
                for (int p = 0; p < spec.dagger_powers[j]; ++p) w *= std::conj(bra.alphas[j]);
                for (int q = 0; q < spec.lower_powers[j]; ++q) w *= ket.alphas[j];
            }
            acc += w;
        }
    return acc;
}

// Convenience for single-mode monomials a†^p a^q acting on `mode`.
inline cplx moment(const CoherentSuperposition& psi, int mode, int p, int q) {
    MonomialSpec spec{std::vector<int>(psi.num_modes(), 0), std::vector<int>(psi.num_modes(), 0)};
    spec.dagger_powers[mode] = p;
    spec.lower_powers[mode] = q;
    return moment(psi, spec);
}

// ---------------------------------------------------------------------------
// Mixed states as coherent dyads
// ---------------------------------------------------------------------------

struct CoherentDyad {
    cplx coeff;
    std::vector<cplx> ket;
    std::vector<cplx> bra;
};

class CoherentDensity {
public:
    CoherentDensity(int num_modes, std::vector<CoherentDyad> dyads)
        : num_modes_(num_modes), dyads_(std::move(dyads)) {
        for (const auto& d : dyads_)
            if (static_cast<int>(d.ket.size()) != num_modes_ || static_cast<int>(d.bra.size()) != num_modes_)
                throw ConfigError("CoherentDensity: dyad arity mismatch");
        merge_duplicates();
    }

    static CoherentDensity from_pure(const CoherentSuperposition& psi) {
        std::vector<CoherentDyad> dyads;
        dyads.reserve(psi.terms().size() * psi.terms().size());
        for (const auto& k : psi.terms())
            for (const auto& b : psi.terms())
                dyads.push_back({k.coeff * std::conj(b.coeff), k.alphas, b.alphas});
        return CoherentDensity(psi.num_modes(), std::move(dyads));
    }

    int num_modes() const { return num_modes_; }
    const std::vector<CoherentDyad>& dyads() const { return dyads_; }

    cplx trace() const {
        cplx t = 0.0;
        for (const auto& d : dyads_) t += d.coeff * overlap_kernel(d.bra, d.ket);
        return t;
    }

    CoherentDensity scaled(cplx s) const {
        auto d = dyads_;
        for (auto& dy : d) dy.coeff *= s;
        return CoherentDensity(num_modes_, std::move(d));
    }

private:
    void merge_duplicates() {
        std::vector<CoherentDyad> merged;
        for (const auto& d : dyads_) {
            bool found = false;
            for (auto& m : merged) {
                double dist2 = 0.0;
                for (int j = 0; j < num_modes_; ++j)
                    dist2 += std::norm(d.ket[j] - m.ket[j]) + std::norm(d.bra[j] - m.bra[j]);
                if (dist2 < 1e-24) {
                    m.coeff += d.coeff;
                    found = true;
                    break;
                }
            }
            if (!found) merged.push_back(d);
        }
        dyads_ = std::move(merged);
    }

    int num_modes_;
    std::vector<CoherentDyad> dyads_;
};

// Trace out the complement of `keep`: traced modes fold the single-mode kernel
// factor <bra_j|ket_j> into the coefficient.
inline CoherentDensity reduce(const CoherentDensity& rho, const std::vector<int>& keep) {
    std::vector<int> keep_sorted(keep);
    std::sort(keep_sorted.begin(), keep_sorted.end());
    keep_sorted.erase(std::unique(keep_sorted.begin(), keep_sorted.end()), keep_sorted.end());
    if (keep_sorted.empty() || static_cast<int>(keep_sorted.size()) == rho.num_modes())
        throw ConfigError("reduce: keep set must be a nonempty proper subset");
    for (int m : keep_sorted)
        if (m < 0 || m >= rho.num_modes()) throw ConfigError("reduce: mode out of range");

    std::vector<bool> kept(static_cast<std::size_t>(rho.num_modes()), false);
    for (int m : keep_sorted) kept[static_cast<std::size_t>(m)] = true;

    std::vector<CoherentDyad> out;
    out.reserve(rho.dyads().size());
    for (const auto& d : rho.dyads()) {
        CoherentDyad r{d.coeff, {}, {}};
        cplx expo = 0.0;
        for (int j = 0; j < rho.num_modes(); ++j) {
            if (kept[static_cast<std::size_t>(j)]) {
                r.ket.push_back(d.ket[j]);
                r.bra.push_back(d.bra[j]);
            } else {
                // <bra_j | ket_j>
                expo += std::conj(d.bra[j]) * d.ket[j] - 0.5 * (std::norm(d.ket[j]) + std::norm(d.bra[j]));
            }
        }
        r.coeff *= std::exp(expo);
        out.push_back(std::move(r));
    }
    return CoherentDensity(static_cast<int>(keep_sorted.size()), std::move(out));
}

// ---------------------------------------------------------------------------
// Gram-matrix spectrum and entropy
// ---------------------------------------------------------------------------

namespace detail {

// Canonical basis of distinct alpha-vectors over kets and bras, plus the
// coefficient matrix C with rho = sum_ij C_ij |v_i><v_j|.
inline void dyad_basis(const CoherentDensity& rho, std::vector<std::vector<cplx>>& basis, Mat& coeff) {
    basis.clear();
    auto index_of = [&](const std::vector<cplx>& v) -> int {
        for (std::size_t i = 0; i < basis.size(); ++i) {
            double dist2 = 0.0;
            for (std::size_t j = 0; j < v.size(); ++j) dist2 += std::norm(v[j] - basis[i][j]);
            if (dist2 < 1e-24) return static_cast<int>(i);
        }
        basis.push_back(v);
        return static_cast<int>(basis.size()) - 1;
    };
    std::vector<std::pair<std::pair<int, int>, cplx>> entries;
    for (const auto& d : rho.dyads()) entries.push_back({{index_of(d.ket), index_of(d.bra)}, d.coeff});
    const int m = static_cast<int>(basis.size());
    coeff = Mat::Zero(m, m);
    for (const auto& e : entries) coeff(e.first.first, e.first.second) += e.second;
}

}  // namespace detail

// Spectrum of rho on its support: eigenvalues of G^{1/2} C G^{1/2}, where G is
// the Gram matrix of the distinct coherent points. Gram eigenvalues below
// 1e-12 * max are projected out (coherent points closer than machine
// resolution are physically identical).
inline RVec gram_spectrum(const CoherentDensity& rho, double hermiticity_tol = 1e-8) {
    std::vector<std::vector<cplx>> basis;
    Mat c;
    detail::dyad_basis(rho, basis, c);
    const int m = static_cast<int>(basis.size());

    const double herm_dev = (c - c.adjoint()).cwiseAbs().maxCoeff();
    const double scale = std::max(1.0, c.cwiseAbs().maxCoeff());
    if (herm_dev > hermiticity_tol * scale)
        throw NumericError("gram_spectrum: dyad set not Hermitian (deviation " + std::to_string(herm_dev) + ")");

    Mat g(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) g(i, j) = overlap_kernel(basis[i], basis[j]);

    Eigen::SelfAdjointEigenSolver<Mat> es(g);
    if (es.info() != Eigen::Success) throw NumericError("gram_spectrum: Gram eigensolve failed");
    const RVec& lam = es.eigenvalues();
    const double lmax = lam.maxCoeff();
    if (!(lmax > 0)) throw NumericError("gram_spectrum: empty Gram support");

    std::vector<int> kept;
    for (int i = 0; i < m; ++i)
        if (lam[i] > 1e-12 * lmax) kept.push_back(i);
    if (kept.empty()) throw NumericError("gram_spectrum: Gram matrix singular beyond regularization");
    if (lmax / lam[kept.front()] > 1e14)
        throw NumericError("gram_spectrum: Gram condition beyond 1e14; merge near-coincident coherent points");

    const int r = static_cast<int>(kept.size());
    Mat vroot(m, r);
    for (int k = 0; k < r; ++k) vroot.col(k) = es.eigenvectors().col(kept[k]) * std::sqrt(lam[kept[k]]);
    // Hermitian r x r similarity-reduced product.
    Mat reduced = vroot.adjoint() * c * vroot;
    Eigen::SelfAdjointEigenSolver<Mat> es2(reduced, Eigen::EigenvaluesOnly);
    if (es2.info() != Eigen::Success) throw NumericError("gram_spectrum: reduced eigensolve failed");
    return es2.eigenvalues();
}

inline double entropy_from_gram(const CoherentDensity& rho, double clip = 1e-12) {
    return binary_entropy_bits(gram_spectrum(rho), clip);
}

// ---------------------------------------------------------------------------
// Fock expansion
// ---------------------------------------------------------------------------

// Single-mode coherent amplitudes e^{-|a|^2/2} a^n / sqrt(n!), built iteratively.
inline Vec coherent_amplitudes(cplx alpha, int d) {
    Vec v(d);
    v[0] = std::exp(-0.5 * std::norm(alpha));
    for (int n = 1; n < d; ++n) v[n] = v[n - 1] * alpha / std::sqrt(static_cast<double>(n));
    return v;
}

inline FockState to_fock(const CoherentSuperposition& psi, const CutoffProfile& cutoffs) {
    if (cutoffs.num_modes() != psi.num_modes()) throw ConfigError("to_fock: mode count mismatch");
    Vec acc = Vec::Zero(cutoffs.dim());
    for (const auto& t : psi.terms()) {
        Vec term = Vec::Ones(1);
        for (int j = 0; j < psi.num_modes(); ++j) {
            const Vec mode_amp = coherent_amplitudes(t.alphas[j], cutoffs.dims[j]);
            Vec next(term.size() * mode_amp.size());
            for (long i = 0; i < term.size(); ++i)
                for (long k = 0; k < mode_amp.size(); ++k) next[i * mode_amp.size() + k] = term[i] * mode_amp[k];
            term = std::move(next);
        }
        acc += t.coeff * term;
    }
    FockState out(cutoffs, std::move(acc));
    // The truncated norm must reproduce the analytic norm up to the tail budget.
    const double analytic_n2 = psi.self_inner().real();
    if (std::abs(out.amp().squaredNorm() - analytic_n2) > std::max(1e4 * cutoffs.tail_tolerance, 1e-9))
        throw TruncationError("to_fock: truncated norm deviates from analytic norm by " +
                              std::to_string(out.amp().squaredNorm() - analytic_n2));
    out.check_tail();
    return out;
}

// Per-mode cutoffs sized for the largest coherent label appearing in psi.
inline CutoffProfile auto_cutoffs(const CoherentSuperposition& psi, double tail = 1e-10) {
    std::vector<int> dims(static_cast<std::size_t>(psi.num_modes()), 2);
    for (const auto& t : psi.terms())
        for (int j = 0; j < psi.num_modes(); ++j)
            dims[static_cast<std::size_t>(j)] =
                std::max(dims[static_cast<std::size_t>(j)], cutoff_for(std::abs(t.alphas[j])));
    return CutoffProfile(dims, tail);
}

// Fock expansion with the default per-amplitude cutoff heuristic.
inline FockState to_fock_auto(const CoherentSuperposition& psi, double tail = 1e-10) {
    return to_fock(psi, auto_cutoffs(psi, tail));
}

// Fock-backend density for a coherent dyad set (used for backend cross-checks).
inline DensityOperator dyads_to_fock(const CoherentDensity& rho, const CutoffProfile& cutoffs) {
    if (cutoffs.num_modes() != rho.num_modes()) throw ConfigError("dyads_to_fock: mode count mismatch");
    Mat acc = Mat::Zero(cutoffs.dim(), cutoffs.dim());
    for (const auto& d : rho.dyads()) {
        Vec ket = Vec::Ones(1), bra = Vec::Ones(1);
        for (int j = 0; j < rho.num_modes(); ++j) {
            const Vec ka = coherent_amplitudes(d.ket[j], cutoffs.dims[j]);
            const Vec ba = coherent_amplitudes(d.bra[j], cutoffs.dims[j]);
            Vec nk(ket.size() * ka.size()), nb(bra.size() * ba.size());
            for (long i = 0; i < ket.size(); ++i)
                for (long k = 0; k < ka.size(); ++k) nk[i * ka.size() + k] = ket[i] * ka[k];
            for (long i = 0; i < bra.size(); ++i)
                for (long k = 0; k < ba.size(); ++k) nb[i * ba.size() + k] = bra[i] * ba[k];
            ket = std::move(nk);
            bra = std::move(nb);
        }
        acc += d.coeff * (ket * bra.adjoint());
    }
    return {cutoffs, std::move(acc)};
}

}  // namespace catlab
