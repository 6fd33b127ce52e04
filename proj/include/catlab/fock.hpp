// fock.hpp
// Truncated multimode Fock-space numerics: states, operators, tensor products,
// partial trace, and entropies. This is the brute-force backend every closed
// form in the library is checked against. All values are immutable after
// construction and all operations are pure functions.

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <set>
#include <vector>

#include "catlab/common.hpp"

namespace catlab {

// ---------------------------------------------------------------------------
// Cutoff profile
// ---------------------------------------------------------------------------

struct CutoffProfile {
    std::vector<int> dims;          // truncated dimension of each mode
    double tail_tolerance = 1e-10;  // max allowed mass in the top level of a mode

    CutoffProfile() = default;
    CutoffProfile(std::vector<int> d, double tail = 1e-10) : dims(std::move(d)), tail_tolerance(tail) {
        validate();
    }

    void validate() const {
        if (dims.empty()) throw ConfigError("CutoffProfile: no modes");
        for (int d : dims)
            if (d < 2) throw ConfigError("CutoffProfile: every cutoff must be >= 2");
        if (!(tail_tolerance >= 0)) throw ConfigError("CutoffProfile: tail_tolerance must be >= 0");
    }

    int num_modes() const { return static_cast<int>(dims.size()); }

    long dim() const {
        long p = 1;
        for (int d : dims) p *= d;
        return p;
    }

    long stride(int mode) const {
        long s = 1;
        for (int k = mode + 1; k < num_modes(); ++k) s *= dims[k];
        return s;
    }

    bool operator==(const CutoffProfile& o) const { return dims == o.dims; }
};

inline CutoffProfile uniform_cutoffs(int num_modes, int dim, double tail = 1e-10) {
    return CutoffProfile(std::vector<int>(static_cast<std::size_t>(num_modes), dim), tail);
}

// ---------------------------------------------------------------------------
// States
// ---------------------------------------------------------------------------

class FockState {
public:
    FockState(CutoffProfile cutoffs, Vec amplitudes)
        : cutoffs_(std::move(cutoffs)), amp_(std::move(amplitudes)) {
        if (amp_.size() != cutoffs_.dim())
            throw ConfigError("FockState: amplitude length does not match cutoff profile");
    }

    static FockState vacuum(const CutoffProfile& c) {
        Vec v = Vec::Zero(c.dim());
        v[0] = 1.0;
        return FockState(c, std::move(v));
    }

    static FockState basis(const CutoffProfile& c, const std::vector<int>& levels) {
        if (static_cast<int>(levels.size()) != c.num_modes())
            throw ConfigError("FockState::basis: wrong number of levels");
        long idx = 0;
        for (int m = 0; m < c.num_modes(); ++m) {
            if (levels[m] < 0 || levels[m] >= c.dims[m])
                throw ConfigError("FockState::basis: level out of range");
            idx += levels[m] * c.stride(m);
        }
        Vec v = Vec::Zero(c.dim());
        v[idx] = 1.0;
        return FockState(c, std::move(v));
    }

    const CutoffProfile& cutoffs() const { return cutoffs_; }
    int num_modes() const { return cutoffs_.num_modes(); }
    long dim() const { return amp_.size(); }
    const Vec& amp() const { return amp_; }
    Vec& amp() { return amp_; }

    double norm() const { return amp_.norm(); }

    FockState normalized() const {
        const double n = norm();
        if (n < 1e-12) throw DegenerateStateError("FockState: cannot normalize a (near-)zero vector");
        return FockState(cutoffs_, amp_ / n);
    }

    // Probability mass sitting in the top level of a mode.
    double top_level_mass(int mode) const {
        double m = 0.0;
        const int d = cutoffs_.dims[mode];
        const long s = cutoffs_.stride(mode);
        for (long i = 0; i < dim(); ++i)
            if ((i / s) % d == d - 1) m += std::norm(amp_[i]);
        return m;
    }

    // Post-construction truncation check required by the cutoff profile.
    void check_tail() const {
        for (int m = 0; m < num_modes(); ++m) {
            const double mass = top_level_mass(m);
            if (mass >= cutoffs_.tail_tolerance)
                throw TruncationError("FockState: top-level mass " + std::to_string(mass) +
                                      " in mode " + std::to_string(m) + " exceeds tail tolerance");
        }
    }

private:
    CutoffProfile cutoffs_;
    Vec amp_;
};

inline cplx inner_product(const FockState& a, const FockState& b) {
    if (!(a.cutoffs() == b.cutoffs())) throw ConfigError("inner_product: cutoff mismatch");
    return a.amp().dot(b.amp());  // Eigen's dot conjugates the left argument
}

inline double fidelity(const FockState& a, const FockState& b) {
    return std::norm(inner_product(a, b));
}

inline FockState tensor(const FockState& a, const FockState& b) {
    std::vector<int> dims = a.cutoffs().dims;
    dims.insert(dims.end(), b.cutoffs().dims.begin(), b.cutoffs().dims.end());
    CutoffProfile c(dims, std::min(a.cutoffs().tail_tolerance, b.cutoffs().tail_tolerance));
    Vec v(c.dim());
    const long db = b.dim();
    for (long i = 0; i < a.dim(); ++i)
        for (long j = 0; j < db; ++j) v[i * db + j] = a.amp()[i] * b.amp()[j];
    return FockState(c, std::move(v));
}

inline FockState tensor_power(const FockState& a, int n) {
    if (n < 1) throw ConfigError("tensor_power: n must be >= 1");
    FockState out = a;
    for (int k = 1; k < n; ++k) out = tensor(out, a);
    return out;
}

// ---------------------------------------------------------------------------
// Single-mode operator builders (dense d x d matrices)
// ---------------------------------------------------------------------------

inline Mat annihilation_matrix(int d) {
    Mat a = Mat::Zero(d, d);
    for (int n = 1; n < d; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    return a;
}

inline Mat creation_matrix(int d) { return annihilation_matrix(d).adjoint(); }

inline Mat number_matrix(int d) {
    Mat n = Mat::Zero(d, d);
    for (int k = 0; k < d; ++k) n(k, k) = static_cast<double>(k);
    return n;
}

inline Mat identity_matrix(int d) { return Mat::Identity(d, d); }

// e^{i phi n}
inline Mat phase_matrix(double phi, int d) {
    Mat p = Mat::Zero(d, d);
    for (int k = 0; k < d; ++k) p(k, k) = std::exp(cplx(0.0, phi * k));
    return p;
}

// (-1)^n
inline Mat parity_matrix(int d) {
    Mat p = Mat::Zero(d, d);
    for (int k = 0; k < d; ++k) p(k, k) = (k % 2 == 0) ? 1.0 : -1.0;
    return p;
}

// x^{(theta)} = (a e^{-i theta} + a† e^{i theta}) / sqrt(2)
inline Mat quadrature_matrix(double theta, int d) {
    const Mat a = annihilation_matrix(d);
    return (a * std::exp(cplx(0.0, -theta)) + a.adjoint() * std::exp(cplx(0.0, theta))) / std::sqrt(2.0);
}

// exp(iH) for Hermitian H via eigendecomposition. All unitaries in this module
// have the form exp(i * Hermitian), which keeps them unitary to rounding.
inline Mat exp_i_hermitian(const Mat& h) {
    Eigen::SelfAdjointEigenSolver<Mat> es(h);
    if (es.info() != Eigen::Success) throw NumericError("exp_i_hermitian: eigensolve failed");
    const RVec& lam = es.eigenvalues();
    Vec phases(lam.size());
    for (Eigen::Index k = 0; k < lam.size(); ++k) phases[k] = std::exp(cplx(0.0, lam[k]));
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

// D(beta) = exp(beta a† - conj(beta) a)
inline Mat displacement_matrix(cplx beta, int d) {
    const Mat a = annihilation_matrix(d);
    const Mat gen = beta * a.adjoint() - std::conj(beta) * a;  // anti-Hermitian
    return exp_i_hermitian(gen * cplx(0.0, -1.0));
}

// S(w) = exp((conj(w) a^2 - w a†^2) / 2)
inline Mat squeeze_matrix(cplx w, int d) {
    const Mat a = annihilation_matrix(d);
    const Mat a2 = a * a;
    const Mat gen = 0.5 * (std::conj(w) * a2 - w * a2.adjoint());  // anti-Hermitian
    return exp_i_hermitian(gen * cplx(0.0, -1.0));
}

// ---------------------------------------------------------------------------
// Full-space operators
// ---------------------------------------------------------------------------

struct FockOperator {
    Mat matrix;
    bool hermitian_flag = false;

    void check_hermitian(double tol = 1e-12) const {
        if (!hermitian_flag) return;
        const double dev = (matrix - matrix.adjoint()).cwiseAbs().maxCoeff();
        if (dev >= tol) throw NumericError("FockOperator: hermitian_flag set but max |M - M†| = " + std::to_string(dev));
    }
};

inline Mat kron(const Mat& a, const Mat& b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

// Embed a single-mode operator into the full multimode space (identity elsewhere).
inline Mat embed(const Mat& local, int mode, const CutoffProfile& c) {
    if (mode < 0 || mode >= c.num_modes()) throw ConfigError("embed: mode out of range");
    if (local.rows() != c.dims[mode]) throw ConfigError("embed: operator dimension mismatch");
    Mat out = Mat::Identity(1, 1);
    for (int m = 0; m < c.num_modes(); ++m)
        out = kron(out, m == mode ? local : Mat(Mat::Identity(c.dims[m], c.dims[m])));
    return out;
}

inline FockOperator annihilation(int mode, const CutoffProfile& c) {
    return {embed(annihilation_matrix(c.dims[mode]), mode, c), false};
}

inline FockOperator displacement(int mode, cplx beta, const CutoffProfile& c) {
    return {embed(displacement_matrix(beta, c.dims[mode]), mode, c), false};
}

inline FockOperator parity(int mode, const CutoffProfile& c) {
    return {embed(parity_matrix(c.dims[mode]), mode, c), true};
}

inline FockOperator parity_all(const CutoffProfile& c) {
    Mat out = Mat::Identity(1, 1);
    for (int m = 0; m < c.num_modes(); ++m) out = kron(out, parity_matrix(c.dims[m]));
    return {std::move(out), true};
}

inline FockOperator squeeze(int mode, cplx w, const CutoffProfile& c) {
    return {embed(squeeze_matrix(w, c.dims[mode]), mode, c), false};
}

// ---------------------------------------------------------------------------
// Applying local operators without building full-space matrices
// ---------------------------------------------------------------------------

// Apply a d_m x d_m matrix to one mode of a multimode state.
inline FockState apply_single_mode(const FockState& psi, const Mat& op, int mode) {
    const CutoffProfile& c = psi.cutoffs();
    if (mode < 0 || mode >= c.num_modes()) throw ConfigError("apply_single_mode: mode out of range");
    const int d = c.dims[mode];
    if (op.rows() != d || op.cols() != d) throw ConfigError("apply_single_mode: dimension mismatch");
    const long s = c.stride(mode);
    const long dim = psi.dim();
    Vec out = Vec::Zero(dim);
    // index = outer*d*s + n*s + inner, inner < s
    for (long outer = 0; outer < dim / (d * s); ++outer) {
        const long base = outer * d * s;
        for (long inner = 0; inner < s; ++inner) {
            for (int r = 0; r < d; ++r) {
                cplx acc = 0.0;
                for (int q = 0; q < d; ++q) acc += op(r, q) * psi.amp()[base + q * s + inner];
                out[base + r * s + inner] = acc;
            }
        }
    }
    return FockState(c, std::move(out));
}

// Apply a (d_i*d_j) x (d_i*d_j) matrix to the ordered mode pair (i, j), i != j.
// Row/column index convention of `op`: n_i * d_j + n_j.
inline FockState apply_two_mode(const FockState& psi, const Mat& op, int mode_i, int mode_j) {
    const CutoffProfile& c = psi.cutoffs();
    if (mode_i == mode_j) throw ConfigError("apply_two_mode: modes must differ");
    if (mode_i < 0 || mode_j < 0 || mode_i >= c.num_modes() || mode_j >= c.num_modes())
        throw ConfigError("apply_two_mode: mode out of range");
    const int di = c.dims[mode_i], dj = c.dims[mode_j];
    if (op.rows() != static_cast<long>(di) * dj) throw ConfigError("apply_two_mode: dimension mismatch");
    const long si = c.stride(mode_i), sj = c.stride(mode_j);
    const long dim = psi.dim();

    // Enumerate all indices with both modes at level 0, then sweep the pair.
    std::vector<long> rest;
    rest.reserve(static_cast<std::size_t>(dim / (static_cast<long>(di) * dj)));
    for (long i = 0; i < dim; ++i) {
        if ((i / si) % di == 0 && (i / sj) % dj == 0) rest.push_back(i);
    }
    Vec out = Vec::Zero(dim);
    Vec local(static_cast<long>(di) * dj);
    for (long base : rest) {
        for (int ni = 0; ni < di; ++ni)
            for (int nj = 0; nj < dj; ++nj) local[static_cast<long>(ni) * dj + nj] = psi.amp()[base + ni * si + nj * sj];
        Vec res = op * local;
        for (int ni = 0; ni < di; ++ni)
            for (int nj = 0; nj < dj; ++nj) out[base + ni * si + nj * sj] = res[static_cast<long>(ni) * dj + nj];
    }
    return FockState(c, std::move(out));
}

inline cplx expectation_local(const FockState& psi, const Mat& op, int mode) {
    return inner_product(psi, apply_single_mode(psi, op, mode));
}

// Variance of a Hermitian single-mode observable in a (normalized) state.
inline double variance_local(const FockState& psi, const Mat& op, int mode) {
    const FockState opsi = apply_single_mode(psi, op, mode);
    const double m = inner_product(psi, opsi).real();
    const double m2 = opsi.amp().squaredNorm();
    return m2 - m * m;
}

// ---------------------------------------------------------------------------
// Two-mode number-conserving unitaries (beam splitters)
// ---------------------------------------------------------------------------

// exp(i (theta/2) * (a_i† a_j + a_j† a_i))      [symmetric-phase convention]
// exp(  (theta/2) * (a_i† a_j - a_j† a_i))      [real-rotation convention]
// Both conserve total photon number, so the exponential is taken block-by-block
// over the total-occupation sectors. Index convention: n_i * d_j + n_j.
inline Mat two_mode_mixer_matrix(double theta, int di, int dj, bool symmetric_phase) {
    const long dim = static_cast<long>(di) * dj;
    Mat u = Mat::Zero(dim, dim);
    for (int s = 0; s <= di + dj - 2; ++s) {
        const int lo = std::max(0, s - dj + 1);
        const int hi = std::min(di - 1, s);
        const int b = hi - lo + 1;
        if (b <= 0) continue;
        // Hermitian generator H with U = exp(i (theta/2) H) on this block.
        Mat h = Mat::Zero(b, b);
        for (int k = 0; k + 1 < b; ++k) {
            const int ni = lo + k + 1;       // a_i lowers ni by one, raises nj
            const int nj = s - ni;           // level of mode j before the hop
            const double amp = std::sqrt(static_cast<double>(ni) * (nj + 1));
            if (symmetric_phase) {
                h(k, k + 1) = amp;  // a_i† a_j + a_j† a_i is real symmetric
                h(k + 1, k) = amp;
            } else {
                h(k, k + 1) = cplx(0.0, amp);  // -i(a_i† a_j - a_j† a_i)
                h(k + 1, k) = cplx(0.0, -amp);
            }
        }
        const Mat ub = exp_i_hermitian(h * (theta / 2.0));
        for (int r = 0; r < b; ++r)
            for (int q = 0; q < b; ++q) {
                const int nir = lo + r, njr = s - nir;
                const int niq = lo + q, njq = s - niq;
                u(static_cast<long>(nir) * dj + njr, static_cast<long>(niq) * dj + njq) = ub(r, q);
            }
    }
    return u;
}

// ---------------------------------------------------------------------------
// Density operators
// ---------------------------------------------------------------------------

struct DensityOperator {
    CutoffProfile cutoffs;
    Mat matrix;

    double trace() const { return matrix.trace().real(); }

    void check_valid(double trace_tol = 1e-8, double psd_tol = 1e-10) const {
        if (std::abs(trace() - 1.0) > trace_tol)
            throw NumericError("DensityOperator: trace deviates from 1 by " + std::to_string(trace() - 1.0));
        Eigen::SelfAdjointEigenSolver<Mat> es(matrix, Eigen::EigenvaluesOnly);
        if (es.eigenvalues().minCoeff() < -psd_tol)
            throw NumericError("DensityOperator: negative eigenvalue " + std::to_string(es.eigenvalues().minCoeff()));
    }
};

inline DensityOperator density_from_pure(const FockState& psi) {
    return {psi.cutoffs(), psi.amp() * psi.amp().adjoint()};
}

namespace detail {

inline void split_indices(const CutoffProfile& c, const std::vector<int>& keep,
                          std::vector<long>& keep_index, std::vector<long>& rest_index,
                          long& keep_dim, long& rest_dim) {
    const int n = c.num_modes();
    std::set<int> keep_set(keep.begin(), keep.end());
    if (keep_set.empty() || static_cast<int>(keep_set.size()) == n)
        throw ConfigError("partial_trace: keep set must be a nonempty proper subset of modes");
    for (int m : keep_set)
        if (m < 0 || m >= n) throw ConfigError("partial_trace: mode out of range");

    keep_dim = 1;
    rest_dim = 1;
    for (int m = 0; m < n; ++m) (keep_set.count(m) ? keep_dim : rest_dim) *= c.dims[m];

    const long dim = c.dim();
    keep_index.assign(dim, 0);
    rest_index.assign(dim, 0);
    for (long i = 0; i < dim; ++i) {
        long rem = i, ki = 0, ri = 0;
        for (int m = 0; m < n; ++m) {
            const long s = c.stride(m);
            const long level = rem / s;
            rem %= s;
            if (keep_set.count(m))
                ki = ki * c.dims[m] + level;
            else
                ri = ri * c.dims[m] + level;
        }
        keep_index[i] = ki;
        rest_index[i] = ri;
    }
}

inline CutoffProfile kept_profile(const CutoffProfile& c, const std::vector<int>& keep) {
    std::set<int> keep_set(keep.begin(), keep.end());
    std::vector<int> dims;
    for (int m = 0; m < c.num_modes(); ++m)
        if (keep_set.count(m)) dims.push_back(c.dims[m]);
    return CutoffProfile(dims, c.tail_tolerance);
}

}  // namespace detail

inline DensityOperator partial_trace(const DensityOperator& rho, const std::vector<int>& keep) {
    std::vector<long> ki, ri;
    long kd = 0, rd = 0;
    detail::split_indices(rho.cutoffs, keep, ki, ri, kd, rd);
    const long dim = rho.cutoffs.dim();
    // Group full indices by traced-subsystem index so the accumulation is
    // O(dim * keep_dim) instead of O(dim^2).
    std::vector<std::vector<long>> groups(static_cast<std::size_t>(rd));
    for (long i = 0; i < dim; ++i) groups[static_cast<std::size_t>(ri[i])].push_back(i);
    Mat out = Mat::Zero(kd, kd);
    for (const auto& g : groups)
        for (long i : g)
            for (long j : g) out(ki[i], ki[j]) += rho.matrix(i, j);
    return {detail::kept_profile(rho.cutoffs, keep), std::move(out)};
}

// Reduced density of a pure state, via the (keep x rest) reshaping. Much cheaper
// than forming the full projector first.
inline DensityOperator reduced_density(const FockState& psi, const std::vector<int>& keep) {
    std::vector<long> ki, ri;
    long kd = 0, rd = 0;
    detail::split_indices(psi.cutoffs(), keep, ki, ri, kd, rd);
    Mat m = Mat::Zero(kd, rd);
    for (long i = 0; i < psi.dim(); ++i) m(ki[i], ri[i]) = psi.amp()[i];
    return {detail::kept_profile(psi.cutoffs(), keep), m * m.adjoint()};
}

inline RVec density_spectrum(const DensityOperator& rho, double psd_tol = 1e-8) {
    Eigen::SelfAdjointEigenSolver<Mat> es(rho.matrix, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw NumericError("density_spectrum: eigensolve failed");
    RVec lam = es.eigenvalues();
    if (lam.minCoeff() < -psd_tol)
        throw NumericError("density_spectrum: input not PSD within tolerance (min eig " +
                           std::to_string(lam.minCoeff()) + ")");
    return lam;
}

// Von Neumann entropy in bits, eigenvalues below `clip` discarded.
inline double von_neumann_entropy(const DensityOperator& rho, double clip = 1e-12) {
    return binary_entropy_bits(density_spectrum(rho), clip);
}

}  // namespace catlab
