// common.hpp
// Shared aliases, error types, and small numeric helpers for the catlab library.

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace catlab {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;
using RMat = Eigen::MatrixXd;

inline constexpr double kPi = 3.14159265358979323846;

// Error hierarchy. The CLI maps these onto process exit codes.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Invalid arguments, malformed specs, out-of-range indices.
struct ConfigError : Error {
    using Error::Error;
};

// A state does not fit in the requested truncated basis (tail mass too large),
// or a requested cutoff is infeasible.
struct TruncationError : Error {
    using Error::Error;
};

// Degenerate normalization (e.g. odd cat at alpha = 0).
struct DegenerateStateError : Error {
    using Error::Error;
};

// Numerical tolerance violations: failed cross-checks, non-PSD spectra, drift.
struct NumericError : Error {
    using Error::Error;
};

// Per-mode truncation heuristic: the coherent Poisson tail beyond mean + 8 sigma
// is below 1e-10 for the amplitude range used here. Squeezing by w inflates the
// required dimension by e^{2|w|}.
inline int cutoff_for(double alpha_abs, double squeeze_w = 0.0) {
    const double scale = std::exp(2.0 * std::abs(squeeze_w));
    const double d = scale * (alpha_abs * alpha_abs + 8.0 * alpha_abs) + 10.0;
    return static_cast<int>(std::ceil(d));
}

inline bool nearly_equal(double a, double b, double tol) { return std::abs(a - b) <= tol; }

// Least-squares slope of log(y) vs log(x); used to test scaling laws as
// exponent fits over parameter sweeps.
inline double fit_loglog_exponent(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size() || xs.size() < 2)
        throw ConfigError("fit_loglog_exponent: need >= 2 samples of equal length");
    const auto n = static_cast<double>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (!(xs[i] > 0.0) || !(ys[i] > 0.0))
            throw NumericError("fit_loglog_exponent: nonpositive sample");
        const double lx = std::log(xs[i]);
        const double ly = std::log(ys[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double denom = n * sxx - sx * sx;
    if (std::abs(denom) < 1e-30) throw NumericError("fit_loglog_exponent: degenerate abscissae");
    return (n * sxy - sx * sy) / denom;
}

inline double binary_entropy_bits(const RVec& probs, double clip = 1e-12) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < probs.size(); ++i) {
        const double p = probs[i];
        if (p > clip) s -= p * std::log2(p);
    }
    return s;
}

}  // namespace catlab
