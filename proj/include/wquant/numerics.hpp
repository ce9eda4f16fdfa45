#pragma once

/**
 * @file numerics.hpp
 * @brief Scalar numerical kernels shared by the whole library.
 *
 * Adaptive Gauss-Kronrod (7/15) integration over finite or unbounded
 * intervals, bracketed root finding, golden-section minimization, supremum
 * estimation on (possibly unbounded) intervals, erf/erfc and log-gamma.
 *
 * Unbounded intervals are handled by the rational substitution
 *     x = a + t/(1-t),  t in [0,1)
 * (mirrored for -inf). Internally the parameter is s = 1 - t, which keeps
 * resolution near infinity, so power-law tails x^-b with b close to 1 are
 * still resolved.
 *
 * All routines are pure; callables must be reentrant.
 */

#include <functional>
#include <limits>
#include <span>
#include <vector>

namespace wquant {

using RealFn = std::function<double(double)>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Closed-or-open interval with extended-real endpoints, lo < hi.
struct Interval {
    double lo = 0.0;
    double hi = kInf;

    Interval() = default;
    Interval(double lo_, double hi_);

    [[nodiscard]] bool finite() const;
    [[nodiscard]] bool contains(double x) const { return x >= lo && x <= hi; }

    static Interval real_line() { return {-kInf, kInf}; }
    static Interval half_line() { return {0.0, kInf}; }
};

struct Tolerance {
    double rel = 1e-10;
    double abs = 1e-14;
    int max_subdivisions = 4000;

    Tolerance() = default;
    Tolerance(double rel_, double abs_ = 1e-14, int max_subdivisions_ = 4000);

    // Throws ParameterOutOfRange if rel < 1e-14, abs < 0 or no subdivisions.
    void validate() const;
};

struct IntegrationResult {
    double value = 0.0;
    double error = 0.0;
    int intervals = 0;
    // Set when some panels could not be refined further because the
    // Kronrod/Gauss difference had reached rounding level.
    bool roundoff_limited = false;
};

IntegrationResult integrate(const RealFn& f, Interval iv, const Tolerance& tol = {});

// Integrates over iv split at the given interior points (kinks, cell edges).
IntegrationResult integrate(const RealFn& f, Interval iv, std::span<const double> breakpoints,
                            const Tolerance& tol = {});

struct Bracket {
    double lo;
    double hi;
    double f_lo;
    double f_hi;
};

// Brent-Dekker iteration (bisection safeguarding secant/inverse-quadratic
// steps); returns the final bracket, which always straddles the sign change.
Bracket bracket_root(const RealFn& f, Interval bracket, const Tolerance& tol = {});

double find_root(const RealFn& f, Interval bracket, const Tolerance& tol = {});

struct Minimum {
    double argmin;
    double value;
};

/// Golden-section search. f is assumed unimodal on the bracket; the
/// endpoints themselves are never evaluated, so half-open brackets such as
/// (alpha, alpha + 20] are fine even if f blows up at the open end.
Minimum minimize_scalar(const RealFn& f, Interval bracket, const Tolerance& tol = {});

/// Grid scan over the bracket followed by golden-section refinement around
/// the best grid cell. Fallback for objectives that are not unimodal.
Minimum minimize_scalar_scan(const RealFn& f, Interval bracket, const Tolerance& tol = {},
                             int grid = 256);

inline constexpr int kDefaultSupGrid = 4096;

/// Estimated supremum of a continuous f on iv: coarse scan over a mapped
/// grid, then golden-section refinement of the best cell.
double sup_on(const RealFn& f, Interval iv, const Tolerance& tol = {}, int grid = kDefaultSupGrid);

struct SupResult {
    double value;
    double location;
};
SupResult sup_with_location(const RealFn& f, Interval iv, const Tolerance& tol = {},
                            int grid = kDefaultSupGrid);

double erf(double x);
double erfc(double x);

// Lanczos approximation (g = 7, 9 terms); x > 0.
double log_gamma(double x);

// Least-squares slope of log(y) against log(x).
double log_log_slope(std::span<const double> x, std::span<const double> y);

}  // namespace wquant
