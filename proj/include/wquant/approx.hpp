#pragma once

#include <vector>

#include "wquant/core.hpp"
#include "wquant/quantizer.hpp"

namespace wquant {

enum class PolyForm { Taylor, Lagrange };

/// One cell [lo, hi) of a piecewise polynomial. Taylor cells store
/// c_k = f^(k)(anchor)/k!; Lagrange cells store nodes, values and
/// barycentric weights.
struct PolyCell {
    double lo = 0.0;
    double hi = 0.0;
    double anchor = 0.0;
    std::vector<double> coeffs;
    std::vector<double> nodes;
    std::vector<double> values;
    std::vector<double> weights;

    [[nodiscard]] double eval(double x) const;
};

struct PiecewisePolynomial {
    KnotVector knots;
    PolyForm form = PolyForm::Taylor;
    int r = 1;
    std::vector<PolyCell> cells;
};

/// Piecewise Taylor polynomial of degree r-1. A cell is expanded at its left
/// end, except cells inside (-inf, 0] of a real-line knot vector, which are
/// expanded at their right end (the mirror image of the half-line rule).
PiecewisePolynomial build_taylor(const FunctionWithDerivatives& f, const KnotVector& kv, int r);

/// Piecewise interpolation at r nodes per cell: Chebyshev-Gauss-Lobatto
/// points on finite cells (the midpoint when r = 1); on an unbounded cell the
/// finite end plus offsets w (2^j - 1), w the width of the neighbouring cell.
PiecewisePolynomial build_lagrange(const RealFn& f, const KnotVector& kv, int r);

/// Cells are half open [x_{i-1}, x_i); the last finite knot belongs to the
/// last cell. Throws OutOfSpan outside the knot span or for non-finite x.
double eval_piecewise(const PiecewisePolynomial& P, double x);

/// (int_iv |g rho|^q)^{1/q}, or sup_iv |g rho| for q = inf.
double weighted_Lq_norm(const RealFn& g, const WeightFunction& rho, Exponent q, Interval iv,
                        const Tolerance& tol = {}, std::span<const double> breakpoints = {});

/// ||f^(r) psi||_{L_p(iv)}; throws MissingDerivative without f^(r).
double smoothness_seminorm(const FunctionWithDerivatives& f, const WeightFunction& psi, Exponent p, int r,
                           Interval iv, const Tolerance& tol = {});

/// ||(f - P) rho||_{L_q} over the knot span, integrated cell by cell.
double approximation_error(const RealFn& f, const PiecewisePolynomial& P, const WeightFunction& rho, Exponent q,
                           const Tolerance& tol = {});

}  // namespace wquant
