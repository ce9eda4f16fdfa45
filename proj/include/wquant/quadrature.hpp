#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wquant/approx.hpp"

namespace wquant {

struct QuadratureResult {
    double value = 0.0;
    std::size_t cells = 0;
    std::string rule;
    std::optional<double> error_vs_reference;
};

/// Knots for kappa with exponent alpha: the real-line construction when
/// kappa lives on R, otherwise the half-line one.
KnotVector knots_for(const WeightFunction& kappa, double alpha, int n);

/// Integral of the piecewise Taylor polynomial against rho over the knot span.
/// Each cell contributes sum_k c_k int (x - anchor)^k rho(x) dx.
QuadratureResult integrate_weighted(const FunctionWithDerivatives& f, const WeightFunction& rho, const KnotVector& kv,
                                    int r, const Tolerance& tol = Tolerance(1e-12));

/// Same with knots generated from kappa; exps.q must be 1 (WrongExponent).
/// psi only enters through the smoothness class and is not evaluated here.
QuadratureResult integrate_weighted(const FunctionWithDerivatives& f, const WeightFunction& rho,
                                    const WeightFunction& psi, const WeightFunction& kappa,
                                    const ProblemExponents& exps, int n, const Tolerance& tol = Tolerance(1e-12));

/// int f rho over rho's domain at tolerance 1e-12, cross-checked against a
/// 1e-10 evaluation; throws NonConvergence if the two disagree.
double reference_integral(const RealFn& f, const WeightFunction& rho);

struct ConvergenceRow {
    int n = 0;
    double value = 0.0;
    double error = 0.0;
    // log(e_prev/e)/log(n/n_prev); NaN for the first row or when either
    // error is at rounding level.
    double order = 0.0;
};

std::vector<ConvergenceRow> convergence_study(const FunctionWithDerivatives& f, const WeightFunction& rho,
                                              const WeightFunction& psi, const WeightFunction& kappa,
                                              const ProblemExponents& exps, const std::vector<int>& n_list);

}  // namespace wquant
