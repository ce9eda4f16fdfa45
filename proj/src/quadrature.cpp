#include "wquant/quadrature.hpp"

#include <cmath>
#include <limits>

#include "wquant/errors.hpp"

namespace wquant {

KnotVector knots_for(const WeightFunction& kappa, double alpha, int n) {
    const Interval& d = kappa.domain();
    if (std::isinf(d.lo) && std::isinf(d.hi)) return knots_realline(kappa, alpha, n);
    return knots_halfline(kappa, alpha, n);
}

QuadratureResult integrate_weighted(const FunctionWithDerivatives& f, const WeightFunction& rho, const KnotVector& kv,
                                    int r, const Tolerance& tol) {
    const PiecewisePolynomial P = build_taylor(f, kv, r);
    const auto bps = rho.breakpoints();
    double total = 0.0;
    for (const auto& c : P.cells) {
        for (std::size_t k = 0; k < c.coeffs.size(); ++k) {
            if (c.coeffs[k] == 0.0) continue;
            const auto moment = [&](double x) {
                const double w = rho.value(x);
                return w == 0.0 ? 0.0 : std::pow(x - c.anchor, static_cast<double>(k)) * w;
            };
            total += c.coeffs[k] * integrate(moment, {c.lo, c.hi}, bps, tol).value;
        }
    }
    QuadratureResult out;
    out.value = total;
    out.cells = P.cells.size();
    out.rule = "piecewise Taylor degree " + std::to_string(r - 1) + " on " + std::to_string(out.cells) +
               " cells, quantizer " + kv.quantizer.name();
    return out;
}

QuadratureResult integrate_weighted(const FunctionWithDerivatives& f, const WeightFunction& rho,
                                    const WeightFunction& /*psi*/, const WeightFunction& kappa,
                                    const ProblemExponents& exps, int n, const Tolerance& tol) {
    if (!(exps.q == Exponent(1.0))) {
        throw WrongExponent("weighted quadrature is the q = 1 case, got q = " + exps.q.str());
    }
    return integrate_weighted(f, rho, knots_for(kappa, alpha(exps), n), exps.r, tol);
}

double reference_integral(const RealFn& f, const WeightFunction& rho) {
    const auto bps = rho.breakpoints();
    const auto fr = [&](double x) {
        const double w = rho.value(x);
        return w == 0.0 ? 0.0 : f(x) * w;
    };
    const double fine = integrate(fr, rho.domain(), bps, Tolerance(1e-12)).value;
    const double coarse = integrate(fr, rho.domain(), bps, Tolerance(1e-10)).value;
    if (std::abs(fine - coarse) > 1e-9 * std::max(1.0, std::abs(fine))) {
        throw NonConvergence("reference integral: tolerance levels disagree (" + std::to_string(fine) + " vs " +
                             std::to_string(coarse) + ")");
    }
    return fine;
}

std::vector<ConvergenceRow> convergence_study(const FunctionWithDerivatives& f, const WeightFunction& rho,
                                              const WeightFunction& psi, const WeightFunction& kappa,
                                              const ProblemExponents& exps, const std::vector<int>& n_list) {
    const double ref = reference_integral(f.derivative(0), rho);
    const double floor = 1e-12 * std::max(1.0, std::abs(ref));
    const double nan = std::numeric_limits<double>::quiet_NaN();
    std::vector<ConvergenceRow> rows;
    for (int n : n_list) {
        ConvergenceRow row;
        row.n = n;
        row.value = integrate_weighted(f, rho, psi, kappa, exps, n).value;
        row.error = std::abs(row.value - ref);
        row.order = nan;
        if (!rows.empty()) {
            const auto& prev = rows.back();
            if (prev.error > floor && row.error > floor && n != prev.n) {
                row.order = std::log(prev.error / row.error) / std::log(static_cast<double>(n) / prev.n);
            }
        }
        rows.push_back(row);
    }
    return rows;
}

}  // namespace wquant
