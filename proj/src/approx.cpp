#include "wquant/approx.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "wquant/errors.hpp"

namespace wquant {

double PolyCell::eval(double x) const {
    if (!coeffs.empty()) {
        const double t = x - anchor;
        double acc = 0.0;
        for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * t + coeffs[k];
        return acc;
    }
    // Second barycentric form.
    double num = 0.0;
    double den = 0.0;
    for (std::size_t j = 0; j < nodes.size(); ++j) {
        const double d = x - nodes[j];
        if (d == 0.0) return values[j];
        const double w = weights[j] / d;
        num += w * values[j];
        den += w;
    }
    return num / den;
}

namespace {

void require_r(int r) {
    if (r < 1) throw ParameterOutOfRange("r must be a positive integer");
}

void require_knots(const KnotVector& kv) {
    if (kv.knots.size() < 2) throw ParameterOutOfRange("knot vector needs at least one cell");
}

// Width of the nearest finite cell, used to scale nodes in unbounded cells.
double neighbour_width(const KnotVector& kv, std::size_t cell) {
    const auto& x = kv.knots;
    for (std::size_t d = 1; d < x.size(); ++d) {
        for (const std::ptrdiff_t j : {static_cast<std::ptrdiff_t>(cell) - static_cast<std::ptrdiff_t>(d),
                                       static_cast<std::ptrdiff_t>(cell + d)}) {
            if (j >= 0 && static_cast<std::size_t>(j) + 1 < x.size()) {
                const double w = x[static_cast<std::size_t>(j) + 1] - x[static_cast<std::size_t>(j)];
                if (std::isfinite(w)) return w;
            }
        }
    }
    return 1.0;
}

}  // namespace

PiecewisePolynomial build_taylor(const FunctionWithDerivatives& f, const KnotVector& kv, int r) {
    require_r(r);
    require_knots(kv);
    if (f.derivatives.size() < static_cast<std::size_t>(r)) {
        throw MissingDerivative("Taylor degree " + std::to_string(r - 1) + " needs derivatives up to order " +
                                std::to_string(r - 1) + " of '" + f.label + "'");
    }
    PiecewisePolynomial P;
    P.knots = kv;
    P.form = PolyForm::Taylor;
    P.r = r;
    const bool mirrored = std::isinf(kv.knots.front());
    for (std::size_t i = 1; i < kv.knots.size(); ++i) {
        PolyCell c;
        c.lo = kv.knots[i - 1];
        c.hi = kv.knots[i];
        const bool right = std::isinf(c.lo) || (mirrored && c.hi <= 0.0);
        c.anchor = right ? c.hi : c.lo;
        if (!std::isfinite(c.anchor)) throw ParameterOutOfRange("cell without a finite end");
        double factorial = 1.0;
        for (int k = 0; k < r; ++k) {
            if (k > 0) factorial *= k;
            c.coeffs.push_back(f.derivative(static_cast<std::size_t>(k))(c.anchor) / factorial);
        }
        P.cells.push_back(std::move(c));
    }
    return P;
}

PiecewisePolynomial build_lagrange(const RealFn& f, const KnotVector& kv, int r) {
    require_r(r);
    require_knots(kv);
    PiecewisePolynomial P;
    P.knots = kv;
    P.form = PolyForm::Lagrange;
    P.r = r;
    for (std::size_t i = 1; i < kv.knots.size(); ++i) {
        PolyCell c;
        c.lo = kv.knots[i - 1];
        c.hi = kv.knots[i];
        if (std::isinf(c.lo) && std::isinf(c.hi)) throw ParameterOutOfRange("cell without a finite end");
        if (std::isfinite(c.lo) && std::isfinite(c.hi)) {
            c.anchor = 0.5 * (c.lo + c.hi);
            if (r == 1) {
                c.nodes.push_back(c.anchor);
            } else {
                const double h = 0.5 * (c.hi - c.lo);
                for (int j = r - 1; j >= 0; --j) {
                    c.nodes.push_back(c.anchor + h * std::cos(std::numbers::pi * j / (r - 1)));
                }
                c.nodes.front() = c.lo;
                c.nodes.back() = c.hi;
            }
        } else {
            const double w = neighbour_width(kv, i - 1);
            const double sign = std::isinf(c.hi) ? 1.0 : -1.0;
            c.anchor = std::isinf(c.hi) ? c.lo : c.hi;
            for (int j = 0; j < r; ++j) c.nodes.push_back(c.anchor + sign * w * (std::exp2(j) - 1.0));
        }
        for (double x : c.nodes) c.values.push_back(f(x));
        for (std::size_t j = 0; j < c.nodes.size(); ++j) {
            double prod = 1.0;
            for (std::size_t k = 0; k < c.nodes.size(); ++k) {
                if (k != j) prod *= c.nodes[j] - c.nodes[k];
            }
            c.weights.push_back(1.0 / prod);
        }
        P.cells.push_back(std::move(c));
    }
    return P;
}

double eval_piecewise(const PiecewisePolynomial& P, double x) {
    const auto& k = P.knots.knots;
    if (!std::isfinite(x) || x < k.front() || x > k.back()) {
        throw OutOfSpan("x = " + std::to_string(x) + " is outside the knot span");
    }
    const auto it = std::upper_bound(k.begin(), k.end(), x);
    std::size_t cell = static_cast<std::size_t>(it - k.begin());
    cell = cell == 0 ? 0 : cell - 1;
    cell = std::min(cell, P.cells.size() - 1);
    return P.cells[cell].eval(x);
}

double weighted_Lq_norm(const RealFn& g, const WeightFunction& rho, Exponent q, Interval iv, const Tolerance& tol,
                        std::span<const double> breakpoints) {
    auto weighted = [&](double x) {
        const double w = rho.value(x);
        if (w == 0.0) return 0.0;
        return std::abs(g(x)) * w;
    };
    if (q.is_infinite()) return sup_on(weighted, iv, tol);
    std::vector<double> bps(breakpoints.begin(), breakpoints.end());
    const auto own = rho.breakpoints();
    bps.insert(bps.end(), own.begin(), own.end());
    const double qq = q.value();
    const double integral = integrate([&](double x) { return std::pow(weighted(x), qq); }, iv, bps, tol).value;
    return std::pow(integral, 1.0 / qq);
}

double smoothness_seminorm(const FunctionWithDerivatives& f, const WeightFunction& psi, Exponent p, int r,
                           Interval iv, const Tolerance& tol) {
    require_r(r);
    const auto& fr = f.derivative(static_cast<std::size_t>(r));
    return weighted_Lq_norm(fr, psi, p, iv, tol);
}

double approximation_error(const RealFn& f, const PiecewisePolynomial& P, const WeightFunction& rho, Exponent q,
                           const Tolerance& tol) {
    const auto bps = rho.breakpoints();
    double acc = 0.0;
    for (const auto& c : P.cells) {
        auto weighted = [&](double x) {
            const double w = rho.value(x);
            if (w == 0.0) return 0.0;
            return std::abs(f(x) - c.eval(x)) * w;
        };
        const Interval iv(c.lo, c.hi);
        if (q.is_infinite()) {
            acc = std::max(acc, sup_on(weighted, iv, tol));
        } else {
            const double qq = q.value();
            acc += integrate([&](double x) { return std::pow(weighted(x), qq); }, iv, bps, tol).value;
        }
    }
    return q.is_infinite() ? acc : std::pow(acc, 1.0 / q.value());
}

}  // namespace wquant
