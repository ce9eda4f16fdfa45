#include "wquant/quantizer.hpp"

#include <cmath>
#include <numbers>
#include <optional>

#include "wquant/errors.hpp"

namespace wquant {

namespace {

bool is_real_line(const Interval& iv) { return std::isinf(iv.lo) && std::isinf(iv.hi); }
bool is_half_line(const Interval& iv) { return iv.lo == 0.0 && std::isinf(iv.hi); }

const Tolerance kInvertTol(1e-13, 1e-300);

std::optional<double> closed_form_mass(const WeightFunction& kappa, double alpha) {
    using namespace family;
    const Interval& d = kappa.domain();
    const bool real = is_real_line(d);
    const bool half = is_half_line(d);
    const double sides = real ? 2.0 : 1.0;
    const auto& f = kappa.family();

    if (const auto* e = std::get_if<ExponentialKernel>(&f); e && (real || half)) {
        return sides * alpha / e->a;
    }
    if (const auto* e = std::get_if<ExponentialShapeB>(&f); e && (real || half)) {
        return sides * alpha / e->b;
    }
    if (const auto* e = std::get_if<ExponentialShape>(&f); e && (real || half)) {
        return sides * alpha * e->lambda;
    }
    if (const auto* s = std::get_if<StudentQuantizer>(&f); s && (real || half)) {
        if (s->a <= alpha) {
            throw NonIntegrableQuantizer("(1+|x|)^(-a)^(1/alpha) is not integrable for a <= alpha");
        }
        return sides * alpha / (s->a - alpha);
    }
    if (const auto* g = std::get_if<GaussianShape>(&f); g && (real || half)) {
        return sides * 0.5 * g->lambda * std::sqrt(2.0 * std::numbers::pi * alpha);
    }
    if (const auto* g = std::get_if<GaussianDensity>(&f); g && (real || (half && g->mu == 0.0))) {
        const double root = g->sigma * std::sqrt(2.0 * std::numbers::pi);
        return sides * 0.5 * std::pow(root, -1.0 / alpha) * root * std::sqrt(alpha);
    }
    if (const auto* k = std::get_if<LogNormalQuantizer>(&f); k && half) {
        if (k->c <= alpha) throw NonIntegrableQuantizer("kappa_c^(1/alpha) is not integrable for c <= alpha");
        return k->c / (k->c - alpha) * std::exp(k->mu);
    }
    if (std::holds_alternative<ConstantOne>(f)) {
        if (!d.finite()) throw NonIntegrableQuantizer("constant quantizer on an unbounded domain");
        return d.hi - d.lo;
    }
    if (const auto* s = std::get_if<Scaled>(&f)) {
        const auto inner = closed_form_mass(s->inner->with_domain(d), alpha);
        if (inner) return std::pow(s->factor, 1.0 / alpha) * *inner;
    }
    return std::nullopt;
}

// Heuristic tail test: for an integrable nonincreasing g, x g(x) -> 0.
bool tail_stalls(const RealFn& g, double sign) {
    const double h1 = 1e6 * g(sign * 1e6);
    const double h2 = 1e12 * g(sign * 1e12);
    return h2 > 1e-300 && h2 >= 0.999 * h1;
}

double numeric_mass(const WeightFunction& kappa, double alpha, const Tolerance& tol) {
    const RealFn g = [&](double x) { return quantizer_density(kappa, alpha, x); };
    const Interval& d = kappa.domain();
    if (std::isinf(d.hi) && tail_stalls(g, 1.0)) {
        throw NonIntegrableQuantizer(kappa.name() + ": kappa^(1/alpha) has a non-integrable right tail");
    }
    if (std::isinf(d.lo) && tail_stalls(g, -1.0)) {
        throw NonIntegrableQuantizer(kappa.name() + ": kappa^(1/alpha) has a non-integrable left tail");
    }
    const auto bps = kappa.breakpoints();
    double value = 0.0;
    try {
        value = integrate(g, d, bps, tol).value;
    } catch (const NonConvergence& e) {
        throw NonIntegrableQuantizer(kappa.name() + ": mass integral does not converge (" + e.what() + ")");
    }
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw NonIntegrableQuantizer(kappa.name() + ": mass is not a positive finite number");
    }
    return value;
}

bool declared_nonincreasing(const WeightFunction& kappa) {
    const auto m = kappa.monotonicity();
    if (m == Monotonicity::NonincreasingHalfLine) return true;
    // An even unimodal function restricted to [0, inf) is nonincreasing.
    return m == Monotonicity::SymmetricUnimodal && kappa.domain().lo >= 0.0;
}

// Generic inversion of the cumulative mass on [lo, hi].
std::vector<double> invert_numeric(const WeightFunction& kappa, double alpha, int n, double total) {
    const Interval d = kappa.domain();
    const auto bps = kappa.breakpoints();
    const RealFn g = [&](double x) { return quantizer_density(kappa, alpha, x); };
    auto mass = [&](double a, double b) {
        if (!(b > a)) return 0.0;
        return integrate(g, {a, b}, bps, kInvertTol).value;
    };
    const double cell = total / n;

    std::vector<double> x(static_cast<std::size_t>(n) + 1);
    x[0] = d.lo;
    x[static_cast<std::size_t>(n)] = d.hi;
    for (int i = 1; i < n; ++i) {
        const double prev = x[static_cast<std::size_t>(i) - 1];
        const bool lower = 2 * i <= n;
        // Residual is increasing in t in both forms.
        const RealFn residual = lower ? RealFn([&](double t) { return mass(prev, t) - cell; })
                                      : RealFn([&](double t) {
                                            const double tail = std::isinf(d.hi) ? integrate(g, {t, d.hi}, bps, kInvertTol).value
                                                                                 : mass(t, d.hi);
                                            return (n - i) * cell - tail;
                                        });
        // g nonincreasing, so prev + cell/g(prev) does not overshoot.
        double step = cell / std::max(g(prev), 1e-300);
        double a = prev;
        double b = std::min(prev + step, d.hi);
        double fb = residual(b);
        while (fb < 0.0) {
            if (b >= d.hi) throw NonConvergence("knot inversion: target mass not reached inside the domain");
            a = b;
            step *= 2.0;
            b = std::isinf(d.hi) ? b + step : std::min(b + step, d.hi);
            if (!std::isfinite(b)) throw NonConvergence("knot inversion: bracket grew without bound");
            fb = residual(b);
        }
        x[static_cast<std::size_t>(i)] = fb == 0.0 ? b : find_root(residual, {a, b}, Tolerance(1e-14, 0.0));
        if (!(x[static_cast<std::size_t>(i)] > prev)) {
            throw NonConvergence("knot inversion: knots failed to increase");
        }
    }
    return x;
}

void require_n(int n) {
    if (n < 1) throw ParameterOutOfRange("n must be a positive integer");
}

void require_alpha(double alpha) {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) throw ParameterOutOfRange("alpha must be positive");
}

}  // namespace

double quantizer_density(const WeightFunction& kappa, double alpha, double x) {
    return std::exp(kappa.log_value(x) / alpha);
}

double quantizer_mass(const WeightFunction& kappa, double alpha, MassMethod method, const Tolerance& tol) {
    require_alpha(alpha);
    if (method == MassMethod::Auto) {
        if (const auto m = closed_form_mass(kappa, alpha)) return *m;
    }
    return numeric_mass(kappa, alpha, tol);
}

KnotVector knots_lognormal(double c, double alpha, double mu, int n) {
    require_n(n);
    require_alpha(alpha);
    if (!(c > alpha)) throw ParameterOutOfRange("log-normal quantizer needs c > alpha");
    const double em = std::exp(mu);
    KnotVector kv;
    kv.alpha = alpha;
    kv.quantizer = WeightFunction::lognormal_quantizer(c, mu);
    kv.total_mass = c / (c - alpha) * em;
    kv.mass_per_cell = kv.total_mass / n;
    kv.closed_form = true;
    kv.knots.resize(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i < n; ++i) {
        const double frac = static_cast<double>(i) / n;
        // Linear while the mass fits into the flat part [0, e^mu].
        if (i * c <= n * (c - alpha)) {
            kv.knots[static_cast<std::size_t>(i)] = c / (c - alpha) * em * frac;
        } else {
            kv.knots[static_cast<std::size_t>(i)] =
                em * std::pow(alpha / c * n / static_cast<double>(n - i), alpha / (c - alpha));
        }
    }
    kv.knots[static_cast<std::size_t>(n)] = kInf;
    return kv;
}

KnotVector knots_halfline(const WeightFunction& kappa_in, double alpha, int n, MassMethod method) {
    require_n(n);
    require_alpha(alpha);
    WeightFunction kappa = kappa_in;
    if (std::isinf(kappa.domain().lo)) {
        if (!(kappa.domain().hi > 0.0)) throw ParameterOutOfRange("quantizer domain does not meet [0, inf)");
        kappa = kappa.with_domain({0.0, kappa.domain().hi});
    }
    if (!declared_nonincreasing(kappa)) {
        throw MonotonicityUndeclared(kappa.name() + " is not declared nonincreasing on its half line");
    }

    using namespace family;
    const auto& f = kappa.family();
    if (method == MassMethod::Auto && is_half_line(kappa.domain())) {
        if (const auto* k = std::get_if<LogNormalQuantizer>(&f)) {
            if (k->c <= alpha) throw NonIntegrableQuantizer("kappa_c^(1/alpha) is not integrable for c <= alpha");
            return knots_lognormal(k->c, alpha, k->mu, n);
        }
        const auto* e = std::get_if<ExponentialKernel>(&f);
        const auto* s = std::get_if<StudentQuantizer>(&f);
        if (e || s) {
            KnotVector kv;
            kv.alpha = alpha;
            kv.quantizer = kappa;
            kv.total_mass = quantizer_mass(kappa, alpha);
            kv.mass_per_cell = kv.total_mass / n;
            kv.closed_form = true;
            kv.knots.resize(static_cast<std::size_t>(n) + 1);
            for (int i = 0; i < n; ++i) {
                const double l = std::log1p(-static_cast<double>(i) / n);
                kv.knots[static_cast<std::size_t>(i)] = e ? -(alpha / e->a) * l : std::expm1(-alpha / (s->a - alpha) * l);
            }
            kv.knots[static_cast<std::size_t>(n)] = kInf;
            return kv;
        }
    }

    KnotVector kv;
    kv.alpha = alpha;
    kv.quantizer = kappa;
    kv.total_mass = quantizer_mass(kappa, alpha, method);
    kv.mass_per_cell = kv.total_mass / n;
    kv.knots = invert_numeric(kappa, alpha, n, kv.total_mass);
    return kv;
}

KnotVector knots_realline(const WeightFunction& kappa, double alpha, int n, MassMethod method) {
    require_n(n);
    if (!is_real_line(kappa.domain())) throw ParameterOutOfRange("real-line knots need a quantizer on R");
    if (kappa.monotonicity() != Monotonicity::SymmetricUnimodal) {
        throw MonotonicityUndeclared(kappa.name() + " is not declared symmetric unimodal");
    }
    // The mass condition with i/(2n) on R is the half-line condition with i/n.
    const KnotVector half = knots_halfline(kappa.with_domain(Interval::half_line()), alpha, n, method);
    KnotVector kv;
    kv.alpha = alpha;
    kv.quantizer = kappa;
    kv.closed_form = half.closed_form;
    kv.total_mass = 2.0 * half.total_mass;
    kv.mass_per_cell = half.mass_per_cell;
    kv.knots.reserve(2 * half.knots.size() - 1);
    for (std::size_t i = half.knots.size(); i-- > 1;) kv.knots.push_back(-half.knots[i]);
    kv.knots.insert(kv.knots.end(), half.knots.begin(), half.knots.end());
    return kv;
}

std::vector<double> cell_masses(const KnotVector& kv, const Tolerance& tol) {
    const RealFn g = [&](double x) { return quantizer_density(kv.quantizer, kv.alpha, x); };
    const auto bps = kv.quantizer.breakpoints();
    std::vector<double> out;
    out.reserve(kv.cells());
    for (std::size_t i = 1; i < kv.knots.size(); ++i) {
        out.push_back(integrate(g, {kv.knots[i - 1], kv.knots[i]}, bps, tol).value);
    }
    return out;
}

double equal_mass_deviation(const KnotVector& kv, const Tolerance& tol) {
    double worst = 0.0;
    for (double m : cell_masses(kv, tol)) worst = std::max(worst, std::abs(m / kv.mass_per_cell - 1.0));
    return worst;
}

}  // namespace wquant
