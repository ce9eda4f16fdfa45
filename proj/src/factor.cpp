#include "wquant/factor.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

#include "wquant/errors.hpp"

namespace wquant {

namespace {

constexpr double kPi = std::numbers::pi;
const double kSqrt2Pi = std::sqrt(2.0 * kPi);

void require_positive(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) throw ParameterOutOfRange(std::string(what) + " must be positive");
}

// log(1 + e^x) without overflow.
double log1p_exp(double x) { return x > 30.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x)); }

// x^x with 0^0 = 1.
double self_power(double x) { return x == 0.0 ? 1.0 : std::pow(x, x); }

FactorReport assemble(double kappa_mass_alpha, double omega_mass_alpha, double fctr, FactorKind kind,
                      std::string family) {
    FactorReport r;
    r.kappa_mass_alpha = kappa_mass_alpha;
    r.omega_mass_alpha = omega_mass_alpha;
    r.fctr = fctr;
    r.e_pq = fctr * omega_mass_alpha / kappa_mass_alpha;
    r.kind = kind;
    r.family = std::move(family);
    return r;
}

nlohmann::json number_or_inf(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
}

// Samples log(omega/kappa) far out to tell a bounded ratio from an unbounded one.
double log_ratio(const WeightFunction& omega, const WeightFunction& kappa, double x) {
    const double lo = omega.log_value(x);
    if (lo == -kInf) return -kInf;
    return lo - kappa.log_value(x);
}

}  // namespace

std::string to_string(FactorKind kind) {
    switch (kind) {
        case FactorKind::ExactClosedForm: return "exact-closed-form";
        case FactorKind::Numeric: return "numeric";
        case FactorKind::UpperBound: return "upper-bound";
    }
    return "unknown";
}

nlohmann::json FactorReport::to_json() const {
    nlohmann::json j = {
        {"family", family},
        {"kind", to_string(kind)},
        {"e_pq", number_or_inf(e_pq)},
        {"kappa_mass_alpha", number_or_inf(kappa_mass_alpha)},
        {"omega_mass_alpha", number_or_inf(omega_mass_alpha)},
        {"omega_mass_is_lower_bound", omega_mass_is_lower_bound},
        {"fctr", number_or_inf(fctr)},
        {"params", params},
    };
    if (parameter) j[parameter_name] = *parameter;
    return j;
}

// ---------------------------------------------------------------------------
// Numeric path
// ---------------------------------------------------------------------------

double e_pq_numeric(const WeightFunction& omega, const WeightFunction& kappa, const ProblemExponents& exps,
                    const Tolerance& tol) {
    const Interval d = omega.domain();
    const double a = alpha(exps);
    std::vector<double> bps = omega.breakpoints();
    const auto kb = kappa.breakpoints();
    bps.insert(bps.end(), kb.begin(), kb.end());

    std::vector<double> far_sides;
    if (std::isinf(d.hi)) far_sides.push_back(1.0);
    if (std::isinf(d.lo)) far_sides.push_back(-1.0);
    const double near_t = std::ldexp(1.0, 10);
    const double far_t = std::ldexp(1.0, 20);

    if (exps.p_le_q()) {
        const auto L = [&](double x) { return std::max(log_ratio(omega, kappa, x), -1e300); };
        double best = -kInf;
        for (double s : far_sides) {
            const double near = L(s * near_t);
            const double far = L(s * far_t);
            if (far - near > std::log(1.1)) return kInf;
            best = std::max(best, far);
        }
        best = std::max(best, sup_on(L, d, tol));
        return std::exp(best);
    }

    const double g = exps.gap();
    const double log_mk = std::log(quantizer_mass(kappa, a, MassMethod::Numeric));
    const auto log_h = [&](double x) {
        const double lk = kappa.log_value(x);
        const double lw = omega.log_value(x);
        if (lw == -kInf) return -kInf;
        return lk / a - log_mk + (lw - lk) / g;
    };
    for (double s : far_sides) {
        const double near = std::log(near_t) + log_h(s * near_t);
        const double far = std::log(far_t) + log_h(s * far_t);
        if (far > -700.0 && far >= near) return kInf;
    }
    const auto h = [&](double x) {
        const double v = log_h(x);
        if (v > 700.0) throw DomainError("E integrand overflows at x = " + std::to_string(x));
        return std::exp(v);
    };
    double integral = 0.0;
    try {
        integral = integrate(h, d, bps, tol).value;
    } catch (const NonConvergence&) {
        return kInf;
    }
    return std::pow(integral, g);
}

FactorReport fctr_numeric(const WeightFunction& rho, const WeightFunction& psi, const WeightFunction& kappa,
                          const ProblemExponents& exps, const Tolerance& tol) {
    const WeightFunction omega = omega_of(rho, psi);
    const double a = alpha(exps);
    FactorReport r;
    r.family = "numeric";
    r.kind = FactorKind::Numeric;
    r.kappa_mass_alpha = std::pow(quantizer_mass(kappa, a, MassMethod::Numeric), a);
    r.omega_mass_alpha = std::pow(quantizer_mass(omega, a, MassMethod::Numeric), a);
    r.e_pq = e_pq_numeric(omega, kappa, exps, tol);
    r.fctr = r.kappa_mass_alpha / r.omega_mass_alpha * r.e_pq;
    r.params = {{"rho", rho.to_json()}, {"psi", psi.to_json()}, {"kappa", kappa.to_json()},
                {"exponents", to_json(exps)}};
    return r;
}

// ---------------------------------------------------------------------------
// Closed forms
// ---------------------------------------------------------------------------

double fctr_example_gaussian_variance(double sigma2) {
    require_positive(sigma2, "sigma^2");
    if (sigma2 <= 0.5) return kInf;
    return sigma2 / std::sqrt(2.0 * sigma2 - 1.0);
}

double gauss_gauss_a_star(double sigma, double lambda, double alpha) {
    return std::sqrt(alpha * (1.0 / (sigma * sigma) - 1.0 / (lambda * lambda)));
}

FactorReport fctr_gauss_gauss(double sigma, double lambda, const ProblemExponents& exps, std::optional<double> a) {
    require_positive(sigma, "sigma");
    if (!(lambda > sigma)) throw ParameterOutOfRange("Gaussian/Gaussian needs lambda > sigma");
    const double al = alpha(exps);
    const double d = 1.0 / (sigma * sigma) - 1.0 / (lambda * lambda);
    const double omega_mass = std::pow(2.0 * kPi * al / d, 0.5 * al) / (sigma * kSqrt2Pi);

    double fctr = 0.0;
    double av = 0.0;
    if (exps.p_le_q()) {
        av = a.value_or(gauss_gauss_a_star(sigma, lambda, al));
        require_positive(av, "a");
        if (!a) {
            fctr = std::pow(2.0 * std::numbers::e / kPi, 0.5 * al);
        } else {
            fctr = std::exp(al * std::log(2.0 * al / av) + 0.5 * al * std::log(d / (2.0 * kPi * al)) +
                            av * av / (2.0 * d));
        }
    } else {
        if (!a) throw ParameterOutOfRange("Gaussian/Gaussian with p > q needs the quantizer parameter a");
        av = *a;
        require_positive(av, "a");
        const double r = exps.r;
        const double g = al - r;
        const double z = av * r / (al * std::sqrt(2.0 * g * d));
        fctr = std::exp(0.5 * r * std::log(2.0 * al * d / (kPi * av * av)) + 0.5 * g * std::log(g / al) +
                        av * av * r * r / (2.0 * al * al * d) + g * std::log1p(erf(z)));
    }
    FactorReport rep = assemble(std::pow(2.0 * al / av, al), omega_mass, fctr, FactorKind::ExactClosedForm,
                                "gauss-gauss");
    rep.parameter_name = "a";
    rep.parameter = av;
    rep.params = {{"sigma", sigma}, {"lambda", lambda}, {"exponents", to_json(exps)}};
    return rep;
}

double gauss_exp_a_star(double sigma, double lambda, double alpha) {
    return (std::sqrt(1.0 + 4.0 * alpha * lambda * lambda / (sigma * sigma)) - 1.0) / (2.0 * lambda);
}

namespace {

double gauss_exp_omega_mass_alpha(double sigma, double lambda, double al) {
    return std::exp(sigma * sigma / (2.0 * lambda * lambda)) / (sigma * kSqrt2Pi) *
           std::pow(sigma * std::sqrt(2.0 * kPi * al) * (1.0 + erf(sigma / (lambda * std::sqrt(2.0 * al)))), al);
}

}  // namespace

FactorReport fctr_gauss_exp(double sigma, double lambda, const ProblemExponents& exps, std::optional<double> a) {
    require_positive(sigma, "sigma");
    require_positive(lambda, "lambda");
    const double al = alpha(exps);
    const double omega_mass = gauss_exp_omega_mass_alpha(sigma, lambda, al);
    double av = 0.0;
    double fctr = 0.0;
    if (exps.p_le_q()) {
        av = a.value_or(gauss_exp_a_star(sigma, lambda, al));
        require_positive(av, "a");
        const double w = av + 1.0 / lambda;
        const double sup = std::exp(0.5 * sigma * sigma * w * w) / (sigma * kSqrt2Pi);
        fctr = std::pow(2.0 * al / av, al) * sup / omega_mass;
    } else {
        if (!a) throw ParameterOutOfRange("Gaussian/exponential with p > q needs the quantizer parameter a");
        av = *a;
        require_positive(av, "a");
        const double r = exps.r;
        const double g = al - r;
        const double u = av * r / al + 1.0 / lambda;
        fctr = std::exp(al * std::log(std::sqrt(2.0 * al / kPi) / (av * sigma)) +
                        0.5 * g * std::log(av * av * kPi * sigma * sigma * g / (2.0 * al * al)) +
                        0.5 * sigma * sigma * (u * u - 1.0 / (lambda * lambda)) +
                        g * std::log1p(erf(sigma * u / std::sqrt(2.0 * g))) -
                        al * std::log1p(erf(sigma / (lambda * std::sqrt(2.0 * al)))));
    }
    FactorReport rep = assemble(std::pow(2.0 * al / av, al), omega_mass, fctr, FactorKind::ExactClosedForm,
                                "gauss-exp");
    rep.parameter_name = "a";
    rep.parameter = av;
    rep.params = {{"sigma", sigma}, {"lambda", lambda}, {"exponents", to_json(exps)}};
    return rep;
}

double fctr_gauss_exp_published(double sigma, double lambda, double alpha) {
    require_positive(sigma, "sigma");
    require_positive(lambda, "lambda");
    const double as = gauss_exp_a_star(sigma, lambda, alpha);
    const double z = sigma / std::sqrt(2.0 * alpha * lambda);
    return std::pow(std::sqrt(2.0 * alpha / kPi) / (as * sigma * (1.0 + erf(z))), alpha) *
           std::exp(0.5 * sigma * sigma * as * (as + 2.0 / lambda));
}

double solve_c_star(double alpha, double sigma) {
    require_positive(alpha, "alpha");
    require_positive(sigma, "sigma");
    const double rhs = alpha * alpha / (sigma * sigma);
    const auto f = [&](double c) { return c * (c - 1.0) * (c - alpha) - rhs; };
    const double lo = std::max(alpha, 1.0);
    double hi = lo + 1.0;
    while (f(hi) <= 0.0) {
        hi = lo + 2.0 * (hi - lo);
        if (!std::isfinite(hi)) throw NonConvergence("solve_c_star: bracket grew without bound");
    }
    return find_root(f, {lo, hi}, Tolerance(1e-14, 0.0));
}

namespace {

double lognormal_omega_mass_alpha(double sigma, double mu, double al) {
    return std::pow(sigma * std::sqrt(2.0 * kPi * al), al) / (sigma * kSqrt2Pi) *
           std::exp(0.5 * sigma * sigma * (al - 1.0) * (al - 1.0) + mu * (al - 1.0));
}

void require_lognormal(double sigma, double alpha) {
    require_positive(sigma, "sigma");
    if (!(alpha >= 1.0)) throw ParameterOutOfRange("log-normal closed forms need alpha >= 1");
}

}  // namespace

FactorReport fctr_lognormal_pleq(double sigma, double mu, double alpha, std::optional<double> c) {
    require_lognormal(sigma, alpha);
    double cv = 0.0;
    if (c) {
        cv = *c;
    } else if (alpha >= 2.0 || 2.0 * (2.0 - alpha) <= alpha * alpha / (sigma * sigma)) {
        cv = solve_c_star(alpha, sigma);
    } else {
        cv = 2.0;
    }
    if (!(cv > alpha)) throw ParameterOutOfRange("log-normal quantizer needs c > alpha");
    const double top = std::max(1.0, (cv - 1.0) * (cv - 1.0));
    const double fctr = std::exp(alpha * std::log(cv / ((cv - alpha) * sigma * std::sqrt(2.0 * kPi * alpha))) +
                                 0.5 * sigma * sigma * (top - (alpha - 1.0) * (alpha - 1.0)));
    FactorReport rep = assemble(std::pow(cv / (cv - alpha), alpha) * std::exp(alpha * mu),
                                lognormal_omega_mass_alpha(sigma, mu, alpha), fctr, FactorKind::ExactClosedForm,
                                "lognormal");
    rep.parameter_name = "c";
    rep.parameter = cv;
    rep.params = {{"sigma", sigma}, {"mu", mu}, {"alpha", alpha}, {"regime", "p<=q"}};
    return rep;
}

namespace {

double lognormal_int_value(double sigma, double alpha, double c) {
    const double ca = c - alpha;
    const double z = sigma * (alpha - 1.0) * c / (alpha * std::sqrt(2.0));
    // 1 - erf(-z) = 1 + erf(z); the sum is evaluated in logs.
    const double tail = log1p_exp(z * z + std::log1p(erf(z)));
    return std::exp(std::log(ca * sigma * kSqrt2Pi / (2.0 * c)) +
                    alpha * std::log(c / (ca * sigma * std::sqrt(2.0 * kPi * alpha))) -
                    0.5 * sigma * sigma * (alpha - 1.0) * (alpha - 1.0) + tail);
}

}  // namespace

FactorReport fctr_lognormal_int(double sigma, double mu, double alpha, std::optional<double> c) {
    require_lognormal(sigma, alpha);
    double cv = 0.0;
    double fctr = 0.0;
    if (c) {
        cv = *c;
        if (!(cv > alpha)) throw ParameterOutOfRange("log-normal quantizer needs c > alpha");
        fctr = lognormal_int_value(sigma, alpha, cv);
    } else {
        const Minimum m = minimize_scalar([&](double t) { return lognormal_int_value(sigma, alpha, t); },
                                          {alpha, alpha + 20.0}, Tolerance(1e-12, 1e-14));
        cv = m.argmin;
        fctr = m.value;
    }
    FactorReport rep = assemble(std::pow(cv / (cv - alpha), alpha) * std::exp(alpha * mu),
                                lognormal_omega_mass_alpha(sigma, mu, alpha), fctr, FactorKind::ExactClosedForm,
                                "lognormal");
    rep.parameter_name = "c";
    rep.parameter = cv;
    rep.params = {{"sigma", sigma}, {"mu", mu}, {"alpha", alpha}, {"regime", "p=inf,q=1"}};
    return rep;
}

double logistic_a_opt(double lambda, double b, double alpha) {
    require_positive(lambda, "lambda");
    require_positive(alpha, "alpha");
    if (!(b >= 0.0) || !(lambda > b)) throw ParameterOutOfRange("logistic family needs 0 <= b < lambda");
    const double beta = b / lambda;
    const double top = 1.0 - beta;
    const auto f = [&](double x) { return x * (std::log1p(beta + x) - std::log1p(-beta - x)) - alpha; };
    // f(0) = -alpha < 0 and f -> +inf at the right end.
    double hi = top * (1.0 - 1e-3);
    while (f(hi) <= 0.0) {
        hi = top - 0.5 * (top - hi);
        if (!(hi < top)) throw NonConvergence("logistic optimum: no sign change below 1 - b/lambda");
    }
    return lambda * find_root(f, {0.0, hi}, Tolerance(1e-14, 0.0));
}

FactorReport fctr_bound_logistic(double lambda, double b, double alpha, std::optional<double> a) {
    require_positive(lambda, "lambda");
    require_positive(alpha, "alpha");
    if (!(b >= 0.0) || !(lambda > b)) throw ParameterOutOfRange("logistic family needs 0 <= b < lambda");
    const double av = a ? *a : logistic_a_opt(lambda, b, alpha);
    require_positive(av, "a");
    if (av + b > lambda) throw ParameterOutOfRange("logistic family needs a + b <= lambda");
    const double u = (av + b) / lambda;
    const double sup = 0.25 * lambda * self_power(1.0 + u) * self_power(1.0 - u);
    const double kappa_mass = std::pow(2.0 * alpha / av, alpha);
    const double omega_lb = lambda * std::pow(alpha / lambda, alpha);
    FactorReport rep;
    rep.family = "logistic";
    rep.kind = FactorKind::UpperBound;
    rep.e_pq = sup;
    rep.kappa_mass_alpha = kappa_mass;
    rep.omega_mass_alpha = omega_lb;
    rep.omega_mass_is_lower_bound = true;
    rep.fctr = kappa_mass / omega_lb * sup;
    rep.parameter_name = "a";
    rep.parameter = av;
    rep.params = {{"lambda", lambda}, {"b", b}, {"alpha", alpha}};
    return rep;
}

double student_T(double nu) {
    require_positive(nu, "nu");
    return std::exp(log_gamma(0.5 * (nu + 1.0)) - log_gamma(0.5 * nu) - 0.5 * std::log(nu * kPi));
}

namespace {

double student_bound_value(double nu, double b, double alpha, double a, double& sup_out) {
    const double top = nu + 1.0 - b;
    const double mu = (top - alpha) / alpha;
    const double tnu = student_T(nu);
    const double tmu = student_T(mu);
    double log_sup_over_t = 0.0;
    if (std::abs(a - top) <= 1e-12 * top) {
        log_sup_over_t = 0.5 * top * std::log1p(nu);
    } else {
        const double xs = (std::sqrt(top * top + 4.0 * a * nu * (top - a)) - top) / (2.0 * (top - a));
        log_sup_over_t = a * std::log1p(xs) - 0.5 * top * std::log1p(xs * xs / nu);
    }
    sup_out = tnu * std::exp(log_sup_over_t);
    // kappa mass / omega mass = (2 alpha T_mu sqrt(mu/nu) / (a - alpha))^alpha / T_nu.
    return std::exp(log_sup_over_t + alpha * std::log(2.0 * alpha * tmu * std::sqrt(mu / nu) / (a - alpha)));
}

}  // namespace

FactorReport fctr_bound_student(double nu, double b, double alpha, std::optional<double> a, bool p_le_q) {
    require_positive(nu, "nu");
    require_positive(alpha, "alpha");
    if (!(b >= 0.0)) throw ParameterOutOfRange("b must be >= 0");
    const double top = nu + 1.0 - b;
    if (!(top > alpha)) throw ParameterOutOfRange("Student family needs nu + 1 - b > alpha");
    double av = 0.0;
    double sup = 0.0;
    double fctr = kInf;
    if (a) {
        av = *a;
        if (!(av > alpha) || av > top * (1.0 + 1e-12)) {
            throw ParameterOutOfRange("Student family needs alpha < a <= nu + 1 - b");
        }
        fctr = student_bound_value(nu, b, alpha, av, sup);
    } else {
        for (int k = 1;; ++k) {
            const double cand = alpha + k / 10.0;
            if (cand > top + 1e-12) break;
            double s = 0.0;
            const double v = student_bound_value(nu, b, alpha, std::min(cand, top), s);
            if (v < fctr) {
                fctr = v;
                av = std::min(cand, top);
                sup = s;
            }
        }
        if (std::isinf(fctr)) throw ParameterOutOfRange("no grid value a = alpha + k/10 fits below nu + 1 - b");
    }
    const double mu = (top - alpha) / alpha;
    FactorReport rep;
    rep.family = "student";
    rep.kind = p_le_q ? FactorKind::ExactClosedForm : FactorKind::UpperBound;
    rep.kappa_mass_alpha = std::pow(2.0 * alpha / (av - alpha), alpha);
    rep.omega_mass_alpha = student_T(nu) * std::pow(std::sqrt(nu) / (student_T(mu) * std::sqrt(mu)), alpha);
    rep.e_pq = sup;
    rep.fctr = fctr;
    rep.parameter_name = "a";
    rep.parameter = av;
    rep.params = {{"nu", nu}, {"b", b}, {"alpha", alpha}, {"p_le_q", p_le_q}};
    return rep;
}

double theorem1_bound(const ProblemExponents& exps, double kappa_mass_alpha, double e_pq, std::size_t cells,
                      double seminorm) {
    if (cells == 0) throw ParameterOutOfRange("theorem bound needs at least one cell");
    if (std::isinf(e_pq)) throw InfiniteFactor("E_p^q is infinite; the error bound is vacuous");
    if (seminorm == 0.0) return 0.0;
    return c1_constant(exps) * kappa_mass_alpha * e_pq * seminorm *
           std::pow(static_cast<double>(cells), exps.rate());
}

double theorem1_bound(const WeightFunction& rho, const WeightFunction& psi, const WeightFunction& kappa,
                      const ProblemExponents& exps, std::size_t cells, double seminorm, const Tolerance& tol) {
    const WeightFunction omega = omega_of(rho, psi);
    const double a = alpha(exps);
    const double km = std::pow(quantizer_mass(kappa, a), a);
    return theorem1_bound(exps, km, e_pq_numeric(omega, kappa, exps, tol), cells, seminorm);
}

// ---------------------------------------------------------------------------
// Published tables
// ---------------------------------------------------------------------------

std::string round3(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

bool TableCell::matches() const { return round3(value) == round3(published); }

std::vector<TableCell> published_tables() {
    std::vector<TableCell> out;
    auto add = [&](std::string table, std::string row, std::string col, double published, double value,
                   std::optional<double> def = std::nullopt) {
        out.push_back({std::move(table), std::move(row), std::move(col), published, value, def});
    };
    auto fmt = [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%g", v);
        return std::string(buf);
    };
    const Exponent inf = Exponent::infinity();
    const Exponent one(1.0);
    const Exponent two(2.0);

    // Gaussian/Gaussian, p <= q at a*.
    {
        const double pub[] = {1.315, 1.731, 2.276, 2.995};
        for (int al = 1; al <= 4; ++al) {
            const ProblemExponents e(one, one, al);
            add("gauss-gauss-pleq", "a=a*", "alpha=" + std::to_string(al), pub[al - 1],
                fctr_gauss_gauss(1.0, 2.0, e).fctr);
        }
    }
    // Gaussian/Gaussian, q = 1 < p, sigma = 1, lambda = 2.
    {
        struct Row {
            Exponent p;
            int r;
            double pub[4];
        };
        const Row rows[] = {{two, 1, {1.135, 1.476, 4.361, 26.036}},
                            {two, 2, {1.645, 1.552, 5.836, 65.061}},
                            {inf, 1, {1.172, 1.179, 1.979, 4.920}},
                            {inf, 2, {1.733, 1.269, 2.617, 11.826}}};
        for (const auto& row : rows) {
            const ProblemExponents e(row.p, one, row.r);
            for (int a = 1; a <= 4; ++a) {
                add("gauss-gauss-pgtq", "p=" + row.p.str() + ",r=" + std::to_string(row.r), "a=" + std::to_string(a),
                    row.pub[a - 1], fctr_gauss_gauss(1.0, 2.0, e, a).fctr);
            }
        }
    }
    // Gaussian/exponential, p <= q at a*, sigma = 1.
    {
        const double lambdas[] = {1, 5, 10, 20, 30, 100};
        const double pub[2][6] = {{1.723, 1.183, 1.162, 1.174, 1.188, 1.231},
                                  {2.468, 1.460, 1.436, 1.465, 1.491, 1.573}};
        for (int al = 1; al <= 2; ++al) {
            for (int j = 0; j < 6; ++j) {
                const ProblemExponents e(one, one, al);
                add("gauss-exp-pleq", "alpha=" + std::to_string(al), "lambda=" + fmt(lambdas[j]), pub[al - 1][j],
                    fctr_gauss_exp_published(1.0, lambdas[j], al), fctr_gauss_exp(1.0, lambdas[j], e).fctr);
            }
        }
    }
    // Gaussian/exponential, q = 1 < p, sigma = 1.
    {
        struct Row {
            Exponent p;
            int r;
            double lambda;
            double pub[4];
        };
        const Row rows[] = {{two, 1, 1, {1.273, 2.426, 9.570, 66.233}},  {two, 1, 2, {1.181, 1.642, 4.652, 23.070}},
                            {two, 2, 1, {1.747, 2.546, 12.473, 146.677}}, {two, 2, 2, {1.747, 1.729, 5.683, 44.797}},
                            {inf, 1, 1, {1.203, 1.512, 3.156, 9.409}},    {inf, 1, 2, {1.199, 1.242, 2.081, 4.888}},
                            {inf, 2, 1, {1.724, 1.700, 4.509, 23.434}},   {inf, 2, 2, {1.827, 1.366, 2.647, 9.897}}};
        for (const auto& row : rows) {
            const ProblemExponents e(row.p, one, row.r);
            for (int a = 1; a <= 4; ++a) {
                add("gauss-exp-pgtq",
                    "p=" + row.p.str() + ",r=" + std::to_string(row.r) + ",lambda=" + fmt(row.lambda),
                    "a=" + std::to_string(a), row.pub[a - 1], fctr_gauss_exp(1.0, row.lambda, e, a).fctr);
            }
        }
    }
    // Log-normal, p <= q.
    {
        const double pub[2][3] = {{1.315, 2.948, 23.941}, {2.988, 4.615, 7.573}};
        for (int al = 1; al <= 2; ++al) {
            for (int s = 1; s <= 3; ++s) {
                add("lognormal-pleq", "alpha=" + std::to_string(al), "sigma=" + std::to_string(s), pub[al - 1][s - 1],
                    fctr_lognormal_pleq(s, 0.0, al).fctr);
            }
        }
    }
    // Log-normal, p = inf, q = 1, sigma = 1, optimized c.
    {
        const double alphas[] = {1.5, 2, 2.5, 3, 3.5};
        const double pub_f[] = {1.058, 1.224, 1.594, 2.314, 3.648};
        const double pub_c[] = {2.555, 2.973, 3.422, 3.899, 4.392};
        for (int j = 0; j < 5; ++j) {
            const FactorReport r = fctr_lognormal_int(1.0, 0.0, alphas[j]);
            add("lognormal-int", "fctr", "alpha=" + fmt(alphas[j]), pub_f[j], r.fctr);
            add("lognormal-int", "c*", "alpha=" + fmt(alphas[j]), pub_c[j], *r.parameter);
        }
    }
    // Logistic bound, alpha = b = 1.
    {
        const double lambdas[] = {2, 5, 10, 15};
        const double pub[] = {3.341, 1.710, 1.431, 1.353};
        for (int j = 0; j < 4; ++j) {
            add("logistic", "bound", "lambda=" + fmt(lambdas[j]), pub[j],
                fctr_bound_logistic(lambdas[j], 1.0, 1.0).fctr);
        }
    }
    // Student.
    {
        const double triples[4][3] = {{3, 2, 1}, {4, 2, 2}, {5, 3, 2}, {6, 3, 3}};
        const double pub[] = {1.427, 1.626, 1.710, 1.861};
        for (int j = 0; j < 4; ++j) {
            const auto& t = triples[j];
            add("student", "fctr", "(nu,b,alpha)=(" + fmt(t[0]) + "," + fmt(t[1]) + "," + fmt(t[2]) + ")", pub[j],
                fctr_bound_student(t[0], t[1], t[2]).fctr);
        }
    }
    return out;
}

}  // namespace wquant
