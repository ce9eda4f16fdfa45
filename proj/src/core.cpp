#include "wquant/core.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "wquant/errors.hpp"

namespace wquant {

// ---------------------------------------------------------------------------
// Exponents
// ---------------------------------------------------------------------------

Exponent::Exponent(double value) {
    if (std::isinf(value) && value > 0) {
        infinite_ = true;
        return;
    }
    if (!(value >= 1.0)) throw ParameterOutOfRange("exponent must lie in [1, inf]");
    value_ = value;
}

Exponent Exponent::infinity() {
    Exponent e;
    e.infinite_ = true;
    return e;
}

Exponent Exponent::conjugate() const {
    if (infinite_) return Exponent(1.0);
    if (value_ == 1.0) return infinity();
    return Exponent(value_ / (value_ - 1.0));
}

std::string Exponent::str() const {
    if (infinite_) return "inf";
    std::ostringstream os;
    os << value_;
    return os.str();
}

Exponent Exponent::parse(const std::string& text) {
    if (text == "inf" || text == "infinity" || text == "Inf") return infinity();
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        throw ParameterOutOfRange("cannot parse exponent '" + text + "'");
    }
    if (used != text.size()) throw ParameterOutOfRange("cannot parse exponent '" + text + "'");
    return Exponent(v);
}

bool operator<=(const Exponent& a, const Exponent& b) {
    if (b.infinite_) return true;
    if (a.infinite_) return false;
    return a.value_ <= b.value_;
}

bool operator==(const Exponent& a, const Exponent& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
    return a.value_ == b.value_;
}

ProblemExponents::ProblemExponents(Exponent p_, Exponent q_, int r_) : p(p_), q(q_), r(r_) {
    if (r < 1) throw ParameterOutOfRange("smoothness r must be a positive integer");
    if (!(r - p.reciprocal() + q.reciprocal() > 0.0)) {
        throw ParameterOutOfRange("alpha = r - 1/p + 1/q must be positive (p=1, q=inf, r=1 is excluded)");
    }
}

double ProblemExponents::rate() const {
    return -static_cast<double>(r) + std::max(0.0, p.reciprocal() - q.reciprocal());
}

double alpha(const ProblemExponents& exps) {
    return static_cast<double>(exps.r) - exps.p.reciprocal() + exps.q.reciprocal();
}

double c1_constant(const ProblemExponents& exps) {
    double factorial = 1.0;
    for (int k = 2; k < exps.r; ++k) factorial *= k;
    const Exponent pstar = exps.p.conjugate();
    double root = 1.0;
    if (!pstar.is_infinite()) {
        root = std::pow((exps.r - 1) * pstar.value() + 1.0, 1.0 / pstar.value());
    }
    return 1.0 / (factorial * root);
}

nlohmann::json to_json(const ProblemExponents& exps) {
    return {{"p", exps.p.str()}, {"q", exps.q.str()}, {"r", exps.r}, {"alpha", alpha(exps)}};
}

// ---------------------------------------------------------------------------
// Weight functions
// ---------------------------------------------------------------------------

namespace {

const double kLogSqrt2Pi = 0.5 * std::log(2.0 * std::numbers::pi);

void require_positive(double v, const char* what) {
    if (!(v > 0.0)) throw ParameterOutOfRange(std::string(what) + " must be positive");
}

double student_log_norm(double nu) {
    return log_gamma(0.5 * (nu + 1.0)) - log_gamma(0.5 * nu) - 0.5 * std::log(nu * std::numbers::pi);
}

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

WeightFunction WeightFunction::gaussian_density(double sigma, double mu) {
    require_positive(sigma, "sigma");
    return {family::GaussianDensity{sigma, mu}, Interval::real_line()};
}
WeightFunction WeightFunction::exponential_kernel(double a) {
    require_positive(a, "a");
    return {family::ExponentialKernel{a}, Interval::real_line()};
}
WeightFunction WeightFunction::gaussian_shape(double lambda) {
    require_positive(lambda, "lambda");
    return {family::GaussianShape{lambda}, Interval::real_line()};
}
WeightFunction WeightFunction::exponential_shape(double lambda) {
    require_positive(lambda, "lambda");
    return {family::ExponentialShape{lambda}, Interval::real_line()};
}
WeightFunction WeightFunction::constant_one(Interval domain) { return {family::ConstantOne{}, domain}; }
WeightFunction WeightFunction::lognormal_density(double mu, double sigma) {
    require_positive(sigma, "sigma");
    return {family::LogNormalDensity{mu, sigma}, Interval::half_line()};
}
WeightFunction WeightFunction::lognormal_quantizer(double c, double mu) {
    require_positive(c, "c");
    return {family::LogNormalQuantizer{c, mu}, Interval::half_line()};
}
WeightFunction WeightFunction::logistic_density(double nu) {
    require_positive(nu, "nu");
    return {family::LogisticDensity{nu}, Interval::real_line()};
}
WeightFunction WeightFunction::exponential_shape_b(double b) {
    require_positive(b, "b");
    return {family::ExponentialShapeB{b}, Interval::real_line()};
}
WeightFunction WeightFunction::student_density(double nu) {
    require_positive(nu, "nu");
    return {family::StudentDensity{nu}, Interval::real_line()};
}
WeightFunction WeightFunction::student_shape(double nu, double b) {
    require_positive(nu, "nu");
    if (!(b >= 0.0)) throw ParameterOutOfRange("b must be >= 0");
    return {family::StudentShape{nu, b}, Interval::real_line()};
}
WeightFunction WeightFunction::student_quantizer(double a) {
    require_positive(a, "a");
    return {family::StudentQuantizer{a}, Interval::real_line()};
}
WeightFunction WeightFunction::generic(std::function<double(double)> fn, Interval domain,
                                       Monotonicity monotonicity, std::string label) {
    if (!fn) throw ParameterOutOfRange("generic weight needs a callable");
    return {family::GenericPositive{std::move(fn), monotonicity, std::move(label)}, domain};
}
WeightFunction WeightFunction::scaled(const WeightFunction& w, double factor) {
    require_positive(factor, "scale factor");
    WeightFunction out{family::Scaled{factor, std::make_shared<const WeightFunction>(w)}, w.domain()};
    out.ratio_form_ = w.ratio_form_;
    return out;
}

WeightFunction WeightFunction::with_domain(Interval domain) const {
    WeightFunction out = *this;
    out.domain_ = domain;
    return out;
}

double WeightFunction::log_unchecked(double x) const {
    using namespace family;
    return std::visit(
        overloaded{
            [&](const GaussianDensity& g) {
                const double z = (x - g.mu) / g.sigma;
                return -std::log(g.sigma) - kLogSqrt2Pi - 0.5 * z * z;
            },
            [&](const ExponentialKernel& e) { return -e.a * std::abs(x); },
            [&](const GaussianShape& g) { return -0.5 * x * x / (g.lambda * g.lambda); },
            [&](const ExponentialShape& e) { return -std::abs(x) / e.lambda; },
            [&](const ConstantOne&) { return 0.0; },
            [&](const LogNormalDensity& l) {
                if (x == 0.0) return -kInf;
                const double z = (std::log(x) - l.mu) / l.sigma;
                return -std::log(x * l.sigma) - kLogSqrt2Pi - 0.5 * z * z;
            },
            [&](const LogNormalQuantizer& k) {
                return x <= std::exp(k.mu) ? 0.0 : k.c * (k.mu - std::log(x));
            },
            [&](const LogisticDensity& l) {
                const double lam = 1.0 / l.nu;
                const double t = lam * std::abs(x);
                return std::log(lam) - t - 2.0 * std::log1p(std::exp(-t));
            },
            [&](const ExponentialShapeB& e) { return -e.b * std::abs(x); },
            [&](const StudentDensity& s) {
                return student_log_norm(s.nu) - 0.5 * (s.nu + 1.0) * std::log1p(x * x / s.nu);
            },
            [&](const StudentShape& s) { return -0.5 * s.b * std::log1p(x * x / s.nu); },
            [&](const StudentQuantizer& s) { return -s.a * std::log1p(std::abs(x)); },
            [&](const GenericPositive& g) { return std::log(g.fn(x)); },
            [&](const Ratio& r) { return r.num->log_unchecked(x) - r.den->log_unchecked(x); },
            [&](const Scaled& s) { return std::log(s.factor) + s.inner->log_unchecked(x); },
        },
        family_);
}

double WeightFunction::log_value(double x) const {
    if (!domain_.contains(x)) {
        throw DomainError(name() + ": x = " + std::to_string(x) + " outside the domain");
    }
    return log_unchecked(x);
}

double WeightFunction::value(double x) const {
    if (!domain_.contains(x)) {
        throw DomainError(name() + ": x = " + std::to_string(x) + " outside the domain");
    }
    using namespace family;
    return std::visit(
        overloaded{
            [&](const GaussianDensity& g) {
                const double z = (x - g.mu) / g.sigma;
                return std::exp(-0.5 * z * z) / (g.sigma * std::sqrt(2.0 * std::numbers::pi));
            },
            [&](const LogNormalDensity& l) {
                if (x == 0.0) return 0.0;
                const double z = (std::log(x) - l.mu) / l.sigma;
                return std::exp(-0.5 * z * z) / (x * l.sigma * std::sqrt(2.0 * std::numbers::pi));
            },
            [&](const LogisticDensity& l) {
                const double e = std::exp(-std::abs(x) / l.nu);
                return e / (l.nu * (1.0 + e) * (1.0 + e));
            },
            [&](const GenericPositive& g) { return g.fn(x); },
            [&](const Ratio& r) {
                const double n = r.num->value(x);
                const double d = r.den->value(x);
                if (std::isnormal(n) && std::isnormal(d)) return n / d;
                return std::exp(log_unchecked(x));
            },
            [&](const Scaled& s) { return s.factor * s.inner->value(x); },
            [&](const auto&) { return std::exp(log_unchecked(x)); },
        },
        family_);
}

Monotonicity WeightFunction::monotonicity() const {
    using namespace family;
    // Even functions that are nonincreasing in |x|.
    auto even = [this]() {
        if (std::isinf(domain_.lo) && std::isinf(domain_.hi)) return Monotonicity::SymmetricUnimodal;
        if (domain_.lo >= 0.0) return Monotonicity::NonincreasingHalfLine;
        return Monotonicity::None;
    };
    return std::visit(
        overloaded{
            [&](const GaussianDensity& g) {
                if (g.mu == 0.0) return even();
                return domain_.lo >= g.mu ? Monotonicity::NonincreasingHalfLine : Monotonicity::None;
            },
            [&](const LogNormalDensity&) { return Monotonicity::None; },
            [&](const LogNormalQuantizer&) {
                return domain_.lo >= 0.0 ? Monotonicity::NonincreasingHalfLine : Monotonicity::None;
            },
            [&](const GenericPositive& g) { return g.monotonicity; },
            [&](const Ratio&) {
                switch (ratio_form_) {
                    case RatioForm::GaussGauss:
                    case RatioForm::StudentStudent: return even();
                    default: return Monotonicity::None;
                }
            },
            [&](const Scaled& s) { return s.inner->with_domain(domain_).monotonicity(); },
            [&](const auto&) { return even(); },
        },
        family_);
}

std::vector<double> WeightFunction::breakpoints() const {
    using namespace family;
    return std::visit(
        overloaded{
            [](const ExponentialKernel&) { return std::vector<double>{0.0}; },
            [](const ExponentialShape&) { return std::vector<double>{0.0}; },
            [](const ExponentialShapeB&) { return std::vector<double>{0.0}; },
            [](const StudentQuantizer&) { return std::vector<double>{0.0}; },
            [](const LogNormalQuantizer& k) { return std::vector<double>{std::exp(k.mu)}; },
            [](const Ratio& r) {
                auto v = r.num->breakpoints();
                const auto w = r.den->breakpoints();
                v.insert(v.end(), w.begin(), w.end());
                return v;
            },
            [](const Scaled& s) { return s.inner->breakpoints(); },
            [](const auto&) { return std::vector<double>{}; },
        },
        family_);
}

std::string WeightFunction::name() const {
    using namespace family;
    std::ostringstream os;
    std::visit(overloaded{
                   [&](const GaussianDensity& g) { os << "gaussian(sigma=" << g.sigma << ",mu=" << g.mu << ")"; },
                   [&](const ExponentialKernel& e) { os << "exp-kernel(a=" << e.a << ")"; },
                   [&](const GaussianShape& g) { os << "gaussian-shape(lambda=" << g.lambda << ")"; },
                   [&](const ExponentialShape& e) { os << "exp-shape(lambda=" << e.lambda << ")"; },
                   [&](const ConstantOne&) { os << "one"; },
                   [&](const LogNormalDensity& l) { os << "lognormal(mu=" << l.mu << ",sigma=" << l.sigma << ")"; },
                   [&](const LogNormalQuantizer& k) { os << "lognormal-quantizer(c=" << k.c << ",mu=" << k.mu << ")"; },
                   [&](const LogisticDensity& l) { os << "logistic(nu=" << l.nu << ")"; },
                   [&](const ExponentialShapeB& e) { os << "exp-shape-b(b=" << e.b << ")"; },
                   [&](const StudentDensity& s) { os << "student(nu=" << s.nu << ")"; },
                   [&](const StudentShape& s) { os << "student-shape(nu=" << s.nu << ",b=" << s.b << ")"; },
                   [&](const StudentQuantizer& s) { os << "student-quantizer(a=" << s.a << ")"; },
                   [&](const GenericPositive& g) { os << g.label; },
                   [&](const Ratio& r) { os << "(" << r.num->name() << ")/(" << r.den->name() << ")"; },
                   [&](const Scaled& s) { os << s.factor << "*" << s.inner->name(); },
               },
               family_);
    return os.str();
}

namespace {

nlohmann::json bound_to_json(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
}

double bound_from_json(const nlohmann::json& j) {
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "inf") return kInf;
        if (s == "-inf") return -kInf;
        throw ParameterOutOfRange("bad domain bound '" + s + "'");
    }
    return j.get<double>();
}

double number(const nlohmann::json& j, const char* key) {
    if (!j.contains(key)) throw ParameterOutOfRange(std::string("weight JSON is missing '") + key + "'");
    const auto& v = j.at(key);
    if (v.is_string()) return bound_from_json(v);
    if (!v.is_number()) throw ParameterOutOfRange(std::string("weight field '") + key + "' must be a number");
    return v.get<double>();
}

double number_or(const nlohmann::json& j, const char* key, double fallback) {
    return j.contains(key) ? number(j, key) : fallback;
}

}  // namespace

nlohmann::json WeightFunction::to_json() const {
    using namespace family;
    nlohmann::json j;
    std::visit(overloaded{
                   [&](const GaussianDensity& g) { j = {{"family", "gaussian"}, {"sigma", g.sigma}, {"mu", g.mu}}; },
                   [&](const ExponentialKernel& e) { j = {{"family", "exp-kernel"}, {"a", e.a}}; },
                   [&](const GaussianShape& g) {
                       j = {{"family", "gaussian-shape"}, {"lambda", bound_to_json(g.lambda)}};
                   },
                   [&](const ExponentialShape& e) {
                       j = {{"family", "exp-shape"}, {"lambda", bound_to_json(e.lambda)}};
                   },
                   [&](const ConstantOne&) { j = {{"family", "one"}}; },
                   [&](const LogNormalDensity& l) { j = {{"family", "lognormal"}, {"mu", l.mu}, {"sigma", l.sigma}}; },
                   [&](const LogNormalQuantizer& k) {
                       j = {{"family", "lognormal-quantizer"}, {"c", k.c}, {"mu", k.mu}};
                   },
                   [&](const LogisticDensity& l) { j = {{"family", "logistic"}, {"nu", l.nu}}; },
                   [&](const ExponentialShapeB& e) { j = {{"family", "exp-shape-b"}, {"b", e.b}}; },
                   [&](const StudentDensity& s) { j = {{"family", "student"}, {"nu", s.nu}}; },
                   [&](const StudentShape& s) { j = {{"family", "student-shape"}, {"nu", s.nu}, {"b", s.b}}; },
                   [&](const StudentQuantizer& s) { j = {{"family", "student-quantizer"}, {"a", s.a}}; },
                   [&](const GenericPositive& g) { j = {{"family", "generic"}, {"label", g.label}}; },
                   [&](const Ratio& r) { j = {{"family", "ratio"}, {"num", r.num->to_json()}, {"den", r.den->to_json()}}; },
                   [&](const Scaled& s) { j = {{"family", "scaled"}, {"factor", s.factor}, {"inner", s.inner->to_json()}}; },
               },
               family_);
    j["domain"] = {bound_to_json(domain_.lo), bound_to_json(domain_.hi)};
    return j;
}

WeightFunction WeightFunction::from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("family")) {
        throw ParameterOutOfRange("weight JSON must be an object with a 'family' field");
    }
    const auto fam = j.at("family").get<std::string>();
    WeightFunction w = [&]() -> WeightFunction {
        if (fam == "gaussian") return gaussian_density(number(j, "sigma"), number_or(j, "mu", 0.0));
        if (fam == "exp-kernel") return exponential_kernel(number(j, "a"));
        if (fam == "gaussian-shape") return gaussian_shape(number(j, "lambda"));
        if (fam == "exp-shape") return exponential_shape(number(j, "lambda"));
        if (fam == "one") return constant_one();
        if (fam == "lognormal") return lognormal_density(number_or(j, "mu", 0.0), number(j, "sigma"));
        if (fam == "lognormal-quantizer") return lognormal_quantizer(number(j, "c"), number_or(j, "mu", 0.0));
        if (fam == "logistic") return logistic_density(number(j, "nu"));
        if (fam == "exp-shape-b") return exponential_shape_b(number(j, "b"));
        if (fam == "student") return student_density(number(j, "nu"));
        if (fam == "student-shape") return student_shape(number(j, "nu"), number(j, "b"));
        if (fam == "student-quantizer") return student_quantizer(number(j, "a"));
        if (fam == "ratio") return omega_of(from_json(j.at("num")), from_json(j.at("den")));
        if (fam == "scaled") return scaled(from_json(j.at("inner")), number(j, "factor"));
        throw ParameterOutOfRange("unknown weight family '" + fam + "'");
    }();
    if (j.contains("domain")) {
        const auto& d = j.at("domain");
        if (!d.is_array() || d.size() != 2) throw ParameterOutOfRange("domain must be [lo, hi]");
        w = w.with_domain(Interval(bound_from_json(d[0]), bound_from_json(d[1])));
    }
    return w;
}

WeightFunction omega_of(const WeightFunction& rho, const WeightFunction& psi) {
    using namespace family;
    if (std::holds_alternative<ConstantOne>(psi.family())) {
        WeightFunction out = rho;
        if (out.ratio_form_ == RatioForm::None) out.ratio_form_ = RatioForm::Identity;
        return out;
    }
    if (psi.domain().lo > rho.domain().lo || psi.domain().hi < rho.domain().hi) {
        throw ParameterOutOfRange("omega_of: psi must be defined on rho's domain");
    }
    WeightFunction out{Ratio{std::make_shared<const WeightFunction>(rho), std::make_shared<const WeightFunction>(psi)},
                       rho.domain()};
    const auto& rf = rho.family();
    const auto& pf = psi.family();
    if (std::holds_alternative<GaussianDensity>(rf) && std::get<GaussianDensity>(rf).mu == 0.0) {
        if (std::holds_alternative<GaussianShape>(pf)) out.ratio_form_ = RatioForm::GaussGauss;
        if (std::holds_alternative<ExponentialShape>(pf)) out.ratio_form_ = RatioForm::GaussExp;
    } else if (std::holds_alternative<LogisticDensity>(rf) && std::holds_alternative<ExponentialShapeB>(pf)) {
        out.ratio_form_ = RatioForm::LogisticExp;
    } else if (std::holds_alternative<StudentDensity>(rf) && std::holds_alternative<StudentShape>(pf) &&
               std::get<StudentDensity>(rf).nu == std::get<StudentShape>(pf).nu) {
        out.ratio_form_ = RatioForm::StudentStudent;
    }
    return out;
}

const std::function<double(double)>& FunctionWithDerivatives::derivative(std::size_t k) const {
    if (k >= derivatives.size()) {
        throw MissingDerivative("function '" + label + "' provides derivatives up to order " +
                                std::to_string(order()) + ", order " + std::to_string(k) + " requested");
    }
    return derivatives[k];
}

namespace test_functions {

FunctionWithDerivatives exp_decay() {
    FunctionWithDerivatives f;
    f.label = "exp";
    for (int k = 0; k <= 4; ++k) {
        const double sign = k % 2 == 0 ? 1.0 : -1.0;
        f.derivatives.emplace_back([sign](double x) { return sign * std::exp(-x); });
    }
    return f;
}

FunctionWithDerivatives gaussian_bump() {
    // d^k/dx^k e^{-x^2} = (-1)^k H_k(x) e^{-x^2}, physicists' Hermite polynomials.
    FunctionWithDerivatives f;
    f.label = "gauss";
    f.derivatives = {
        [](double x) { return std::exp(-x * x); },
        [](double x) { return -2.0 * x * std::exp(-x * x); },
        [](double x) { return (4.0 * x * x - 2.0) * std::exp(-x * x); },
        [](double x) { return -(8.0 * x * x * x - 12.0 * x) * std::exp(-x * x); },
        [](double x) { return (16.0 * x * x * x * x - 48.0 * x * x + 12.0) * std::exp(-x * x); },
    };
    return f;
}

FunctionWithDerivatives damped_sine() {
    // d^k/dx^k sin(x) e^{-x} = 2^{k/2} e^{-x} sin(x + 3k pi/4).
    FunctionWithDerivatives f;
    f.label = "sinexp";
    for (int k = 0; k <= 4; ++k) {
        const double scale = std::pow(std::numbers::sqrt2, k);
        const double shift = 0.75 * std::numbers::pi * k;
        f.derivatives.emplace_back([scale, shift](double x) { return scale * std::exp(-x) * std::sin(x + shift); });
    }
    return f;
}

FunctionWithDerivatives lorentzian() {
    FunctionWithDerivatives f;
    f.label = "rational";
    f.derivatives = {
        [](double x) { return 1.0 / (1.0 + x * x); },
        [](double x) { const double d = 1.0 + x * x; return -2.0 * x / (d * d); },
        [](double x) { const double d = 1.0 + x * x; return 2.0 * (3.0 * x * x - 1.0) / (d * d * d); },
        [](double x) {
            const double d = 1.0 + x * x;
            return -24.0 * x * (x * x - 1.0) / (d * d * d * d);
        },
        [](double x) {
            const double d = 1.0 + x * x;
            const double x2 = x * x;
            return 24.0 * (5.0 * x2 * x2 - 10.0 * x2 + 1.0) / (d * d * d * d * d);
        },
    };
    return f;
}

FunctionWithDerivatives polynomial(std::vector<double> coeffs) {
    FunctionWithDerivatives f;
    f.label = "polynomial";
    const std::size_t degree = coeffs.empty() ? 0 : coeffs.size() - 1;
    for (std::size_t k = 0; k <= degree + 1; ++k) {
        f.derivatives.emplace_back([coeffs](double x) {
            double acc = 0.0;
            for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * x + coeffs[i];
            return acc;
        });
        // Differentiate the coefficient list for the next order.
        std::vector<double> next;
        for (std::size_t i = 1; i < coeffs.size(); ++i) next.push_back(coeffs[i] * static_cast<double>(i));
        coeffs = next.empty() ? std::vector<double>{0.0} : next;
    }
    return f;
}

FunctionWithDerivatives by_name(const std::string& name) {
    if (name == "exp") return exp_decay();
    if (name == "gauss") return gaussian_bump();
    if (name == "sinexp") return damped_sine();
    if (name == "rational") return lorentzian();
    throw ParameterOutOfRange("unknown test function '" + name + "' (expected exp, gauss, sinexp, rational)");
}

}  // namespace test_functions

}  // namespace wquant
