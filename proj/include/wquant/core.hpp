#pragma once

#include <functional>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "wquant/numerics.hpp"

namespace wquant {

/// An L_p exponent in [1, inf] with an explicit infinity, so the case
/// splits p <= q and p > q and the reciprocals 1/p are exact.
class Exponent {
public:
    Exponent() = default;
    explicit Exponent(double value);
    static Exponent infinity();

    [[nodiscard]] bool is_infinite() const { return infinite_; }
    [[nodiscard]] double value() const { return infinite_ ? kInf : value_; }
    [[nodiscard]] double reciprocal() const { return infinite_ ? 0.0 : 1.0 / value_; }
    // Hoelder conjugate: 1/p + 1/p* = 1.
    [[nodiscard]] Exponent conjugate() const;

    [[nodiscard]] std::string str() const;
    static Exponent parse(const std::string& text);

    friend bool operator<=(const Exponent& a, const Exponent& b);
    friend bool operator==(const Exponent& a, const Exponent& b);

private:
    double value_ = 1.0;
    bool infinite_ = false;
};

struct ProblemExponents {
    Exponent p;
    Exponent q;
    int r = 1;

    ProblemExponents() = default;
    ProblemExponents(Exponent p_, Exponent q_, int r_);

    [[nodiscard]] bool p_le_q() const { return p <= q; }
    // 1/q - 1/p, the exponent gap; equals alpha - r.
    [[nodiscard]] double gap() const { return q.reciprocal() - p.reciprocal(); }
    // Convergence exponent -r + (1/p - 1/q)_+.
    [[nodiscard]] double rate() const;
};

/// alpha = r - 1/p + 1/q.
double alpha(const ProblemExponents& exps);

/// 1 / ((r-1)! ((r-1) p* + 1)^(1/p*)); the root factor is taken as its
/// limit 1 when p* is infinite.
double c1_constant(const ProblemExponents& exps);

nlohmann::json to_json(const ProblemExponents& exps);

// ---------------------------------------------------------------------------
// Weight functions
// ---------------------------------------------------------------------------

enum class Monotonicity {
    None,
    NonincreasingHalfLine,  // nonincreasing on the domain, which starts at a finite point
    SymmetricUnimodal,      // even, nonincreasing on [0, inf)
};

class WeightFunction;

namespace family {
struct GaussianDensity { double sigma; double mu; };
struct ExponentialKernel { double a; };
struct GaussianShape { double lambda; };
struct ExponentialShape { double lambda; };
struct ConstantOne {};
struct LogNormalDensity { double mu; double sigma; };
struct LogNormalQuantizer { double c; double mu; };
struct LogisticDensity { double nu; };
struct ExponentialShapeB { double b; };
struct StudentDensity { double nu; };
struct StudentShape { double nu; double b; };
struct StudentQuantizer { double a; };
struct GenericPositive {
    std::function<double(double)> fn;
    Monotonicity monotonicity;
    std::string label;
};
// Ratio numerator/denominator, i.e. omega = rho / psi.
struct Ratio {
    std::shared_ptr<const WeightFunction> num;
    std::shared_ptr<const WeightFunction> den;
};
struct Scaled {
    double factor;
    std::shared_ptr<const WeightFunction> inner;
};
}  // namespace family

/// Which closed-form pairing produced an omega = rho/psi.
enum class RatioForm {
    None,
    Identity,           // psi == 1
    GaussGauss,         // Gaussian density / Gaussian shape
    GaussExp,           // Gaussian density / exp(-|x|/lambda)
    LogisticExp,        // logistic density / exp(-b|x|)
    StudentStudent,     // Student density / (1+x^2/nu)^(-b/2)
};

class WeightFunction {
public:
    using Family = std::variant<family::GaussianDensity, family::ExponentialKernel, family::GaussianShape,
                                family::ExponentialShape, family::ConstantOne, family::LogNormalDensity,
                                family::LogNormalQuantizer, family::LogisticDensity,
                                family::ExponentialShapeB, family::StudentDensity, family::StudentShape,
                                family::StudentQuantizer, family::GenericPositive, family::Ratio,
                                family::Scaled>;

    static WeightFunction gaussian_density(double sigma, double mu = 0.0);
    static WeightFunction exponential_kernel(double a);
    static WeightFunction gaussian_shape(double lambda);
    static WeightFunction exponential_shape(double lambda);
    static WeightFunction constant_one(Interval domain = Interval::real_line());
    static WeightFunction lognormal_density(double mu, double sigma);
    static WeightFunction lognormal_quantizer(double c, double mu);
    static WeightFunction logistic_density(double nu);
    static WeightFunction exponential_shape_b(double b);
    static WeightFunction student_density(double nu);
    static WeightFunction student_shape(double nu, double b);
    static WeightFunction student_quantizer(double a);
    static WeightFunction generic(std::function<double(double)> fn, Interval domain,
                                  Monotonicity monotonicity = Monotonicity::None, std::string label = "generic");
    static WeightFunction scaled(const WeightFunction& w, double factor);

    [[nodiscard]] double operator()(double x) const { return value(x); }
    // Throws DomainError outside the domain.
    [[nodiscard]] double value(double x) const;
    // log of the value, computed without overflow for the named families.
    [[nodiscard]] double log_value(double x) const;

    [[nodiscard]] const Interval& domain() const { return domain_; }
    [[nodiscard]] WeightFunction with_domain(Interval domain) const;
    [[nodiscard]] const Family& family() const { return family_; }
    [[nodiscard]] Monotonicity monotonicity() const;
    [[nodiscard]] RatioForm ratio_form() const { return ratio_form_; }
    // Points where the function has a kink (|x| at 0, the log-normal quantizer switch).
    [[nodiscard]] std::vector<double> breakpoints() const;
    [[nodiscard]] std::string name() const;

    [[nodiscard]] nlohmann::json to_json() const;
    static WeightFunction from_json(const nlohmann::json& j);

    friend WeightFunction omega_of(const WeightFunction& rho, const WeightFunction& psi);

private:
    WeightFunction(Family f, Interval domain) : family_(std::move(f)), domain_(domain) {}

    [[nodiscard]] double log_unchecked(double x) const;

    Family family_;
    Interval domain_;
    RatioForm ratio_form_ = RatioForm::None;
};

/// omega = rho / psi on rho's domain. Named pairings get a RatioForm tag so
/// closed forms can be dispatched downstream; psi == 1 returns rho itself.
WeightFunction omega_of(const WeightFunction& rho, const WeightFunction& psi);

/// A function together with derivative evaluators f, f', ..., f^(m).
struct FunctionWithDerivatives {
    std::vector<std::function<double(double)>> derivatives;
    Interval domain = Interval::real_line();
    std::string label;

    [[nodiscard]] std::size_t order() const { return derivatives.empty() ? 0 : derivatives.size() - 1; }
    [[nodiscard]] double operator()(double x) const { return derivatives.at(0)(x); }
    // Throws MissingDerivative if fewer than k+1 evaluators are present.
    [[nodiscard]] const std::function<double(double)>& derivative(std::size_t k) const;
};

namespace test_functions {
// Built-in smooth decaying functions with hand-coded derivatives up to order 4.
FunctionWithDerivatives exp_decay();       // e^{-x}
FunctionWithDerivatives gaussian_bump();   // e^{-x^2}
FunctionWithDerivatives damped_sine();     // sin(x) e^{-x}
FunctionWithDerivatives lorentzian();      // 1/(1+x^2)
FunctionWithDerivatives polynomial(std::vector<double> coeffs);  // sum c_k x^k, all derivatives
FunctionWithDerivatives by_name(const std::string& name);
}  // namespace test_functions

}  // namespace wquant
