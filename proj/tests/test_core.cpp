#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "wquant/core.hpp"
#include "wquant/errors.hpp"

using namespace wquant;

namespace {

const double kPi = std::numbers::pi;

std::vector<WeightFunction> named_families() {
    return {WeightFunction::gaussian_density(1.3),      WeightFunction::gaussian_density(0.7, -1.0),
            WeightFunction::exponential_kernel(1.5),    WeightFunction::gaussian_shape(2.0),
            WeightFunction::exponential_shape(3.0),     WeightFunction::constant_one(),
            WeightFunction::lognormal_density(0.5, 1.2), WeightFunction::lognormal_quantizer(2.5, 0.3),
            WeightFunction::logistic_density(0.5),      WeightFunction::exponential_shape_b(0.8),
            WeightFunction::student_density(3.0),       WeightFunction::student_shape(3.0, 2.0),
            WeightFunction::student_quantizer(2.5)};
}

// Literal formulas, written independently of the library.
double literal(const WeightFunction& w, double x) {
    const std::string n = w.to_json().at("family");
    const auto& j = w.to_json();
    if (n == "gaussian") {
        const double s = j["sigma"], m = j["mu"];
        return std::exp(-(x - m) * (x - m) / (2 * s * s)) / (s * std::sqrt(2 * kPi));
    }
    if (n == "exp-kernel") return std::exp(-double(j["a"]) * std::abs(x));
    if (n == "gaussian-shape") {
        const double l = j["lambda"];
        return std::exp(-x * x / (2 * l * l));
    }
    if (n == "exp-shape") return std::exp(-std::abs(x) / double(j["lambda"]));
    if (n == "one") return 1.0;
    if (n == "lognormal") {
        const double s = j["sigma"], m = j["mu"];
        return std::exp(-(std::log(x) - m) * (std::log(x) - m) / (2 * s * s)) / (x * s * std::sqrt(2 * kPi));
    }
    if (n == "lognormal-quantizer") {
        const double c = j["c"], m = j["mu"];
        return std::min(1.0, std::pow(x * std::exp(-m), -c));
    }
    if (n == "logistic") {
        const double l = 1.0 / double(j["nu"]);
        return l * std::exp(l * x) / ((1 + std::exp(l * x)) * (1 + std::exp(l * x)));
    }
    if (n == "exp-shape-b") return std::exp(-double(j["b"]) * std::abs(x));
    if (n == "student") {
        const double nu = j["nu"];
        const double T = std::tgamma((nu + 1) / 2) / (std::sqrt(nu * kPi) * std::tgamma(nu / 2));
        return T * std::pow(1 + x * x / nu, -(nu + 1) / 2);
    }
    if (n == "student-shape") {
        const double nu = j["nu"], b = j["b"];
        return std::pow(1 + x * x / nu, -b / 2);
    }
    if (n == "student-quantizer") return std::pow(1 + std::abs(x), -double(j["a"]));
    throw std::logic_error("no literal formula for " + n);
}

double sample_in(const Interval& d, std::mt19937_64& gen) {
    std::normal_distribution<double> nrm(0.0, 4.0);
    std::exponential_distribution<double> ex(0.3);
    if (std::isinf(d.lo) && std::isinf(d.hi)) return nrm(gen);
    return d.lo + ex(gen) + 1e-9;
}

}  // namespace

TEST_SUITE("core") {
    TEST_CASE("exponents") {
        CHECK_THROWS_AS(Exponent(0.5), ParameterOutOfRange);
        CHECK(Exponent::parse("inf").is_infinite());
        CHECK(Exponent::parse("2").value() == 2.0);
        CHECK_THROWS_AS(Exponent::parse("2x"), ParameterOutOfRange);
        CHECK(Exponent(1.0).conjugate().is_infinite());
        CHECK(Exponent::infinity().conjugate().value() == 1.0);
        CHECK(Exponent(2.0).conjugate().value() == doctest::Approx(2.0));
        CHECK(Exponent(3.0) <= Exponent::infinity());
        CHECK_FALSE(Exponent::infinity() <= Exponent(3.0));
        CHECK_THROWS_AS(ProblemExponents(Exponent(1.0), Exponent(1.0), 0), ParameterOutOfRange);
    }

    TEST_CASE("alpha examples") {
        CHECK(alpha({Exponent::infinity(), Exponent(1.0), 1}) == 2.0);
        CHECK(alpha({Exponent(2.0), Exponent(1.0), 1}) == 1.5);
        for (int r = 1; r <= 4; ++r) CHECK(alpha({Exponent(3.0), Exponent(3.0), r}) == r);
    }

    TEST_CASE("property: alpha + 1/p - 1/q == r exactly") {
        const Exponent es[] = {Exponent(1.0), Exponent(2.0), Exponent::infinity()};
        for (const auto& p : es)
            for (const auto& q : es)
                for (int r = 1; r <= 5; ++r) {
                    if (r == 1 && p.reciprocal() == 1.0 && q.is_infinite()) {
                        CHECK_THROWS_AS(ProblemExponents(p, q, r), ParameterOutOfRange);
                        continue;
                    }
                    const ProblemExponents e(p, q, r);
                    CHECK(alpha(e) + p.reciprocal() - q.reciprocal() == static_cast<double>(r));
                    CHECK(alpha(e) > 0.0);
                    CHECK(e.rate() == doctest::Approx(-r + std::max(0.0, p.reciprocal() - q.reciprocal())));
                }
    }

    TEST_CASE("c1 constant") {
        for (const auto& p : {Exponent(1.0), Exponent(2.0), Exponent::infinity()})
            CHECK(c1_constant({p, Exponent(1.0), 1}) == doctest::Approx(1.0));
        CHECK(c1_constant({Exponent(2.0), Exponent(1.0), 2}) == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-15));
        CHECK(c1_constant({Exponent::infinity(), Exponent(1.0), 2}) == doctest::Approx(0.5).epsilon(1e-15));
        // p = 1: p* infinite, root factor 1.
        CHECK(c1_constant({Exponent(1.0), Exponent(1.0), 3}) == doctest::Approx(0.5).epsilon(1e-15));
    }

    TEST_CASE("weight evaluation examples") {
        CHECK(WeightFunction::gaussian_density(1.0).value(0.0) == doctest::Approx(1.0 / std::sqrt(2 * kPi)).epsilon(1e-15));
        CHECK(WeightFunction::lognormal_density(0.0, 1.0).value(1.0) ==
              doctest::Approx(1.0 / std::sqrt(2 * kPi)).epsilon(1e-15));
        CHECK(WeightFunction::logistic_density(1.0).value(0.0) == doctest::Approx(0.25).epsilon(1e-15));
        CHECK_THROWS_AS((void)WeightFunction::lognormal_density(0.0, 1.0).value(-1.0), DomainError);
        CHECK_THROWS_AS((void)WeightFunction::exponential_kernel(-1.0), ParameterOutOfRange);
    }

    TEST_CASE("property: named families follow their literal formulas and are positive") {
        std::mt19937_64 gen(42);
        for (const auto& w : named_families()) {
            CAPTURE(w.name());
            for (int i = 0; i < 10000; ++i) {
                const double x = sample_in(w.domain(), gen);
                const double v = w.value(x);
                REQUIRE(v > 0.0);
                if (i % 50 == 0) {
                    CHECK(v == doctest::Approx(literal(w, x)).epsilon(1e-12));
                    CHECK(w.log_value(x) == doctest::Approx(std::log(v)).epsilon(1e-10).scale(1.0));
                }
            }
        }
    }

    TEST_CASE("omega_of examples") {
        const auto rho = WeightFunction::gaussian_density(1.2);
        const auto id = omega_of(rho, WeightFunction::constant_one());
        CHECK(id.ratio_form() == RatioForm::Identity);
        CHECK(id.value(0.7) == rho.value(0.7));

        const double s = 1.0, l = 2.0;
        const auto gg = omega_of(WeightFunction::gaussian_density(s), WeightFunction::gaussian_shape(l));
        CHECK(gg.ratio_form() == RatioForm::GaussGauss);
        for (double x : {-3.0, 0.0, 1.7})
            CHECK(gg.value(x) == doctest::Approx(std::exp(-0.5 * x * x * (1 / (s * s) - 1 / (l * l))) /
                                                 (s * std::sqrt(2 * kPi)))
                                     .epsilon(1e-14));

        const double lam = 2.0, b = 1.0;
        const auto lo = omega_of(WeightFunction::logistic_density(1 / lam), WeightFunction::exponential_shape_b(b));
        CHECK(lo.ratio_form() == RatioForm::LogisticExp);
        for (double x : {-4.0, -0.5, 0.0, 2.5})
            CHECK(lo.value(x) == doctest::Approx(lam * std::exp(lam * x + b * std::abs(x)) /
                                                 ((1 + std::exp(lam * x)) * (1 + std::exp(lam * x))))
                                     .epsilon(1e-13));
        CHECK(omega_of(WeightFunction::student_density(4), WeightFunction::student_shape(4, 2)).ratio_form() ==
              RatioForm::StudentStudent);
        CHECK(omega_of(WeightFunction::gaussian_density(1), WeightFunction::exponential_shape(3)).ratio_form() ==
              RatioForm::GaussExp);
    }

    TEST_CASE("property: omega * psi == rho") {
        std::mt19937_64 gen(9);
        const std::pair<WeightFunction, WeightFunction> pairs[] = {
            {WeightFunction::gaussian_density(1.0), WeightFunction::gaussian_shape(2.0)},
            {WeightFunction::gaussian_density(1.0), WeightFunction::exponential_shape(1.5)},
            {WeightFunction::logistic_density(0.5), WeightFunction::exponential_shape_b(1.0)},
            {WeightFunction::student_density(5.0), WeightFunction::student_shape(5.0, 3.0)},
            {WeightFunction::lognormal_density(0.2, 0.8), WeightFunction::constant_one(Interval::half_line())},
        };
        for (const auto& [rho, psi] : pairs) {
            const auto om = omega_of(rho, psi);
            for (int i = 0; i < 500; ++i) {
                const double x = sample_in(rho.domain(), gen);
                if (std::abs(x) > 20.0) continue;
                CHECK(om.value(x) * psi.value(x) == doctest::Approx(rho.value(x)).epsilon(1e-12));
            }
        }
    }

    TEST_CASE("monotonicity declarations") {
        CHECK(WeightFunction::gaussian_density(1).monotonicity() == Monotonicity::SymmetricUnimodal);
        CHECK(WeightFunction::exponential_kernel(1).with_domain(Interval::half_line()).monotonicity() ==
              Monotonicity::NonincreasingHalfLine);
        CHECK(WeightFunction::lognormal_density(0, 1).monotonicity() == Monotonicity::None);
        CHECK(WeightFunction::lognormal_quantizer(3, 0).monotonicity() == Monotonicity::NonincreasingHalfLine);
        CHECK(WeightFunction::gaussian_density(1, 0.5).monotonicity() == Monotonicity::None);
        const auto g = WeightFunction::generic([](double x) { return std::exp(-x); }, Interval::half_line());
        CHECK(g.monotonicity() == Monotonicity::None);
    }

    TEST_CASE("JSON round trip") {
        for (const auto& w : named_families()) {
            CAPTURE(w.name());
            const auto back = WeightFunction::from_json(w.to_json());
            CHECK(back.to_json() == w.to_json());
            const double x = w.domain().lo >= 0 ? 1.3 : -0.4;
            CHECK(back.value(x) == w.value(x));
        }
        const auto w = WeightFunction::from_json(nlohmann::json::parse(R"({"family":"gaussian","sigma":1.0,"mu":0.0})"));
        CHECK(w.value(0.0) == doctest::Approx(1.0 / std::sqrt(2 * kPi)));
        const auto h = WeightFunction::from_json(
            nlohmann::json::parse(R"({"family":"exp-kernel","a":2,"domain":[0,"inf"]})"));
        CHECK(h.domain().lo == 0.0);
        CHECK(std::isinf(h.domain().hi));
        CHECK_THROWS_AS(WeightFunction::from_json(nlohmann::json::parse(R"({"family":"nope"})")), ParameterOutOfRange);
        CHECK_THROWS_AS(WeightFunction::from_json(nlohmann::json::parse(R"({"family":"gaussian"})")),
                        ParameterOutOfRange);
    }

    TEST_CASE("property: test function derivatives agree with finite differences") {
        for (const char* name : {"exp", "gauss", "sinexp", "rational"}) {
            const auto f = test_functions::by_name(name);
            CAPTURE(name);
            REQUIRE(f.order() >= 4);
            for (double x : {0.1, 0.7, 1.9, 3.2}) {
                for (std::size_t k = 0; k < f.order(); ++k) {
                    const double h = 1e-5;
                    const double fd = (f.derivative(k)(x + h) - f.derivative(k)(x - h)) / (2 * h);
                    CHECK(f.derivative(k + 1)(x) == doctest::Approx(fd).epsilon(1e-7).scale(1.0));
                }
            }
        }
        CHECK_THROWS_AS(test_functions::by_name("nope"), ParameterOutOfRange);
        const auto p = test_functions::polynomial({1.0, -2.0, 3.0});
        CHECK(p(2.0) == 9.0);
        CHECK(p.derivative(1)(2.0) == 10.0);
        CHECK(p.derivative(2)(2.0) == 6.0);
        CHECK(p.derivative(3)(2.0) == 0.0);
        CHECK_THROWS_AS((void)test_functions::exp_decay().derivative(9), MissingDerivative);
    }
}
