#include <doctest.h>

#include <cmath>
#include <random>

#include "wquant/errors.hpp"
#include "wquant/factor.hpp"
#include "wquant/quadrature.hpp"

using namespace wquant;

namespace {

const Exponent kInfExp = Exponent::infinity();

FunctionWithDerivatives combine(double a, const FunctionWithDerivatives& f, double b, const FunctionWithDerivatives& g) {
    FunctionWithDerivatives h;
    h.label = "combination";
    const std::size_t m = std::min(f.derivatives.size(), g.derivatives.size());
    for (std::size_t k = 0; k < m; ++k) {
        h.derivatives.emplace_back(
            [a, b, fk = f.derivatives[k], gk = g.derivatives[k]](double x) { return a * fk(x) + b * gk(x); });
    }
    return h;
}

}  // namespace

TEST_SUITE("quadrature") {
    TEST_CASE("exact on low-degree polynomials") {
        const auto rho = WeightFunction::gaussian_density(1.0);
        const auto one = WeightFunction::constant_one();
        const auto kappa = WeightFunction::exponential_kernel(1.0);
        const auto c = integrate_weighted(test_functions::polynomial({1.0}), rho, one, kappa,
                                          {kInfExp, Exponent(1.0), 1}, 8);
        CHECK(c.value == doctest::Approx(1.0).epsilon(1e-11));
        CHECK(c.cells == 16);
        const auto x = integrate_weighted(test_functions::polynomial({0.0, 1.0}), rho, one, kappa,
                                          {kInfExp, Exponent(1.0), 2}, 8);
        CHECK(std::abs(x.value) <= 1e-11);
        std::mt19937_64 gen(2);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        for (int r = 1; r <= 3; ++r) {
            std::vector<double> co;
            for (int k = 0; k < r; ++k) co.push_back(u(gen));
            const auto f = test_functions::polynomial(co);
            const double ref = reference_integral(f.derivative(0), rho);
            CHECK(integrate_weighted(f, rho, one, kappa, {kInfExp, Exponent(1.0), r}, 5).value ==
                  doctest::Approx(ref).epsilon(1e-10).scale(1.0));
        }
    }

    TEST_CASE("only q = 1 is a quadrature") {
        CHECK_THROWS_AS(integrate_weighted(test_functions::gaussian_bump(), WeightFunction::gaussian_density(1.0),
                                           WeightFunction::constant_one(), WeightFunction::exponential_kernel(1.0),
                                           {kInfExp, Exponent(2.0), 1}, 4),
                        WrongExponent);
    }

    TEST_CASE("reference value of the Gaussian product") {
        const double ref = reference_integral([](double x) { return std::exp(-x * x); }, WeightFunction::gaussian_density(1.0));
        CHECK(ref == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-12));
    }

    TEST_CASE("r = 1 error decays like 1/n with the exponential quantizer") {
        const auto rho = WeightFunction::gaussian_density(1.0);
        const ProblemExponents e(kInfExp, Exponent(1.0), 1);
        const auto kappa = WeightFunction::exponential_kernel(gauss_gauss_a_star(1.0, kInf, alpha(e)));
        const auto rows = convergence_study(test_functions::gaussian_bump(), rho, WeightFunction::constant_one(), kappa, e,
                                            {16, 32, 64, 128, 256});
        CHECK(std::isnan(rows[0].order));
        for (std::size_t i = 2; i < rows.size(); ++i) {
            CAPTURE(rows[i].n);
            CHECK(std::abs(rows[i].order - 1.0) <= 0.15);
            CHECK(rows[i].error == doctest::Approx(std::abs(rows[i].value - 1.0 / std::sqrt(3.0))).epsilon(1e-9));
        }
    }

    TEST_CASE("polynomials of degree < r give undefined orders") {
        const auto rows = convergence_study(test_functions::polynomial({0.5, 1.0}), WeightFunction::gaussian_density(1.0),
                                            WeightFunction::constant_one(), WeightFunction::gaussian_density(1.0),
                                            {kInfExp, Exponent(1.0), 2}, {4, 8, 16});
        for (const auto& r : rows) {
            CHECK(r.error <= 1e-10);
            CHECK(std::isnan(r.order));
        }
    }

    TEST_CASE("property: linearity") {
        const auto rho = WeightFunction::gaussian_density(1.0);
        const auto kv = knots_realline(WeightFunction::exponential_kernel(1.2), 2.0, 6);
        const auto f = test_functions::gaussian_bump();
        const auto g = test_functions::lorentzian();
        std::mt19937_64 gen(4);
        std::uniform_real_distribution<double> u(-3.0, 3.0);
        for (int t = 0; t < 5; ++t) {
            const double a = u(gen), b = u(gen);
            for (int r = 1; r <= 3; ++r) {
                const double lhs = integrate_weighted(combine(a, f, b, g), rho, kv, r).value;
                const double rhs = a * integrate_weighted(f, rho, kv, r).value + b * integrate_weighted(g, rho, kv, r).value;
                CHECK(std::abs(lhs - rhs) <= 1e-10);
            }
        }
    }

    TEST_CASE("half-line quadrature against a half-line density") {
        const auto rho = WeightFunction::exponential_kernel(1.0).with_domain(Interval::half_line());
        const auto kappa = rho;
        const ProblemExponents e(kInfExp, Exponent(1.0), 2);
        const auto rows = convergence_study(test_functions::damped_sine(), rho,
                                            WeightFunction::constant_one(Interval::half_line()), kappa, e,
                                            {32, 64, 128, 256});
        // int sin(x) e^{-2x} = 1/5.
        CHECK(std::abs(rows.back().value - 0.2) <= 1e-4);
        for (std::size_t i = 1; i < rows.size(); ++i) CHECK(std::abs(rows[i].order - 2.0) <= 0.2);
    }
}
