#include <doctest.h>

#include <cmath>
#include <random>

#include "wquant/errors.hpp"
#include "wquant/quantizer.hpp"

using namespace wquant;

namespace {

void check_increasing(const KnotVector& kv) {
    for (std::size_t i = 1; i < kv.knots.size(); ++i) CHECK(kv.knots[i] > kv.knots[i - 1]);
}

}  // namespace

TEST_SUITE("quantizer") {
    TEST_CASE("closed-form half-line knots") {
        const double a = 1.7, al = 2.5;
        const int n = 8;
        const auto kv = knots_halfline(WeightFunction::exponential_kernel(a).with_domain(Interval::half_line()), al, n);
        REQUIRE(kv.knots.size() == n + 1);
        CHECK(kv.knots.front() == 0.0);
        CHECK(std::isinf(kv.knots.back()));
        for (int i = 0; i < n; ++i) CHECK(kv.knots[i] == doctest::Approx(-(al / a) * std::log(1.0 - double(i) / n)));
        check_increasing(kv);

        const double sa = 3.0, sal = 1.5;
        const auto ks = knots_halfline(WeightFunction::student_quantizer(sa).with_domain(Interval::half_line()), sal, n);
        for (int i = 0; i < n; ++i)
            CHECK(ks.knots[i] == doctest::Approx(std::pow(1.0 - double(i) / n, -sal / (sa - sal)) - 1.0));
    }

    TEST_CASE("real-line knots of the exponential kernel") {
        const auto kv = knots_realline(WeightFunction::exponential_kernel(1.0), 2.0, 4);
        REQUIRE(kv.knots.size() == 9);
        CHECK(kv.knots[4] == 0.0);
        CHECK(kv.knots[6] == doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-15));
        CHECK(std::isinf(kv.knots[8]));
        CHECK(std::isinf(kv.knots[0]));
        CHECK(kv.knots[0] < 0);
        for (int i = 0; i <= 4; ++i) CHECK(kv.knots[4 - i] == -kv.knots[4 + i]);
        CHECK(kv.total_mass == doctest::Approx(4.0));
    }

    TEST_CASE("log-normal knots") {
        const auto k2 = knots_lognormal(2.0, 1.0, 0.0, 2);
        CHECK(k2.knots[0] == 0.0);
        CHECK(k2.knots[1] == doctest::Approx(1.0).epsilon(1e-15));
        const auto k4 = knots_lognormal(2.0, 1.0, 0.0, 4);
        CHECK(k4.knots[3] == doctest::Approx(2.0).epsilon(1e-15));
        CHECK(std::isinf(k4.knots[4]));
        CHECK_THROWS_AS(knots_lognormal(1.0, 1.5, 0.0, 4), ParameterOutOfRange);
    }

    TEST_CASE("quantizer masses") {
        CHECK(quantizer_mass(WeightFunction::exponential_kernel(2.0), 3.0) == doctest::Approx(3.0).epsilon(1e-15));
        CHECK(quantizer_mass(WeightFunction::constant_one({0.0, 1.0}), 1.7) == doctest::Approx(1.0));
        CHECK(quantizer_mass(WeightFunction::student_quantizer(3.0), 1.0) == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(quantizer_mass(WeightFunction::student_quantizer(3.0), 1.0, MassMethod::Numeric) ==
              doctest::Approx(1.0).epsilon(1e-10));
        CHECK_THROWS_AS((void)quantizer_mass(WeightFunction::student_quantizer(1.5), 2.0), NonIntegrableQuantizer);
        CHECK_THROWS_AS((void)quantizer_mass(WeightFunction::student_quantizer(1.5), 2.0, MassMethod::Numeric),
                        NonIntegrableQuantizer);
        CHECK_THROWS_AS((void)quantizer_mass(WeightFunction::constant_one(), 1.0), NonIntegrableQuantizer);
    }

    TEST_CASE("property: closed-form masses agree with quadrature") {
        std::mt19937_64 gen(17);
        std::uniform_real_distribution<double> u(0.5, 3.0);
        for (int i = 0; i < 10; ++i) {
            const double al = u(gen);
            const WeightFunction ws[] = {WeightFunction::exponential_kernel(u(gen)),
                                         WeightFunction::gaussian_density(u(gen)),
                                         WeightFunction::student_quantizer(al + u(gen)),
                                         WeightFunction::lognormal_quantizer(al + u(gen), u(gen) - 1.5),
                                         WeightFunction::gaussian_shape(u(gen))};
            for (const auto& w : ws) {
                CAPTURE(w.name());
                CHECK(quantizer_mass(w, al) == doctest::Approx(quantizer_mass(w, al, MassMethod::Numeric)).epsilon(1e-9));
            }
        }
    }

    TEST_CASE("property: equal-mass certificate and closed form vs numeric inversion") {
        std::mt19937_64 gen(23);
        std::uniform_real_distribution<double> u(0.5, 3.0);
        for (int t = 0; t < 6; ++t) {
            const double al = u(gen);
            const WeightFunction half[] = {
                WeightFunction::exponential_kernel(u(gen)).with_domain(Interval::half_line()),
                WeightFunction::student_quantizer(al + u(gen)).with_domain(Interval::half_line()),
                WeightFunction::lognormal_quantizer(al + u(gen), u(gen) - 1.5)};
            for (const auto& k : half) {
                for (int n : {4, 16}) {
                    CAPTURE(k.name());
                    CAPTURE(n);
                    const auto cf = knots_halfline(k, al, n);
                    const auto nu = knots_halfline(k, al, n, MassMethod::Numeric);
                    CHECK(cf.closed_form);
                    CHECK_FALSE(nu.closed_form);
                    check_increasing(cf);
                    CHECK(equal_mass_deviation(cf) <= 1e-8);
                    CHECK(equal_mass_deviation(nu) <= 1e-8);
                    for (std::size_t i = 1; i + 1 < cf.knots.size(); ++i)
                        CHECK(nu.knots[i] == doctest::Approx(cf.knots[i]).epsilon(1e-8));
                }
            }
        }
    }

    TEST_CASE("property: real-line symmetry") {
        const WeightFunction ks[] = {WeightFunction::exponential_kernel(0.7), WeightFunction::gaussian_density(1.3),
                                     WeightFunction::student_quantizer(4.0)};
        for (const auto& k : ks) {
            const auto kv = knots_realline(k, 1.5, 8);
            REQUIRE(kv.knots.size() == 17);
            for (int i = 0; i <= 8; ++i) CHECK(kv.knots[8 - i] == -kv.knots[8 + i]);
            CHECK(equal_mass_deviation(kv) <= 1e-8);
            check_increasing(kv);
        }
    }

    TEST_CASE("generic quantizer needs a monotonicity declaration") {
        const auto f = [](double x) { return 1.0 / (1.0 + x * x * x * x); };
        const auto undeclared = WeightFunction::generic(f, Interval::half_line());
        CHECK_THROWS_AS(knots_halfline(undeclared, 1.0, 4), MonotonicityUndeclared);
        const auto declared = WeightFunction::generic(f, Interval::half_line(), Monotonicity::NonincreasingHalfLine);
        const auto kv = knots_halfline(declared, 1.0, 8);
        CHECK(equal_mass_deviation(kv) <= 1e-8);
        CHECK_THROWS_AS(knots_realline(WeightFunction::lognormal_quantizer(3.0, 0.0), 1.0, 4), ParameterOutOfRange);
    }
}
