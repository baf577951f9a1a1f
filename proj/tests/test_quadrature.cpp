#include <doctest.h>

#include <cmath>

#include "disten/quadrature.hpp"
#include "oracles.hpp"

using namespace disten;

TEST_CASE("smooth integrands") {
    QuadResult q = tanh_sinh_01([](double t, double) { return t; });
    CHECK(q.converged);
    CHECK(q.value == doctest::Approx(0.5).epsilon(1e-14));

    q = tanh_sinh_01([](double t, double) { return t * t * t; });
    CHECK(q.value == doctest::Approx(0.25).epsilon(1e-14));

    q = tanh_sinh_01([](double t, double) { return std::exp(t); });
    CHECK(q.value == doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-14));
}

TEST_CASE("integrable endpoint singularities") {
    // 1/sqrt(1-t): the omt argument keeps full precision at the endpoint
    QuadResult q = tanh_sinh_01([](double, double omt) { return 1.0 / std::sqrt(omt); });
    CHECK(q.value == doctest::Approx(2.0).epsilon(1e-13));

    q = tanh_sinh_01([](double t, double) { return std::log(t); });
    CHECK(q.value == doctest::Approx(-1.0).epsilon(1e-13));

    q = tanh_sinh_01([](double t, double omt) { return 1.0 / std::sqrt(t * omt); });
    CHECK(q.value == doctest::Approx(M_PI).epsilon(1e-13));
}

TEST_CASE("limit constants of the decomposition weights") {
    auto asinq = [](double z) { return z < 1e-8 ? 1.0 + z * z / 6.0 : std::asin(z) / z; };

    // c1 = int sqrt(t/(1-t)) arccos(sqrt(t)) dt = (pi^2-4)/8
    QuadResult c1 = tanh_sinh_01(
        [&](double t, double omt) { return std::sqrt(t) * asinq(std::sqrt(omt)); });
    CHECK(c1.value == doctest::Approx((M_PI * M_PI - 4.0) / 8.0).epsilon(1e-12));
    CHECK(c1.abs_error < 1e-10);

    // c2 = int (1-2 sqrt(t))/sqrt(1-t) arccos(sqrt(t)) dt = pi - 1 - pi^2/4,
    // equal to pi - 2 - 2 c1 (cross-checked by substitution t = cos^2 theta)
    QuadResult c2 = tanh_sinh_01([&](double t, double omt) {
        return (1.0 - 2.0 * std::sqrt(t)) * asinq(std::sqrt(omt));
    });
    double c2_closed = M_PI - 1.0 - M_PI * M_PI / 4.0;
    CHECK(c2.value == doctest::Approx(c2_closed).epsilon(1e-12));
    CHECK(c2.value == doctest::Approx(M_PI - 2.0 - 2.0 * c1.value).epsilon(1e-12));

    // int arccos^2(sqrt(t)) dt = pi^2/8 - 1/2 (same substitution oracle)
    QuadResult a2 = tanh_sinh_01([](double, double omt) {
        double v = std::asin(std::sqrt(omt));
        return v * v;
    });
    CHECK(a2.value == doctest::Approx(M_PI * M_PI / 8.0 - 0.5).epsilon(1e-12));

    // Simpson cross-check, independent of the DE machinery
    double c1_simpson = oracle::simpson(
        [&](double t) {
            return t >= 1.0 ? 1.0 : std::sqrt(t) * asinq(std::sqrt(1.0 - t));
        },
        0.0, 1.0, 100000);
    CHECK(c1_simpson == doctest::Approx(c1.value).epsilon(1e-6));
}

TEST_CASE("scaled interval") {
    QuadResult q = tanh_sinh_scaled([](double x, double) { return x * x; }, 4.0);
    CHECK(q.value == doctest::Approx(64.0 / 3.0).epsilon(1e-13));
}

TEST_CASE("non-convergence is reported") {
    // a hard-oscillation integrand cannot reach 1e-15 within 4 levels
    CHECK_THROWS_AS(tanh_sinh_01([](double t, double) { return std::cos(500.0 * t); },
                                 1e-15, 3),
                    convergence_error);
}
