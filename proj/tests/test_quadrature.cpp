#include <doctest.h>

#include <cmath>

#include "tht/quadrature.hpp"

using namespace tht;

TEST_CASE("gauss-legendre integrates polynomials of degree 2n-1 exactly") {
    for (int n : {2, 5, 12, 24}) {
        const QuadRule& r = gauss_legendre(n);
        double wsum = 0.0;
        for (double w : r.w) wsum += w;
        CHECK(wsum == doctest::Approx(2.0).epsilon(1e-14));
        // int_{-1}^{1} x^(2n-2) dx = 2/(2n-1)
        double s = 0.0;
        for (int i = 0; i < n; ++i) s += r.w[i] * std::pow(r.x[i], 2 * n - 2);
        CHECK(s == doctest::Approx(2.0 / (2 * n - 1)).epsilon(1e-12));
    }
}

TEST_CASE("graded panels resolve a log singularity") {
    auto p = graded_panels(0.0, 1.0, true);
    const double v = integrate([](double t) { return std::log(t); }, p, 12);
    CHECK(v == doctest::Approx(-1.0).epsilon(1e-12));
    auto q = graded_panels(0.0, 1.0, false);
    const double v2 = integrate([](double t) { return std::log1p(-t); }, q, 12);
    CHECK(v2 == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("double-graded panels handle log^2 at both ends") {
    auto p = double_graded_panels(0.0, 1.0);
    const double v = integrate(
        [](double t) {
            const double a = std::log(t), b = std::log1p(-t);
            return a * a + b * b;
        },
        p, 12);
    CHECK(v == doctest::Approx(4.0).epsilon(1e-11));  // int ln^2 = 2 each
}

TEST_CASE("panels cover the interval exactly") {
    auto p = double_graded_panels(2.0, 7.0);
    double len = 0.0;
    for (auto& pp : p) len += pp.hi - pp.lo;
    CHECK(len == doctest::Approx(5.0).epsilon(1e-12));
}
