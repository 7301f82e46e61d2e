#include <doctest.h>

#include <cmath>
#include <numbers>

#include "tht/quadrature.hpp"
#include "tht/special.hpp"

using namespace tht;

TEST_CASE("dilog reproduces classical values") {
    const double pi2 = std::numbers::pi * std::numbers::pi;
    CHECK(dilog(1.0) == doctest::Approx(pi2 / 6.0).epsilon(1e-14));
    CHECK(dilog(-1.0) == doctest::Approx(-pi2 / 12.0).epsilon(1e-14));
    CHECK(dilog(0.5) ==
          doctest::Approx(pi2 / 12.0 - 0.5 * std::log(2.0) * std::log(2.0)).epsilon(1e-14));
    CHECK(dilog(0.0) == 0.0);
}

TEST_CASE("dilog satisfies the Euler reflection on a grid") {
    const double pi2_6 = std::numbers::pi * std::numbers::pi / 6.0;
    for (double x : {0.1, 0.27, 0.5, 0.62, 0.9}) {
        const double lhs = dilog(x) + dilog(1.0 - x);
        const double rhs = pi2_6 - std::log(x) * std::log(1.0 - x);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-13));
    }
}

TEST_CASE("dilog inversion identity for negative arguments") {
    const double pi2_6 = std::numbers::pi * std::numbers::pi / 6.0;
    for (double x : {-0.3, -1.0, -2.5, -40.0}) {
        const double l = std::log(-x);
        CHECK(dilog(x) + dilog(1.0 / x) ==
              doctest::Approx(-pi2_6 - 0.5 * l * l).epsilon(1e-13));
    }
}

TEST_CASE("pv log kernel matches brute-force quadrature") {
    // J(s,h) = pv int_{-h}^{h} ln|t|/(t-s) dt via symmetric excision around s
    auto brute = [](double s, double h) {
        const double d = 1e-9;
        double total = 0.0;
        auto f = [&](double t) { return std::log(std::fabs(t)) / (t - s); };
        // [-h, s-d], [s+d, 0), (0, h] with grading toward s and 0
        std::vector<Panel> p;
        append_panels(p, double_graded_panels(-h, s - d, 2.0, 1e-13));
        append_panels(p, double_graded_panels(s + d, 0.0, 2.0, 1e-13));
        append_panels(p, double_graded_panels(0.0, h, 2.0, 1e-13));
        total = integrate(f, p, 12);
        return total;  // symmetric excision error O(d)
    };
    for (double s : {-0.05, -0.11, -0.001, -0.1499}) {
        const double h = 0.15;
        CHECK(pv_log_kernel(s, h) == doctest::Approx(brute(s, h)).epsilon(5e-7));
    }
}

TEST_CASE("pv log kernel is odd in s") {
    CHECK(pv_log_kernel(0.03, 0.2) == doctest::Approx(-pv_log_kernel(-0.03, 0.2)).epsilon(1e-14));
}
