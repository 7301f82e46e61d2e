#include "tht/special.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tht {

namespace {

constexpr double kPi2over6 = std::numbers::pi * std::numbers::pi / 6.0;

double dilog_series(double x) {
    // |x| <= 0.5
    double term = x, sum = x;
    for (int k = 2; k < 80; ++k) {
        term *= x;
        const double add = term / (k * static_cast<double>(k));
        sum += add;
        if (std::fabs(add) < 1e-18 * std::fabs(sum) + 1e-300) break;
    }
    return sum;
}

}  // namespace

double dilog(double x) {
    if (x > 1.0) throw std::domain_error("dilog: real branch requires x <= 1");
    if (x == 1.0) return kPi2over6;
    if (x < -1.0) {
        // inversion: Li2(x) + Li2(1/x) = -pi^2/6 - ln^2(-x)/2,  x < 0
        const double l = std::log(-x);
        return -kPi2over6 - 0.5 * l * l - dilog(1.0 / x);
    }
    if (x > 0.5) {
        // reflection: Li2(x) + Li2(1-x) = pi^2/6 - ln(x) ln(1-x)
        return kPi2over6 - std::log(x) * std::log(1.0 - x) - dilog_series(1.0 - x);
    }
    if (x < -0.5) {
        // Landen: Li2(x) = -Li2(x/(x-1)) - ln^2(1-x)/2
        const double l = std::log1p(-x);
        return -dilog_series(x / (x - 1.0)) - 0.5 * l * l;
    }
    return dilog_series(x);
}

double pv_log_kernel(double s, double h) {
    if (!(h > 0.0) || s == 0.0 || std::fabs(s) >= h)
        throw std::domain_error("pv_log_kernel: need 0 < |s| < h");
    const double sign = s < 0.0 ? 1.0 : -1.0;   // J is odd; formula derived for s < 0
    const double as = std::fabs(s);
    const double beta = h / as;
    const double Kp = std::log(beta) * std::log1p(beta) + dilog(-beta);
    const double Km = kPi2over6 - dilog(1.0 - beta);
    const double J = std::log(as) * (std::log1p(beta) - std::log(beta - 1.0)) + Kp - Km;
    return sign * J;
}

}  // namespace tht
