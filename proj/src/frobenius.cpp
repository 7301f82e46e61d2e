#include "tht/frobenius.hpp"

#include <cmath>
#include <stdexcept>

namespace tht {

namespace {

double poly_eval(const std::vector<double>& c, double t) {
    double s = 0.0;
    for (size_t i = c.size(); i-- > 0;) s = s * t + c[i];
    return s;
}

double poly_deriv(const std::vector<double>& c, double t) {
    double s = 0.0;
    for (size_t i = c.size(); i-- > 1;) s = s * t + i * c[i];
    return s;
}

double poly_deriv2(const std::vector<double>& c, double t) {
    double s = 0.0;
    for (size_t i = c.size(); i-- > 2;) s = s * t + i * (i - 1) * c[i];
    return s;
}

}  // namespace

FrobeniusExpansion frobenius_coefficients(const Configuration& cfg, double lambda,
                                          int anchor, int side, int order) {
    if (order < 10) throw std::invalid_argument("frobenius_coefficients: order >= 10 required");
    const double a = cfg.endpoint(anchor);
    const double sig = cfg.sigma();

    // Taylor coefficients of P about a: P(a+t) = sum_{m=1}^4 p[m] t^m.
    // p[m+1] are the coefficients of the cubic prod_{j != anchor}(t + a - a_j).
    std::array<double, 5> p{0.0, 0.0, 0.0, 0.0, 0.0};
    {
        std::array<double, 4> c{1.0, 0.0, 0.0, 0.0};
        int deg = 0;
        for (int j = 0; j < 4; ++j) {
            if (j == anchor) continue;
            const double r = a - cfg.endpoint(j);
            for (int k = deg + 1; k > 0; --k) c[k] = c[k - 1] + r * c[k];
            c[0] = r * c[0];
            ++deg;
        }
        for (int m = 0; m < 4; ++m) p[m + 1] = c[m];
    }
    // Q(a+t) = lambda - 2 (a+t-sigma)^2 = q0 + q1 t + q2 t^2.
    const double q0 = lambda - 2.0 * (a - sig) * (a - sig);
    const double q1 = -4.0 * (a - sig);
    const double q2 = -2.0;
    const auto q = [&](int m) { return m == 0 ? q0 : (m == 1 ? q1 : (m == 2 ? q2 : 0.0)); };

    FrobeniusExpansion fe;
    fe.anchor = anchor;
    fe.side = side;
    fe.lambda = lambda;
    fe.order = order;
    fe.k = 1.0;
    fe.radius = cfg.gap(anchor);
    fe.b.assign(order + 1, 0.0);
    fe.d.assign(order + 1, 0.0);
    fe.b[0] = 1.0;
    fe.d[0] = 1.0;

    // Order-r balance of (P e')' - Q e = rhs_r:
    //   (r+1)^2 p1 e_{r+1} = -(r+1) sum_{m=2..min(4,r+1)} p_m (r+2-m) e_{r+2-m}
    //                        + sum_{m=0..min(2,r)} q_m e_{r-m} + rhs_r .
    // For psi1 the right side is 0; for the bounded part of psi2 it is
    // -k R_r where R is the residual of ln|t| psi1:
    //   R_r = sum_{j=0..min(3,r+1)} p_{j+1} (2(r+1)-j) b_{r+1-j}.
    if (p[1] == 0.0) throw std::runtime_error("frobenius_coefficients: degenerate endpoint");
    for (int r = 0; r < order; ++r) {
        double acc = 0.0;
        for (int m = 2; m <= std::min(4, r + 1); ++m)
            acc -= (r + 1) * p[m] * (r + 2 - m) * fe.b[r + 2 - m];
        for (int m = 0; m <= std::min(2, r); ++m) acc += q(m) * fe.b[r - m];
        fe.b[r + 1] = acc / (double(r + 1) * (r + 1) * p[1]);
    }
    for (int r = 0; r < order; ++r) {
        double R = 0.0;
        for (int j = 0; j <= std::min(3, r + 1); ++j)
            R += p[j + 1] * (2.0 * (r + 1) - j) * fe.b[r + 1 - j];
        double acc = -fe.k * R;
        for (int m = 2; m <= std::min(4, r + 1); ++m)
            acc -= (r + 1) * p[m] * (r + 2 - m) * fe.d[r + 2 - m];
        for (int m = 0; m <= std::min(2, r); ++m) acc += q(m) * fe.d[r - m];
        fe.d[r + 1] = acc / (double(r + 1) * (r + 1) * p[1]);
        if (!std::isfinite(fe.d[r + 1]) || !std::isfinite(fe.b[r + 1]))
            throw std::runtime_error("frobenius_coefficients: recurrence produced non-finite term");
    }
    return fe;
}

double FrobeniusExpansion::psi1(double t) const { return poly_eval(b, t); }
double FrobeniusExpansion::psi1_deriv(double t) const { return poly_deriv(b, t); }
double FrobeniusExpansion::psi1_deriv2(double t) const { return poly_deriv2(b, t); }

double FrobeniusExpansion::psi2(double t) const {
    return poly_eval(d, t) + k * std::log(std::fabs(t)) * poly_eval(b, t);
}

double FrobeniusExpansion::psi2_deriv(const Configuration& cfg, double t) const {
    (void)cfg;
    const double lg = std::log(std::fabs(t));
    return poly_deriv(d, t) + k * (poly_eval(b, t) / t + lg * poly_deriv(b, t));
}

double FrobeniusExpansion::psi2_deriv2(const Configuration& cfg, double t) const {
    (void)cfg;
    const double lg = std::log(std::fabs(t));
    return poly_deriv2(d, t) +
           k * (-poly_eval(b, t) / (t * t) + 2.0 * poly_deriv(b, t) / t + lg * poly_deriv2(b, t));
}

std::array<double, 2> FrobeniusExpansion::psi1_state(const Configuration& cfg, double t) const {
    const double x = cfg.endpoint(anchor) + t;
    return {psi1(t), cfg.eval_P(x) * psi1_deriv(t)};
}

std::array<double, 2> FrobeniusExpansion::psi2_state(const Configuration& cfg, double t) const {
    const double x = cfg.endpoint(anchor) + t;
    const double P = cfg.eval_P(x);
    const double P_over_t = cfg.eval_P_over(anchor, x);  // exactly P/t
    const double lg = std::log(std::fabs(t));
    const double val = poly_eval(d, t) + k * lg * poly_eval(b, t);
    const double pd = P * poly_deriv(d, t) +
                      k * (P_over_t * poly_eval(b, t) + lg * P * poly_deriv(b, t));
    return {val, pd};
}

double FrobeniusExpansion::ode_residual_psi1(const Configuration& cfg, double t) const {
    const double x = cfg.endpoint(anchor) + t;
    const double lhs = cfg.eval_P(x) * psi1_deriv2(t) + cfg.eval_P_prime(x) * psi1_deriv(t);
    const double sig = cfg.sigma();
    return lhs + (2.0 * (x - sig) * (x - sig) - lambda) * psi1(t);
}

}  // namespace tht
