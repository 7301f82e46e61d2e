#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tht {

/// Adaptive Dormand-Prince 5(4) for a 2-component first-order system.
/// Local error is controlled per unit length; supports optional dense
/// recording at caller-supplied abscissae (monotone along the direction of
/// integration).
class DormandPrince {
public:
    using State = std::array<double, 2>;
    using Rhs = std::function<State(double, const State&)>;

    struct Record {
        double x;
        State y;
    };

    /// Integrates y' = f(x,y) from x0 to x1 (either direction).  When
    /// `targets` is nonempty, the step size is capped so each target is hit
    /// exactly and its state recorded.  Throws on step-size underflow.
    static State propagate(const Rhs& f, double x0, double x1, State y0,
                           double tol, std::vector<Record>* recorded = nullptr,
                           const std::vector<double>* targets = nullptr) {
        if (x0 == x1) return y0;
        const double dir = x1 > x0 ? 1.0 : -1.0;
        double x = x0;
        State y = y0;
        double h = dir * std::min(0.1 * std::fabs(x1 - x0), 1e-2);
        size_t next_target = 0;
        if (targets && recorded) {
            while (next_target < targets->size() &&
                   dir * ((*targets)[next_target] - x) <= 0.0) {
                recorded->push_back({(*targets)[next_target], y});
                ++next_target;
            }
        }
        State k1 = f(x, y);
        int rejected_in_row = 0;
        for (int iter = 0; iter < 20000000; ++iter) {
            bool hit_target = false;
            double cap = x1;
            if (targets && next_target < targets->size() &&
                dir * ((*targets)[next_target] - cap) < 0.0)
                cap = (*targets)[next_target];
            if (dir * (x + h - cap) >= 0.0) {
                h = cap - x;
                hit_target = true;
            }
            State k2, k3, k4, k5, k6, k7, y5, y4;
            step(f, x, y, h, k1, k2, k3, k4, k5, k6, k7, y5, y4);
            double err = 0.0;
            for (int i = 0; i < 2; ++i) {
                const double sc = 1.0 + std::max(std::fabs(y[i]), std::fabs(y5[i]));
                err = std::max(err, std::fabs(y5[i] - y4[i]) / sc);
            }
            const double tol_here = tol * std::fabs(h);
            if (err <= tol_here || std::fabs(h) < 1e-14 * (1.0 + std::fabs(x))) {
                x += h;
                y = y5;
                k1 = k7;  // FSAL
                rejected_in_row = 0;
                if (hit_target) {
                    if (cap == x1) {
                        if (recorded && targets)
                            while (next_target < targets->size()) {
                                recorded->push_back({(*targets)[next_target], y});
                                ++next_target;
                            }
                        return y;
                    }
                    if (recorded) recorded->push_back({x, y});
                    ++next_target;
                }
            } else {
                if (++rejected_in_row > 60)
                    throw std::runtime_error("DormandPrince: step-size underflow at x = " +
                                             std::to_string(x));
            }
            const double ratio = err > 0.0 ? std::pow(tol_here / err, 0.2) : 5.0;
            h *= std::clamp(0.9 * ratio, 0.2, 5.0);
            if (!std::isfinite(h) || h == 0.0)
                throw std::runtime_error("DormandPrince: invalid step at x = " + std::to_string(x));
        }
        throw std::runtime_error("DormandPrince: iteration cap exceeded");
    }

private:
    static void step(const Rhs& f, double x, const State& y, double h,
                     const State& k1, State& k2, State& k3, State& k4, State& k5,
                     State& k6, State& k7, State& y5, State& y4) {
        auto fma2 = [](const State& y0, double h_, std::initializer_list<std::pair<double, const State*>> terms) {
            State out = y0;
            for (auto& [c, k] : terms) {
                out[0] += h_ * c * (*k)[0];
                out[1] += h_ * c * (*k)[1];
            }
            return out;
        };
        k2 = f(x + h / 5.0, fma2(y, h, {{1.0 / 5.0, &k1}}));
        k3 = f(x + 3.0 * h / 10.0, fma2(y, h, {{3.0 / 40.0, &k1}, {9.0 / 40.0, &k2}}));
        k4 = f(x + 4.0 * h / 5.0,
               fma2(y, h, {{44.0 / 45.0, &k1}, {-56.0 / 15.0, &k2}, {32.0 / 9.0, &k3}}));
        k5 = f(x + 8.0 * h / 9.0,
               fma2(y, h, {{19372.0 / 6561.0, &k1}, {-25360.0 / 2187.0, &k2},
                           {64448.0 / 6561.0, &k3}, {-212.0 / 729.0, &k4}}));
        k6 = f(x + h, fma2(y, h, {{9017.0 / 3168.0, &k1}, {-355.0 / 33.0, &k2},
                                  {46732.0 / 5247.0, &k3}, {49.0 / 176.0, &k4},
                                  {-5103.0 / 18656.0, &k5}}));
        y5 = fma2(y, h, {{35.0 / 384.0, &k1}, {500.0 / 1113.0, &k3}, {125.0 / 192.0, &k4},
                         {-2187.0 / 6784.0, &k5}, {11.0 / 84.0, &k6}});
        k7 = f(x + h, y5);
        y4 = fma2(y, h, {{5179.0 / 57600.0, &k1}, {7571.0 / 16695.0, &k3},
                         {393.0 / 640.0, &k4}, {-92097.0 / 339200.0, &k5},
                         {187.0 / 2100.0, &k6}, {1.0 / 40.0, &k7}});
    }
};

}  // namespace tht
