#include "tht/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace tht {

namespace {

QuadRule make_rule(int n) {
    QuadRule r;
    r.x.resize(n);
    r.w.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        // Chebyshev-based initial guess, then Newton on P_n.
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double p0, p1;
        for (int iter = 0; iter < 100; ++iter) {
            p0 = 1.0;
            p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            const double dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::fabs(dx) < 1e-16) break;
        }
        p0 = 1.0;
        p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        const double dp = n * (x * p1 - p0) / (x * x - 1.0);
        r.x[i] = -x;
        r.x[n - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        r.w[i] = w;
        r.w[n - 1 - i] = w;
    }
    return r;
}

}  // namespace

const QuadRule& gauss_legendre(int n) {
    if (n < 1 || n > 128) throw std::invalid_argument("gauss_legendre: order out of range");
    static std::map<int, QuadRule> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, make_rule(n)).first;
    return it->second;
}

std::vector<Panel> uniform_panels(double lo, double hi, int count) {
    std::vector<Panel> p;
    p.reserve(count);
    const double h = (hi - lo) / count;
    for (int i = 0; i < count; ++i)
        p.push_back({lo + i * h, i + 1 == count ? hi : lo + (i + 1) * h});
    return p;
}

std::vector<Panel> graded_panels(double lo, double hi, bool toward_lo,
                                 double ratio, double floor_width) {
    const double w = hi - lo;
    if (w <= 0.0) return {};
    if (floor_width <= 0.0) floor_width = 1e-12 * w;
    // offsets from the graded end: floor, floor*ratio, ... until w
    std::vector<double> off{0.0};
    double t = floor_width;
    while (t < w) {
        off.push_back(t);
        t *= ratio;
    }
    off.push_back(w);
    std::vector<Panel> p;
    p.reserve(off.size());
    for (size_t i = 0; i + 1 < off.size(); ++i) {
        if (toward_lo)
            p.push_back({lo + off[i], lo + off[i + 1]});
        else
            p.push_back({hi - off[i + 1], hi - off[i]});
    }
    if (!toward_lo) std::reverse(p.begin(), p.end());
    return p;
}

std::vector<Panel> double_graded_panels(double lo, double hi,
                                        double ratio, double floor_width) {
    const double mid = 0.5 * (lo + hi);
    auto p = graded_panels(lo, mid, true, ratio, floor_width);
    append_panels(p, graded_panels(mid, hi, false, ratio, floor_width));
    return p;
}

void append_panels(std::vector<Panel>& dst, const std::vector<Panel>& src) {
    dst.insert(dst.end(), src.begin(), src.end());
}

double integrate(const std::function<double(double)>& f,
                 std::span<const Panel> panels, int pts) {
    const QuadRule& r = gauss_legendre(pts);
    double total = 0.0;
    for (const Panel& p : panels) {
        const double c = 0.5 * (p.lo + p.hi);
        const double h = 0.5 * (p.hi - p.lo);
        double s = 0.0;
        for (int i = 0; i < pts; ++i) s += r.w[i] * f(c + h * r.x[i]);
        total += s * h;
    }
    return total;
}

double integrate(const std::function<double(double)>& f,
                 double lo, double hi, int pts, int count) {
    auto p = uniform_panels(lo, hi, count);
    return integrate(f, p, pts);
}

}  // namespace tht
