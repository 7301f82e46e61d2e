#include "tht/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tht {

double hilbert_indicator(double a, double b, double x) {
    if (!(a < b)) throw std::invalid_argument("hilbert_indicator: need a < b");
    if (x == a || x == b)
        throw std::domain_error("hilbert_indicator: logarithmic singularity at interval endpoint");
    return std::log(std::fabs((b - x) / (x - a))) / std::numbers::pi;
}

namespace {

double floor_for(const PvOptions& opt, double width) {
    return opt.floor_width > 0.0 ? opt.floor_width : 1e-12 * width;
}

// Panels over [lo,hi] split at the given interior breakpoints, graded into
// every breakpoint and into both interval ends.
std::vector<Panel> panels_with_breaks(double lo, double hi,
                                      std::vector<double> breaks,
                                      const PvOptions& opt) {
    breaks.erase(std::remove_if(breaks.begin(), breaks.end(),
                                [&](double b) { return !(b > lo && b < hi); }),
                 breaks.end());
    std::sort(breaks.begin(), breaks.end());
    std::vector<double> cuts{lo};
    for (double b : breaks)
        if (b > cuts.back()) cuts.push_back(b);
    cuts.push_back(hi);
    std::vector<Panel> panels;
    const double fl = floor_for(opt, hi - lo);
    for (size_t i = 0; i + 1 < cuts.size(); ++i) {
        auto p = double_graded_panels(cuts[i], cuts[i + 1], opt.grade_ratio, fl);
        append_panels(panels, p);
    }
    return panels;
}

}  // namespace

double pv_hilbert(const std::function<double(double)>& f,
                  double lo, double hi, double x, const PvOptions& opt) {
    if (!(lo < hi)) throw std::invalid_argument("pv_hilbert: empty interval");
    if (x == lo || x == hi)
        throw std::domain_error("pv_hilbert: x at interval endpoint");
    const bool interior = (x > lo && x < hi);
    std::vector<double> breaks = opt.splits;
    double total;
    if (interior) {
        const double fx = f(x);
        breaks.push_back(x);
        auto panels = panels_with_breaks(lo, hi, breaks, opt);
        total = integrate([&](double y) { return (f(y) - fx) / (y - x); },
                          panels, opt.pts);
        total += fx * std::log(std::fabs((hi - x) / (x - lo)));
    } else {
        auto panels = panels_with_breaks(lo, hi, breaks, opt);
        total = integrate([&](double y) { return f(y) / (y - x); }, panels, opt.pts);
    }
    return total / std::numbers::pi;
}

double apply_HT_at(const std::function<double(double)>& f,
                   const Configuration& cfg, double x, const PvOptions& opt) {
    return pv_hilbert(f, cfg.a2(), cfg.a4(), x, opt);
}

SampledFunction apply_HT(const std::function<double(double)>& f,
                         const Configuration& cfg,
                         const SampledFunction& out_grid, const PvOptions& opt) {
    SampledFunction g = out_grid;
    for (size_t i = 0; i < g.nodes.size(); ++i)
        g.values[i] = apply_HT_at(f, cfg, g.nodes[i], opt);
    g.log_lo = false;
    g.log_hi = false;
    return g;
}

SampledFunction apply_HT(const SampledFunction& f, const Configuration& cfg,
                         const SampledFunction& out_grid, const PvOptions& opt) {
    return apply_HT([&f](double y) { return f.eval(y); }, cfg, out_grid, opt);
}

double apply_HT_adjoint_at(const std::function<double(double)>& g,
                           const Configuration& cfg, double y, const PvOptions& opt) {
    return -pv_hilbert(g, cfg.a1(), cfg.a3(), y, opt);
}

SampledFunction apply_HT_adjoint(const std::function<double(double)>& g,
                                 const Configuration& cfg,
                                 const SampledFunction& out_grid, const PvOptions& opt) {
    SampledFunction f = out_grid;
    for (size_t i = 0; i < f.nodes.size(); ++i)
        f.values[i] = apply_HT_adjoint_at(g, cfg, f.nodes[i], opt);
    f.log_lo = false;
    f.log_hi = false;
    return f;
}

SampledFunction apply_HT_adjoint(const SampledFunction& g, const Configuration& cfg,
                                 const SampledFunction& out_grid, const PvOptions& opt) {
    return apply_HT_adjoint([&g](double x) { return g.eval(x); }, cfg, out_grid, opt);
}

}  // namespace tht
