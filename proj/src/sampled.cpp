#include "tht/sampled.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace tht {

void SampledFunction::validate() const {
    if (nodes.size() != values.size() || nodes.size() != weights.size())
        throw std::invalid_argument("SampledFunction: size mismatch");
    if (nodes.empty()) throw std::invalid_argument("SampledFunction: empty");
    double wsum = 0.0;
    for (size_t i = 0; i < nodes.size(); ++i) {
        if (!(nodes[i] > lo && nodes[i] < hi))
            throw std::invalid_argument("SampledFunction: node outside open interval");
        if (i > 0 && !(nodes[i] > nodes[i - 1]))
            throw std::invalid_argument("SampledFunction: nodes not strictly increasing");
        if (!(weights[i] > 0.0))
            throw std::invalid_argument("SampledFunction: nonpositive weight");
        wsum += weights[i];
    }
    if (std::fabs(wsum - (hi - lo)) > 1e-10 * (hi - lo))
        throw std::invalid_argument("SampledFunction: weights do not sum to the interval length");
}

namespace {

// index of first node >= x
size_t upper_node(const std::vector<double>& nodes, double x) {
    return std::lower_bound(nodes.begin(), nodes.end(), x) - nodes.begin();
}

double cubic_lagrange(const std::vector<double>& xs, const std::vector<double>& ys,
                      size_t i0, double x) {
    double s = 0.0;
    for (size_t i = i0; i < i0 + 4; ++i) {
        double l = 1.0;
        for (size_t j = i0; j < i0 + 4; ++j)
            if (j != i) l *= (x - xs[j]) / (xs[i] - xs[j]);
        s += l * ys[i];
    }
    return s;
}

}  // namespace

double SampledFunction::eval(double x) const {
    const size_t n = nodes.size();
    if (n == 1) return values[0];
    // log-singular end model through the two nearest nodes
    if (log_lo && n >= 2 && x < nodes[1]) {
        const double t0 = std::log(nodes[0] - lo), t1 = std::log(nodes[1] - lo);
        const double t = std::log(std::max(x - lo, 1e-300));
        const double c2 = (values[1] - values[0]) / (t1 - t0);
        return values[0] + c2 * (t - t0);
    }
    if (log_hi && n >= 2 && x > nodes[n - 2]) {
        const double t0 = std::log(hi - nodes[n - 1]), t1 = std::log(hi - nodes[n - 2]);
        const double t = std::log(std::max(hi - x, 1e-300));
        const double c2 = (values[n - 2] - values[n - 1]) / (t1 - t0);
        return values[n - 1] + c2 * (t - t0);
    }
    if (n < 4) {  // linear fallback
        size_t i = upper_node(nodes, x);
        if (i == 0) i = 1;
        if (i >= n) i = n - 1;
        const double u = (x - nodes[i - 1]) / (nodes[i] - nodes[i - 1]);
        return (1.0 - u) * values[i - 1] + u * values[i];
    }
    size_t i = upper_node(nodes, x);
    size_t i0 = (i >= 2) ? i - 2 : 0;
    if (i0 + 4 > n) i0 = n - 4;
    return cubic_lagrange(nodes, values, i0, x);
}

double SampledFunction::norm_l2() const {
    double s = 0.0;
    for (size_t i = 0; i < nodes.size(); ++i) s += weights[i] * values[i] * values[i];
    return std::sqrt(s);
}

double SampledFunction::inner(const SampledFunction& other) const {
    if (other.nodes.size() != nodes.size())
        throw std::invalid_argument("SampledFunction::inner: grid mismatch");
    double s = 0.0;
    for (size_t i = 0; i < nodes.size(); ++i) s += weights[i] * values[i] * other.values[i];
    return s;
}

SampledFunction SampledFunction::on_panels(const std::function<double(double)>& f,
                                           double lo, double hi,
                                           std::span<const Panel> panels, int pts) {
    const QuadRule& r = gauss_legendre(pts);
    SampledFunction s;
    s.lo = lo;
    s.hi = hi;
    s.grid_kind = "gauss-panels";
    for (const Panel& p : panels) {
        const double c = 0.5 * (p.lo + p.hi), h = 0.5 * (p.hi - p.lo);
        for (int i = 0; i < pts; ++i) {
            const double x = c + h * r.x[i];
            s.nodes.push_back(x);
            s.values.push_back(f(x));
            s.weights.push_back(h * r.w[i]);
        }
    }
    return s;
}

SampledFunction SampledFunction::on_uniform(const std::function<double(double)>& f,
                                            double lo, double hi, int n) {
    SampledFunction s;
    s.lo = lo;
    s.hi = hi;
    s.grid_kind = "uniform-midpoint";
    const double h = (hi - lo) / n;
    for (int i = 0; i < n; ++i) {
        const double x = lo + (i + 0.5) * h;
        s.nodes.push_back(x);
        s.values.push_back(f(x));
        s.weights.push_back(h);
    }
    return s;
}

void SampledFunction::write_csv(const std::string& path) const {
    std::FILE* fp = std::fopen(path.c_str(), "wb");
    if (!fp) throw std::runtime_error("cannot open for writing: " + path);
    std::fprintf(fp, "x,value\r\n");
    for (size_t i = 0; i < nodes.size(); ++i)
        std::fprintf(fp, "%.17g,%.17g\r\n", nodes[i], values[i]);
    std::fclose(fp);
}

void SampledFunction::write_sidecar(const std::string& path) const {
    nlohmann::json j;
    j["interval"] = {lo, hi};
    j["grid_kind"] = grid_kind;
    j["weights_kind"] = "quadrature";
    j["log_singular"] = {{"lo", log_lo}, {"hi", log_hi}};
    j["n"] = nodes.size();
    std::ofstream out(path);
    out << j.dump(2) << "\n";
}

SampledFunction SampledFunction::read_csv(const std::string& csv_path) {
    std::ifstream in(csv_path);
    if (!in) throw std::runtime_error("cannot open: " + csv_path);
    SampledFunction s;
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) continue;
        s.nodes.push_back(std::stod(line.substr(0, comma)));
        s.values.push_back(std::stod(line.substr(comma + 1)));
    }
    if (s.nodes.empty()) throw std::runtime_error("empty CSV: " + csv_path);
    // interval and weights are not stored in the CSV body; reconstruct a
    // trapezoid-style weight so norms remain usable.
    s.lo = s.nodes.front() - 0.5 * (s.nodes[1] - s.nodes[0]);
    s.hi = s.nodes.back() + 0.5 * (s.nodes.back() - s.nodes[s.nodes.size() - 2]);
    s.weights.resize(s.nodes.size());
    for (size_t i = 0; i < s.nodes.size(); ++i) {
        const double l = (i == 0) ? s.lo : 0.5 * (s.nodes[i - 1] + s.nodes[i]);
        const double r = (i + 1 == s.nodes.size()) ? s.hi : 0.5 * (s.nodes[i] + s.nodes[i + 1]);
        s.weights[i] = r - l;
    }
    return s;
}

}  // namespace tht
