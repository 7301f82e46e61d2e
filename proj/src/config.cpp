#include "tht/config.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace tht {

Configuration::Configuration(double a1, double a2, double a3, double a4)
    : a_{a1, a2, a3, a4} {
    if (!(a1 < a2 && a2 < a3 && a3 < a4))
        throw std::invalid_argument("Configuration: endpoints must satisfy a1 < a2 < a3 < a4");
    if (!std::isfinite(a1) || !std::isfinite(a4))
        throw std::invalid_argument("Configuration: endpoints must be finite");
    for (int i = 0; i < 4; ++i) {
        double w = 1.0;
        for (int j = 0; j < 4; ++j)
            if (j != i) w /= (a_[i] - a_[j]);
        w_[i] = w;
    }
}

double Configuration::eval_P(double x) const {
    return (x - a_[0]) * (x - a_[1]) * (x - a_[2]) * (x - a_[3]);
}

double Configuration::eval_P_prime(double x) const {
    double s = 0.0;
    for (int i = 0; i < 4; ++i) s += eval_P_over(i, x);
    return s;
}

double Configuration::eval_P_second(double x) const {
    double s = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
            double p = 2.0;
            for (int k = 0; k < 4; ++k)
                if (k != i && k != j) p *= (x - a_[k]);
            s += p;
        }
    return s;
}

double Configuration::eval_P_over(int i, double x) const {
    double p = 1.0;
    for (int j = 0; j < 4; ++j)
        if (j != i) p *= (x - a_[j]);
    return p;
}

std::array<double, 5> Configuration::expanded_P() const {
    std::array<double, 5> c{1.0, 0.0, 0.0, 0.0, 0.0};  // running product, low degree first
    int deg = 0;
    for (int i = 0; i < 4; ++i) {
        // multiply by (x - a_i)
        for (int k = deg + 1; k > 0; --k) c[k] = c[k - 1] - a_[i] * c[k];
        c[0] = -a_[i] * c[0];
        ++deg;
    }
    return c;
}

double Configuration::eval_v(double y) const {
    double s = 0.0;
    for (int i = 0; i < 4; ++i) {
        const double t = y - a_[i];
        if (t == 0.0)
            throw std::domain_error("eval_v: logarithmic singularity at endpoint");
        s += w_[i] * std::log(std::fabs(t));
    }
    return s;
}

double Configuration::eval_v_prime(double y) const {
    double s = 0.0;
    for (int i = 0; i < 4; ++i) {
        const double t = y - a_[i];
        if (t == 0.0)
            throw std::domain_error("eval_v_prime: pole at endpoint");
        s += w_[i] / t;
    }
    return s;
}

double Configuration::gap(int i) const {
    double g = std::numeric_limits<double>::infinity();
    for (int j = 0; j < 4; ++j)
        if (j != i) g = std::min(g, std::fabs(a_[i] - a_[j]));
    return g;
}

double Configuration::min_gap() const {
    double g = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 3; ++i) g = std::min(g, a_[i + 1] - a_[i]);
    return g;
}

namespace {

double derivative_of(const DiffFunction& f, const Configuration& cfg, double x) {
    if (f.deriv) return f.deriv(x);
    double dist = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 4; ++i) dist = std::min(dist, std::fabs(x - cfg.endpoint(i)));
    const double eps3 = std::cbrt(std::numeric_limits<double>::epsilon());
    const double h = std::sqrt(std::min(dist, 1.0)) * std::max(1.0, std::fabs(x)) * eps3;
    return (f.value(x + h) - f.value(x - h)) / (2.0 * h);
}

}  // namespace

double lagrange_bracket(const DiffFunction& f, const DiffFunction& g,
                        const Configuration& cfg, double x) {
    const double P = cfg.eval_P(x);
    return f.value(x) * P * derivative_of(g, cfg, x) -
           g.value(x) * P * derivative_of(f, cfg, x);
}

double lagrange_bracket_limit(const DiffFunction& f, const DiffFunction& g,
                              const Configuration& cfg, int i, int side,
                              double base_offset) {
    // Three geometric offsets, then Richardson extrapolation assuming the
    // leading deviation is linear in the offset.
    const double a = cfg.endpoint(i);
    double v[3];
    double eps = base_offset;
    for (int k = 0; k < 3; ++k, eps *= 0.1)
        v[k] = lagrange_bracket(f, g, cfg, a + side * eps);
    // with ratio 10: f(e) = L + C e  ->  L = (10 f(e/10) - f(e)) / 9
    const double r1 = (10.0 * v[1] - v[0]) / 9.0;
    const double r2 = (10.0 * v[2] - v[1]) / 9.0;
    return (10.0 * r2 - r1) / 9.0;
}

double SolverParams::eps(const Configuration& cfg) const {
    return eps_match > 0.0 ? eps_match : cfg.min_gap() / 10.0;
}

RunConfig RunConfig::defaults() {
    return RunConfig{Configuration(0.0, 1.5, 6.0, 7.5), SolverParams{}};
}

RunConfig RunConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    nlohmann::json j;
    in >> j;
    RunConfig rc = defaults();
    const auto d = rc.cfg;
    Configuration cfg(j.value("a1", d.a1()), j.value("a2", d.a2()),
                      j.value("a3", d.a3()), j.value("a4", d.a4()));
    SolverParams p;
    p.eps_match = j.value("eps_match", p.eps_match);
    p.series_order = j.value("series_order", p.series_order);
    p.ode_tol = j.value("ode_tol", p.ode_tol);
    p.tol_bc = j.value("tol_bc", p.tol_bc);
    p.zero_floor = j.value("zero_floor", p.zero_floor);
    p.lambda_lo = j.value("lambda_lo", p.lambda_lo);
    p.lambda_hi = j.value("lambda_hi", p.lambda_hi);
    p.scan_step = j.value("scan_step", p.scan_step);
    p.eigen_count = j.value("eigen_count", p.eigen_count);
    p.threads = j.value("threads", p.threads);
    return RunConfig{cfg, p};
}

std::string RunConfig::canonical_json() const {
    nlohmann::json j;
    j["a1"] = cfg.a1(); j["a2"] = cfg.a2(); j["a3"] = cfg.a3(); j["a4"] = cfg.a4();
    j["eps_match"] = params.eps_match;
    j["series_order"] = params.series_order;
    j["ode_tol"] = params.ode_tol;
    j["tol_bc"] = params.tol_bc;
    j["zero_floor"] = params.zero_floor;
    j["lambda_lo"] = params.lambda_lo;
    j["lambda_hi"] = params.lambda_hi;
    j["scan_step"] = params.scan_step;
    j["eigen_count"] = params.eigen_count;
    return j.dump();
}

std::string RunConfig::digest() const {
    const std::string s = canonical_json();
    unsigned long long h = 14695981039346656037ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

}  // namespace tht
