#pragma once

#include <array>
#include <functional>
#include <string>

namespace tht {

/// Problem geometry: four endpoints a1 < a2 < a3 < a4 on the line.
///
/// The object lives on [a2,a4], measurements are taken on [a1,a3], and the
/// two intervals overlap on [a2,a3].  All derived quantities (the quartic P,
/// its derivatives, the centroid sigma, the maximal-domain function v) are
/// evaluated in product form so they stay exact near the roots.
class Configuration {
public:
    Configuration(double a1, double a2, double a3, double a4);

    double a1() const { return a_[0]; }
    double a2() const { return a_[1]; }
    double a3() const { return a_[2]; }
    double a4() const { return a_[3]; }
    double endpoint(int i) const { return a_[i]; }           // i in 0..3
    const std::array<double, 4>& endpoints() const { return a_; }

    /// Arithmetic mean of the four endpoints.
    double sigma() const { return 0.25 * (a_[0] + a_[1] + a_[2] + a_[3]); }

    /// P(x) = prod_i (x - a_i), evaluated as the product.
    double eval_P(double x) const;
    double eval_P_prime(double x) const;
    double eval_P_second(double x) const;

    /// P(x) / (x - a_i) = prod_{j != i} (x - a_j); finite at x = a_i.
    double eval_P_over(int i, double x) const;

    /// Expanded monomial coefficients of P, lowest degree first (5 entries).
    std::array<double, 5> expanded_P() const;

    /// Maximal-domain function v(y) = sum_i w_i ln|y - a_i| with
    /// w_i = prod_{j != i} 1/(a_i - a_j).  Throws std::domain_error at the
    /// endpoints where the logarithm blows up.
    double eval_v(double y) const;
    double eval_v_prime(double y) const;

    /// w_i = prod_{j != i} 1/(a_i - a_j)
    double log_weight(int i) const { return w_[i]; }

    /// Distance from a_i to the nearest other endpoint.
    double gap(int i) const;
    double min_gap() const;

    bool operator==(const Configuration& o) const { return a_ == o.a_; }

private:
    std::array<double, 4> a_;
    std::array<double, 4> w_;
};

/// Scalar function with an optional analytic derivative.  When no derivative
/// is supplied the bracket falls back to central differences with step
/// h = sqrt(min(dist,1)) * max(1,|x|) * eps^(1/3), dist being the distance to
/// the nearest endpoint (the bracket degenerates fastest there).
struct DiffFunction {
    std::function<double(double)> value;
    std::function<double(double)> deriv;   // may be empty
};

/// Lagrange sesquilinear form [f,g](x) = f P g' - g P f' (real-valued case).
double lagrange_bracket(const DiffFunction& f, const DiffFunction& g,
                        const Configuration& cfg, double x);

/// One-sided limit of [f,g] at endpoint a_i, taken from inside the adjacent
/// interval: samples at geometric offsets and Richardson-extrapolates.
/// side = +1 approaches from the right (a_i^+), -1 from the left.
double lagrange_bracket_limit(const DiffFunction& f, const DiffFunction& g,
                              const Configuration& cfg, int i, int side,
                              double base_offset = 1e-4);

/// Solver knobs shared by the eigensolver and the verification suite.
struct SolverParams {
    double eps_match = 0.0;      // 0 -> min_gap()/10
    int series_order = 40;
    double ode_tol = 1e-12;
    double tol_bc = 1e-6;
    double zero_floor = 1e-6;    // theta for sign-change counting
    double lambda_lo = -300.0;
    double lambda_hi = 300.0;
    double scan_step = 1.0;
    int eigen_count = 8;
    int threads = 0;             // 0 -> hardware concurrency

    double eps(const Configuration& cfg) const;
};

/// Reads a JSON config file: keys a1..a4 plus any SolverParams field.
/// Missing keys fall back to the paper's configuration (0, 1.5, 6, 7.5)
/// and the defaults above.
struct RunConfig {
    Configuration cfg;
    SolverParams params;

    static RunConfig defaults();
    static RunConfig from_file(const std::string& path);
    std::string canonical_json() const;
    std::string digest() const;   // FNV-1a over canonical_json
};

}  // namespace tht
