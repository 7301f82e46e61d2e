#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "tht/quadrature.hpp"

namespace tht {

/// A function sampled on an ascending grid strictly inside (lo,hi), carrying
/// quadrature weights for the grid it was built on.
///
/// Interpolation between nodes is local cubic Lagrange; near an endpoint
/// flagged log-singular the local model c1 + c2*ln|x - anchor| is used
/// instead, matching the known structure of the singular functions.
struct SampledFunction {
    double lo = 0.0, hi = 0.0;
    std::vector<double> nodes;
    std::vector<double> values;
    std::vector<double> weights;
    bool log_lo = false;   // log-singular at the lo endpoint
    bool log_hi = false;
    std::string grid_kind = "custom";

    void validate() const;          // throws on invariant violation
    double eval(double x) const;
    double norm_l2() const;         // sqrt(sum w v^2)
    double inner(const SampledFunction& other) const;  // same grid assumed

    /// Samples f at the Gauss nodes of the given panels; weights are the
    /// corresponding quadrature weights (they sum to hi-lo).
    static SampledFunction on_panels(const std::function<double(double)>& f,
                                     double lo, double hi,
                                     std::span<const Panel> panels, int pts = 12);

    static SampledFunction on_uniform(const std::function<double(double)>& f,
                                      double lo, double hi, int n);

    /// CSV with header row "x,value"; floats at 17 significant digits.
    void write_csv(const std::string& path) const;
    /// JSON sidecar (interval, grid kind, weights kind, flags).
    void write_sidecar(const std::string& path) const;
    static SampledFunction read_csv(const std::string& csv_path);
};

}  // namespace tht
