#pragma once

#include <functional>
#include <vector>

#include "tht/config.hpp"
#include "tht/quadrature.hpp"
#include "tht/sampled.hpp"

namespace tht {

/// Hilbert transform of the indicator of [a,b] with the kernel 1/(y-x):
///   (1/pi) p.v. int_a^b dy/(y-x) = (1/pi) ln|(b-x)/(x-a)|.
/// Throws std::domain_error at x = a or x = b.
double hilbert_indicator(double a, double b, double x);

/// Options for the principal-value quadrature.
struct PvOptions {
    /// Interior points where the integrand is singular or kinked (e.g. a3
    /// for the eigenfunctions); panels split and grade into each from both
    /// sides.
    std::vector<double> splits;
    int pts = 12;                // Gauss points per panel
    double grade_ratio = 2.0;
    double floor_width = 0.0;    // 0 -> 1e-12 * local width
};

/// (1/pi) p.v. int_lo^hi f(y)/(y-x) dy.
///
/// Interior x: singularity subtraction -- regular quadrature of
/// (f(y)-f(x))/(y-x) plus f(x) * hilbert_indicator(lo,hi,x); f must be
/// Lipschitz near x.  Exterior x: plain quadrature with grading toward the
/// near endpoint.  x exactly at lo or hi is a domain error.
double pv_hilbert(const std::function<double(double)>& f,
                  double lo, double hi, double x, const PvOptions& opt = {});

/// Truncated transform H_T: object f on [a2,a4], measured on out_grid in
/// [a1,a3].  Kernel 1/(y-x) as in the defining equation.
SampledFunction apply_HT(const std::function<double(double)>& f,
                         const Configuration& cfg,
                         const SampledFunction& out_grid,
                         const PvOptions& opt = {});
SampledFunction apply_HT(const SampledFunction& f, const Configuration& cfg,
                         const SampledFunction& out_grid, const PvOptions& opt = {});

/// Pointwise H_T evaluation.
double apply_HT_at(const std::function<double(double)>& f,
                   const Configuration& cfg, double x, const PvOptions& opt = {});

/// Adjoint H_T^*: data g on [a1,a3], output on out_grid in [a2,a4];
/// (H_T^* g)(y) = -(1/pi) p.v. int_{a1}^{a3} g(x)/(x-y) dx.
SampledFunction apply_HT_adjoint(const std::function<double(double)>& g,
                                 const Configuration& cfg,
                                 const SampledFunction& out_grid,
                                 const PvOptions& opt = {});
SampledFunction apply_HT_adjoint(const SampledFunction& g, const Configuration& cfg,
                                 const SampledFunction& out_grid, const PvOptions& opt = {});

double apply_HT_adjoint_at(const std::function<double(double)>& g,
                           const Configuration& cfg, double y, const PvOptions& opt = {});

}  // namespace tht
