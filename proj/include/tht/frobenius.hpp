#pragma once

#include <array>
#include <vector>

#include "tht/config.hpp"

namespace tht {

/// Frobenius data for L psi = lambda psi at a regular singular endpoint a_i.
///
/// Both indicial roots are 0 here (P has simple roots and the potential is
/// regular), so the local basis is
///   psi1(t) = sum b_n t^n,                        b_0 = 1,
///   psi2(t) = sum d_n t^n + k ln|t| psi1(t),      d_0 = 1, k = 1,
/// with t = x - a_i.  The same coefficient arrays serve both sides of the
/// anchor; `side` records which one-sided neighborhood the expansion is used
/// on.  In the bounded/log decomposition of a general local solution
/// c0 psi1 + c1 psi2, the value of the bounded part at a_i is c0 + c1 and the
/// log coefficient is c1 (the ell_11 / ell_21 convention at a3).
struct FrobeniusExpansion {
    int anchor = 0;      // endpoint index 0..3
    int side = +1;       // +1 right neighborhood, -1 left
    double lambda = 0.0;
    int order = 0;       // N
    std::vector<double> b;  // b[0..N]
    std::vector<double> d;  // d[0..N]
    double k = 1.0;
    double radius = 0.0;  // distance to the nearest other endpoint

    double psi1(double t) const;
    double psi1_deriv(double t) const;
    double psi1_deriv2(double t) const;
    double psi2(double t) const;
    double psi2_deriv(const Configuration& cfg, double t) const;
    double psi2_deriv2(const Configuration& cfg, double t) const;

    /// (psi, P psi') at x = a_anchor + t; P psi2' uses the exact product form
    /// of P(x)/t so nothing blows up as t -> 0.
    std::array<double, 2> psi1_state(const Configuration& cfg, double t) const;
    std::array<double, 2> psi2_state(const Configuration& cfg, double t) const;

    /// Residual (P psi1')' + (2(x-sigma)^2 - lambda) psi1 of the truncated
    /// series; O(t^N) by construction, used as a self-check.
    double ode_residual_psi1(const Configuration& cfg, double t) const;
};

/// Solves the recurrences order by order from the Taylor expansions of P and
/// 2(x-sigma)^2 - lambda about the anchor (exact polynomial shifts).
FrobeniusExpansion frobenius_coefficients(const Configuration& cfg, double lambda,
                                          int anchor, int side, int order);

}  // namespace tht
