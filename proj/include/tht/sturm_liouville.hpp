#pragma once

#include <array>
#include <vector>

#include "tht/config.hpp"
#include "tht/frobenius.hpp"
#include "tht/sampled.hpp"

namespace tht {

/// Coefficients of a local solution in the canonical Frobenius basis
/// {psi1, psi2}.  ell11/ell21 are the bounded-part value and log coefficient
/// at the anchor (the transmission quantities at a3).
struct BasisCoefficients {
    double c_psi1 = 0.0;
    double c_psi2 = 0.0;
    double ell11() const { return c_psi1 + c_psi2; }
    double ell21() const { return c_psi2; }
};

/// Propagates (psi, P psi') across [from_x, to_x], which must stay strictly
/// inside one subinterval.  tol is the local error per unit length.
std::array<double, 2> integrate_interior(const Configuration& cfg, double lambda,
                                         double from_x, std::array<double, 2> state,
                                         double to_x, double tol);

/// Expresses a state (psi, P psi') observed at t = x - anchor in the local
/// basis of `fe`.  Throws when the 2x2 basis matrix is ill-conditioned
/// (condition > 1e8; epsilon too large or series order too small).
BasisCoefficients match_log_basis(const Configuration& cfg, const FrobeniusExpansion& fe,
                                  std::array<double, 2> state, double t);

/// Full data of one shooting pass at a given lambda.
struct ShootingData {
    double lambda = 0.0;
    BasisCoefficients at_a3;   // extracted at a3 - eps, reused on the + side
    BasisCoefficients at_a4;   // extracted at a4 - eps
    double defect = 0.0;       // normalized log coefficient at a4
    std::array<double, 2> state_a3m{}, state_a4m{};
};

ShootingData shoot(const Configuration& cfg, double lambda, const SolverParams& params);

/// D(lambda): log-branch coefficient at a4 of the solution that is bounded
/// at a2 and satisfies the a3 transmission conditions; zero iff lambda is an
/// eigenvalue of the self-adjoint extension.
double boundary_defect(const Configuration& cfg, double lambda, const SolverParams& params);

/// Scans D on [lambda_lo, lambda_hi], brackets sign changes and refines each
/// root by bisection+secant to relative 1e-10.  Returns sorted eigenvalues.
/// With expand=true the range grows geometrically until max_count roots are
/// bracketed.
std::vector<double> eigen_search(const Configuration& cfg, double lambda_lo,
                                 double lambda_hi, int max_count,
                                 const SolverParams& params, bool expand = false);

/// The max_count eigenvalues closest to zero, ascending.
std::vector<double> select_central(const std::vector<double>& eigs, int max_count);

/// Normalized eigenfunction of the two-interval problem, stored as Frobenius
/// series near a2, a3 (both sides) and a4 plus dense interior states.
class PiecewiseEigenfunction {
public:
    double lambda() const { return lambda_; }
    double ell11() const { return l11_; }
    double ell21() const { return l21_; }
    double norm() const { return 1.0; }
    double eps() const { return eps_; }
    double defect() const { return defect_; }     // residual log coefficient at a4

    /// Value anywhere in (a2,a4) except exactly at a2/a3/a4.
    double eval(double y) const;
    /// L f = (P f')' + 2(y-sigma)^2 f via series differentiation near the
    /// anchors and local polynomial differentiation of the dense samples.
    double eval_L(double y) const;

    /// lim P psi'(y) computed from the series at offset t of the endpoint
    /// (anchor 1 = a2, side +1; anchor 3 = a4, side -1).
    double boundary_flux_a2(double t) const;
    double boundary_flux_a4(double t) const;

    /// Re-extracts the a3 coefficients from the plus-side dense solution at
    /// offset t (transmission self-check).
    BasisCoefficients reextract_a3_plus(const Configuration& cfg, double t) const;

    /// Local structure at a3: psi(y) = bounded_part_a3(t) + log_coeff_a3(t) ln|t|
    /// with t = y - a3; both parts are analytic across a3.
    double bounded_part_a3(double t) const;
    double log_coeff_a3(double t) const;

    /// Bounded a2 branch c * psi1(t) with t = y - a2; analytic on |t| < gap,
    /// usable on both sides of a2 (continuation of the eigenfunction).
    double a2_series(double t) const;

    /// Interior samples on graded grids, one per subinterval.
    SampledFunction interior_samples(int which) const;  // 0: (a2,a3), 1: (a3,a4)

    const Configuration& config() const { return cfg_; }

    friend PiecewiseEigenfunction assemble_eigenfunction(const Configuration&, double,
                                                         const SolverParams&);

private:
    struct DenseSeg {
        double lo = 0.0, hi = 0.0;
        std::vector<double> x, u, v, upp;  // states and exact second derivative
        size_t locate(double y) const;
        double eval(double y, const Configuration& cfg) const;
        double eval_L(double y, const Configuration& cfg, double lambda) const;
    };

    Configuration cfg_{0.0, 1.0, 2.0, 3.0};
    double lambda_ = 0.0, l11_ = 0.0, l21_ = 0.0, eps_ = 0.0, defect_ = 0.0;
    double c_a2_ = 1.0;          // psi1 coefficient at a2
    BasisCoefficients c3_, c4_;  // scaled basis coefficients at a3, a4
    FrobeniusExpansion fe2_, fe3_, fe4_;
    DenseSeg left_, right_;
};

PiecewiseEigenfunction assemble_eigenfunction(const Configuration& cfg, double lambda,
                                              const SolverParams& params);

/// L applied to a black-box function by five-point finite differences.
double apply_L(const Configuration& cfg, const std::function<double(double)>& f,
               double x, double h = 4e-3);

/// L applied to a function with known first and second derivatives.
double apply_L_exact(const Configuration& cfg, double f, double fp, double fpp, double x);

}  // namespace tht
