#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "tht/config.hpp"
#include "tht/sturm_liouville.hpp"
#include "tht/svd.hpp"

namespace tht {

struct VerificationReport {
    std::string name;
    std::string inputs_digest;
    std::map<std::string, double> metrics;
    double threshold = 0.0;
    bool pass = false;
    std::string notes;

    std::string to_json() const;
    void require_finite() const;
};

/// Fast evaluator for g = H_T f of one eigenfunction, with sigma = ||H_T f||.
///
/// The transform is cached as piecewise Chebyshev panels away from the
/// special points, an analytic split G1(x) + G2(x) ln|x-a2| around a2 (G2 is
/// -f/pi continued by the a2 series), and a short {1, s, s ln|s|, ...} model
/// on the last stretch into a3 fitted from the exact split evaluation there.
class TransformedEigenfunction {
public:
    TransformedEigenfunction(const Configuration& cfg, const PiecewiseEigenfunction& f,
                             const SolverParams& params);

    double sigma() const { return sigma_; }
    double lambda() const { return f_->lambda(); }
    const PiecewiseEigenfunction& eigenfunction() const { return *f_; }

    /// Normalized g_n(x) anywhere in (a1, a3).
    double g(double x) const { return g_raw(x) / sigma_; }
    double g_raw(double x) const;

    /// Quadrature-route evaluation bypassing the cache (testing aid).
    double direct_raw(double x) const;

    /// Exact split evaluation near a3 (pv log kernel route; testing aid).
    double near_a3_raw(double x) const;

private:
    struct ChebPanel {
        double lo, hi;
        std::vector<double> vals;  // values at Chebyshev points of the panel
        double eval(double x) const;
    };

    const Configuration* cfg_;
    const PiecewiseEigenfunction* f_;
    double eps_ = 0.15, h2_ = 0.15, h3_ = 0.01;
    double sigma_ = 0.0;
    std::vector<ChebPanel> core_;          // away from a2 and a3
    ChebPanel g1_;                          // analytic part around a2
    std::vector<double> a3_model_;          // coefficients on {1,s,s ln,s^2,...}
    PvOptions pv_;
};

/// Commutation check H_T(L f) = L(H_T f) on the given test points for an
/// assembled eigenfunction.  Reports the max relative discrepancy.
VerificationReport check_commutation(const Configuration& cfg,
                                     const PiecewiseEigenfunction& psi,
                                     const std::vector<double>& test_points,
                                     double threshold = 1e-4);

/// Same two-sided comparison for a black-box function with analytic
/// derivatives (negative controls).
VerificationReport check_commutation_fn(const Configuration& cfg,
                                        const std::function<double(double)>& f,
                                        const std::function<double(double)>& fp,
                                        const std::function<double(double)>& fpp,
                                        const std::vector<double>& test_points,
                                        const std::string& name,
                                        double threshold);

struct SvdFromSl {
    std::vector<double> sigmas;
    std::vector<TransformedEigenfunction> pairs;
    VerificationReport report;   // gram deviation + adjoint residuals
};

SvdFromSl svd_from_sl(const Configuration& cfg,
                      const std::vector<PiecewiseEigenfunction>& eigenpairs,
                      const SolverParams& params);

/// |L g - lambda g| / scale on test points away from a1, a2, a3.
VerificationReport check_gn_eigen(const Configuration& cfg,
                                  const TransformedEigenfunction& g, double lambda,
                                  const std::vector<double>& test_points,
                                  double threshold = 1e-4);

struct LogFit {
    double c1 = 0.0, c2 = 0.0;
    double residual = 0.0;  // ||data - fit||_2 / ||data||_2 over the window
    int n_samples = 0;
};

/// Least-squares c1 + c2 ln(t) over samples with t = |x - anchor| inside
/// [t_min, t_max].  Throws when fewer than 4 samples fall in the window.
LogFit log_singularity_fit(std::span<const double> xs, std::span<const double> vals,
                           double anchor, double t_min, double t_max);

struct AccumulationResult {
    std::vector<double> a_values;
    std::vector<double> r_values;     // ||(I - H_T^* H_T) psi_a||^2
    std::vector<double> psi_norms;
    double slope = 0.0;               // d ln r / d ln a (least squares)
    VerificationReport report;
};

/// Lemma-7 style norm experiment with the rescaled two-vanishing-moment bump
/// psi(x) = sqrt(5/8) (3x^2 - 1) on [-1,1].
AccumulationResult accumulation_experiment(const Configuration& cfg,
                                           const std::vector<double>& a_values);

/// Orthonormality, boundary brackets and transmission re-extraction for a set
/// of assembled eigenfunctions (the spectral hygiene bundle).
VerificationReport check_eigen_basics(const Configuration& cfg,
                                      const std::vector<PiecewiseEigenfunction>& eigs,
                                      const SolverParams& params);

}  // namespace tht
