#pragma once

#include <span>

#include <Eigen/Core>

#include "tht/discretize.hpp"

namespace tht {

/// Full singular system of an OperatorMatrix: descending singular values,
/// left vectors (measurement side, columns of U) and right vectors (object
/// side, columns of V).  Sign convention: in each right vector the entry of
/// largest magnitude is positive.
struct SingularSystem {
    Eigen::VectorXd sigmas;
    Eigen::MatrixXd left;    // rows x k
    Eigen::MatrixXd right;   // cols x k
    GridMeta row_meta, col_meta;

    void validate(double tol = 1e-8) const;
    void write_sigma_csv(const std::string& path) const;
};

SingularSystem compute_svd(const OperatorMatrix& m);

struct TransitionProfile {
    int near_one = 0;       // sigma >= hi
    int transition = 0;     // lo < sigma < hi
    int near_zero = 0;      // sigma <= lo
    int first_index = -1;   // index range of the transition band (empty: -1,-1)
    int last_index = -1;
};

TransitionProfile transition_profile(const SingularSystem& s, double lo, double hi);

/// Strict sign changes of vec between consecutive nodes whose midpoints lie
/// in (lo,hi), ignoring entries below theta * max|vec|.
int zero_count(std::span<const double> vec, std::span<const double> nodes,
               double lo, double hi, double theta = 1e-6);

/// Weighted energy fraction of vec over [lo,hi].
double energy_fraction(std::span<const double> vec, std::span<const double> nodes,
                       std::span<const double> weights, double lo, double hi);

}  // namespace tht
