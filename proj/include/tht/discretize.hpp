#pragma once

#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "tht/config.hpp"
#include "tht/sampled.hpp"

namespace tht {

/// Grid/basis descriptor for one side of an OperatorMatrix.
struct GridMeta {
    std::string kind;        // "uniform-collocation" | "scaling-galerkin"
    double lo = 0.0, hi = 0.0;
    int n = 0;
    double step = 0.0;       // uniform: node spacing; wavelet: 2^J
    double shift_steps = 0.0;  // node offset in units of step
    int scale_j = 0;         // wavelet only
    double first_index = 0.0;  // wavelet: first translation index (may be half-integer)

    std::vector<double> nodes() const;  // uniform: grid; wavelet: support centers
};

struct OperatorMatrix {
    Eigen::MatrixXd entries;   // rows: measurement side [a1,a3]; cols: object side [a2,a4]
    GridMeta row_meta, col_meta;
    std::string kind;          // "uniform" | "wavelet"

    void validate() const;
    void save(const std::string& path_base) const;   // path.bin + path.json
    static OperatorMatrix load(const std::string& path_base);
    void write_csv(const std::string& path) const;   // small matrices only
};

/// Grid-shift convention for the uniform collocation matrix, in units of the
/// step.  The canonical choice is x_shift = 1/2, y_shift = 0.
struct UniformVariant {
    double x_shift = 0.5;
    double y_shift = 0.0;
    std::string describe() const;
};

/// Collocation matrix entries(i,j) = step / (pi (Y_j - X_i)) with
/// X_i = a1 + (i + x_shift) step   on [a1,a3]   (rows)
/// Y_j = a2 + (j + y_shift) step   on [a2,a4]   (cols).
/// Throws std::invalid_argument when the grids collide (some X_i == Y_j).
OperatorMatrix uniform_matrix(const Configuration& cfg, int n_per_interval,
                              double step, const UniformVariant& var = {});

/// Searches the shift-variant space for a collision-free convention
/// (canonical first); returns the matrix and the variant used.
std::pair<OperatorMatrix, UniformVariant>
uniform_matrix_auto(const Configuration& cfg, int n_per_interval, double step);

/// Daubechies filter with two vanishing moments (4 taps, sum = sqrt(2)).
std::vector<double> daubechies2_filter();

/// Scaling function on the dyadic grid of spacing 2^-levels over [0, m]
/// (m = taps-1) by exact integer-point initialization plus refinement.
/// Throws std::invalid_argument for filters violating sum = sqrt(2) or the
/// shift-orthonormality conditions beyond 1e-10.
SampledFunction cascade_scaling_function(std::span<const double> filter, int levels);

/// Moments M_p = int x^p phi(x) dx from the filter refinement recursion.
std::vector<double> scaling_moments(std::span<const double> filter, int pmax);

/// Galerkin entry <H phi_{J,k}, phi_{J,l+1/2}> reduced to F(delta) with
/// delta = k - l - 1/2 (the matrix is Toeplitz in k - l).
double wavelet_entry_quad(double delta, const SampledFunction& phi);
double wavelet_entry_far(double delta, std::span<const double> moments);

/// Full Galerkin matrix at scale J (default -7): columns phi_{J,k} with
/// support in [a2,a4], rows phi_{J,l+1/2} with support in [a1,a3] (up to one
/// sample of overhang).  levels controls the cascade resolution.
OperatorMatrix wavelet_matrix(const Configuration& cfg, int scale_j,
                              std::span<const double> filter, int levels = 10,
                              int threads = 0);

}  // namespace tht
