#include "tht/svd.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include <Eigen/SVD>

namespace tht {

SingularSystem compute_svd(const OperatorMatrix& m) {
    m.validate();
    Eigen::BDCSVD<Eigen::MatrixXd> svd(m.entries, Eigen::ComputeThinU | Eigen::ComputeThinV);
    SingularSystem s;
    s.sigmas = svd.singularValues();
    s.left = svd.matrixU();
    s.right = svd.matrixV();
    s.row_meta = m.row_meta;
    s.col_meta = m.col_meta;
    // BDCSVD returns descending sigmas; fix signs so each right vector's
    // largest-magnitude entry is positive (flip u and v together).
    for (Eigen::Index k = 0; k < s.sigmas.size(); ++k) {
        Eigen::Index imax = 0;
        double best = 0.0;
        for (Eigen::Index i = 0; i < s.right.rows(); ++i) {
            const double a = std::fabs(s.right(i, k));
            if (a > best) {
                best = a;
                imax = i;
            }
        }
        if (s.right(imax, k) < 0.0) {
            s.right.col(k) = -s.right.col(k);
            s.left.col(k) = -s.left.col(k);
        }
    }
    return s;
}

void SingularSystem::validate(double tol) const {
    for (Eigen::Index i = 0; i < sigmas.size(); ++i) {
        if (sigmas[i] < 0.0) throw std::runtime_error("SingularSystem: negative sigma");
        if (i > 0 && sigmas[i] > sigmas[i - 1])
            throw std::runtime_error("SingularSystem: sigmas not descending");
    }
    const auto gram_dev = [&](const Eigen::MatrixXd& m) {
        const Eigen::MatrixXd g = m.transpose() * m;
        return (g - Eigen::MatrixXd::Identity(g.rows(), g.cols())).norm();
    };
    if (gram_dev(left) > tol || gram_dev(right) > tol)
        throw std::runtime_error("SingularSystem: vectors not orthonormal to tolerance");
}

void SingularSystem::write_sigma_csv(const std::string& path) const {
    std::FILE* fp = std::fopen(path.c_str(), "wb");
    if (!fp) throw std::runtime_error("cannot write " + path);
    std::fprintf(fp, "index,sigma\r\n");
    for (Eigen::Index i = 0; i < sigmas.size(); ++i)
        std::fprintf(fp, "%lld,%.17g\r\n", static_cast<long long>(i), sigmas[i]);
    std::fclose(fp);
}

TransitionProfile transition_profile(const SingularSystem& s, double lo, double hi) {
    if (!(0.0 <= lo && lo < hi && hi <= 1.0))
        throw std::invalid_argument("transition_profile: need 0 <= lo < hi <= 1");
    TransitionProfile p;
    for (Eigen::Index i = 0; i < s.sigmas.size(); ++i) {
        const double v = s.sigmas[i];
        if (v >= hi) {
            ++p.near_one;
        } else if (v <= lo) {
            ++p.near_zero;
        } else {
            ++p.transition;
            if (p.first_index < 0) p.first_index = static_cast<int>(i);
            p.last_index = static_cast<int>(i);
        }
    }
    return p;
}

int zero_count(std::span<const double> vec, std::span<const double> nodes,
               double lo, double hi, double theta) {
    if (vec.size() != nodes.size())
        throw std::invalid_argument("zero_count: vector/grid size mismatch");
    double vmax = 0.0;
    for (double v : vec) vmax = std::max(vmax, std::fabs(v));
    const double floor = theta * vmax;
    int count = 0;
    int last = 0;
    for (size_t i = 0; i + 1 < vec.size(); ++i) {
        const double mid = 0.5 * (nodes[i] + nodes[i + 1]);
        if (!(mid > lo && mid < hi)) continue;
        for (double v : {vec[i], vec[i + 1]}) {
            const int sgn = std::fabs(v) < floor ? 0 : (v > 0.0 ? 1 : -1);
            if (sgn == 0) continue;
            if (last != 0 && sgn != last) ++count;
            last = sgn;
        }
    }
    return count;
}

double energy_fraction(std::span<const double> vec, std::span<const double> nodes,
                       std::span<const double> weights, double lo, double hi) {
    if (vec.size() != nodes.size() || vec.size() != weights.size())
        throw std::invalid_argument("energy_fraction: size mismatch");
    double inside = 0.0, total = 0.0;
    for (size_t i = 0; i < vec.size(); ++i) {
        const double e = weights[i] * vec[i] * vec[i];
        total += e;
        if (nodes[i] >= lo && nodes[i] <= hi) inside += e;
    }
    return total > 0.0 ? inside / total : 0.0;
}

}  // namespace tht
