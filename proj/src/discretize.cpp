#include "tht/discretize.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <stdexcept>
#include <thread>

#include <Eigen/Dense>
#include <json.hpp>

namespace tht {

std::vector<double> GridMeta::nodes() const {
    std::vector<double> xs(n);
    if (kind == "scaling-galerkin") {
        // support centers of phi_{J, first_index + i}
        const double half_support = step * shift_steps;  // reused as (taps-1)/2 in steps
        for (int i = 0; i < n; ++i)
            xs[i] = (first_index + i) * step + half_support;
    } else {
        for (int i = 0; i < n; ++i) xs[i] = lo + (i + shift_steps) * step;
    }
    return xs;
}

void OperatorMatrix::validate() const {
    if (entries.rows() != row_meta.n || entries.cols() != col_meta.n)
        throw std::invalid_argument("OperatorMatrix: dimensions do not match meta");
    if (!entries.allFinite())
        throw std::invalid_argument("OperatorMatrix: non-finite entries");
}

namespace {

nlohmann::json meta_json(const GridMeta& m) {
    return nlohmann::json{{"kind", m.kind},       {"lo", m.lo},
                          {"hi", m.hi},           {"n", m.n},
                          {"step", m.step},       {"shift_steps", m.shift_steps},
                          {"scale_j", m.scale_j}, {"first_index", m.first_index}};
}

GridMeta meta_from_json(const nlohmann::json& j) {
    GridMeta m;
    m.kind = j.at("kind");
    m.lo = j.at("lo");
    m.hi = j.at("hi");
    m.n = j.at("n");
    m.step = j.at("step");
    m.shift_steps = j.at("shift_steps");
    m.scale_j = j.at("scale_j");
    m.first_index = j.at("first_index");
    return m;
}

}  // namespace

void OperatorMatrix::save(const std::string& path_base) const {
    std::FILE* fp = std::fopen((path_base + ".bin").c_str(), "wb");
    if (!fp) throw std::runtime_error("cannot write " + path_base + ".bin");
    const auto rows = static_cast<std::uint64_t>(entries.rows());
    const auto cols = static_cast<std::uint64_t>(entries.cols());
    std::fwrite(&rows, sizeof rows, 1, fp);
    std::fwrite(&cols, sizeof cols, 1, fp);
    for (Eigen::Index i = 0; i < entries.rows(); ++i)
        for (Eigen::Index j = 0; j < entries.cols(); ++j) {
            const double v = entries(i, j);
            std::fwrite(&v, sizeof v, 1, fp);
        }
    std::fclose(fp);
    nlohmann::json j{{"kind", kind},
                     {"rows", meta_json(row_meta)},
                     {"cols", meta_json(col_meta)}};
    std::ofstream out(path_base + ".json");
    out << j.dump(2) << "\n";
}

OperatorMatrix OperatorMatrix::load(const std::string& path_base) {
    std::ifstream meta_in(path_base + ".json");
    if (!meta_in) throw std::runtime_error("cannot read " + path_base + ".json");
    nlohmann::json j;
    meta_in >> j;
    OperatorMatrix m;
    m.kind = j.at("kind");
    m.row_meta = meta_from_json(j.at("rows"));
    m.col_meta = meta_from_json(j.at("cols"));
    std::FILE* fp = std::fopen((path_base + ".bin").c_str(), "rb");
    if (!fp) throw std::runtime_error("cannot read " + path_base + ".bin");
    std::uint64_t rows = 0, cols = 0;
    if (std::fread(&rows, sizeof rows, 1, fp) != 1 ||
        std::fread(&cols, sizeof cols, 1, fp) != 1) {
        std::fclose(fp);
        throw std::runtime_error("truncated matrix file");
    }
    m.entries.resize(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (std::uint64_t i = 0; i < rows; ++i)
        for (std::uint64_t j2 = 0; j2 < cols; ++j2) {
            double v;
            if (std::fread(&v, sizeof v, 1, fp) != 1) {
                std::fclose(fp);
                throw std::runtime_error("truncated matrix file");
            }
            m.entries(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j2)) = v;
        }
    std::fclose(fp);
    m.validate();
    return m;
}

void OperatorMatrix::write_csv(const std::string& path) const {
    std::FILE* fp = std::fopen(path.c_str(), "wb");
    if (!fp) throw std::runtime_error("cannot write " + path);
    for (Eigen::Index i = 0; i < entries.rows(); ++i) {
        for (Eigen::Index j = 0; j < entries.cols(); ++j)
            std::fprintf(fp, j ? ",%.17g" : "%.17g", entries(i, j));
        std::fprintf(fp, "\r\n");
    }
    std::fclose(fp);
}

std::string UniformVariant::describe() const {
    char buf[80];
    std::snprintf(buf, sizeof buf, "x_shift=%+g*step, y_shift=%+g*step", x_shift, y_shift);
    return buf;
}

OperatorMatrix uniform_matrix(const Configuration& cfg, int n, double step,
                              const UniformVariant& var) {
    if (n < 2 || step <= 0.0) throw std::invalid_argument("uniform_matrix: bad grid");
    const double span_x = cfg.a3() - cfg.a1(), span_y = cfg.a4() - cfg.a2();
    if (std::fabs(step * (n - 1) - span_x) > step || std::fabs(step * (n - 1) - span_y) > step)
        throw std::invalid_argument("uniform_matrix: step*(n-1) must span each interval");
    OperatorMatrix m;
    m.kind = "uniform";
    m.row_meta = {"uniform-collocation", cfg.a1(), cfg.a3(), n, step, var.x_shift, 0, 0.0};
    m.col_meta = {"uniform-collocation", cfg.a2(), cfg.a4(), n, step, var.y_shift, 0, 0.0};
    const auto X = m.row_meta.nodes();
    const auto Y = m.col_meta.nodes();
    m.entries.resize(n, n);
    const double scale = step / std::numbers::pi;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double d = Y[j] - X[i];
            if (std::fabs(d) < 1e-9 * step)
                throw std::invalid_argument(
                    "uniform_matrix: X and Y grids collide (" + var.describe() + ")");
            m.entries(i, j) = scale / d;
        }
    return m;
}

std::pair<OperatorMatrix, UniformVariant>
uniform_matrix_auto(const Configuration& cfg, int n, double step) {
    // Canonical convention first, then the half-shift variants that keep the
    // half-step interleaving between the two lattices.
    const UniformVariant variants[] = {
        {0.5, 0.0}, {-0.5, 0.0}, {0.5, 0.5}, {-0.5, -0.5}};
    std::string last_err;
    for (const auto& v : variants) {
        try {
            return {uniform_matrix(cfg, n, step, v), v};
        } catch (const std::invalid_argument& e) {
            last_err = e.what();
        }
    }
    throw std::invalid_argument("uniform_matrix_auto: all grid variants collide: " + last_err);
}

std::vector<double> daubechies2_filter() {
    const double s3 = std::sqrt(3.0), s2 = std::sqrt(2.0);
    return {(1.0 + s3) / (4.0 * s2), (3.0 + s3) / (4.0 * s2),
            (3.0 - s3) / (4.0 * s2), (1.0 - s3) / (4.0 * s2)};
}

namespace {

void check_filter(std::span<const double> h) {
    const double s2 = std::sqrt(2.0);
    double sum = 0.0;
    for (double v : h) sum += v;
    if (std::fabs(sum - s2) > 1e-10)
        throw std::invalid_argument("cascade: filter coefficients must sum to sqrt(2)");
    const int n = static_cast<int>(h.size());
    for (int shift = 0; 2 * shift < n; ++shift) {
        double dot = 0.0;
        for (int k = 0; k + 2 * shift < n; ++k) dot += h[k] * h[k + 2 * shift];
        const double expect = shift == 0 ? 1.0 : 0.0;
        if (std::fabs(dot - expect) > 1e-10)
            throw std::invalid_argument("cascade: filter violates shift orthonormality");
    }
}

}  // namespace

SampledFunction cascade_scaling_function(std::span<const double> filter, int levels) {
    check_filter(filter);
    if (levels < 0) throw std::invalid_argument("cascade: negative level");
    const int taps = static_cast<int>(filter.size());
    const int m = taps - 1;  // support [0, m]
    std::vector<double> c(taps);
    for (int k = 0; k < taps; ++k) c[k] = std::sqrt(2.0) * filter[k];

    // Exact values at the integers: eigenvector of T[i][j] = c[2i-j] for
    // eigenvalue 1, normalized so the integer samples sum to 1.
    std::vector<double> vals(static_cast<size_t>(m) + 1, 0.0);
    if (m == 1) {
        vals[0] = 1.0;  // Haar: phi = chi_[0,1)
    } else {
        Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m - 1, m - 1);
        for (int i = 1; i < m; ++i)
            for (int j = 1; j < m; ++j) {
                const int k = 2 * i - j;
                if (k >= 0 && k < taps) T(i - 1, j - 1) = c[k];
            }
        Eigen::EigenSolver<Eigen::MatrixXd> es(T);
        int best = 0;
        for (int i = 1; i < m - 1; ++i)
            if (std::abs(es.eigenvalues()[i] - 1.0) < std::abs(es.eigenvalues()[best] - 1.0))
                best = i;
        Eigen::VectorXd v = es.eigenvectors().col(best).real();
        v /= v.sum();
        for (int i = 1; i < m; ++i) vals[i] = v[i - 1];
    }

    // Refinement doubles the resolution each level:
    // phi(j 2^-L) = sum_k c_k phi(j 2^-(L-1) - k 2^0) evaluated on the
    // previous grid at index j - k 2^(L-1).
    for (int L = 1; L <= levels; ++L) {
        const long nprev = static_cast<long>(m) << (L - 1);
        const long ncur = static_cast<long>(m) << L;
        std::vector<double> next(ncur + 1, 0.0);
        for (long j = 0; j <= ncur; ++j) {
            double acc = 0.0;
            for (int k = 0; k < taps; ++k) {
                const long idx = j - (static_cast<long>(k) << (L - 1));
                if (idx >= 0 && idx <= nprev) acc += c[k] * vals[idx];
            }
            next[j] = acc;
        }
        vals = std::move(next);
    }

    SampledFunction phi;
    phi.lo = -1e-12;  // nodes must be strictly inside (lo,hi)
    phi.hi = m + 1e-12;
    phi.grid_kind = "dyadic";
    const double h = std::ldexp(1.0, -levels);
    const size_t count = vals.size();
    phi.nodes.resize(count);
    phi.values = std::move(vals);
    phi.weights.assign(count, h);
    for (size_t i = 0; i < count; ++i) phi.nodes[i] = static_cast<double>(i) * h;
    // trapezoid-consistent end weights (phi vanishes there anyway)
    phi.weights.front() = 0.5 * h + 1e-12;
    phi.weights.back() = 0.5 * h + 1e-12;
    return phi;
}

std::vector<double> scaling_moments(std::span<const double> filter, int pmax) {
    check_filter(filter);
    const int taps = static_cast<int>(filter.size());
    std::vector<double> c(taps);
    for (int k = 0; k < taps; ++k) c[k] = std::sqrt(2.0) * filter[k];
    auto K = [&](int q) {
        double s = 0.0;
        for (int k = 0; k < taps; ++k) s += std::pow(static_cast<double>(k), q) * c[k];
        return s;
    };
    std::vector<double> M{1.0};
    std::vector<std::vector<double>> binom(pmax + 1, std::vector<double>(pmax + 1, 0.0));
    for (int i = 0; i <= pmax; ++i) {
        binom[i][0] = 1.0;
        for (int j = 1; j <= i; ++j)
            binom[i][j] = (j == i) ? 1.0 : binom[i - 1][j - 1] + binom[i - 1][j];
    }
    for (int p = 1; p <= pmax; ++p) {
        double s = 0.0;
        for (int r = 0; r < p; ++r) s += binom[p][r] * K(p - r) * M[r];
        M.push_back(s / (std::pow(2.0, p + 1) - 2.0));
    }
    return M;
}

namespace {

// (1/pi) p.v. int phi(w)/(w - t) dw with piecewise-linear phi on its dyadic
// grid; each segment integrates exactly:
//   int (c + m w)/(w-t) dw = m h + (c + m t) ln|(w2-t)/(w1-t)|.
double hilbert_of_cascade(double t, const SampledFunction& phi) {
    const size_t n = phi.nodes.size() - 1;
    const double h = phi.nodes[1] - phi.nodes[0];
    double total = 0.0;
    double slope_sum = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const double w1 = phi.nodes[i], w2 = phi.nodes[i + 1];
        const double m = (phi.values[i + 1] - phi.values[i]) / h;
        const double cc = phi.values[i] - m * w1;
        slope_sum += m;
        total += (cc + m * t) * std::log(std::fabs((w2 - t) / (w1 - t)));
    }
    total += slope_sum * h;
    return total / std::numbers::pi;
}

}  // namespace

double wavelet_entry_quad(double delta, const SampledFunction& phi) {
    // F(delta) = int phi(u) Hphi(u - delta) du, 3-point Gauss per segment.
    const QuadRule& r = gauss_legendre(3);
    const size_t n = phi.nodes.size() - 1;
    const double h = phi.nodes[1] - phi.nodes[0];
    double total = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const double u1 = phi.nodes[i];
        const double p1 = phi.values[i], p2 = phi.values[i + 1];
        const double c = u1 + 0.5 * h, half = 0.5 * h;
        double s = 0.0;
        for (int q = 0; q < 3; ++q) {
            const double u = c + half * r.x[q];
            const double val = p1 + (p2 - p1) * (u - u1) / h;
            s += r.w[q] * val * hilbert_of_cascade(u - delta, phi);
        }
        total += s * half;
    }
    return total;
}

double wavelet_entry_far(double delta, std::span<const double> moments) {
    // 1/(w - u + delta) expanded in (u - w)/delta; converges for
    // |delta| > support width.
    const int mmax = static_cast<int>(moments.size()) - 1;
    std::vector<std::vector<double>> binom(mmax + 1, std::vector<double>(mmax + 1, 0.0));
    for (int i = 0; i <= mmax; ++i) {
        binom[i][0] = 1.0;
        for (int j = 1; j <= i; ++j)
            binom[i][j] = (j == i) ? 1.0 : binom[i - 1][j - 1] + binom[i - 1][j];
    }
    double total = 0.0;
    double dpow = delta;
    for (int m = 0; m <= mmax; ++m) {
        double Cm = 0.0;
        for (int r = 0; r <= m; ++r) {
            const double sgn = ((m - r) % 2 == 0) ? 1.0 : -1.0;
            Cm += binom[m][r] * sgn * moments[r] * moments[m - r];
        }
        const double sgn_m = (m % 2 == 0) ? 1.0 : -1.0;
        total += sgn_m * Cm / dpow;
        dpow *= delta;
    }
    return total / std::numbers::pi;
}

OperatorMatrix wavelet_matrix(const Configuration& cfg, int scale_j,
                              std::span<const double> filter, int levels,
                              int threads) {
    const double sc = std::ldexp(1.0, scale_j);  // 2^J
    const int m = static_cast<int>(filter.size()) - 1;
    // Columns: supp phi_{J,k} = [k, k+m] 2^J inside [a2,a4].
    const long k_lo = static_cast<long>(std::ceil(cfg.a2() / sc - 1e-9));
    const long k_hi = static_cast<long>(std::floor(cfg.a4() / sc - m + 1e-9));
    // Rows: supp phi_{J,l+1/2} = [l+1/2, l+1/2+m] 2^J inside [a1,a3] with up
    // to one sample of overhang allowed on the right.
    const long l_lo = static_cast<long>(std::ceil(cfg.a1() / sc - 0.5 - 1e-9));
    const long l_hi = static_cast<long>(std::floor(cfg.a3() / sc - 0.5 - m + 1.0 + 1e-9));
    const long ncols = k_hi - k_lo + 1, nrows = l_hi - l_lo + 1;
    if (ncols < 1 || nrows < 1)
        throw std::invalid_argument("wavelet_matrix: empty index range");

    SampledFunction phi = cascade_scaling_function(filter, levels);
    std::vector<double> moments = scaling_moments(filter, 54);
    const double far_cut = m + 4.0;  // series ratio <= m/(m+4)

    // entries(l,k) depend only on delta = (k) - (l + 1/2); tabulate once.
    const long d_min = 2 * (k_lo - l_hi) - 1;  // in half-integer doubles
    const long d_max = 2 * (k_hi - l_lo) - 1;
    std::vector<double> F((d_max - d_min) / 2 + 1);
    const int nthreads = threads > 0 ? threads
                                     : std::max(1u, std::thread::hardware_concurrency());
    std::vector<std::thread> pool;
    std::atomic_long next{0};
    auto worker = [&]() {
        for (;;) {
            const long idx = next.fetch_add(1);
            if (idx >= static_cast<long>(F.size())) return;
            const double delta = (d_min + 2 * idx) / 2.0;
            F[idx] = std::fabs(delta) >= far_cut ? wavelet_entry_far(delta, moments)
                                                 : wavelet_entry_quad(delta, phi);
        }
    };
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    OperatorMatrix out;
    out.kind = "wavelet";
    out.row_meta = {"scaling-galerkin", cfg.a1(), cfg.a3(), static_cast<int>(nrows),
                    sc, 0.5 * m, scale_j, l_lo + 0.5};
    out.col_meta = {"scaling-galerkin", cfg.a2(), cfg.a4(), static_cast<int>(ncols),
                    sc, 0.5 * m, scale_j, static_cast<double>(k_lo)};
    out.entries.resize(nrows, ncols);
    for (long l = 0; l < nrows; ++l)
        for (long k = 0; k < ncols; ++k) {
            const long twice_delta = 2 * ((k_lo + k) - (l_lo + l)) - 1;
            out.entries(l, k) = F[(twice_delta - d_min) / 2];
        }
    return out;
}

}  // namespace tht
