#include "tht/sturm_liouville.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tht/ode.hpp"
#include "tht/quadrature.hpp"

namespace tht {

namespace {

DormandPrince::Rhs make_rhs(const Configuration& cfg, double lambda) {
    const double sig = cfg.sigma();
    return [&cfg, lambda, sig](double x, const DormandPrince::State& y) {
        const double q = lambda - 2.0 * (x - sig) * (x - sig);
        return DormandPrince::State{y[1] / cfg.eval_P(x), q * y[0]};
    };
}

}  // namespace

std::array<double, 2> integrate_interior(const Configuration& cfg, double lambda,
                                         double from_x, std::array<double, 2> state,
                                         double to_x, double tol) {
    for (int i = 0; i < 4; ++i) {
        const double a = cfg.endpoint(i);
        const double lo = std::min(from_x, to_x), hi = std::max(from_x, to_x);
        if (a > lo && a < hi)
            throw std::invalid_argument("integrate_interior: range crosses a singular endpoint");
    }
    return DormandPrince::propagate(make_rhs(cfg, lambda), from_x, to_x, state, tol);
}

BasisCoefficients match_log_basis(const Configuration& cfg, const FrobeniusExpansion& fe,
                                  std::array<double, 2> state, double t) {
    const auto s1 = fe.psi1_state(cfg, t);
    const auto s2 = fe.psi2_state(cfg, t);
    const double det = s1[0] * s2[1] - s2[0] * s1[1];
    const double norm1 = std::fabs(s1[0]) + std::fabs(s1[1]);
    const double norm2 = std::fabs(s2[0]) + std::fabs(s2[1]);
    if (std::fabs(det) * 1e8 < norm1 * norm2)
        throw std::runtime_error(
            "match_log_basis: basis matrix ill-conditioned (epsilon too large or order too small)");
    BasisCoefficients c;
    c.c_psi1 = (state[0] * s2[1] - s2[0] * state[1]) / det;
    c.c_psi2 = (s1[0] * state[1] - state[0] * s1[1]) / det;
    return c;
}

ShootingData shoot(const Configuration& cfg, double lambda, const SolverParams& params) {
    const double eps = params.eps(cfg);
    const int N = params.series_order;
    const auto fe2 = frobenius_coefficients(cfg, lambda, 1, +1, N);
    const auto fe3 = frobenius_coefficients(cfg, lambda, 2, -1, N);
    const auto fe3p = frobenius_coefficients(cfg, lambda, 2, +1, N);
    const auto fe4 = frobenius_coefficients(cfg, lambda, 3, -1, N);

    ShootingData out;
    out.lambda = lambda;
    auto y = fe2.psi1_state(cfg, eps);
    y = integrate_interior(cfg, lambda, cfg.a2() + eps, y, cfg.a3() - eps, params.ode_tol);
    out.state_a3m = y;
    out.at_a3 = match_log_basis(cfg, fe3, y, -eps);

    // Transmission: the canonical-basis coefficients carry over unchanged
    // (ell11 and ell21 are continuous across a3 and the series coincide).
    const auto p1 = fe3p.psi1_state(cfg, eps);
    const auto p2 = fe3p.psi2_state(cfg, eps);
    std::array<double, 2> y2{out.at_a3.c_psi1 * p1[0] + out.at_a3.c_psi2 * p2[0],
                             out.at_a3.c_psi1 * p1[1] + out.at_a3.c_psi2 * p2[1]};
    y2 = integrate_interior(cfg, lambda, cfg.a3() + eps, y2, cfg.a4() - eps, params.ode_tol);
    out.state_a4m = y2;
    out.at_a4 = match_log_basis(cfg, fe4, y2, -eps);

    const double scale = std::hypot(y2[0], y2[1]) + 1e-300;
    out.defect = out.at_a4.c_psi2 / scale;
    if (!std::isfinite(out.defect))
        throw std::runtime_error("shoot: non-finite boundary defect");
    return out;
}

double boundary_defect(const Configuration& cfg, double lambda, const SolverParams& params) {
    return shoot(cfg, lambda, params).defect;
}

namespace {

double refine_root(const Configuration& cfg, const SolverParams& params,
                   double lo, double hi, double flo, double fhi) {
    // bisection with secant acceleration; relative tolerance 1e-10
    for (int iter = 0; iter < 200; ++iter) {
        const double tol = 1e-10 * std::max(1.0, std::fabs(lo) + std::fabs(hi));
        if (hi - lo < tol) break;
        double mid;
        const double sec = (std::fabs(fhi - flo) > 0.0)
                               ? lo - flo * (hi - lo) / (fhi - flo)
                               : 0.5 * (lo + hi);
        const double margin = 0.01 * (hi - lo);
        mid = (sec > lo + margin && sec < hi - margin) ? sec : 0.5 * (lo + hi);
        const double fm = boundary_defect(cfg, mid, params);
        if (fm == 0.0) return mid;
        if ((flo < 0.0) != (fm < 0.0)) {
            hi = mid;
            fhi = fm;
        } else {
            lo = mid;
            flo = fm;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

std::vector<double> eigen_search(const Configuration& cfg, double lambda_lo,
                                 double lambda_hi, int max_count,
                                 const SolverParams& params, bool expand) {
    if (!(lambda_lo < lambda_hi)) throw std::invalid_argument("eigen_search: empty range");
    std::vector<double> roots;
    double lo = lambda_lo, hi = lambda_hi;
    for (int round = 0; round < 8; ++round) {
        roots.clear();
        const double step = params.scan_step;
        const int ncells = static_cast<int>(std::ceil((hi - lo) / step));
        double prev_l = lo;
        double prev_d = boundary_defect(cfg, prev_l, params);
        for (int i = 1; i <= ncells; ++i) {
            const double cur_l = std::min(lo + i * step, hi);
            const double cur_d = boundary_defect(cfg, cur_l, params);
            if ((prev_d < 0.0) != (cur_d < 0.0)) {
                // guard against a cell holding more than one root: subdivide
                // and bracket each sign change separately
                double sl = prev_l, sd = prev_d;
                bool found_here = false;
                for (int k = 1; k <= 8; ++k) {
                    const double xl = prev_l + (cur_l - prev_l) * k / 8.0;
                    const double xd = (k == 8) ? cur_d : boundary_defect(cfg, xl, params);
                    if ((sd < 0.0) != (xd < 0.0)) {
                        roots.push_back(refine_root(cfg, params, sl, xl, sd, xd));
                        found_here = true;
                    }
                    sl = xl;
                    sd = xd;
                }
                if (!found_here)
                    throw std::runtime_error("eigen_search: bracket lost under subdivision");
            }
            prev_l = cur_l;
            prev_d = cur_d;
        }
        if (!expand || static_cast<int>(roots.size()) >= max_count) break;
        const double mid = 0.5 * (lo + hi), half = 0.8 * (hi - lo);
        lo = mid - half;
        hi = mid + half;
        if (hi - lo > 2e4)
            throw std::runtime_error("eigen_search: range expansion exhausted");
    }
    std::sort(roots.begin(), roots.end());
    // drop duplicates from adjacent brackets
    std::vector<double> uniq;
    for (double r : roots)
        if (uniq.empty() || std::fabs(r - uniq.back()) > 1e-8 * std::max(1.0, std::fabs(r)))
            uniq.push_back(r);
    return uniq;
}

std::vector<double> select_central(const std::vector<double>& eigs, int max_count) {
    std::vector<double> s = eigs;
    std::sort(s.begin(), s.end(),
              [](double a, double b) { return std::fabs(a) < std::fabs(b); });
    if (static_cast<int>(s.size()) > max_count) s.resize(max_count);
    std::sort(s.begin(), s.end());
    return s;
}

// ---------------------------------------------------------------------------
// PiecewiseEigenfunction

size_t PiecewiseEigenfunction::DenseSeg::locate(double y) const {
    size_t i = std::lower_bound(x.begin(), x.end(), y) - x.begin();
    if (i == 0) i = 1;
    if (i >= x.size()) i = x.size() - 1;
    return i;
}

double PiecewiseEigenfunction::DenseSeg::eval(double y, const Configuration& cfg) const {
    const size_t i = locate(y);
    const double x0 = x[i - 1], x1 = x[i], h = x1 - x0;
    const double u0 = u[i - 1], u1 = u[i];
    const double d0 = v[i - 1] / cfg.eval_P(x0), d1 = v[i] / cfg.eval_P(x1);
    const double s = (y - x0) / h;
    const double h00 = (1.0 + 2.0 * s) * (1.0 - s) * (1.0 - s);
    const double h10 = s * (1.0 - s) * (1.0 - s);
    const double h01 = s * s * (3.0 - 2.0 * s);
    const double h11 = s * s * (s - 1.0);
    return h00 * u0 + h * h10 * d0 + h01 * u1 + h * h11 * d1;
}

double PiecewiseEigenfunction::DenseSeg::eval_L(double y, const Configuration& cfg,
                                                double lambda) const {
    // P f'' + P' f' + 2(y-sigma)^2 f with f, f' from the Hermite cubic and
    // f'' from a 4-point Lagrange interpolation of the stored exact values.
    const size_t i = locate(y);
    const double x0 = x[i - 1], x1 = x[i], h = x1 - x0;
    const double u0 = u[i - 1], u1 = u[i];
    const double d0 = v[i - 1] / cfg.eval_P(x0), d1 = v[i] / cfg.eval_P(x1);
    const double s = (y - x0) / h;
    const double f = (1.0 + 2.0 * s) * (1.0 - s) * (1.0 - s) * u0 +
                     h * s * (1.0 - s) * (1.0 - s) * d0 + s * s * (3.0 - 2.0 * s) * u1 +
                     h * s * s * (s - 1.0) * d1;
    const double fp = (6.0 * s * s - 6.0 * s) * (u0 - u1) / h +
                      (3.0 * s * s - 4.0 * s + 1.0) * d0 + (3.0 * s * s - 2.0 * s) * d1;
    size_t i0 = (i >= 2) ? i - 2 : 0;
    if (i0 + 4 > x.size()) i0 = x.size() - 4;
    double fpp = 0.0;
    for (size_t j = i0; j < i0 + 4; ++j) {
        double l = 1.0;
        for (size_t m = i0; m < i0 + 4; ++m)
            if (m != j) l *= (y - x[m]) / (x[j] - x[m]);
        fpp += l * upp[j];
    }
    const double sig = cfg.sigma();
    return cfg.eval_P(y) * fpp + cfg.eval_P_prime(y) * fp +
           2.0 * (y - sig) * (y - sig) * f;
}

double PiecewiseEigenfunction::eval(double y) const {
    const double a2 = cfg_.a2(), a3 = cfg_.a3(), a4 = cfg_.a4();
    if (y <= a2 || y >= a4)
        throw std::domain_error("PiecewiseEigenfunction::eval: outside (a2,a4)");
    if (y <= a2 + eps_) return c_a2_ * fe2_.psi1(y - a2);
    if (std::fabs(y - a3) < eps_) {
        if (y == a3) throw std::domain_error("PiecewiseEigenfunction::eval: log point a3");
        const double t = y - a3;
        return c3_.c_psi1 * fe3_.psi1(t) + c3_.c_psi2 * fe3_.psi2(t);
    }
    if (y >= a4 - eps_) {
        const double t = y - a4;
        return c4_.c_psi1 * fe4_.psi1(t) + c4_.c_psi2 * fe4_.psi2(t);
    }
    return (y < a3 ? left_ : right_).eval(y, cfg_);
}

double PiecewiseEigenfunction::eval_L(double y) const {
    const double a2 = cfg_.a2(), a3 = cfg_.a3(), a4 = cfg_.a4();
    const double sig = cfg_.sigma();
    auto from_series = [&](const FrobeniusExpansion& fe, double c1, double c2, double t,
                           double x) {
        const double f = c1 * fe.psi1(t) + c2 * fe.psi2(t);
        const double fp = c1 * fe.psi1_deriv(t) + c2 * fe.psi2_deriv(cfg_, t);
        const double fpp = c1 * fe.psi1_deriv2(t) + c2 * fe.psi2_deriv2(cfg_, t);
        return cfg_.eval_P(x) * fpp + cfg_.eval_P_prime(x) * fp +
               2.0 * (x - sig) * (x - sig) * f;
    };
    if (y <= a2 || y >= a4)
        throw std::domain_error("PiecewiseEigenfunction::eval_L: outside (a2,a4)");
    if (y <= a2 + eps_) return from_series(fe2_, c_a2_, 0.0, y - a2, y);
    if (std::fabs(y - a3) < eps_) {
        if (y == a3) throw std::domain_error("PiecewiseEigenfunction::eval_L: log point a3");
        return from_series(fe3_, c3_.c_psi1, c3_.c_psi2, y - a3, y);
    }
    if (y >= a4 - eps_) return from_series(fe4_, c4_.c_psi1, c4_.c_psi2, y - a4, y);
    return (y < a3 ? left_ : right_).eval_L(y, cfg_, lambda_);
}

double PiecewiseEigenfunction::boundary_flux_a2(double t) const {
    return c_a2_ * fe2_.psi1_state(cfg_, t)[1];
}

double PiecewiseEigenfunction::boundary_flux_a4(double t) const {
    const auto s1 = fe4_.psi1_state(cfg_, -std::fabs(t));
    const auto s2 = fe4_.psi2_state(cfg_, -std::fabs(t));
    return c4_.c_psi1 * s1[1] + c4_.c_psi2 * s2[1];
}

BasisCoefficients PiecewiseEigenfunction::reextract_a3_plus(const Configuration& cfg,
                                                            double t) const {
    const double y = cfg.a3() + t;
    const size_t i = right_.locate(y);
    // take the nearest stored state (the dense grid is fine enough)
    const size_t j = (std::fabs(right_.x[i - 1] - y) < std::fabs(right_.x[i] - y)) ? i - 1 : i;
    std::array<double, 2> state{right_.u[j], right_.v[j]};
    return match_log_basis(cfg, fe3_, state, right_.x[j] - cfg.a3());
}

double PiecewiseEigenfunction::bounded_part_a3(double t) const {
    double s1 = 0.0, s2 = 0.0;
    for (size_t i = fe3_.b.size(); i-- > 0;) s1 = s1 * t + fe3_.b[i];
    for (size_t i = fe3_.d.size(); i-- > 0;) s2 = s2 * t + fe3_.d[i];
    return c3_.c_psi1 * s1 + c3_.c_psi2 * s2;
}

double PiecewiseEigenfunction::log_coeff_a3(double t) const {
    double s1 = 0.0;
    for (size_t i = fe3_.b.size(); i-- > 0;) s1 = s1 * t + fe3_.b[i];
    return c3_.c_psi2 * fe3_.k * s1;
}

double PiecewiseEigenfunction::a2_series(double t) const {
    return c_a2_ * fe2_.psi1(t);
}

SampledFunction PiecewiseEigenfunction::interior_samples(int which) const {
    const double lo = which == 0 ? cfg_.a2() : cfg_.a3();
    const double hi = which == 0 ? cfg_.a3() : cfg_.a4();
    auto panels = double_graded_panels(lo, hi, 2.0, 1e-10 * (hi - lo));
    auto s = SampledFunction::on_panels([this](double y) { return eval(y); }, lo, hi,
                                        panels, 8);
    s.grid_kind = "graded-gauss";
    s.log_lo = which == 1;  // log point a3 on the left of (a3,a4)
    s.log_hi = which == 0;
    return s;
}

PiecewiseEigenfunction assemble_eigenfunction(const Configuration& cfg, double lambda,
                                              const SolverParams& params) {
    const double eps = params.eps(cfg);
    const int N = params.series_order;
    PiecewiseEigenfunction pe;
    pe.cfg_ = cfg;
    pe.lambda_ = lambda;
    pe.eps_ = eps;
    pe.fe2_ = frobenius_coefficients(cfg, lambda, 1, +1, N);
    pe.fe3_ = frobenius_coefficients(cfg, lambda, 2, -1, N);
    pe.fe4_ = frobenius_coefficients(cfg, lambda, 3, -1, N);

    const auto rhs = make_rhs(cfg, lambda);
    const double sig = cfg.sigma();
    auto fill_dense = [&](PiecewiseEigenfunction::DenseSeg& seg, double lo, double hi,
                          std::array<double, 2> y0) {
        seg.lo = lo;
        seg.hi = hi;
        const double target_h = 2.5e-4;
        const int n = std::max(64, static_cast<int>(std::ceil((hi - lo) / target_h)));
        std::vector<double> targets(n + 1);
        for (int i = 0; i <= n; ++i) targets[i] = lo + (hi - lo) * i / n;
        targets.back() = hi;
        std::vector<DormandPrince::Record> rec;
        rec.reserve(targets.size());
        DormandPrince::propagate(rhs, lo, hi, y0, params.ode_tol, &rec, &targets);
        seg.x.reserve(rec.size());
        for (const auto& r : rec) {
            seg.x.push_back(r.x);
            seg.u.push_back(r.y[0]);
            seg.v.push_back(r.y[1]);
            const double P = cfg.eval_P(r.x), Pp = cfg.eval_P_prime(r.x);
            const double q = lambda - 2.0 * (r.x - sig) * (r.x - sig);
            seg.upp.push_back((q * r.y[0] * P - r.y[1] * Pp) / (P * P));
        }
        return std::array<double, 2>{seg.u.back(), seg.v.back()};
    };

    auto y = pe.fe2_.psi1_state(cfg, eps);
    pe.c_a2_ = 1.0;
    y = fill_dense(pe.left_, cfg.a2() + eps, cfg.a3() - eps, y);
    pe.c3_ = match_log_basis(cfg, pe.fe3_, y, -eps);
    const auto p1 = pe.fe3_.psi1_state(cfg, eps);
    const auto p2 = pe.fe3_.psi2_state(cfg, eps);
    std::array<double, 2> y2{pe.c3_.c_psi1 * p1[0] + pe.c3_.c_psi2 * p2[0],
                             pe.c3_.c_psi1 * p1[1] + pe.c3_.c_psi2 * p2[1]};
    y2 = fill_dense(pe.right_, cfg.a3() + eps, cfg.a4() - eps, y2);
    pe.c4_ = match_log_basis(cfg, pe.fe4_, y2, -eps);
    {
        const double scale = std::hypot(y2[0], y2[1]) + 1e-300;
        pe.defect_ = pe.c4_.c_psi2 / scale;
    }

    // L2(a2,a4) normalization with log-aware quadrature near a3.
    std::vector<Panel> panels;
    append_panels(panels, uniform_panels(cfg.a2(), cfg.a2() + eps, 6));
    append_panels(panels, uniform_panels(cfg.a2() + eps, cfg.a3() - eps, 96));
    append_panels(panels, graded_panels(cfg.a3() - eps, cfg.a3(), false, 2.0, 1e-13 * eps));
    append_panels(panels, graded_panels(cfg.a3(), cfg.a3() + eps, true, 2.0, 1e-13 * eps));
    append_panels(panels, uniform_panels(cfg.a3() + eps, cfg.a4() - eps, 48));
    append_panels(panels, graded_panels(cfg.a4() - eps, cfg.a4(), false, 2.0, 1e-13 * eps));
    const double nrm2 = integrate([&pe](double t) { const double f = pe.eval(t); return f * f; },
                                  panels, 12);
    const double scale = 1.0 / std::sqrt(nrm2);  // psi(a2) = c_a2 stays positive

    pe.c_a2_ *= scale;
    pe.c3_.c_psi1 *= scale;
    pe.c3_.c_psi2 *= scale;
    pe.c4_.c_psi1 *= scale;
    pe.c4_.c_psi2 *= scale;
    for (auto* seg : {&pe.left_, &pe.right_})
        for (size_t i = 0; i < seg->x.size(); ++i) {
            seg->u[i] *= scale;
            seg->v[i] *= scale;
            seg->upp[i] *= scale;
        }
    pe.l11_ = pe.c3_.ell11();
    pe.l21_ = pe.c3_.ell21();
    return pe;
}

double apply_L(const Configuration& cfg, const std::function<double(double)>& f,
               double x, double h) {
    const double f0 = f(x);
    const double fm2 = f(x - 2.0 * h), fm1 = f(x - h), fp1 = f(x + h), fp2 = f(x + 2.0 * h);
    const double d1 = (fm2 - 8.0 * fm1 + 8.0 * fp1 - fp2) / (12.0 * h);
    const double d2 = (-fm2 + 16.0 * fm1 - 30.0 * f0 + 16.0 * fp1 - fp2) / (12.0 * h * h);
    return apply_L_exact(cfg, f0, d1, d2, x);
}

double apply_L_exact(const Configuration& cfg, double f, double fp, double fpp, double x) {
    const double sig = cfg.sigma();
    return cfg.eval_P(x) * fpp + cfg.eval_P_prime(x) * fp + 2.0 * (x - sig) * (x - sig) * f;
}

}  // namespace tht
