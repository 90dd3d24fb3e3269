#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "closedform.hpp"
#include "errors.hpp"
#include "exact.hpp"
#include "primes.hpp"
#include "quad.hpp"

namespace grained {

struct QuadratureConfig {
    double rel_tol = 1e-8;
    double abs_tol = 1e-300;
    int max_depth = 26;
    bool split_at_case_boundaries = true;
};

// Two-sided enclosure produced by one of the estimate families.
struct EstimateInterval {
    double lower = 0.0;
    double upper = 0.0;
    Method method = Method::kappa;
    double x = 0.0;
};

struct MainBound {
    double a_lo = 0.0;
    double a_hi = 0.0;
    double err = 0.0;
};

namespace detail {

inline void check_cfg(const QuadratureConfig& cfg) {
    if (!(cfg.rel_tol > 0.0) || !(cfg.abs_tol > 0.0))
        throw domain_error("quadrature config: tolerances must be positive");
    if (cfg.max_depth < 1)
        throw domain_error("quadrature config: max_depth must be >= 1");
}

inline QuadOptions to_opts(const QuadratureConfig& cfg) {
    QuadOptions o;
    o.rel_tol = cfg.rel_tol;
    o.abs_tol = cfg.abs_tol;
    o.max_depth = cfg.max_depth;
    return o;
}

inline double fact_d(int k) {
    double f = 1.0;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

// Nested evaluation of the recursive approximation and its error companion.
// Level m holds the pair (tilde, hat) at argument y; levels 2..k-1 are
// memoized on adaptive grids in ln y, level 1 is closed, level k is
// integrated directly at the requested x.  All grids are per-instance.
class KappaStack {
public:
    KappaStack(const GrainParams& pr, double x, bool with_hat, ErrorBoundMode mode,
               const QuadratureConfig& cfg)
        : B_(static_cast<double>(pr.B)), C_(static_cast<double>(pr.C)), k_(pr.k),
          x_(x), with_hat_(with_hat), mode_(mode), cfg_(cfg), opt_(to_opts(cfg)) {
        liB_ = log_integral(B_);
        L_ = log_integral(C_) - liB_;
        if (with_hat_) {
            EB_ = pnt_error_bound(B_, mode_);
            EC_ = pnt_error_bound(C_, mode_);
        }
        Bm_.assign(k_ + 1, 1.0);
        Cm_.assign(k_ + 1, 1.0);
        for (int m = 1; m <= k_; ++m) {
            Bm_[m] = Bm_[m - 1] * B_;
            Cm_[m] = Cm_[m - 1] * C_;
        }
        // full-range values: tilde saturates at L^m, hat follows the recursion
        // with every integral taken over the whole strip
        tsat_.assign(k_ + 1, 0.0);
        hsat_.assign(k_ + 1, 0.0);
        tsat_[0] = 1.0;
        for (int m = 1; m <= k_; ++m) {
            tsat_[m] = tsat_[m - 1] * L_;
            if (with_hat_)
                hsat_[m] = hsat_[m - 1] * L_ + (tsat_[m - 1] + hsat_[m - 1]) * (EB_ + EC_);
        }
        lv_.resize(k_ > 0 ? k_ : 1);
        for (int m = 2; m < k_; ++m) build_level(m);
    }

    std::array<double, 2> top() {
        if (x_ <= Bm_[k_]) return {0.0, 0.0};
        if (x_ >= Cm_[k_]) return {tsat_[k_], hsat_[k_]};
        return eval_level(k_, x_, &top_abs_err_);
    }

    double slack() const { return slack_; }
    double top_abs_err() const { return top_abs_err_; }

private:
    void build_level(int m) {
        // window of arguments reachable from the fixed top-level x
        const double lo = std::max(Bm_[m], x_ / Cm_[k_ - m]);
        const double hi = std::min(Cm_[m], x_ / Bm_[k_ - m]);
        if (!(lo < hi)) return;
        std::vector<double> bp{std::log(lo), std::log(hi)};
        double bnd = Bm_[m];
        for (int j = 0; j <= m; ++j) {
            if (bnd > lo && bnd < hi) bp.push_back(std::log(bnd));
            bnd = bnd / B_ * C_;
        }
        auto fn = [this, m](double t) { return eval_level(m, std::exp(t)); };
        lv_[m].emplace(fn, bp, with_hat_, cfg_.rel_tol, 17, 8, 2048);
        slack_ += lv_[m]->residual();
    }

    std::array<double, 2> eval_level(int m, double y, double* err_out = nullptr) {
        const double pmax = std::min(C_, y / Bm_[m - 1]);
        std::vector<double> knots;
        if (cfg_.split_at_case_boundaries) {
            double bnd = Bm_[m - 1];
            for (int j = 0; j < m; ++j) {
                knots.push_back(y / bnd);
                bnd = bnd / B_ * C_;
            }
        }
        double abs_err = 0.0;
        const auto tr = integrate(
            [this, m, y](double p) { return tilde_at(m - 1, y / p) / std::log(p); },
            B_, pmax, opt_, knots);
        abs_err += tr.abs_err;
        double hat = 0.0;
        if (with_hat_) {
            const auto hr = integrate(
                [this, m, y](double p) { return hat_at(m - 1, y / p) / std::log(p); },
                B_, pmax, opt_, knots);
            abs_err += hr.abs_err;
            const double edge = tilde_at(m - 1, y / B_) + hat_at(m - 1, y / B_);
            double third = 0.0;
            if (mode_ == ErrorBoundMode::riemann) {
                const auto dr = integrate(
                    [this, m, y](double p) {
                        return (tilde_at(m - 1, y / p) + hat_at(m - 1, y / p)) *
                               pnt_error_bound_derivative(p, ErrorBoundMode::riemann);
                    },
                    B_, pmax, opt_, knots);
                third = dr.value;
                abs_err += dr.abs_err;
            } else if (pmax > B_) {
                // integration-by-parts bound: the inner sum is nonincreasing in p
                // while the error term grows, so the product of edge values covers
                // the integral
                third = edge * std::max(0.0, pnt_error_bound(pmax, mode_) - EB_);
            }
            hat = hr.value + 2.0 * edge * EB_ + third;
        }
        if (err_out) *err_out += abs_err;
        return {tr.value, hat};
    }

    double tilde_at(int m, double y) {
        if (m == 0) return y >= 1.0 ? 1.0 : 0.0;
        if (y <= Bm_[m]) return 0.0;
        if (m == 1) return log_integral(std::min(y, C_)) - liB_;
        if (y >= Cm_[m]) return tsat_[m];
        if (lv_[m]) {
            const double t = std::log(y);
            if (t >= lv_[m]->lo() - 1e-9 && t <= lv_[m]->hi() + 1e-9)
                return std::max(0.0, lv_[m]->eval0(t));
        }
        return eval_level(m, y)[0];
    }

    double hat_at(int m, double y) {
        if (m == 0) return 0.0;
        if (y < Bm_[m]) return 0.0;
        if (m == 1) return pnt_error_bound(std::min(y, C_), mode_) + EB_;
        if (y >= Cm_[m]) return hsat_[m];
        if (lv_[m]) {
            const double t = std::log(y);
            if (t >= lv_[m]->lo() - 1e-9 && t <= lv_[m]->hi() + 1e-9)
                return std::max(0.0, lv_[m]->eval1(t));
        }
        return eval_level(m, y)[1];
    }

    double B_, C_;
    int k_;
    double x_;
    bool with_hat_;
    ErrorBoundMode mode_;
    QuadratureConfig cfg_;
    QuadOptions opt_;
    double liB_ = 0.0, L_ = 0.0, EB_ = 0.0, EC_ = 0.0;
    std::vector<double> Bm_, Cm_, tsat_, hsat_;
    std::vector<std::optional<AdaptiveInterp>> lv_;
    double slack_ = 0.0;
    double top_abs_err_ = 0.0;
};

// Normalized error recursion in the xi coordinate.  tilde levels come from
// the closed form; hat levels 1..k-1 are memoized, the top level is
// integrated directly.
class LambdaHatStack {
public:
    LambdaHatStack(const ShapeParams& sp, int k, double xi, ErrorBoundMode mode,
                   const QuadratureConfig& cfg)
        : B_(sp.B), alpha_(sp.alpha), theta_(sp.theta), k_(k), xi_(xi), mode_(mode),
          cfg_(cfg), opt_(to_opts(cfg)) {
        lnB_ = std::log(B_);
        EB_ = pnt_error_bound(B_, mode_);
        sec_coef_ = 2.0 * EB_ / (alpha_ * B_);
        if (mode_ == ErrorBoundMode::dusart) {
            const double C = std::pow(B_, 1.0 + alpha_);
            const double EC = pnt_error_bound(C, mode_);
            const double I = (2.3854 / (lnB_ * lnB_ * lnB_)) *
                             (1.0 - std::pow(1.0 + alpha_, -2.0)) / (2.0 * alpha_);
            utail_ = (EC / C - EB_ / B_) / alpha_ + lnB_ * I;
        }
        lv_.resize(k_ > 0 ? k_ : 1);
        for (int j = 1; j < k_; ++j) build_level(j);
    }

    double top() {
        if (xi_ < 0.0) return 0.0;
        return eval_hat(k_, xi_, &top_abs_err_);
    }

    double slack() const { return slack_; }
    double top_abs_err() const { return top_abs_err_; }

private:
    double tilde_norm(int j, double v) const {
        if (j == 0) return v < 0.0 ? 0.0 : std::exp(-v * theta_);
        return static_cast<double>(
            lambda_norm_theta(j, static_cast<long double>(theta_), v));
    }

    void build_level(int j) {
        const double lo = std::max(0.0, xi_ - (k_ - j));
        const double hi = xi_;
        if (!(lo < hi)) return;
        std::vector<double> bp{lo, hi};
        for (int n = static_cast<int>(std::ceil(lo)); n < hi; ++n)
            if (n > lo) bp.push_back(static_cast<double>(n));
        auto fn = [this, j](double v) {
            return std::array<double, 2>{eval_hat(j, v), 0.0};
        };
        lv_[j].emplace(fn, bp, false, cfg_.rel_tol, 17, 8, 2048);
        slack_ += lv_[j]->residual();
    }

    double hat_at(int j, double v) {
        if (j == 0) return 0.0;
        if (v < 0.0) return 0.0;
        if (lv_[j] && v >= lv_[j]->lo() - 1e-9 && v <= lv_[j]->hi() + 1e-9)
            return std::max(0.0, lv_[j]->eval0(v));
        return eval_hat(j, v);
    }

    double eval_hat(int j, double v, double* err_out = nullptr) {
        if (v < 0.0) return 0.0;
        const double m = std::min(1.0, v);
        std::vector<double> knots;
        if (cfg_.split_at_case_boundaries)
            for (int n = 0; n < j; ++n) {
                const double r = v - n;
                if (r > 0.0 && r < m) knots.push_back(r);
            }
        double abs_err = 0.0;
        double first = 0.0;
        if (j >= 2 && m > 0.0) {
            const auto fr = integrate(
                [this, j, v](double rho) { return hat_at(j - 1, v - rho); },
                0.0, m, opt_, knots);
            first = fr.value;
            abs_err += fr.abs_err;
        }
        const double edge = tilde_norm(j - 1, v) + hat_at(j - 1, v);
        double third = 0.0;
        if (m > 0.0) {
            if (mode_ == ErrorBoundMode::riemann) {
                const auto dr = integrate(
                    [this, j, v](double rho) {
                        const double p = std::pow(B_, 1.0 + rho * alpha_);
                        return (tilde_norm(j - 1, v - rho) + hat_at(j - 1, v - rho)) *
                               pnt_error_bound_derivative(p, ErrorBoundMode::riemann);
                    },
                    0.0, m, opt_, knots);
                third = lnB_ * dr.value;
                abs_err += lnB_ * dr.abs_err;
            } else {
                // the derivative integral is only available as its
                // integration-by-parts value times a bound on the inner sum
                double sup = 0.0;
                for (int i = 0; i <= 64; ++i) {
                    const double rho = m * i / 64.0;
                    sup = std::max(sup, tilde_norm(j - 1, v - rho) + hat_at(j - 1, v - rho));
                }
                third = sup * utail_;
            }
        }
        if (err_out) *err_out += abs_err;
        return first + sec_coef_ * edge + third;
    }

    double B_, alpha_, theta_;
    int k_;
    double xi_;
    ErrorBoundMode mode_;
    QuadratureConfig cfg_;
    QuadOptions opt_;
    double lnB_ = 0.0, EB_ = 0.0, sec_coef_ = 0.0, utail_ = 0.0;
    std::vector<std::optional<AdaptiveInterp>> lv_;
    double slack_ = 0.0;
    double top_abs_err_ = 0.0;
};

// Shared machinery for the smoothed-kernel recursions.  Works in the
// normalized coordinate g<xi> = value/(alpha^k B^(k+xi alpha)); level 0 is a
// cut exponential, level 1 closed, higher levels integrate the previous one
// against the kernel weight.
class KernelStack {
public:
    KernelStack(const ShapeParams& sp, int k, double xi, Method method,
                const QuadratureConfig& cfg)
        : alpha_(sp.alpha), theta_(sp.theta), theta_eta_(sp.theta_eta), k_(k),
          xi_(xi), method_(method), cfg_(cfg), opt_(to_opts(cfg)) {
        lv_.resize(k_ > 0 ? k_ : 1);
        for (int j = 2; j < k_; ++j) build_level(j);
    }

    double top() {
        if (k_ == 0) return g0(xi_);
        if (k_ == 1) return g1(xi_);
        return eval_g(k_, xi_, &top_abs_err_);
    }

    double slack() const { return slack_; }
    double top_abs_err() const { return top_abs_err_; }

private:
    double weight(double rho) const {
        switch (method_) {
            case Method::eta: return std::pow(1.0 + alpha_, -rho);
            case Method::nu: return 1.0 - rho * alpha_ / (1.0 + alpha_);
            default: return 1.0;
        }
    }

    double g0(double v) const { return v < 0.0 ? 0.0 : std::exp(-v * theta_); }

    double g1(double v) const {
        if (v <= 0.0) return 0.0;
        const double m = std::min(1.0, v);
        const double damp = std::exp(-v * theta_);
        switch (method_) {
            case Method::eta:
                return damp * std::expm1(m * theta_eta_) / theta_eta_;
            case Method::nu: {
                const double em = std::exp(m * theta_);
                const double a = std::expm1(m * theta_) / theta_;
                const double b = ((m * theta_ - 1.0) * em + 1.0) / (theta_ * theta_);
                return damp * (a - alpha_ / (1.0 + alpha_) * b);
            }
            default:
                return damp * std::expm1(m * theta_) / theta_;
        }
    }

    void build_level(int j) {
        const double lo = std::max(0.0, xi_ - (k_ - j));
        const double hi = xi_;
        if (!(lo < hi)) return;
        std::vector<double> bp{lo, hi};
        for (int n = static_cast<int>(std::ceil(lo)); n < hi; ++n)
            if (n > lo) bp.push_back(static_cast<double>(n));
        auto fn = [this, j](double v) {
            return std::array<double, 2>{eval_g(j, v), 0.0};
        };
        lv_[j].emplace(fn, bp, false, cfg_.rel_tol, 17, 8, 2048);
        slack_ += lv_[j]->residual();
    }

    double g_at(int j, double v) {
        if (j == 0) return g0(v);
        if (v <= 0.0) return 0.0;
        if (j == 1) return g1(v);
        if (lv_[j] && v >= lv_[j]->lo() - 1e-9 && v <= lv_[j]->hi() + 1e-9)
            return std::max(0.0, lv_[j]->eval0(v));
        return eval_g(j, v);
    }

    double eval_g(int j, double v, double* err_out = nullptr) {
        if (v <= 0.0) return 0.0;
        const double m = std::min(1.0, v);
        std::vector<double> knots;
        if (cfg_.split_at_case_boundaries)
            for (int n = 0; n < j; ++n) {
                const double r = v - n;
                if (r > 0.0 && r < m) knots.push_back(r);
            }
        const auto res = integrate(
            [this, j, v](double rho) { return g_at(j - 1, v - rho) * weight(rho); },
            0.0, m, opt_, knots);
        if (err_out) *err_out += res.abs_err;
        return res.value;
    }

    double alpha_, theta_, theta_eta_;
    int k_;
    double xi_;
    Method method_;
    QuadratureConfig cfg_;
    QuadOptions opt_;
    std::vector<std::optional<AdaptiveInterp>> lv_;
    double slack_ = 0.0;
    double top_abs_err_ = 0.0;
};

inline void check_quality(const char* who, double value, double slack, double abs_err,
                          const QuadratureConfig& cfg) {
    const double achieved = slack + abs_err / std::max(std::abs(value), 1e-300);
    if (achieved > 10.0 * cfg.rel_tol)
        throw accuracy_error(std::string(who) + ": tolerance not reached", value, achieved);
}

inline double kernel_tilde(const ShapeParams& sp, int k, double xi, Method method,
                           const QuadratureConfig& cfg) {
    check_cfg(cfg);
    if (k < 0) throw domain_error("kernel recursion: k must be >= 0");
    if (k > 4) throw domain_error("kernel recursion: nesting budget caps k at 4");
    if (!std::isfinite(xi)) throw domain_error("kernel recursion: xi must be finite");
    KernelStack st(sp, k, xi, method, cfg);
    const double g = st.top();
    if (k >= 2) check_quality("kernel recursion", g, st.slack(), st.top_abs_err(), cfg);
    return std::pow(sp.alpha, k) * std::pow(sp.B, k + xi * sp.alpha) * g;
}

}  // namespace detail

inline double kappa_tilde(const GrainParams& pr, double x, const QuadratureConfig& cfg) {
    detail::check_cfg(cfg);
    if (!std::isfinite(x) || x < 0.0)
        throw domain_error("kappa_tilde: x must be finite and >= 0");
    if (pr.k > 4) throw domain_error("kappa_tilde: nesting budget caps k at 4");
    if (pr.k == 0) return x >= 1.0 ? 1.0 : 0.0;
    const double B = static_cast<double>(pr.B);
    const double C = static_cast<double>(pr.C);
    if (pr.k == 1) {
        if (x < B) return 0.0;
        return log_integral(std::min(x, C)) - log_integral(B);
    }
    detail::KappaStack st(pr, x, false, ErrorBoundMode::riemann, cfg);
    const auto v = st.top();
    detail::check_quality("kappa_tilde", v[0], st.slack(), st.top_abs_err(), cfg);
    return v[0];
}

inline double kappa_hat(const GrainParams& pr, double x, ErrorBoundMode mode,
                        const QuadratureConfig& cfg) {
    detail::check_cfg(cfg);
    if (!std::isfinite(x) || x < 0.0)
        throw domain_error("kappa_hat: x must be finite and >= 0");
    if (pr.k > 4) throw domain_error("kappa_hat: nesting budget caps k at 4");
    const double B = static_cast<double>(pr.B);
    const double C = static_cast<double>(pr.C);
    if (mode == ErrorBoundMode::riemann && B < riemann_floor)
        throw domain_error("kappa_hat: B below the riemann validity floor");
    if (mode == ErrorBoundMode::dusart && !(B > dusart_floor))
        throw domain_error("kappa_hat: B below the dusart validity floor");
    if (pr.k == 0) return 0.0;
    if (pr.k == 1) {
        if (x < B) return 0.0;
        return pnt_error_bound(std::min(x, C), mode) + pnt_error_bound(B, mode);
    }
    detail::KappaStack st(pr, x, true, mode, cfg);
    const auto v = st.top();
    detail::check_quality("kappa_hat", v[1], st.slack(), st.top_abs_err(), cfg);
    return v[1];
}

inline double lambda_hat_norm(const ShapeParams& sp, int k, double xi, ErrorBoundMode mode,
                              const QuadratureConfig& cfg) {
    detail::check_cfg(cfg);
    if (k < 0) throw domain_error("lambda_hat_norm: k must be >= 0");
    if (k > 4) throw domain_error("lambda_hat_norm: nesting budget caps k at 4");
    if (mode == ErrorBoundMode::riemann && sp.B < riemann_floor)
        throw domain_error("lambda_hat_norm: B below the riemann validity floor");
    if (mode == ErrorBoundMode::dusart && !(sp.B > dusart_floor))
        throw domain_error("lambda_hat_norm: B below the dusart validity floor");
    if (k == 0) return 0.0;
    if (!std::isfinite(xi)) throw domain_error("lambda_hat_norm: xi must be finite");
    detail::LambdaHatStack st(sp, k, xi, mode, cfg);
    const double v = st.top();
    detail::check_quality("lambda_hat_norm", v, st.slack(), st.top_abs_err(), cfg);
    return v;
}

inline double nu_tilde(const ShapeParams& sp, int k, double xi, const QuadratureConfig& cfg) {
    return detail::kernel_tilde(sp, k, xi, Method::nu, cfg);
}

inline double eta_tilde(const ShapeParams& sp, int k, double xi, const QuadratureConfig& cfg) {
    return detail::kernel_tilde(sp, k, xi, Method::eta, cfg);
}

// same recursion with the constant kernel; exposed as a consistency check
// against the closed form
inline double lambda_tilde_quad(const ShapeParams& sp, int k, double xi,
                                const QuadratureConfig& cfg) {
    return detail::kernel_tilde(sp, k, xi, Method::lambda, cfg);
}

inline double pi_tilde(const GrainParams& pr, double x, const QuadratureConfig& cfg) {
    return kappa_tilde(pr, x, cfg) / detail::fact_d(pr.k);
}

inline double pi_hat(const GrainParams& pr, double x, ErrorBoundMode mode,
                     const QuadratureConfig& cfg, bool zero_k1_correction = false) {
    const double kh = kappa_hat(pr, x, mode, cfg);
    double corr = std::ldexp(x / static_cast<double>(pr.B), pr.k - 1);
    if (zero_k1_correction && pr.k == 1) corr = 0.0;
    return kh / detail::fact_d(pr.k) + corr;
}

inline MainBound main_bound(const GrainParams& pr, double x, double epsilon,
                            ErrorBoundMode mode) {
    if (mode != ErrorBoundMode::riemann)
        throw domain_error("main_bound: the error constants are riemann-mode only");
    const double B = static_cast<double>(pr.B);
    if (B < riemann_floor)
        throw domain_error("main_bound: B below the riemann validity floor");
    if (pr.k < 2) throw domain_error("main_bound: needs k >= 2");
    if (!(epsilon > 0.0) || !(epsilon <= 1.0))
        throw domain_error("main_bound: epsilon must lie in ]0, 1]");
    const double lnB = std::log(B);
    if (!(pr.alpha >= lnB / std::sqrt(B)))
        throw domain_error("main_bound: hypothesis alpha >= ln B/sqrt(B) fails");
    if (!std::isfinite(x) || x < 0.0)
        throw domain_error("main_bound: x must be finite and >= 0");
    const double lo_x = std::pow(B, pr.k) * (1.0 + epsilon);
    const double hi_x = std::pow(static_cast<double>(pr.C), pr.k) * (1.0 - epsilon);
    if (x < lo_x) throw domain_error("main_bound: x below B^k(1+eps)");
    // when the shrunk window is empty only the lower cut is enforceable
    if (hi_x >= lo_x && x > hi_x)
        throw domain_error("main_bound: x above C^k(1-eps)");
    const double fk = detail::fact_d(pr.k);
    MainBound out;
    out.a_hi = 1.0 / fk;
    out.a_lo = std::pow(pr.alpha, pr.k - 1) * c_check(pr.k, epsilon) /
               (fk * std::pow(1.0 + pr.alpha, pr.k));
    out.err = (std::ldexp(1.0, pr.k) - 1.0) * std::pow(pr.alpha, pr.k - 2) *
                  (1.0 + pr.alpha) * x / std::sqrt(B) +
              std::ldexp(x / B, pr.k - 1);
    return out;
}

// Dispatch for the enclosure families.  kappa brackets by its own error
// companion; the analytic families bracket by the normalized error constant
// with the family's quality factor on the lower edge.
inline EstimateInterval estimate(const GrainParams& pr, double x, Method method,
                                 ErrorBoundMode mode, const QuadratureConfig& cfg) {
    detail::check_cfg(cfg);
    if (!std::isfinite(x) || x < 0.0)
        throw domain_error("estimate: x must be finite and >= 0");
    EstimateInterval out;
    out.method = method;
    out.x = x;
    if (method == Method::kappa) {
        if (pr.k > 4) throw domain_error("estimate: the kappa enclosure needs k <= 4");
        const double kt = kappa_tilde(pr, x, cfg);
        const double kh = kappa_hat(pr, x, mode, cfg);
        out.upper = kt + kh;
        out.lower = std::min(out.upper, std::max(0.0, kt - kh));
        return out;
    }
    if (pr.k < 1) throw domain_error("estimate: analytic families need k >= 1");
    ShapeParams sp(static_cast<double>(pr.B), pr.alpha, pr.k);
    const double ch = c_hat(pr.k, sp.B, pr.alpha, mode);
    const double bound = ch * std::pow(pr.alpha, pr.k) * x;
    double tilde = 0.0;
    if (x > 0.0) {
        switch (method) {
            case Method::lambda: tilde = lambda_tilde_closed(sp, x); break;
            case Method::eta: tilde = eta_tilde_closed(sp, x); break;
            case Method::nu:
                if (pr.k > 4)
                    throw domain_error("estimate: the nu family needs k <= 4");
                tilde = nu_tilde(sp, pr.k, xi_from_x(sp, x), cfg);
                break;
            default: break;
        }
    }
    const double f = interval_factor(method, pr.alpha, pr.k);
    out.upper = tilde + bound;
    out.lower = std::min(out.upper, std::max(0.0, tilde * f - bound));
    return out;
}

}  // namespace grained
