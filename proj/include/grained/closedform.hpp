#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "errors.hpp"
#include "hills.hpp"
#include "primes.hpp"
#include "quad.hpp"

namespace grained {

// normalized coordinates: x = B^(k + xi*alpha), theta = alpha ln B; the eta
// variant replaces theta by theta_eta = alpha ln B - ln(1+alpha)
struct ShapeParams {
    double B = 0.0;
    double alpha = 0.0;
    double theta = 0.0;
    double theta_eta = 0.0;
    int k = 1;

    ShapeParams(double B_, double alpha_, int k_) : B(B_), alpha(alpha_), k(k_) {
        if (!(B > 1.0)) throw domain_error("ShapeParams: B must exceed 1");
        if (!(alpha > 0.0)) throw domain_error("ShapeParams: alpha must be positive");
        if (k < 1) throw domain_error("ShapeParams: k must be >= 1");
        theta = alpha * std::log(B);
        theta_eta = theta - std::log1p(alpha);
        if (!(theta_eta > 0.0))
            throw domain_error("ShapeParams: need alpha ln B > ln(1+alpha)");
    }
};

inline double xi_from_x(const ShapeParams& sp, double x) {
    if (!(x > 0.0)) throw domain_error("xi_from_x: x must be positive");
    return (std::log(x) / std::log(sp.B) - sp.k) / sp.alpha;
}

inline double x_from_xi(const ShapeParams& sp, double xi) {
    return std::exp((sp.k + xi * sp.alpha) * std::log(sp.B));
}

namespace detail {

// sum_{l>=k} zeta^l / l!; the closed form exp(zeta) - prefix cancels
// catastrophically for small |zeta|, so the tail series is used there
inline long double cutexp_l(int k, long double zeta) {
    if (k == 0) return std::exp(zeta);
    if (zeta == 0.0L) return 0.0L;
    if (std::abs(zeta) < static_cast<long double>(k)) {
        long double term = 1.0L;
        for (int l = 1; l <= k; ++l) term *= zeta / l;
        long double sum = term;
        for (int l = k + 1; l <= k + 20000; ++l) {
            term *= zeta / l;
            sum += term;
            if (std::abs(term) <= 1e-24L * std::abs(sum)) break;
        }
        return sum;
    }
    long double prefix = 0.0L, t = 1.0L;
    for (int l = 0; l < k; ++l) {
        prefix += t;
        t *= zeta / (l + 1);
    }
    return std::exp(zeta) - prefix;
}

// cutexp-sum form shared by the lambda and eta normalizations
inline long double lambda_norm_theta(int k, long double theta, double xi) {
    if (!(xi > 0.0)) return 0.0L;
    const int imax = std::min(k, static_cast<int>(std::floor(xi)));
    long double sum = 0.0L, binom = 1.0L;
    for (int i = 0; i <= imax; ++i) {
        if (i > 0) binom *= static_cast<long double>(k - i + 1) / i;
        const long double term =
            binom * cutexp_l(k, -(static_cast<long double>(xi) - i) * theta);
        sum += i % 2 == 0 ? term : -term;
    }
    const long double denom = (k % 2 == 0 ? 1.0L : -1.0L) * std::pow(theta, k);
    return sum / denom;
}

} // namespace detail

inline double cutexp(int k, double zeta) {
    if (k < 0) throw domain_error("cutexp: k must be >= 0");
    return static_cast<double>(detail::cutexp_l(k, zeta));
}

inline double lambda_norm(const ShapeParams& sp, double xi) {
    return static_cast<double>(detail::lambda_norm_theta(sp.k, sp.theta, xi));
}

inline double eta_norm(const ShapeParams& sp, double xi) {
    return static_cast<double>(detail::lambda_norm_theta(sp.k, sp.theta_eta, xi));
}

// cross-check form: n-fold exponential smoothing written as a single
// convolution against the hill
inline double lambda_norm_integral(const ShapeParams& sp, double xi) {
    if (!(xi > 0.0)) return 0.0;
    const double lo = std::max(0.0, xi - sp.k);
    std::vector<double> splits;
    for (int j = 1; j <= sp.k; ++j) {
        const double r = xi - j;
        if (r > lo && r < xi) splits.push_back(r);
    }
    const auto f = [&sp, xi](double rho) {
        return std::exp(-rho * sp.theta) * hill_eval(sp.k, 0, xi - rho);
    };
    QuadOptions opt;
    opt.rel_tol = 1e-12;
    opt.max_depth = 30;
    return integrate(f, lo, xi, opt, splits).value;
}

// cross-check form: explicit antiderivative, exponential part minus the
// derivative tower of the hill
inline double lambda_norm_derivative_sum(const ShapeParams& sp, double xi) {
    const int k = sp.k;
    if (!(xi > 0.0)) return 0.0;
    const long double theta = sp.theta;
    const int imax = std::min(k, static_cast<int>(std::floor(xi)));
    long double esum = 0.0L, binom = 1.0L;
    for (int i = 0; i <= imax; ++i) {
        if (i > 0) binom *= static_cast<long double>(k - i + 1) / i;
        const long double term =
            binom * std::exp(-(static_cast<long double>(xi) - i) * theta);
        esum += i % 2 == 0 ? term : -term;
    }
    long double dsum = 0.0L, pw = 1.0L;
    for (int l = 0; l <= k - 1; ++l) {
        dsum += pw * static_cast<long double>(hill_eval(k, k - l - 1, xi));
        pw *= -theta;
    }
    const long double denom = (k % 2 == 0 ? 1.0L : -1.0L) * std::pow(theta, k);
    return static_cast<double>((esum - dsum) / denom);
}

inline double lambda_tilde_closed(const ShapeParams& sp, double x) {
    const double xi = xi_from_x(sp, x);
    return std::pow(sp.alpha, sp.k) * x * lambda_norm(sp, xi);
}

inline double eta_tilde_closed(const ShapeParams& sp, double x) {
    const double xi = xi_from_x(sp, x);
    return std::pow(sp.alpha, sp.k) * x * std::pow(1.0 + sp.alpha, -xi) * eta_norm(sp, xi);
}

enum class Method { lambda, nu, eta, kappa };

inline std::string to_string(Method m) {
    switch (m) {
        case Method::lambda: return "lambda";
        case Method::nu: return "nu";
        case Method::eta: return "eta";
        case Method::kappa: return "kappa";
    }
    throw domain_error("to_string: unknown method");
}

inline Method method_from_string(const std::string& s) {
    if (s == "lambda") return Method::lambda;
    if (s == "nu") return Method::nu;
    if (s == "eta") return Method::eta;
    if (s == "kappa") return Method::kappa;
    throw domain_error("method_from_string: unknown method '" + s + "'");
}

// lower endpoint of the enclosure [factor, 1] * estimate containing kappa
inline double interval_factor(Method method, double alpha, int k) {
    if (!(alpha > 0.0)) throw domain_error("interval_factor: alpha must be positive");
    if (k < 1) throw domain_error("interval_factor: k must be >= 1");
    switch (method) {
        case Method::lambda:
            return std::pow(1.0 + alpha, -k);
        case Method::nu: {
            const double half = 1.0 + alpha / 2.0;
            return std::pow((1.0 + alpha) / (half * half), k);
        }
        case Method::eta: {
            const double l = std::log1p(alpha);
            return std::pow(l / alpha * std::pow(1.0 + alpha, 1.0 / l - 1.0 / alpha), k);
        }
        case Method::kappa:
            break;
    }
    throw domain_error("interval_factor: no enclosure factor for kappa");
}

inline double c_tilde(int k, double B, double alpha) {
    if (k < 0) throw domain_error("c_tilde: k must be >= 0");
    if (!(B > 1.0) || !(alpha > 0.0)) throw domain_error("c_tilde: need B > 1, alpha > 0");
    return k > 0 ? 1.0 / (alpha * std::log(B)) : 1.0;
}

// recursive bound constants with lambda_hat_norm^k <= c_hat(k) for all xi
inline double c_hat(int k, double B, double alpha, ErrorBoundMode mode) {
    if (k < 0) throw domain_error("c_hat: k must be >= 0");
    if (!(alpha > 0.0)) throw domain_error("c_hat: alpha must be positive");
    const double lnB = std::log(B);
    const double pi = std::numbers::pi;
    if (mode == ErrorBoundMode::riemann) {
        if (!(B >= riemann_floor)) throw domain_error("c_hat: B below the riemann floor 2657");
        double c = 0.0;
        if (k >= 1) c = (2.0 + alpha) * lnB / (8.0 * pi * alpha * std::sqrt(B));
        if (k >= 2) {
            const double step = (4.0 + 3.0 * lnB) / (8.0 * pi * alpha * std::sqrt(B));
            c = (6.0 + 3.0 * alpha) / (8.0 * pi * alpha * alpha * std::sqrt(B)) +
                step * (c_tilde(1, B, alpha) + c);
            for (int m = 3; m <= k; ++m) c = c + step * (c_tilde(m - 1, B, alpha) + c);
        }
        return c;
    }
    if (!(B > dusart_floor)) throw domain_error("c_hat: B below the dusart floor 355991");
    // u = 2 E(B)/(alpha B) + (1/alpha)(E(C)/C - E(B)/B) + ln B * I with
    // I = integral_0^1 E'(B^(1+rho*alpha)) drho in closed form for E = 2.3854 x/ln^3 x
    const double EB_over_B = 2.3854 / (lnB * lnB * lnB);
    const double EC_over_C = 2.3854 / std::pow((1.0 + alpha) * lnB, 3);
    const double I = EB_over_B * (1.0 - std::pow(1.0 + alpha, -2.0)) / (2.0 * alpha);
    const double u = 2.0 * EB_over_B / alpha + (EC_over_C - EB_over_B) / alpha + lnB * I;
    double c = 0.0;
    for (int m = 1; m <= k; ++m) c = c + u * (c_tilde(m - 1, B, alpha) + c);
    return c;
}

// lower-bound constants: lambda_norm^k >= c_check/(alpha ln B) on [eps, k-eps]
inline double c_check(int k, double epsilon) {
    if (k < 1) throw domain_error("c_check: k must be >= 1");
    if (!(epsilon > 0.0) || !(epsilon <= 1.0))
        throw domain_error("c_check: epsilon must lie in (0, 1]");
    long double f = 1.0L, e_k = 1.0L;
    for (int i = 1; i <= k; ++i) f *= i;
    for (int i = 0; i < k; ++i) e_k *= epsilon;
    const long double first = e_k / (16.0L * f);
    const long double second = std::pow(0.5L, k) * (e_k / epsilon) * k / f;
    return static_cast<double>(std::min(first, second));
}

// the explicit piecewise k = 1 error shape in riemann mode
inline double lambda_hat_norm_1(const ShapeParams& sp, double xi) {
    if (!(sp.B >= riemann_floor))
        throw domain_error("lambda_hat_norm_1: needs B >= 2657 (riemann mode)");
    if (xi < 0.0) return 0.0;
    const double lnB = std::log(sp.B), a = sp.alpha;
    const double pref = lnB / (8.0 * std::numbers::pi * a);
    const double tail = pref * std::pow(sp.B, -0.5 - xi * a);
    if (xi < 1.0) return pref * (1.0 + xi * a) * std::pow(sp.B, -(1.0 + xi * a) / 2.0) + tail;
    return pref * (1.0 + a) * std::pow(sp.B, -0.5 + a / 2.0 - xi * a) + tail;
}

// mode of lambda_norm: the zero of its derivative -theta lambda_norm + hill
inline double xi_half(const ShapeParams& sp) {
    const auto f = [&sp](double xi) {
        return hill_eval(sp.k, 0, xi) - sp.theta * lambda_norm(sp, xi);
    };
    double lo = sp.k * 0.5, hi = static_cast<double>(sp.k);
    if (!(f(lo) > 0.0)) return lo;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

// the c_check enclosure needs eps <= k - xi_half (or k < 3); reported rather
// than enforced because xi_half has no closed form
inline bool c_check_hypothesis(const ShapeParams& sp, double epsilon) {
    return sp.k < 3 || epsilon <= sp.k - xi_half(sp);
}

} // namespace grained
