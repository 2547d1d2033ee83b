#include "hvclust/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hvclust {

namespace {

constexpr double kClosedFormGuard = 1e-4; // series take over inside this band

AnalyticConfig scaled(const AnalyticConfig& cfg, double rel_scale) {
    AnalyticConfig out = cfg;
    out.rel_tol = std::max(cfg.rel_tol * rel_scale, 1e-14);
    out.abs_tol = std::min(cfg.abs_tol, 1e-300); // effectively pure relative control
    return out;
}

// Numerator and denominator of c_ab(h) in log coordinates. `c` is the scale
// a*h of the f(a h x) factors; c == 0 means those factors are identically 1.
struct RatioEvaluator {
    const Kernel& kernel;
    double tau;
    double s0, s1; // log integration bounds
    double c;

    double f_scaled(double log_x) const { return kernel.f(c * std::exp(log_x)); }

    QuadEstimate denominator(const AnalyticConfig& cfg) const {
        std::vector<double> breaks;
        if (c > 0.0) {
            for (double k : kernel.kinks()) breaks.push_back(std::log(k / c));
        }
        auto integrand = [&](double s) {
            double val = std::exp((2.0 - tau) * s);
            if (c > 0.0) val *= f_scaled(s);
            return val;
        };
        return integrate(integrand, s0, s1, breaks, cfg);
    }

    QuadEstimate numerator(const AnalyticConfig& outer_cfg, const AnalyticConfig& inner_cfg) const {
        std::vector<double> outer_breaks;
        for (double k : kernel.kinks()) {
            const double lk = std::log(k);
            outer_breaks.push_back(lk - s1); // hyperbola xy = k enters the square
            outer_breaks.push_back(lk - s0); // ... and leaves it
            if (c > 0.0) outer_breaks.push_back(std::log(k / c));
        }
        auto outer = [&](double s) {
            std::vector<double> t_breaks;
            for (double k : kernel.kinks()) {
                t_breaks.push_back(std::log(k) - s);
                if (c > 0.0) t_breaks.push_back(std::log(k / c));
            }
            auto inner = [&](double t) {
                double val = std::exp((3.0 - tau) * t) * kernel.f(std::exp(s + t));
                if (c > 0.0) val *= f_scaled(t);
                return val;
            };
            const QuadEstimate in = integrate(inner, s0, s1, t_breaks, inner_cfg);
            double val = std::exp((3.0 - tau) * s) * in.value;
            if (c > 0.0) val *= f_scaled(s);
            return val;
        };
        return integrate(outer, s0, s1, outer_breaks, outer_cfg);
    }
};

QuadEstimate ratio_quadrature(const Kernel& kernel, double tau, double lo, double hi,
                              double c, const AnalyticConfig& cfg) {
    cfg.validate();
    if (!(lo > 0.0) || !(hi > lo)) {
        throw std::domain_error("integration range requires 0 < lo < hi");
    }
    RatioEvaluator ev{kernel, tau, std::log(lo), std::log(hi), c};
    const AnalyticConfig den_cfg = scaled(cfg, 0.125);
    const AnalyticConfig outer_cfg = scaled(cfg, 0.25);
    const AnalyticConfig inner_cfg = scaled(cfg, 0.02);

    const QuadEstimate den = ev.denominator(den_cfg);
    const QuadEstimate num = ev.numerator(outer_cfg, inner_cfg);

    const double ratio = num.value / (den.value * den.value);
    const double rel = num.error / num.value + 2.0 * den.error / den.value +
                       inner_cfg.rel_tol;
    return {ratio, std::abs(ratio) * rel};
}

} // namespace

double poisson_deg2_factor(double h) {
    if (!(h >= 0.0) || !std::isfinite(h)) {
        throw std::domain_error("poisson_deg2_factor requires finite h >= 0");
    }
    if (h < 1e-3) {
        const double h2 = h * h;
        return h2 / 2.0 - h2 * h / 3.0 + h2 * h2 / 8.0 - h2 * h2 * h / 30.0;
    }
    return -std::expm1(-h) - h * std::exp(-h);
}

QuadEstimate g_ratio(const Kernel& kernel, double tau, double lo, double hi,
                     const AnalyticConfig& cfg) {
    return ratio_quadrature(kernel, tau, lo, hi, 0.0, cfg);
}

QuadEstimate c_ab_h(const Kernel& kernel, const CutoffScheme& scheme, double tau,
                    double h_min, double h, const AnalyticConfig& cfg) {
    if (!(h >= 0.0) || !std::isfinite(h)) {
        throw std::domain_error("c_ab_h requires finite h >= 0");
    }
    return ratio_quadrature(kernel, tau, scheme.a * h_min, scheme.b, scheme.a * h, cfg);
}

QuadEstimate local_clustering_analytic(const Kernel& kernel, const CutoffScheme& scheme,
                                       double tau, double h_min, double h,
                                       const AnalyticConfig& cfg) {
    const double factor = poisson_deg2_factor(h);
    if (factor == 0.0) return {0.0, 0.0};
    const QuadEstimate base = c_ab_h(kernel, scheme, tau, h_min, h, cfg);
    return {factor * base.value, factor * base.error};
}

QuadEstimate a_factor(double tau, double h_min, double n, const AnalyticConfig& cfg) {
    cfg.validate();
    if (!(tau >= 2.0 - 1e-6) || !(tau <= 3.0 + 1e-6)) {
        throw std::domain_error("a_factor requires tau in [2, 3]");
    }
    if (!(n > h_min) || !(h_min > 0.0)) {
        throw std::domain_error("a_factor requires 0 < h_min < N");
    }
    // A = 1 - J / norm with J = integral of h^-tau (1+h) e^-h; the integrand
    // is below 1e-18 past h = 45, where the tail is dropped.
    const double norm = -std::pow(h_min, 1.0 - tau) *
                        std::expm1((1.0 - tau) * std::log(n / h_min)) / (tau - 1.0);
    const double hi = std::min(n, 45.0);
    if (hi <= h_min) return {1.0, 1e-16};
    auto integrand = [tau](double s) {
        const double h = std::exp(s);
        // extra e^s from the log substitution
        return std::exp((1.0 - tau) * s) * (1.0 + h) * std::exp(-h);
    };
    const QuadEstimate j = integrate(integrand, std::log(h_min), std::log(hi), scaled(cfg, 0.5));
    const double a = 1.0 - j.value / norm;
    return {a, j.error / norm + 1e-15};
}

double front_factor(double alpha, double b, double tau) {
    const double s = tau - 2.0;
    if (!(alpha > 0.0) || !(b >= alpha)) {
        throw std::domain_error("front_factor requires 0 < alpha <= b");
    }
    const double span = std::log(b / alpha);
    if (s == 0.0) return 1.0 / (span * span);
    const double diff = std::pow(b, -s) * std::expm1(s * span);
    const double q = s / diff;
    return q * q;
}

namespace {

// term3 of I_ab^max, regular for tau away from 3
double i_max_term3(double alpha, double b, double tau) {
    const double w = 3.0 - tau;
    const double ab = alpha * b;
    const double num = 1.0 - 2.0 * std::pow(ab, w) + std::pow(alpha, 2.0 * w);
    return num / (w * w);
}

// term2 of I_ab^max, regular for tau away from 2
double i_max_term2(double b, double tau) {
    const double s = tau - 2.0;
    return -std::expm1(-2.0 * s * std::log(b)) / (s * s);
}

} // namespace

double i_ab_max(double alpha, double b, double tau) {
    if (!(alpha > 0.0) || !(b >= 1.0) || !(alpha * b <= 1.0 + 1e-12)) {
        throw std::domain_error("i_ab_max requires 0 < alpha, b >= 1, alpha*b <= 1");
    }
    if (!(tau >= 2.0) || !(tau <= 3.0)) {
        throw std::domain_error("i_ab_max requires tau in [2, 3]");
    }
    const double s = tau - 2.0;
    const double w = 3.0 - tau;
    const double x = std::log(b);

    if (s < kClosedFormGuard) {
        // series of ln(b^2)/(s(1-s)) - (1-b^-2s)/s^2 around the removable s=0 pole
        const double x2 = x * x;
        const double t12 = 2.0 * x + 2.0 * x2 + s * (2.0 * x - (4.0 / 3.0) * x2 * x) +
                           s * s * (2.0 * x + (2.0 / 3.0) * x2 * x2) +
                           s * s * s * (2.0 * x - (4.0 / 15.0) * x2 * x2 * x);
        return t12 + i_max_term3(alpha, b, tau);
    }
    if (w < kClosedFormGuard) {
        // series of ln(b^2)/(s(1-s)) + term3 around the removable w=0 pole
        const double p = std::log(alpha * b);
        const double q = std::log(alpha);
        const double t13 = 2.0 * x + 2.0 * q * q - p * p +
                           w * (2.0 * x + (4.0 / 3.0) * q * q * q - p * p * p / 3.0) +
                           w * w * (2.0 * x + (2.0 / 3.0) * q * q * q * q - p * p * p * p / 12.0);
        return t13 - i_max_term2(b, tau);
    }
    const double term1 = 2.0 * x / (s * w);
    return term1 - i_max_term2(b, tau) + i_max_term3(alpha, b, tau);
}

double c_max_g_closed(double alpha, double b, double tau) {
    return front_factor(alpha, b, tau) * i_ab_max(alpha, b, tau);
}

double c_max_closed(const CutoffScheme& scheme, double tau, double h_min, double n,
                    const AnalyticConfig& cfg) {
    const double a = a_factor(tau, h_min, n, cfg).value;
    return a * c_max_g_closed(scheme.a * h_min, scheme.b, tau);
}

double c_max_approx(const CutoffScheme& scheme, double tau, double h_min, double n,
                    const AnalyticConfig& cfg) {
    const double a = a_factor(tau, h_min, n, cfg).value;
    const double alpha = scheme.a * h_min;
    return a * (tau - 2.0) / (3.0 - tau) * std::pow(alpha, 2.0 * (tau - 2.0)) *
           std::log(scheme.b * scheme.b);
}

std::vector<double> default_u0_grid(const CutoffScheme& scheme) {
    std::vector<double> grid;
    for (double u0 = 1.0; u0 <= scheme.b * scheme.b && grid.size() < 12; u0 *= 2.0) {
        grid.push_back(u0);
    }
    if (grid.empty()) grid.push_back(1.0);
    return grid;
}

CBounds c_bounds(const Kernel& kernel, const CutoffScheme& scheme, double tau,
                 double h_min, double n, std::span<const double> u0_grid,
                 const AnalyticConfig& cfg) {
    const double a = a_factor(tau, h_min, n, cfg).value;
    const double alpha = scheme.a * h_min;
    const double upper = a * c_max_g_closed(alpha, scheme.b, tau);
    double lower = 0.0;
    double best_u0 = 1.0;
    for (double u0 : u0_grid) {
        if (!(u0 >= 1.0)) {
            throw std::domain_error("c_bounds requires u0 >= 1");
        }
        const double root = std::sqrt(u0);
        if (scheme.b / root < 1.0) continue; // scaled scheme leaves the admissible region
        const double candidate =
            u0 * kernel.f(u0) * a * c_max_g_closed(alpha / root, scheme.b / root, tau);
        if (candidate > lower) {
            lower = candidate;
            best_u0 = u0;
        }
    }
    return {lower, upper, best_u0};
}

PersistenceApprox persistence_approx(const CutoffScheme& scheme, double tau, double h_min,
                                     double n, const AnalyticConfig& cfg) {
    const double s = tau - 2.0;
    const double alpha = scheme.a * h_min;
    const double log_b = std::log(scheme.b);
    const double log_ab = std::log(alpha * scheme.b);
    const double log_b2 = 2.0 * log_b;
    const double a = a_factor(tau, h_min, n, cfg).value;
    const double numerator = a * (1.0 - s * log_b2 / 3.0);
    const double inner = 1.0 - 0.5 * s * log_ab + s * s * log_b * log_b / 6.0;
    const double value = numerator / (2.0 * inner * inner);
    const double ratio = log_b2 == 0.0 ? 0.0 : std::abs(log_ab / log_b2);
    return {value, ratio};
}

double persistence_threshold_n(double tau, double t) {
    if (!(tau > 2.0) || !(tau < 3.0)) {
        throw std::domain_error("persistence_threshold_n requires tau in (2, 3)");
    }
    if (!(t > 0.0) || !(t < 3.0)) {
        throw std::domain_error("persistence_threshold_n requires t in (0, 3)");
    }
    const double log_rhs = (tau - 1.0) * t / ((tau - 2.0) * (3.0 - tau));
    // solve x + ln x = log_rhs for x = ln N by Newton iteration
    double x = std::max(log_rhs > 1.0 ? log_rhs - std::log(log_rhs) : log_rhs, 1e-8);
    for (int iter = 0; iter < 64; ++iter) {
        const double g = x + std::log(x) - log_rhs;
        const double step = g / (1.0 + 1.0 / x);
        x -= step;
        if (x <= 0.0) x = 1e-12;
        if (std::abs(step) < 1e-14 * std::max(1.0, std::abs(x))) break;
    }
    const double n = std::exp(x);
    if (!std::isfinite(n)) {
        throw std::overflow_error("persistence threshold N exceeds double range");
    }
    return n;
}

double envelope_c(const Kernel& kernel, double tau, double h_min, double n,
                  const AnalyticConfig& cfg) {
    const double m = mean_h(3.0, h_min, n);  // minimum of <h> over tau in [2,3]
    const double cap = mean_h(2.0, h_min, n); // maximum, via the tau->2 limit
    const double abar = 1.0 / std::sqrt(n * m);
    const double bbar = std::pow(n * cap, (3.0 - tau) / (2.0 * (tau - 1.0)));
    const double a = a_factor(tau, h_min, n, cfg).value;
    return a * g_ratio(kernel, tau, abar * h_min, bbar, cfg).value;
}

AnalyticResult c_average(const Kernel& kernel, const CutoffScheme& scheme, double tau,
                         double h_min, double n, const AnalyticConfig& cfg) {
    AnalyticResult result;
    const QuadEstimate g = g_ratio(kernel, tau, scheme.a * h_min, scheme.b, cfg);
    const QuadEstimate a = a_factor(tau, h_min, n, cfg);
    result.c_ab_0 = g.value;
    result.c_ab_0_error = g.error;
    result.a_factor = a.value;
    result.c_avg = g.value * a.value;
    result.c_max_closed = a.value * c_max_g_closed(scheme.a * h_min, scheme.b, tau);
    if (kernel.id() == KernelId::MaxDense) {
        const double tol = result.c_max_closed * 1e-6 + g.error * a.value + 1e-14;
        if (std::abs(result.c_avg - result.c_max_closed) > tol) {
            throw std::runtime_error(
                "max-dense closed form and quadrature disagree beyond tolerance");
        }
    }
    const std::vector<double> u0 = default_u0_grid(scheme);
    const CBounds bounds = c_bounds(kernel, scheme, tau, h_min, n, u0, cfg);
    result.bound_low = bounds.lower;
    result.bound_high = bounds.upper;
    result.approx_main = c_max_approx(scheme, tau, h_min, n, cfg);
    const PersistenceApprox pers = persistence_approx(scheme, tau, h_min, n, cfg);
    result.approx_persistence = pers.value;
    result.persistence_validity_ratio = pers.validity_ratio;
    return result;
}

} // namespace hvclust
