#include "hvclust/powerlaw.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace hvclust {

namespace {

constexpr double kTauGuard = 1e-6;

void require_tau_range(double tau, double lo, double hi) {
    if (!(tau >= lo) || !(tau <= hi) || !std::isfinite(tau)) {
        throw std::domain_error("tau=" + std::to_string(tau) + " outside [" +
                                std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
}

} // namespace

PowerLawModel::PowerLawModel(double tau_, double h_min_, std::int64_t n_)
    : tau(tau_), h_min(h_min_), n_vertices(n_) {
    require_tau_range(tau, 2.0 + kTauGuard, 3.0 - kTauGuard);
    if (!(h_min > 0.0) || !std::isfinite(h_min)) {
        throw std::domain_error("h_min must be positive and finite");
    }
    if (n_vertices < 1) {
        throw std::domain_error("n_vertices must be at least 1");
    }
    if (!(static_cast<double>(n_vertices) > h_min)) {
        throw std::domain_error("support [h_min, N] requires N > h_min");
    }
}

double PowerLawModel::mean() const { return mean_h(tau, h_min, static_cast<double>(n_vertices)); }

double truncated_mean_h(double tau, double h_min, double upper) {
    require_tau_range(tau, 2.0 - kTauGuard, 3.0 + kTauGuard);
    if (!(upper > h_min) || !(h_min > 0.0)) {
        throw std::domain_error("truncated_mean_h requires 0 < h_min < upper");
    }
    const double span = std::log(upper / h_min);
    if (std::abs(tau - 2.0) < kTauGuard) {
        // limit of the closed form at the removable tau=2 singularity
        return span / (1.0 / h_min - 1.0 / upper);
    }
    // (tau-1)/(tau-2) * (h_min^(2-tau) - upper^(2-tau)) / (h_min^(1-tau) - upper^(1-tau)),
    // written with expm1 so the small-exponent differences stay accurate.
    const double num = -std::pow(h_min, 2.0 - tau) * std::expm1((2.0 - tau) * span);
    const double den = -std::pow(h_min, 1.0 - tau) * std::expm1((1.0 - tau) * span);
    return (tau - 1.0) / (tau - 2.0) * num / den;
}

double mean_h(double tau, double h_min, double n) { return truncated_mean_h(tau, h_min, n); }

CutoffScheme make_cutoffs(double h_s, double h_c, double h_min) {
    if (!(h_s > 0.0) || !(h_c > 0.0) || !(h_min > 0.0)) {
        throw std::domain_error("cutoffs and h_min must be positive");
    }
    CutoffScheme scheme{h_s, h_c, 1.0 / h_s, h_c / h_s};
    const double ah = scheme.a * h_min;
    const double slack = 1e-12;
    if (!(ah > 0.0)) throw std::domain_error("cutoff constraint violated: a*h_min > 0");
    if (ah > ah * scheme.b + slack) {
        throw std::domain_error("cutoff constraint violated: a*h_min <= a*h_min*b (b >= 1)");
    }
    if (ah * scheme.b > 1.0 + slack) {
        throw std::domain_error("cutoff constraint violated: a*h_min*b <= 1 (h_min*h_c <= h_s^2)");
    }
    if (scheme.b < 1.0 - slack) {
        throw std::domain_error("cutoff constraint violated: b >= 1 (h_c >= h_s)");
    }
    return scheme;
}

CutoffScheme default_cutoffs(double tau, double h_min, double n) {
    const double nh = n * mean_h(tau, h_min, n);
    const double h_s = std::sqrt(nh);
    const double h_c = std::pow(nh, 1.0 / (tau - 1.0));
    return make_cutoffs(h_s, h_c, h_min);
}

CutoffScheme default_cutoffs(const PowerLawModel& model) {
    return default_cutoffs(model.tau, model.h_min, static_cast<double>(model.n_vertices));
}

double hidden_inverse_cdf(double tau, double h_min, double upper, double u01) {
    const double lo = std::pow(h_min, 1.0 - tau);
    const double hi = std::pow(upper, 1.0 - tau);
    return std::pow(lo - u01 * (lo - hi), 1.0 / (1.0 - tau));
}

double hidden_cdf(double tau, double h_min, double upper, double h) {
    if (h <= h_min) return 0.0;
    if (h >= upper) return 1.0;
    const double lo = std::pow(h_min, 1.0 - tau);
    const double hi = std::pow(upper, 1.0 - tau);
    return (lo - std::pow(h, 1.0 - tau)) / (lo - hi);
}

std::vector<double> sample_hidden(const PowerLawModel& model, double upper,
                                  std::size_t count, Xoshiro256pp& rng) {
    if (!(upper > model.h_min)) {
        throw std::domain_error("sample_hidden requires upper > h_min");
    }
    if (count < 1) {
        throw std::domain_error("sample_hidden requires count >= 1");
    }
    std::vector<double> draws(count);
    for (double& h : draws) {
        h = hidden_inverse_cdf(model.tau, model.h_min, upper, rng.uniform01());
    }
    return draws;
}

double pareto_inverse_cdf(double tau, double h_min, double u01) {
    // F(h) = 1 - (h/h_min)^(1-tau); inverted with V = 1-u01 in (0,1].
    return h_min * std::pow(1.0 - u01, -1.0 / (tau - 1.0));
}

double natural_cutoff_exact(double tau, double h_min, double n) {
    if (!(tau > 2.0) || !(tau <= 3.0)) {
        throw std::domain_error("natural_cutoff_exact requires tau in (2, 3]");
    }
    if (!(h_min > 0.0) || !(n >= 1.0)) {
        throw std::domain_error("natural_cutoff_exact requires h_min > 0 and N >= 1");
    }
    const double u = (tau - 2.0) / (tau - 1.0);
    const double log_value = std::lgamma(u) + std::lgamma(n + 1.0) - std::lgamma(n + u);
    return h_min * std::exp(log_value);
}

double natural_cutoff_exact(const PowerLawModel& model) {
    return natural_cutoff_exact(model.tau, model.h_min,
                                static_cast<double>(model.n_vertices));
}

NaturalCutoffBounds natural_cutoff_bounds(double tau, double h_min, double n) {
    if (!(tau > 2.0) || !(tau <= 3.0)) {
        throw std::domain_error("natural_cutoff_bounds requires tau in (2, 3]");
    }
    const double u = (tau - 2.0) / (tau - 1.0);
    const double mean_inf = h_min * (tau - 1.0) / (tau - 2.0);
    const double lower = std::exp(u * std::log(h_min) + (1.0 - u) * std::log(n * mean_inf));
    return {lower, lower * 4.0 / 3.0};
}

NaturalCutoffBounds natural_cutoff_bounds(const PowerLawModel& model) {
    return natural_cutoff_bounds(model.tau, model.h_min,
                                 static_cast<double>(model.n_vertices));
}

} // namespace hvclust
