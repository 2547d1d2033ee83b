#pragma once

#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

namespace hvclust {

/// Tolerances for the adaptive integrators and the analytic evaluations that
/// are built on them.
struct AnalyticConfig {
    double abs_tol = 1e-13;
    double rel_tol = 1e-9;
    int max_subdivisions = 4000;

    void validate() const {
        if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) {
            throw std::invalid_argument("quadrature tolerances must be positive");
        }
        if (rel_tol < 1e-14) {
            throw std::invalid_argument("rel_tol below 1e-14 is not attainable in double precision");
        }
        if (max_subdivisions < 1) {
            throw std::invalid_argument("max_subdivisions must be positive");
        }
    }
};

/// A value together with the integrator's error bound for it.
struct QuadEstimate {
    double value = 0.0;
    double error = 0.0;
};

/// Thrown when adaptive refinement exhausts max_subdivisions; carries the
/// best estimate obtained so far.
class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, QuadEstimate best)
        : std::runtime_error(what), best_(best) {}
    QuadEstimate best() const { return best_; }

private:
    QuadEstimate best_;
};

/// Adaptive Gauss-Kronrod (7,15) integration of f over [lo, hi]. Interior
/// `breakpoints` become mandatory initial cell boundaries so that integrands
/// with derivative jumps are never sampled across a kink. Throws
/// QuadratureError if the requested tolerance cannot be met.
QuadEstimate integrate(const std::function<double(double)>& f, double lo, double hi,
                       std::span<const double> breakpoints, const AnalyticConfig& cfg);

inline QuadEstimate integrate(const std::function<double(double)>& f, double lo, double hi,
                              const AnalyticConfig& cfg) {
    return integrate(f, lo, hi, {}, cfg);
}

} // namespace hvclust
