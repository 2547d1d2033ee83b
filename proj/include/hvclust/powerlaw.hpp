#pragma once

#include <cstdint>
#include <vector>

#include "hvclust/rng.hpp"

namespace hvclust {

/// Pure power-law hidden-variable law: density proportional to h^-tau on
/// [h_min, N], exponent strictly inside (2,3) up to a 1e-6 guard band.
struct PowerLawModel {
    double tau;
    double h_min;
    std::int64_t n_vertices;

    PowerLawModel(double tau, double h_min, std::int64_t n_vertices);
    double mean() const;
};

/// Mean of the power law truncated to [h_min, upper]. Regular for tau in
/// [2, 3]; within 1e-6 of tau = 2 the removable singularity is replaced by
/// its analytic limit.
double truncated_mean_h(double tau, double h_min, double upper);

/// Mean with the default upper support bound N.
double mean_h(double tau, double h_min, double n);

/// Structural cutoff h_s, natural cutoff h_c and the dimensionless
/// a = 1/h_s, b = h_c/h_s. Valid schemes satisfy
/// 0 < a h_min <= a h_min b <= 1 <= b.
struct CutoffScheme {
    double h_s;
    double h_c;
    double a;
    double b;
};

/// Builds a scheme from explicit cutoffs, checking the constraint chain.
CutoffScheme make_cutoffs(double h_s, double h_c, double h_min);

/// Default cutoffs h_s = sqrt(N<h>), h_c = (N<h>)^(1/(tau-1)).
CutoffScheme default_cutoffs(double tau, double h_min, double n);
CutoffScheme default_cutoffs(const PowerLawModel& model);

/// Inverse CDF of the power law truncated to [h_min, upper]; u01 in [0,1).
double hidden_inverse_cdf(double tau, double h_min, double upper, double u01);

/// CDF of the truncated law (used by goodness-of-fit tests).
double hidden_cdf(double tau, double h_min, double upper, double h);

/// i.i.d. draws from the law truncated to [h_min, upper].
std::vector<double> sample_hidden(const PowerLawModel& model, double upper,
                                  std::size_t count, Xoshiro256pp& rng);

/// One draw from the untruncated law on [h_min, inf).
double pareto_inverse_cdf(double tau, double h_min, double u01);

/// Exact expectation of the maximum of N untruncated samples,
/// h_min Gamma(u) Gamma(N+1)/Gamma(N+u) with u = (tau-2)/(tau-1),
/// evaluated through log-gamma. Accepts any tau in (2, 3].
double natural_cutoff_exact(double tau, double h_min, double n);
double natural_cutoff_exact(const PowerLawModel& model);

struct NaturalCutoffBounds {
    double lower;
    double upper; // = 4/3 * lower
};

/// Sandwich bounds h_min^u (N<h>_inf)^(1/(tau-1)) <= E[max] <= 4/3 * same,
/// with <h>_inf = h_min (tau-1)/(tau-2).
NaturalCutoffBounds natural_cutoff_bounds(double tau, double h_min, double n);
NaturalCutoffBounds natural_cutoff_bounds(const PowerLawModel& model);

} // namespace hvclust
