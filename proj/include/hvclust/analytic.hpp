#pragma once

#include <span>
#include <vector>

#include "hvclust/kernels.hpp"
#include "hvclust/powerlaw.hpp"
#include "hvclust/quadrature.hpp"

namespace hvclust {

/// P(degree >= 2 | hidden variable h) under the Poisson degree mixture,
/// 1 - e^-h - h e^-h.
double poisson_deg2_factor(double h);

/// G(tau, lo, hi) for a kernel f: the ratio
///   integral of (xy)^(2-tau) f(xy) over [lo,hi]^2
///   divided by (integral of x^(1-tau) over [lo,hi])^2,
/// with both routes evaluated by adaptive quadrature in log coordinates and
/// integration cells split on the kernel's kinks. Equals c_ab(0) when
/// lo = a h_min and hi = b.
QuadEstimate g_ratio(const Kernel& kernel, double tau, double lo, double hi,
                     const AnalyticConfig& cfg);

/// c_ab(h): pair-connection probability of two random neighbours of a vertex
/// with hidden variable h. Evaluated in the kink-safe form
///   N(h)/D(h)^2 with N = integral (xy)^(2-tau) f(ahx) f(ahy) f(xy),
///   D = integral x^(1-tau) f(ahx), both over [a h_min, b].
QuadEstimate c_ab_h(const Kernel& kernel, const CutoffScheme& scheme, double tau,
                    double h_min, double h, const AnalyticConfig& cfg);

/// Full local clustering curve c(h) = (1 - e^-h - h e^-h) c_ab(h).
QuadEstimate local_clustering_analytic(const Kernel& kernel, const CutoffScheme& scheme,
                                       double tau, double h_min, double h,
                                       const AnalyticConfig& cfg);

/// Degree factor A(tau) = integral of rho(h) (1 - (1+h) e^-h) over [h_min, N]
/// with rho the normalized power law on that range.
QuadEstimate a_factor(double tau, double h_min, double n, const AnalyticConfig& cfg);

/// I_ab^max(tau) for the max-dense kernel, lower integration limit alpha =
/// a h_min. Series expansions take over inside the guard bands
/// |tau-2| < 1e-4 and |3-tau| < 1e-4 where the direct form has removable
/// singularities.
double i_ab_max(double alpha, double b, double tau);

/// Front factor (tau-2)^2 / (alpha^(2-tau) - b^(2-tau))^2.
double front_factor(double alpha, double b, double tau);

/// Closed form for c_ab(0) of the max-dense kernel: front * I_ab^max.
double c_max_g_closed(double alpha, double b, double tau);

/// Average clustering closed form C_ab^max(tau) = A(tau) * front * I_ab^max.
double c_max_closed(const CutoffScheme& scheme, double tau, double h_min, double n,
                    const AnalyticConfig& cfg);

/// Large-network approximation A(tau) (tau-2)/(3-tau) alpha^(2(tau-2)) ln(b^2).
double c_max_approx(const CutoffScheme& scheme, double tau, double h_min, double n,
                    const AnalyticConfig& cfg);

struct CBounds {
    double lower;
    double upper;
    double best_u0; // grid point attaining the lower bound
};

/// Universal sandwich for C_ab^f(tau):
///   upper = C_ab^max at (a, b),
///   lower = max over u0 of u0 f(u0) C^max at (a/sqrt(u0), b/sqrt(u0)).
/// u0 grid values must be >= 1; values with b/sqrt(u0) < 1 are skipped.
CBounds c_bounds(const Kernel& kernel, const CutoffScheme& scheme, double tau,
                 double h_min, double n, std::span<const double> u0_grid,
                 const AnalyticConfig& cfg);

std::vector<double> default_u0_grid(const CutoffScheme& scheme);

struct PersistenceApprox {
    double value;
    double validity_ratio; // |ln(alpha b) / ln(b^2)|, small when the expansion applies
};

/// Near-tau=2 approximation of C_ab^max:
///   A(tau) (1 - (tau-2) ln(b^2)/3) /
///   (2 (1 - (tau-2) ln(alpha b)/2 + (tau-2)^2 ln^2(b)/6)^2).
PersistenceApprox persistence_approx(const CutoffScheme& scheme, double tau, double h_min,
                                     double n, const AnalyticConfig& cfg);

/// Network size at which clustering starts to decay: solves
/// N ln N = exp((tau-1) t / ((tau-2)(3-tau))) for a threshold t in (0,3),
/// using <h> ~ ln N (h_min = 1).
double persistence_threshold_n(double tau, double t);

/// Decreasing-in-tau envelope A(tau) G(tau, abar, bbar(tau)) with
/// abar = (N m)^(-1/2), bbar = (N M)^((3-tau)/(2(tau-1))), m and M the
/// extreme values of <h> over tau in [2,3].
double envelope_c(const Kernel& kernel, double tau, double h_min, double n,
                  const AnalyticConfig& cfg);

/// Bundle of the analytic quantities; emitted by the CLI as JSON.
struct AnalyticResult {
    double c_ab_0 = 0.0;
    double c_ab_0_error = 0.0;
    double a_factor = 0.0;
    double c_avg = 0.0;        // c_ab_0 * A(tau)
    double c_max_closed = 0.0; // always filled; the universal upper bound
    double bound_low = 0.0;
    double bound_high = 0.0;
    double approx_main = 0.0;
    double approx_persistence = 0.0;
    double persistence_validity_ratio = 0.0;
};

/// Evaluates the full bundle. For the max-dense kernel the quadrature and the
/// closed form cross-check each other; disagreement beyond the combined
/// tolerance throws.
AnalyticResult c_average(const Kernel& kernel, const CutoffScheme& scheme, double tau,
                         double h_min, double n, const AnalyticConfig& cfg);

} // namespace hvclust
