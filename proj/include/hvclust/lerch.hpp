#pragma once

#include <array>

#include "hvclust/powerlaw.hpp"

namespace hvclust {

/// Parameters of Lerch's transcendent Phi(z,s,v) = sum_k z^k / (k+v)^s.
/// The series converges for |z| <= 1 (z != 1 when s <= 1), s > 0, v > 0.
struct LerchParams {
    double z;
    double s;
    double v;
    void validate() const;
};

/// Phi(z,s,v) to absolute accuracy tol. Negative z is summed with
/// Cohen-Rodriguez Villegas-Zagier acceleration of the alternating series;
/// z = 1 (s > 1) uses an Euler-Maclaurin tail.
double lerch_phi(const LerchParams& p, double tol = 1e-10);
double lerch_phi(double z, double s, double v, double tol = 1e-10);

/// Average clustering closed form for the max-random kernel as printed:
///   front(tau) * { pi ln(b^2)/sin(pi s) - pi^2 cos(pi s)/sin^2(pi s)
///                  + b^(-2s) Phi(-b^(-2), 2, s)
///                  + alpha^(2(1-s)) Phi(-alpha^2, 2, 1-s)
///                  - 2 (alpha b)^(1-s) Phi(-alpha b, 2, 1-s) }
/// with s = tau-2, alpha = a h_min and front = s^2/(alpha^(-s)-b^(-s))^2.
/// This equals c_ab(0); the degree factor A(tau) is applied by callers that
/// want the average clustering coefficient.
double c_maxrandom_closed(const CutoffScheme& scheme, double tau, double h_min,
                          double tol = 1e-12);

/// Dominant-term comparison columns for s = tau-2 in (0, 0.5]:
/// { pi/sin(pi s), 1/(s(1-s)), pi^2 cos(pi s)/sin^2(pi s), 1/s^2 - 1/(1-s)^2 }.
std::array<double, 4> table2_terms(double s);

} // namespace hvclust
