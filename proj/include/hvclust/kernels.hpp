#pragma once

#include <functional>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hvclust {

enum class KernelId { MaxDense, Poisson, MaxRandom, Custom };

/// Connection kernel of a hidden-variable random graph. The edge probability
/// between vertices with hidden variables h, h' is r(u) = u f(u) evaluated at
/// u = h h' / h_s^2. Admissible kernels satisfy
///   F1: f(0) = 1 and f nonincreasing,
///   F2: r nondecreasing with limit 1,
///   F3: f piecewise twice differentiable with finitely many derivative
///       jumps (the declared `kinks`),
///   F4: z(u) = -u f'(u)/f(u) nondecreasing.
/// At a kink the derivative is by convention the mean of the one-sided
/// limits; no code path evaluates f' exactly at one (finite-difference checks
/// skip the kink footprint and quadrature cells split there).
/// Built-ins: max-dense r(u)=min(u,1), poisson r(u)=1-exp(-u),
/// max-random r(u)=u/(1+u).
class Kernel {
public:
    static Kernel max_dense();
    static Kernel poisson();
    static Kernel max_random();
    static Kernel custom(std::string name, std::function<double(double)> f,
                         std::vector<double> kinks = {});
    /// Lookup by CLI name: "max-dense" | "poisson" | "max-random".
    static Kernel from_name(std::string_view name);
    static const std::vector<std::string>& builtin_names();

    KernelId id() const { return id_; }
    const std::string& name() const { return name_; }
    /// u-values where f' may jump; integration cells are split on these.
    const std::vector<double>& kinks() const { return kinks_; }

    /// f(u) for u >= 0; throws std::domain_error on negative or non-finite u.
    double f(double u) const;
    /// r(u) = u f(u), clamped to [0,1] as a numerical safeguard.
    double r(double u) const;

private:
    Kernel(KernelId id, std::string name, std::function<double(double)> f,
           std::vector<double> kinks);

    KernelId id_;
    std::string name_;
    std::function<double(double)> f_;
    std::vector<double> kinks_;
};

struct FClassCheck {
    bool passed = true;
    double violation_u = std::numeric_limits<double>::quiet_NaN();
    std::string detail;
};

/// Numerical F-class validation report. F3 is declared structurally via the
/// kink list and is not checked.
struct FClassReport {
    FClassCheck f1;
    FClassCheck f2;
    FClassCheck f4;
    bool all_passed() const { return f1.passed && f2.passed && f4.passed; }
};

/// Checks F1, F2 and F4 on a sorted positive grid by finite differences.
/// Violations are reported, never thrown. Grid points that fall within the
/// finite-difference footprint of a declared kink are skipped for F4.
FClassReport validate_fclass(const Kernel& kernel, std::span<const double> grid);

/// n geometrically spaced points covering [lo, hi], endpoints included.
std::vector<double> geometric_grid(double lo, double hi, std::size_t n);

} // namespace hvclust
