#include "hvclust/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace hvclust {

namespace {

void require_valid_u(double u) {
    if (!(u >= 0.0) || !std::isfinite(u)) {
        throw std::domain_error("kernel argument u must be finite and nonnegative");
    }
}

double f_max_dense(double u) { return u <= 1.0 ? 1.0 : 1.0 / u; }

double f_poisson(double u) {
    if (u == 0.0) return 1.0;
    if (u < 1e-4) {
        // Taylor series of (1-exp(-u))/u; direct evaluation cancels exactly
        // where f must equal 1.
        return 1.0 - u / 2.0 + u * u / 6.0 - u * u * u / 24.0 + u * u * u * u / 120.0;
    }
    return -std::expm1(-u) / u;
}

double f_max_random(double u) { return 1.0 / (1.0 + u); }

} // namespace

Kernel::Kernel(KernelId id, std::string name, std::function<double(double)> f,
               std::vector<double> kinks)
    : id_(id), name_(std::move(name)), f_(std::move(f)), kinks_(std::move(kinks)) {
    std::sort(kinks_.begin(), kinks_.end());
}

Kernel Kernel::max_dense() { return Kernel(KernelId::MaxDense, "max-dense", f_max_dense, {1.0}); }
Kernel Kernel::poisson() { return Kernel(KernelId::Poisson, "poisson", f_poisson, {}); }
Kernel Kernel::max_random() { return Kernel(KernelId::MaxRandom, "max-random", f_max_random, {}); }

Kernel Kernel::custom(std::string name, std::function<double(double)> f,
                      std::vector<double> kinks) {
    return Kernel(KernelId::Custom, std::move(name), std::move(f), std::move(kinks));
}

Kernel Kernel::from_name(std::string_view name) {
    if (name == "max-dense") return max_dense();
    if (name == "poisson") return poisson();
    if (name == "max-random") return max_random();
    throw std::invalid_argument("unknown kernel '" + std::string(name) +
                                "' (expected max-dense, poisson or max-random)");
}

const std::vector<std::string>& Kernel::builtin_names() {
    static const std::vector<std::string> names = {"max-dense", "poisson", "max-random"};
    return names;
}

double Kernel::f(double u) const {
    require_valid_u(u);
    return f_(u);
}

double Kernel::r(double u) const {
    require_valid_u(u);
    const double value = u * f_(u);
    return std::clamp(value, 0.0, 1.0);
}

namespace {

constexpr double kMonotoneTol = 1e-9;

std::string format_u(double u) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", u);
    return buf;
}

bool near_kink(double u, double step, std::span<const double> kinks) {
    for (double k : kinks) {
        if (std::abs(u - k) <= 2.0 * step) return true;
    }
    return false;
}

} // namespace

FClassReport validate_fclass(const Kernel& kernel, std::span<const double> grid) {
    FClassReport report;

    // F1: f(0)=1 and f nonincreasing.
    if (std::abs(kernel.f(0.0) - 1.0) > 1e-12) {
        report.f1 = {false, 0.0, "f(0) != 1"};
    }
    double prev_f = kernel.f(grid.empty() ? 0.0 : grid.front());
    double prev_u = grid.empty() ? 0.0 : grid.front();
    for (std::size_t i = 1; i < grid.size() && report.f1.passed; ++i) {
        const double fu = kernel.f(grid[i]);
        if (fu > prev_f + kMonotoneTol) {
            report.f1 = {false, grid[i],
                         "f increases between u=" + format_u(prev_u) + " and u=" + format_u(grid[i])};
        }
        prev_f = fu;
        prev_u = grid[i];
    }

    // F2: r nondecreasing on the grid, within [0,1], approaching 1.
    for (std::size_t i = 0; i + 1 < grid.size() && report.f2.passed; ++i) {
        const double r0 = kernel.r(grid[i]);
        const double r1 = kernel.r(grid[i + 1]);
        if (r1 < r0 - kMonotoneTol) {
            report.f2 = {false, grid[i + 1],
                         "r decreases between u=" + format_u(grid[i]) + " and u=" + format_u(grid[i + 1])};
        }
    }
    if (report.f2.passed && !grid.empty()) {
        const double u_max = grid.back();
        const double r_max = kernel.r(u_max);
        if (r_max < 1.0 - std::max(1e-3, 2.0 / u_max)) {
            report.f2 = {false, u_max, "r(u) does not approach 1 (r(" + format_u(u_max) + ")=" +
                                           format_u(r_max) + ")"};
        }
    }

    // F4: z(u) = -u f'(u)/f(u) nondecreasing, symmetric finite differences.
    double prev_z = -std::numeric_limits<double>::infinity();
    double prev_zu = 0.0;
    for (double u : grid) {
        if (!report.f4.passed) break;
        const double step = std::max(1e-6, 1e-6 * u);
        if (near_kink(u, step, kernel.kinks())) continue; // f' undefined there
        const double lo = std::max(0.0, u - step);
        const double fd = (kernel.f(u + step) - kernel.f(lo)) / (u + step - lo);
        const double z = -u * fd / kernel.f(u);
        if (z < prev_z - kMonotoneTol) {
            report.f4 = {false, u,
                         "z decreases between u=" + format_u(prev_zu) + " and u=" + format_u(u)};
        }
        prev_z = z;
        prev_zu = u;
    }

    return report;
}

std::vector<double> geometric_grid(double lo, double hi, std::size_t n) {
    if (!(lo > 0.0) || !(hi > lo) || n < 2) {
        throw std::invalid_argument("geometric_grid requires 0 < lo < hi and n >= 2");
    }
    std::vector<double> grid(n);
    const double step = std::log(hi / lo) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        grid[i] = lo * std::exp(step * static_cast<double>(i));
    }
    grid.front() = lo;
    grid.back() = hi;
    return grid;
}

} // namespace hvclust
