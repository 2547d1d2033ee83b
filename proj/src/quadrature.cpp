#include "hvclust/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace hvclust {

namespace {

// QUADPACK dqk15 abscissae and weights on [-1,1].
constexpr double kXgk[8] = {
    0.9914553711208126, 0.9491079123427585, 0.8648644233597691, 0.7415311855993944,
    0.5860872354676911, 0.4058451513773972, 0.2077849550078985, 0.0};
constexpr double kWgk[8] = {
    0.0229353220105292, 0.0630920926299785, 0.1047900103222502, 0.1406532597155259,
    0.1690047266392679, 0.1903505780647854, 0.2044329400752989, 0.2094821410847278};
constexpr double kWg[4] = {
    0.1294849661688697, 0.2797053914892767, 0.3818300505051189, 0.4179591836734694};

struct Cell {
    double lo, hi;
    double value;
    double error;
};

bool operator<(const Cell& a, const Cell& b) { return a.error < b.error; }

Cell evaluate_cell(const std::function<double(double)>& f, double lo, double hi) {
    const double center = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    double gk = 0.0;
    double g = 0.0;
    for (int i = 0; i < 8; ++i) {
        if (kXgk[i] == 0.0) {
            const double fc = f(center);
            gk += kWgk[i] * fc;
            g += kWg[3] * fc;
            continue;
        }
        const double dx = half * kXgk[i];
        const double pair = f(center - dx) + f(center + dx);
        gk += kWgk[i] * pair;
        if (i % 2 == 1) g += kWg[i / 2] * pair;
    }
    gk *= half;
    g *= half;
    return {lo, hi, gk, std::abs(gk - g)};
}

} // namespace

QuadEstimate integrate(const std::function<double(double)>& f, double lo, double hi,
                       std::span<const double> breakpoints, const AnalyticConfig& cfg) {
    cfg.validate();
    if (!(hi > lo)) {
        if (hi == lo) return {0.0, 0.0};
        throw std::invalid_argument("integrate requires lo <= hi");
    }

    std::vector<double> edges;
    edges.push_back(lo);
    for (double b : breakpoints) {
        if (b > lo && b < hi) edges.push_back(b);
    }
    edges.push_back(hi);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    std::priority_queue<Cell> cells;
    double total = 0.0;
    double queue_error = 0.0;
    double frozen_error = 0.0; // cells at floating point resolution, not refinable
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        Cell c = evaluate_cell(f, edges[i], edges[i + 1]);
        total += c.value;
        queue_error += c.error;
        cells.push(c);
    }

    int subdivisions = 0;
    while (frozen_error + queue_error > std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total))) {
        if (subdivisions >= cfg.max_subdivisions || cells.empty()) {
            throw QuadratureError("quadrature did not converge within max_subdivisions",
                                  {total, frozen_error + queue_error});
        }
        Cell worst = cells.top();
        cells.pop();
        queue_error -= worst.error;
        const double mid = 0.5 * (worst.lo + worst.hi);
        if (mid <= worst.lo || mid >= worst.hi) {
            frozen_error += worst.error;
            continue;
        }
        Cell left = evaluate_cell(f, worst.lo, mid);
        Cell right = evaluate_cell(f, mid, worst.hi);
        total += left.value + right.value - worst.value;
        queue_error += left.error + right.error;
        cells.push(left);
        cells.push(right);
        ++subdivisions;
    }

    return {total, frozen_error + queue_error};
}

} // namespace hvclust
