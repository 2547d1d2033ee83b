#pragma once

// Shared oracles and statistics helpers for the test suites. Everything here
// is independent of the library code paths it is used to check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "hvclust/graphgen.hpp"

namespace hvtest {

inline hvclust::Graph make_graph(std::size_t n,
                                 const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges,
                                 std::vector<double> hidden = {}) {
    hvclust::Graph g;
    g.hidden = hidden.empty() ? std::vector<double>(n, 1.0) : std::move(hidden);
    g.adjacency.assign(n, {});
    for (auto [i, j] : edges) {
        g.adjacency[i].push_back(j);
        g.adjacency[j].push_back(i);
    }
    for (auto& list : g.adjacency) std::sort(list.begin(), list.end());
    return g;
}

// O(n^3) triple enumeration; the anti-regression anchor for count_triangles.
inline std::vector<std::uint64_t> brute_force_triangles(const hvclust::Graph& g) {
    const std::size_t n = g.num_vertices();
    std::vector<std::uint64_t> t(n, 0);
    auto connected = [&](std::uint32_t a, std::uint32_t b) {
        return std::binary_search(g.adjacency[a].begin(), g.adjacency[a].end(), b);
    };
    for (std::uint32_t i = 0; i < n; ++i) {
        for (std::uint32_t j = i + 1; j < n; ++j) {
            if (!connected(i, j)) continue;
            for (std::uint32_t k = j + 1; k < n; ++k) {
                if (connected(j, k) && connected(i, k)) {
                    ++t[i];
                    ++t[j];
                    ++t[k];
                }
            }
        }
    }
    return t;
}

struct MeanStderr {
    double mean;
    double stderr_;
};

inline MeanStderr mean_stderr(const std::vector<double>& xs) {
    const double n = static_cast<double>(xs.size());
    double sum = 0.0;
    for (double x : xs) sum += x;
    const double mean = sum / n;
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    return {mean, std::sqrt(ss / (n - 1.0) / n)};
}

inline double fit_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
    const double n = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    return sxy / sxx;
}

// One-sample Kolmogorov-Smirnov statistic against a CDF.
inline double ks_one_sample(std::vector<double> samples,
                            const std::function<double(double)>& cdf) {
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double f = cdf(samples[i]);
        d = std::max(d, std::abs(f - static_cast<double>(i) / n));
        d = std::max(d, std::abs(static_cast<double>(i + 1) / n - f));
    }
    return d;
}

// Two-sample KS statistic; ties are resolved by advancing both walks past
// each distinct value, which is the correct discrete-data treatment.
inline double ks_two_sample(std::vector<double> a, std::vector<double> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    return d;
}

// 1% critical values (asymptotic), c(0.01) = 1.62762.
inline double ks_one_sample_critical_1pct(std::size_t n) {
    return 1.62762 / std::sqrt(static_cast<double>(n));
}

inline double ks_two_sample_critical_1pct(std::size_t n, std::size_t m) {
    const double nn = static_cast<double>(n);
    const double mm = static_cast<double>(m);
    return 1.62762 * std::sqrt((nn + mm) / (nn * mm));
}

} // namespace hvtest
