#include "hvclust/graphgen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace hvclust {

namespace {

void require_hidden(const std::vector<double>& hidden) {
    if (hidden.empty()) throw std::invalid_argument("hidden variable list is empty");
    for (double h : hidden) {
        if (!(h > 0.0) || !std::isfinite(h)) {
            throw std::invalid_argument("hidden variables must be positive and finite");
        }
    }
    if (hidden.size() > static_cast<std::size_t>(UINT32_MAX)) {
        throw std::invalid_argument("vertex count exceeds 32-bit index space");
    }
}

Graph build_graph(std::vector<double> hidden,
                  std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges) {
    Graph g;
    g.hidden = std::move(hidden);
    g.adjacency.assign(g.hidden.size(), {});
    std::vector<std::uint32_t> deg(g.hidden.size(), 0);
    for (auto [i, j] : edges) {
        ++deg[i];
        ++deg[j];
    }
    for (std::size_t v = 0; v < g.hidden.size(); ++v) g.adjacency[v].reserve(deg[v]);
    for (auto [i, j] : edges) {
        g.adjacency[i].push_back(j);
        g.adjacency[j].push_back(i);
    }
    for (auto& list : g.adjacency) std::sort(list.begin(), list.end());
    return g;
}

} // namespace

std::size_t Graph::num_edges() const {
    std::size_t twice = 0;
    for (const auto& list : adjacency) twice += list.size();
    return twice / 2;
}

Graph generate_naive(const Kernel& kernel, const std::vector<double>& hidden,
                     const CutoffScheme& scheme, Xoshiro256pp& rng, std::size_t cap) {
    require_hidden(hidden);
    const std::size_t n = hidden.size();
    if (n > cap) {
        throw std::invalid_argument("generate_naive refuses n > cap; it is the O(n^2) oracle");
    }
    const double inv_hs2 = 1.0 / (scheme.h_s * scheme.h_s);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    for (std::uint32_t i = 0; i + 1 < n; ++i) {
        for (std::uint32_t j = i + 1; j < n; ++j) {
            const double u = hidden[i] * hidden[j] * inv_hs2;
            if (rng.uniform01() < kernel.r(u)) edges.emplace_back(i, j);
        }
    }
    return build_graph(hidden, edges);
}

Graph generate_fast(const Kernel& kernel, const std::vector<double>& hidden,
                    const CutoffScheme& scheme, Xoshiro256pp& rng) {
    require_hidden(hidden);
    const std::size_t n = hidden.size();
    const double inv_hs2 = 1.0 / (scheme.h_s * scheme.h_s);

    // descending hidden variable, ties broken by original index
    std::vector<std::uint32_t> order(n);
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        if (hidden[a] != hidden[b]) return hidden[a] > hidden[b];
        return a < b;
    });
    std::vector<double> w(n);
    for (std::size_t k = 0; k < n; ++k) w[k] = hidden[order[k]];

    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        std::size_t j = i + 1;
        // envelope in force; valid for every candidate >= j since w decreases
        double p = std::min(1.0, w[i] * w[j] * inv_hs2);
        while (j < n && p > 0.0) {
            if (p < 1.0) {
                const double gap = std::floor(std::log(rng.uniform_pos()) / std::log1p(-p));
                if (gap >= static_cast<double>(n - j)) break;
                j += static_cast<std::size_t>(gap);
            }
            const double u = w[i] * w[j] * inv_hs2;
            const double q = kernel.r(u); // q <= min(1,u) <= p
            if (rng.uniform01() * p < q) {
                const std::uint32_t vi = order[i];
                const std::uint32_t vj = order[j];
                edges.emplace_back(std::min(vi, vj), std::max(vi, vj));
            }
            p = std::min(1.0, u);
            ++j;
        }
    }
    return build_graph(hidden, edges);
}

double expected_edge_count(const Kernel& kernel, const std::vector<double>& hidden,
                           const CutoffScheme& scheme) {
    require_hidden(hidden);
    const double inv_hs2 = 1.0 / (scheme.h_s * scheme.h_s);
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < hidden.size(); ++i) {
        for (std::size_t j = i + 1; j < hidden.size(); ++j) {
            total += kernel.r(hidden[i] * hidden[j] * inv_hs2);
        }
    }
    return total;
}

} // namespace hvclust
