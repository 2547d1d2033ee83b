#pragma once

#include <cstdint>
#include <vector>

#include "hvclust/kernels.hpp"
#include "hvclust/powerlaw.hpp"
#include "hvclust/rng.hpp"

namespace hvclust {

/// Simple undirected graph with per-vertex hidden variables and sorted
/// adjacency lists. Vertices keep the index order of the input hidden
/// variables regardless of the generator's internal ordering.
struct Graph {
    std::vector<double> hidden;
    std::vector<std::vector<std::uint32_t>> adjacency;

    std::size_t num_vertices() const { return hidden.size(); }
    std::size_t num_edges() const;
    std::size_t degree(std::size_t v) const { return adjacency[v].size(); }
};

/// Reference generator: one independent uniform draw per unordered pair,
/// edge probability r(h_i h_j / h_s^2). Quadratic; refuses n beyond `cap`
/// because it exists as the distributional oracle for generate_fast.
Graph generate_naive(const Kernel& kernel, const std::vector<double>& hidden,
                     const CutoffScheme& scheme, Xoshiro256pp& rng,
                     std::size_t cap = 10000);

/// Skip-sampling generator, distributionally identical to generate_naive in
/// expected time O(N + E). Vertices are visited in descending hidden-variable
/// order; candidate neighbours are reached with geometric jumps under the
/// envelope q = min(1, h_i h_j / h_s^2) (the largest F-class connection
/// probability) and kept with probability r(u)/q.
Graph generate_fast(const Kernel& kernel, const std::vector<double>& hidden,
                    const CutoffScheme& scheme, Xoshiro256pp& rng);

/// Sum over pairs of r(h_i h_j / h_s^2): the exact expected edge count.
double expected_edge_count(const Kernel& kernel, const std::vector<double>& hidden,
                           const CutoffScheme& scheme);

} // namespace hvclust
