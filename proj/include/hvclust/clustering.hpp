#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hvclust/graphgen.hpp"

namespace hvclust {

/// Exact per-vertex triangle counts via degree-ordered forward adjacency and
/// sorted-list intersection.
std::vector<std::uint64_t> count_triangles(const Graph& graph);

/// Local clustering c_i = 2 T_i / (k_i (k_i - 1)) for k_i >= 2, else 0.
std::vector<double> local_clustering(const Graph& graph,
                                     const std::vector<std::uint64_t>& triangles);

/// Logarithmic binning over [lo, hi] with `bins` cells.
struct HBinSpec {
    double lo;
    double hi;
    int bins = 20;
};

struct HBin {
    double lo = 0.0;
    double hi = 0.0;
    std::size_t count = 0;
    std::optional<double> mean_c;   // empty when the bin is unpopulated
    std::optional<double> stderr_c; // empty when count < 2
    std::optional<double> mean_h;
};

struct DegreeBin {
    std::uint64_t degree = 0;
    std::size_t count = 0;
    double mean_c = 0.0;
};

struct ClusteringReport {
    double c_global = 0.0;          // mean of c_i over all N vertices
    double c_deg2_restricted = 0.0; // mean over vertices of degree >= 2
    std::uint64_t triangles_total = 0;
    double transitivity = 0.0; // diagnostic: 3 * triangles / connected triples
    std::vector<HBin> bins_h;
    std::vector<DegreeBin> bins_k;
};

/// Clustering statistics of one graph, binned by hidden variable and degree.
ClusteringReport report(const Graph& graph, const HBinSpec& spec);

/// Moment formula <k(k-1)>^2 / (N <k>^3) for the empirical degree sequence.
/// Diagnostic only; throws on an all-zero sequence.
double uncorrelated_c_formula(const std::vector<std::uint64_t>& degrees, std::size_t n);

/// Pools vertex-level clustering statistics over replicas. Bin sums are
/// merged in replica order so pooled results do not depend on scheduling.
class ClusteringAccumulator {
public:
    explicit ClusteringAccumulator(const HBinSpec& spec);

    void add(const Graph& graph);
    void merge(const ClusteringAccumulator& other);

    std::size_t replicas() const { return replicas_; }
    double c_global_mean() const;
    double c_global_stderr() const; // between-replica standard error
    ClusteringReport pooled() const;

private:
    struct BinSums {
        std::size_t count = 0;
        double sum_c = 0.0;
        double sum_c2 = 0.0;
        double sum_h = 0.0;
    };

    HBinSpec spec_;
    std::vector<BinSums> bins_;
    std::vector<std::pair<std::uint64_t, std::pair<std::size_t, double>>> degree_sums_;
    std::size_t replicas_ = 0;
    std::size_t vertices_ = 0;
    double sum_c_all_ = 0.0;
    double sum_creplica_ = 0.0;
    double sum_creplica2_ = 0.0;
    std::size_t deg2_count_ = 0;
    double deg2_sum_c_ = 0.0;
    std::uint64_t triangles_ = 0;
    double wedges_ = 0.0;

    void add_degree(std::uint64_t k, double c);
};

} // namespace hvclust
