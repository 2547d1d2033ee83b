#include "hvclust/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hvclust {

std::vector<std::uint64_t> count_triangles(const Graph& graph) {
    const std::size_t n = graph.num_vertices();
    std::vector<std::uint64_t> triangles(n, 0);

    // rank by (degree, index); forward lists hold only higher-ranked
    // neighbours, so every triangle is found exactly once
    std::vector<std::uint32_t> rank(n);
    {
        std::vector<std::uint32_t> order(n);
        for (std::size_t v = 0; v < n; ++v) order[v] = static_cast<std::uint32_t>(v);
        std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
            if (graph.degree(a) != graph.degree(b)) return graph.degree(a) < graph.degree(b);
            return a < b;
        });
        for (std::size_t pos = 0; pos < n; ++pos) rank[order[pos]] = static_cast<std::uint32_t>(pos);
    }

    std::vector<std::vector<std::uint32_t>> forward(n);
    for (std::size_t v = 0; v < n; ++v) {
        for (std::uint32_t u : graph.adjacency[v]) {
            if (rank[u] > rank[v]) forward[v].push_back(u);
        }
        std::sort(forward[v].begin(), forward[v].end(),
                  [&](std::uint32_t a, std::uint32_t b) { return rank[a] < rank[b]; });
    }

    for (std::size_t v = 0; v < n; ++v) {
        for (std::uint32_t u : forward[v]) {
            // intersect forward[v] and forward[u] (both sorted by rank)
            auto it_v = forward[v].begin();
            auto it_u = forward[u].begin();
            while (it_v != forward[v].end() && it_u != forward[u].end()) {
                if (rank[*it_v] < rank[*it_u]) {
                    ++it_v;
                } else if (rank[*it_u] < rank[*it_v]) {
                    ++it_u;
                } else {
                    ++triangles[v];
                    ++triangles[u];
                    ++triangles[*it_v];
                    ++it_v;
                    ++it_u;
                }
            }
        }
    }
    return triangles;
}

std::vector<double> local_clustering(const Graph& graph,
                                     const std::vector<std::uint64_t>& triangles) {
    const std::size_t n = graph.num_vertices();
    std::vector<double> c(n, 0.0);
    for (std::size_t v = 0; v < n; ++v) {
        const double k = static_cast<double>(graph.degree(v));
        if (k >= 2.0) {
            c[v] = 2.0 * static_cast<double>(triangles[v]) / (k * (k - 1.0));
        }
    }
    return c;
}

namespace {

int bin_index(const HBinSpec& spec, double h) {
    if (h < spec.lo) return 0;
    const double t = std::log(h / spec.lo) / std::log(spec.hi / spec.lo);
    const int idx = static_cast<int>(std::floor(t * spec.bins));
    return std::clamp(idx, 0, spec.bins - 1);
}

} // namespace

ClusteringAccumulator::ClusteringAccumulator(const HBinSpec& spec) : spec_(spec) {
    if (!(spec.lo > 0.0) || !(spec.hi > spec.lo) || spec.bins < 1) {
        throw std::invalid_argument("HBinSpec requires 0 < lo < hi and bins >= 1");
    }
    bins_.assign(static_cast<std::size_t>(spec.bins), {});
}

void ClusteringAccumulator::add_degree(std::uint64_t k, double c) {
    auto it = std::lower_bound(degree_sums_.begin(), degree_sums_.end(), k,
                               [](const auto& entry, std::uint64_t key) { return entry.first < key; });
    if (it == degree_sums_.end() || it->first != k) {
        it = degree_sums_.insert(it, {k, {0, 0.0}});
    }
    it->second.first += 1;
    it->second.second += c;
}

void ClusteringAccumulator::add(const Graph& graph) {
    const auto triangles = count_triangles(graph);
    const auto c = local_clustering(graph, triangles);
    const std::size_t n = graph.num_vertices();

    double sum_c = 0.0;
    for (std::size_t v = 0; v < n; ++v) {
        const double cv = c[v];
        sum_c += cv;
        const std::uint64_t k = graph.degree(v);
        if (k >= 2) {
            deg2_count_ += 1;
            deg2_sum_c_ += cv;
        }
        wedges_ += 0.5 * static_cast<double>(k) * static_cast<double>(k - 1);
        triangles_ += triangles[v];
        BinSums& bin = bins_[static_cast<std::size_t>(bin_index(spec_, graph.hidden[v]))];
        bin.count += 1;
        bin.sum_c += cv;
        bin.sum_c2 += cv * cv;
        bin.sum_h += graph.hidden[v];
        add_degree(k, cv);
    }
    vertices_ += n;
    sum_c_all_ += sum_c;
    const double c_replica = sum_c / static_cast<double>(n);
    sum_creplica_ += c_replica;
    sum_creplica2_ += c_replica * c_replica;
    replicas_ += 1;
}

void ClusteringAccumulator::merge(const ClusteringAccumulator& other) {
    if (other.bins_.size() != bins_.size()) {
        throw std::invalid_argument("cannot merge accumulators with different bin specs");
    }
    for (std::size_t i = 0; i < bins_.size(); ++i) {
        bins_[i].count += other.bins_[i].count;
        bins_[i].sum_c += other.bins_[i].sum_c;
        bins_[i].sum_c2 += other.bins_[i].sum_c2;
        bins_[i].sum_h += other.bins_[i].sum_h;
    }
    for (const auto& [k, sums] : other.degree_sums_) {
        auto it = std::lower_bound(degree_sums_.begin(), degree_sums_.end(), k,
                                   [](const auto& entry, std::uint64_t key) { return entry.first < key; });
        if (it == degree_sums_.end() || it->first != k) {
            it = degree_sums_.insert(it, {k, {0, 0.0}});
        }
        it->second.first += sums.first;
        it->second.second += sums.second;
    }
    replicas_ += other.replicas_;
    vertices_ += other.vertices_;
    sum_c_all_ += other.sum_c_all_;
    sum_creplica_ += other.sum_creplica_;
    sum_creplica2_ += other.sum_creplica2_;
    deg2_count_ += other.deg2_count_;
    deg2_sum_c_ += other.deg2_sum_c_;
    triangles_ += other.triangles_;
    wedges_ += other.wedges_;
}

double ClusteringAccumulator::c_global_mean() const {
    return replicas_ == 0 ? 0.0 : sum_creplica_ / static_cast<double>(replicas_);
}

double ClusteringAccumulator::c_global_stderr() const {
    if (replicas_ < 2) return 0.0;
    const double r = static_cast<double>(replicas_);
    const double mean = sum_creplica_ / r;
    const double var = std::max(0.0, (sum_creplica2_ - r * mean * mean) / (r - 1.0));
    return std::sqrt(var / r);
}

ClusteringReport ClusteringAccumulator::pooled() const {
    ClusteringReport out;
    out.c_global = c_global_mean();
    out.c_deg2_restricted =
        deg2_count_ == 0 ? 0.0 : deg2_sum_c_ / static_cast<double>(deg2_count_);
    out.triangles_total = triangles_ / 3;
    out.transitivity = wedges_ == 0.0 ? 0.0 : static_cast<double>(triangles_) / wedges_;

    const double ratio = spec_.hi / spec_.lo;
    out.bins_h.reserve(bins_.size());
    for (std::size_t i = 0; i < bins_.size(); ++i) {
        HBin bin;
        bin.lo = spec_.lo * std::pow(ratio, static_cast<double>(i) / spec_.bins);
        bin.hi = spec_.lo * std::pow(ratio, static_cast<double>(i + 1) / spec_.bins);
        bin.count = bins_[i].count;
        if (bin.count > 0) {
            const double m = static_cast<double>(bin.count);
            const double mean = bins_[i].sum_c / m;
            bin.mean_c = mean;
            bin.mean_h = bins_[i].sum_h / m;
            if (bin.count > 1) {
                const double var = std::max(0.0, (bins_[i].sum_c2 - m * mean * mean) / (m - 1.0));
                bin.stderr_c = std::sqrt(var / m);
            }
        }
        out.bins_h.push_back(bin);
    }

    out.bins_k.reserve(degree_sums_.size());
    for (const auto& [k, sums] : degree_sums_) {
        out.bins_k.push_back({k, sums.first, sums.second / static_cast<double>(sums.first)});
    }
    return out;
}

ClusteringReport report(const Graph& graph, const HBinSpec& spec) {
    ClusteringAccumulator acc(spec);
    acc.add(graph);
    ClusteringReport out = acc.pooled();
    // single graph: c_global is the plain vertex average
    return out;
}

double uncorrelated_c_formula(const std::vector<std::uint64_t>& degrees, std::size_t n) {
    if (degrees.empty()) throw std::domain_error("empty degree sequence");
    double sum_k = 0.0;
    double sum_kk1 = 0.0;
    for (std::uint64_t k : degrees) {
        const double kd = static_cast<double>(k);
        sum_k += kd;
        sum_kk1 += kd * (kd - 1.0);
    }
    if (sum_k == 0.0) throw std::domain_error("all-zero degree sequence");
    const double m = static_cast<double>(degrees.size());
    const double mean_k = sum_k / m;
    const double mean_kk1 = sum_kk1 / m;
    return mean_kk1 * mean_kk1 / (static_cast<double>(n) * mean_k * mean_k * mean_k);
}

} // namespace hvclust
