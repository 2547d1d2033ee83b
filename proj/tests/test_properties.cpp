#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>
#include <vector>

#include "hvclust/analytic.hpp"
#include "hvclust/clustering.hpp"
#include "hvclust/graphgen.hpp"
#include "hvclust/kernels.hpp"
#include "hvclust/lerch.hpp"
#include "hvclust/powerlaw.hpp"
#include "hvclust/rng.hpp"
#include "test_support.hpp"

using namespace hvclust;

namespace {

// One-parameter family r(u) = u (1+u^p)^(-1/p), p >= 1. It interpolates
// between the max-random kernel (p = 1) and the max-dense kernel (p -> inf)
// while staying inside the admissible class: f(0) = 1, f nonincreasing,
// r nondecreasing to 1, and z(u) = u^p/(1+u^p) nondecreasing.
Kernel p_family(double p) {
    return Kernel::custom("p-family", [p](double u) {
        if (u == 0.0) return 1.0;
        if (u >= 1.0) {
            // (1+u^p)^(-1/p) = u^-1 (1+u^-p)^(-1/p); keeps the relative error
            // near machine epsilon where f ~ 1/u, which the finite-difference
            // admissibility checks rely on
            return std::exp(-std::log1p(std::pow(u, -p)) / p) / u;
        }
        return std::exp(-std::log1p(std::pow(u, p)) / p);
    });
}

const AnalyticConfig kCfg;

} // namespace

TEST_SUITE_BEGIN("properties");

TEST_CASE("p-family members satisfy the admissibility conditions") {
    const auto grid = geometric_grid(1e-6, 1e6, 181);
    for (double p : {1.0, 1.5, 2.0, 3.0, 5.0, 8.0}) {
        const Kernel k = p_family(p);
        INFO("p=", p);
        const FClassReport rep = validate_fclass(k, grid);
        CHECK(rep.f1.passed);
        CHECK(rep.f2.passed);
        CHECK(rep.f4.passed);
        for (double u : grid) CHECK(k.r(u) <= std::min(1.0, u) + 1e-12);
    }
    // endpoints of the family against the built-ins they approach
    const Kernel p1 = p_family(1.0);
    const Kernel mr = Kernel::max_random();
    for (double u : {0.1, 1.0, 42.0}) CHECK(p1.f(u) == doctest::Approx(mr.f(u)).epsilon(1e-12));
}

TEST_CASE("universal bounds hold across the p-family") {
    Xoshiro256pp rng(604);
    for (int trial = 0; trial < 6; ++trial) {
        const double p = 1.0 + 7.0 * rng.uniform01();
        const double tau = 2.15 + 0.7 * rng.uniform01();
        const double n = 1e4;
        const Kernel k = p_family(p);
        const CutoffScheme scheme = default_cutoffs(tau, 1.0, n);
        const double a = a_factor(tau, 1.0, n, kCfg).value;
        const QuadEstimate g = g_ratio(k, tau, scheme.a, scheme.b, kCfg);
        const double c_avg = a * g.value;
        const CBounds bounds = c_bounds(k, scheme, tau, 1.0, n, default_u0_grid(scheme), kCfg);
        INFO("p=", p, " tau=", tau);
        CHECK(bounds.lower <= c_avg * (1.0 + 1e-9));
        CHECK(c_avg <= bounds.upper * (1.0 + 1e-9));
    }
}

TEST_CASE("local pair connectivity decreases in h across the p-family") {
    Xoshiro256pp rng(605);
    for (int trial = 0; trial < 4; ++trial) {
        const double p = 1.0 + 7.0 * rng.uniform01();
        const double tau = 2.15 + 0.7 * rng.uniform01();
        const Kernel k = p_family(p);
        const CutoffScheme scheme = default_cutoffs(tau, 1.0, 1e4);
        double prev = 2.0, prev_err = 0.0;
        for (double h : geometric_grid(0.5, 3e3, 8)) {
            const QuadEstimate c = c_ab_h(k, scheme, tau, 1.0, h, kCfg);
            INFO("p=", p, " tau=", tau, " h=", h);
            CHECK(c.value <= prev + 10.0 * (c.error + prev_err));
            CHECK(c.value >= 0.0);
            CHECK(c.value <= 1.0 + 1e-9);
            prev = c.value;
            prev_err = c.error;
        }
    }
}

TEST_CASE("skip sampling stays exact for custom admissible kernels") {
    // the envelope argument only needs r(u) <= min(1, u); cross-check the
    // fast generator against the naive oracle for a family member
    const Kernel k = p_family(3.0);
    const PowerLawModel model(2.4, 1.0, 300);
    const CutoffScheme scheme = default_cutoffs(model);
    const int seeds = 150;
    std::vector<double> fast_edges, naive_edges;
    for (int s = 0; s < seeds; ++s) {
        Xoshiro256pp rng_h(replica_seed(4040, static_cast<std::uint64_t>(s)));
        const auto hidden = sample_hidden(model, scheme.h_c, 300, rng_h);
        Xoshiro256pp ra(replica_seed(11, static_cast<std::uint64_t>(s)));
        Xoshiro256pp rb(replica_seed(22, static_cast<std::uint64_t>(s)));
        fast_edges.push_back(
            static_cast<double>(generate_fast(k, hidden, scheme, ra).num_edges()));
        naive_edges.push_back(
            static_cast<double>(generate_naive(k, hidden, scheme, rb).num_edges()));
    }
    const auto mf = hvtest::mean_stderr(fast_edges);
    const auto mn = hvtest::mean_stderr(naive_edges);
    const double sigma = std::sqrt(mf.stderr_ * mf.stderr_ + mn.stderr_ * mn.stderr_);
    CHECK(std::abs(mf.mean - mn.mean) <= 4.0 * sigma);
}

TEST_CASE("inverse CDF round trip on random parameters") {
    Xoshiro256pp rng(606);
    for (int trial = 0; trial < 40; ++trial) {
        const double tau = 2.0 + 1e-3 + (1.0 - 2e-3) * rng.uniform01();
        const double h_min = 0.25 + 4.0 * rng.uniform01();
        const double upper = h_min * (10.0 + 1e4 * rng.uniform01());
        const double u = rng.uniform01();
        const double h = hidden_inverse_cdf(tau, h_min, upper, u);
        CHECK(h >= h_min * (1.0 - 1e-12));
        CHECK(h <= upper * (1.0 + 1e-12));
        CHECK(hidden_cdf(tau, h_min, upper, h) == doctest::Approx(u).epsilon(5e-9));
    }
}

TEST_CASE("lerch tolerance contract on random parameters") {
    Xoshiro256pp rng(607);
    for (int trial = 0; trial < 30; ++trial) {
        const double z = -rng.uniform01();
        const double s = 0.2 + 2.5 * rng.uniform01();
        const double v = 0.1 + 3.0 * rng.uniform01();
        const double coarse = lerch_phi(z, s, v, 1e-7);
        const double fine = lerch_phi(z, s, v, 1e-13);
        INFO("z=", z, " s=", s, " v=", v);
        CHECK(std::abs(coarse - fine) <= 1e-7);
    }
}

TEST_CASE("simulated average clustering tracks the analytic value for max-random") {
    const double tau = 2.5;
    const std::int64_t n = 3000;
    const Kernel k = Kernel::max_random();
    const PowerLawModel model(tau, 1.0, n);
    const CutoffScheme scheme = default_cutoffs(model);

    ClusteringAccumulator acc(HBinSpec{1.0, scheme.h_c, 20});
    for (std::uint64_t r = 0; r < 100; ++r) {
        Xoshiro256pp rng(replica_seed(2718, r));
        const auto hidden = sample_hidden(model, scheme.h_c, static_cast<std::size_t>(n), rng);
        acc.add(generate_fast(k, hidden, scheme, rng));
    }
    const double c_emp = acc.c_global_mean();
    const double c_ana = g_ratio(k, tau, scheme.a, scheme.b, kCfg).value *
                         a_factor(tau, 1.0, static_cast<double>(n), kCfg).value;
    // generous band: desk scale plus the finite-size effects that the
    // asymptotic formula ignores
    CHECK(std::abs(c_emp / c_ana - 1.0) < 0.15);
}

TEST_CASE("analytic evaluations are safe to run concurrently") {
    const Kernel kernel = Kernel::max_dense();
    const CutoffScheme scheme = default_cutoffs(2.5, 1.0, 1e5);
    const double serial = c_ab_h(kernel, scheme, 2.5, 1.0, 2.0, kCfg).value;

    std::vector<double> results(8, std::numeric_limits<double>::quiet_NaN());
    std::vector<std::thread> pool;
    for (int t = 0; t < 8; ++t) {
        pool.emplace_back([&, t]() {
            results[static_cast<std::size_t>(t)] =
                c_ab_h(kernel, scheme, 2.5, 1.0, 2.0, kCfg).value;
        });
    }
    for (auto& t : pool) t.join();
    for (double r : results) CHECK(r == serial);
}

TEST_SUITE_END();
