#include <algorithm>
#include <stdexcept>

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hvclust/analytic.hpp"
#include "hvclust/clustering.hpp"
#include "hvclust/graphgen.hpp"
#include "hvclust/kernels.hpp"
#include "hvclust/lerch.hpp"
#include "hvclust/powerlaw.hpp"
#include "hvclust/rng.hpp"

namespace py = pybind11;
using namespace hvclust;

namespace {

Kernel kernel_from_any(const py::object& spec) {
    if (py::isinstance<Kernel>(spec)) return spec.cast<Kernel>();
    return Kernel::from_name(spec.cast<std::string>());
}

py::dict report_to_dict(const ClusteringReport& rep) {
    py::dict d;
    d["c_global"] = rep.c_global;
    d["c_deg2_restricted"] = rep.c_deg2_restricted;
    d["triangles_total"] = rep.triangles_total;
    d["transitivity"] = rep.transitivity;
    py::list bins;
    for (const auto& bin : rep.bins_h) {
        py::dict b;
        b["lo"] = bin.lo;
        b["hi"] = bin.hi;
        b["count"] = bin.count;
        b["mean_c"] = bin.mean_c ? py::object(py::float_(*bin.mean_c)) : py::none();
        b["stderr_c"] = bin.stderr_c ? py::object(py::float_(*bin.stderr_c)) : py::none();
        b["mean_h"] = bin.mean_h ? py::object(py::float_(*bin.mean_h)) : py::none();
        bins.append(b);
    }
    d["bins_h"] = bins;
    py::list kbins;
    for (const auto& bin : rep.bins_k) {
        py::dict b;
        b["k"] = bin.degree;
        b["count"] = bin.count;
        b["mean_c"] = bin.mean_c;
        kbins.append(b);
    }
    d["bins_k"] = kbins;
    return d;
}

} // namespace

PYBIND11_MODULE(_hvclust, m) {
    m.doc() = "Clustering in scale-free hidden-variable random graphs";

    py::class_<Kernel>(m, "Kernel")
        .def_static("max_dense", &Kernel::max_dense)
        .def_static("poisson", &Kernel::poisson)
        .def_static("max_random", &Kernel::max_random)
        .def_static("from_name", &Kernel::from_name)
        .def_static("custom", &Kernel::custom, py::arg("name"), py::arg("f"),
                    py::arg("kinks") = std::vector<double>{})
        .def_property_readonly("name", &Kernel::name)
        .def_property_readonly("kinks", &Kernel::kinks)
        .def("f", &Kernel::f)
        .def("r", &Kernel::r);

    m.def("validate_fclass", [](const py::object& kernel, const std::vector<double>& grid) {
        const FClassReport rep = validate_fclass(kernel_from_any(kernel), grid);
        auto check = [](const FClassCheck& c) {
            py::dict d;
            d["passed"] = c.passed;
            d["violation_u"] = c.passed ? py::object(py::none()) : py::object(py::float_(c.violation_u));
            d["detail"] = c.detail;
            return d;
        };
        py::dict d;
        d["all_passed"] = rep.all_passed();
        d["f1"] = check(rep.f1);
        d["f2"] = check(rep.f2);
        d["f4"] = check(rep.f4);
        return d;
    });
    m.def("geometric_grid", &geometric_grid);

    py::class_<CutoffScheme>(m, "CutoffScheme")
        .def_readonly("h_s", &CutoffScheme::h_s)
        .def_readonly("h_c", &CutoffScheme::h_c)
        .def_readonly("a", &CutoffScheme::a)
        .def_readonly("b", &CutoffScheme::b);

    m.def("mean_h", &mean_h, py::arg("tau"), py::arg("h_min"), py::arg("n"));
    m.def("truncated_mean_h", &truncated_mean_h);
    m.def("default_cutoffs",
          py::overload_cast<double, double, double>(&default_cutoffs), py::arg("tau"),
          py::arg("h_min"), py::arg("n"));
    m.def("natural_cutoff_exact",
          py::overload_cast<double, double, double>(&natural_cutoff_exact));
    m.def("natural_cutoff_bounds", [](double tau, double h_min, double n) {
        const auto b = natural_cutoff_bounds(tau, h_min, n);
        return py::make_tuple(b.lower, b.upper);
    });
    m.def("sample_hidden",
          [](double tau, double h_min, std::int64_t n, double upper, std::size_t count,
             std::uint64_t seed) {
              PowerLawModel model(tau, h_min, n);
              Xoshiro256pp rng(seed);
              return sample_hidden(model, upper, count, rng);
          },
          py::arg("tau"), py::arg("h_min"), py::arg("n"), py::arg("upper"), py::arg("count"),
          py::arg("seed"));

    m.def("lerch_phi",
          py::overload_cast<double, double, double, double>(&lerch_phi), py::arg("z"),
          py::arg("s"), py::arg("v"), py::arg("tol") = 1e-10);
    m.def("table2_terms", &table2_terms);
    m.def("c_maxrandom_closed", &c_maxrandom_closed, py::arg("scheme"), py::arg("tau"),
          py::arg("h_min"), py::arg("tol") = 1e-12);

    m.def("c_ab_h", [](const py::object& kernel, double tau, double h_min, double n, double h) {
        const Kernel k = kernel_from_any(kernel);
        const CutoffScheme scheme = default_cutoffs(tau, h_min, n);
        return c_ab_h(k, scheme, tau, h_min, h, AnalyticConfig{}).value;
    });
    m.def("local_clustering_analytic",
          [](const py::object& kernel, double tau, double h_min, double n, double h) {
              const Kernel k = kernel_from_any(kernel);
              const CutoffScheme scheme = default_cutoffs(tau, h_min, n);
              return local_clustering_analytic(k, scheme, tau, h_min, h, AnalyticConfig{}).value;
          });
    m.def("a_factor", [](double tau, double h_min, double n) {
        return a_factor(tau, h_min, n, AnalyticConfig{}).value;
    });
    m.def("c_average", [](const py::object& kernel, double tau, double h_min, double n) {
        const Kernel k = kernel_from_any(kernel);
        const CutoffScheme scheme = default_cutoffs(tau, h_min, n);
        const AnalyticResult r = c_average(k, scheme, tau, h_min, n, AnalyticConfig{});
        py::dict d;
        d["c_ab_0"] = r.c_ab_0;
        d["a_factor"] = r.a_factor;
        d["c_avg"] = r.c_avg;
        d["c_max_closed"] = r.c_max_closed;
        d["bound_low"] = r.bound_low;
        d["bound_high"] = r.bound_high;
        d["approx_main"] = r.approx_main;
        d["approx_persistence"] = r.approx_persistence;
        return d;
    });
    m.def("c_max_closed", [](double tau, double h_min, double n) {
        const CutoffScheme scheme = default_cutoffs(tau, h_min, n);
        return c_max_closed(scheme, tau, h_min, n, AnalyticConfig{});
    });
    m.def("persistence_threshold_n", &persistence_threshold_n, py::arg("tau"), py::arg("t"));
    m.def("persistence_approx", [](double tau, double h_min, double n) {
        const CutoffScheme scheme = default_cutoffs(tau, h_min, n);
        const PersistenceApprox p = persistence_approx(scheme, tau, h_min, n, AnalyticConfig{});
        return py::make_tuple(p.value, p.validity_ratio);
    });
    m.def("envelope_c", [](const py::object& kernel, double tau, double h_min, double n) {
        return envelope_c(kernel_from_any(kernel), tau, h_min, n, AnalyticConfig{});
    });
    m.def("uncorrelated_c_formula", &uncorrelated_c_formula, py::arg("degrees"), py::arg("n"));
    m.def("count_triangles",
          [](std::size_t n, const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges) {
              Graph g;
              g.hidden.assign(n, 1.0);
              g.adjacency.assign(n, {});
              for (auto [i, j] : edges) {
                  if (i >= n || j >= n || i == j) {
                      throw std::invalid_argument("edge endpoints must be distinct and < n");
                  }
                  g.adjacency[i].push_back(j);
                  g.adjacency[j].push_back(i);
              }
              for (auto& list : g.adjacency) std::sort(list.begin(), list.end());
              return count_triangles(g);
          },
          py::arg("n"), py::arg("edges"));

    m.def("simulate_clustering",
          [](const py::object& kernel, double tau, double h_min, std::int64_t n,
             std::int64_t replicas, std::uint64_t seed, const std::string& generator,
             int bins) {
              const Kernel k = kernel_from_any(kernel);
              PowerLawModel model(tau, h_min, n);
              const CutoffScheme scheme = default_cutoffs(model);
              ClusteringAccumulator acc(HBinSpec{h_min, scheme.h_c, bins});
              for (std::int64_t r = 0; r < replicas; ++r) {
                  Xoshiro256pp rng(replica_seed(seed, static_cast<std::uint64_t>(r)));
                  const auto hidden =
                      sample_hidden(model, scheme.h_c, static_cast<std::size_t>(n), rng);
                  const Graph g = generator == "naive"
                                      ? generate_naive(k, hidden, scheme, rng)
                                      : generate_fast(k, hidden, scheme, rng);
                  acc.add(g);
              }
              py::dict d = report_to_dict(acc.pooled());
              d["c_global_mean"] = acc.c_global_mean();
              d["c_global_stderr"] = acc.c_global_stderr();
              return d;
          },
          py::arg("kernel"), py::arg("tau"), py::arg("h_min"), py::arg("n"),
          py::arg("replicas") = 1, py::arg("seed") = 1, py::arg("generator") = "fast",
          py::arg("bins") = 20);

    m.def("generate_edges",
          [](const py::object& kernel, double tau, double h_min, std::int64_t n,
             std::uint64_t seed, const std::string& generator) {
              const Kernel k = kernel_from_any(kernel);
              PowerLawModel model(tau, h_min, n);
              const CutoffScheme scheme = default_cutoffs(model);
              Xoshiro256pp rng(seed);
              const auto hidden =
                  sample_hidden(model, scheme.h_c, static_cast<std::size_t>(n), rng);
              const Graph g = generator == "naive" ? generate_naive(k, hidden, scheme, rng)
                                                   : generate_fast(k, hidden, scheme, rng);
              std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
              for (std::size_t v = 0; v < g.num_vertices(); ++v) {
                  for (std::uint32_t u : g.adjacency[v]) {
                      if (u > v) edges.emplace_back(static_cast<std::uint32_t>(v), u);
                  }
              }
              return edges;
          },
          py::arg("kernel"), py::arg("tau"), py::arg("h_min"), py::arg("n"), py::arg("seed") = 1,
          py::arg("generator") = "fast");
}
