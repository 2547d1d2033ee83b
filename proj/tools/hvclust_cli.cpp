// hvclust command line front end: analytic evaluation, simulation,
// comparison, and the closed-form tables, with reproducible seeded output.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "hvclust/analytic.hpp"
#include "hvclust/clustering.hpp"
#include "hvclust/graphgen.hpp"
#include "hvclust/json_writer.hpp"
#include "hvclust/kernels.hpp"
#include "hvclust/lerch.hpp"
#include "hvclust/powerlaw.hpp"
#include "hvclust/rng.hpp"

namespace {

using namespace hvclust;

constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

std::string resolve_output(const std::string& path) {
    if (path == "-") return path;
    std::filesystem::path p(path);
    if (p.is_relative()) {
        if (const char* dir = std::getenv("HVC_OUTPUT_DIR")) {
            return (std::filesystem::path(dir) / p).string();
        }
    }
    return path;
}

void write_text(const std::string& path, const std::string& content) {
    if (path == "-") {
        std::fwrite(content.data(), 1, content.size(), stdout);
        return;
    }
    const std::string resolved = resolve_output(path);
    std::ofstream out(resolved, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + resolved);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
}

std::string format_double(double v, const char* fmt = "%.17g") {
    char buf[64];
    std::snprintf(buf, sizeof(buf), fmt, v);
    return buf;
}

// one-line run summary, kept off stdout so JSON/CSV payloads stay clean
void summary_line(const std::string& text) { std::cerr << text << "\n"; }

struct GridSpec {
    double lo = 0.0;
    double hi = 0.0;
    int points = 0;
};

GridSpec parse_grid(const std::string& text) {
    GridSpec g;
    char colon1 = 0, colon2 = 0;
    std::istringstream in(text);
    if (!(in >> g.lo >> colon1 >> g.hi >> colon2 >> g.points) || colon1 != ':' ||
        colon2 != ':' || g.points < 1 || !(g.hi >= g.lo) || !(g.lo > 0.0)) {
        throw CLI::ValidationError("grid", "expected lo:hi:points with 0 < lo <= hi");
    }
    return g;
}

std::vector<double> grid_points(const GridSpec& g) {
    if (g.points == 1 || g.hi == g.lo) return {g.lo};
    return geometric_grid(g.lo, g.hi, static_cast<std::size_t>(g.points));
}

// ---------------------------------------------------------------------------
// shared simulation driver

struct SimOptions {
    std::string kernel = "max-dense";
    double tau = 2.5;
    double h_min = 1.0;
    double n_raw = 10000.0; // accepts 1e6-style spellings
    std::int64_t n = 10000;
    std::int64_t replicas = 1;
    std::uint64_t seed = 1;
    std::string generator = "fast";
    int threads = 1;
    int bins = 20;
    std::string edge_list;
};

void add_model_options(CLI::App* cmd, SimOptions& opt) {
    cmd->add_option("--kernel", opt.kernel, "Connection kernel")
        ->check(CLI::IsMember(Kernel::builtin_names()));
    cmd->add_option("--tau", opt.tau, "Power-law exponent in (2,3)")->required();
    cmd->add_option("--hmin", opt.h_min, "Lower support bound of the hidden variables");
    cmd->add_option("--n", opt.n_raw, "Number of vertices (scientific notation accepted)")
        ->required();
}

void add_sim_options(CLI::App* cmd, SimOptions& opt, bool with_edge_list) {
    add_model_options(cmd, opt);
    cmd->add_option("--replicas", opt.replicas, "Independent graph replicas")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--seed", opt.seed, "Master seed; replica r uses seed ^ splitmix64(r)");
    cmd->add_option("--generator", opt.generator, "Graph generator")
        ->check(CLI::IsMember({"fast", "naive"}));
    cmd->add_option("--threads", opt.threads, "Replica fan-out parallelism")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--bins", opt.bins, "Logarithmic hidden-variable bins")
        ->check(CLI::PositiveNumber);
    if (with_edge_list) {
        cmd->add_option("--edge-list", opt.edge_list,
                        "Write edge lists ('i j' per line, 0-based, i < j); with "
                        "multiple replicas a .r<k> suffix is appended");
    }
}

std::int64_t whole_vertex_count(double raw) {
    const double rounded = std::llround(raw);
    if (!(raw >= 1.0) || std::abs(raw - rounded) > 1e-9 * std::max(1.0, raw)) {
        throw CLI::ValidationError("--n", "vertex count must be a whole number >= 1");
    }
    return static_cast<std::int64_t>(rounded);
}

void export_edge_list(const Graph& graph, const std::string& base, std::int64_t replica,
                      std::int64_t replicas) {
    std::string path = base;
    if (replicas > 1) path += ".r" + std::to_string(replica);
    std::string content;
    for (std::size_t v = 0; v < graph.num_vertices(); ++v) {
        for (std::uint32_t u : graph.adjacency[v]) {
            if (u > v) {
                content += std::to_string(v);
                content.push_back(' ');
                content += std::to_string(u);
                content.push_back('\n');
            }
        }
    }
    write_text(path, content);
}

struct SimResult {
    PowerLawModel model;
    CutoffScheme scheme;
    ClusteringAccumulator acc;
};

SimResult run_simulation(const SimOptions& opt) {
    const Kernel kernel = Kernel::from_name(opt.kernel);
    PowerLawModel model(opt.tau, opt.h_min, opt.n);
    const CutoffScheme scheme = default_cutoffs(model);
    const HBinSpec spec{opt.h_min, scheme.h_c, opt.bins};

    const std::size_t replicas = static_cast<std::size_t>(opt.replicas);
    std::vector<ClusteringAccumulator> partial(replicas, ClusteringAccumulator(spec));
    std::atomic<std::size_t> next{0};
    std::vector<std::string> failures(replicas);

    auto worker = [&]() {
        for (;;) {
            const std::size_t r = next.fetch_add(1);
            if (r >= replicas) return;
            try {
                Xoshiro256pp rng(replica_seed(opt.seed, r));
                const std::vector<double> hidden =
                    sample_hidden(model, scheme.h_c, static_cast<std::size_t>(opt.n), rng);
                const Graph graph = opt.generator == "naive"
                                        ? generate_naive(kernel, hidden, scheme, rng)
                                        : generate_fast(kernel, hidden, scheme, rng);
                if (!opt.edge_list.empty()) {
                    export_edge_list(graph, opt.edge_list, static_cast<std::int64_t>(r),
                                     opt.replicas);
                }
                partial[r].add(graph);
            } catch (const std::exception& e) {
                failures[r] = e.what();
            }
        }
    };

    const int threads = std::max(1, std::min<int>(opt.threads, static_cast<int>(replicas)));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(threads));
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    for (const auto& message : failures) {
        if (!message.empty()) throw std::runtime_error(message);
    }

    // merge in replica order so results do not depend on the thread count
    ClusteringAccumulator acc(spec);
    for (const auto& p : partial) acc.merge(p);
    return {model, scheme, std::move(acc)};
}

JsonValue scheme_json(const CutoffScheme& scheme) {
    JsonValue obj = JsonValue::object();
    obj.set("h_s", scheme.h_s)
        .set("h_c", scheme.h_c)
        .set("a", scheme.a)
        .set("b", scheme.b);
    return obj;
}

JsonValue bins_json(const ClusteringReport& rep) {
    JsonValue arr = JsonValue::array();
    for (const auto& bin : rep.bins_h) {
        JsonValue b = JsonValue::object();
        b.set("lo", bin.lo).set("hi", bin.hi).set("count", bin.count);
        b.set("mean_c", bin.mean_c ? JsonValue(*bin.mean_c) : JsonValue(nullptr));
        b.set("stderr_c", bin.stderr_c ? JsonValue(*bin.stderr_c) : JsonValue(nullptr));
        b.set("mean_h", bin.mean_h ? JsonValue(*bin.mean_h) : JsonValue(nullptr));
        arr.push(std::move(b));
    }
    return arr;
}

JsonValue degree_bins_json(const ClusteringReport& rep) {
    JsonValue arr = JsonValue::array();
    for (const auto& bin : rep.bins_k) {
        JsonValue b = JsonValue::object();
        b.set("k", bin.degree).set("count", bin.count).set("mean_c", bin.mean_c);
        arr.push(std::move(b));
    }
    return arr;
}

// ---------------------------------------------------------------------------
// subcommands

int cmd_analytic(const SimOptions& opt, const std::optional<double>& h_value,
                 const std::optional<std::string>& grid_text, bool closed_form,
                 const std::string& out, const std::string& csv_out) {
    const Kernel kernel = Kernel::from_name(opt.kernel);
    PowerLawModel model(opt.tau, opt.h_min, opt.n);
    const CutoffScheme scheme = default_cutoffs(model);
    const AnalyticConfig cfg;
    const double n = static_cast<double>(opt.n);

    if (h_value || grid_text) {
        std::vector<double> hs;
        if (grid_text) {
            hs = grid_points(parse_grid(*grid_text));
        } else {
            hs = {*h_value};
        }
        std::string csv = "h,c_analytic\n";
        for (double h : hs) {
            const QuadEstimate c = local_clustering_analytic(kernel, scheme, opt.tau,
                                                             opt.h_min, h, cfg);
            csv += format_double(h) + "," + format_double(c.value) + "\n";
        }
        write_text(csv_out.empty() ? out : csv_out, csv);
        summary_line("analytic curve kernel=" + opt.kernel + " tau=" +
                     format_double(opt.tau, "%.4g") + " points=" + std::to_string(hs.size()));
        return 0;
    }

    const AnalyticResult result = c_average(kernel, scheme, opt.tau, opt.h_min, n, cfg);
    JsonValue obj = JsonValue::object();
    obj.set("kernel", opt.kernel)
        .set("tau", opt.tau)
        .set("h_min", opt.h_min)
        .set("n", opt.n)
        .set("cutoffs", scheme_json(scheme))
        .set("alpha", scheme.a * opt.h_min)
        .set("c_ab_0", result.c_ab_0)
        .set("c_ab_0_error", result.c_ab_0_error)
        .set("a_factor", result.a_factor)
        .set("c_avg", result.c_avg)
        .set("c_max_closed", result.c_max_closed)
        .set("bound_low", result.bound_low)
        .set("bound_high", result.bound_high)
        .set("approx_main", result.approx_main)
        .set("approx_persistence", result.approx_persistence)
        .set("persistence_validity_ratio", result.persistence_validity_ratio);
    if (closed_form) {
        if (kernel.id() == KernelId::MaxRandom) {
            const double bracket = c_maxrandom_closed(scheme, opt.tau, opt.h_min);
            obj.set("closed_form_c_ab_0", bracket);
            obj.set("closed_form_c_avg", bracket * result.a_factor);
        } else if (kernel.id() == KernelId::MaxDense) {
            obj.set("closed_form_c_ab_0", c_max_g_closed(scheme.a * opt.h_min, scheme.b, opt.tau));
            obj.set("closed_form_c_avg", result.c_max_closed);
        } else {
            throw CLI::ValidationError("--closed-form",
                                       "no closed form available for kernel " + opt.kernel);
        }
    }
    write_text(out, obj.dump());
    summary_line("analytic kernel=" + opt.kernel + " tau=" + format_double(opt.tau, "%.4g") +
                 " n=" + std::to_string(opt.n) + " c_avg=" + format_double(result.c_avg, "%.6g"));
    return 0;
}

int cmd_simulate(const SimOptions& opt, const std::string& out) {
    SimResult sim = run_simulation(opt);
    const ClusteringReport rep = sim.acc.pooled();

    JsonValue obj = JsonValue::object();
    obj.set("kernel", opt.kernel)
        .set("tau", opt.tau)
        .set("h_min", opt.h_min)
        .set("n", opt.n)
        .set("replicas", opt.replicas)
        .set("seed", static_cast<std::int64_t>(opt.seed))
        .set("generator", opt.generator)
        .set("cutoffs", scheme_json(sim.scheme))
        .set("c_global_mean", sim.acc.c_global_mean())
        .set("c_global_stderr", sim.acc.c_global_stderr())
        .set("c_deg2_restricted", rep.c_deg2_restricted)
        .set("triangles_total", rep.triangles_total)
        .set("transitivity", rep.transitivity)
        .set("bins_h", bins_json(rep))
        .set("bins_k", degree_bins_json(rep))
        .set("metadata",
             JsonValue::object()
                 .set("binning", "logarithmic over [h_min, h_c]")
                 .set("bins", opt.bins)
                 .set("seed_derivation", "replica r uses master_seed ^ splitmix64(r)"));
    write_text(out, obj.dump());
    summary_line("simulate kernel=" + opt.kernel + " tau=" + format_double(opt.tau, "%.4g") +
                 " n=" + std::to_string(opt.n) + " replicas=" + std::to_string(opt.replicas) +
                 " C=" + format_double(sim.acc.c_global_mean(), "%.6g"));
    return 0;
}

int cmd_compare(const SimOptions& opt, const std::string& out, const std::string& csv_out) {
    const Kernel kernel = Kernel::from_name(opt.kernel);
    SimResult sim = run_simulation(opt);
    const ClusteringReport rep = sim.acc.pooled();
    const AnalyticConfig cfg;
    const double n = static_cast<double>(opt.n);
    const AnalyticResult ana = c_average(kernel, sim.scheme, opt.tau, opt.h_min, n, cfg);

    std::string csv = "h_bin_center,c_empirical,stderr,c_analytic\n";
    for (const auto& bin : rep.bins_h) {
        const double center = std::sqrt(bin.lo * bin.hi);
        const double h_eval = bin.mean_h ? *bin.mean_h : center;
        const QuadEstimate c_ana =
            local_clustering_analytic(kernel, sim.scheme, opt.tau, opt.h_min, h_eval, cfg);
        csv += format_double(center) + ",";
        csv += bin.mean_c ? format_double(*bin.mean_c) : std::string();
        csv += ",";
        csv += bin.stderr_c ? format_double(*bin.stderr_c) : std::string();
        csv += ",";
        csv += format_double(c_ana.value) + "\n";
    }
    if (!csv_out.empty()) write_text(csv_out, csv);

    JsonValue obj = JsonValue::object();
    obj.set("kernel", opt.kernel)
        .set("tau", opt.tau)
        .set("h_min", opt.h_min)
        .set("n", opt.n)
        .set("replicas", opt.replicas)
        .set("seed", static_cast<std::int64_t>(opt.seed))
        .set("C_empirical", sim.acc.c_global_mean())
        .set("stderr", sim.acc.c_global_stderr())
        .set("C_analytic", ana.c_avg)
        .set("C_max", ana.c_max_closed)
        .set("bounds",
             JsonValue::object().set("low", ana.bound_low).set("high", ana.bound_high))
        .set("metadata", JsonValue::object()
                             .set("analytic_eval", "bin mean hidden variable")
                             .set("binning", "logarithmic over [h_min, h_c]")
                             .set("bins", opt.bins));
    write_text(out, obj.dump());
    summary_line("compare kernel=" + opt.kernel + " tau=" + format_double(opt.tau, "%.4g") +
                 " C_empirical=" + format_double(sim.acc.c_global_mean(), "%.6g") +
                 " C_analytic=" + format_double(ana.c_avg, "%.6g"));
    return 0;
}

int cmd_persistence(double tau, double t, const std::string& out) {
    const double n = persistence_threshold_n(tau, t);
    JsonValue obj = JsonValue::object();
    obj.set("tau", tau).set("t", t).set("N", n);
    write_text(out, obj.dump());
    summary_line("persistence tau=" + format_double(tau, "%.4g") + " t=" +
                 format_double(t, "%.4g") + " N=" + format_double(n, "%.3g"));
    return 0;
}

int cmd_natural_cutoff(double tau, double h_min, std::int64_t n, std::int64_t mc_replicates,
                       std::uint64_t seed, const std::string& out) {
    PowerLawModel model(tau, h_min, n);
    const double exact = natural_cutoff_exact(model);
    const NaturalCutoffBounds bounds = natural_cutoff_bounds(model);
    JsonValue obj = JsonValue::object();
    obj.set("tau", tau).set("h_min", h_min).set("n", n);
    obj.set("exact", exact).set("lower", bounds.lower).set("upper", bounds.upper);
    if (mc_replicates > 0) {
        Xoshiro256pp rng(seed);
        double sum = 0.0;
        for (std::int64_t r = 0; r < mc_replicates; ++r) {
            // max of N Pareto draws == transform of the minimum uniform
            double min_u = 1.0;
            for (std::int64_t i = 0; i < n; ++i) min_u = std::min(min_u, rng.uniform_pos());
            sum += h_min * std::pow(min_u, -1.0 / (tau - 1.0));
        }
        obj.set("monte_carlo", sum / static_cast<double>(mc_replicates));
        obj.set("mc_replicates", mc_replicates);
        obj.set("seed", static_cast<std::int64_t>(seed));
    }
    write_text(out, obj.dump());
    summary_line("natural-cutoff tau=" + format_double(tau, "%.4g") + " n=" +
                 std::to_string(n) + " exact=" + format_double(exact, "%.6g"));
    return 0;
}

int cmd_table2(const std::optional<double>& s_value, const std::optional<std::string>& s_grid,
               const std::string& out) {
    std::string csv;
    if (s_value) {
        const auto terms = table2_terms(*s_value);
        csv = format_double(terms[0], "%.4f") + "," + format_double(terms[1], "%.4f") + "," +
              format_double(terms[2], "%.4f") + "," + format_double(terms[3], "%.4f") + "\n";
    } else {
        const GridSpec grid = parse_grid(s_grid.value());
        for (double s : grid_points(grid)) {
            const auto terms = table2_terms(s);
            csv += format_double(s, "%.4f");
            for (double term : terms) csv += "," + format_double(term, "%.4f");
            csv += "\n";
        }
    }
    write_text(out, csv);
    summary_line("table2 rows=" + std::to_string(
        static_cast<long>(std::count(csv.begin(), csv.end(), '\n'))));
    return 0;
}

int cmd_validate_kernel(const std::string& kernel_name, const std::string& grid_text,
                        const std::string& out) {
    const Kernel kernel = Kernel::from_name(kernel_name);
    const GridSpec grid = parse_grid(grid_text);
    const std::vector<double> points = grid_points(grid);
    const FClassReport rep = validate_fclass(kernel, points);

    auto check_json = [](const FClassCheck& chk) {
        JsonValue obj = JsonValue::object();
        obj.set("passed", chk.passed);
        obj.set("violation_u", chk.passed ? JsonValue(nullptr) : JsonValue(chk.violation_u));
        obj.set("detail", chk.detail);
        return obj;
    };
    JsonValue obj = JsonValue::object();
    obj.set("kernel", kernel_name)
        .set("grid", JsonValue::object()
                         .set("lo", grid.lo)
                         .set("hi", grid.hi)
                         .set("points", grid.points))
        .set("all_passed", rep.all_passed())
        .set("f1", check_json(rep.f1))
        .set("f2", check_json(rep.f2))
        .set("f4", check_json(rep.f4));
    write_text(out, obj.dump());
    summary_line("validate-kernel " + kernel_name + (rep.all_passed() ? ": all conditions pass"
                                                                      : ": violations found"));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Clustering in scale-free hidden-variable random graphs: "
                 "simulation, analytic formulas and universal bounds"};
    app.require_subcommand(1);

    // analytic
    auto* analytic_cmd = app.add_subcommand("analytic", "Analytic clustering quantities");
    analytic_cmd->set_help_flag("--help", "Print help"); // frees --h for the curve option
    SimOptions a_opt;
    std::optional<double> h_value;
    std::optional<std::string> grid_text;
    bool closed_form = false;
    std::string a_out = "-", a_csv;
    add_model_options(analytic_cmd, a_opt);
    analytic_cmd->add_option("--h", h_value, "Evaluate the local curve c(h) at one h (CSV)");
    analytic_cmd->add_option("--grid", grid_text, "Evaluate c(h) on a grid lo:hi:points (CSV)");
    analytic_cmd->add_flag("--closed-form", closed_form,
                           "Include the kernel's closed form (max-dense or max-random)");
    analytic_cmd->add_option("--out", a_out, "Output path or - for stdout");
    analytic_cmd->add_option("--csv", a_csv, "CSV path for curve output");

    // simulate
    auto* simulate_cmd = app.add_subcommand("simulate", "Generate replicas and report clustering");
    SimOptions s_opt;
    std::string s_out = "-";
    add_sim_options(simulate_cmd, s_opt, true);
    simulate_cmd->add_option("--out", s_out, "Output path or - for stdout");

    // compare
    auto* compare_cmd = app.add_subcommand("compare", "Pooled simulation against analytic curves");
    SimOptions c_opt;
    std::string c_out = "-", c_csv;
    add_sim_options(compare_cmd, c_opt, false);
    compare_cmd->add_option("--out", c_out, "JSON summary path or - for stdout");
    compare_cmd->add_option("--csv", c_csv, "CSV curve path");

    // persistence
    auto* persistence_cmd =
        app.add_subcommand("persistence", "Network size where clustering starts to decay");
    double p_tau = 2.3, p_t = 2.0;
    std::string p_out = "-";
    persistence_cmd->add_option("--tau", p_tau, "Exponent in (2,3)")->required();
    persistence_cmd->add_option("--t", p_t, "Decay threshold in (0,3)")->required();
    persistence_cmd->add_option("--out", p_out, "Output path or - for stdout");

    // natural-cutoff
    auto* cutoff_cmd = app.add_subcommand("natural-cutoff", "Expected maximum hidden variable");
    double nc_tau = 2.5, nc_hmin = 1.0;
    double nc_n_raw = 10000.0;
    std::int64_t nc_mc = 0;
    std::uint64_t nc_seed = 1;
    std::string nc_out = "-";
    cutoff_cmd->add_option("--tau", nc_tau, "Exponent in (2,3)")->required();
    cutoff_cmd->add_option("--hmin", nc_hmin, "Lower support bound");
    cutoff_cmd->add_option("--n", nc_n_raw, "Sample size (scientific notation accepted)")
        ->required();
    cutoff_cmd->add_option("--mc-replicates", nc_mc, "Optional Monte Carlo replicates");
    cutoff_cmd->add_option("--seed", nc_seed, "Monte Carlo seed");
    cutoff_cmd->add_option("--out", nc_out, "Output path or - for stdout");

    // table2
    auto* table2_cmd = app.add_subcommand("table2", "Dominant closed-form terms vs s = tau-2");
    std::optional<double> t2_s;
    std::optional<std::string> t2_grid;
    std::string t2_out = "-";
    table2_cmd->add_option("--s", t2_s, "Single s in (0, 0.5]");
    table2_cmd->add_option("--s-grid", t2_grid, "Grid lo:hi:points");
    table2_cmd->add_option("--out", t2_out, "Output path or - for stdout");

    // validate-kernel
    auto* validate_cmd = app.add_subcommand("validate-kernel", "Numerical F-class checks");
    std::string v_kernel = "max-dense";
    std::string v_grid = "1e-6:1e6:241";
    std::string v_out = "-";
    validate_cmd->add_option("--kernel", v_kernel, "Kernel name")
        ->check(CLI::IsMember(Kernel::builtin_names()));
    validate_cmd->add_option("--grid", v_grid, "Check grid lo:hi:points");
    validate_cmd->add_option("--out", v_out, "Output path or - for stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (analytic_cmd->parsed()) {
            a_opt.n = whole_vertex_count(a_opt.n_raw);
            return cmd_analytic(a_opt, h_value, grid_text, closed_form, a_out, a_csv);
        }
        if (simulate_cmd->parsed()) {
            s_opt.n = whole_vertex_count(s_opt.n_raw);
            return cmd_simulate(s_opt, s_out);
        }
        if (compare_cmd->parsed()) {
            c_opt.n = whole_vertex_count(c_opt.n_raw);
            return cmd_compare(c_opt, c_out, c_csv);
        }
        if (persistence_cmd->parsed()) return cmd_persistence(p_tau, p_t, p_out);
        if (cutoff_cmd->parsed()) {
            return cmd_natural_cutoff(nc_tau, nc_hmin, whole_vertex_count(nc_n_raw), nc_mc,
                                      nc_seed, nc_out);
        }
        if (table2_cmd->parsed()) {
            if (!t2_s && !t2_grid) {
                throw CLI::ValidationError("table2", "provide --s or --s-grid");
            }
            return cmd_table2(t2_s, t2_grid, t2_out);
        }
        if (validate_cmd->parsed()) return cmd_validate_kernel(v_kernel, v_grid, v_out);
    } catch (const CLI::ValidationError& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        JsonValue err = JsonValue::object();
        err.set("error", JsonValue::object()
                             .set("exit_code", kExitNumerical)
                             .set("message", std::string(e.what())));
        std::cout << err.dump();
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
    return 0;
}
