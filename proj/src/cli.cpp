#include "gwfb/cli.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "gwfb/errors.hpp"
#include "gwfb/filterbank.hpp"
#include "gwfb/mra.hpp"
#include "gwfb/rng.hpp"
#include "gwfb/sampling.hpp"

namespace gwfb::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

class StageTimer {
  public:
    void start(const std::string& name) {
        name_ = name;
        t0_ = std::chrono::steady_clock::now();
    }
    void stop() {
        auto dt = std::chrono::steady_clock::now() - t0_;
        timings_[name_] =
            std::chrono::duration_cast<std::chrono::duration<double, std::milli>>(dt).count();
    }
    json to_json() const { return timings_; }

  private:
    std::string name_;
    std::chrono::steady_clock::time_point t0_;
    std::map<std::string, double> timings_;
};

Eigen::VectorXd load_signal(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open signal file: " + path);
    std::vector<double> vals;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        try {
            vals.push_back(std::stod(line));
        } catch (const std::exception&) {
            throw ParseError(path + ":" + std::to_string(lineno) + ": malformed value");
        }
    }
    return Eigen::Map<Eigen::VectorXd>(vals.data(), static_cast<long>(vals.size()));
}

void write_signal_csv(const std::string& path, const Eigen::VectorXd& v) {
    std::ofstream out(path);
    out.precision(17);
    out << "index,value\n";
    for (long i = 0; i < v.size(); ++i) out << i << "," << v(i) << "\n";
}

void write_edge_list(const std::string& path, const Graph& g) {
    std::ofstream out(path);
    out.precision(17);
    for (int i = 0; i < g.n; ++i)
        for (int j = i + 1; j < g.n; ++j)
            if (g.weights(i, j) > 0.0) out << i << "\t" << j << "\t" << g.weights(i, j) << "\n";
}

json config_to_json(const DesignConfig& cfg) {
    json j;
    j["r"] = cfg.r;
    j["s"] = cfg.s;
    j["J"] = cfg.J;
    j["alpha"] = cfg.alpha;
    if (!std::isnan(cfg.xi0)) j["xi0"] = cfg.xi0;
    j["epsilon"] = cfg.epsilon;
    j["model"] = to_string(cfg.model);
    return j;
}

void write_report(const std::string& out_dir, const json& report) {
    fs::create_directories(out_dir);
    std::ofstream out(fs::path(out_dir) / "report.json");
    out << report.dump(2) << "\n";
}

Graph load_input_graph(const Options& opts) {
    if (opts.graph_path.empty()) throw ParseError("no graph file given (--graph)");
    Graph g = load_graph(opts.graph_path);
    if (!opts.coords_path.empty()) g.coords = load_coords(opts.coords_path, g.n);
    return g;
}

// Default synthetic signal: linear in the x-coordinate when coordinates are
// available, otherwise a fixed combination of the 3 lowest-frequency basis
// vectors.
Eigen::VectorXd synthesize_signal(const Graph& g, const SpectralDecomposition& sd) {
    if (g.has_coords()) {
        Eigen::VectorXd x(g.n);
        for (int i = 0; i < g.n; ++i) x(i) = g.coords[i][0];
        return x;
    }
    Eigen::VectorXd xhat = Eigen::VectorXd::Zero(g.n);
    xhat(0) = 1.0;
    if (g.n > 1) xhat(1) = 0.5;
    if (g.n > 2) xhat(2) = 0.25;
    return igft(sd, xhat);
}

Eigen::VectorXd unique_representatives(const Eigen::VectorXd& full,
                                       const DedupedSpectrum& ds) {
    Eigen::VectorXd out(ds.m());
    std::vector<char> seen(ds.m(), 0);
    for (int i = 0; i < ds.n(); ++i) {
        int gidx = ds.group_of[i];
        if (!seen[gidx]) {
            out(gidx) = full(i);
            seen[gidx] = 1;
        }
    }
    return out;
}

}  // namespace

DesignConfig load_design_config(const std::string& path) {
    DesignConfig cfg;
    if (path.empty()) return cfg;
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open config file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ParseError("config " + path + ": " + e.what());
    }
    if (j.contains("r")) cfg.r = j["r"].get<int>();
    if (j.contains("s")) cfg.s = j["s"].get<int>();
    if (j.contains("J")) cfg.J = j["J"].get<int>();
    if (j.contains("alpha")) cfg.alpha = j["alpha"].get<double>();
    if (j.contains("xi0")) cfg.xi0 = j["xi0"].get<double>();
    if (j.contains("epsilon")) cfg.epsilon = j["epsilon"].get<double>();
    if (j.contains("model")) cfg.model = parse_design_model(j["model"].get<std::string>());
    cfg.check();
    return cfg;
}

nlohmann::json read_report(const std::string& out_dir) {
    std::ifstream in(fs::path(out_dir) / "report.json");
    if (!in) throw ParseError("no report.json under " + out_dir);
    json j;
    in >> j;
    return j;
}

int run_design(const Options& opts) {
    DesignConfig cfg = load_design_config(opts.config_path);
    StageTimer timer;
    json report;
    report["command"] = "design";
    report["config"] = config_to_json(cfg);
    report["seed"] = opts.seed;

    timer.start("load");
    Graph g = load_input_graph(opts);
    timer.stop();

    timer.start("spectral");
    NormalizedGraph ng = normalize(g);
    SpectralDecomposition sd = eigendecompose(ng);
    DedupedSpectrum ds = dedup_eigenvalues(sd);
    timer.stop();

    try {
        timer.start("design");
        VandermondeSystem vs = vandermonde(ds, cfg.J, cfg.r, cfg.s);
        FilterDesign fd = design_filters(vs, cfg);
        timer.stop();

        double xi0 = std::isnan(cfg.xi0)
                         ? ((ds.m() % 2 == 1) ? ds.xi_unique((ds.m() - 1) / 2)
                                              : 0.5 * (ds.xi_unique(ds.m() / 2 - 1) +
                                                       ds.xi_unique(ds.m() / 2)))
                         : cfg.xi0;
        Eigen::VectorXd h_ideal = ideal_lowpass(ds.xi_unique, xi0);
        Eigen::VectorXd h_low_u = unique_representatives(fd.h_low, ds);
        Eigen::VectorXd h_high_u = unique_representatives(fd.h_high, ds);

        fs::create_directories(opts.out_dir);
        {
            std::ofstream csv(fs::path(opts.out_dir) / "response.csv");
            csv.precision(17);
            csv << "lambda,xi,h_ideal,h_low,h_high\n";
            for (int i = 0; i < ds.m(); ++i)
                csv << 1.0 - ds.xi_unique(i) << "," << ds.xi_unique(i) << "," << h_ideal(i)
                    << "," << h_low_u(i) << "," << h_high_u(i) << "\n";
        }

        Theorem2Report t2 = validate_theorem2(fd.gamma, cfg.r, cfg.s);
        report["status"] = "ok";
        report["metrics"]["objective"] = fd.objective;
        if (cfg.model != DesignModel::liter_opt) {
            VandermondeSystem vsr = vs;
            report["metrics"]["residual_cr"] =
                (vsr.c_r() * fd.w - Eigen::VectorXd::Ones(cfg.r)).lpNorm<Eigen::Infinity>();
            report["metrics"]["residual_cs"] =
                (vsr.c_s() * fd.w + Eigen::VectorXd::Ones(cfg.s)).lpNorm<Eigen::Infinity>();
        }
        report["metrics"]["theorem2_pass"] = t2.pass;
        report["gamma_violations"] = t2.violations;
        report["w"] = std::vector<double>(fd.w.data(), fd.w.data() + fd.w.size());
        report["model"] = to_string(fd.model);
        report["timings_ms"] = timer.to_json();
        write_report(opts.out_dir, report);
        return 0;
    } catch (const InfeasibleError& e) {
        report["status"] = "infeasible";
        report["error"] = e.what();
        report["timings_ms"] = timer.to_json();
        write_report(opts.out_dir, report);
        return 2;
    }
}

int run_verify(const Options& opts) {
    if (opts.trials < 1) throw ValidationError("verify: --trials must be >= 1");
    DesignConfig cfg = load_design_config(opts.config_path);
    StageTimer timer;
    json report;
    report["command"] = "verify";
    report["config"] = config_to_json(cfg);
    report["seed"] = opts.seed;

    timer.start("load");
    Graph g = load_input_graph(opts);
    timer.stop();

    timer.start("spectral");
    NormalizedGraph ng = normalize(g);
    SpectralDecomposition sd = eigendecompose(ng);
    timer.stop();

    if (opts.legacy_identity) {
        // Degree-1 legacy filters with K = I: singular on bipartite graphs.
        SigmaMinResult smr =
            sigma_min_diagnostic(Eigen::VectorXd::Ones(g.n), ng.a_sym);
        report["metrics"]["sigma_min"] = smr.sigma_min;
        report["status"] = smr.singular ? "singular" : "ok";
        report["timings_ms"] = timer.to_json();
        write_report(opts.out_dir, report);
        return smr.singular ? 2 : 0;
    }

    timer.start("design");
    DedupedSpectrum ds = dedup_eigenvalues(sd);
    VandermondeSystem vs = vandermonde(ds, cfg.J, cfg.r, cfg.s);
    FilterDesign fd = design_filters(vs, cfg);
    FilterPair fp = build_filters(ng, sd, fd);
    timer.stop();

    timer.start("assemble");
    SamplingPattern sp = partition_search(sd, cfg.r, cfg.s, PartitionStrategy::polarity,
                                          opts.seed);
    Filterbank fb = assemble(fp, sp, opts.zero_dc, ng.deg);
    timer.stop();

    timer.start("trials");
    auto rng = seeded_stream(opts.seed, "signals");
    std::normal_distribution<double> gauss(0.0, 1.0);
    double max_pr = 0.0;
    for (int t = 0; t < opts.trials; ++t) {
        Eigen::VectorXd x(g.n);
        for (int i = 0; i < g.n; ++i) x(i) = gauss(rng);
        Eigen::VectorXd y = reconstruct(fb, analyze(fb, x));
        max_pr = std::max(max_pr,
                          (y - x).lpNorm<Eigen::Infinity>() / x.lpNorm<Eigen::Infinity>());
    }
    double max_annih = 0.0;
    for (int i = 0; i < cfg.r; ++i)
        max_annih = std::max(max_annih, (fp.h_high_mat * sd.u.col(i)).norm());
    for (int i = g.n - cfg.s; i < g.n; ++i)
        max_annih = std::max(max_annih, (fp.h_low_mat * sd.u.col(i)).norm());
    timer.stop();

    report["metrics"]["pr_residual"] = max_pr;
    report["metrics"]["annihilation_residual"] = max_annih;
    report["metrics"]["sigma_min"] = fb.sigma_min;
    report["metrics"]["bound_const"] = 2.0 / fb.sigma_min;
    report["metrics"]["condition"] = fb.condition;
    bool ok = max_pr <= 1e-8 && max_annih <= 1e-6;
    report["status"] = ok ? "ok" : "tolerance_exceeded";
    report["timings_ms"] = timer.to_json();
    write_report(opts.out_dir, report);
    return ok ? 0 : 2;
}

int run_decompose(const Options& opts) {
    if (opts.depth < 1) throw ValidationError("decompose: --depth must be >= 1");
    DesignConfig cfg = load_design_config(opts.config_path);
    StageTimer timer;
    json report;
    report["command"] = "decompose";
    report["config"] = config_to_json(cfg);
    report["seed"] = opts.seed;

    timer.start("load");
    Graph g = load_input_graph(opts);
    Eigen::VectorXd x;
    if (!opts.signal_path.empty()) {
        x = load_signal(opts.signal_path);
        if (x.size() != g.n)
            throw ValidationError("signal length does not match graph size");
    } else {
        x = synthesize_signal(g, eigendecompose(normalize(g)));
    }
    timer.stop();

    timer.start("decompose");
    Pyramid p = decompose(g, x, opts.depth, cfg);
    timer.stop();

    fs::create_directories(opts.out_dir);
    Eigen::VectorXd x_restr = x;
    for (int level = 0; level < p.depth(); ++level) {
        const PyramidLevel& pl = p.levels[level];
        std::string tag = "level" + std::to_string(level + 1);
        write_signal_csv((fs::path(opts.out_dir) / (tag + "_lp.csv")).string(),
                         pl.channels.y_low);
        write_signal_csv((fs::path(opts.out_dir) / (tag + "_hp.csv")).string(),
                         pl.channels.y_high);
        if (level > 0)
            write_edge_list((fs::path(opts.out_dir) / (tag + "_graph.edges")).string(),
                            pl.graph);
        // Ideal level output: the input restricted through the retained sets.
        Eigen::VectorXd next(static_cast<long>(pl.bank.pattern.set_a.size()));
        for (size_t i = 0; i < pl.bank.pattern.set_a.size(); ++i)
            next(static_cast<long>(i)) = x_restr(pl.bank.pattern.set_a[i]);
        x_restr = next;
        report["metrics"]["e" + std::to_string(level + 1)] =
            relative_error(pl.channels.y_low, x_restr);
        report["metrics"][tag + "_sigma_min"] = pl.bank.sigma_min;
        report["metrics"][tag + "_size"] = pl.channels.y_low.size();
    }
    report["metrics"]["pr_residual"] =
        relative_error(reconstruct_pyramid(p, ReconMode::full), x);
    report["metrics"]["e_lp_only"] =
        relative_error(reconstruct_pyramid(p, ReconMode::lp_only), x);
    report["metrics"]["depth"] = p.depth();
    report["status"] = "ok";
    report["timings_ms"] = timer.to_json();
    write_report(opts.out_dir, report);
    return 0;
}

int run_denoise(const Options& opts) {
    if (opts.sigma < 0.0) throw ValidationError("denoise: --sigma must be >= 0");
    DesignConfig cfg = load_design_config(opts.config_path);
    StageTimer timer;
    json report;
    report["command"] = "denoise";
    report["config"] = config_to_json(cfg);
    report["seed"] = opts.seed;

    timer.start("load");
    Graph g = load_input_graph(opts);
    if (opts.signal_path.empty()) throw ParseError("denoise: --signal is required");
    Eigen::VectorXd x_noisy = load_signal(opts.signal_path);
    if (x_noisy.size() != g.n) throw ValidationError("signal length does not match graph size");
    timer.stop();

    timer.start("denoise");
    Eigen::VectorXd y = denoise(g, x_noisy, opts.sigma, opts.depth, cfg);
    timer.stop();

    fs::create_directories(opts.out_dir);
    write_signal_csv((fs::path(opts.out_dir) / "denoised.csv").string(), y);
    report["metrics"]["residual_vs_input"] = relative_error(y, x_noisy);
    if (!opts.reference_path.empty()) {
        Eigen::VectorXd ref = load_signal(opts.reference_path);
        report["metrics"]["error_denoised"] = relative_error(y, ref);
        report["metrics"]["error_noisy"] = relative_error(x_noisy, ref);
    }
    report["status"] = "ok";
    report["timings_ms"] = timer.to_json();
    write_report(opts.out_dir, report);
    return 0;
}

int run_bench(const Options& opts) {
    if (opts.ensemble < 1) throw ValidationError("bench: ensemble size must be >= 1");
    DesignConfig cfg = load_design_config(opts.config_path);
    StageTimer timer;
    json report;
    report["command"] = "bench";
    report["config"] = config_to_json(cfg);
    report["seed"] = opts.seed;

    std::vector<PartitionStrategy> strategies;
    for (const auto& s : opts.strategies) strategies.push_back(parse_strategy(s));

    struct Family {
        std::string name;
        GraphKind kind;
        GraphParams params;
    };
    std::vector<Family> families = {
        {"random_bipartite", GraphKind::random_bipartite,
         [] { GraphParams p; p.part_a = 20; p.part_b = 80; p.edge_prob = 0.2; return p; }()},
        {"random_sensor", GraphKind::random_sensor,
         [] { GraphParams p; p.n = 100; p.radius = 0.25; return p; }()},
    };

    fs::create_directories(opts.out_dir);
    std::ofstream csv(fs::path(opts.out_dir) / "bench.csv");
    csv.precision(17);
    csv << "family,graph,strategy,sigma_min\n";

    timer.start("ensemble");
    for (const Family& fam : families) {
        std::map<std::string, double> sums;
        for (int i = 0; i < opts.ensemble; ++i) {
            std::uint64_t gseed = opts.seed + 131ull * i;
            Graph g = generate_graph(fam.kind, fam.params, gseed);
            NormalizedGraph ng = normalize(g);
            SpectralDecomposition sd = eigendecompose(ng);
            DedupedSpectrum ds = dedup_eigenvalues(sd);
            VandermondeSystem vs = vandermonde(ds, cfg.J, cfg.r, cfg.s);
            FilterDesign fd = design_filters(vs, cfg);
            FilterPair fp = build_filters(ng, sd, fd);
            for (PartitionStrategy st : strategies) {
                SamplingPattern sp = partition_search(sd, cfg.r, cfg.s, st, gseed);
                double smin = sigma_min_diagnostic(sp.k_diag, fp.g).sigma_min;
                csv << fam.name << "," << i << "," << to_string(st) << "," << smin << "\n";
                sums[to_string(st)] += smin;
            }
        }
        for (const auto& [st, sum] : sums)
            report["metrics"][fam.name + "_mean_sigma_min_" + st] = sum / opts.ensemble;
    }
    timer.stop();

    report["status"] = "ok";
    report["timings_ms"] = timer.to_json();
    write_report(opts.out_dir, report);
    return 0;
}

}  // namespace gwfb::cli
