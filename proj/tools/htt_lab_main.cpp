// htt-lab: command-line front end for the Hopf-Turing-Turing toolkit.
//
// One subcommand per task; a JSON config file supplies the parameters and
// command-line flags override single values. All results are written as
// CSV/JSON files under --out together with a reproducibility manifest.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <set>

#include "httlab/diagnostics.hpp"
#include "httlab/errors.hpp"
#include "httlab/galerkin.hpp"
#include "httlab/io.hpp"
#include "httlab/manifold.hpp"
#include "httlab/nf_dynamics.hpp"
#include "httlab/pde.hpp"
#include "httlab/stability.hpp"

namespace fs = std::filesystem;
using namespace httlab;

namespace {

struct RunContext {
    Json config;
    fs::path out_dir;
    std::uint64_t seed = 42;
    int threads = 1;

    void emit_manifest(const std::string& task) const {
        Json manifest{{"task", task},
                      {"config", config},
                      {"seed", seed},
                      {"threads", threads},
                      {"config_hash", content_hash(config.dump())}};
        write_json((out_dir / "manifest.json").string(), manifest);
    }
    fs::path file(const std::string& name) const { return out_dir / name; }
};

void require_keys(const Json& j, const std::set<std::string>& allowed,
                  const std::string& where) {
    for (auto& [key, val] : j.items()) {
        (void)val;
        if (!allowed.count(key))
            throw ConfigError("config: unknown key '" + key + "' in " + where);
    }
}

Model load_model(const Json& config) {
    if (!config.contains("model")) throw ConfigError("config: missing 'model' descriptor");
    return model_from_json(config.at("model"));
}

CanonicalCoeffs load_canonical(const Json& config) {
    if (config.contains("coefficients")) return canonical_from_json(config.at("coefficients"));
    // otherwise run the full pipeline for the configured model
    Model m = load_model(config);
    auto d = derivatives_at(m.pair, m.equilibrium);
    auto set = compute_coefficients(d, htt_point(d, config.value("L", 1.0)));
    if (!set.canonical_ok)
        throw NumericalError("cannot canonicalize this model's normal form: " +
                             set.canonical_error);
    return set.canonical;
}

int cmd_stability_scan(const RunContext& ctx) {
    require_keys(ctx.config, {"model", "L", "n_max", "D_u_min", "D_u_max", "D_u_count"},
                 "stability-scan");
    Model m = load_model(ctx.config);
    const double L = ctx.config.value("L", 1.0);
    const int n_max = ctx.config.value("n_max", 4);
    const double lo = ctx.config.value("D_u_min", 1e-3);
    const double hi = ctx.config.value("D_u_max", 0.1);
    const int count = ctx.config.value("D_u_count", 200);
    auto d = derivatives_at(m.pair, m.equilibrium);

    std::vector<std::array<double, 3>> rows;
    for (int n = 1; n <= n_max; ++n)
        for (int i = 0; i < count; ++i) {
            const double Du = lo + (hi - lo) * i / std::max(1, count - 1);
            try {
                const double Dv = neutral_curve(d, n, Du, L);
                if (Dv > 0) rows.push_back({static_cast<double>(n), Du, Dv});
            } catch (const NumericalError&) {
                // singular D_u on this mode's curve; skip the sample
            }
        }
    write_text(ctx.file("neutral_curves.csv").string(), csv_neutral_curves(rows));

    Json j{{"alpha_star", hopf_alpha(d)}};
    if (n_max >= 2) {
        try {
            auto dp = degenerate_point_12(d, M_PI / L);
            j["degenerate_point_12"] = {{"D_u", dp.D_u}, {"D_v", dp.D_v},
                                        {"plus_branch", dp.plus_branch}};
        } catch (const NumericalError& e) {
            j["degenerate_point_12_error"] = e.what();
        }
    }
    write_json(ctx.file("stability.json").string(), j);
    ctx.emit_manifest("stability-scan");
    return 0;
}

int cmd_htt_point(const RunContext& ctx) {
    require_keys(ctx.config, {"model", "L", "n_check"}, "htt-point");
    Model m = load_model(ctx.config);
    auto d = derivatives_at(m.pair, m.equilibrium);
    auto pt = htt_point(d, ctx.config.value("L", 1.0), ctx.config.value("n_check", 64));
    write_json(ctx.file("htt_point.json").string(), to_json(pt));
    ctx.emit_manifest("htt-point");
    return 0;
}

int cmd_coefficients(const RunContext& ctx) {
    require_keys(ctx.config, {"model", "L"}, "coefficients");
    Model m = load_model(ctx.config);
    auto d = derivatives_at(m.pair, m.equilibrium);
    auto set = compute_coefficients(d, htt_point(d, ctx.config.value("L", 1.0)));
    write_json(ctx.file("coefficients.json").string(), to_json(set));
    ctx.emit_manifest("coefficients");
    return 0;
}

int cmd_nf_run(const RunContext& ctx) {
    require_keys(ctx.config,
                 {"model", "L", "coefficients", "mu", "state0", "t_end", "transient",
                  "n_samples", "resonance_terms", "rtol", "atol", "lyapunov"},
                 "nf-run");
    ReducedParams p;
    p.coeffs = load_canonical(ctx.config);
    const auto mu = ctx.config.at("mu");
    if (!mu.is_array() || mu.size() != 3)
        throw ConfigError("config: 'mu' must be [mu0, mu1, mu2]");
    p.mu0 = mu[0];
    p.mu1 = mu[1];
    p.mu2 = mu[2];
    p.resonance_terms = ctx.config.value("resonance_terms", true);

    ReducedState s0{0.01, 0.05, 0.1};
    if (ctx.config.contains("state0")) {
        const auto s = ctx.config.at("state0");
        if (!s.is_array() || s.size() != 3)
            throw ConfigError("config: 'state0' must be [r0, z1, z2]");
        s0 = {s[0], s[1], s[2]};
    }
    const double t_end = ctx.config.value("t_end", 2000.0);
    const double transient = ctx.config.value("transient", 0.0);
    const std::size_t n_samples = ctx.config.value("n_samples", 4000);
    const double rtol = ctx.config.value("rtol", 1e-9);
    const double atol = ctx.config.value("atol", 1e-12);

    ReducedState start = s0;
    if (transient > 0)
        start = integrate_reduced(p, s0, 0.0, transient, 2, rtol, atol).back().state;
    auto traj = integrate_reduced(p, start, 0.0, t_end, n_samples, rtol, atol);
    write_text(ctx.file("trajectory.csv").string(), csv_reduced_trajectory(traj));

    std::vector<double> t, r0s, z2s;
    for (auto& s : traj) {
        t.push_back(s.t);
        r0s.push_back(s.state.r0);
        z2s.push_back(s.state.z2);
    }
    Json diag;
    diag["period_r0"] = Json{{"periodic", false}};
    auto est_r = estimate_period(t, r0s);
    auto est_z = estimate_period(t, z2s);
    auto period_json = [](const PeriodEstimate& e) {
        return Json{{"periodic", e.periodic}, {"period", e.period}, {"spread", e.spread},
                    {"intervals", e.n_intervals}, {"reason", e.reason}};
    };
    diag["period_r0"] = period_json(est_r);
    diag["period_z2"] = period_json(est_z);
    auto peaks = spectral_peaks(r0s, t.size() > 1 ? t[1] - t[0] : 1.0);
    Json jp = Json::array();
    for (auto& pk : peaks) jp.push_back({{"freq", pk.freq}, {"rel_power", pk.power}});
    diag["r0_spectral_peaks"] = jp;
    auto inc = incommensurate_pair(peaks);
    diag["incommensurate_pair"] = {{"found", inc.found}, {"f1", inc.f1}, {"f2", inc.f2},
                                   {"ratio", inc.ratio}};
    if (ctx.config.value("lyapunov", false)) {
        auto lya = lyapunov_max(p, start, 50000.0, 1.0);
        diag["lambda_max"] = lya.lambda_max;
    }
    Json eq = Json::array();
    for (const auto& info : nf_equilibria(p)) eq.push_back(to_json(info));
    diag["equilibria"] = eq;
    write_json(ctx.file("diagnostics.json").string(), diag);
    ctx.emit_manifest("nf-run");
    return 0;
}

int cmd_nf_analyze(const RunContext& ctx) {
    require_keys(ctx.config,
                 {"model", "L", "coefficients", "rho", "mu", "mu0_window", "state0",
                  "lyapunov_t"},
                 "nf-analyze");
    CanonicalCoeffs coeffs = load_canonical(ctx.config);
    Json out;
    out["coefficients"] = to_json(coeffs);

    if (ctx.config.contains("rho")) {
        auto h = mm12_hopf_hopf(ctx.config.at("rho").get<double>(), coeffs);
        hopf_hopf_coeffs(h, coeffs);
        out["hopf_hopf"] = to_json(h);
        // the associated planar-amplitude equilibria right at the point
        Json pl = Json::array();
        for (auto& e : planar_equilibria(0.0, 0.0, h.b, h.c, h.d)) {
            Json ev = Json::array();
            for (auto& z : e.eigenvalues) ev.push_back({{"re", z.real()}, {"im", z.imag()}});
            pl.push_back({{"name", e.name}, {"rho0", e.rho0}, {"rho12", e.rho12},
                          {"exists", e.exists}, {"eigenvalues", ev},
                          {"lifts_to", e.correspondence_4d},
                          {"rd_solution", e.correspondence_rd}});
        }
        out["planar_equilibria_at_point"] = pl;
    }
    if (ctx.config.contains("mu")) {
        const auto mu = ctx.config.at("mu");
        ReducedParams p{mu[0], mu[1], mu[2], coeffs, true};
        Json eq = Json::array();
        for (const auto& info : nf_equilibria(p)) eq.push_back(to_json(info));
        out["equilibria"] = eq;
        out["hopf_pitchfork"] = to_json(hopf_pitchfork_conditions(mu[0], mu[1], mu[2], coeffs));
    }
    if (ctx.config.contains("mu0_window")) {
        const auto& w = ctx.config.at("mu0_window");
        require_keys(w, {"values", "mu1", "mu2"}, "nf-analyze.mu0_window");
        for (const char* key : {"values", "mu1", "mu2"})
            if (!w.contains(key))
                throw ConfigError(std::string("config: mu0_window needs '") + key + "'");
        ReducedState s0{0.01, 0.05, 0.1};
        if (ctx.config.contains("state0")) {
            const auto s = ctx.config.at("state0");
            s0 = {s[0], s[1], s[2]};
        }
        const double t_total = ctx.config.value("lyapunov_t", 50000.0);
        const double mu1 = w.at("mu1"), mu2 = w.at("mu2");
        std::vector<double> values = w.at("values").get<std::vector<double>>();
        std::vector<std::future<double>> futs;
        std::atomic<int> cursor{0};
        const int workers = std::max(1, std::min<int>(ctx.threads, values.size()));
        std::vector<double> lams(values.size());
        auto work = [&]() {
            for (;;) {
                const int i = cursor.fetch_add(1);
                if (i >= static_cast<int>(values.size())) return;
                ReducedParams p{values[i], mu1, mu2, coeffs, true};
                auto st = integrate_reduced(p, s0, 0.0, 20000.0, 2).back().state;
                lams[i] = lyapunov_max(p, st, t_total, 1.0).lambda_max;
            }
        };
        std::vector<std::thread> pool;
        for (int i = 0; i < workers; ++i) pool.emplace_back(work);
        for (auto& th : pool) th.join();
        Json sweep = Json::array();
        for (std::size_t i = 0; i < values.size(); ++i)
            sweep.push_back({{"mu0", values[i]}, {"lambda_max", lams[i]}});
        out["lyapunov_sweep"] = sweep;
    }
    write_json(ctx.file("analysis.json").string(), out);
    ctx.emit_manifest("nf-analyze");
    return 0;
}

int cmd_pde_run(const RunContext& ctx) {
    require_keys(ctx.config,
                 {"model", "params", "grid", "t_end", "transient", "n_samples",
                  "ic_amplitude", "method", "rtol", "atol", "dt_max", "probe"},
                 "pde-run");
    Model m = load_model(ctx.config);
    const auto& pj = ctx.config.at("params");
    require_keys(pj, {"D_u", "D_v", "alpha", "L"}, "pde-run.params");
    SystemParams params{pj.at("D_u"), pj.at("D_v"), pj.value("alpha", 1.0),
                        pj.value("L", 1.0)};
    const auto& gj = ctx.config.at("grid");
    require_keys(gj, {"n_points", "bc"}, "pde-run.grid");
    const int n_points = gj.value("n_points", 256);
    const std::string bc = gj.value("bc", "neumann");
    Grid grid = bc == "periodic" ? Grid::periodic(n_points, params.L)
                                 : Grid::neumann(n_points, params.L);
    PdeOptions opt;
    if (ctx.config.value("method", std::string("imex")) == "explicit")
        opt.method = PdeMethod::Explicit;
    opt.rtol = ctx.config.value("rtol", 1e-6);
    opt.atol = ctx.config.value("atol", 1e-9);
    opt.dt_max = ctx.config.value("dt_max", 0.05);

    PdeSimulator sim(m, params, grid, opt);
    FieldState st = default_initial_state(grid, m.equilibrium,
                                          ctx.config.value("ic_amplitude", 1e-3), ctx.seed);
    const double transient = ctx.config.value("transient", 0.0);
    if (transient > 0) sim.advance(st, transient);
    const double t_end = ctx.config.value("t_end", transient + 100.0);
    const std::size_t n_samples = ctx.config.value("n_samples", 1000);

    std::vector<FieldState> snaps;
    std::vector<double> ts, norms, probe;
    const int probe_index = ctx.config.value("probe", 0);
    const std::size_t snap_every = std::max<std::size_t>(1, n_samples / 200);
    for (std::size_t i = 0; i <= n_samples; ++i) {
        if (i > 0) sim.advance(st, transient + (t_end - transient) * i / n_samples);
        ts.push_back(st.t);
        norms.push_back(state_norm(st.u, grid));
        probe.push_back(st.u[probe_index]);
        if (i % snap_every == 0) snaps.push_back(st);
    }
    write_text(ctx.file("u.csv").string(), csv_field_matrix(snaps, grid, false));
    write_text(ctx.file("v.csv").string(), csv_field_matrix(snaps, grid, true));
    write_text(ctx.file("norm.csv").string(), csv_norm_series(ts, norms));

    auto est = estimate_period(ts, probe);
    Json diag{{"period", {{"periodic", est.periodic}, {"period", est.period},
                          {"spread", est.spread}, {"reason", est.reason}}},
              {"final_norm", norms.back()},
              {"effective", {{"n_points", grid.n_points},
                             {"dx", grid.dx},
                             {"bc", bc},
                             {"method", opt.method == PdeMethod::Imex ? "imex" : "explicit"},
                             {"rtol", opt.rtol},
                             {"atol", opt.atol},
                             {"dt_max", opt.dt_max}}}};
    write_json(ctx.file("diagnostics.json").string(), diag);
    ctx.emit_manifest("pde-run");
    return 0;
}

int cmd_fig19(const RunContext& ctx) {
    require_keys(ctx.config,
                 {"D_u", "D_v", "A", "B", "alpha", "L", "n_points", "t_end", "t_transient",
                  "sample_dt", "ic_amplitude"},
                 "fig19");
    Fig19Config cfg;
    cfg.D_u = ctx.config.value("D_u", cfg.D_u);
    cfg.D_v = ctx.config.value("D_v", cfg.D_v);
    cfg.A = ctx.config.value("A", cfg.A);
    cfg.B = ctx.config.value("B", cfg.B);
    cfg.alpha = ctx.config.value("alpha", cfg.alpha);
    cfg.L = ctx.config.value("L", cfg.L);
    cfg.n_points = ctx.config.value("n_points", cfg.n_points);
    cfg.t_end = ctx.config.value("t_end", cfg.t_end);
    cfg.t_transient = ctx.config.value("t_transient", cfg.t_transient);
    cfg.sample_dt = ctx.config.value("sample_dt", cfg.sample_dt);
    cfg.ic_amplitude = ctx.config.value("ic_amplitude", cfg.ic_amplitude);
    cfg.seed = ctx.seed;
    auto res = run_fig19(cfg);
    Grid grid = Grid::periodic(cfg.n_points, cfg.L);
    write_text(ctx.file("u.csv").string(), csv_field_matrix(res.snapshots, grid, false));
    write_text(ctx.file("v.csv").string(), csv_field_matrix(res.snapshots, grid, true));
    write_text(ctx.file("norm.csv").string(), csv_norm_series(res.t, res.norm));
    double lam = std::nan("");
    try {
        lam = series_lyapunov(res.norm, cfg.sample_dt, 6, 40, 15.0);
    } catch (const std::exception&) {
        // series too short for the embedding: leave unset
    }
    Json diag{{"period", {{"periodic", res.period.periodic}, {"period", res.period.period},
                          {"spread", res.period.spread}, {"reason", res.period.reason}}},
              {"series_lyapunov", lam}};
    write_json(ctx.file("diagnostics.json").string(), diag);
    ctx.emit_manifest("fig19");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"htt-lab: Hopf-Turing-Turing bifurcation toolkit"};
    app.require_subcommand(1);

    std::string config_path, out_dir = ".";
    std::uint64_t seed = 42;
    int threads = 1;
    app.add_option("--config", config_path, "JSON config file");
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--seed", seed, "random seed for stochastic initial data");
    app.add_option("--threads", threads, "worker threads for sweeps");
    // flag overrides: --set key=value applied on top of the config file
    std::vector<std::string> overrides;
    app.add_option("--set", overrides, "override config entries, key=json-value");

    const std::vector<std::pair<std::string, int (*)(const RunContext&)>> tasks = {
        {"stability-scan", cmd_stability_scan}, {"htt-point", cmd_htt_point},
        {"coefficients", cmd_coefficients},     {"nf-run", cmd_nf_run},
        {"nf-analyze", cmd_nf_analyze},         {"pde-run", cmd_pde_run},
        {"fig19", cmd_fig19}};
    for (auto& [name, fn] : tasks) {
        (void)fn;
        app.add_subcommand(name)->fallthrough();
    }

    CLI11_PARSE(app, argc, argv);

    try {
        RunContext ctx;
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) throw ConfigError("cannot read config file: " + config_path);
            try {
                in >> ctx.config;
            } catch (const std::exception& e) {
                throw ConfigError(std::string("config parse error: ") + e.what());
            }
        } else {
            ctx.config = Json::object();
        }
        for (const auto& kv : overrides) {
            const auto pos = kv.find('=');
            if (pos == std::string::npos)
                throw ConfigError("--set expects key=value, got: " + kv);
            Json val;
            try {
                val = Json::parse(kv.substr(pos + 1));
            } catch (const std::exception&) {
                val = kv.substr(pos + 1);  // bare string value
            }
            ctx.config[kv.substr(0, pos)] = val;
        }
        ctx.out_dir = out_dir;
        ctx.seed = seed;
        ctx.threads = threads;
        fs::create_directories(ctx.out_dir);

        for (auto& [name, fn] : tasks)
            if (app.get_subcommand(name)->parsed()) return fn(ctx);
        throw ConfigError("no task selected");
    } catch (const ConfigError& e) {
        Json err{{"error", "config"}, {"message", e.what()}};
        std::cerr << err.dump(2) << std::endl;
        return 2;
    } catch (const std::exception& e) {
        Json err{{"error", "numerical"}, {"message", e.what()}};
        std::cerr << err.dump(2) << std::endl;
        return 3;
    }
}
