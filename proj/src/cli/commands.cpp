#include "cli/commands.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>

#include "bsq/bilinear.hpp"
#include "bsq/checks.hpp"
#include "bsq/evolution.hpp"
#include "bsq/illposed.hpp"
#include "bsq/norms.hpp"

namespace bsq::cli {

namespace {

void reject_unknown(const Config& cfg, const std::string& section, const std::vector<std::string>& known) {
    const auto bad = cfg.unknown_keys(section, known);
    if (!bad.empty()) throw ConfigError("unknown config key '" + bad.front() + "'");
}

Json run_block(const RunOptions& run) {
    return {{"run.format", run.format == Format::csv ? "csv" : "json"}, {"run.seed", run.seed}};
}

DispersionParams beta_from(const Config& cfg, const std::string& key) {
    const long beta = cfg.get_long(key, 1);
    if (beta != 1 && beta != -1) throw ConfigError(key + ": must be 1 or -1");
    return DispersionParams(static_cast<int>(beta));
}

std::string join(const std::vector<double>& xs) {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? ";" : "") + format_number(xs[i]);
    return s;
}

size_t worker_count(const RunOptions& run) { return static_cast<std::size_t>(run.workers); }

Json sweep_document(const std::string& command, Json config, const ExperimentReport& rep) {
    Json doc;
    doc["command"] = command;
    doc["config"] = std::move(config);
    doc["summary"] = {{"experiment", rep.experiment},
                      {"fitted_slope", rep.fitted_slope},
                      {"fit_residual", rep.fit_residual},
                      {"predicted_exponent", rep.predicted_exponent},
                      {"pass", rep.pass},
                      {"informational", rep.informational},
                      {"reliable", rep.reliable()}};
    doc["columns"] = {"N", "value", "log_N", "log_value", "fitted_slope", "fit_residual", "predicted_exponent",
                      "pass"};
    Json rows = Json::array();
    for (const auto& p : rep.points)
        rows.push_back({p.N, p.value, std::log(p.N), std::log(p.value), nullptr, nullptr, nullptr, nullptr});
    doc["rows"] = rows;
    doc["footer"] = {nullptr, nullptr, nullptr, nullptr, rep.fitted_slope, rep.fit_residual, rep.predicted_exponent,
                     rep.pass};
    return doc;
}

void log_sweep(std::ostream& log, const ExperimentReport& rep, const std::string& path) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "slope %.4f (predicted %.4f), residual %.4f%s%s -> %s\n", rep.fitted_slope,
                  rep.predicted_exponent, rep.fit_residual, rep.informational ? ", informational" : "",
                  rep.reliable() ? "" : ", unreliable fit", rep.pass ? "pass" : "FAIL");
    log << buf << "report: " << path << "\n";
}

}  // namespace

RunOptions RunOptions::from(const Config& cfg) {
    reject_unknown(cfg, "run", {"out", "format", "seed", "workers"});
    RunOptions o;
    o.output_dir = cfg.get_string("run.out", o.output_dir);
    const std::string fmt = cfg.get_string("run.format", "csv");
    if (fmt == "csv")
        o.format = Format::csv;
    else if (fmt == "json")
        o.format = Format::json;
    else
        throw ConfigError("run.format: expected csv or json");
    o.seed = cfg.get_long("run.seed", o.seed);
    o.workers = cfg.get_long("run.workers", o.workers);
    if (o.workers < 1) throw ConfigError("run.workers: must be >= 1");
    return o;
}

int cmd_solve(const Config& cfg, std::ostream& log) {
    reject_unknown(cfg, "solve", {"beta", "period", "modes", "T", "time_nodes", "picard_tol", "max_iters", "dealias",
                                  "s", "phi_norm", "psi_norm", "width", "cutoff", "oracle", "oracle_substeps"});
    const RunOptions run = RunOptions::from(cfg);
    const DispersionParams params = beta_from(cfg, "solve.beta");
    const double period = cfg.get_double("solve.period", 32.0 * std::numbers::pi);
    const long modes = cfg.get_long("solve.modes", 256);
    SolverConfig sc;
    sc.T = cfg.get_double("solve.T", sc.T);
    const long time_nodes = cfg.get_long("solve.time_nodes", 201);
    if (time_nodes < 3 || time_nodes % 2 == 0) throw ConfigError("solve.time_nodes: must be odd and >= 3");
    sc.n_time_nodes = static_cast<std::size_t>(time_nodes);
    sc.picard_tol = cfg.get_double("solve.picard_tol", sc.picard_tol);
    const long max_iters = cfg.get_long("solve.max_iters", 50);
    if (max_iters < 1) throw ConfigError("solve.max_iters: must be >= 1");
    sc.max_picard_iters = static_cast<std::size_t>(max_iters);
    sc.dealias_fraction = cfg.get_double("solve.dealias", sc.dealias_fraction);
    sc.sobolev_s = cfg.get_double("solve.s", 0.0);
    const double phi_norm = cfg.get_double("solve.phi_norm", 1e-2);
    const double psi_norm = cfg.get_double("solve.psi_norm", 0.0);
    const double width = cfg.get_double("solve.width", 0.4);
    const double cutoff = cfg.get_double("solve.cutoff", 2.0);
    const bool oracle = cfg.get_bool("solve.oracle", true);
    const long substeps = cfg.get_long("solve.oracle_substeps", 8);
    if (modes < 8 || modes % 2) throw ConfigError("solve.modes: must be even and >= 8");
    if (substeps < 1) throw ConfigError("solve.oracle_substeps: must be >= 1");

    Json config = run_block(run);
    config.update(Json{{"solve.beta", params.beta()},
                       {"solve.period", period},
                       {"solve.modes", modes},
                       {"solve.T", sc.T},
                       {"solve.time_nodes", sc.n_time_nodes},
                       {"solve.picard_tol", sc.picard_tol},
                       {"solve.max_iters", sc.max_picard_iters},
                       {"solve.dealias", sc.dealias_fraction},
                       {"solve.s", sc.sobolev_s},
                       {"solve.phi_norm", phi_norm},
                       {"solve.psi_norm", psi_norm},
                       {"solve.width", width},
                       {"solve.cutoff", cutoff},
                       {"solve.oracle", oracle},
                       {"solve.oracle_substeps", substeps}});

    TorusGrid grid(period, static_cast<std::size_t>(modes));
    const ModeVector phi = gaussian_band_data(grid, phi_norm, sc.sobolev_s, width, cutoff);
    const ModeVector psi = gaussian_band_data(grid, psi_norm, sc.sobolev_s - 1.0, width, cutoff);
    try {
        sc.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }

    Json doc;
    doc["command"] = "solve";
    doc["config"] = config;
    doc["columns"] = {"t", "hs_norm", "oracle_hs_norm", "discrepancy"};
    Trajectory traj;
    try {
        traj = picard_solve(phi, psi, grid, params, sc);
    } catch (const NoContraction& e) {
        // Halve T until the iteration contracts, to report a usable horizon.
        double t_ok = 0.0;
        SolverConfig probe = sc;
        for (int k = 0; k < 8 && t_ok == 0.0; ++k) {
            probe.T *= 0.5;
            try {
                picard_solve(phi, psi, grid, params, probe);
                t_ok = probe.T;
            } catch (const NoContraction&) {
            }
        }
        doc["summary"] = {{"converged", false},
                          {"last_residual", e.last_residual()},
                          {"previous_residual", e.previous_residual()},
                          {"contractive_T", t_ok > 0.0 ? Json(t_ok) : Json(nullptr)}};
        doc["rows"] = Json::array();
        const auto path = write_report(doc, run.output_dir, "solve", run.format);
        log << "no contraction at T = " << format_number(sc.T) << " (residual " << format_number(e.last_residual()) << ")\n";
        if (t_ok > 0.0)
            log << "Picard contracts at T = " << format_number(t_ok) << "; rerun with --T " << format_number(t_ok)
                << "\n";
        else
            log << "try halving T\n";
        log << "report: " << path << "\n";
        return kNoContraction;
    }

    Trajectory ref;
    if (oracle) ref = step_oracle_solve(phi, psi, grid, params, sc, static_cast<std::size_t>(substeps));
    Json rows = Json::array();
    double max_disc = 0.0;
    for (std::size_t n = 0; n < traj.states.size(); ++n) {
        const auto& st = traj.states[n];
        const double norm = hs_norm(grid, st.u_hat, sc.sobolev_s);
        if (oracle) {
            ModeVector d(st.u_hat.size());
            for (std::size_t j = 0; j < d.size(); ++j) d[j] = st.u_hat[j] - ref.states[n].u_hat[j];
            const double disc = hs_norm(grid, d, sc.sobolev_s);
            max_disc = std::max(max_disc, disc);
            rows.push_back({st.time, norm, hs_norm(grid, ref.states[n].u_hat, sc.sobolev_s), disc});
        } else {
            rows.push_back({st.time, norm, nullptr, nullptr});
        }
    }
    doc["rows"] = rows;
    doc["summary"] = {{"converged", true},
                      {"picard_iterations", traj.iterations},
                      {"residuals", join(traj.residuals)},
                      {"max_discrepancy", oracle ? Json(max_disc) : Json(nullptr)},
                      {"contractive_T", sc.T}};
    const auto path = write_report(doc, run.output_dir, "solve", run.format);
    log << "converged in " << traj.iterations << " Picard iterations";
    if (oracle) log << ", max oracle discrepancy " << format_number(max_disc);
    log << "\nreport: " << path << "\n";
    return kOk;
}

int cmd_bilinear_sweep(const Config& cfg, std::ostream& log) {
    reject_unknown(cfg, "bilinear", {"s", "a", "b", "alpha", "beta", "N_list", "tau_resolution", "xi_cells"});
    const RunOptions run = RunOptions::from(cfg);
    BilinearSweepTemplate t;
    t.s = cfg.get_double("bilinear.s", t.s);
    t.a = cfg.get_double("bilinear.a", t.a);
    t.b = cfg.get_double("bilinear.b", t.b);
    t.alpha = cfg.get_double("bilinear.alpha", 0.0);
    t.params = beta_from(cfg, "bilinear.beta");
    t.tau_resolution = cfg.get_double("bilinear.tau_resolution", t.tau_resolution);
    const long cells = cfg.get_long("bilinear.xi_cells", 32);
    if (cells < 8) throw ConfigError("bilinear.xi_cells: must be >= 8");
    t.xi_cells = static_cast<std::size_t>(cells);
    const auto Ns = cfg.get_list("bilinear.N_list", {16, 32, 64, 128, 256});
    if (t.a >= 1.0) throw ConfigError("bilinear.a: must be < 1");

    Json config = run_block(run);
    config.update(Json{{"bilinear.s", t.s},
                       {"bilinear.a", t.a},
                       {"bilinear.b", t.b},
                       {"bilinear.alpha", t.resolved_alpha()},
                       {"bilinear.beta", t.params.beta()},
                       {"bilinear.N_list", join(Ns)},
                       {"bilinear.tau_resolution", t.tau_resolution},
                       {"bilinear.xi_cells", cells}});
    ExperimentReport rep;
    try {
        rep = bilinear_ratio_sweep(t, Ns, worker_count(run));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    const auto path = write_report(sweep_document("bilinear-sweep", config, rep), run.output_dir, "bilinear",
                                   run.format);
    log_sweep(log, rep, path);
    return rep.pass || rep.informational ? kOk : kFailed;
}

int cmd_illposed_sweep(const Config& cfg, std::ostream& log) {
    reject_unknown(cfg, "illposed", {"s", "epsilon", "beta", "N_list", "xi_resolution", "t_nodes", "sup_over_t"});
    const RunOptions run = RunOptions::from(cfg);
    IllposedSweepTemplate t;
    t.s = cfg.get_double("illposed.s", t.s);
    t.epsilon = cfg.get_double("illposed.epsilon", t.epsilon);
    t.params = beta_from(cfg, "illposed.beta");
    t.xi_resolution = cfg.get_double("illposed.xi_resolution", t.xi_resolution);
    const long nodes = cfg.get_long("illposed.t_nodes", 8);
    if (nodes < 3) throw ConfigError("illposed.t_nodes: must be >= 3");
    t.t_quadrature_nodes = static_cast<std::size_t>(nodes);
    t.sup_over_t = cfg.get_bool("illposed.sup_over_t", false);
    const auto Ns = cfg.get_list("illposed.N_list", {16, 32, 64, 128});

    Json config = run_block(run);
    config.update(Json{{"illposed.s", t.s},
                       {"illposed.epsilon", t.epsilon},
                       {"illposed.beta", t.params.beta()},
                       {"illposed.N_list", join(Ns)},
                       {"illposed.xi_resolution", t.xi_resolution},
                       {"illposed.t_nodes", nodes},
                       {"illposed.sup_over_t", t.sup_over_t}});
    ExperimentReport rep;
    try {
        rep = illposed_sweep(t, Ns, worker_count(run));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    const auto path = write_report(sweep_document("illposed-sweep", config, rep), run.output_dir, "illposed",
                                   run.format);
    log_sweep(log, rep, path);
    return rep.pass || rep.informational ? kOk : kFailed;
}

int cmd_checks(const Config& cfg, std::ostream& log) {
    reject_unknown(cfg, "checks", {"tolerance_scale"});
    const RunOptions run = RunOptions::from(cfg);
    ChecksOptions opt;
    opt.seed = static_cast<std::uint64_t>(run.seed);
    opt.tolerance_scale = cfg.get_double("checks.tolerance_scale", 1.0);

    const auto results = run_checks(opt);
    Json doc;
    doc["command"] = "checks";
    Json config = run_block(run);
    config["checks.tolerance_scale"] = opt.tolerance_scale;
    doc["config"] = config;
    doc["columns"] = {"check", "measured", "threshold", "pass", "detail"};
    Json rows = Json::array();
    std::size_t failed = 0;
    for (const auto& r : results) {
        rows.push_back({r.name, r.measured, r.threshold, r.passed, r.detail.empty() ? Json(nullptr) : Json(r.detail)});
        char buf[256];
        std::snprintf(buf, sizeof buf, "%-52s %-4s  %.6g (limit %.6g)\n", r.name.c_str(), r.passed ? "ok" : "FAIL",
                      r.measured, r.threshold);
        log << buf;
        if (!r.passed) ++failed;
    }
    doc["rows"] = rows;
    doc["summary"] = {{"checks", results.size()}, {"failed", failed}};
    const auto path = write_report(doc, run.output_dir, "checks", run.format);
    log << results.size() - failed << "/" << results.size() << " checks passed\nreport: " << path << "\n";
    return failed == 0 ? kOk : kFailed;
}

}  // namespace bsq::cli
