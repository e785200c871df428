// bsq: command-line driver for the sixth-order Boussinesq experiments.
#include <CLI11.hpp>

#include <iostream>

#include "cli/commands.hpp"

using bsq::cli::Config;

int main(int argc, char** argv) {
    CLI::App app{"Periodic solver and norm-growth experiments for u_tt = u_xx + beta u_xxxx + u_xxxxxx + (u^2)_xx"};
    app.require_subcommand(1);

    std::string config_path, out, format, n_list;
    long seed = 0, workers = 0;
    double s = 0, a = 0, b = 0, alpha = 0, epsilon = 0, T = 0, period = 0;
    long modes = 0;
    std::vector<std::string> sets;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "Sectioned key = value config file");
        sub->add_option("--out", out, "Output directory");
        sub->add_option("--format", format, "Report format")->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--seed", seed, "Seed for randomized suites");
        sub->add_option("--workers", workers, "Worker threads over sweep points")->check(CLI::PositiveNumber);
        sub->add_option("--set", sets, "Override any key: section.key=value");
    };

    auto* solve = app.add_subcommand("solve", "Picard solve of the periodic problem, cross-checked by RK4");
    auto* bil = app.add_subcommand("bilinear-sweep", "Norm ratio of the bilinear counterexample over N");
    auto* ill = app.add_subcommand("illposed-sweep", "Second-iterate norm growth over N");
    auto* chk = app.add_subcommand("checks", "Property suites for symbols, weights and integral bounds");
    for (auto* sub : {solve, bil, ill, chk}) add_common(sub);

    solve->add_option("--T", T, "Final time");
    solve->add_option("--modes", modes, "Number of Fourier modes");
    solve->add_option("--period", period, "Spatial period");
    solve->add_option("--s", s, "Sobolev index of the reported norms");
    for (auto* sub : {bil, ill}) {
        sub->add_option("--N-list", n_list, "Comma separated N values");
        sub->add_option("--s", s, "Sobolev index");
    }
    bil->add_option("--a", a, "Modulation index of the target space");
    bil->add_option("--b", b, "Modulation index of the inputs");
    bil->add_option("--alpha", alpha, "Strip width exponent");
    ill->add_option("--epsilon", epsilon, "Witness time exponent offset");

    CLI11_PARSE(app, argc, argv);

    try {
        Config cfg;
        if (!config_path.empty()) cfg = Config::load(config_path);
        CLI::App* sub = app.get_subcommands().front();
        const std::string section = sub == solve ? "solve" : sub == bil ? "bilinear" : sub == ill ? "illposed" : "checks";
        auto flag = [&](const char* name, const std::string& key, auto value) {
            const CLI::Option* opt = sub->get_option_no_throw(name);
            if (opt == nullptr || opt->count() == 0) return;
            if constexpr (std::is_same_v<decltype(value), std::string>)
                cfg.set(key, value);
            else
                cfg.set(key, bsq::cli::format_number(static_cast<double>(value)));
        };
        flag("--out", "run.out", out);
        flag("--format", "run.format", format);
        flag("--seed", "run.seed", seed);
        flag("--workers", "run.workers", workers);
        flag("--s", section + ".s", s);
        flag("--N-list", section + ".N_list", n_list);
        flag("--a", "bilinear.a", a);
        flag("--b", "bilinear.b", b);
        flag("--alpha", "bilinear.alpha", alpha);
        flag("--epsilon", "illposed.epsilon", epsilon);
        flag("--T", "solve.T", T);
        flag("--modes", "solve.modes", modes);
        flag("--period", "solve.period", period);
        for (const auto& kv : sets) {
            const auto eq = kv.find('=');
            if (eq == std::string::npos || eq == 0) throw bsq::cli::ConfigError("--set expects key=value: " + kv);
            cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
        }

        if (sub == solve) return bsq::cli::cmd_solve(cfg, std::cout);
        if (sub == bil) return bsq::cli::cmd_bilinear_sweep(cfg, std::cout);
        if (sub == ill) return bsq::cli::cmd_illposed_sweep(cfg, std::cout);
        return bsq::cli::cmd_checks(cfg, std::cout);
    } catch (const bsq::cli::ConfigError& e) {
        std::cerr << "bsq: " << e.what() << "\n";
        return bsq::cli::kConfigError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "bsq: invalid parameters: " << e.what() << "\n";
        return bsq::cli::kConfigError;
    } catch (const std::exception& e) {
        std::cerr << "bsq: " << e.what() << "\n";
        return bsq::cli::kConfigError;
    }
}
