#include "app.hpp"

#include "commands.hpp"
#include "config.hpp"

#include <pfqed/error.hpp>
#include <pfqed/parallel.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <ostream>

namespace pfqed::cli {

namespace {

/// Flag values as typed on the command line; applied after the config file.
struct Overrides
{
    double m{}, m0{}, alpha{}, beta{}, Z{}, Lambda{}, tol{}, grid_rmax{}, e{};
    std::size_t grid_n{};
    int lmax{}, n{}, l{};
    std::string t_mode, out, format, config, P, sweep_bz, sweep_lambda, sweep_alpha;
    bool no_extrapolate{false}, sweep_binding{false};
};

template <typename T>
void apply_if(CLI::Option const* opt, T& target, T const& value)
{
    if (opt->count() > 0) {
        target = value;
    }
}

} // namespace

int run_cli(int argc, char const* const* argv, std::ostream& out, std::ostream& err)
{
    configure_threads_from_env();

    CLI::App app{"Leading-order radiative corrections in the Pauli-Fierz model"};
    app.require_subcommand(1);
    app.fallthrough();

    Overrides o;
    std::map<std::string, CLI::Option*> opt;
    opt["m"] = app.add_option("--m", o.m, "physical mass (natural units)");
    opt["m0"] = app.add_option("--m0", o.m0, "bare mass; derived from m when absent");
    opt["alpha"] = app.add_option("--alpha", o.alpha, "fine-structure constant");
    opt["beta"] = app.add_option("--beta", o.beta, "potential coupling");
    opt["Z"] = app.add_option("--Z", o.Z, "nuclear charge");
    opt["Lambda"] = app.add_option("--Lambda", o.Lambda, "UV cutoff in units of m");
    opt["tol"] = app.add_option("--tol", o.tol, "quadrature tolerance");
    opt["grid-n"] = app.add_option("--grid-n", o.grid_n, "radial grid points");
    opt["grid-rmax"] = app.add_option("--grid-rmax", o.grid_rmax, "radial box size in 1/(m beta Z)");
    opt["t-mode"] = app.add_option("--t-mode", o.t_mode, "T-term mode")->check(
        CLI::IsMember({"bound", "leading", "resolvent"}));
    opt["lmax"] = app.add_option("--lmax", o.lmax, "partial-wave truncation (resolvent mode)");
    opt["out"] = app.add_option("--out", o.out, "output file (default: standard output)");
    opt["format"] = app.add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    opt["config"] = app.add_option("--config", o.config, "INI config file; flags override its keys");
    opt["no-extrapolate"] = app.add_flag("--no-extrapolate", o.no_extrapolate, "single grid level, no Richardson step");

    auto* cmd_s = app.add_subcommand("s-function", "S(e)");
    auto* cmd_f = app.add_subcommand("f-function", "f(e, Lambda)");
    for (auto* c : {cmd_s, cmd_f}) {
        opt["e"] = c->add_option("--e", o.e, "argument e");
    }
    // Both subcommands bind --e; remember each option to know which one fired.
    CLI::Option* e_s = cmd_s->get_option("--e");
    CLI::Option* e_f = cmd_f->get_option("--e");

    auto* cmd_disp = app.add_subcommand("dispersion", "free-electron dispersion shift");
    opt["P"] = cmd_disp->add_option("--P", o.P, "momentum: magnitude along z, or x,y,z");

    auto* cmd_level = app.add_subcommand("level-shift", "level energy of phi_{n,l}");
    opt["n"] = cmd_level->add_option("--n", o.n, "principal quantum number");
    opt["l"] = cmd_level->add_option("--l", o.l, "angular momentum");

    auto* cmd_sweep = app.add_subcommand("sweep", "table over (beta Z, Lambda, alpha)");
    opt["sweep-bz"] = cmd_sweep->add_option("--beta-z", o.sweep_bz, "list a,b,c or range lo:hi:n[:log]");
    opt["sweep-Lambda"] = cmd_sweep->add_option("--Lambda-range", o.sweep_lambda, "list or range");
    opt["sweep-alpha"] = cmd_sweep->add_option("--alpha-range", o.sweep_alpha, "list or range");
    opt["sweep-binding"] = cmd_sweep->add_flag("--binding", o.sweep_binding, "add the full binding energy per point");

    app.add_subcommand("self-energy", "vacuum self-energy");
    app.add_subcommand("mass", "physical and bare mass");
    app.add_subcommand("binding", "renormalized ground-state binding energy");
    app.add_subcommand("lamb", "2s-2p splitting");

    try {
        app.parse(argc, argv);
    } catch (CLI::ParseError const& e) {
        int const code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    RunConfig cfg;
    cfg.command = app.get_subcommands().front()->get_name();
    try {
        if (opt["config"]->count() > 0) {
            load_config_file(o.config, cfg);
        }
        Params& p = cfg.params;
        apply_if(opt["m"], p.m, o.m);
        if (opt["m0"]->count() > 0) {
            p.m0 = o.m0;
        }
        apply_if(opt["alpha"], p.alpha, o.alpha);
        apply_if(opt["beta"], p.beta, o.beta);
        apply_if(opt["Z"], p.Z, o.Z);
        apply_if(opt["Lambda"], p.Lambda, o.Lambda);
        apply_if(opt["tol"], cfg.tol, o.tol);
        apply_if(opt["grid-n"], cfg.grid.n, o.grid_n);
        apply_if(opt["grid-rmax"], cfg.grid.r_max, o.grid_rmax);
        if (opt["t-mode"]->count() > 0) {
            cfg.t.mode = t_mode_from_string(o.t_mode);
        }
        apply_if(opt["lmax"], cfg.t.l_max, o.lmax);
        apply_if(opt["out"], cfg.out_path, o.out);
        if (opt["format"]->count() > 0) {
            cfg.format = parse_format(o.format);
        }
        if (o.no_extrapolate) {
            cfg.extrapolate = false;
        }
        if (e_s->count() > 0 || e_f->count() > 0) {
            cfg.e = o.e;
        }
        if (opt["P"]->count() > 0) {
            cfg.P = parse_momentum(o.P);
        }
        apply_if(opt["n"], cfg.n, o.n);
        apply_if(opt["l"], cfg.l, o.l);
        if (opt["sweep-bz"]->count() > 0) {
            cfg.sweep.beta_z = parse_range(o.sweep_bz);
        }
        if (opt["sweep-Lambda"]->count() > 0) {
            cfg.sweep.Lambda = parse_range(o.sweep_lambda);
        }
        if (opt["sweep-alpha"]->count() > 0) {
            cfg.sweep.alpha = parse_range(o.sweep_alpha);
        }
        if (o.sweep_binding) {
            cfg.sweep.binding = true;
        }
        cfg.validate();
    } catch (ConfigError const& e) {
        err << "configuration error: " << e.what() << '\n';
        return 2;
    } catch (PreconditionError const& e) {
        err << "configuration error: " << e.what() << '\n';
        return 2;
    }

    CommandOutput result;
    try {
        result = run_command(cfg);
    } catch (ConvergenceError const& e) {
        err << "error: " << e.what() << " (best estimate " << e.best_estimate() << ", error estimate "
            << e.error_estimate() << ")\n";
        return 1;
    } catch (ConfigError const& e) {
        err << "configuration error: " << e.what() << '\n';
        return 2;
    } catch (Error const& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }

    if (cfg.out_path.empty()) {
        write(out, result.rows, cfg.format);
    } else {
        std::ofstream file(cfg.out_path);
        if (!file) {
            err << "error: cannot open '" << cfg.out_path << "' for writing\n";
            return 2;
        }
        write(file, result.rows, cfg.format);
    }
    for (auto const& s : result.summary) {
        err << s << '\n';
    }
    err << leading_order_caveat << '\n';
    return 0;
}

} // namespace pfqed::cli
