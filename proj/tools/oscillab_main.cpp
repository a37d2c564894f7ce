// Experiment runner for the oscillatory integral operator laboratory.
//
// Subcommands compute single integrals and kernel values, operator-norm
// estimates, lambda decay sweeps with log-log fits, kernel bound ratio
// statistics, fractional density transforms, and L2 endpoint norm sweeps.
// Every run writes results.csv, report.json and plot.svg into --out.

#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "oscillab/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"oscillatory integral operator laboratory"};
    app.require_subcommand(1);
    app.fallthrough();

    oscillab::ExperimentConfig cfg;
    std::string config_path;

    // Shared options live on the parent; CLI11 fallthrough lets them appear
    // after the subcommand as well.
    std::map<std::string, CLI::Option*> opts;
    opts["m"] = app.add_option("--m", cfg.m, "exponent m of x^m t^k");
    opts["n"] = app.add_option("--n", cfg.n, "exponent n of y^n t^l");
    opts["k"] = app.add_option("--k", cfg.k, "exponent k of x^m t^k (k > l)");
    opts["l"] = app.add_option("--l", cfg.l, "exponent l of y^n t^l");
    opts["p"] = app.add_option("--p", cfg.p, "Lebesgue index p (default 2k+2)");
    opts["lambda"] = app.add_option("--lambda", cfg.lambda, "single lambda value");
    opts["lambda-min"] = app.add_option("--lambda-min", cfg.lambda_min, "sweep start");
    opts["lambda-max"] = app.add_option("--lambda-max", cfg.lambda_max, "sweep end");
    opts["num-lambdas"] = app.add_option("--num-lambdas", cfg.num_lambdas, "sweep length");
    opts["grid"] = app.add_option("--grid", cfg.grid_n, "uniform grid nodes per axis");
    opts["nt"] = app.add_option("--nt", cfg.nt, "t-axis nodes");
    opts["estimator"] =
        app.add_option("--estimator", cfg.estimator, "norm estimator: witness|ascent");
    opts["tol-slope"] = app.add_option("--tol-slope", cfg.tol_slope, "slope comparison tolerance");
    opts["seed"] = app.add_option("--seed", cfg.seed, "random seed");
    opts["jobs"] = app.add_option("--jobs", cfg.jobs, "worker threads (<=0: all)");
    opts["out"] = app.add_option("--out", cfg.out_dir, "output directory");
    opts["samples"] = app.add_option("--samples", cfg.samples, "random tuples per lambda");
    opts["alpha-re"] = app.add_option("--alpha-re", cfg.alpha_re, "Re(alpha)");
    opts["alpha-im"] = app.add_option("--alpha-im", cfg.alpha_im, "Im(alpha)");
    opts["t-min"] = app.add_option("--t-min", cfg.t_min, "transform sweep start");
    opts["t-max"] = app.add_option("--t-max", cfg.t_max, "transform sweep end");
    opts["num-t"] = app.add_option("--num-t", cfg.num_t, "transform sweep length");
    opts["cells-per-block"] =
        app.add_option("--cells-per-block", cfg.cells_per_block, "witness grading density");
    opts["abs-tol"] = app.add_option("--abs-tol", cfg.abs_tol, "quadrature absolute tolerance");
    opts["rel-tol"] = app.add_option("--rel-tol", cfg.rel_tol, "quadrature relative tolerance");
    opts["x"] = app.add_option("--x", cfg.x, "kernel probe x");
    opts["y"] = app.add_option("--y", cfg.y, "kernel probe y");
    opts["u"] = app.add_option("--u", cfg.u, "kernel probe u");
    opts["v"] = app.add_option("--v", cfg.v, "kernel probe v");
    opts["a"] = app.add_option("--a", cfg.a, "integrate interval start");
    opts["b"] = app.add_option("--b", cfg.b, "integrate interval end");
    opts["phase-k"] = app.add_option("--phase-k", cfg.phase_k, "integrate phase power t^k");
    opts["dump-field"] =
        app.add_option("--dump-field", cfg.dump_field, "write the witness field CSV here");
    CLI::Option* config_opt = app.add_option("--config", config_path, "key = value config file");

    app.add_subcommand("integrate", "model oscillatory integral of exp(i lambda t^k) on [a,b]");
    app.add_subcommand("kernel", "kernel value K(u,v,x,y) at one tuple");
    app.add_subcommand("norm", "operator norm estimate at one lambda");
    app.add_subcommand("decay-sweep", "lambda sweep of a norm estimator with exponent fit");
    app.add_subcommand("vdc-check", "kernel bound ratio statistics over random tuples");
    app.add_subcommand("delta-alpha", "fractional density transform sweep over t");
    app.add_subcommand("endpoint-l2", "L2 operator norm sweep of the interpolation kernel");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    cfg.command = app.get_subcommands().front()->get_name();

    // config file values apply only where no flag overrode them
    if (config_opt->count() > 0) {
        try {
            for (const auto& [key, value] : oscillab::parse_config_file(config_path)) {
                if (key == "command") {
                    if (value != cfg.command) {
                        std::fprintf(stderr, "error: config command '%s' does not match '%s'\n",
                                     value.c_str(), cfg.command.c_str());
                        return 2;
                    }
                    continue;
                }
                auto it = opts.find(key);
                if (it != opts.end() && it->second->count() > 0) continue;
                oscillab::apply_config_entry(cfg, key, value);
            }
        } catch (const std::exception& e) {
            std::fprintf(stderr, "error: %s\n", e.what());
            return 2;
        }
    }

    oscillab::RunOutcome outcome = oscillab::run_experiment(cfg);
    if (!outcome.error.empty()) std::fprintf(stderr, "error: %s\n", outcome.error.c_str());
    return outcome.exit_code;
}
