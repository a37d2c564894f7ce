#include "oscillab/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <stdexcept>

#include <json.hpp>

#include "oscillab/analytic.hpp"
#include "oscillab/decay.hpp"
#include "oscillab/io.hpp"
#include "oscillab/norms.hpp"
#include "oscillab/op.hpp"
#include "oscillab/phase.hpp"
#include "oscillab/quad.hpp"

namespace oscillab {

namespace {

using json = nlohmann::ordered_json;

struct Field {
    std::string key;
    std::function<void(ExperimentConfig&, const std::string&)> set;
    std::function<std::string(const ExperimentConfig&)> get;
};

std::string trim(const std::string& s) {
    std::size_t lo = s.find_first_not_of(" \t\r\n");
    if (lo == std::string::npos) return "";
    std::size_t hi = s.find_last_not_of(" \t\r\n");
    return s.substr(lo, hi - lo + 1);
}

double parse_double(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing");
        return d;
    } catch (...) {
        throw std::invalid_argument("config key '" + key + "': bad number '" + v + "'");
    }
}

long long parse_int(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        long long d = std::stoll(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing");
        return d;
    } catch (...) {
        throw std::invalid_argument("config key '" + key + "': bad integer '" + v + "'");
    }
}

const std::vector<Field>& fields() {
    static const std::vector<Field> table = [] {
        std::vector<Field> f;
        auto add_str = [&f](const char* key, std::string ExperimentConfig::* mem) {
            f.push_back({key,
                         [mem](ExperimentConfig& c, const std::string& v) { c.*mem = v; },
                         [mem](const ExperimentConfig& c) { return c.*mem; }});
        };
        auto add_dbl = [&f](const char* key, double ExperimentConfig::* mem) {
            f.push_back({key,
                         [mem, key = std::string(key)](ExperimentConfig& c, const std::string& v) {
                             c.*mem = parse_double(key, v);
                         },
                         [mem](const ExperimentConfig& c) { return fmt_double(c.*mem); }});
        };
        auto add_int = [&f](const char* key, int ExperimentConfig::* mem) {
            f.push_back({key,
                         [mem, key = std::string(key)](ExperimentConfig& c, const std::string& v) {
                             c.*mem = static_cast<int>(parse_int(key, v));
                         },
                         [mem](const ExperimentConfig& c) { return std::to_string(c.*mem); }});
        };
        add_str("command", &ExperimentConfig::command);
        add_int("m", &ExperimentConfig::m);
        add_int("n", &ExperimentConfig::n);
        add_int("k", &ExperimentConfig::k);
        add_int("l", &ExperimentConfig::l);
        add_dbl("p", &ExperimentConfig::p);
        add_dbl("lambda", &ExperimentConfig::lambda);
        add_dbl("lambda-min", &ExperimentConfig::lambda_min);
        add_dbl("lambda-max", &ExperimentConfig::lambda_max);
        add_int("num-lambdas", &ExperimentConfig::num_lambdas);
        add_int("grid", &ExperimentConfig::grid_n);
        add_int("nt", &ExperimentConfig::nt);
        add_str("estimator", &ExperimentConfig::estimator);
        add_dbl("tol-slope", &ExperimentConfig::tol_slope);
        f.push_back({"seed",
                     [](ExperimentConfig& c, const std::string& v) {
                         c.seed = static_cast<std::uint64_t>(parse_int("seed", v));
                     },
                     [](const ExperimentConfig& c) { return std::to_string(c.seed); }});
        add_int("jobs", &ExperimentConfig::jobs);
        add_str("out", &ExperimentConfig::out_dir);
        add_int("samples", &ExperimentConfig::samples);
        add_dbl("alpha-re", &ExperimentConfig::alpha_re);
        add_dbl("alpha-im", &ExperimentConfig::alpha_im);
        add_dbl("t-min", &ExperimentConfig::t_min);
        add_dbl("t-max", &ExperimentConfig::t_max);
        add_int("num-t", &ExperimentConfig::num_t);
        add_int("cells-per-block", &ExperimentConfig::cells_per_block);
        add_dbl("abs-tol", &ExperimentConfig::abs_tol);
        add_dbl("rel-tol", &ExperimentConfig::rel_tol);
        add_dbl("x", &ExperimentConfig::x);
        add_dbl("y", &ExperimentConfig::y);
        add_dbl("u", &ExperimentConfig::u);
        add_dbl("v", &ExperimentConfig::v);
        add_dbl("a", &ExperimentConfig::a);
        add_dbl("b", &ExperimentConfig::b);
        add_int("phase-k", &ExperimentConfig::phase_k);
        add_str("dump-field", &ExperimentConfig::dump_field);
        return f;
    }();
    return table;
}

const Field* find_field(const std::string& key) {
    for (const auto& f : fields())
        if (f.key == key) return &f;
    return nullptr;
}

std::vector<double> geometric(double lo, double hi, int n) {
    std::vector<double> v(n);
    if (n == 1) {
        v[0] = lo;
        return v;
    }
    const double r = std::log(hi / lo);
    for (int i = 0; i < n; ++i) v[i] = lo * std::exp(r * i / (n - 1));
    return v;
}

constexpr double kLn10 = 2.302585092994045684;

SvgLine fit_line(const DecayFitResult& fit, const std::string& label, const std::string& color,
                 bool dashed) {
    SvgLine ln;
    ln.slope = fit.slope;  // invariant under base change
    ln.intercept = fit.intercept / kLn10;
    ln.label = label;
    ln.color = color;
    ln.dashed = dashed;
    return ln;
}

SvgLine anchored_line(double slope10, double x0, double y0, const std::string& label,
                      const std::string& color) {
    SvgLine ln;
    ln.slope = slope10;
    ln.intercept = std::log10(y0) - slope10 * std::log10(x0);
    ln.label = label;
    ln.color = color;
    ln.dashed = true;
    return ln;
}

}  // namespace

const std::vector<std::string>& config_keys() {
    static const std::vector<std::string> keys = [] {
        std::vector<std::string> k;
        for (const auto& f : fields()) k.push_back(f.key);
        return k;
    }();
    return keys;
}

void apply_config_entry(ExperimentConfig& cfg, const std::string& key,
                        const std::string& value) {
    const Field* f = find_field(key);
    if (!f) throw std::invalid_argument("unknown config key '" + key + "'");
    f->set(cfg, value);
}

std::map<std::string, std::string> parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot read config file '" + path + "'");
    std::map<std::string, std::string> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string s = trim(line);
        if (s.empty() || s[0] == '#' || s[0] == ';') continue;
        const std::size_t eq = s.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": expected key = value");
        const std::string key = trim(s.substr(0, eq));
        const std::string value = trim(s.substr(eq + 1));
        if (!find_field(key))
            throw std::invalid_argument("unknown config key '" + key + "' (line " +
                                        std::to_string(lineno) + ")");
        out[key] = value;
    }
    return out;
}

std::map<std::string, std::string> config_to_map(const ExperimentConfig& cfg) {
    std::map<std::string, std::string> out;
    for (const auto& f : fields()) out[f.key] = f.get(cfg);
    return out;
}

void resolve_config(ExperimentConfig& cfg) {
    static const std::set<std::string> commands = {
        "integrate", "kernel", "norm", "decay-sweep", "vdc-check", "delta-alpha", "endpoint-l2"};
    if (!commands.count(cfg.command))
        throw std::invalid_argument("unknown command '" + cfg.command + "'");

    // constructor enforces positivity and the k > l normalization
    PhaseParams params(cfg.m, cfg.n, cfg.k, cfg.l);

    if (cfg.p < 0.0) cfg.p = params.p();
    if (cfg.p < 1.0) throw std::invalid_argument("p must be >= 1");
    if (cfg.tol_slope < 0.0) cfg.tol_slope = 0.02 * (1.0 + params.delta_pred);

    if (cfg.command == "vdc-check") {
        if (cfg.lambda_min < 0.0) cfg.lambda_min = 100.0;
        if (cfg.lambda_max < 0.0) cfg.lambda_max = 10000.0;
        if (cfg.num_lambdas < 0) cfg.num_lambdas = 3;
    } else if (cfg.command == "endpoint-l2") {
        if (cfg.lambda_min < 0.0) cfg.lambda_min = 16.0;
        if (cfg.lambda_max < 0.0) cfg.lambda_max = 512.0;
        if (cfg.num_lambdas < 0) cfg.num_lambdas = 6;
    } else {
        if (cfg.lambda_min < 0.0) cfg.lambda_min = 64.0;
        if (cfg.lambda_max < 0.0) cfg.lambda_max = 16384.0;
        if (cfg.num_lambdas < 0) cfg.num_lambdas = 9;
    }
    if (cfg.grid_n < 0) cfg.grid_n = cfg.command == "endpoint-l2" ? 48 : 32;

    if (cfg.command == "decay-sweep" || cfg.command == "vdc-check" ||
        cfg.command == "endpoint-l2") {
        if (cfg.lambda_min < 1.0) throw std::invalid_argument("lambda-min must be >= 1");
        if (!(cfg.lambda_max > cfg.lambda_min) && cfg.num_lambdas > 1)
            throw std::invalid_argument("lambda-max must exceed lambda-min");
    }
    if (cfg.command == "decay-sweep" && cfg.num_lambdas < 4)
        throw std::invalid_argument("decay-sweep needs num-lambdas >= 4");
    if (cfg.num_lambdas < 1) throw std::invalid_argument("num-lambdas must be >= 1");
    if (cfg.grid_n < 2) throw std::invalid_argument("grid must be >= 2");
    if (cfg.nt < 2) throw std::invalid_argument("nt must be >= 2");
    if (cfg.cells_per_block < 8)
        throw std::invalid_argument("cells-per-block must be >= 8");
    if (cfg.samples < 1) throw std::invalid_argument("samples must be >= 1");
    if (cfg.estimator != "witness" && cfg.estimator != "ascent")
        throw std::invalid_argument("estimator must be 'witness' or 'ascent'");
    if (cfg.estimator == "ascent") {
        const double pr = std::round(cfg.p);
        if (pr != cfg.p || static_cast<long long>(pr) % 2 != 0 || cfg.p < 2.0)
            throw std::invalid_argument("ascent estimator requires an even integer p >= 2");
    }
    if (!(cfg.abs_tol > 0.0) || !(cfg.rel_tol > 0.0))
        throw std::invalid_argument("quadrature tolerances must be positive");
    if (cfg.command == "delta-alpha" || cfg.command == "endpoint-l2") {
        if (!(cfg.alpha_re > 0.0))
            throw std::invalid_argument("alpha-re must be positive (density regime)");
    }
    if (cfg.command == "delta-alpha") {
        if (!(cfg.t_min > 0.0) || !(cfg.t_max > cfg.t_min) || cfg.num_t < 3)
            throw std::invalid_argument("delta-alpha sweep needs 0 < t-min < t-max, num-t >= 3");
    }
}

namespace {

struct Artifacts {
    std::vector<std::vector<std::string>> csv_rows;
    std::string csv_header;
    json results;
    std::vector<SvgSeries> series;
    std::vector<SvgLine> lines;
    std::string plot_title, plot_x = "lambda", plot_y = "value";
    std::vector<std::string> warnings;
    int exit_code = 0;
};

QuadratureSpec quad_of(const ExperimentConfig& cfg) {
    QuadratureSpec q;
    q.abs_tol = cfg.abs_tol;
    q.rel_tol = cfg.rel_tol;
    return q;
}

void cmd_integrate(const ExperimentConfig& cfg, Artifacts& art) {
    const int pk = cfg.phase_k;
    auto phase = [pk](double t) { return ipow(t, pk); };
    auto amp = [](double) -> std::complex<double> { return {1.0, 0.0}; };
    QuadResult r = integrate_oscillatory(phase, amp, cfg.a, cfg.b, cfg.lambda, quad_of(cfg));
    art.csv_header = "lambda,re,im,abs,error,evals,converged";
    art.csv_rows.push_back({fmt_double(cfg.lambda), fmt_double(r.value.real()),
                            fmt_double(r.value.imag()), fmt_double(std::abs(r.value)),
                            fmt_double(r.error), std::to_string(r.evals),
                            r.converged ? "1" : "0"});
    art.results["value_re"] = r.value.real();
    art.results["value_im"] = r.value.imag();
    art.results["abs"] = std::abs(r.value);
    art.results["error"] = r.error;
    art.results["evals"] = r.evals;
    art.results["converged"] = r.converged;
    art.plot_title = "model oscillatory integral";
    art.series.push_back({{{std::max(cfg.lambda, 1.0), std::max(std::abs(r.value), 1e-300)}},
                          "#1f6fb2",
                          "|I(lambda)|"});
}

void cmd_kernel(const ExperimentConfig& cfg, Artifacts& art) {
    PhaseParams params(cfg.m, cfg.n, cfg.k, cfg.l);
    QuadResult r = kernel_K(params, cfg.lambda, cfg.u, cfg.v, cfg.x, cfg.y, CutoffSpec{},
                            quad_of(cfg));
    art.csv_header = "u,v,x,y,lambda,re,im,abs,error,converged";
    art.csv_rows.push_back({fmt_double(cfg.u), fmt_double(cfg.v), fmt_double(cfg.x),
                            fmt_double(cfg.y), fmt_double(cfg.lambda),
                            fmt_double(r.value.real()), fmt_double(r.value.imag()),
                            fmt_double(std::abs(r.value)), fmt_double(r.error),
                            r.converged ? "1" : "0"});
    art.results["value_re"] = r.value.real();
    art.results["value_im"] = r.value.imag();
    art.results["abs"] = std::abs(r.value);
    art.results["converged"] = r.converged;
    art.plot_title = "kernel modulus";
    art.series.push_back({{{std::max(cfg.lambda, 1.0), std::max(std::abs(r.value), 1e-300)}},
                          "#1f6fb2",
                          "|K|"});
}

void cmd_norm(const ExperimentConfig& cfg, Artifacts& art) {
    PhaseParams params(cfg.m, cfg.n, cfg.k, cfg.l);
    NormEstimate est;
    if (cfg.estimator == "witness") {
        WitnessOptions wopt;
        wopt.cells_per_block = cfg.cells_per_block;
        wopt.keep_field = !cfg.dump_field.empty();
        WitnessResult wr =
            witness_ratio_full(params, cfg.lambda, cfg.p, CutoffSpec{}, quad_of(cfg), wopt,
                               cfg.jobs);
        est = wr.estimate;
        if (!cfg.dump_field.empty()) wr.field.write_csv(cfg.dump_field);
    } else {
        GridSpec gs;
        gs.nx = gs.ny = cfg.grid_n;
        gs.nt = cfg.nt;
        AscentOptions aopt;
        aopt.seed = cfg.seed;
        est = ascent_norm(params, cfg.lambda, static_cast<int>(cfg.p), gs, CutoffSpec{}, aopt,
                          cfg.jobs);
        if (est.resolution_warning)
            art.warnings.push_back("grid resolution guard violated at this lambda");
    }
    art.csv_header = "lambda,estimate,kind,converged";
    art.csv_rows.push_back({fmt_double(cfg.lambda), fmt_double(est.value), cfg.estimator,
                            est.converged ? "1" : "0"});
    art.results["estimate"] = est.value;
    art.results["kind"] = cfg.estimator;
    art.results["iterations"] = est.iterations;
    art.results["converged"] = est.converged;
    art.plot_title = "norm estimate";
    art.plot_y = "estimate";
    art.series.push_back(
        {{{cfg.lambda, std::max(est.value, 1e-300)}}, "#1f6fb2", cfg.estimator});
}

void cmd_decay_sweep(const ExperimentConfig& cfg, Artifacts& art) {
    PhaseParams params(cfg.m, cfg.n, cfg.k, cfg.l);
    DecaySweepConfig sc(params, cfg.p);
    sc.lambda_min = cfg.lambda_min;
    sc.lambda_max = cfg.lambda_max;
    sc.num_lambdas = cfg.num_lambdas;
    sc.estimator = cfg.estimator == "witness" ? EstimatorKind::witness : EstimatorKind::ascent;
    sc.witness.cells_per_block = cfg.cells_per_block;
    sc.grid.nx = sc.grid.ny = cfg.grid_n;
    sc.grid.nt = cfg.nt;
    sc.ascent_p = static_cast<int>(cfg.p);
    sc.quad = quad_of(cfg);
    sc.seed = cfg.seed;
    sc.jobs = cfg.jobs;

    SweepResult sr = run_sweep(sc);  // throws runtime_error past the failure threshold

    art.csv_header = "lambda,estimate,kind,converged";
    for (const auto& pt : sr.points)
        art.csv_rows.push_back({fmt_double(pt.lambda), fmt_double(pt.estimate),
                                to_string(sr.estimator), pt.converged ? "1" : "0"});

    std::vector<SweepPoint> good;
    for (const auto& pt : sr.points)
        if (pt.converged && pt.estimate > 0.0) good.push_back(pt);
    if (good.size() < 3)
        throw std::runtime_error("decay-sweep: too few usable points for the fit");
    DecayFitResult fit = fit_exponent(good);
    TheoryReport rep = compare_with_theory(fit, params, cfg.tol_slope);

    art.results["delta_pred"] = rep.delta_pred;
    art.results["delta_low"] = rep.delta_low;
    art.results["slope"] = fit.slope;
    art.results["intercept"] = fit.intercept;
    art.results["r_squared"] = fit.r_squared;
    art.results["sharp"] = rep.sharp;
    art.results["tol_slope"] = rep.tol_slope;
    if (rep.sharp) art.results["pass_sharp"] = rep.pass_sharp;
    art.results["pass_at_least_pred"] = rep.pass_at_least_pred;
    art.results["pass_at_most_low"] = rep.pass_at_most_low;
    art.results["failures"] = sr.failures;
    json table = json::array();
    for (const auto& pt : sr.points)
        table.push_back({{"lambda", pt.lambda},
                         {"estimate", pt.estimate},
                         {"converged", pt.converged}});
    art.results["table"] = table;

    art.plot_title = "norm decay sweep";
    art.plot_y = "estimate";
    SvgSeries pts;
    pts.label = to_string(sr.estimator) + " estimate";
    for (const auto& pt : good) pts.points.push_back({pt.lambda, pt.estimate});
    art.series.push_back(pts);
    art.lines.push_back(fit_line(fit, "fit slope " + fmt_double(fit.slope), "#d95f02", false));
    art.lines.push_back(anchored_line(-rep.delta_pred, good.front().lambda,
                                      good.front().estimate,
                                      "predicted slope " + fmt_double(-rep.delta_pred),
                                      "#2ca02c"));
}

void cmd_vdc_check(const ExperimentConfig& cfg, Artifacts& art) {
    PhaseParams params(cfg.m, cfg.n, cfg.k, cfg.l);
    const std::vector<double> lambdas =
        geometric(cfg.lambda_min, cfg.lambda_max, cfg.num_lambdas);
    VdcReport rep =
        vdc_check(params, lambdas, cfg.samples, CutoffSpec{}, quad_of(cfg), cfg.seed, cfg.jobs);

    art.csv_header = "lambda,max_r,q50,q90,failures";
    int worst_failures = 0;
    for (const auto& row : rep.rows) {
        art.csv_rows.push_back({fmt_double(row.lambda), fmt_double(row.max_r),
                                fmt_double(row.q50), fmt_double(row.q90),
                                std::to_string(row.failures)});
        worst_failures = std::max(worst_failures, row.failures);
    }
    art.results["bounded"] = rep.bounded;
    art.results["samples"] = rep.samples;
    json rows = json::array();
    for (const auto& row : rep.rows)
        rows.push_back({{"lambda", row.lambda},
                        {"max_r", row.max_r},
                        {"q50", row.q50},
                        {"q90", row.q90},
                        {"failures", row.failures}});
    art.results["rows"] = rows;
    if (3 * worst_failures > cfg.samples)
        throw std::runtime_error("vdc-check: more than a third of the samples failed");

    art.plot_title = "kernel bound ratio";
    art.plot_y = "max R";
    SvgSeries pts;
    pts.label = "max R(lambda)";
    for (const auto& row : rep.rows) pts.points.push_back({row.lambda, row.max_r});
    art.series.push_back(pts);
}

void cmd_delta_alpha(const ExperimentConfig& cfg, Artifacts& art) {
    AlphaParam alpha({cfg.alpha_re, cfg.alpha_im});
    const std::vector<double> ts = geometric(cfg.t_min, cfg.t_max, cfg.num_t);
    const QuadratureSpec qspec = quad_of(cfg);
    CutoffSpec cutoff;

    art.csv_header = "t,re,im,modulus";
    std::vector<SweepPoint> pts;
    for (double t : ts) {
        QuadResult r = delta_alpha_fourier(alpha, t, cutoff, qspec);
        art.csv_rows.push_back({fmt_double(t), fmt_double(r.value.real()),
                                fmt_double(r.value.imag()), fmt_double(std::abs(r.value))});
        pts.push_back({t, std::abs(r.value), r.converged});
    }
    DecayFitResult fit = fit_exponent(pts);
    art.results["slope"] = fit.slope;
    art.results["target_slope"] = -cfg.alpha_re;
    art.results["r_squared"] = fit.r_squared;
    art.results["pass"] = std::fabs(fit.slope + cfg.alpha_re) <= 0.1;

    art.plot_title = "fractional density transform decay";
    art.plot_x = "t";
    art.plot_y = "modulus";
    SvgSeries series;
    series.label = "|transform|";
    for (const auto& pt : pts) series.points.push_back({pt.lambda, pt.estimate});
    art.series.push_back(series);
    art.lines.push_back(fit_line(fit, "fit slope " + fmt_double(fit.slope), "#d95f02", false));
    art.lines.push_back(anchored_line(-cfg.alpha_re, pts.front().lambda, pts.front().estimate,
                                      "target slope " + fmt_double(-cfg.alpha_re), "#2ca02c"));
}

void cmd_endpoint_l2(const ExperimentConfig& cfg, Artifacts& art) {
    PhaseParams params(cfg.m, cfg.n, cfg.k, cfg.l);
    L2EndpointConfig ec(params);
    ec.alpha = {cfg.alpha_re, cfg.alpha_im};
    ec.lambdas = geometric(cfg.lambda_min, cfg.lambda_max, cfg.num_lambdas);
    ec.grid.nx = ec.grid.ny = cfg.grid_n;
    ec.quad = quad_of(cfg);
    ec.seed = cfg.seed;
    ec.jobs = cfg.jobs;

    L2EndpointReport rep = l2_endpoint_check(ec);

    art.csv_header = "lambda,norm,iterations,converged";
    for (const auto& pt : rep.points)
        art.csv_rows.push_back({fmt_double(pt.lambda), fmt_double(pt.norm),
                                std::to_string(pt.iterations), pt.converged ? "1" : "0"});
    art.results["target"] = rep.target;
    art.results["slope"] = rep.fit.slope;
    art.results["r_squared"] = rep.fit.r_squared;
    art.results["tol"] = rep.tol;
    art.results["pass"] = rep.pass;
    art.results["all_converged"] = rep.all_converged;
    if (!rep.all_converged)
        art.warnings.push_back("power iteration did not converge at every lambda");

    art.plot_title = "L2 endpoint norm sweep";
    art.plot_y = "operator norm";
    SvgSeries pts;
    pts.label = "||T_K^alpha||";
    for (const auto& pt : rep.points) pts.points.push_back({pt.lambda, pt.norm});
    art.series.push_back(pts);
    art.lines.push_back(
        fit_line(rep.fit, "fit slope " + fmt_double(rep.fit.slope), "#d95f02", false));
    art.lines.push_back(anchored_line(-rep.target, rep.points.front().lambda,
                                      rep.points.front().norm,
                                      "predicted slope " + fmt_double(-rep.target), "#2ca02c"));
}

}  // namespace

RunOutcome run_experiment(ExperimentConfig cfg) {
    RunOutcome outcome;
    json report;
    report["command"] = cfg.command;

    auto finalize = [&](const Artifacts* art) {
        std::error_code ec;
        std::filesystem::create_directories(cfg.out_dir, ec);
        report["config"] = config_to_map(cfg);
        if (art) {
            report["warnings"] = art->warnings;
            report["results"] = art->results;
        }
        if (!outcome.error.empty()) report["errors"] = {outcome.error};
        else report["errors"] = json::array();
        try {
            write_text_file(cfg.out_dir + "/report.json", report.dump(2) + "\n");
            if (art) {
                write_csv(cfg.out_dir + "/results.csv", art->csv_header, art->csv_rows);
                write_loglog_svg(cfg.out_dir + "/plot.svg", art->plot_title, art->plot_x,
                                 art->plot_y, art->series, art->lines);
            }
        } catch (const std::exception& e) {
            if (outcome.exit_code == 0) {
                outcome.exit_code = 3;
                outcome.error = e.what();
            }
        }
    };

    try {
        resolve_config(cfg);
    } catch (const std::exception& e) {
        outcome.exit_code = 2;
        outcome.error = e.what();
        finalize(nullptr);
        return outcome;
    }

    Artifacts art;
    try {
        if (cfg.command == "integrate") cmd_integrate(cfg, art);
        else if (cfg.command == "kernel") cmd_kernel(cfg, art);
        else if (cfg.command == "norm") cmd_norm(cfg, art);
        else if (cfg.command == "decay-sweep") cmd_decay_sweep(cfg, art);
        else if (cfg.command == "vdc-check") cmd_vdc_check(cfg, art);
        else if (cfg.command == "delta-alpha") cmd_delta_alpha(cfg, art);
        else if (cfg.command == "endpoint-l2") cmd_endpoint_l2(cfg, art);
    } catch (const std::invalid_argument& e) {
        outcome.exit_code = 2;
        outcome.error = e.what();
        finalize(nullptr);
        return outcome;
    } catch (const std::domain_error& e) {
        outcome.exit_code = 2;
        outcome.error = e.what();
        finalize(nullptr);
        return outcome;
    } catch (const std::exception& e) {
        outcome.exit_code = 3;
        outcome.error = e.what();
        finalize(nullptr);
        return outcome;
    }

    finalize(&art);
    return outcome;
}

}  // namespace oscillab
