#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "oscillab/cli.hpp"
#include "oscillab/io.hpp"

using namespace oscillab;
using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path fresh_dir(const std::string& name) {
    fs::path dir = fs::temp_directory_path() / ("oscillab_test_" + name);
    fs::remove_all(dir);
    return dir;
}

}  // namespace

TEST_CASE("config file parsing: comments, spacing, unknown keys") {
    fs::path cfg = fs::temp_directory_path() / "oscillab_cfg_test.ini";
    {
        std::ofstream out(cfg);
        out << "# comment\n"
            << "  m = 1\n"
            << "lambda-min=32\n"
            << "; another comment\n"
            << "estimator = witness\n";
    }
    auto kv = parse_config_file(cfg.string());
    CHECK(kv.at("m") == "1");
    CHECK(kv.at("lambda-min") == "32");
    CHECK(kv.at("estimator") == "witness");

    {
        std::ofstream out(cfg);
        out << "not-a-key = 3\n";
    }
    CHECK_THROWS_AS(parse_config_file(cfg.string()), std::invalid_argument);

    {
        std::ofstream out(cfg);
        out << "just some text\n";
    }
    CHECK_THROWS_AS(parse_config_file(cfg.string()), std::invalid_argument);
    fs::remove(cfg);
}

TEST_CASE("apply_config_entry type checks") {
    ExperimentConfig cfg;
    apply_config_entry(cfg, "k", "3");
    CHECK(cfg.k == 3);
    apply_config_entry(cfg, "lambda-max", "4096");
    CHECK(cfg.lambda_max == 4096.0);
    CHECK_THROWS_AS(apply_config_entry(cfg, "k", "three"), std::invalid_argument);
    CHECK_THROWS_AS(apply_config_entry(cfg, "nonsense", "1"), std::invalid_argument);
}

TEST_CASE("resolve_config fills defaults and validates invariants") {
    ExperimentConfig cfg;
    cfg.command = "decay-sweep";
    resolve_config(cfg);
    CHECK(cfg.p == 6.0);  // 2k+2 for k=2
    CHECK(cfg.lambda_min == 64.0);
    CHECK(cfg.lambda_max == 16384.0);
    CHECK(cfg.num_lambdas == 9);
    CHECK(cfg.tol_slope == doctest::Approx(0.02 * 1.25));

    ExperimentConfig bad;
    bad.command = "decay-sweep";
    bad.k = 1;
    bad.l = 2;
    CHECK_THROWS_WITH_AS(resolve_config(bad),
                         doctest::Contains("k > l"), std::invalid_argument);

    ExperimentConfig unknown;
    unknown.command = "frobnicate";
    CHECK_THROWS_AS(resolve_config(unknown), std::invalid_argument);

    ExperimentConfig ep;
    ep.command = "endpoint-l2";
    resolve_config(ep);
    CHECK(ep.lambda_min == 16.0);
    CHECK(ep.lambda_max == 512.0);
    CHECK(ep.num_lambdas == 6);
    CHECK(ep.grid_n == 48);
}

TEST_CASE("run_experiment: validation failures give exit 2 and a report") {
    ExperimentConfig cfg;
    cfg.command = "decay-sweep";
    cfg.k = 1;
    cfg.l = 2;
    cfg.out_dir = fresh_dir("bad").string();
    RunOutcome out = run_experiment(cfg);
    CHECK(out.exit_code == 2);
    CHECK(!out.error.empty());
    json rep = json::parse(slurp(fs::path(cfg.out_dir) / "report.json"));
    CHECK(rep["errors"].size() == 1);
}

TEST_CASE("integrate command writes the expected single row") {
    ExperimentConfig cfg;
    cfg.command = "integrate";
    cfg.lambda = 0.0;
    cfg.out_dir = fresh_dir("integrate").string();
    RunOutcome out = run_experiment(cfg);
    REQUIRE(out.exit_code == 0);
    const std::string csv = slurp(fs::path(cfg.out_dir) / "results.csv");
    CHECK(csv.find("lambda,re,im,abs,error,evals,converged\n") == 0);
    CHECK(csv.find("\n0,0.99999999999999") != std::string::npos);
    const std::string svg = slurp(fs::path(cfg.out_dir) / "plot.svg");
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.rfind("</svg>") != std::string::npos);
}

TEST_CASE("decay-sweep artifacts, determinism, and config round-trip") {
    ExperimentConfig cfg;
    cfg.command = "decay-sweep";
    cfg.lambda_min = 16.0;
    cfg.lambda_max = 256.0;
    cfg.num_lambdas = 4;
    cfg.out_dir = fresh_dir("sweep_a").string();
    RunOutcome out = run_experiment(cfg);
    REQUIRE(out.exit_code == 0);

    json rep = json::parse(slurp(fs::path(cfg.out_dir) / "report.json"));
    CHECK(rep["results"]["delta_pred"] == 0.25);
    CHECK(rep["results"]["delta_low"] == 0.25);
    CHECK(rep["results"].contains("pass_sharp"));
    CHECK(rep["results"]["table"].size() == 4);
    CHECK(rep["config"]["num-lambdas"] == "4");

    // identical run reproduces identical bytes
    ExperimentConfig cfg2 = cfg;
    cfg2.out_dir = fresh_dir("sweep_b").string();
    REQUIRE(run_experiment(cfg2).exit_code == 0);
    CHECK(slurp(fs::path(cfg.out_dir) / "results.csv") ==
          slurp(fs::path(cfg2.out_dir) / "results.csv"));

    // rebuilding the config from the echoed map reproduces the same results
    ExperimentConfig cfg3;
    for (auto& [key, value] : rep["config"].items()) {
        if (key == "command") {
            cfg3.command = value.get<std::string>();
            continue;
        }
        if (key == "out") continue;
        apply_config_entry(cfg3, key, value.get<std::string>());
    }
    cfg3.out_dir = fresh_dir("sweep_c").string();
    REQUIRE(run_experiment(cfg3).exit_code == 0);
    CHECK(slurp(fs::path(cfg.out_dir) / "results.csv") ==
          slurp(fs::path(cfg3.out_dir) / "results.csv"));
}

TEST_CASE("non-sharp case reports both exponents and no equality flag") {
    ExperimentConfig cfg;
    cfg.command = "decay-sweep";
    cfg.m = 1;
    cfg.n = 1;
    cfg.k = 3;
    cfg.l = 2;
    cfg.lambda_min = 16.0;
    cfg.lambda_max = 128.0;
    cfg.num_lambdas = 4;
    cfg.out_dir = fresh_dir("nonsharp").string();
    RunOutcome out = run_experiment(cfg);
    REQUIRE(out.exit_code == 0);
    json rep = json::parse(slurp(fs::path(cfg.out_dir) / "report.json"));
    CHECK(rep["results"]["delta_pred"] == 0.1875);
    CHECK(rep["results"]["delta_low"] == 0.25);
    CHECK(rep["results"]["sharp"] == false);
    CHECK_FALSE(rep["results"].contains("pass_sharp"));
    CHECK(rep["results"].contains("pass_at_least_pred"));
    CHECK(rep["results"].contains("pass_at_most_low"));
}

TEST_CASE("norm command with field dump") {
    ExperimentConfig cfg;
    cfg.command = "norm";
    cfg.lambda = 32.0;
    cfg.out_dir = fresh_dir("norm").string();
    cfg.dump_field = (fs::path(cfg.out_dir) / "field.csv").string();
    fs::create_directories(cfg.out_dir);
    RunOutcome out = run_experiment(cfg);
    REQUIRE(out.exit_code == 0);
    const std::string field = slurp(cfg.dump_field);
    CHECK(field.find("i,j,x,y,re,im\n") == 0);
    const std::string csv = slurp(fs::path(cfg.out_dir) / "results.csv");
    CHECK(csv.find("lambda,estimate,kind,converged\n") == 0);
    CHECK(csv.find("witness") != std::string::npos);
}

TEST_CASE("delta-alpha command emits the transform sweep schema") {
    ExperimentConfig cfg;
    cfg.command = "delta-alpha";
    cfg.num_t = 6;
    cfg.t_max = 64.0;
    cfg.out_dir = fresh_dir("da").string();
    RunOutcome out = run_experiment(cfg);
    REQUIRE(out.exit_code == 0);
    const std::string csv = slurp(fs::path(cfg.out_dir) / "results.csv");
    CHECK(csv.find("t,re,im,modulus\n") == 0);
    json rep = json::parse(slurp(fs::path(cfg.out_dir) / "report.json"));
    CHECK(rep["results"]["target_slope"] == -1.0);
}

TEST_CASE("vdc-check writes ratio rows") {
    ExperimentConfig cfg;
    cfg.command = "vdc-check";
    cfg.samples = 20;
    cfg.lambda_min = 50.0;
    cfg.lambda_max = 500.0;
    cfg.num_lambdas = 2;
    cfg.out_dir = fresh_dir("vdc").string();
    RunOutcome out = run_experiment(cfg);
    REQUIRE(out.exit_code == 0);
    const std::string csv = slurp(fs::path(cfg.out_dir) / "results.csv");
    CHECK(csv.find("lambda,max_r,q50,q90,failures\n") == 0);
    json rep = json::parse(slurp(fs::path(cfg.out_dir) / "report.json"));
    CHECK(rep["results"]["rows"].size() == 2);
}

TEST_CASE("fmt_double round-trips exactly") {
    for (double v : {0.1, 1.0 / 3.0, 1e-300, 12345.6789, -0.25}) {
        CHECK(std::stod(fmt_double(v)) == v);
    }
}
