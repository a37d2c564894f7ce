#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace oscillab {

/// Flat experiment description shared by every subcommand. Values of -1 on
/// the schedule/grid fields mean "use the command's default"; resolve()
/// fills them in, so the echoed config is always fully explicit.
struct ExperimentConfig {
    std::string command;

    int m = 1, n = 2, k = 2, l = 1;
    double p = -1.0;  // resolved to 2k+2

    double lambda = 256.0;  // single-lambda commands
    double lambda_min = -1.0, lambda_max = -1.0;
    int num_lambdas = -1;

    int grid_n = -1;  // uniform nodes per axis where a grid is used
    int nt = 128;
    std::string estimator = "witness";
    double tol_slope = -1.0;  // resolved to 0.02 * (1 + delta_pred)
    std::uint64_t seed = 1;
    int jobs = -1;
    std::string out_dir = "out";

    int samples = 200;                      // vdc-check
    double alpha_re = 1.0, alpha_im = 0.0;  // delta-alpha, endpoint-l2
    double t_min = 2.0, t_max = 1024.0;     // delta-alpha sweep
    int num_t = 10;
    int cells_per_block = 12;  // witness grading
    double abs_tol = 1e-10, rel_tol = 1e-8;

    double x = 0.3, y = 0.0, u = 0.1, v = 0.0;  // kernel probe point
    double a = 0.0, b = 1.0;                    // integrate interval
    int phase_k = 2;                            // integrate phase t^k
    std::string dump_field;  // optional CSV of the witness field (norm command)
};

/// Known config keys in emission order (identical to the long flag names).
const std::vector<std::string>& config_keys();

/// Sets one field from its textual form; throws std::invalid_argument for
/// unknown keys or unparsable values.
void apply_config_entry(ExperimentConfig& cfg, const std::string& key,
                        const std::string& value);

/// key = value lines, '#'/';' comments. Unknown keys are rejected.
std::map<std::string, std::string> parse_config_file(const std::string& path);

/// Fully resolved echo of the config (after resolve_config).
std::map<std::string, std::string> config_to_map(const ExperimentConfig& cfg);

/// Fills command-dependent defaults and validates invariants; throws
/// std::invalid_argument naming the violated constraint.
void resolve_config(ExperimentConfig& cfg);

struct RunOutcome {
    int exit_code = 0;  // 0 ok, 2 validation error, 3 numerical failure threshold
    std::string error;
};

/// Executes the configured command and writes results.csv, report.json and
/// plot.svg into the output directory. Never throws; failures are encoded
/// in the outcome and, when possible, in report.json.
RunOutcome run_experiment(ExperimentConfig cfg);

}  // namespace oscillab
