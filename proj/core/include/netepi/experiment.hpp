#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "netepi/graph.hpp"

namespace netepi {

/// Invalid experiment configuration. Raised before any computation starts.
class config_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class ExperimentModel {
    sir_ode,
    sir_endemic_ode,
    sis_ode,
    sis_meanfield,
    sirs_meanfield,
    sis_mc,
    sirs_mc,
};

std::string_view model_name(ExperimentModel m);
bool is_graph_model(ExperimentModel m);

struct GraphSpec {
    std::string family;  // binomial | powerlaw | exponential | lattice4 | file
    std::size_t n = 0;
    std::size_t m = 0;
    double p = 0.0;
    double lambda = 0.0;
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::uint64_t seed = 0;
    std::string path;
};

Graph build_graph(const GraphSpec& spec);

struct SweepSpec {
    std::vector<std::string> parameters;  // all move together: value = base + k * increment
    double increment = 0.0;
    std::size_t count = 1;
    std::optional<double> base;  // overrides the params-block value of every swept parameter
};

struct RunSpec {
    std::size_t steps = 500;  // mean-field and Monte Carlo
    double dt = 0.01;
    double t_end = 100.0;
    double tol = 1e-10;       // mean-field convergence
    std::size_t runs = 100;   // Monte Carlo
    std::uint64_t seed = 1;   // Monte Carlo master seed
    std::size_t record_every = 1;
    bool allow_negative_coefficients = false;
};

/*
 * Parameter names: beta, gamma, delta, r, nu, chi, mu and the initial
 * conditions p0 (graph models), s0, i0 (ODE models). Any of them can be swept.
 */
struct ExperimentConfig {
    std::string name = "experiment";
    std::string claim;  // free text: what the run is meant to show
    ExperimentModel model = ExperimentModel::sis_ode;
    std::optional<GraphSpec> graph;
    std::map<std::string, double> params;
    SweepSpec sweep;
    RunSpec run;

    double param(const std::string& key) const;
};

/// Parses and validates a JSON document. Throws config_error.
ExperimentConfig parse_config(std::string_view json_text);
/// Canonical JSON (sorted keys, defaults filled in).
std::string to_json(const ExperimentConfig& config);
/// 16 hex digits of FNV-1a over to_json(config).
std::string config_hash(const ExperimentConfig& config);

struct SweepPoint {
    std::size_t index = 0;
    std::map<std::string, double> swept;
    std::string file;                    // relative to the output directory; empty on error
    std::optional<double> score;         // survivability score, graph models
    std::map<std::string, double> terminal;  // final-row observables
    std::optional<std::string> error;
};

struct SweepResult {
    std::string config_hash;
    std::vector<SweepPoint> points;
    std::filesystem::path directory;
};

/*
 * Runs every sweep point and writes <name>_<k>.csv per point plus
 * manifest.json into `out_dir`. A point that fails at run time is recorded in
 * the manifest and the remaining points still run.
 */
SweepResult run_experiment(const ExperimentConfig& config, const std::filesystem::path& out_dir);

/// Configurations for the published figures, each naming the claim it checks.
std::vector<ExperimentConfig> figure_configs();

struct ClaimCheck {
    std::string figure;
    std::string claim;
    bool holds = false;
    std::string detail;
};

struct FigureReport {
    std::vector<SweepResult> results;
    std::vector<ClaimCheck> claims;
};

/// Runs figure_configs() into one subdirectory each and writes summary.csv
/// and claims.json at the top of `out_dir`.
FigureReport reproduce_figures(const std::filesystem::path& out_dir);

}  // namespace netepi
