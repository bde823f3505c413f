#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "netepi/continuous.hpp"
#include "netepi/errors.hpp"
#include "netepi/experiment.hpp"
#include "netepi/graph.hpp"
#include "netepi/isolation.hpp"
#include "netepi/meanfield.hpp"
#include "netepi/spectral.hpp"
#include "netepi/stochastic.hpp"
#include "netepi/version.hpp"

using json = nlohmann::json;

namespace {

/// Failure that maps to an error JSON on stderr and a specific exit code.
struct cli_failure {
    int code;
    std::string kind;
    std::string message;
};

struct GraphOptions {
    std::string path;
    std::string family;
    std::size_t n = 0, m = 2, rows = 0, cols = 0;
    double p = 0.0, lambda = 0.0;
    std::uint64_t seed = 1;

    void add_to(CLI::App* app) {
        app->add_option("--graph", path, "Edge-list file");
        app->add_option("--family", family, "Generate instead: binomial|powerlaw|exponential|lattice4");
        app->add_option("--n", n, "Node count");
        app->add_option("--m", m, "Edges per arriving node (powerlaw)");
        app->add_option("--p", p, "Edge probability (binomial)");
        app->add_option("--lambda", lambda, "Rate parameter (exponential)");
        app->add_option("--rows", rows, "Torus rows (lattice4)");
        app->add_option("--cols", cols, "Torus columns (lattice4)");
        app->add_option("--seed", seed, "Generator seed");
    }

    netepi::Graph build() const {
        netepi::GraphSpec spec;
        if (!path.empty()) {
            spec.family = "file";
            spec.path = path;
        } else if (family.empty()) {
            throw cli_failure{2, "validation", "either --graph or --family is required"};
        } else {
            spec.family = family;
        }
        spec.n = n;
        spec.m = m;
        spec.p = p;
        spec.lambda = lambda;
        spec.rows = rows;
        spec.cols = cols;
        spec.seed = seed;
        return netepi::build_graph(spec);
    }
};

struct ParamOptions {
    std::string file;
    std::optional<double> beta, gamma, delta, r, nu, chi;

    void add_to(CLI::App* app) {
        app->add_option("--params", file, "JSON file with beta, gamma, delta, r, nu, chi");
        app->add_option("--beta", beta, "Link up-probability");
        app->add_option("--gamma", gamma, "Resurrection probability");
        app->add_option("--delta", delta, "Failure probability");
        app->add_option("--r", r, "Broadcast probability (default 1)");
        app->add_option("--nu", nu, "Acceptance probability (SIRS, default 1)");
        app->add_option("--chi", chi, "Warned reversion probability (SIRS, default 0)");
    }

    std::map<std::string, double> resolve() const {
        std::map<std::string, double> out{{"r", 1.0}, {"nu", 1.0}, {"chi", 0.0}};
        if (!file.empty()) {
            std::ifstream in(file);
            if (!in)
                throw cli_failure{2, "validation", "cannot open params file '" + file + "'"};
            json j;
            try {
                j = json::parse(in);
                if (j.contains("params"))
                    j = j.at("params");
                for (const auto& [key, value] : j.items())
                    out[key] = value.get<double>();
            } catch (const json::exception& e) {
                throw cli_failure{2, "validation", std::string("bad params file: ") + e.what()};
            }
        }
        const std::pair<const char*, const std::optional<double>*> flags[] = {
            {"beta", &beta}, {"gamma", &gamma}, {"delta", &delta}, {"r", &r}, {"nu", &nu}, {"chi", &chi}};
        for (const auto& [name, value] : flags)
            if (*value)
                out[name] = **value;
        for (const char* key : {"beta", "gamma", "delta"})
            if (!out.count(key))
                throw cli_failure{2, "validation", std::string("missing parameter ") + key};
        return out;
    }

    netepi::NodeParams node_params(std::size_t n) const {
        const auto p = resolve();
        return netepi::NodeParams::homogeneous(n, p.at("r"), p.at("delta"), p.at("gamma"), p.at("nu"), p.at("chi"));
    }
};

/// Writes to `path`, or stdout when path is empty or "-".
template <typename Fn>
void emit(const std::string& path, Fn&& write) {
    if (path.empty() || path == "-") {
        write(std::cout);
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw cli_failure{3, "io", "cannot write '" + path + "'"};
    write(out);
}

json edges_json(const std::vector<netepi::Edge>& edges) {
    json out = json::array();
    for (const auto& e : edges)
        out.push_back({e.u, e.v});
    return out;
}

json report_json(const netepi::IsolationReport& r) {
    json j{{"strategy", r.strategy},
           {"edges_removed", r.edges_removed},
           {"removed_edges", edges_json(r.removed_edges)},
           {"edges_added", r.edges_added},
           {"lambda1_before", r.lambda1_before},
           {"lambda1_after", r.lambda1_after},
           {"score_before", r.score_before ? json(*r.score_before) : json(nullptr)},
           {"score_after", r.score_after ? json(*r.score_after) : json(nullptr)},
           {"fast_extinction_before", r.score_before ? json(*r.score_before < 1.0) : json(nullptr)},
           {"fast_extinction_after", r.score_after ? json(*r.score_after < 1.0) : json(nullptr)},
           {"threshold_crossed", r.threshold_crossed},
           {"connectivity_after", r.components_after}};
    if (!r.lambda1_trace.empty())
        j["lambda1_trace"] = r.lambda1_trace;
    if (r.strategy == "lattice") {
        j["rows"] = r.rows;
        j["cols"] = r.cols;
        j["surplus_nodes"] = r.surplus_nodes;
    }
    return j;
}

netepi::ScoringParams scoring(const ParamOptions& opts) {
    const auto p = opts.resolve();
    return {p.at("r"), p.at("beta"), p.at("delta"), p.at("gamma")};
}

void print_error(const std::string& kind, const std::string& message) {
    std::cerr << json{{"error", kind}, {"message", message}}.dump() << std::endl;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Epidemic spreading on networks: ODE, mean-field, Monte Carlo, spectral and isolation tools"};
    app.set_version_flag("--version", netepi::version);
    app.require_subcommand(1);

    // generate
    GraphOptions gen_graph;
    std::string gen_out;
    auto* generate = app.add_subcommand("generate", "Generate a graph and write it as an edge list");
    gen_graph.add_to(generate);
    generate->add_option("-o,--out", gen_out, "Output edge list (default stdout)");

    // ode
    std::string ode_model = "sir", ode_out;
    double ode_beta = 0.8, ode_gamma = 0.1, ode_mu = 0.0, ode_i0 = 0.001, ode_dt = 0.01, ode_t_end = 100.0;
    std::optional<double> ode_s0;
    std::size_t ode_every = 1;
    auto* ode_cmd = app.add_subcommand("ode", "Integrate a classical compartment model");
    ode_cmd->add_option("--model", ode_model, "sir|sir_endemic|sis")->check(CLI::IsMember({"sir", "sir_epidemic", "sir_endemic", "sis"}));
    ode_cmd->add_option("--beta", ode_beta, "Contact rate");
    ode_cmd->add_option("--gamma", ode_gamma, "Recovery rate");
    ode_cmd->add_option("--mu", ode_mu, "Birth/death rate (sir_endemic)");
    ode_cmd->add_option("--i0", ode_i0, "Initial infected fraction");
    ode_cmd->add_option("--s0", ode_s0, "Initial susceptible fraction (default 1 - i0)");
    ode_cmd->add_option("--dt", ode_dt, "Step size");
    ode_cmd->add_option("--t-end", ode_t_end, "Horizon");
    ode_cmd->add_option("--record-every", ode_every, "Keep every k-th step");
    ode_cmd->add_option("-o,--out", ode_out, "Output CSV (default stdout)");

    // meanfield
    GraphOptions mf_graph;
    ParamOptions mf_params;
    std::string mf_model = "sis", mf_out;
    double mf_p0 = 0.1, mf_tol = 1e-10;
    std::size_t mf_steps = 500;
    bool mf_allow_negative = false;
    auto* mf_cmd = app.add_subcommand("meanfield", "Iterate the discrete mean-field model on a graph");
    mf_graph.add_to(mf_cmd);
    mf_params.add_to(mf_cmd);
    mf_cmd->add_option("--model", mf_model, "sis|sirs")->check(CLI::IsMember({"sis", "sirs"}));
    mf_cmd->add_option("--p0", mf_p0, "Initial infected probability on every node");
    mf_cmd->add_option("--steps", mf_steps, "Maximum steps");
    mf_cmd->add_option("--tol", mf_tol, "Convergence threshold on the max-norm state change (0 disables)");
    mf_cmd->add_flag("--allow-negative-coefficients", mf_allow_negative,
                     "Run SIRS with chi + delta > 1; bound violations are reported instead of fatal");
    mf_cmd->add_option("-o,--out", mf_out, "Output CSV (default stdout)");

    // mc
    GraphOptions mc_graph;
    ParamOptions mc_params;
    std::string mc_model = "sis", mc_out;
    double mc_init = 0.1;
    std::size_t mc_steps = 100, mc_runs = 100;
    std::uint64_t mc_seed = 1;
    auto* mc_cmd = app.add_subcommand("mc", "Monte Carlo ensemble of the node state machines");
    mc_graph.add_to(mc_cmd);
    mc_params.add_to(mc_cmd);
    mc_cmd->add_option("--model", mc_model, "sis|sirs")->check(CLI::IsMember({"sis", "sirs"}));
    mc_cmd->add_option("--init", mc_init, "Initial infected fraction");
    mc_cmd->add_option("--steps", mc_steps, "Steps per run");
    mc_cmd->add_option("--runs", mc_runs, "Number of runs");
    mc_cmd->add_option("--mc-seed", mc_seed, "Master seed of the ensemble");
    mc_cmd->add_option("-o,--out", mc_out, "Output CSV (default stdout)");

    // spectral
    GraphOptions sp_graph;
    ParamOptions sp_params;
    std::string sp_vector;
    double sp_tol = 1e-10, sp_band = 1e-3;
    bool sp_threshold = false;
    auto* sp_cmd = app.add_subcommand("spectral", "Survivability score of the system matrix");
    sp_graph.add_to(sp_cmd);
    sp_params.add_to(sp_cmd);
    sp_cmd->add_option("--tol", sp_tol, "Power-iteration residual tolerance");
    sp_cmd->add_option("--critical-band", sp_band, "Scores within this distance of 1 are critical");
    sp_cmd->add_option("--eigenvector", sp_vector, "Write the dominant eigenvector as CSV");
    sp_cmd->add_flag("--threshold", sp_threshold, "Also print lambda1 of the adjacency and the homogeneous thresholds");

    // isolate
    GraphOptions iso_graph;
    ParamOptions iso_params;
    std::string iso_strategy = "greedy", iso_out;
    std::size_t iso_k = 0;
    netepi::node_t iso_start = 0;
    auto* iso_cmd = app.add_subcommand("isolate", "Apply an edge-modification isolation strategy");
    iso_graph.add_to(iso_cmd);
    iso_params.add_to(iso_cmd);
    iso_cmd->add_option("--strategy", iso_strategy, "greedy|cycle|lattice")->check(CLI::IsMember({"greedy", "cycle", "lattice"}));
    iso_cmd->add_option("--k", iso_k, "Edges to remove (greedy)");
    iso_cmd->add_option("--start", iso_start, "Start node of the cycle walk");
    iso_cmd->add_option("-o,--out", iso_out, "Write the modified graph to this edge list");

    // sweep
    std::string sweep_config, sweep_out;
    auto* sweep_cmd = app.add_subcommand("sweep", "Run a JSON experiment configuration");
    sweep_cmd->add_option("--config", sweep_config, "Experiment configuration (JSON)")->required();
    sweep_cmd->add_option("--out", sweep_out, "Output directory (default: the config name)");

    // reproduce-figures
    std::string fig_out = "figures";
    auto* fig_cmd = app.add_subcommand("reproduce-figures", "Run the bundled figure configurations");
    fig_cmd->add_option("--out", fig_out, "Output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        print_error("usage", e.what());
        return 2;
    }

    try {
        if (*generate) {
            const auto g = gen_graph.build();
            if (gen_out.empty() || gen_out == "-") {
                netepi::save_edge_list(g, std::cout);
            } else {
                emit(gen_out, [&](std::ostream& out) { netepi::save_edge_list(g, out); });
                json summary{{"nodes", g.node_count()},
                             {"edges", g.edge_count()},
                             {"max_degree", g.max_degree()},
                             {"components", netepi::connected_components(g)}};
                std::cout << summary.dump() << std::endl;
            }
        } else if (*ode_cmd) {
            const auto model = netepi::ode::parse_model(ode_model);
            const double s0 = ode_s0 ? *ode_s0 : 1.0 - ode_i0;
            const double r0 = model == netepi::ode::Model::sis ? 0.0 : 1.0 - s0 - ode_i0;
            const auto tr = netepi::ode::integrate(model, {s0, ode_i0, r0}, {ode_beta, ode_gamma, ode_mu}, ode_dt,
                                                   ode_t_end, ode_every);
            emit(ode_out, [&](std::ostream& out) { netepi::ode::write_csv(out, tr); });
        } else if (*mf_cmd) {
            const auto g = mf_graph.build();
            const auto p = mf_params.resolve();
            const auto links = netepi::LinkProbs::uniform(g, p.at("beta"));
            const auto params = mf_params.node_params(g.node_count());
            netepi::MfRunOptions opts;
            opts.max_steps = mf_steps;
            opts.tol = mf_tol;
            opts.allow_negative_coefficients = mf_allow_negative;
            const auto run = netepi::run_meanfield(netepi::parse_discrete_model(mf_model),
                                                   netepi::MfState::uniform(g.node_count(), mf_p0), links, params,
                                                   opts);
            emit(mf_out, [&](std::ostream& out) { netepi::write_csv(out, run.rows); });
            if (!run.violations.empty())
                std::cerr << json{{"warning", "bound_violations"}, {"count", run.violations.size()}}.dump()
                          << std::endl;
        } else if (*mc_cmd) {
            const auto g = mc_graph.build();
            const auto p = mc_params.resolve();
            const auto links = netepi::LinkProbs::uniform(g, p.at("beta"));
            const auto params = mc_params.node_params(g.node_count());
            const auto ens = netepi::mc_ensemble(g, links, params, netepi::parse_discrete_model(mc_model), mc_init,
                                                 mc_steps, mc_runs, mc_seed);
            emit(mc_out, [&](std::ostream& out) { netepi::write_csv(out, ens); });
        } else if (*sp_cmd) {
            const auto g = sp_graph.build();
            const auto p = sp_params.resolve();
            const auto links = netepi::LinkProbs::uniform(g, p.at("beta"));
            const auto params = sp_params.node_params(g.node_count());
            const auto s = netepi::survivability_score(g, links, params, sp_tol, sp_band);
            std::cout.precision(12);
            std::cout << "s=" << s.score << " fast_extinction=" << netepi::verdict_name(s.verdict) << "\n";
            if (sp_threshold) {
                const double lambda1 = netepi::adjacency_spectral_radius(g).value;
                const auto t = netepi::homogeneous_threshold(p.at("delta"), p.at("gamma"), p.at("r"), p.at("beta"),
                                                             lambda1);
                std::cout << "lambda1=" << lambda1 << "\n"
                          << "threshold_printed=" << t.printed << " fast_extinction="
                          << (t.printed_fast_extinction ? "true" : "false") << "\n"
                          << "threshold_with_broadcast=" << t.with_broadcast << " fast_extinction="
                          << (t.with_broadcast_fast_extinction ? "true" : "false") << "\n";
            }
            if (!sp_vector.empty()) {
                emit(sp_vector, [&](std::ostream& out) {
                    out.precision(15);
                    out << "node,value\n";
                    for (std::size_t i = 0; i < s.spectrum.vector.size(); ++i)
                        out << i << ',' << s.spectrum.vector[i] << '\n';
                });
            }
        } else if (*iso_cmd) {
            const auto g = iso_graph.build();
            const auto sp = scoring(iso_params);
            std::optional<std::pair<netepi::Graph, netepi::IsolationReport>> result;
            if (iso_strategy == "greedy") {
                result = netepi::greedy_edge_removal(g, iso_k);
            } else if (iso_strategy == "lattice") {
                result = netepi::rewire_to_lattice(g);
            } else {
                const auto search = netepi::nn_hamiltonian_cycle(g, iso_start);
                if (!search.success) {
                    std::cout << json{{"strategy", "cycle"},
                                      {"success", false},
                                      {"diagnostic", search.diagnostic},
                                      {"partial_path", search.path}}
                                     .dump()
                              << std::endl;
                    return 1;
                }
                result = netepi::prune_to_cycle(g, search.path);
            }
            auto report = netepi::evaluate_strategy(g, result->first, sp, result->second);
            if (!iso_out.empty())
                emit(iso_out, [&](std::ostream& out) { netepi::save_edge_list(result->first, out); });
            std::cout << report_json(report).dump() << std::endl;
        } else if (*sweep_cmd) {
            std::ifstream in(sweep_config);
            if (!in)
                throw cli_failure{2, "validation", "cannot open config '" + sweep_config + "'"};
            std::stringstream text;
            text << in.rdbuf();
            const auto config = netepi::parse_config(text.str());
            const auto result = netepi::run_experiment(config, sweep_out.empty() ? config.name : sweep_out);
            std::size_t failed = 0;
            for (const auto& p : result.points)
                failed += p.error ? 1 : 0;
            std::cout << json{{"manifest", (result.directory / "manifest.json").string()},
                              {"config_hash", result.config_hash},
                              {"points", result.points.size()},
                              {"failed_points", failed}}
                             .dump()
                      << std::endl;
        } else if (*fig_cmd) {
            const auto report = netepi::reproduce_figures(fig_out);
            for (const auto& c : report.claims)
                std::cout << (c.holds ? "[holds] " : "[fails] ") << c.figure << ": " << c.claim << "\n";
        }
    } catch (const cli_failure& f) {
        print_error(f.kind, f.message);
        return f.code;
    } catch (const netepi::config_error& e) {
        print_error("validation", e.what());
        return 2;
    } catch (const netepi::parse_error& e) {
        print_error("parse", e.what());
        return 2;
    } catch (const std::invalid_argument& e) {
        print_error("validation", e.what());
        return 2;
    } catch (const std::exception& e) {
        print_error("runtime", e.what());
        return 3;
    }
    return 0;
}
