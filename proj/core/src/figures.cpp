#include <cmath>
#include <functional>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "netepi/experiment.hpp"
#include "netepi/version.hpp"

namespace netepi {

namespace {

// Shared substrates for the graph figures: same node count for both topologies.
constexpr const char* powerlaw_graph = R"({"family": "powerlaw", "n": 1000, "m": 2, "seed": 20240601})";
constexpr const char* lattice_graph = R"({"family": "lattice4", "rows": 25, "cols": 40})";

std::string graph_config(const char* name, const char* claim, const char* model, const char* graph,
                         const char* params, const char* sweep, const char* run) {
    std::ostringstream s;
    s << R"({"name": ")" << name << R"(", "claim": ")" << claim << R"(", "model": ")" << model
      << R"(", "graph": )" << graph << R"(, "params": )" << params << R"(, "sweep": )" << sweep
      << R"(, "run": )" << run << "}";
    return s.str();
}

const ExperimentConfig* find(const std::vector<ExperimentConfig>& configs, const std::string& name) {
    for (const auto& c : configs)
        if (c.name == name)
            return &c;
    return nullptr;
}

const SweepResult* find_result(const FigureReport& report, const std::vector<ExperimentConfig>& configs,
                               const std::string& name) {
    for (std::size_t k = 0; k < configs.size(); ++k)
        if (configs[k].name == name)
            return &report.results[k];
    return nullptr;
}

std::string format(double v) {
    std::ostringstream s;
    s.precision(6);
    s << v;
    return s.str();
}

ClaimCheck check_each_point(const std::string& figure, const std::string& claim, const SweepResult& r,
                            const std::function<bool(const SweepPoint&, std::string&)>& pred) {
    ClaimCheck check{figure, claim, true, ""};
    for (const auto& p : r.points) {
        std::string note;
        bool ok = !p.error && pred(p, note);
        if (p.error)
            note = "error: " + *p.error;
        check.holds = check.holds && ok;
        check.detail += "point " + std::to_string(p.index) + (ok ? " ok" : " FAILS") +
                        (note.empty() ? "" : " (" + note + ")") + "; ";
    }
    return check;
}

ClaimCheck check_ordering(const std::string& claim, const SweepResult& powerlaw, const SweepResult& lattice) {
    ClaimCheck check{"topology", claim, true, ""};
    for (std::size_t k = 0; k < powerlaw.points.size() && k < lattice.points.size(); ++k) {
        const auto& a = powerlaw.points[k].score;
        const auto& b = lattice.points[k].score;
        const bool ok = a && b && *a > *b;
        check.holds = check.holds && ok;
        check.detail += "point " + std::to_string(k) + ": " + (a ? format(*a) : "n/a") + " vs " +
                        (b ? format(*b) : "n/a") + (ok ? "" : " FAILS") + "; ";
    }
    return check;
}

}  // namespace

std::vector<ExperimentConfig> figure_configs() {
    const char* sis_a = R"({"delta": 0.1, "gamma": 0.1, "beta": 0.1, "r": 1.0, "p0": 0.1})";
    const char* sweep_a = R"({"parameters": ["gamma", "beta"], "increment": 0.05, "count": 5})";
    const char* sis_b = R"({"delta": 0.5, "gamma": 0.3, "beta": 0.4, "r": 1.0, "p0": 0.1})";
    const char* sweep_b = R"({"parameters": ["delta"], "increment": 0.05, "count": 5})";
    const char* sirs = R"({"delta": 0.6, "gamma": 0.6, "nu": 1.0, "chi": 1.0, "beta": 0.3, "r": 1.0, "p0": 0.1})";
    const char* sweep_sirs = R"({"parameters": ["gamma"], "increment": 0.05, "count": 5})";
    const char* run_mf = R"({"steps": 500, "tol": 1e-12})";
    const char* run_unchecked = R"({"steps": 500, "tol": 1e-12, "allow_negative_coefficients": true})";

    const std::vector<std::string> docs = {
        R"({"name": "sir_phase", "model": "sir_ode",
            "claim": "infected fraction reaches a single peak and then decays",
            "params": {"beta": 0.8, "gamma": 0.1}, "initial": {"s0": 0.999, "i0": 0.001},
            "run": {"dt": 0.01, "t_end": 100, "record_every": 10}})",
        R"({"name": "sis_phase", "model": "sis_ode",
            "claim": "infected fraction rises monotonically to the equilibrium 1 - gamma/beta = 0.9",
            "params": {"beta": 1.0, "gamma": 0.1}, "initial": {"s0": 0.99, "i0": 0.01},
            "run": {"dt": 0.01, "t_end": 100, "record_every": 10}})",
        graph_config("sis_powerlaw_a", "terminal infected exceeds terminal susceptible", "sis_meanfield",
                     powerlaw_graph, sis_a, sweep_a, run_mf),
        graph_config("sis_lattice_a", "same parameters on the lattice; compared by survivability score",
                     "sis_meanfield", lattice_graph, sis_a, sweep_a, run_mf),
        graph_config("sis_powerlaw_b", "terminal infected exceeds terminal susceptible", "sis_meanfield",
                     powerlaw_graph, sis_b, sweep_b, run_mf),
        graph_config("sis_powerlaw_b_unchecked",
                     "as sis_powerlaw_b with out-of-range updates reported instead of rejected", "sis_meanfield",
                     powerlaw_graph, sis_b, sweep_b, run_unchecked),
        graph_config("sis_lattice_b", "expected carriers decay to zero (fast extinction)", "sis_meanfield",
                     lattice_graph, sis_b, sweep_b, run_mf),
        graph_config("sirs_powerlaw", "terminal infected exceeds terminal susceptible", "sirs_meanfield",
                     powerlaw_graph, sirs, sweep_sirs, run_unchecked),
        graph_config("sirs_lattice", "same parameters on the lattice; compared by survivability score",
                     "sirs_meanfield", lattice_graph, sirs, sweep_sirs, run_unchecked),
    };
    std::vector<ExperimentConfig> out;
    for (const auto& d : docs)
        out.push_back(parse_config(d));
    return out;
}

FigureReport reproduce_figures(const std::filesystem::path& out_dir) {
    using json = nlohmann::json;
    std::filesystem::create_directories(out_dir);
    const auto configs = figure_configs();

    FigureReport report;
    for (const auto& c : configs) {
        std::ofstream(out_dir / (c.name + ".config.json"), std::ios::binary) << to_json(c) << "\n";
        report.results.push_back(run_experiment(c, out_dir / c.name));
    }

    auto result = [&](const char* name) -> const SweepResult& { return *find_result(report, configs, name); };

    report.claims.push_back(check_each_point("sir_phase", find(configs, "sir_phase")->claim, result("sir_phase"),
                                             [](const SweepPoint& p, std::string& note) {
                                                 note = "interior maxima = " + format(p.terminal.at("interior_maxima"));
                                                 return p.terminal.at("interior_maxima") == 1.0;
                                             }));
    report.claims.push_back(check_each_point(
        "sis_phase", find(configs, "sis_phase")->claim, result("sis_phase"), [](const SweepPoint& p, std::string& note) {
            note = "i(t_end) = " + format(p.terminal.at("i"));
            return p.terminal.at("i_non_decreasing") == 1.0 && std::abs(p.terminal.at("i") - 0.9) < 1e-6;
        }));
    auto infected_dominates = [](const SweepPoint& p, std::string& note) {
        note = "p = " + format(p.terminal.at("mean_p")) + ", q = " + format(p.terminal.at("mean_q"));
        return p.terminal.at("mean_p") > p.terminal.at("mean_q");
    };
    for (const char* name : {"sis_powerlaw_a", "sis_powerlaw_b", "sis_powerlaw_b_unchecked", "sirs_powerlaw"})
        report.claims.push_back(check_each_point(name, find(configs, name)->claim, result(name), infected_dominates));
    report.claims.push_back(check_each_point(
        "sis_lattice_b", find(configs, "sis_lattice_b")->claim, result("sis_lattice_b"),
        [](const SweepPoint& p, std::string& note) {
            note = "s = " + (p.score ? format(*p.score) : std::string("n/a")) +
                   ", carriers = " + format(p.terminal.at("carriers"));
            return p.terminal.at("carriers") < 1e-6 * p.terminal.at("initial_carriers");
        }));
    report.claims.push_back(check_ordering("power-law survivability score exceeds lattice score",
                                           result("sis_powerlaw_a"), result("sis_lattice_a")));
    report.claims.push_back(check_ordering("power-law survivability score exceeds lattice score",
                                           result("sis_powerlaw_b"), result("sis_lattice_b")));
    report.claims.push_back(check_ordering("power-law survivability score exceeds lattice score",
                                           result("sirs_powerlaw"), result("sirs_lattice")));

    std::ostringstream summary;
    summary.precision(10);
    summary << "figure,point,swept,score,fast_extinction,terminal,error\n";
    for (std::size_t k = 0; k < configs.size(); ++k) {
        for (const auto& p : report.results[k].points) {
            std::string swept, terminal;
            for (const auto& [key, v] : p.swept)
                swept += (swept.empty() ? "" : ";") + key + "=" + format(v);
            for (const auto& [key, v] : p.terminal)
                terminal += (terminal.empty() ? "" : ";") + key + "=" + format(v);
            summary << configs[k].name << ',' << p.index << ',' << swept << ',';
            if (p.score)
                summary << *p.score << ',' << (*p.score < 1.0 ? "true" : "false");
            else
                summary << ',';
            summary << ',' << terminal << ',' << (p.error ? "\"" + *p.error + "\"" : "") << '\n';
        }
    }
    std::ofstream(out_dir / "summary.csv", std::ios::binary) << summary.str();

    json claims = json::array();
    for (const auto& c : report.claims)
        claims.push_back({{"figure", c.figure}, {"claim", c.claim}, {"holds", c.holds}, {"detail", c.detail}});
    std::ofstream(out_dir / "claims.json", std::ios::binary)
        << json{{"version", version}, {"claims", claims}}.dump(2) << "\n";
    return report;
}

}  // namespace netepi
