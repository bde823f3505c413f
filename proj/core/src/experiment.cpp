#include "netepi/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "netepi/continuous.hpp"
#include "netepi/meanfield.hpp"
#include "netepi/spectral.hpp"
#include "netepi/stochastic.hpp"
#include "netepi/version.hpp"

namespace netepi {

using json = nlohmann::json;

namespace {

struct ModelInfo {
    ExperimentModel model;
    std::string_view name;
};

constexpr ModelInfo model_table[] = {
    {ExperimentModel::sir_ode, "sir_ode"},
    {ExperimentModel::sir_endemic_ode, "sir_endemic_ode"},
    {ExperimentModel::sis_ode, "sis_ode"},
    {ExperimentModel::sis_meanfield, "sis_meanfield"},
    {ExperimentModel::sirs_meanfield, "sirs_meanfield"},
    {ExperimentModel::sis_mc, "sis_mc"},
    {ExperimentModel::sirs_mc, "sirs_mc"},
};

const std::set<std::string> ode_keys = {"beta", "gamma", "mu", "s0", "i0"};
const std::set<std::string> graph_keys = {"beta", "gamma", "delta", "r", "nu", "chi", "p0"};

bool is_sirs(ExperimentModel m) {
    return m == ExperimentModel::sirs_meanfield || m == ExperimentModel::sirs_mc;
}

bool is_mc(ExperimentModel m) {
    return m == ExperimentModel::sis_mc || m == ExperimentModel::sirs_mc;
}

ode::Model ode_model(ExperimentModel m) {
    switch (m) {
        case ExperimentModel::sir_ode: return ode::Model::sir_epidemic;
        case ExperimentModel::sir_endemic_ode: return ode::Model::sir_endemic;
        default: return ode::Model::sis;
    }
}

template <typename T>
T get_or(const json& obj, const char* key, T fallback) {
    if (!obj.contains(key))
        return fallback;
    try {
        return obj.at(key).get<T>();
    } catch (const json::exception&) {
        throw config_error(std::string("field '") + key + "' has the wrong type");
    }
}

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const char* where) {
    for (const auto& [key, value] : obj.items())
        if (!allowed.count(key))
            throw config_error(std::string("unknown field '") + key + "' in " + where);
}

std::map<std::string, double> point_params(const ExperimentConfig& c, std::size_t k) {
    auto params = c.params;
    for (const auto& name : c.sweep.parameters) {
        const double base = c.sweep.base ? *c.sweep.base : params.at(name);
        params[name] = base + static_cast<double>(k) * c.sweep.increment;
    }
    return params;
}

void validate_point(const ExperimentConfig& c, const std::map<std::string, double>& p, std::size_t k) {
    auto fail = [k](const std::string& what) {
        throw config_error("sweep point " + std::to_string(k) + ": " + what);
    };
    for (const auto& [key, value] : p)
        if (!std::isfinite(value))
            fail(key + " is not finite");
    if (!is_graph_model(c.model)) {
        for (const char* key : {"beta", "gamma", "mu"})
            if (p.at(key) < 0)
                fail(std::string(key) + " must be >= 0");
        const double s0 = p.at("s0"), i0 = p.at("i0");
        if (s0 < 0 || i0 < 0 || s0 + i0 > 1.0 + 1e-12)
            fail("s0 and i0 must be non-negative with s0 + i0 <= 1");
        if (c.model == ExperimentModel::sis_ode && std::abs(s0 + i0 - 1.0) > 1e-12)
            fail("SIS requires s0 + i0 = 1");
        return;
    }
    for (const auto& key : graph_keys)
        if (!(p.at(key) >= 0.0 && p.at(key) <= 1.0))
            fail(key + " = " + std::to_string(p.at(key)) + " is not a probability");
    if (!(p.at("delta") > 0.0))
        fail("delta must be > 0");
    if (is_sirs(c.model) && !c.run.allow_negative_coefficients && p.at("chi") + p.at("delta") > 1.0)
        fail("chi + delta > 1 makes the Warned retention coefficient negative "
             "(set run.allow_negative_coefficients to run anyway)");
}

json graph_to_json(const GraphSpec& g) {
    json j;
    j["family"] = g.family;
    if (g.family == "file") {
        j["path"] = g.path;
        return j;
    }
    if (g.family == "lattice4") {
        j["rows"] = g.rows;
        j["cols"] = g.cols;
        return j;
    }
    j["n"] = g.n;
    j["seed"] = g.seed;
    if (g.family == "binomial")
        j["p"] = g.p;
    else if (g.family == "powerlaw")
        j["m"] = g.m;
    else if (g.family == "exponential")
        j["lambda"] = g.lambda;
    return j;
}

GraphSpec parse_graph(const json& j) {
    if (!j.is_object())
        throw config_error("'graph' must be an object");
    reject_unknown(j, {"family", "n", "m", "p", "lambda", "rows", "cols", "seed", "path"}, "graph");
    GraphSpec g;
    g.path = get_or<std::string>(j, "path", "");
    g.family = get_or<std::string>(j, "family", g.path.empty() ? "" : "file");
    g.n = get_or<std::size_t>(j, "n", 0);
    g.m = get_or<std::size_t>(j, "m", 0);
    g.p = get_or<double>(j, "p", 0.0);
    g.lambda = get_or<double>(j, "lambda", 0.0);
    g.rows = get_or<std::size_t>(j, "rows", 0);
    g.cols = get_or<std::size_t>(j, "cols", 0);
    g.seed = get_or<std::uint64_t>(j, "seed", 0);
    if (g.family == "binomial") {
        if (g.n < 1 || !(g.p >= 0 && g.p <= 1))
            throw config_error("binomial graph needs n >= 1 and p in [0,1]");
    } else if (g.family == "powerlaw") {
        if (g.m < 1 || g.n <= g.m)
            throw config_error("powerlaw graph needs m >= 1 and n > m");
    } else if (g.family == "exponential") {
        if (g.n < 2 || !(g.lambda > 0))
            throw config_error("exponential graph needs n >= 2 and lambda > 0");
    } else if (g.family == "lattice4") {
        if (g.rows < 3 || g.cols < 3)
            throw config_error("lattice4 graph needs rows >= 3 and cols >= 3");
    } else if (g.family == "file") {
        if (g.path.empty())
            throw config_error("file graph needs a path");
    } else {
        throw config_error("unknown graph family '" + g.family + "'");
    }
    return g;
}

std::string fnv1a_hex(std::string_view text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot write " + path.string());
    out << content;
    if (!out)
        throw std::runtime_error("write failed for " + path.string());
}

std::string point_file_name(const ExperimentConfig& c, std::size_t k) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "_%03zu.csv", k);
    return c.name + buf;
}

std::size_t interior_maxima(const ode::Trajectory& tr) {
    std::size_t count = 0;
    for (std::size_t k = 1; k + 1 < tr.states.size(); ++k) {
        const double prev = tr.states[k - 1].i, cur = tr.states[k].i, next = tr.states[k + 1].i;
        if (cur > prev && cur >= next)
            ++count;
    }
    return count;
}

bool non_decreasing_i(const ode::Trajectory& tr) {
    for (std::size_t k = 1; k < tr.states.size(); ++k)
        if (tr.states[k].i < tr.states[k - 1].i)
            return false;
    return true;
}

// Runs one sweep point, returns the CSV text and fills the point's observables.
std::string run_point(const ExperimentConfig& c, const std::optional<Graph>& graph,
                      const std::map<std::string, double>& p, SweepPoint& point) {
    std::ostringstream csv;
    if (!is_graph_model(c.model)) {
        const ode::State st0{p.at("s0"), p.at("i0"), 1.0 - p.at("s0") - p.at("i0")};
        ode::State start = st0;
        if (c.model == ExperimentModel::sis_ode)
            start.r = 0.0;
        const auto tr = ode::integrate(ode_model(c.model), start, {p.at("beta"), p.at("gamma"), p.at("mu")},
                                       c.run.dt, c.run.t_end, c.run.record_every);
        ode::write_csv(csv, tr);
        const auto& last = tr.states.back();
        point.terminal = {{"s", last.s},
                          {"i", last.i},
                          {"r", last.r},
                          {"t", tr.times.back()},
                          {"interior_maxima", static_cast<double>(interior_maxima(tr))},
                          {"i_non_decreasing", non_decreasing_i(tr) ? 1.0 : 0.0}};
        return csv.str();
    }

    const Graph& g = *graph;
    const auto links = LinkProbs::uniform(g, p.at("beta"));
    const auto params = NodeParams::homogeneous(g.node_count(), p.at("r"), p.at("delta"), p.at("gamma"),
                                                p.at("nu"), p.at("chi"));
    point.score = survivability_score(g, links, params).score;
    const DiscreteModel dm = is_sirs(c.model) ? DiscreteModel::sirs : DiscreteModel::sis;

    if (is_mc(c.model)) {
        const auto ens = mc_ensemble(g, links, params, dm, p.at("p0"), c.run.steps, c.run.runs, c.run.seed);
        write_csv(csv, ens);
        const std::size_t last = ens.mean_hasinfo.size() - 1;
        std::size_t extinct = 0;
        for (std::size_t s : ens.extinction_step)
            if (s <= c.run.steps)
                ++extinct;
        point.terminal = {{"frac_noinfo", ens.mean_noinfo[last]},
                          {"frac_hasinfo", ens.mean_hasinfo[last]},
                          {"frac_warned", ens.mean_warned[last]},
                          {"frac_dead", ens.mean_dead[last]},
                          {"frac_hasinfo_std", ens.std_hasinfo[last]},
                          {"extinct_runs", static_cast<double>(extinct)}};
        return csv.str();
    }

    MfRunOptions opts;
    opts.max_steps = c.run.steps;
    opts.tol = c.run.tol;
    opts.allow_negative_coefficients = c.run.allow_negative_coefficients;
    const auto run = run_meanfield(dm, MfState::uniform(g.node_count(), p.at("p0")), links, params, opts);
    write_csv(csv, run.rows);
    const auto& last = run.rows.back();
    point.terminal = {{"mean_p", last.mean_p},
                      {"mean_q", last.mean_q},
                      {"mean_w", last.mean_w},
                      {"dead", last.dead},
                      {"carriers", last.carriers},
                      {"initial_carriers", run.rows.front().carriers},
                      {"steps", static_cast<double>(last.t)},
                      {"converged", run.converged ? 1.0 : 0.0},
                      {"bound_violations", static_cast<double>(run.violations.size())}};
    return csv.str();
}

json optional_number(const std::optional<double>& v) {
    return v ? json(*v) : json(nullptr);
}

}  // namespace

std::string_view model_name(ExperimentModel m) {
    for (const auto& info : model_table)
        if (info.model == m)
            return info.name;
    return "?";
}

bool is_graph_model(ExperimentModel m) {
    return m != ExperimentModel::sir_ode && m != ExperimentModel::sir_endemic_ode &&
           m != ExperimentModel::sis_ode;
}

Graph build_graph(const GraphSpec& spec) {
    if (spec.family == "binomial")
        return gen_binomial(spec.n, spec.p, spec.seed);
    if (spec.family == "powerlaw")
        return gen_powerlaw(spec.n, spec.m, spec.seed);
    if (spec.family == "exponential")
        return gen_exponential(spec.n, spec.lambda, spec.seed);
    if (spec.family == "lattice4")
        return gen_lattice4(spec.rows, spec.cols);
    if (spec.family == "file") {
        std::ifstream in(spec.path);
        if (!in)
            throw config_error("cannot open edge list '" + spec.path + "'");
        return load_edge_list(in);
    }
    throw config_error("unknown graph family '" + spec.family + "'");
}

double ExperimentConfig::param(const std::string& key) const {
    auto it = params.find(key);
    if (it == params.end())
        throw config_error("parameter '" + key + "' is not set");
    return it->second;
}

ExperimentConfig parse_config(std::string_view json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw config_error(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object())
        throw config_error("config must be a JSON object");
    reject_unknown(j, {"name", "claim", "model", "graph", "params", "initial", "sweep", "run"}, "config");

    ExperimentConfig c;
    c.name = get_or<std::string>(j, "name", "experiment");
    if (c.name.empty() || c.name.find_first_of("/\\") != std::string::npos)
        throw config_error("name must be a non-empty file-name-safe string");
    c.claim = get_or<std::string>(j, "claim", "");

    const auto model = get_or<std::string>(j, "model", "");
    const auto* info = std::find_if(std::begin(model_table), std::end(model_table),
                                    [&](const ModelInfo& m) { return m.name == model; });
    if (info == std::end(model_table))
        throw config_error("unknown or missing model '" + model + "'");
    c.model = info->model;
    const bool graph_model = is_graph_model(c.model);
    const auto& allowed = graph_model ? graph_keys : ode_keys;

    if (graph_model) {
        if (!j.contains("graph"))
            throw config_error("model " + model + " needs a 'graph' block");
        c.graph = parse_graph(j.at("graph"));
    } else if (j.contains("graph")) {
        throw config_error("ODE models take no 'graph' block");
    }

    // params and initial conditions share one namespace
    for (const char* block : {"params", "initial"}) {
        if (!j.contains(block))
            continue;
        const auto& obj = j.at(block);
        if (!obj.is_object())
            throw config_error(std::string("'") + block + "' must be an object");
        for (const auto& [key, value] : obj.items()) {
            if (!allowed.count(key))
                throw config_error("parameter '" + key + "' does not apply to model " + model);
            if (!value.is_number())
                throw config_error("parameter '" + key + "' must be a number");
            c.params[key] = value.get<double>();
        }
    }
    for (const char* key : {"beta", "gamma"})
        if (!c.params.count(key))
            throw config_error(std::string("missing parameter '") + key + "'");
    if (graph_model) {
        if (!c.params.count("delta"))
            throw config_error("missing parameter 'delta'");
        c.params.emplace("r", 1.0);
        c.params.emplace("nu", 1.0);
        c.params.emplace("chi", 0.0);
        c.params.emplace("p0", 0.1);
    } else {
        c.params.emplace("mu", 0.0);
        c.params.emplace("i0", 0.01);
        c.params.emplace("s0", 1.0 - c.params.at("i0"));
    }

    if (j.contains("sweep")) {
        const auto& s = j.at("sweep");
        if (!s.is_object())
            throw config_error("'sweep' must be an object");
        reject_unknown(s, {"parameter", "parameters", "increment", "count", "base"}, "sweep");
        if (s.contains("parameter"))
            c.sweep.parameters.push_back(get_or<std::string>(s, "parameter", ""));
        if (s.contains("parameters")) {
            try {
                for (const auto& name : s.at("parameters").get<std::vector<std::string>>())
                    c.sweep.parameters.push_back(name);
            } catch (const json::exception&) {
                throw config_error("'sweep.parameters' must be a list of names");
            }
        }
        c.sweep.increment = get_or<double>(s, "increment", 0.0);
        const auto count = get_or<long long>(s, "count", 1);
        if (count < 1)
            throw config_error("sweep count must be >= 1");
        c.sweep.count = static_cast<std::size_t>(count);
        if (s.contains("base"))
            c.sweep.base = get_or<double>(s, "base", 0.0);
        for (const auto& name : c.sweep.parameters)
            if (!allowed.count(name))
                throw config_error("cannot sweep '" + name + "' for model " + model);
    }

    if (j.contains("run")) {
        const auto& r = j.at("run");
        if (!r.is_object())
            throw config_error("'run' must be an object");
        reject_unknown(r, {"steps", "dt", "t_end", "tol", "tolerance", "runs", "seed", "record_every",
                           "allow_negative_coefficients"},
                       "run");
        c.run.steps = get_or<std::size_t>(r, "steps", c.run.steps);
        c.run.dt = get_or<double>(r, "dt", c.run.dt);
        c.run.t_end = get_or<double>(r, "t_end", c.run.t_end);
        c.run.tol = get_or<double>(r, "tol", get_or<double>(r, "tolerance", c.run.tol));
        c.run.runs = get_or<std::size_t>(r, "runs", c.run.runs);
        c.run.seed = get_or<std::uint64_t>(r, "seed", c.run.seed);
        c.run.record_every = get_or<std::size_t>(r, "record_every", c.run.record_every);
        c.run.allow_negative_coefficients =
            get_or<bool>(r, "allow_negative_coefficients", c.run.allow_negative_coefficients);
    }
    if (!(c.run.dt > 0) || !(c.run.t_end >= c.run.dt))
        throw config_error("run needs dt > 0 and t_end >= dt");
    if (c.run.runs < 1 || c.run.record_every < 1)
        throw config_error("run.runs and run.record_every must be >= 1");
    if (!(c.run.tol >= 0))
        throw config_error("run.tol must be >= 0");

    for (std::size_t k = 0; k < c.sweep.count; ++k)
        validate_point(c, point_params(c, k), k);
    return c;
}

std::string to_json(const ExperimentConfig& c) {
    json j;
    j["name"] = c.name;
    j["claim"] = c.claim;
    j["model"] = std::string(model_name(c.model));
    if (c.graph)
        j["graph"] = graph_to_json(*c.graph);
    j["params"] = c.params;
    json sweep{{"parameters", c.sweep.parameters}, {"increment", c.sweep.increment}, {"count", c.sweep.count}};
    if (c.sweep.base)
        sweep["base"] = *c.sweep.base;
    j["sweep"] = sweep;
    j["run"] = {{"steps", c.run.steps},
                {"dt", c.run.dt},
                {"t_end", c.run.t_end},
                {"tol", c.run.tol},
                {"runs", c.run.runs},
                {"seed", c.run.seed},
                {"record_every", c.run.record_every},
                {"allow_negative_coefficients", c.run.allow_negative_coefficients}};
    return j.dump();
}

std::string config_hash(const ExperimentConfig& c) {
    return fnv1a_hex(to_json(c));
}

SweepResult run_experiment(const ExperimentConfig& c, const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);
    SweepResult result;
    result.config_hash = config_hash(c);
    result.directory = out_dir;

    std::optional<Graph> graph;
    std::optional<std::string> graph_error;
    if (c.graph) {
        try {
            graph = build_graph(*c.graph);
        } catch (const config_error&) {
            throw;
        } catch (const std::exception& e) {
            throw config_error(std::string("graph construction failed: ") + e.what());
        }
    }

    json manifest;
    manifest["name"] = c.name;
    manifest["version"] = version;
    manifest["config_hash"] = result.config_hash;
    manifest["seed"] = c.run.seed;
    manifest["graph_seed"] = c.graph ? json(c.graph->seed) : json(nullptr);
    manifest["model"] = std::string(model_name(c.model));
    manifest["claim"] = c.claim;
    manifest["config"] = json::parse(to_json(c));
    json files = json::array(), swept = json::array(), scores = json::array(), terminal = json::array(),
         errors = json::array();

    for (std::size_t k = 0; k < c.sweep.count; ++k) {
        SweepPoint point;
        point.index = k;
        const auto p = point_params(c, k);
        for (const auto& name : c.sweep.parameters)
            point.swept[name] = p.at(name);
        try {
            const std::string csv = run_point(c, graph, p, point);
            point.file = point_file_name(c, k);
            write_file(out_dir / point.file, csv);
        } catch (const std::exception& e) {
            point.error = e.what();
            point.file.clear();
        }
        files.push_back(point.file.empty() ? json(nullptr) : json(point.file));
        swept.push_back(point.swept);
        scores.push_back(optional_number(point.score));
        terminal.push_back(point.terminal);
        errors.push_back(point.error ? json(*point.error) : json(nullptr));
        result.points.push_back(std::move(point));
    }

    manifest["files"] = files;
    manifest["swept_values"] = swept;
    manifest["scores"] = scores;
    manifest["terminal"] = terminal;
    manifest["errors"] = errors;
    write_file(out_dir / "manifest.json", manifest.dump(2) + "\n");
    return result;
}

}  // namespace netepi
