#include "netepi/stochastic.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

namespace netepi {

std::vector<NodeState> mc_step(std::span<const NodeState> states, const LinkProbs& links,
                               const NodeParams& params, DiscreteModel model, rng_t& rng,
                               StepCounts* counts) {
    const std::size_t n = states.size();
    if (links.node_count() != n || params.size() != n)
        throw std::invalid_argument("states, links and parameters disagree on the node count");

    // Phase 1: broadcasts. incoming(j) holds beta(i -> j) for every neighbor i of j,
    // so the outgoing probability of i towards j is looked up on j's side.
    std::vector<bool> received(n, false);
    for (node_t i = 0; i < n; ++i) {
        if (states[i] != NodeState::has_info || !bernoulli(rng, params.r[i]))
            continue;
        for (const auto& arc : links.incoming(i)) {
            const node_t j = arc.source;
            if (bernoulli(rng, links.beta(i, j)))
                received[j] = true;
        }
    }

    // Phase 2: per-node transitions.
    std::vector<NodeState> next(states.begin(), states.end());
    std::size_t infections = 0;
    for (node_t i = 0; i < n; ++i) {
        switch (states[i]) {
            case NodeState::has_info:
                if (bernoulli(rng, params.delta[i]))
                    next[i] = NodeState::dead;
                break;
            case NodeState::no_info: {
                const bool dies = bernoulli(rng, params.delta[i]);
                bool accepts = true;
                if (received[i] && model == DiscreteModel::sirs)
                    accepts = bernoulli(rng, params.nu[i]);
                if (dies) {
                    next[i] = NodeState::dead;
                } else if (received[i]) {
                    next[i] = accepts ? NodeState::has_info : NodeState::warned;
                    if (accepts)
                        ++infections;
                }
                break;
            }
            case NodeState::warned: {
                const bool dies = bernoulli(rng, params.delta[i]);
                const bool reverts = bernoulli(rng, params.chi[i]);
                if (dies)
                    next[i] = NodeState::dead;
                else if (reverts)
                    next[i] = NodeState::no_info;
                break;
            }
            case NodeState::dead:
                if (bernoulli(rng, params.gamma[i]))
                    next[i] = NodeState::no_info;
                break;
        }
    }
    if (counts)
        counts->new_infections = infections;
    return next;
}

namespace {

// delta = 0 is allowed here, unlike in the mean-field system matrix.
void check_probabilities(const NodeParams& params, std::size_t n) {
    for (const auto* values : {&params.r, &params.delta, &params.gamma, &params.nu, &params.chi}) {
        if (values->size() != n)
            throw std::invalid_argument("mc_ensemble: parameter vector length differs from node count");
        for (double v : *values)
            if (!(v >= 0.0 && v <= 1.0))
                throw std::invalid_argument("mc_ensemble: probability " + std::to_string(v) + " is not in [0,1]");
    }
}

}  // namespace

EnsembleResult mc_ensemble(const Graph& g, const LinkProbs& links, const NodeParams& params,
                           DiscreteModel model, double init_fraction, std::size_t steps,
                           std::size_t runs, std::uint64_t seed) {
    const std::size_t n = g.node_count();
    if (runs == 0)
        throw std::invalid_argument("mc_ensemble: runs must be >= 1");
    if (!(init_fraction >= 0.0 && init_fraction <= 1.0))
        throw std::invalid_argument("mc_ensemble: initial fraction must lie in [0,1]");
    if (n == 0)
        throw std::invalid_argument("mc_ensemble: empty graph");
    check_probabilities(params, n);

    EnsembleResult out;
    out.runs = runs;
    out.seed = seed;
    const std::size_t rows = steps + 1;
    out.mean_noinfo.assign(rows, 0.0);
    out.mean_hasinfo.assign(rows, 0.0);
    out.mean_warned.assign(rows, 0.0);
    out.mean_dead.assign(rows, 0.0);
    out.std_hasinfo.assign(rows, 0.0);
    std::vector<double> sq_hasinfo(rows, 0.0);

    const double inv_n = 1.0 / static_cast<double>(n);
    for (std::size_t run = 0; run < runs; ++run) {
        rng_t rng(derive_run_seed(seed, run));
        std::vector<NodeState> states(n, NodeState::no_info);
        std::size_t cumulative = 0;
        for (auto& s : states)
            if (bernoulli(rng, init_fraction)) {
                s = NodeState::has_info;
                ++cumulative;
            }

        std::size_t extinct_at = steps + 1;
        for (std::size_t t = 0; t < rows; ++t) {
            if (t > 0) {
                StepCounts counts;
                states = mc_step(states, links, params, model, rng, &counts);
                cumulative += counts.new_infections;
            }
            std::size_t c[4] = {0, 0, 0, 0};
            for (NodeState s : states)
                ++c[static_cast<int>(s)];
            const double infected = static_cast<double>(c[1]) * inv_n;
            out.mean_noinfo[t] += static_cast<double>(c[0]) * inv_n;
            out.mean_hasinfo[t] += infected;
            out.mean_warned[t] += static_cast<double>(c[2]) * inv_n;
            out.mean_dead[t] += static_cast<double>(c[3]) * inv_n;
            sq_hasinfo[t] += infected * infected;
            if (c[1] == 0 && extinct_at > steps)
                extinct_at = t;
        }
        out.cumulative_infections.push_back(cumulative);
        out.extinction_step.push_back(extinct_at);
    }

    const double inv_runs = 1.0 / static_cast<double>(runs);
    for (std::size_t t = 0; t < rows; ++t) {
        out.mean_noinfo[t] *= inv_runs;
        out.mean_hasinfo[t] *= inv_runs;
        out.mean_warned[t] *= inv_runs;
        out.mean_dead[t] *= inv_runs;
        const double var = sq_hasinfo[t] * inv_runs - out.mean_hasinfo[t] * out.mean_hasinfo[t];
        out.std_hasinfo[t] = std::sqrt(var > 0.0 ? var : 0.0);
    }
    return out;
}

void write_csv(std::ostream& out, const EnsembleResult& result) {
    const auto old_precision = out.precision(15);
    out << "t,frac_noinfo_mean,frac_hasinfo_mean,frac_warned_mean,frac_dead_mean,frac_hasinfo_std\n";
    for (std::size_t t = 0; t < result.mean_hasinfo.size(); ++t)
        out << t << ',' << result.mean_noinfo[t] << ',' << result.mean_hasinfo[t] << ','
            << result.mean_warned[t] << ',' << result.mean_dead[t] << ',' << result.std_hasinfo[t] << '\n';
    out.precision(old_precision);
}

}  // namespace netepi
