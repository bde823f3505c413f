#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "netepi/meanfield.hpp"
#include "netepi/random.hpp"

namespace netepi {

enum class NodeState : std::uint8_t { no_info, has_info, warned, dead };

struct StepCounts {
    std::size_t new_infections = 0;  // No-Info -> Has-Info transitions in this step
};

/*
 * One synchronous Monte Carlo step from the snapshot `states`:
 *   1. every Has-Info node i broadcasts with probability r_i, and a broadcast
 *      reaches each neighbor j with probability beta(i -> j);
 *   2. a No-Info node that received at least one message turns Has-Info with
 *      probability nu (always for SIS), otherwise Warned (SIRS);
 *   3. every non-Dead node dies with probability delta, overriding 2;
 *   4. Dead nodes come back as No-Info with probability gamma;
 *   5. Warned nodes that survive revert to No-Info with probability chi.
 *
 * Draw order is fixed: the broadcast phase walks senders by index and their
 * neighbors in sorted order; the update phase walks nodes by index and draws
 * death first, then acceptance (SIRS receivers) or reversion (Warned).
 */
std::vector<NodeState> mc_step(std::span<const NodeState> states, const LinkProbs& links,
                               const NodeParams& params, DiscreteModel model, rng_t& rng,
                               StepCounts* counts = nullptr);

struct EnsembleResult {
    std::size_t runs = 0;
    std::uint64_t seed = 0;
    // per step t = 0..steps, averaged over runs
    std::vector<double> mean_noinfo;
    std::vector<double> mean_hasinfo;
    std::vector<double> mean_warned;
    std::vector<double> mean_dead;
    std::vector<double> std_hasinfo;  // population standard deviation across runs
    // per run
    std::vector<std::size_t> cumulative_infections;  // initial infected + all new infections
    std::vector<std::size_t> extinction_step;        // first step with no Has-Info node, or steps+1
};

/*
 * `runs` independent runs of `steps` steps. Run k uses derive_run_seed(seed, k)
 * and starts with each node Has-Info independently with probability
 * `init_fraction`, otherwise No-Info.
 */
EnsembleResult mc_ensemble(const Graph& g, const LinkProbs& links, const NodeParams& params,
                           DiscreteModel model, double init_fraction, std::size_t steps,
                           std::size_t runs, std::uint64_t seed);

/// "t,frac_noinfo_mean,frac_hasinfo_mean,frac_warned_mean,frac_dead_mean,frac_hasinfo_std" CSV.
void write_csv(std::ostream& out, const EnsembleResult& result);

}  // namespace netepi
