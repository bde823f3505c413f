#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "netepi/graph.hpp"

namespace netepi {

/// Discrete node-level models: SIS (Has-Info/No-Info/Dead) and SIRS (adds Warned).
enum class DiscreteModel { sis, sirs };

DiscreteModel parse_discrete_model(std::string_view name);
std::string_view model_name(DiscreteModel m);

/*
 * Per-node probabilities per time step.
 *   r      broadcast attempt
 *   delta  failure (death), must be > 0
 *   gamma  resurrection of a dead node into No-Info
 *   nu     acceptance of a received message (SIRS; 1 reduces to SIS)
 *   chi    reversion Warned -> No-Info (SIRS only)
 */
struct NodeParams {
    std::vector<double> r;
    std::vector<double> delta;
    std::vector<double> gamma;
    std::vector<double> nu;
    std::vector<double> chi;

    static NodeParams homogeneous(std::size_t n, double r, double delta, double gamma,
                                  double nu = 1.0, double chi = 0.0);

    std::size_t size() const noexcept { return delta.size(); }

    /// Range checks. For SIRS also requires chi + delta <= 1 per node unless
    /// `allow_negative_coefficients` is set. Throws std::invalid_argument.
    void validate(std::size_t n, DiscreteModel model, bool allow_negative_coefficients = false) const;
};

/*
 * Link up-probabilities beta(j -> i), stored per receiving node and aligned
 * with the graph's sorted neighbor lists. Supported only on graph edges.
 */
class LinkProbs {
public:
    struct Arc {
        node_t source;
        double beta;
    };

    LinkProbs() = default;

    /// Same beta on every edge, both directions.
    static LinkProbs uniform(const Graph& g, double beta);

    /// beta(j -> i) = fn(j, i) for every edge {i, j} and both directions.
    template <typename Fn>
    static LinkProbs from_function(const Graph& g, Fn&& fn) {
        LinkProbs lp;
        lp.offsets_.reserve(g.node_count() + 1);
        lp.offsets_.push_back(0);
        for (node_t i = 0; i < g.node_count(); ++i) {
            for (node_t j : g.neighbors(i))
                lp.arcs_.push_back({j, static_cast<double>(fn(j, i))});
            lp.offsets_.push_back(lp.arcs_.size());
        }
        lp.validate();
        return lp;
    }

    std::size_t node_count() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }

    /// Arcs j -> i into node i, ordered by j.
    std::span<const Arc> incoming(node_t i) const {
        return {arcs_.data() + offsets_.at(i), arcs_.data() + offsets_.at(i + 1)};
    }

    /// beta(from -> to); 0 for non-edges.
    double beta(node_t from, node_t to) const;

private:
    void validate() const;

    std::vector<std::size_t> offsets_;
    std::vector<Arc> arcs_;
};

/// Mean-field probabilities at step t. The Dead probability is 1 - p - q - w.
struct MfState {
    std::vector<double> p;  // Has-Info / infected
    std::vector<double> q;  // No-Info / susceptible
    std::vector<double> w;  // Warned, identically 0 for SIS
    std::size_t t = 0;

    /// p = p0, q = 1 - p0, w = 0 on every node.
    static MfState uniform(std::size_t n, double p0);

    std::size_t size() const noexcept { return p.size(); }
};

/// Expected number of carriers: the sum of p.
double expected_carriers(const MfState& st);

/// Per-node probability of receiving nothing: prod_j (1 - r_j beta_ji p_j).
std::vector<double> zeta(const MfState& prev, const LinkProbs& links, const NodeParams& params);

/// How a step handles probabilities that leave [0,1]: throw, or record and continue.
enum class BoundPolicy { strict, report };

struct BoundReport {
    std::size_t step = 0;
    node_t node = 0;
    std::string quantity;
    double value = 0.0;
};

struct StepOptions {
    BoundPolicy policy = BoundPolicy::strict;
    double tolerance = 1e-12;
    std::vector<BoundReport>* reports = nullptr;  // filled under BoundPolicy::report
};

/*
 * One synchronous step, every node read from the t-1 snapshot:
 *   p_i(t) = p_i(1 - delta_i) + q_i(1 - zeta_i)
 *   q_i(t) = q_i(zeta_i - delta_i) + (1 - p_i - q_i) gamma_i
 * Throws bound_violation if a result leaves [-tol, 1+tol] or p+q > 1+tol.
 */
MfState sis_step(const MfState& prev, const LinkProbs& links, const NodeParams& params,
                 const StepOptions& opts = {});

/*
 * SIRS step with the Warned state:
 *   p_i(t) = p_i(1 - delta_i) + q_i(1 - zeta_i) nu_i
 *   q_i(t) = q_i(zeta_i - delta_i) + (1 - p_i - q_i - w_i) gamma_i + chi_i w_i
 *   w_i(t) = (1 - zeta_i)(1 - nu_i) q_i + (1 - chi_i - delta_i) w_i
 */
MfState sirs_step(const MfState& prev, const LinkProbs& links, const NodeParams& params,
                  const StepOptions& opts = {});

struct MfAggregate {
    std::size_t t = 0;
    double mean_p = 0.0;
    double mean_q = 0.0;
    double mean_w = 0.0;
    double dead = 0.0;
    double carriers = 0.0;
};

MfAggregate aggregate(const MfState& st);

struct MfRunOptions {
    std::size_t max_steps = 500;
    double tol = 1e-10;  // max-norm state change that counts as converged; 0 disables
    bool allow_negative_coefficients = false;
};

struct MfRun {
    std::vector<MfAggregate> rows;  // rows[0] is the initial state
    MfState final_state;
    bool converged = false;
    std::vector<BoundReport> violations;  // only with allow_negative_coefficients
};

/// Iterates the model's step until convergence or max_steps. Step errors
/// propagate as bound_violation carrying the step index.
MfRun run_meanfield(DiscreteModel model, const MfState& st0, const LinkProbs& links,
                    const NodeParams& params, const MfRunOptions& opts = {});

/// "t,mean_p,mean_q,mean_w,dead,carriers" CSV.
void write_csv(std::ostream& out, std::span<const MfAggregate> rows);

}  // namespace netepi
