#include "netepi/meanfield.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "netepi/errors.hpp"

namespace netepi {

DiscreteModel parse_discrete_model(std::string_view name) {
    if (name == "sis")
        return DiscreteModel::sis;
    if (name == "sirs")
        return DiscreteModel::sirs;
    throw std::invalid_argument("unknown discrete model '" + std::string(name) + "'");
}

std::string_view model_name(DiscreteModel m) {
    return m == DiscreteModel::sis ? "sis" : "sirs";
}

NodeParams NodeParams::homogeneous(std::size_t n, double r, double delta, double gamma,
                                   double nu, double chi) {
    return {std::vector<double>(n, r), std::vector<double>(n, delta), std::vector<double>(n, gamma),
            std::vector<double>(n, nu), std::vector<double>(n, chi)};
}

void NodeParams::validate(std::size_t n, DiscreteModel model, bool allow_negative_coefficients) const {
    auto check = [n](const std::vector<double>& values, const char* name) {
        if (values.size() != n)
            throw std::invalid_argument(std::string("parameter ") + name + " has " +
                                        std::to_string(values.size()) + " entries, expected " +
                                        std::to_string(n));
        for (std::size_t i = 0; i < n; ++i)
            if (!(values[i] >= 0.0 && values[i] <= 1.0))
                throw std::invalid_argument(std::string("parameter ") + name + "[" + std::to_string(i) +
                                            "] = " + std::to_string(values[i]) + " is not in [0,1]");
    };
    check(r, "r");
    check(delta, "delta");
    check(gamma, "gamma");
    check(nu, "nu");
    check(chi, "chi");
    for (std::size_t i = 0; i < n; ++i) {
        if (!(delta[i] > 0.0))
            throw std::invalid_argument("delta[" + std::to_string(i) + "] must be > 0");
        if (model == DiscreteModel::sirs && !allow_negative_coefficients && chi[i] + delta[i] > 1.0)
            throw std::invalid_argument(
                "chi[" + std::to_string(i) + "] + delta[" + std::to_string(i) + "] = " +
                std::to_string(chi[i] + delta[i]) +
                " > 1 makes the Warned retention coefficient 1 - chi - delta negative "
                "(use allow_negative_coefficients to run anyway)");
    }
}

LinkProbs LinkProbs::uniform(const Graph& g, double beta) {
    return from_function(g, [beta](node_t, node_t) { return beta; });
}

double LinkProbs::beta(node_t from, node_t to) const {
    const auto arcs = incoming(to);
    auto it = std::lower_bound(arcs.begin(), arcs.end(), from,
                               [](const Arc& a, node_t v) { return a.source < v; });
    return (it != arcs.end() && it->source == from) ? it->beta : 0.0;
}

void LinkProbs::validate() const {
    for (const Arc& a : arcs_)
        if (!(a.beta >= 0.0 && a.beta <= 1.0))
            throw std::invalid_argument("link probability " + std::to_string(a.beta) + " is not in [0,1]");
}

MfState MfState::uniform(std::size_t n, double p0) {
    if (!(p0 >= 0.0 && p0 <= 1.0))
        throw std::invalid_argument("initial infected probability must lie in [0,1]");
    return {std::vector<double>(n, p0), std::vector<double>(n, 1.0 - p0), std::vector<double>(n, 0.0), 0};
}

double expected_carriers(const MfState& st) {
    double sum = 0.0;
    for (double v : st.p)
        sum += v;
    return sum;
}

std::vector<double> zeta(const MfState& prev, const LinkProbs& links, const NodeParams& params) {
    const std::size_t n = prev.size();
    std::vector<double> z(n, 1.0);
    for (node_t i = 0; i < n; ++i) {
        double prod = 1.0;
        for (const auto& arc : links.incoming(i))
            prod *= 1.0 - params.r[arc.source] * arc.beta * prev.p[arc.source];
        z[i] = prod;
    }
    return z;
}

namespace {

void check_inputs(const MfState& prev, const LinkProbs& links, const NodeParams& params) {
    const std::size_t n = prev.size();
    if (prev.q.size() != n || prev.w.size() != n)
        throw std::invalid_argument("state vectors have mismatched lengths");
    if (links.node_count() != n || params.size() != n)
        throw std::invalid_argument("state, links and parameters disagree on the node count");
}

class BoundChecker {
public:
    BoundChecker(const StepOptions& opts, std::size_t step) : opts_(opts), step_(step) {}

    void check(node_t node, const char* quantity, double value, double upper = 1.0) const {
        if (value >= -opts_.tolerance && value <= upper + opts_.tolerance)
            return;
        if (opts_.policy == BoundPolicy::report) {
            if (opts_.reports)
                opts_.reports->push_back({step_, node, quantity, value});
            return;
        }
        throw bound_violation(step_, node,
                              std::string(quantity) + " = " + std::to_string(value) +
                                  " outside [0," + std::to_string(upper) +
                                  "]; the update is not a probability in this parameter regime "
                                  "(typically delta_i > zeta_i(t))");
    }

private:
    const StepOptions& opts_;
    std::size_t step_;
};

}  // namespace

MfState sis_step(const MfState& prev, const LinkProbs& links, const NodeParams& params,
                 const StepOptions& opts) {
    check_inputs(prev, links, params);
    const std::size_t n = prev.size();
    const auto z = zeta(prev, links, params);
    const BoundChecker bounds(opts, prev.t + 1);

    MfState next{std::vector<double>(n), std::vector<double>(n), std::vector<double>(n, 0.0), prev.t + 1};
    for (node_t i = 0; i < n; ++i) {
        const double p = prev.p[i], q = prev.q[i];
        const double delta = params.delta[i], gamma = params.gamma[i];
        next.p[i] = p * (1.0 - delta) + q * (1.0 - z[i]);
        next.q[i] = q * (z[i] - delta) + (1.0 - p - q) * gamma;
        bounds.check(i, "p", next.p[i]);
        bounds.check(i, "q", next.q[i]);
        bounds.check(i, "p+q", next.p[i] + next.q[i]);
    }
    return next;
}

MfState sirs_step(const MfState& prev, const LinkProbs& links, const NodeParams& params,
                  const StepOptions& opts) {
    check_inputs(prev, links, params);
    const std::size_t n = prev.size();
    const auto z = zeta(prev, links, params);
    const BoundChecker bounds(opts, prev.t + 1);

    MfState next{std::vector<double>(n), std::vector<double>(n), std::vector<double>(n), prev.t + 1};
    for (node_t i = 0; i < n; ++i) {
        const double p = prev.p[i], q = prev.q[i], w = prev.w[i];
        const double delta = params.delta[i], gamma = params.gamma[i];
        const double nu = params.nu[i], chi = params.chi[i];
        const double received = q * (1.0 - z[i]);
        next.p[i] = p * (1.0 - delta) + received * nu;
        next.q[i] = q * (z[i] - delta) + (1.0 - p - q - w) * gamma + chi * w;
        next.w[i] = received * (1.0 - nu) + (1.0 - chi - delta) * w;
        bounds.check(i, "p", next.p[i]);
        bounds.check(i, "q", next.q[i]);
        bounds.check(i, "w", next.w[i]);
        bounds.check(i, "p+q+w", next.p[i] + next.q[i] + next.w[i]);
    }
    return next;
}

MfAggregate aggregate(const MfState& st) {
    MfAggregate a;
    a.t = st.t;
    const std::size_t n = st.size();
    if (n == 0)
        return a;
    for (std::size_t i = 0; i < n; ++i) {
        a.mean_p += st.p[i];
        a.mean_q += st.q[i];
        a.mean_w += st.w[i];
    }
    a.carriers = a.mean_p;
    a.mean_p /= static_cast<double>(n);
    a.mean_q /= static_cast<double>(n);
    a.mean_w /= static_cast<double>(n);
    a.dead = 1.0 - a.mean_p - a.mean_q - a.mean_w;
    return a;
}

MfRun run_meanfield(DiscreteModel model, const MfState& st0, const LinkProbs& links,
                    const NodeParams& params, const MfRunOptions& opts) {
    check_inputs(st0, links, params);
    params.validate(st0.size(), model, opts.allow_negative_coefficients);

    MfRun run;
    StepOptions step_opts;
    if (opts.allow_negative_coefficients) {
        step_opts.policy = BoundPolicy::report;
        step_opts.reports = &run.violations;
    }

    MfState state = st0;
    run.rows.push_back(aggregate(state));
    for (std::size_t k = 0; k < opts.max_steps; ++k) {
        MfState next = model == DiscreteModel::sis ? sis_step(state, links, params, step_opts)
                                                   : sirs_step(state, links, params, step_opts);
        double change = 0.0;
        for (std::size_t i = 0; i < state.size(); ++i) {
            change = std::max(change, std::abs(next.p[i] - state.p[i]));
            change = std::max(change, std::abs(next.q[i] - state.q[i]));
            change = std::max(change, std::abs(next.w[i] - state.w[i]));
        }
        state = std::move(next);
        run.rows.push_back(aggregate(state));
        if (change < opts.tol) {
            run.converged = true;
            break;
        }
    }
    run.final_state = std::move(state);
    return run;
}

void write_csv(std::ostream& out, std::span<const MfAggregate> rows) {
    const auto old_precision = out.precision(15);
    out << "t,mean_p,mean_q,mean_w,dead,carriers\n";
    for (const auto& r : rows)
        out << r.t << ',' << r.mean_p << ',' << r.mean_q << ',' << r.mean_w << ',' << r.dead << ','
            << r.carriers << '\n';
    out.precision(old_precision);
}

}  // namespace netepi
