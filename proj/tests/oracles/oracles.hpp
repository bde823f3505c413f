#pragma once

// Independent reference computations used by the tests. Nothing here calls
// into netepi except to read a Graph's edge list.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <queue>
#include <set>
#include <vector>

#include <Eigen/Dense>

#include "netepi/graph.hpp"

namespace oracle {

/// Largest eigenvalue magnitude from a full dense eigensolve.
inline double dense_spectral_radius(const Eigen::MatrixXd& m) {
    Eigen::EigenSolver<Eigen::MatrixXd> solver(m, false);
    return solver.eigenvalues().cwiseAbs().maxCoeff();
}

/// Largest eigenvalue of a symmetric matrix.
inline double dense_symmetric_max(const Eigen::MatrixXd& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().maxCoeff();
}

inline Eigen::MatrixXd dense_adjacency(const netepi::Graph& g) {
    const auto n = static_cast<Eigen::Index>(g.node_count());
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (const auto& e : g.edges()) {
        a(e.u, e.v) = 1.0;
        a(e.v, e.u) = 1.0;
    }
    return a;
}

/// Homogeneous system matrix written out entry by entry from its definition.
inline Eigen::MatrixXd dense_system_matrix(const netepi::Graph& g, double r, double beta, double delta,
                                           double gamma) {
    const auto n = static_cast<Eigen::Index>(g.node_count());
    Eigen::MatrixXd s = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        s(i, i) = 1.0 - delta;
    for (const auto& e : g.edges()) {
        s(e.u, e.v) = r * beta * gamma / (gamma + delta);
        s(e.v, e.u) = r * beta * gamma / (gamma + delta);
    }
    return s;
}

/// Root of s = s0 * exp(-R0 (1 - s)) in (0, 1) by bisection; the smaller root
/// is the final susceptible fraction when R0 * s0 > 1.
inline double sir_final_size(double s0, double r0) {
    auto f = [&](double s) { return s - s0 * std::exp(-r0 * (1.0 - s)); };
    double lo = 0.0, hi = std::min(s0, 1.0 / r0);
    for (int k = 0; k < 200; ++k) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) > 0.0 ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
}

/// Nodes within hop distance `radius` of `source`.
inline std::set<netepi::node_t> bfs_ball(const netepi::Graph& g, netepi::node_t source, std::size_t radius) {
    std::vector<std::size_t> dist(g.node_count(), static_cast<std::size_t>(-1));
    std::queue<netepi::node_t> frontier;
    dist[source] = 0;
    frontier.push(source);
    std::set<netepi::node_t> ball;
    while (!frontier.empty()) {
        const auto v = frontier.front();
        frontier.pop();
        if (dist[v] > radius)
            continue;
        ball.insert(v);
        for (auto u : g.neighbors(v))
            if (dist[u] == static_cast<std::size_t>(-1)) {
                dist[u] = dist[v] + 1;
                frontier.push(u);
            }
    }
    return ball;
}

/// Discrete power-law exponent MLE over degrees >= kmin (continuous
/// approximation with the -1/2 shift).
inline double powerlaw_tail_exponent(const std::vector<std::size_t>& degrees, std::size_t kmin) {
    double sum = 0.0;
    std::size_t count = 0;
    for (auto k : degrees)
        if (k >= kmin) {
            sum += std::log(static_cast<double>(k) / (static_cast<double>(kmin) - 0.5));
            ++count;
        }
    return 1.0 + static_cast<double>(count) / sum;
}

/// True if `cycle` visits every node once and consecutive entries (cyclically) are edges.
inline bool is_hamiltonian_cycle(const netepi::Graph& g, const std::vector<netepi::node_t>& cycle) {
    if (cycle.size() != g.node_count() || cycle.size() < 3)
        return false;
    std::vector<bool> seen(g.node_count(), false);
    for (auto v : cycle) {
        if (v >= g.node_count() || seen[v])
            return false;
        seen[v] = true;
    }
    for (std::size_t k = 0; k < cycle.size(); ++k) {
        const auto a = cycle[k], b = cycle[(k + 1) % cycle.size()];
        const auto nb = g.neighbors(a);
        if (std::find(nb.begin(), nb.end(), b) == nb.end())
            return false;
    }
    return true;
}

/// Direct scan of every graph invariant.
inline bool is_simple_graph(const netepi::Graph& g) {
    std::size_t degree_sum = 0;
    std::set<std::pair<netepi::node_t, netepi::node_t>> seen;
    for (netepi::node_t v = 0; v < g.node_count(); ++v) {
        for (auto u : g.neighbors(v)) {
            if (u == v || u >= g.node_count())
                return false;
            if (!seen.insert({v, u}).second)
                return false;
            const auto back = g.neighbors(u);
            if (std::find(back.begin(), back.end(), v) == back.end())
                return false;
        }
        degree_sum += g.degree(v);
    }
    return degree_sum == 2 * g.edge_count();
}

}  // namespace oracle
