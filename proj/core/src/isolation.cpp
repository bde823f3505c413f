#include "netepi/isolation.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>
#include <string>

#include "netepi/spectral.hpp"

namespace netepi {

double homogeneous_score(const Graph& g, const ScoringParams& params) {
    const auto links = LinkProbs::uniform(g, params.beta);
    const auto node_params = NodeParams::homogeneous(g.node_count(), params.r, params.delta, params.gamma);
    return survivability_score(g, links, node_params).score;
}

IsolationReport evaluate_strategy(const Graph& before, const Graph& after, const ScoringParams& params,
                                  IsolationReport report) {
    if (before.node_count() != after.node_count())
        throw std::invalid_argument("evaluate_strategy: graphs must share the node set");
    report.lambda1_before = adjacency_spectral_radius(before).value;
    report.lambda1_after = adjacency_spectral_radius(after).value;
    report.score_before = homogeneous_score(before, params);
    report.score_after = homogeneous_score(after, params);
    report.threshold_crossed = *report.score_before >= 1.0 && *report.score_after < 1.0;
    report.components_after = connected_components(after);
    return report;
}

std::pair<Graph, IsolationReport> greedy_edge_removal(const Graph& g, std::size_t k) {
    if (k > g.edge_count())
        throw std::invalid_argument("greedy_edge_removal: k exceeds the edge count");
    Graph out = g;
    IsolationReport report;
    report.strategy = "greedy";

    auto radius = [](const Graph& h) {
        return h.edge_count() == 0 ? SpectralResult{0.0, std::vector<double>(h.node_count(), 0.0), 0, 0.0}
                                   : adjacency_spectral_radius(h);
    };

    SpectralResult current = radius(out);
    report.lambda1_before = current.value;
    report.lambda1_trace.push_back(current.value);
    for (std::size_t step = 0; step < k; ++step) {
        const auto& x = current.vector;
        Edge best;
        double best_score = -1.0;
        for (const Edge& e : out.edges()) {
            const double score = x[e.u] * x[e.v];
            if (score > best_score) {
                best_score = score;
                best = e;
            }
        }
        out.remove_edge(best.u, best.v);
        report.removed_edges.push_back(best);
        current = radius(out);
        report.lambda1_trace.push_back(current.value);
    }
    report.edges_removed = report.removed_edges.size();
    report.lambda1_after = current.value;
    report.components_after = connected_components(out);
    return {std::move(out), std::move(report)};
}

namespace {

// v0..vi, vk, vk-1, ..., vi+1
std::vector<node_t> rotate(const std::vector<node_t>& path, std::size_t i) {
    std::vector<node_t> out(path.begin(), path.begin() + static_cast<std::ptrdiff_t>(i + 1));
    out.insert(out.end(), path.rbegin(), path.rend() - static_cast<std::ptrdiff_t>(i + 1));
    return out;
}

}  // namespace

CycleSearch nn_hamiltonian_cycle(const Graph& g, node_t start, std::size_t rotation_budget_factor) {
    const std::size_t n = g.node_count();
    if (start >= n)
        throw std::invalid_argument("nn_hamiltonian_cycle: start node out of range");

    CycleSearch result;
    if (n < 3) {
        result.path = {start};
        result.diagnostic = "a simple graph needs at least 3 nodes for a cycle";
        return result;
    }

    std::vector<bool> visited(n, false);
    std::vector<node_t> path{start};
    visited[start] = true;
    std::size_t budget = rotation_budget_factor * n;

    auto has_unvisited_neighbor = [&](node_t v) {
        const auto nb = g.neighbors(v);
        return std::any_of(nb.begin(), nb.end(), [&](node_t w) { return !visited[w]; });
    };
    auto closes = [&](const std::vector<node_t>& p) {
        return p.size() == n && g.has_edge(p.back(), start);
    };

    while (true) {
        // greedy extension
        const node_t end = path.back();
        std::optional<node_t> next;
        for (node_t w : g.neighbors(end)) {
            if (visited[w])
                continue;
            if (!next || g.degree(w) < g.degree(*next))
                next = w;  // neighbors are sorted, so ties keep the lowest id
        }
        if (next) {
            visited[*next] = true;
            path.push_back(*next);
            continue;
        }
        if (closes(path)) {
            result.success = true;
            result.path = std::move(path);
            return result;
        }

        // stalled: breadth-first search over rotations for a usable endpoint
        std::optional<std::vector<node_t>> found;
        std::vector<bool> seen_end(n, false);
        seen_end[path.back()] = true;
        std::deque<std::vector<node_t>> queue{path};
        std::vector<std::size_t> position(n);
        while (!queue.empty() && !found && budget > 0) {
            const auto current = std::move(queue.front());
            queue.pop_front();
            for (std::size_t k = 0; k < current.size(); ++k)
                position[current[k]] = k;
            std::vector<std::size_t> pivots;
            for (node_t w : g.neighbors(current.back()))
                if (visited[w] && position[w] + 2 < current.size())
                    pivots.push_back(position[w]);
            std::sort(pivots.begin(), pivots.end());
            for (std::size_t i : pivots) {
                if (budget == 0)
                    break;
                --budget;
                auto rotated = rotate(current, i);
                const node_t e = rotated.back();
                if (seen_end[e])
                    continue;
                seen_end[e] = true;
                if (has_unvisited_neighbor(e) || closes(rotated)) {
                    found = std::move(rotated);
                    break;
                }
                queue.push_back(std::move(rotated));
            }
        }
        if (!found) {
            result.path = std::move(path);
            result.diagnostic = result.path.size() == n
                                    ? "visited all nodes but no rotation exposes an edge back to the start"
                                    : "walk stuck after " + std::to_string(result.path.size() - 1) +
                                          " hops; no rotation exposes an unvisited neighbor";
            if (budget == 0)
                result.diagnostic += " (rotation budget exhausted)";
            return result;
        }
        path = std::move(*found);
    }
}

std::pair<Graph, IsolationReport> prune_to_cycle(const Graph& g, std::span<const node_t> cycle) {
    const std::size_t n = g.node_count();
    if (cycle.size() != n || n < 3)
        throw std::invalid_argument("prune_to_cycle: cycle must visit all " + std::to_string(n) + " nodes");
    std::vector<bool> seen(n, false);
    for (node_t v : cycle) {
        if (v >= n || seen[v])
            throw std::invalid_argument("prune_to_cycle: cycle repeats or leaves the node set");
        seen[v] = true;
    }
    Graph out(n);
    for (std::size_t k = 0; k < n; ++k) {
        const node_t a = cycle[k], b = cycle[(k + 1) % n];
        if (!g.has_edge(a, b))
            throw std::invalid_argument("prune_to_cycle: (" + std::to_string(a) + "," + std::to_string(b) +
                                        ") is not an edge of the graph");
        out.add_edge(a, b);
    }
    IsolationReport report;
    report.strategy = "cycle";
    for (const Edge& e : g.edges())
        if (!out.has_edge(e.u, e.v))
            report.removed_edges.push_back(e);
    report.edges_removed = report.removed_edges.size();
    report.lambda1_before = adjacency_spectral_radius(g).value;
    report.lambda1_after = adjacency_spectral_radius(out).value;
    report.components_after = connected_components(out);
    return {std::move(out), std::move(report)};
}

std::pair<Graph, IsolationReport> rewire_to_lattice(const Graph& g) {
    const std::size_t n = g.node_count();
    if (n < 9)
        throw std::invalid_argument("rewire_to_lattice: needs at least 9 nodes");

    auto factor = [](std::size_t count) -> std::size_t {
        auto rows = static_cast<std::size_t>(std::sqrt(static_cast<double>(count)));
        while (rows * rows > count)
            --rows;
        for (; rows >= 3; --rows)
            if (count % rows == 0)
                return rows;
        return 0;
    };

    std::size_t used = n;
    std::size_t rows = factor(used);
    while (rows == 0) {
        --used;
        rows = factor(used);
    }
    const std::size_t cols = used / rows;

    Graph out = gen_lattice4(rows, cols);
    Graph full(n);
    for (const Edge& e : out.edges())
        full.add_edge(e.u, e.v);

    IsolationReport report;
    report.strategy = "lattice";
    report.rows = rows;
    report.cols = cols;
    if (used < n) {
        const auto a = static_cast<node_t>(used - 2), b = static_cast<node_t>(used - 1);
        full.remove_edge(a, b);
        node_t prev = a;
        for (auto s = static_cast<node_t>(used); s < n; ++s) {
            full.add_edge(prev, s);
            report.surplus_nodes.push_back(s);
            prev = s;
        }
        full.add_edge(prev, b);
    }

    for (const Edge& e : g.edges())
        if (!full.has_edge(e.u, e.v))
            report.removed_edges.push_back(e);
    report.edges_removed = report.removed_edges.size();
    std::size_t kept = g.edge_count() - report.edges_removed;
    report.edges_added = full.edge_count() - kept;
    report.lambda1_before = g.edge_count() ? adjacency_spectral_radius(g).value : 0.0;
    report.lambda1_after = adjacency_spectral_radius(full).value;
    report.components_after = connected_components(full);
    return {std::move(full), std::move(report)};
}

}  // namespace netepi
