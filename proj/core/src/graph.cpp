#include "netepi/graph.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace netepi {

Graph Graph::from_edges(std::size_t n, std::span<const Edge> edges) {
    Graph g(n);
    for (const Edge& e : edges) {
        if (!g.add_edge(e.u, e.v))
            throw std::invalid_argument("duplicate edge (" + std::to_string(e.u) + "," +
                                        std::to_string(e.v) + ")");
    }
    return g;
}

std::size_t Graph::max_degree() const {
    std::size_t best = 0;
    for (const auto& nb : adjacency_)
        best = std::max(best, nb.size());
    return best;
}

bool Graph::has_edge(node_t a, node_t b) const {
    if (a >= node_count() || b >= node_count())
        return false;
    const auto& nb = adjacency_[a];
    return std::binary_search(nb.begin(), nb.end(), b);
}

bool Graph::add_edge(node_t a, node_t b) {
    if (a == b)
        throw std::invalid_argument("self-loop at node " + std::to_string(a));
    if (a >= node_count() || b >= node_count())
        throw std::invalid_argument("edge (" + std::to_string(a) + "," + std::to_string(b) +
                                    ") has an endpoint >= n=" + std::to_string(node_count()));
    auto& na = adjacency_[a];
    auto pos = std::lower_bound(na.begin(), na.end(), b);
    if (pos != na.end() && *pos == b)
        return false;
    na.insert(pos, b);
    auto& nb = adjacency_[b];
    nb.insert(std::lower_bound(nb.begin(), nb.end(), a), a);
    ++edges_;
    return true;
}

bool Graph::remove_edge(node_t a, node_t b) {
    if (!has_edge(a, b))
        return false;
    auto& na = adjacency_[a];
    na.erase(std::lower_bound(na.begin(), na.end(), b));
    auto& nb = adjacency_[b];
    nb.erase(std::lower_bound(nb.begin(), nb.end(), a));
    --edges_;
    return true;
}

std::vector<Edge> Graph::edges() const {
    std::vector<Edge> out;
    out.reserve(edges_);
    for (node_t u = 0; u < node_count(); ++u)
        for (node_t v : adjacency_[u])
            if (u < v)
                out.emplace_back(u, v);
    return out;
}

DegreeDistribution degree_distribution(const Graph& g) {
    DegreeDistribution d;
    d.n = g.node_count();
    for (node_t v = 0; v < g.node_count(); ++v)
        ++d.histogram[g.degree(v)];
    return d;
}

std::size_t connected_components(const Graph& g) {
    const std::size_t n = g.node_count();
    std::vector<bool> seen(n, false);
    std::vector<node_t> stack;
    std::size_t components = 0;
    for (node_t s = 0; s < n; ++s) {
        if (seen[s])
            continue;
        ++components;
        seen[s] = true;
        stack.push_back(s);
        while (!stack.empty()) {
            const node_t u = stack.back();
            stack.pop_back();
            for (node_t v : g.neighbors(u)) {
                if (!seen[v]) {
                    seen[v] = true;
                    stack.push_back(v);
                }
            }
        }
    }
    return components;
}

}  // namespace netepi
