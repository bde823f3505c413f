#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <vector>

#include "netepi/random.hpp"

namespace netepi {

using node_t = std::uint32_t;

/// Undirected edge, normalized so that u < v.
struct Edge {
    node_t u = 0;
    node_t v = 0;

    Edge() = default;
    Edge(node_t a, node_t b) : u(a < b ? a : b), v(a < b ? b : a) {}

    friend auto operator<=>(const Edge&, const Edge&) = default;
};

/*
 * Undirected simple graph on nodes 0..n-1.
 *
 * Neighbor lists are kept sorted, so iteration order (and therefore every
 * seeded simulation on top of a graph) depends only on the edge set.
 */
class Graph {
public:
    Graph() = default;
    explicit Graph(std::size_t n) : adjacency_(n) {}

    /// Throws std::invalid_argument on self-loops, duplicates or endpoints >= n.
    static Graph from_edges(std::size_t n, std::span<const Edge> edges);

    std::size_t node_count() const noexcept { return adjacency_.size(); }
    std::size_t edge_count() const noexcept { return edges_; }

    std::span<const node_t> neighbors(node_t v) const { return adjacency_.at(v); }
    std::size_t degree(node_t v) const { return adjacency_.at(v).size(); }
    std::size_t max_degree() const;

    bool has_edge(node_t a, node_t b) const;

    /// Returns false if the edge already exists. Throws on self-loop or out-of-range.
    bool add_edge(node_t a, node_t b);
    /// Returns false if the edge was absent.
    bool remove_edge(node_t a, node_t b);

    /// All edges, lexicographically sorted.
    std::vector<Edge> edges() const;

    friend bool operator==(const Graph&, const Graph&) = default;

private:
    std::vector<std::vector<node_t>> adjacency_;
    std::size_t edges_ = 0;
};

struct DegreeDistribution {
    std::map<std::size_t, std::size_t> histogram;  // degree -> node count
    std::size_t n = 0;
};

DegreeDistribution degree_distribution(const Graph& g);

std::size_t connected_components(const Graph& g);

/// Independent inclusion of each of the n(n-1)/2 pairs with probability p.
Graph gen_binomial(std::size_t n, double p, std::uint64_t seed);

/// Preferential attachment grown from a complete graph on m+1 nodes.
Graph gen_powerlaw(std::size_t n, std::size_t m, std::uint64_t seed);

/// Target degrees max(1, round(Exp(lambda))), with the sum made even by
/// incrementing the last entry.
std::vector<std::size_t> sample_exponential_degrees(std::size_t n, double lambda, rng_t& rng);

/// Configuration-model realization of `degrees`; self-loops and repeated
/// pairs are dropped, so realized degrees can fall short of the targets.
Graph configuration_model(std::span<const std::size_t> degrees, rng_t& rng);

/// Exponential degree graph: sample_exponential_degrees + configuration_model
/// on the same stream seeded with `seed`.
Graph gen_exponential(std::size_t n, double lambda, std::uint64_t seed);

/// 4-regular torus. Node (i, j) has id i*cols + j.
Graph gen_lattice4(std::size_t rows, std::size_t cols);

/*
 * Edge-list text format:
 *
 *     N
 *     u v
 *     ...
 *
 * '#' starts a comment (whole line or trailing). save_edge_list writes edges
 * sorted with u < v; load_edge_list accepts either endpoint order but rejects
 * the same unordered pair twice.
 */
void save_edge_list(const Graph& g, std::ostream& out);
Graph load_edge_list(std::istream& in);

}  // namespace netepi
