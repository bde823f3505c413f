#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "netepi/graph.hpp"
#include "netepi/meanfield.hpp"

namespace netepi {

/// Homogeneous parameters used to score a graph before and after a strategy.
struct ScoringParams {
    double r = 1.0;
    double beta = 0.0;
    double delta = 0.0;
    double gamma = 0.0;
};

struct IsolationReport {
    std::string strategy;
    std::vector<Edge> removed_edges;
    std::size_t edges_removed = 0;
    std::size_t edges_added = 0;   // lattice rewiring only
    double lambda1_before = 0.0;
    double lambda1_after = 0.0;
    std::vector<double> lambda1_trace;  // greedy: lambda1 after each removal, starting with lambda1_before
    std::optional<double> score_before;
    std::optional<double> score_after;
    bool threshold_crossed = false;     // score went from >= 1 to < 1
    std::size_t components_after = 0;
    // lattice rewiring
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<node_t> surplus_nodes;
};

/*
 * Removes k edges one at a time, each time the edge maximizing x_u * x_v for
 * the current dominant adjacency eigenvector x (ties: smallest (u, v)).
 * Throws std::invalid_argument if k exceeds the edge count.
 */
std::pair<Graph, IsolationReport> greedy_edge_removal(const Graph& g, std::size_t k);

struct CycleSearch {
    bool success = false;
    std::vector<node_t> path;  // Hamiltonian cycle on success (start first, closing edge implied)
    std::string diagnostic;
};

/*
 * Nearest-neighbor Hamiltonian cycle heuristic on an unweighted graph. The
 * walk steps to the unvisited neighbor of smallest degree (ties: lowest id).
 * When it gets stuck, or covers every node without an edge back to start,
 * the path is re-shaped by rotations (reverse the tail after a neighbor of
 * the current end) to expose a new endpoint; at most
 * `rotation_budget_factor * n` rotations are tried over the whole search.
 * Failure returns the path reached when the search gave up.
 */
CycleSearch nn_hamiltonian_cycle(const Graph& g, node_t start, std::size_t rotation_budget_factor = 4);

/// Keeps only the edges of `cycle`. Throws std::invalid_argument if it is not
/// a Hamiltonian cycle of g.
std::pair<Graph, IsolationReport> prune_to_cycle(const Graph& g, std::span<const node_t> cycle);

/*
 * Replaces the edge set with a rows x cols torus on nodes 0..rows*cols-1,
 * rows being the largest divisor of n' in [3, floor(sqrt(n'))] and n' the
 * largest count <= n that has such a divisor. Surplus nodes n'..n-1 are
 * spliced into the torus edge (n'-2, n'-1) as a chain. Throws for n < 9.
 */
std::pair<Graph, IsolationReport> rewire_to_lattice(const Graph& g);

/// Fills lambda1, survivability scores (uniform beta on the surviving edges),
/// threshold crossing and component count for a before/after pair.
IsolationReport evaluate_strategy(const Graph& before, const Graph& after, const ScoringParams& params,
                                  IsolationReport report = {});

/// Survivability score of g under homogeneous parameters.
double homogeneous_score(const Graph& g, const ScoringParams& params);

}  // namespace netepi
