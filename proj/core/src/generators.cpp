#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "netepi/graph.hpp"

namespace netepi {

Graph gen_binomial(std::size_t n, double p, std::uint64_t seed) {
    if (n == 0)
        throw std::invalid_argument("gen_binomial: n must be >= 1");
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("gen_binomial: p must lie in [0,1]");
    rng_t rng(seed);
    Graph g(n);
    for (node_t u = 0; u < n; ++u)
        for (node_t v = u + 1; v < n; ++v)
            if (bernoulli(rng, p))
                g.add_edge(u, v);
    return g;
}

Graph gen_powerlaw(std::size_t n, std::size_t m, std::uint64_t seed) {
    if (m < 1)
        throw std::invalid_argument("gen_powerlaw: m must be >= 1");
    if (n <= m)
        throw std::invalid_argument("gen_powerlaw: n must exceed m");
    rng_t rng(seed);
    Graph g(n);

    // Every edge contributes both endpoints, so a uniform pick from this list
    // is a degree-proportional pick of a node.
    std::vector<node_t> endpoints;
    endpoints.reserve(2 * (m * (m + 1) / 2 + (n - m - 1) * m));

    for (node_t u = 0; u <= m; ++u)
        for (node_t v = u + 1; v <= m; ++v) {
            g.add_edge(u, v);
            endpoints.push_back(u);
            endpoints.push_back(v);
        }

    std::vector<node_t> targets;
    for (node_t v = static_cast<node_t>(m + 1); v < n; ++v) {
        targets.clear();
        while (targets.size() < m) {
            const node_t t = endpoints[uniform_below(rng, endpoints.size())];
            if (std::find(targets.begin(), targets.end(), t) == targets.end())
                targets.push_back(t);
        }
        for (node_t t : targets) {
            g.add_edge(v, t);
            endpoints.push_back(v);
            endpoints.push_back(t);
        }
    }
    return g;
}

std::vector<std::size_t> sample_exponential_degrees(std::size_t n, double lambda, rng_t& rng) {
    if (!(lambda > 0.0))
        throw std::invalid_argument("gen_exponential: lambda must be > 0");
    std::vector<std::size_t> degrees(n);
    std::size_t total = 0;
    for (auto& d : degrees) {
        // inverse CDF; 1-u lies in (0,1]
        const double draw = -std::log(1.0 - uniform01(rng)) / lambda;
        const double rounded = std::round(draw);
        d = rounded < 1.0 ? 1 : static_cast<std::size_t>(rounded);
        total += d;
    }
    if (n > 0 && total % 2 == 1)
        ++degrees.back();
    return degrees;
}

Graph configuration_model(std::span<const std::size_t> degrees, rng_t& rng) {
    std::vector<node_t> stubs;
    for (node_t v = 0; v < degrees.size(); ++v)
        stubs.insert(stubs.end(), degrees[v], v);
    if (stubs.size() % 2 == 1)
        throw std::invalid_argument("configuration_model: degree sum must be even");

    for (std::size_t i = stubs.size(); i > 1; --i)
        std::swap(stubs[i - 1], stubs[uniform_below(rng, i)]);

    Graph g(degrees.size());
    for (std::size_t i = 0; i + 1 < stubs.size(); i += 2)
        if (stubs[i] != stubs[i + 1])
            g.add_edge(stubs[i], stubs[i + 1]);  // duplicates are dropped
    return g;
}

Graph gen_exponential(std::size_t n, double lambda, std::uint64_t seed) {
    if (n < 2)
        throw std::invalid_argument("gen_exponential: n must be >= 2");
    rng_t rng(seed);
    const auto degrees = sample_exponential_degrees(n, lambda, rng);
    return configuration_model(degrees, rng);
}

Graph gen_lattice4(std::size_t rows, std::size_t cols) {
    if (rows < 3 || cols < 3)
        throw std::invalid_argument("gen_lattice4: rows and cols must be >= 3");
    Graph g(rows * cols);
    auto id = [cols](std::size_t i, std::size_t j) { return static_cast<node_t>(i * cols + j); };
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) {
            g.add_edge(id(i, j), id(i, (j + 1) % cols));
            g.add_edge(id(i, j), id((i + 1) % rows, j));
        }
    return g;
}

}  // namespace netepi
