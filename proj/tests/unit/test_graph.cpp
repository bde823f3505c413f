#include <catch_amalgamated.hpp>

#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "netepi/errors.hpp"
#include "netepi/graph.hpp"
#include "netepi/random.hpp"
#include "oracles.hpp"

using namespace netepi;
using Catch::Matchers::WithinAbs;

TEST_CASE("edges are stored once, lower endpoint first") {
    Graph g(4);
    REQUIRE(g.add_edge(2, 1));
    REQUIRE_FALSE(g.add_edge(1, 2));
    REQUIRE(g.edge_count() == 1);
    REQUIRE(g.has_edge(1, 2));
    REQUIRE(g.has_edge(2, 1));
    REQUIRE(g.edges().front() == Edge(1, 2));
    REQUIRE_THROWS_AS(g.add_edge(3, 3), std::invalid_argument);
    REQUIRE_THROWS_AS(g.add_edge(0, 4), std::invalid_argument);
    REQUIRE(g.remove_edge(1, 2));
    REQUIRE_FALSE(g.remove_edge(1, 2));
    REQUIRE(g.edge_count() == 0);
}

TEST_CASE("from_edges rejects duplicates in either order") {
    std::vector<Edge> edges{{0, 1}, {1, 0}};
    REQUIRE_THROWS_AS(Graph::from_edges(3, edges), std::invalid_argument);
}

TEST_CASE("binomial graph") {
    SECTION("p = 0 gives no edges") {
        REQUIRE(gen_binomial(10, 0.0, 5).edge_count() == 0);
    }
    SECTION("p = 1 gives the complete graph") {
        REQUIRE(gen_binomial(5, 1.0, 5).edge_count() == 10);
    }
    SECTION("edge count within four standard deviations of the binomial mean") {
        const double trials = 1000.0 * 999.0 / 2.0;
        const double mean = trials * 0.01;
        const double sd = std::sqrt(trials * 0.01 * 0.99);
        const auto m = static_cast<double>(gen_binomial(1000, 0.01, 42).edge_count());
        REQUIRE(std::abs(m - mean) < 4.0 * sd);
    }
    SECTION("mean edge count over 200 seeds within 5%") {
        double total = 0.0;
        for (std::uint64_t seed = 0; seed < 200; ++seed)
            total += static_cast<double>(gen_binomial(200, 0.05, seed).edge_count());
        const double expected = 0.05 * 200.0 * 199.0 / 2.0;
        REQUIRE(std::abs(total / 200.0 - expected) < 0.05 * expected);
    }
    SECTION("invalid arguments") {
        REQUIRE_THROWS_AS(gen_binomial(10, 1.5, 1), std::invalid_argument);
        REQUIRE_THROWS_AS(gen_binomial(10, -0.1, 1), std::invalid_argument);
        REQUIRE_THROWS_AS(gen_binomial(0, 0.5, 1), std::invalid_argument);
    }
}

TEST_CASE("preferential attachment graph") {
    SECTION("n = m + 1 is the seed clique") {
        const auto g = gen_powerlaw(3, 2, 9);
        REQUIRE(g.edge_count() == 3);
        REQUIRE(degree_distribution(g).histogram == std::map<std::size_t, std::size_t>{{2, 3}});
    }
    SECTION("edge count formula") {
        REQUIRE(gen_powerlaw(1000, 2, 11).edge_count() == 3 + 997 * 2);
        REQUIRE(gen_powerlaw(200, 3, 11).edge_count() == 6 + 196 * 3);
    }
    SECTION("tail exponent of a large instance") {
        const auto g = gen_powerlaw(10000, 2, 2024);
        std::vector<std::size_t> degrees;
        for (node_t v = 0; v < g.node_count(); ++v)
            degrees.push_back(g.degree(v));
        const double alpha = oracle::powerlaw_tail_exponent(degrees, 4);
        INFO("alpha = " << alpha);
        REQUIRE(alpha >= 2.0);
        REQUIRE(alpha <= 3.5);
    }
    SECTION("connected") {
        REQUIRE(connected_components(gen_powerlaw(500, 2, 3)) == 1);
    }
    SECTION("invalid arguments") {
        REQUIRE_THROWS_AS(gen_powerlaw(2, 2, 1), std::invalid_argument);
        REQUIRE_THROWS_AS(gen_powerlaw(10, 0, 1), std::invalid_argument);
    }
}

TEST_CASE("exponential degree graph") {
    SECTION("huge rate clamps both degrees to one") {
        const auto g = gen_exponential(2, 1e6, 3);
        REQUIRE(g.edge_count() == 1);
        REQUIRE(g.degree(0) == 1);
        REQUIRE(g.degree(1) == 1);
    }
    SECTION("sampled target degrees have mean near 1/lambda") {
        rng_t rng(17);
        const auto d = sample_exponential_degrees(2000, 0.25, rng);
        const double mean = std::accumulate(d.begin(), d.end(), 0.0) / static_cast<double>(d.size());
        REQUIRE(std::abs(mean - 4.0) < 0.4);
        REQUIRE(std::accumulate(d.begin(), d.end(), std::size_t{0}) % 2 == 0);
        REQUIRE(*std::min_element(d.begin(), d.end()) >= 1);
    }
    SECTION("realized graph is simple and never exceeds the targets") {
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            rng_t rng(seed);
            const auto d = sample_exponential_degrees(300, 0.3, rng);
            const auto g = configuration_model(d, rng);
            REQUIRE(oracle::is_simple_graph(g));
            for (node_t v = 0; v < g.node_count(); ++v)
                REQUIRE(g.degree(v) <= d[v]);
        }
    }
    SECTION("invalid arguments") {
        REQUIRE_THROWS_AS(gen_exponential(10, 0.0, 1), std::invalid_argument);
        REQUIRE_THROWS_AS(gen_exponential(10, -1.0, 1), std::invalid_argument);
        REQUIRE_THROWS_AS(gen_exponential(1, 1.0, 1), std::invalid_argument);
    }
}

TEST_CASE("torus lattice") {
    for (auto [rows, cols] : {std::pair{3, 3}, {10, 10}, {3, 7}, {25, 40}}) {
        const auto g = gen_lattice4(rows, cols);
        REQUIRE(g.node_count() == static_cast<std::size_t>(rows * cols));
        REQUIRE(g.edge_count() == static_cast<std::size_t>(2 * rows * cols));
        REQUIRE(degree_distribution(g).histogram ==
                std::map<std::size_t, std::size_t>{{4, static_cast<std::size_t>(rows * cols)}});
    }
    REQUIRE_THAT(oracle::dense_symmetric_max(oracle::dense_adjacency(gen_lattice4(10, 10))), WithinAbs(4.0, 1e-10));
    const auto g = gen_lattice4(4, 5);
    REQUIRE(g.has_edge(0, 1));
    REQUIRE(g.has_edge(0, 4));
    REQUIRE(g.has_edge(0, 5));
    REQUIRE(g.has_edge(0, 15));
    REQUIRE_THROWS_AS(gen_lattice4(2, 5), std::invalid_argument);
    REQUIRE_THROWS_AS(gen_lattice4(5, 2), std::invalid_argument);
}

TEST_CASE("degree distribution") {
    REQUIRE(degree_distribution(Graph(4)).histogram == std::map<std::size_t, std::size_t>{{0, 4}});
    REQUIRE(degree_distribution(gen_binomial(5, 1.0, 0)).histogram == std::map<std::size_t, std::size_t>{{4, 5}});
    const auto d = degree_distribution(gen_lattice4(5, 5));
    REQUIRE(d.histogram == std::map<std::size_t, std::size_t>{{4, 25}});
    REQUIRE(d.n == 25);
}

TEST_CASE("every generator output is a simple graph, deterministic in its seed") {
    for (std::uint64_t seed : {0ULL, 1ULL, 99ULL, 123456789ULL}) {
        const auto b = gen_binomial(150, 0.04, seed);
        const auto p = gen_powerlaw(150, 3, seed);
        const auto e = gen_exponential(150, 0.2, seed);
        for (const auto* g : {&b, &p, &e})
            REQUIRE(oracle::is_simple_graph(*g));
        REQUIRE(b == gen_binomial(150, 0.04, seed));
        REQUIRE(p == gen_powerlaw(150, 3, seed));
        REQUIRE(e == gen_exponential(150, 0.2, seed));
    }
    REQUIRE_FALSE(gen_powerlaw(150, 3, 1) == gen_powerlaw(150, 3, 2));
}

TEST_CASE("edge list round trip and errors") {
    SECTION("round trip") {
        const auto g = gen_lattice4(3, 3);
        std::stringstream s;
        save_edge_list(g, s);
        REQUIRE(load_edge_list(s) == g);
    }
    SECTION("comments and reversed endpoints are accepted") {
        std::istringstream s("# header\n3\n2 0 # trailing\n\n1 2\n");
        const auto g = load_edge_list(s);
        REQUIRE(g.node_count() == 3);
        REQUIRE(g.edge_count() == 2);
        REQUIRE(g.has_edge(0, 2));
    }
    auto fails_on_line = [](const std::string& text, std::size_t line) {
        std::istringstream s(text);
        try {
            load_edge_list(s);
        } catch (const parse_error& e) {
            return e.line() == line;
        }
        return false;
    };
    SECTION("duplicate edge") { REQUIRE(fails_on_line("5\n0 1\n1 0\n", 3)); }
    SECTION("out of range endpoint") { REQUIRE(fails_on_line("3\n0 7\n", 2)); }
    SECTION("malformed lines") {
        REQUIRE(fails_on_line("3\n0 x\n", 2));
        REQUIRE(fails_on_line("3\n0 1 2\n", 2));
        REQUIRE(fails_on_line("3\n1 1\n", 2));
        REQUIRE(fails_on_line("abc\n", 1));
    }
}

TEST_CASE("connected components") {
    Graph g(6);
    g.add_edge(0, 1);
    g.add_edge(2, 3);
    REQUIRE(connected_components(g) == 4);
    REQUIRE(connected_components(gen_lattice4(4, 4)) == 1);
}
