#include <catch_amalgamated.hpp>

#include <cmath>
#include <sstream>

#include "netepi/continuous.hpp"
#include "netepi/errors.hpp"
#include "oracles.hpp"

using namespace netepi::ode;
using Catch::Matchers::WithinAbs;

TEST_CASE("SIR epidemic right-hand side") {
    const Params pr{0.8, 0.1, 0.0};
    auto d = sir_epidemic_rhs({1.0, 0.0, 0.0}, pr);
    REQUIRE(d.ds == 0.0);
    REQUIRE(d.di == 0.0);

    d = sir_epidemic_rhs({0.9, 0.1, 0.0}, pr);
    REQUIRE_THAT(d.ds, WithinAbs(-0.072, 1e-15));
    REQUIRE_THAT(d.di, WithinAbs(0.062, 1e-15));
    REQUIRE_THAT(d.ds + d.di + d.dr, WithinAbs(0.0, 1e-15));

    d = sir_epidemic_rhs({0.1 / 0.8, 0.3, 0.575}, pr);
    REQUIRE_THAT(d.di, WithinAbs(0.0, 1e-15));
}

TEST_CASE("SIR endemic right-hand side") {
    const Params pr{0.8, 0.1, 0.02};
    auto d = sir_endemic_rhs({1.0, 0.0, 0.0}, pr);
    REQUIRE_THAT(d.ds, WithinAbs(0.0, 1e-15));
    REQUIRE_THAT(d.di, WithinAbs(0.0, 1e-15));

    const double s = (pr.gamma + pr.mu) / pr.beta;
    const double i = pr.mu * (pr.beta - pr.gamma - pr.mu) / (pr.beta * (pr.gamma + pr.mu));
    d = sir_endemic_rhs({s, i, 1.0 - s - i}, pr);
    REQUIRE(std::hypot(d.ds, d.di) < 1e-12);

    for (double sv : {0.2, 0.5, 0.9}) {
        const State st{sv, 0.05, 0.95 - sv};
        const auto a = sir_endemic_rhs(st, {0.8, 0.1, 0.0});
        const auto b = sir_epidemic_rhs(st, {0.8, 0.1, 0.0});
        REQUIRE(a.ds == b.ds);
        REQUIRE(a.di == b.di);
    }
}

TEST_CASE("SIS right-hand side") {
    const Params pr{1.0, 0.1, 0.0};
    auto d = sis_rhs({1.0, 0.0, 0.0}, pr);
    REQUIRE(d.ds == 0.0);
    REQUIRE(d.di == 0.0);
    d = sis_rhs({0.5, 0.5, 0.0}, pr);
    REQUIRE_THAT(d.ds, WithinAbs(-0.2, 1e-15));
    REQUIRE_THAT(d.di, WithinAbs(0.2, 1e-15));
    for (double i : {0.01, 0.3, 0.77}) {
        d = sis_rhs({1.0 - i, i, 0.0}, pr);
        REQUIRE(d.ds + d.di == 0.0);
    }
    d = sis_rhs({0.1, 0.9, 0.0}, pr);
    REQUIRE(std::abs(d.di) < 1e-12);
}

TEST_CASE("SIS converges to 1 - gamma/beta") {
    const auto tr = integrate(Model::sis, {0.99, 0.01, 0.0}, {1.0, 0.1, 0.0}, 0.01, 200.0);
    REQUIRE_THAT(tr.states.back().i, WithinAbs(0.9, 1e-6));
    REQUIRE_THAT(tr.times.back(), WithinAbs(200.0, 1e-9));
    for (std::size_t k = 1; k < tr.states.size(); ++k) {
        REQUIRE(tr.times[k] > tr.times[k - 1]);
        REQUIRE(tr.states[k].i >= tr.states[k - 1].i - 1e-15);
        REQUIRE(std::abs(tr.states[k].s + tr.states[k].i - 1.0) < 1e-12);
    }
}

TEST_CASE("SIR final size and single peak") {
    const double s0 = 0.999;
    const auto tr = integrate(Model::sir_epidemic, {s0, 0.001, 0.0}, {0.8, 0.1, 0.0}, 0.01, 300.0);
    const double expected = oracle::sir_final_size(s0, 8.0);
    REQUIRE_THAT(tr.states.back().s, WithinAbs(expected, 1e-3));

    std::size_t maxima = 0;
    for (std::size_t k = 1; k + 1 < tr.states.size(); ++k)
        if (tr.states[k].i > tr.states[k - 1].i && tr.states[k].i >= tr.states[k + 1].i)
            ++maxima;
    REQUIRE(maxima == 1);

    for (std::size_t k = 1; k < tr.states.size(); ++k) {
        REQUIRE(tr.states[k].s <= tr.states[k - 1].s);
        const auto& st = tr.states[k];
        REQUIRE(std::abs(st.s + st.i + st.r - 1.0) < 1e-12);
    }
}

TEST_CASE("SIR with no infection stays constant") {
    const auto tr = integrate(Model::sir_epidemic, {0.7, 0.0, 0.3}, {0.8, 0.1, 0.0}, 0.1, 20.0);
    for (const auto& st : tr.states) {
        REQUIRE(st.s == 0.7);
        REQUIRE(st.i == 0.0);
        REQUIRE(st.r == 0.3);
    }
}

TEST_CASE("endemic SIR approaches its interior equilibrium and conserves mass") {
    const Params pr{0.8, 0.1, 0.05};
    const auto tr = integrate(Model::sir_endemic, {0.99, 0.01, 0.0}, pr, 0.01, 2000.0, 1000);
    const double s = (pr.gamma + pr.mu) / pr.beta;
    const double i = pr.mu * (pr.beta - pr.gamma - pr.mu) / (pr.beta * (pr.gamma + pr.mu));
    REQUIRE_THAT(tr.states.back().s, WithinAbs(s, 1e-6));
    REQUIRE_THAT(tr.states.back().i, WithinAbs(i, 1e-6));
    for (const auto& st : tr.states)
        REQUIRE(std::abs(st.s + st.i + st.r - 1.0) < 1e-12);
}

TEST_CASE("RK4 observed order on SIS") {
    auto terminal = [](double dt) {
        return integrate(Model::sis, {0.99, 0.01, 0.0}, {1.0, 0.1, 0.0}, dt, 8.0).states.back().i;
    };
    const double a = terminal(0.4), b = terminal(0.2), c = terminal(0.1);
    const double order = std::log2(std::abs(a - b) / std::abs(b - c));
    INFO("observed order " << order);
    REQUIRE(order >= 3.5);
}

TEST_CASE("integration errors") {
    REQUIRE_THROWS_AS(integrate(Model::sis, {0.9, 0.1, 0.0}, {1.0, 0.1, 0.0}, 0.0, 1.0), std::invalid_argument);
    REQUIRE_THROWS_AS(integrate(Model::sis, {0.9, 0.1, 0.0}, {1.0, 0.1, 0.0}, 0.5, 0.1), std::invalid_argument);
    REQUIRE_THROWS_AS(integrate(Model::sis, {0.9, 0.1, 0.0}, {-1.0, 0.1, 0.0}, 0.1, 1.0), std::invalid_argument);
    // A step far beyond RK4's stability region leaves the unit interval.
    REQUIRE_THROWS_AS(integrate(Model::sis, {0.5, 0.5, 0.0}, {50.0, 0.0, 0.0}, 1.0, 10.0), netepi::instability_error);
}

TEST_CASE("trajectory CSV") {
    const auto tr = integrate(Model::sis, {0.99, 0.01, 0.0}, {1.0, 0.1, 0.0}, 0.5, 1.0);
    std::ostringstream out;
    write_csv(out, tr);
    const auto text = out.str();
    REQUIRE(text.rfind("t,s,i,r\n", 0) == 0);
    REQUIRE(std::count(text.begin(), text.end(), '\n') == 1 + static_cast<long>(tr.states.size()));
}

TEST_CASE("model names") {
    REQUIRE(parse_model("sir") == Model::sir_epidemic);
    REQUIRE(parse_model("sir_endemic") == Model::sir_endemic);
    REQUIRE(parse_model("sis") == Model::sis);
    REQUIRE_THROWS_AS(parse_model("seir"), std::invalid_argument);
}
