#include "netepi/continuous.hpp"

#include <array>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <stdexcept>
#include <string>

#include "netepi/errors.hpp"

namespace netepi::ode {

Model parse_model(std::string_view name) {
    if (name == "sir" || name == "sir_epidemic")
        return Model::sir_epidemic;
    if (name == "sir_endemic")
        return Model::sir_endemic;
    if (name == "sis")
        return Model::sis;
    throw std::invalid_argument("unknown ODE model '" + std::string(name) + "'");
}

std::string_view model_name(Model m) {
    switch (m) {
        case Model::sir_epidemic: return "sir_epidemic";
        case Model::sir_endemic: return "sir_endemic";
        case Model::sis: return "sis";
    }
    return "?";
}

Derivative sir_epidemic_rhs(const State& st, const Params& pr) {
    const double infection = pr.beta * st.i * st.s;
    const double recovery = pr.gamma * st.i;
    return {-infection, infection - recovery, recovery};
}

Derivative sir_endemic_rhs(const State& st, const Params& pr) {
    const double infection = pr.beta * st.i * st.s;
    return {-infection + pr.mu - pr.mu * st.s,
            infection - (pr.gamma + pr.mu) * st.i,
            pr.gamma * st.i - pr.mu * st.r};
}

Derivative sis_rhs(const State& st, const Params& pr) {
    // single flux so that ds + di is exactly zero
    const double flux = pr.beta * st.i * st.s - pr.gamma * st.i;
    return {-flux, flux, 0.0};
}

Derivative rhs(Model m, const State& st, const Params& pr) {
    switch (m) {
        case Model::sir_epidemic: return sir_epidemic_rhs(st, pr);
        case Model::sir_endemic: return sir_endemic_rhs(st, pr);
        case Model::sis: return sis_rhs(st, pr);
    }
    throw std::logic_error("invalid ODE model");
}

namespace {

State advance(const State& st, const Derivative& d, double h) {
    return {st.s + h * d.ds, st.i + h * d.di, st.r + h * d.dr};
}

State rk4_step(Model m, const State& st, const Params& pr, double h) {
    const Derivative k1 = rhs(m, st, pr);
    const Derivative k2 = rhs(m, advance(st, k1, h / 2), pr);
    const Derivative k3 = rhs(m, advance(st, k2, h / 2), pr);
    const Derivative k4 = rhs(m, advance(st, k3, h), pr);
    const double w = h / 6.0;
    return {st.s + w * (k1.ds + 2 * k2.ds + 2 * k3.ds + k4.ds),
            st.i + w * (k1.di + 2 * k2.di + 2 * k3.di + k4.di),
            st.r + w * (k1.dr + 2 * k2.dr + 2 * k3.dr + k4.dr)};
}

void check_state(const State& st, std::size_t step) {
    constexpr double slack = 1e-9;
    const std::array<std::pair<const char*, double>, 3> parts{{{"s", st.s}, {"i", st.i}, {"r", st.r}}};
    for (const auto& [name, value] : parts) {
        if (!std::isfinite(value) || std::abs(value) > 10.0)
            throw instability_error(step, std::string("blow-up in ") + name + " = " + std::to_string(value));
        if (value < -slack || value > 1.0 + slack)
            throw instability_error(step, std::string(name) + " = " + std::to_string(value) +
                                              " left [0,1]");
    }
}

}  // namespace

Trajectory integrate(Model m, const State& st0, const Params& pr, double dt, double t_end,
                     std::size_t record_every) {
    if (!(dt > 0.0))
        throw std::invalid_argument("integrate: dt must be > 0");
    if (!(t_end >= dt))
        throw std::invalid_argument("integrate: t_end must be >= dt");
    if (pr.beta < 0 || pr.gamma < 0 || pr.mu < 0)
        throw std::invalid_argument("integrate: rates must be non-negative");
    if (record_every == 0)
        throw std::invalid_argument("integrate: record_every must be >= 1");
    if (std::abs(st0.s + st0.i + st0.r - 1.0) > 1e-12)
        throw std::invalid_argument("integrate: initial fractions must sum to 1");
    if (m == Model::sis && st0.r != 0.0)
        throw std::invalid_argument("integrate: SIS state has no recovered class");
    check_state(st0, 0);

    // step count from a rounded ratio so that e.g. 200/0.01 gives 20000, not 20001
    auto steps = static_cast<std::size_t>(std::llround(t_end / dt));
    if (static_cast<double>(steps) * dt > t_end * (1 + 1e-12))
        --steps;
    const double tail = t_end - static_cast<double>(steps) * dt;
    const bool has_tail = tail > dt * 1e-9;

    Trajectory tr;
    tr.times.push_back(0.0);
    tr.states.push_back(st0);

    State st = st0;
    const std::size_t total = steps + (has_tail ? 1 : 0);
    for (std::size_t k = 1; k <= total; ++k) {
        const bool last = k == total;
        const double h = (has_tail && last) ? tail : dt;
        st = rk4_step(m, st, pr, h);
        check_state(st, k);
        if (k % record_every == 0 || last) {
            tr.times.push_back(last ? t_end : static_cast<double>(k) * dt);
            tr.states.push_back(st);
        }
    }
    return tr;
}

void write_csv(std::ostream& out, const Trajectory& tr) {
    const auto old_precision = out.precision(15);
    out << "t,s,i,r\n";
    for (std::size_t k = 0; k < tr.times.size(); ++k) {
        const State& st = tr.states[k];
        out << tr.times[k] << ',' << st.s << ',' << st.i << ',' << st.r << '\n';
    }
    out.precision(old_precision);
}

}  // namespace netepi::ode
