#pragma once

#include <cstddef>
#include <iosfwd>
#include <string_view>
#include <vector>

namespace netepi::ode {

/// Per-capita rates. mu is only used by the endemic SIR model.
struct Params {
    double beta = 0.0;
    double gamma = 0.0;
    double mu = 0.0;
};

/// Population fractions. For SIS, r stays 0.
struct State {
    double s = 1.0;
    double i = 0.0;
    double r = 0.0;
};

struct Derivative {
    double ds = 0.0;
    double di = 0.0;
    double dr = 0.0;
};

enum class Model { sir_epidemic, sir_endemic, sis };

Model parse_model(std::string_view name);
std::string_view model_name(Model m);

Derivative sir_epidemic_rhs(const State& st, const Params& pr);
Derivative sir_endemic_rhs(const State& st, const Params& pr);
Derivative sis_rhs(const State& st, const Params& pr);
Derivative rhs(Model m, const State& st, const Params& pr);

struct Trajectory {
    std::vector<double> times;
    std::vector<State> states;
};

/*
 * Classical fixed-step RK4 from t=0 to t_end (the last step is shortened to
 * land exactly on t_end). Every `record_every`-th step is kept, plus the
 * initial and final states.
 *
 * Throws std::invalid_argument for dt <= 0, t_end < dt or an invalid start
 * state, and instability_error once any component leaves [-1e-9, 1+1e-9]
 * or exceeds 10 in magnitude.
 */
Trajectory integrate(Model m, const State& st0, const Params& pr, double dt, double t_end,
                     std::size_t record_every = 1);

/// "t,s,i,r" CSV.
void write_csv(std::ostream& out, const Trajectory& tr);

}  // namespace netepi::ode
