#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace netepi {

/// Malformed edge-list input. `line()` is 1-based.
class parse_error : public std::runtime_error {
public:
    parse_error(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// ODE integration left the valid region or blew up.
class instability_error : public std::runtime_error {
public:
    instability_error(std::size_t step, const std::string& what)
        : std::runtime_error("step " + std::to_string(step) + ": " + what), step_(step) {}
    std::size_t step() const noexcept { return step_; }

private:
    std::size_t step_;
};

/// A mean-field update produced a probability outside [0,1].
class bound_violation : public std::runtime_error {
public:
    bound_violation(std::size_t step, std::size_t node, const std::string& what)
        : std::runtime_error("step " + std::to_string(step) + ", node " + std::to_string(node) +
                             ": " + what),
          step_(step),
          node_(node) {}
    std::size_t step() const noexcept { return step_; }
    std::size_t node() const noexcept { return node_; }

private:
    std::size_t step_;
    std::size_t node_;
};

/// Power iteration ran out of iterations.
class convergence_error : public std::runtime_error {
public:
    convergence_error(std::size_t iterations, double residual)
        : std::runtime_error("power iteration did not converge after " +
                             std::to_string(iterations) + " iterations (residual " +
                             std::to_string(residual) + ")"),
          iterations_(iterations),
          residual_(residual) {}
    std::size_t iterations() const noexcept { return iterations_; }
    double residual() const noexcept { return residual_; }

private:
    std::size_t iterations_;
    double residual_;
};

}  // namespace netepi
