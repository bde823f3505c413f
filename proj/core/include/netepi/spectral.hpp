#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "netepi/graph.hpp"
#include "netepi/meanfield.hpp"

namespace netepi {

/*
 * Square sparse matrix: dense diagonal plus CSR off-diagonal part.
 */
class SparseMatrix {
public:
    struct Entry {
        std::size_t row;
        std::size_t col;
        double value;
    };

    SparseMatrix() = default;

    /// Off-diagonal triplets may come in any order; repeated (row, col) pairs are summed.
    SparseMatrix(std::vector<double> diagonal, std::vector<Entry> off_diagonal);

    static SparseMatrix from_dense(std::size_t n, std::span<const double> row_major);

    std::size_t size() const noexcept { return diagonal_.size(); }
    std::size_t off_diagonal_nonzeros() const noexcept { return values_.size(); }

    double at(std::size_t row, std::size_t col) const;
    std::span<const double> diagonal() const noexcept { return diagonal_; }

    /// Column indices and values of the off-diagonal entries of `row`.
    std::span<const std::size_t> row_columns(std::size_t row) const {
        return {cols_.data() + row_start_.at(row), cols_.data() + row_start_.at(row + 1)};
    }
    std::span<const double> row_values(std::size_t row) const {
        return {values_.data() + row_start_.at(row), values_.data() + row_start_.at(row + 1)};
    }

    /// y = (A + shift I) x
    void multiply(std::span<const double> x, std::span<double> y, double shift = 0.0) const;

private:
    std::vector<double> diagonal_;
    std::vector<std::size_t> row_start_;
    std::vector<std::size_t> cols_;
    std::vector<double> values_;
};

/// S_ii = 1 - delta_i, S_ij = r_j beta_ji gamma_i / (gamma_i + delta_i) for i != j.
using SystemMatrix = SparseMatrix;

SparseMatrix adjacency_matrix(const Graph& g);

/// Throws std::invalid_argument if any delta_i is 0.
SystemMatrix build_system_matrix(const Graph& g, const LinkProbs& links, const NodeParams& params);

struct SpectralResult {
    double value = 0.0;           // |lambda_1| estimate
    std::vector<double> vector;   // unit-norm dominant eigenvector
    std::size_t iterations = 0;
    double residual = 0.0;        // ||A v - lambda v||
};

struct PowerOptions {
    double tol = 1e-10;           // residual threshold
    std::size_t max_iter = 200000;  // matrix-vector products per block
    double shift = 1.0;           // iterate on A + shift I; breaks +-lambda ties on nonnegative A
    std::size_t plain_iter = 5000;  // plain power steps before switching to Krylov restarts
    std::size_t krylov_dim = 30;
};

/*
 * Power iteration for the dominant eigenpair of a nonnegative matrix, started
 * from the normalized all-ones vector. The eigenvalue estimate is the
 * Rayleigh quotient v.Av; iteration stops once ||Av - lambda v|| < tol.
 *
 * When the leading eigenvalues nearly coincide (heterogeneous diagonals with
 * weak coupling) plain iteration needs on the order of 1/gap steps. After
 * `plain_iter` steps without convergence the current iterate seeds an
 * explicitly restarted Arnoldi process instead, which restarts from the Ritz
 * vector of the rightmost Ritz value; the same residual test decides
 * convergence.
 *
 * A matrix whose nonzero pattern splits into several connected blocks is
 * handled block by block and the largest result wins; the returned vector is
 * zero outside that block. This keeps near-equal eigenvalues of separate
 * blocks (isolated nodes with similar diagonals, say) from stalling the
 * iteration. Throws convergence_error after max_iter iterations on a block.
 */
SpectralResult largest_eigenvalue_magnitude(const SparseMatrix& m, const PowerOptions& opts = {});

/// lambda_1 of the adjacency matrix.
SpectralResult adjacency_spectral_radius(const Graph& g, const PowerOptions& opts = {});

enum class ExtinctionVerdict { fast_extinction, survives, critical };

std::string_view verdict_name(ExtinctionVerdict v);  // "true", "false", "critical"

struct Survivability {
    double score = 0.0;
    ExtinctionVerdict verdict = ExtinctionVerdict::critical;
    SpectralResult spectrum;

    bool fast_extinction() const noexcept { return verdict == ExtinctionVerdict::fast_extinction; }
};

/// Scores within `critical_band` of 1 are reported as critical.
Survivability survivability_score(const Graph& g, const LinkProbs& links, const NodeParams& params,
                                  double tol = 1e-10, double critical_band = 1e-3);

/*
 * Homogeneous-case threshold on lambda_1 of the binary adjacency B.
 * `printed` is gamma / (delta (gamma + delta)) * lambda1 exactly as commonly
 * quoted; `with_broadcast` includes the r * beta factor,
 * r beta gamma / (delta (gamma + delta)) * lambda1, which is the form that
 * agrees with survivability_score < 1. Both are reported.
 */
struct HomogeneousThreshold {
    double printed = 0.0;
    double with_broadcast = 0.0;
    bool printed_fast_extinction = false;
    bool with_broadcast_fast_extinction = false;
};

HomogeneousThreshold homogeneous_threshold(double delta, double gamma, double r, double beta,
                                           double lambda1);

}  // namespace netepi
