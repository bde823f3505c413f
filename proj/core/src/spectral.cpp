#include "netepi/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <limits>
#include <string>

#include <Eigen/Dense>

#include "netepi/errors.hpp"

namespace netepi {

SparseMatrix::SparseMatrix(std::vector<double> diagonal, std::vector<Entry> off_diagonal)
    : diagonal_(std::move(diagonal)) {
    const std::size_t n = diagonal_.size();
    for (const auto& e : off_diagonal) {
        if (e.row >= n || e.col >= n)
            throw std::invalid_argument("matrix entry out of range");
        if (e.row == e.col)
            throw std::invalid_argument("diagonal entries belong in the diagonal vector");
    }
    std::sort(off_diagonal.begin(), off_diagonal.end(),
              [](const Entry& a, const Entry& b) { return a.row != b.row ? a.row < b.row : a.col < b.col; });

    row_start_.assign(n + 1, 0);
    for (std::size_t k = 0; k < off_diagonal.size(); ++k) {
        const auto& e = off_diagonal[k];
        if (!cols_.empty() && k > 0 && off_diagonal[k - 1].row == e.row && off_diagonal[k - 1].col == e.col) {
            values_.back() += e.value;
            continue;
        }
        cols_.push_back(e.col);
        values_.push_back(e.value);
        ++row_start_[e.row + 1];
    }
    for (std::size_t i = 0; i < n; ++i)
        row_start_[i + 1] += row_start_[i];
}

SparseMatrix SparseMatrix::from_dense(std::size_t n, std::span<const double> row_major) {
    if (row_major.size() != n * n)
        throw std::invalid_argument("dense matrix has the wrong number of entries");
    std::vector<double> diag(n);
    std::vector<Entry> off;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const double v = row_major[i * n + j];
            if (i == j)
                diag[i] = v;
            else if (v != 0.0)
                off.push_back({i, j, v});
        }
    return {std::move(diag), std::move(off)};
}

double SparseMatrix::at(std::size_t row, std::size_t col) const {
    if (row >= size() || col >= size())
        throw std::out_of_range("matrix index out of range");
    if (row == col)
        return diagonal_[row];
    auto first = cols_.begin() + static_cast<std::ptrdiff_t>(row_start_[row]);
    auto last = cols_.begin() + static_cast<std::ptrdiff_t>(row_start_[row + 1]);
    auto it = std::lower_bound(first, last, col);
    return (it != last && *it == col) ? values_[static_cast<std::size_t>(it - cols_.begin())] : 0.0;
}

void SparseMatrix::multiply(std::span<const double> x, std::span<double> y, double shift) const {
    const std::size_t n = size();
    for (std::size_t i = 0; i < n; ++i) {
        double acc = (diagonal_[i] + shift) * x[i];
        for (std::size_t k = row_start_[i]; k < row_start_[i + 1]; ++k)
            acc += values_[k] * x[cols_[k]];
        y[i] = acc;
    }
}

SparseMatrix adjacency_matrix(const Graph& g) {
    std::vector<SparseMatrix::Entry> entries;
    entries.reserve(2 * g.edge_count());
    for (node_t u = 0; u < g.node_count(); ++u)
        for (node_t v : g.neighbors(u))
            entries.push_back({u, v, 1.0});
    return {std::vector<double>(g.node_count(), 0.0), std::move(entries)};
}

SystemMatrix build_system_matrix(const Graph& g, const LinkProbs& links, const NodeParams& params) {
    const std::size_t n = g.node_count();
    if (links.node_count() != n || params.size() != n)
        throw std::invalid_argument("graph, links and parameters disagree on the node count");
    std::vector<double> diag(n);
    std::vector<SparseMatrix::Entry> entries;
    for (node_t i = 0; i < n; ++i) {
        const double delta = params.delta[i], gamma = params.gamma[i];
        if (!(delta > 0.0))
            throw std::invalid_argument("system matrix needs delta > 0 (node " + std::to_string(i) + ")");
        diag[i] = 1.0 - delta;
        const double revival = gamma / (gamma + delta);
        // row i collects arcs j -> i
        for (const auto& arc : links.incoming(i)) {
            const double value = params.r[arc.source] * arc.beta * revival;
            if (arc.beta > 0.0 && value != 0.0)
                entries.push_back({i, arc.source, value});
        }
    }
    return {std::move(diag), std::move(entries)};
}

namespace {

double norm2(std::span<const double> v) {
    double s = 0.0;
    for (double x : v)
        s += x * x;
    return std::sqrt(s);
}

}  // namespace

namespace {

SpectralResult restarted_arnoldi(const SparseMatrix& m, std::vector<double> start, std::size_t used,
                                 const PowerOptions& opts) {
    const auto n = static_cast<Eigen::Index>(m.size());
    const auto dim = std::min<Eigen::Index>(static_cast<Eigen::Index>(std::max<std::size_t>(opts.krylov_dim, 2)), n);
    Eigen::VectorXd v = Eigen::Map<const Eigen::VectorXd>(start.data(), n).normalized();
    Eigen::VectorXd w(n), av(n);
    double residual = std::numeric_limits<double>::infinity();

    auto apply = [&](const Eigen::VectorXd& x, Eigen::VectorXd& y) {
        m.multiply(std::span<const double>(x.data(), x.size()), std::span<double>(y.data(), y.size()), opts.shift);
        ++used;
    };

    while (used < opts.max_iter) {
        Eigen::MatrixXd basis = Eigen::MatrixXd::Zero(n, dim + 1);
        Eigen::MatrixXd hess = Eigen::MatrixXd::Zero(dim + 1, dim);
        basis.col(0) = v;
        Eigen::Index size = dim;
        for (Eigen::Index j = 0; j < dim; ++j) {
            apply(basis.col(j), w);
            // two passes of modified Gram-Schmidt
            for (int pass = 0; pass < 2; ++pass)
                for (Eigen::Index i = 0; i <= j; ++i) {
                    const double h = basis.col(i).dot(w);
                    w -= h * basis.col(i);
                    hess(i, j) += h;
                }
            hess(j + 1, j) = w.norm();
            if (hess(j + 1, j) <= 1e-14 * hess.col(j).head(j + 1).norm()) {
                size = j + 1;  // invariant subspace
                break;
            }
            basis.col(j + 1) = w / hess(j + 1, j);
        }

        Eigen::EigenSolver<Eigen::MatrixXd> ritz(hess.topLeftCorner(size, size));
        Eigen::Index pick = 0;
        for (Eigen::Index k = 1; k < size; ++k)
            if (ritz.eigenvalues()[k].real() > ritz.eigenvalues()[pick].real())
                pick = k;
        Eigen::VectorXd y = basis.leftCols(size) * ritz.eigenvectors().col(pick).real();
        if (y.sum() < 0.0)
            y = -y;
        y.normalize();

        apply(y, av);
        const double rayleigh = y.dot(av);
        residual = (av - rayleigh * y).norm();
        if (residual < opts.tol)
            return {std::abs(rayleigh - opts.shift), std::vector<double>(y.data(), y.data() + n), used, residual};
        v = y;
    }
    throw convergence_error(opts.max_iter, residual);
}

SpectralResult power_iteration(const SparseMatrix& m, const PowerOptions& opts) {
    const std::size_t n = m.size();
    std::vector<double> v(n, 1.0 / std::sqrt(static_cast<double>(n)));
    std::vector<double> y(n);
    std::vector<double> res(n);
    double residual = 0.0;
    const std::size_t plain = std::min(opts.plain_iter, opts.max_iter);
    for (std::size_t it = 1; it <= plain; ++it) {
        m.multiply(v, y, opts.shift);
        double rayleigh = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            rayleigh += v[i] * y[i];
        for (std::size_t i = 0; i < n; ++i)
            res[i] = y[i] - rayleigh * v[i];
        residual = norm2(res);
        const double ynorm = norm2(y);
        if (residual < opts.tol || ynorm == 0.0)
            return {std::abs(rayleigh - opts.shift), v, it, residual};
        for (std::size_t i = 0; i < n; ++i)
            v[i] = y[i] / ynorm;
    }
    if (plain >= opts.max_iter)
        throw convergence_error(opts.max_iter, residual);
    return restarted_arnoldi(m, std::move(v), plain, opts);
}

// Block label per index, treating every off-diagonal entry as an undirected link.
std::vector<std::size_t> pattern_blocks(const SparseMatrix& m, std::size_t& count) {
    const std::size_t n = m.size();
    std::vector<std::size_t> parent(n);
    for (std::size_t i = 0; i < n; ++i)
        parent[i] = i;
    auto find = [&](std::size_t x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j : m.row_columns(i)) {
            const auto a = find(i), b = find(j);
            if (a != b)
                parent[std::max(a, b)] = std::min(a, b);
        }
    std::vector<std::size_t> label(n), id(n, n);
    count = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto root = find(i);
        if (id[root] == n)
            id[root] = count++;
        label[i] = id[root];
    }
    return label;
}

}  // namespace

SpectralResult largest_eigenvalue_magnitude(const SparseMatrix& m, const PowerOptions& opts) {
    const std::size_t n = m.size();
    if (n == 0)
        throw std::invalid_argument("eigenvalue of an empty matrix");

    std::size_t blocks = 0;
    const auto label = pattern_blocks(m, blocks);
    if (blocks == 1)
        return power_iteration(m, opts);

    std::vector<std::vector<std::size_t>> members(blocks);
    for (std::size_t i = 0; i < n; ++i)
        members[label[i]].push_back(i);

    SpectralResult best;
    best.value = -1.0;
    std::size_t best_block = 0, iterations = 0;
    std::vector<std::size_t> local(n);
    for (std::size_t b = 0; b < blocks; ++b) {
        const auto& idx = members[b];
        SpectralResult r;
        if (idx.size() == 1) {
            r = {std::abs(m.diagonal()[idx[0]]), {1.0}, 1, 0.0};
        } else {
            for (std::size_t k = 0; k < idx.size(); ++k)
                local[idx[k]] = k;
            std::vector<double> diag(idx.size());
            std::vector<SparseMatrix::Entry> entries;
            for (std::size_t k = 0; k < idx.size(); ++k) {
                diag[k] = m.diagonal()[idx[k]];
                const auto cols = m.row_columns(idx[k]);
                const auto vals = m.row_values(idx[k]);
                for (std::size_t e = 0; e < cols.size(); ++e)
                    entries.push_back({k, local[cols[e]], vals[e]});
            }
            r = power_iteration(SparseMatrix(std::move(diag), std::move(entries)), opts);
        }
        iterations += r.iterations;
        if (r.value > best.value) {
            best = std::move(r);
            best_block = b;
        }
    }

    SpectralResult out{best.value, std::vector<double>(n, 0.0), iterations, best.residual};
    for (std::size_t k = 0; k < members[best_block].size(); ++k)
        out.vector[members[best_block][k]] = best.vector[k];
    return out;
}

SpectralResult adjacency_spectral_radius(const Graph& g, const PowerOptions& opts) {
    return largest_eigenvalue_magnitude(adjacency_matrix(g), opts);
}

std::string_view verdict_name(ExtinctionVerdict v) {
    switch (v) {
        case ExtinctionVerdict::fast_extinction: return "true";
        case ExtinctionVerdict::survives: return "false";
        case ExtinctionVerdict::critical: return "critical";
    }
    return "?";
}

Survivability survivability_score(const Graph& g, const LinkProbs& links, const NodeParams& params,
                                  double tol, double critical_band) {
    PowerOptions opts;
    opts.tol = tol;
    Survivability out;
    out.spectrum = largest_eigenvalue_magnitude(build_system_matrix(g, links, params), opts);
    out.score = out.spectrum.value;
    if (std::abs(out.score - 1.0) <= critical_band)
        out.verdict = ExtinctionVerdict::critical;
    else
        out.verdict = out.score < 1.0 ? ExtinctionVerdict::fast_extinction : ExtinctionVerdict::survives;
    return out;
}

HomogeneousThreshold homogeneous_threshold(double delta, double gamma, double r, double beta,
                                           double lambda1) {
    if (!(delta > 0.0))
        throw std::invalid_argument("homogeneous threshold needs delta > 0");
    HomogeneousThreshold t;
    const double factor = gamma / (delta * (gamma + delta));
    t.printed = factor * lambda1;
    t.with_broadcast = r * beta * factor * lambda1;
    t.printed_fast_extinction = t.printed < 1.0;
    t.with_broadcast_fast_extinction = t.with_broadcast < 1.0;
    return t;
}

}  // namespace netepi
