// exact.cpp: dense and Lanczos eigensolvers, truncation loop, eigenvector observables

#include "dicke/exact.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <sstream>

namespace dicke {

namespace {

void fix_sign(Eigen::Ref<Eigen::VectorXd> v) {
    Eigen::Index imax = 0;
    v.cwiseAbs().maxCoeff(&imax);
    if (v[imax] < 0) v = -v;
}

double residual_norm(const OperatorMatrix::Sparse& h, const Eigen::VectorXd& v, double e) {
    return (h * v - e * v).norm();
}

Eigen::VectorXd start_vector(Eigen::Index n, std::uint64_t seed) {
    std::mt19937_64 gen(0x9e3779b97f4a7c15ULL ^ seed);
    Eigen::VectorXd v(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        v[i] = static_cast<double>(gen() >> 11) * 0x1.0p-53 - 0.5;
    }
    return v;
}

void orthogonalize(Eigen::VectorXd& w, const Eigen::MatrixXd& basis, Eigen::Index cols) {
    if (cols == 0) return;
    // classical Gram-Schmidt applied twice
    for (int pass = 0; pass < 2; ++pass) {
        const Eigen::VectorXd coeff = basis.leftCols(cols).transpose() * w;
        w.noalias() -= basis.leftCols(cols) * coeff;
    }
}

struct RitzPair {
    double value;
    Eigen::VectorXd vector;
    int iterations;
};

// Lowest eigenpair of H restricted to the orthogonal complement of `locked`.
RitzPair lanczos_lowest(const OperatorMatrix::Sparse& h, const Eigen::MatrixXd& locked, const EigenOptions& opt) {
    const Eigen::Index n = h.rows();
    const Eigen::Index free_dim = n - locked.cols();
    const Eigen::Index m_max = std::min<Eigen::Index>(opt.max_iterations, free_dim);

    Eigen::MatrixXd v(n, std::min<Eigen::Index>(m_max, 64));
    std::vector<double> alpha;
    std::vector<double> beta;

    Eigen::VectorXd w = start_vector(n, static_cast<std::uint64_t>(locked.cols()));
    orthogonalize(w, locked, locked.cols());
    v.col(0) = w.normalized();

    double best_value = 0.0;
    double best_resid = std::numeric_limits<double>::infinity();
    Eigen::VectorXd best_coeffs;
    for (Eigen::Index m = 0; m < m_max; ++m) {
        w.noalias() = h * v.col(m);
        alpha.push_back(v.col(m).dot(w));
        w -= alpha.back() * v.col(m);
        if (m > 0) w -= beta.back() * v.col(m - 1);
        orthogonalize(w, v, m + 1);
        orthogonalize(w, locked, locked.cols());
        const double b = w.norm();

        const bool breakdown = b <= 1e-13 * std::max(1.0, std::abs(alpha.back()));
        const bool last = m + 1 == m_max;
        if (breakdown || last || (m >= 10 && m % 8 == 0)) {
            const auto size = static_cast<Eigen::Index>(alpha.size());
            Eigen::VectorXd diag = Eigen::Map<const Eigen::VectorXd>(alpha.data(), size);
            Eigen::VectorXd sub = size > 1 ? Eigen::Map<const Eigen::VectorXd>(beta.data(), size - 1)
                                           : Eigen::VectorXd(0);
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
            tri.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
            best_value = tri.eigenvalues()[0];
            best_coeffs = tri.eigenvectors().col(0);
            best_resid = breakdown ? 0.0 : b * std::abs(best_coeffs[size - 1]);
            if (best_resid <= 0.1 * opt.residual_tol || breakdown || last) {
                Eigen::VectorXd y = v.leftCols(size) * best_coeffs;
                y.normalize();
                return {best_value, std::move(y), static_cast<int>(size)};
            }
        }
        beta.push_back(b);
        if (m + 1 >= v.cols()) v.conservativeResize(Eigen::NoChange, std::min<Eigen::Index>(m_max, 2 * v.cols()));
        v.col(m + 1) = w / b;
    }
    // m_max == 0 cannot happen for free_dim >= 1
    throw SolverError("lanczos: empty Krylov space");
}

}  // namespace

Eigenpairs lowest_eigenpairs(const OperatorMatrix& matrix, int k, const EigenOptions& options) {
    const auto n = static_cast<Eigen::Index>(matrix.dimension());
    if (k < 1 || k > n) {
        throw std::invalid_argument("lowest_eigenpairs: need 1 <= k <= dimension");
    }
    Eigenpairs out;
    out.values.resize(k);
    out.vectors.resize(n, k);

    if (matrix.dimension() <= options.dense_threshold) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(matrix.dense());
        if (solver.info() != Eigen::Success) throw SolverError("dense eigensolver failed");
        out.values = solver.eigenvalues().head(k);
        out.vectors = solver.eigenvectors().leftCols(k);
        out.dense = true;
    } else {
        out.dense = false;
        Eigen::MatrixXd locked(n, 0);
        for (int i = 0; i < k; ++i) {
            RitzPair pair = lanczos_lowest(matrix.matrix, locked, options);
            out.iterations += pair.iterations;
            out.values[i] = pair.value;
            out.vectors.col(i) = pair.vector;
            locked.conservativeResize(n, i + 1);
            locked.col(i) = pair.vector;
        }
        // Locked pairs are found in order but may interleave by roundoff.
        std::vector<int> order(static_cast<std::size_t>(k));
        for (int i = 0; i < k; ++i) order[static_cast<std::size_t>(i)] = i;
        std::sort(order.begin(), order.end(), [&](int a, int b) { return out.values[a] < out.values[b]; });
        const Eigen::VectorXd vals = out.values;
        const Eigen::MatrixXd vecs = out.vectors;
        for (int i = 0; i < k; ++i) {
            out.values[i] = vals[order[static_cast<std::size_t>(i)]];
            out.vectors.col(i) = vecs.col(order[static_cast<std::size_t>(i)]);
        }
    }

    for (int i = 0; i < k; ++i) {
        auto col = out.vectors.col(i);
        fix_sign(col);
        const double r = residual_norm(matrix.matrix, col, out.values[i]);
        out.residuals.push_back(r);
        if (!(r <= 1e-8)) {
            std::ostringstream msg;
            msg << "eigensolver did not converge: pair " << i << " residual " << r << " after " << out.iterations
                << " Lanczos iterations (dimension " << n << ")";
            throw SolverError(msg.str());
        }
    }
    return out;
}

int initial_lambda_max(const ModelParams& params) {
    double n_coh = 0.0;
    if (params.superradiant()) {
        const double x2 = params.x() * params.x();
        n_coh = params.n_atoms() * params.gamma_c() * params.gamma_c() * x2 * (1.0 - 1.0 / (x2 * x2));
    }
    return static_cast<int>(std::ceil(params.n_atoms() + n_coh + 10.0 * std::sqrt(n_coh + 1.0)));
}

SpectralResult converge_ground(const ModelParams& params, Parity parity, const ConvergeOptions& options) {
    if (!(options.tol > 0.0)) {
        throw std::invalid_argument("converge_ground: tolerance must be positive (tol <= 0 is unreachable)");
    }
    if (options.k < 1) throw std::invalid_argument("converge_ground: k must be >= 1");
    if (options.lambda_step < 1) throw std::invalid_argument("converge_ground: lambda_step must be >= 1");

    const auto solve = [&](int lambda_max) {
        SectorBasis basis = build_sector_basis(params, lambda_max, parity);
        if (basis.size() < static_cast<std::size_t>(options.k)) {
            throw std::invalid_argument("converge_ground: sector smaller than k");
        }
        Eigenpairs pairs = lowest_eigenpairs(build_hamiltonian(params, basis), options.k, options.eigen);
        SpectralResult r{parity,
                         lambda_max,
                         std::vector<double>(pairs.values.data(), pairs.values.data() + pairs.values.size()),
                         std::move(pairs.vectors),
                         false,
                         {},
                         std::move(basis)};
        return r;
    };

    int lambda_max = initial_lambda_max(params);
    // The smallest sector must host k states.
    while (build_sector_basis(params, lambda_max, parity).size() < static_cast<std::size_t>(options.k)) ++lambda_max;
    if (lambda_max > options.lambda_max_cap) {
        throw std::invalid_argument("converge_ground: initial truncation " + std::to_string(lambda_max) +
                                    " exceeds lambda_max cap " + std::to_string(options.lambda_max_cap));
    }

    SpectralResult current = solve(lambda_max);
    std::vector<ConvergenceStep> history{{lambda_max, current.eigenvalues}};
    while (true) {
        const int next_lambda = lambda_max + options.lambda_step;
        if (next_lambda > options.lambda_max_cap) {
            current.history = std::move(history);
            throw TruncationError("converge_ground: lambda_max cap " + std::to_string(options.lambda_max_cap) +
                                      " reached before eigenvalues converged",
                                  std::move(current));
        }
        SpectralResult next = solve(next_lambda);
        history.push_back({next_lambda, next.eigenvalues});
        bool done = true;
        for (std::size_t i = 0; i < next.eigenvalues.size(); ++i) {
            const double e = next.eigenvalues[i];
            if (std::abs(e - current.eigenvalues[i]) >= options.tol * std::max(std::abs(e), 1.0)) done = false;
        }
        current = std::move(next);
        lambda_max = next_lambda;
        if (done) break;
    }
    current.converged = true;
    current.history = std::move(history);
    return current;
}

ObservableSet eigen_observables(const Eigen::Ref<const Eigen::VectorXd>& state, const SectorBasis& basis) {
    if (std::abs(state.norm() - 1.0) > 1e-10) {
        throw std::invalid_argument("eigen_observables: state is not unit norm");
    }
    return measure(grid_from_sector(basis, state));
}

Eigen::MatrixXd joint_distribution_exact(const Eigen::Ref<const Eigen::VectorXd>& state, const SectorBasis& basis) {
    if (std::abs(state.norm() - 1.0) > 1e-10) {
        throw std::invalid_argument("joint_distribution_exact: state is not unit norm");
    }
    Eigen::MatrixXd p = Eigen::MatrixXd::Zero(basis.lambda_max() + 1, basis.n_atoms() + 1);
    for (std::size_t i = 0; i < basis.size(); ++i) {
        const double c = state[static_cast<Eigen::Index>(i)];
        p(basis[i].nu, basis[i].n_e) = c * c;
    }
    return p;
}

}  // namespace dicke
