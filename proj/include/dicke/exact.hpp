// exact.hpp: lowest eigenpairs per parity sector with truncation convergence

#pragma once

#include "dicke/model.hpp"
#include "dicke/observables.hpp"
#include "dicke/state_grid.hpp"

#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <vector>

namespace dicke {

class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct EigenOptions {
    std::size_t dense_threshold = 400;  // sectors up to this size use a dense solve
    int max_iterations = 3000;          // Lanczos iterations per eigenpair
    double residual_tol = 1e-9;         // target ||Hv - Ev||
};

struct Eigenpairs {
    Eigen::VectorXd values;   // ascending
    Eigen::MatrixXd vectors;  // unit-norm columns, largest |component| positive
    std::vector<double> residuals;
    int iterations = 0;
    bool dense = true;
};

/// k lowest eigenpairs of a symmetric matrix. Degenerate eigenvalues come
/// back with an arbitrary orthonormal basis of their eigenspace.
Eigenpairs lowest_eigenpairs(const OperatorMatrix& matrix, int k, const EigenOptions& options = {});

struct ConvergenceStep {
    int lambda_max;
    std::vector<double> eigenvalues;
};

struct SpectralResult {
    Parity parity;
    int lambda_max;
    std::vector<double> eigenvalues;
    Eigen::MatrixXd eigenvectors;  // columns in `basis` ordering
    bool converged = false;
    std::vector<ConvergenceStep> history;
    SectorBasis basis;

    double ground_energy() const { return eigenvalues.front(); }
    StateGrid state(int k = 0) const { return grid_from_sector(basis, eigenvectors.col(k)); }
};

struct ConvergeOptions {
    double tol = 1e-8;         // relative change between successive truncations
    int k = 1;
    int lambda_max_cap = 400;
    int lambda_step = 2;
    EigenOptions eigen{};
};

/// Raised when the truncation cap is hit; carries the last result.
class TruncationError : public std::runtime_error {
public:
    TruncationError(const std::string& what, SpectralResult best)
        : std::runtime_error(what), best_(std::move(best)) {}
    const SpectralResult& best() const noexcept { return best_; }

private:
    SpectralResult best_;
};

/// ceil(N + n_coh + 10 sqrt(n_coh + 1)) with n_coh the coherent-state photon number.
int initial_lambda_max(const ModelParams& params);

/// Grows lambda_max from initial_lambda_max() until every requested
/// eigenvalue moves by less than tol * max(|E|, 1).
SpectralResult converge_ground(const ModelParams& params, Parity parity, const ConvergeOptions& options = {});

ObservableSet eigen_observables(const Eigen::Ref<const Eigen::VectorXd>& state, const SectorBasis& basis);

/// P(nu, n_e) = |c|^2 on a (lambda_max + 1) x (N + 1) grid.
Eigen::MatrixXd joint_distribution_exact(const Eigen::Ref<const Eigen::VectorXd>& state, const SectorBasis& basis);

}  // namespace dicke
