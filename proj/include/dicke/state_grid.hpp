// state_grid.hpp: states as coefficient grids over (nu, n_e) and direct operator application
//
// Shared by the exact eigenvectors and the numerically built projected
// coherent states: both are measured through the same ladder-operator code.

#pragma once

#include "dicke/model.hpp"
#include "dicke/observables.hpp"

#include <Eigen/Dense>

#include <complex>

namespace dicke {

using cplx = std::complex<double>;

/// Coefficients c(nu, n_e) for 0 <= nu <= nu_max, 0 <= n_e <= N.
class StateGrid {
public:
    StateGrid(int n_atoms, int nu_max);
    StateGrid(int n_atoms, Eigen::MatrixXcd coefficients);

    int n_atoms() const noexcept { return n_atoms_; }
    int nu_max() const noexcept { return static_cast<int>(c_.rows()) - 1; }

    cplx& operator()(int nu, int n_e) { return c_(nu, n_e); }
    cplx operator()(int nu, int n_e) const { return c_(nu, n_e); }
    const Eigen::MatrixXcd& coefficients() const noexcept { return c_; }

    double norm_squared() const { return c_.squaredNorm(); }
    void normalize();
    /// Copy with extra zero photon rows.
    StateGrid padded(int extra_rows) const;

    // Ladder operators. Output has the same shape; a^dag drops the top row,
    // so callers pad first when the top row is populated.
    StateGrid apply_a() const;
    StateGrid apply_adag() const;
    StateGrid apply_jplus() const;
    StateGrid apply_jminus() const;
    StateGrid apply_jz() const;
    StateGrid apply_number() const;

    /// |c|^2 as a real (nu_max + 1) x (N + 1) matrix.
    Eigen::MatrixXd probabilities() const { return c_.cwiseAbs2(); }

private:
    int n_atoms_;
    Eigen::MatrixXcd c_;
};

/// <a|b>; grids may differ in nu_max, the overlap runs over common rows.
cplx inner(const StateGrid& a, const StateGrid& b);

/// Scatter a sector eigenvector onto a grid of height basis.lambda_max().
StateGrid grid_from_sector(const SectorBasis& basis, const Eigen::Ref<const Eigen::VectorXd>& v);

/// All ObservableSet entries by operator application. Throws
/// std::invalid_argument when |norm - 1| > 1e-10.
ObservableSet measure(const StateGrid& psi);

/// <H> by operator application (oracle for energy surfaces).
double energy_expectation(const ModelParams& params, const StateGrid& psi);

}  // namespace dicke
