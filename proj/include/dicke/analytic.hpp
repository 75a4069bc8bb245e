// analytic.hpp: closed-form observables of coherent and parity-projected
// trial states, the numerically built projected state, and photon/atom
// distributions
//
// Throughout, mu = N gamma_c^2 x^2 (1 - x^{-4}) is the coherent photon number
// at the superradiant minimum.

#pragma once

#include "dicke/model.hpp"
#include "dicke/observables.hpp"
#include "dicke/state_grid.hpp"
#include "dicke/variational.hpp"

#include <Eigen/Dense>

#include <optional>

namespace dicke {

/// mu at the superradiant minimum (0 for |x| <= 1).
double coherent_photon_number(const ModelParams& params);

/// Unprojected coherent column, phi_c = 0 branch (q < 0, J_x > 0).
/// Valid for |x| >= 1; x = 1 gives the normal-phase values.
ObservableSet coherent_observables(const ModelParams& params);

/// Projected column. <Lambda> follows from <n> + <J_z> + N/2 and
/// (Delta Lambda)^2 from the Lambda generating function; every other entry
/// is the tabulated closed form. At x = 1 the odd branch is taken from
/// the limiting lambda = 1 state.
ObservableSet sas_observables(const ModelParams& params, Parity parity);

/// The projected column with F supplied by the caller (F = 0 reproduces the
/// coherent magnitudes).
ObservableSet sas_observables_given_F(const ModelParams& params, Parity parity, double F);

/// The tabulated closed form for <Lambda> in the projected column.
double sas_lambda_tabulated(const ModelParams& params, Parity parity);

struct SASStateVector {
    Parity parity;
    StateGrid grid;       // normalized over the kept rows
    int nu_max;
    double norm_defect;    // 1 - kept norm^2 / analytic norm^2
};

/// ceil(mu + 20 sqrt(mu) + 50)
int default_nu_max(const ModelParams& params);

/// Truncated coherent product state |alpha>|zeta> (not renormalized).
StateGrid coherent_grid(int n_atoms, const PhaseSpacePoint& point, int nu_max);

/// Parity projection of |alpha>|zeta>, normalized. Throws
/// ProjectionAnnihilatesState when the projection vanishes and
/// std::runtime_error when the truncation loses more than 1e-8 of the norm.
SASStateVector build_projected_state(int n_atoms, const PhaseSpacePoint& point, Parity parity, int nu_max);

/// Projected state at the superradiant critical point (phi_c = pi branch).
SASStateVector build_sas_state(const ModelParams& params, Parity parity, std::optional<int> nu_max = std::nullopt);

struct JointDistribution {
    Parity parity;
    Eigen::MatrixXd probability;  // (nu_max + 1) x (N + 1)
    int nu_max;
    ModelParams params;
};

JointDistribution joint_distribution_sas(const ModelParams& params, Parity parity,
                                         std::optional<int> nu_max = std::nullopt);
Eigen::VectorXd marginal_photon(const ModelParams& params, Parity parity, std::optional<int> nu_max = std::nullopt);
Eigen::VectorXd marginal_excited(const ModelParams& params, Parity parity);

struct GaussianLimits {
    double photon_mean;
    double photon_var;
    double atom_mean;
    double atom_var;
};
GaussianLimits gaussian_limits(const ModelParams& params);

double gaussian_density(double mean, double var, double at);
/// max_k |dist[k] - gaussian_density(mean, var, k)|
double sup_distance_to_gaussian(const Eigen::Ref<const Eigen::VectorXd>& dist, double mean, double var);

}  // namespace dicke
