// variational.hpp: coherent-state energy surface, its critical points, and the
// parity-projected (symmetry adapted) energy surface
//
// Trial states are |alpha> (x) |zeta> with alpha = (q + i p)/sqrt2 and
// zeta = exp(-i phi) tan(theta/2). Projected trial states are
// N_pm (|alpha, zeta> +- |-alpha, -zeta>).

#pragma once

#include "dicke/model.hpp"
#include "dicke/state_grid.hpp"

#include <array>
#include <optional>
#include <stdexcept>
#include <vector>

namespace dicke {

struct PhaseSpacePoint {
    double q = 0.0;
    double p = 0.0;
    double theta = 0.0;  // [0, pi]
    double phi = 0.0;    // [0, 2 pi)

    cplx alpha() const;
    cplx zeta() const;
};

enum class Phase { normal, superradiant };

struct CriticalPoint {
    PhaseSpacePoint point;
    Phase phase;
    double energy;
    double phi_branch;  // 0 or pi
};

/// F = x^{-2N} exp(-2 N gamma_c^2 x^2 (1 - x^{-4})), held as log F.
struct FValue {
    double log_F;
    double F() const { return std::exp(log_F); }
};

/// The odd projection of the coherent state vanishes.
class ProjectionAnnihilatesState : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

enum class Surface { coherent, sas_even, sas_odd };
Surface surface_for(Parity parity);

double energy_surface(const ModelParams& params, const PhaseSpacePoint& point);

/// One normal point for |gamma| <= gamma_c, two superradiant points
/// (phi = 0 first, then phi = pi) for |gamma| > gamma_c.
std::vector<CriticalPoint> critical_points(const ModelParams& params);
/// The superradiant critical point on the phi = pi branch (alpha > 0).
/// Throws std::domain_error for |x| <= 1.
CriticalPoint superradiant_point(const ModelParams& params);

struct MinimumEnergies {
    double normal;
    std::optional<double> superradiant;  // present for |x| >= 1
};
MinimumEnergies minimum_energy(const ModelParams& params);

struct LambdaStatistics {
    double mean;
    double stddev;
};
LambdaStatistics lambda_statistics(const ModelParams& params, Phase branch);

/// Throws std::domain_error for |x| < 1.
FValue F_function(const ModelParams& params);

/// (1 - x^{-4}) / (1 - F), with the x -> 1+ limit 2 / (N (1 + 4 gamma_c^2)).
double odd_branch_ratio(const ModelParams& params);

double sas_energy_surface(const ModelParams& params, const PhaseSpacePoint& point, Parity parity);
double sas_energy_at_critical(const ModelParams& params, Parity parity);
/// |<alpha_c zeta_c | alpha_c zeta_c>_pm|^2 = (1 +- F)/2.
double coherent_sas_overlap(const ModelParams& params, Parity parity);

/// cos(Omega) |0>|j,-j+1> - sgn(gamma) sin(Omega) |1>|j,-j>, the lambda = 1
/// trial state used for the odd sector below the transition.
struct NormalOddState {
    double omega_c;
    double coeff_atom;    // on |nu=0, n_e=1>
    double coeff_photon;  // on |nu=1, n_e=0>
    double energy;
    bool degenerate;      // gamma = 0 at resonance: any combination is optimal
};
/// E(Omega) = -j w + w cos^2 Omega + sin^2 Omega - |gamma| sin 2 Omega
double normal_odd_energy(const ModelParams& params, double omega);
NormalOddState normal_odd_state(const ModelParams& params);
StateGrid normal_odd_grid(const ModelParams& params);

double evaluate_surface(const ModelParams& params, Surface surface, const PhaseSpacePoint& point);

/// Central differences in (q, p, theta, phi).
std::array<double, 4> surface_gradient(const ModelParams& params, Surface surface, const PhaseSpacePoint& point,
                                       double h = 1e-5);

struct Classification {
    enum class Kind { minimum, saddle, degenerate };
    Kind kind;
    std::vector<double> eigenvalues;  // ascending
    bool includes_phi;
};
/// Numeric Hessian over (q, p, theta), plus phi away from theta = 0.
/// |eigenvalue| < 1e-6 marks the point degenerate.
Classification classify_critical(const ModelParams& params, const PhaseSpacePoint& point, Surface surface,
                                 double h = 1e-4);

}  // namespace dicke
