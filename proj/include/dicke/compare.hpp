// compare.hpp: exact versus variational: fidelity, table verification, trial energies

#pragma once

#include "dicke/analytic.hpp"
#include "dicke/exact.hpp"
#include "dicke/model.hpp"
#include "dicke/observables.hpp"
#include "dicke/state_grid.hpp"

#include <optional>
#include <string>
#include <vector>

namespace dicke {

/// Variational state used for comparisons. Above the transition this is the
/// projected coherent state; at and below it, the vacuum (even) or the
/// lambda = 1 mixture (odd).
StateGrid variational_state(const ModelParams& params, Parity parity);

/// Energy of variational_state(), from the closed forms.
double variational_energy(const ModelParams& params, Parity parity);

struct FidelityResult {
    double value;
    int lambda_max;       // exact truncation
    int nu_max;           // variational photon rows
    bool subspace;        // degenerate odd sector at gamma = 0 on resonance
};

FidelityResult fidelity_detail(const ModelParams& params, Parity parity, const ConvergeOptions& options = {});
inline double fidelity(const ModelParams& params, Parity parity, const ConvergeOptions& options = {}) {
    return fidelity_detail(params, parity, options).value;
}

struct FidelityCurve {
    Parity parity;
    std::vector<double> gamma;
    std::vector<double> values;
    std::vector<int> lambda_max;
    ModelParams params;  // gamma field is the first grid point
};

FidelityCurve fidelity_curve(const ModelParams& base, Parity parity, const std::vector<double>& gammas,
                             const ConvergeOptions& options = {}, unsigned jobs = 1);

/// |a - b| / max(|a|, |b|); differences below 1e-12 count as 0.
double relative_deviation(double a, double b);

enum class RowKind {
    table,     // printed closed form
    identity,  // <Lambda> from <n> + <J_z> + N/2
    derived,   // (Delta Lambda)^2 from its generating function
};

struct VerificationRow {
    std::string observable;
    std::string column;  // "coherent", "even" or "odd"
    RowKind kind;
    double closed_form;
    double oracle;
    std::optional<double> exact;
    double table_deviation;
    std::optional<double> physics_deviation;
    bool table_flag;    // closed form vs oracle beyond table_tol
    bool physics_flag;  // oracle vs exact beyond physics_tol (SAS columns away from the separatrix)
};

struct VerifyOptions {
    double table_tol = 1e-8;
    double identity_tol = 1e-10;
    double physics_tol = 0.05;
    double separatrix_fraction = 0.25;
    bool with_exact = true;
    ConvergeOptions converge{};
};

struct VerificationReport {
    ModelParams params;
    std::vector<VerificationRow> rows;
    bool physics_checked;  // |gamma - gamma_c| >= separatrix_fraction * gamma_c
    std::optional<int> lambda_max_even;
    std::optional<int> lambda_max_odd;

    const VerificationRow& row(const std::string& observable, const std::string& column) const;
    std::vector<const VerificationRow*> flagged() const;
};

inline constexpr std::array<Observable, 15> table_observables{
    Observable::q, Observable::p, Observable::jx, Observable::jy, Observable::jz,
    Observable::n, Observable::lambda, Observable::var_q, Observable::var_p,
    Observable::var_jx, Observable::var_jy, Observable::var_jz, Observable::var_n,
    Observable::jz_n, Observable::jx_q,
};

struct SmoothnessAudit {
    bool ok;
    bool finite;
    std::size_t worst_index;  // index into the input of the largest ratio
    double worst_ratio;       // |second difference| / neighbouring median
};

/// Second differences d_i = v_{i-1} - 2 v_i + v_{i+1} must satisfy
/// |d_i| <= factor * median{|d_k| : 0 < |k - i| <= window} (plus a 1e-12
/// relative floor), and every value must be finite.
SmoothnessAudit audit_smoothness(const std::vector<double>& values, double factor = 10.0, int window = 5);

/// Requires |x| > 1. The coherent column is measured on the phi = 0 point.
VerificationReport verify_table(const ModelParams& params, const VerifyOptions& options = {});

}  // namespace dicke
