// compare.cpp

#include "dicke/compare.hpp"

#include "dicke/parallel.hpp"
#include "dicke/variational.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dicke {

namespace {

StateGrid vacuum_grid(int n_atoms) {
    StateGrid g(n_atoms, 0);
    g(0, 0) = 1.0;
    return g;
}

}  // namespace

StateGrid variational_state(const ModelParams& params, Parity parity) {
    if (params.superradiant()) return build_sas_state(params, parity).grid;
    if (parity == Parity::even) return vacuum_grid(params.n_atoms());
    return normal_odd_grid(params);
}

double variational_energy(const ModelParams& params, Parity parity) {
    if (params.superradiant()) return sas_energy_at_critical(params, parity);
    if (parity == Parity::even) return -params.j() * params.omega_a();
    return normal_odd_state(params).energy;
}

FidelityResult fidelity_detail(const ModelParams& params, Parity parity, const ConvergeOptions& options) {
    const SpectralResult exact = converge_ground(params, parity, options);
    const StateGrid psi = exact.state();

    if (!params.superradiant() && parity == Parity::odd && normal_odd_state(params).degenerate) {
        const double w = std::norm(psi(0, 1)) + std::norm(psi(1, 0));
        return {w, exact.lambda_max, 1, true};
    }
    const StateGrid trial = variational_state(params, parity);
    return {std::norm(inner(trial, psi)), exact.lambda_max, trial.nu_max(), false};
}

FidelityCurve fidelity_curve(const ModelParams& base, Parity parity, const std::vector<double>& gammas,
                             const ConvergeOptions& options, unsigned jobs) {
    const auto points = parallel_map(gammas.size(), jobs, [&](std::size_t i) {
        return fidelity_detail(base.with_gamma(gammas[i]), parity, options);
    });
    FidelityCurve curve{parity, gammas, {}, {}, gammas.empty() ? base : base.with_gamma(gammas.front())};
    for (const auto& p : points) {
        curve.values.push_back(p.value);
        curve.lambda_max.push_back(p.lambda_max);
    }
    return curve;
}

double relative_deviation(double a, double b) {
    const double diff = std::abs(a - b);
    if (diff <= 1e-12) return 0.0;
    return diff / std::max(std::abs(a), std::abs(b));
}

const VerificationRow& VerificationReport::row(const std::string& observable, const std::string& column) const {
    for (const auto& r : rows) {
        if (r.observable == observable && r.column == column) return r;
    }
    throw std::out_of_range("verification report has no row " + observable + "/" + column);
}

std::vector<const VerificationRow*> VerificationReport::flagged() const {
    std::vector<const VerificationRow*> out;
    for (const auto& r : rows) {
        if (r.table_flag || r.physics_flag) out.push_back(&r);
    }
    return out;
}

SmoothnessAudit audit_smoothness(const std::vector<double>& v, double factor, int window) {
    SmoothnessAudit a{true, true, 0, 0.0};
    double scale = 0.0;
    for (double x : v) {
        if (!std::isfinite(x)) a.finite = false;
        scale = std::max(scale, std::abs(x));
    }
    if (!a.finite) {
        a.ok = false;
        return a;
    }
    if (v.size() < 3) return a;
    std::vector<double> d(v.size() - 2);
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = std::abs(v[i] - 2.0 * v[i + 1] + v[i + 2]);
    const auto n = static_cast<long>(d.size());
    for (long i = 0; i < n; ++i) {
        std::vector<double> nb;
        for (long k = std::max(0L, i - window); k <= std::min(n - 1, i + window); ++k) {
            if (k != i) nb.push_back(d[static_cast<std::size_t>(k)]);
        }
        if (nb.empty()) continue;
        std::nth_element(nb.begin(), nb.begin() + static_cast<long>(nb.size() / 2), nb.end());
        const double median = nb[nb.size() / 2];
        const double bound = factor * median + 1e-12 * scale;
        const double ratio = d[static_cast<std::size_t>(i)] / std::max(median, 1e-300);
        if (ratio > a.worst_ratio) {
            a.worst_ratio = ratio;
            a.worst_index = static_cast<std::size_t>(i + 1);
        }
        if (d[static_cast<std::size_t>(i)] > bound) a.ok = false;
    }
    return a;
}

VerificationReport verify_table(const ModelParams& params, const VerifyOptions& options) {
    if (!params.superradiant()) throw std::domain_error("verify_table: requires |x| > 1");

    VerificationReport report{params, {}, false, std::nullopt, std::nullopt};
    report.physics_checked = std::abs(std::abs(params.gamma()) - params.gamma_c()) >=
                             options.separatrix_fraction * params.gamma_c();

    const auto add = [&](std::string observable, std::string column, RowKind kind, double closed, double oracle,
                         std::optional<double> exact, bool physics) {
        VerificationRow r{std::move(observable), std::move(column), kind, closed, oracle, exact, 0.0,
                          std::nullopt, false, false};
        r.table_deviation = relative_deviation(closed, oracle);
        const double tol = kind == RowKind::identity ? options.identity_tol : options.table_tol;
        r.table_flag = r.table_deviation > tol;
        if (exact) {
            r.physics_deviation = relative_deviation(oracle, *exact);
            r.physics_flag = physics && report.physics_checked && *r.physics_deviation > options.physics_tol;
        }
        report.rows.push_back(std::move(r));
    };

    // coherent column on the phi = 0 point
    {
        StateGrid g = coherent_grid(params.n_atoms(), critical_points(params).front().point, default_nu_max(params));
        g.normalize();
        const ObservableSet oracle = measure(g);
        const ObservableSet closed = coherent_observables(params);
        for (Observable o : table_observables) {
            add(std::string(name(o)), "coherent", RowKind::table, get(closed, o), get(oracle, o), std::nullopt, false);
        }
    }

    for (Parity parity : {Parity::even, Parity::odd}) {
        const std::string column = to_string(parity);
        const ObservableSet oracle = measure(build_sas_state(params, parity).grid);
        const ObservableSet closed = sas_observables(params, parity);
        std::optional<ObservableSet> exact;
        if (options.with_exact) {
            const SpectralResult r = converge_ground(params, parity, options.converge);
            exact = eigen_observables(r.eigenvectors.col(0), r.basis);
            (parity == Parity::even ? report.lambda_max_even : report.lambda_max_odd) = r.lambda_max;
        }
        const auto ex = [&](Observable o) -> std::optional<double> {
            if (!exact) return std::nullopt;
            return get(*exact, o);
        };
        for (Observable o : table_observables) {
            const double printed = o == Observable::lambda ? sas_lambda_tabulated(params, parity) : get(closed, o);
            add(std::string(name(o)), column, RowKind::table, printed, get(oracle, o), ex(o), true);
        }
        add("lambda_identity", column, RowKind::identity, closed.lambda, oracle.lambda, ex(Observable::lambda), true);
        add("var_lambda", column, RowKind::derived, closed.var_lambda, oracle.var_lambda, ex(Observable::var_lambda),
            true);
    }
    return report;
}

}  // namespace dicke
