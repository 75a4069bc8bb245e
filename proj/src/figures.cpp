// figures.cpp

#include "dicke/figures.hpp"

#include "dicke/analytic.hpp"
#include "dicke/compare.hpp"
#include "dicke/parallel.hpp"
#include "dicke/variational.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace dicke {

std::vector<double> GammaGrid::points() const {
    if (steps < 1) throw UsageError("grid needs steps >= 1");
    if (!(max >= min)) throw UsageError("grid needs max >= min");
    if (steps == 1) {
        if (min != max) throw UsageError("steps = 1 is only valid for a single point (min == max)");
        return {min};
    }
    std::vector<double> out(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i) out[i] = min + (max - min) * i / (steps - 1);
    out.back() = max;
    return out;
}

namespace {

using json = nlohmann::ordered_json;

const std::array<FigureInfo, 9>& registry() {
    static const std::array<FigureInfo, 9> figs{{
        {1, "projected energy surface gradient at the coherent critical point", {20}, {0.0, 1.2, 241}},
        {2, "d<H>/dq at the coherent critical point versus N", {20, 50, 100}, {0.0, 1.2, 241}},
        {3, "ground energies per parity, exact and variational", {20}, {0.0, 1.2, 61}},
        {4, "overlap factor F versus x", {2, 10, 20, 100}, {1.0, 3.0, 201}},
        {5, "(Delta J_x)^2 / N^2, projected versus exact versus coherent", {10}, {0.0, 2.0, 101}},
        {6, "(Delta q)^2, projected versus exact versus coherent", {10}, {0.0, 2.0, 101}},
        {7, "joint photon / excited-atom distributions", {10}, {0.55, 1.0, 2}},
        {8, "ground-state fidelity per parity", {10, 20, 40, 50}, {0.05, 1.2, 24}},
        {9, "photon and excited-atom marginal distributions", {10}, {0.55, 1.0, 2}},
    }};
    return figs;
}

const std::vector<std::string> curve_columns{"series", "n_atoms", "gamma", "x", "value", "lambda_max", "flag"};

struct CurvePoint {
    std::string series;
    Cell value;
    Cell lambda_max;
    Cell flag;
};

void base_meta(Dataset& d, const FigureInfo& info, const FigureOptions& o, const std::vector<int>& ns,
               const GammaGrid& grid) {
    d.set_meta("figure", info.id);
    d.set_meta("title", info.title);
    d.set_meta("version", version);
    d.set_meta("omega_a", o.omega_a);
    d.set_meta("gamma_c", std::sqrt(o.omega_a) / 2.0);
    d.set_meta("n_atoms", ns);
    d.set_meta(info.id == 4 ? "x_grid" : "gamma_grid", json{{"min", grid.min}, {"max", grid.max}, {"steps", grid.steps}});
    d.set_meta("tol", o.converge.tol);
    d.set_meta("lambda_max_cap", o.converge.lambda_max_cap);
}

Cell real(double v) { return v; }
Cell integer(long v) { return static_cast<std::int64_t>(v); }

// Rows for a set of (N, gamma) points, each producing several series.
template <class F>
void fill_curves(Dataset& d, const std::vector<int>& ns, const std::vector<double>& gammas, const FigureOptions& o,
                 F&& eval) {
    struct Job {
        int n;
        double gamma;
    };
    std::vector<Job> jobs;
    for (int n : ns) {
        for (double g : gammas) jobs.push_back({n, g});
    }
    const auto results = parallel_map(jobs.size(), o.jobs, [&](std::size_t i) {
        return eval(ModelParams(o.omega_a, jobs[i].gamma, jobs[i].n));
    });
    // group by series so each curve is contiguous
    std::vector<std::string> order;
    for (const auto& pts : results) {
        for (const auto& p : pts) {
            if (std::find(order.begin(), order.end(), p.series) == order.end()) order.push_back(p.series);
        }
    }
    for (int n : ns) {
        for (const auto& series : order) {
            for (std::size_t i = 0; i < jobs.size(); ++i) {
                if (jobs[i].n != n) continue;
                const ModelParams params(o.omega_a, jobs[i].gamma, n);
                for (const auto& p : results[i]) {
                    if (p.series != series) continue;
                    d.add_row({p.series, integer(n), real(jobs[i].gamma), real(params.x()), p.value, p.lambda_max,
                               p.flag});
                }
            }
        }
    }
}

std::vector<CurvePoint> gradient_points(const ModelParams& params, bool with_theta) {
    std::vector<CurvePoint> out;
    const PhaseSpacePoint pt = params.superradiant() ? superradiant_point(params).point : PhaseSpacePoint{};
    for (Parity parity : {Parity::even, Parity::odd}) {
        const std::string tag = to_string(parity);
        if (parity == Parity::odd && !params.superradiant()) {
            out.push_back({"dq_" + tag, Cell{}, Cell{}, std::string("odd_projection_vanishes")});
            if (with_theta) out.push_back({"dtheta_" + tag, Cell{}, Cell{}, std::string("odd_projection_vanishes")});
            continue;
        }
        const auto g = surface_gradient(params, surface_for(parity), pt);
        out.push_back({"dq_" + tag, real(g[0]), Cell{}, Cell{}});
        if (with_theta) out.push_back({"dtheta_" + tag, real(g[2]), Cell{}, Cell{}});
    }
    return out;
}

std::vector<CurvePoint> energy_points(const ModelParams& params, const ConvergeOptions& conv) {
    std::vector<CurvePoint> out;
    for (Parity parity : {Parity::even, Parity::odd}) {
        const SpectralResult r = converge_ground(params, parity, conv);
        out.push_back({"exact_" + to_string(parity), real(r.ground_energy()), integer(r.lambda_max), Cell{}});
    }
    for (Parity parity : {Parity::even, Parity::odd}) {
        out.push_back({"sas_" + to_string(parity), real(variational_energy(params, parity)), Cell{}, Cell{}});
    }
    const MinimumEnergies m = minimum_energy(params);
    out.push_back({"coherent", real(m.superradiant && params.superradiant() ? *m.superradiant : m.normal), Cell{},
                   Cell{}});
    return out;
}

std::vector<CurvePoint> fluctuation_points(const ModelParams& params, Observable obs, double scale,
                                           const ConvergeOptions& conv) {
    std::vector<CurvePoint> out;
    for (Parity parity : {Parity::even, Parity::odd}) {
        const ObservableSet s = params.superradiant() ? sas_observables(params, parity)
                                                       : measure(variational_state(params, parity));
        out.push_back({"sas_" + to_string(parity), real(get(s, obs) * scale), Cell{}, Cell{}});
    }
    for (Parity parity : {Parity::even, Parity::odd}) {
        const SpectralResult r = converge_ground(params, parity, conv);
        const ObservableSet s = eigen_observables(r.eigenvectors.col(0), r.basis);
        out.push_back({"exact_" + to_string(parity), real(get(s, obs) * scale), integer(r.lambda_max), Cell{}});
    }
    const ObservableSet c = params.superradiant() ? coherent_observables(params)
                                                   : measure(variational_state(params, Parity::even));
    out.push_back({"coherent", real(get(c, obs) * scale), Cell{}, Cell{}});
    return out;
}

std::vector<CurvePoint> fidelity_points(const ModelParams& params, const ConvergeOptions& conv) {
    std::vector<CurvePoint> out;
    for (Parity parity : {Parity::even, Parity::odd}) {
        const FidelityResult f = fidelity_detail(params, parity, conv);
        out.push_back({"fidelity_" + to_string(parity), real(f.value), integer(f.lambda_max),
                       f.subspace ? Cell{std::string("degenerate_subspace")} : Cell{}});
    }
    return out;
}

Dataset figure4(const FigureInfo& info, const FigureOptions& o, const std::vector<int>& ns, const GammaGrid& grid) {
    Dataset d("figure4", {"series", "n_atoms", "x", "F", "log10_F"});
    base_meta(d, info, o, ns, grid);
    const double gc = std::sqrt(o.omega_a) / 2.0;
    for (int n : ns) {
        for (double x : grid.points()) {
            const double lf = F_function(ModelParams(o.omega_a, x * gc, n)).log_F;
            d.add_row({std::string("F"), integer(n), real(x), real(std::exp(lf)), real(lf / std::log(10.0))});
        }
    }
    return d;
}

Dataset distribution_figure(const FigureInfo& info, const FigureOptions& o, const std::vector<int>& ns,
                            const GammaGrid& grid, bool joint) {
    Dataset d(joint ? "figure7" : "figure9",
              joint ? std::vector<std::string>{"n_atoms", "gamma", "parity", "nu", "n_e", "p_sas", "p_exact", "flag"}
                    : std::vector<std::string>{"n_atoms", "gamma", "parity", "kind", "k", "p_sas", "p_exact", "flag"});
    base_meta(d, info, o, ns, grid);
    for (int n : ns) {
        for (double gamma : grid.points()) {
            const ModelParams params(o.omega_a, gamma, n);
            for (Parity parity : {Parity::even, Parity::odd}) {
                const SpectralResult r = converge_ground(params, parity, o.converge);
                const Eigen::MatrixXd pe = joint_distribution_exact(r.eigenvectors.col(0), r.basis);
                std::optional<JointDistribution> ps;
                std::string flag;
                try {
                    ps = joint_distribution_sas(params, parity, pe.rows() - 1);
                } catch (const std::domain_error& e) {
                    flag = params.abs_x() < 1.0 ? "normal_phase" : "odd_projection_vanishes";
                }
                const auto sas_cell = [&](double v) { return ps ? real(v) : Cell{}; };
                const Cell flag_cell = flag.empty() ? Cell{} : Cell{flag};
                if (joint) {
                    for (Eigen::Index nu = 0; nu < pe.rows(); ++nu) {
                        for (int k = 0; k <= n; ++k) {
                            d.add_row({integer(n), real(gamma), to_string(parity), integer(nu), integer(k),
                                       sas_cell(ps ? ps->probability(nu, k) : 0.0), real(pe(nu, k)), flag_cell});
                        }
                    }
                } else {
                    const Eigen::VectorXd ex_photon = pe.rowwise().sum();
                    const Eigen::VectorXd ex_atom = pe.colwise().sum().transpose();
                    Eigen::VectorXd sp, sa;
                    if (ps) {
                        sp = marginal_photon(params, parity, pe.rows() - 1);
                        sa = marginal_excited(params, parity);
                    }
                    for (Eigen::Index k = 0; k < ex_photon.size(); ++k) {
                        d.add_row({integer(n), real(gamma), to_string(parity), std::string("photon"), integer(k),
                                   sas_cell(ps ? sp[k] : 0.0), real(ex_photon[k]), flag_cell});
                    }
                    for (Eigen::Index k = 0; k < ex_atom.size(); ++k) {
                        d.add_row({integer(n), real(gamma), to_string(parity), std::string("excited"), integer(k),
                                   sas_cell(ps ? sa[k] : 0.0), real(ex_atom[k]), flag_cell});
                    }
                }
            }
        }
    }
    return d;
}

}  // namespace

const FigureInfo& figure_info(int id) {
    if (id < 1 || id > 9) throw UsageError("unknown figure id " + std::to_string(id) + " (expected 1-9)");
    return registry()[static_cast<std::size_t>(id - 1)];
}

Dataset figure_data(int id, const FigureOptions& o) {
    const FigureInfo& info = figure_info(id);
    const std::vector<int> ns = o.n_atoms.value_or(info.default_n);
    const GammaGrid grid = o.gamma.value_or(info.default_grid);
    if (ns.empty()) throw UsageError("figure needs at least one N");

    if (id == 4) return figure4(info, o, ns, grid);
    if (id == 7 || id == 9) return distribution_figure(info, o, ns, grid, id == 7);

    Dataset d("figure" + std::to_string(id), curve_columns);
    base_meta(d, info, o, ns, grid);
    const std::vector<double> gammas = grid.points();
    switch (id) {
    case 1:
        fill_curves(d, ns, gammas, o, [](const ModelParams& p) { return gradient_points(p, true); });
        break;
    case 2:
        fill_curves(d, ns, gammas, o, [](const ModelParams& p) { return gradient_points(p, false); });
        break;
    case 3:
        fill_curves(d, ns, gammas, o, [&](const ModelParams& p) { return energy_points(p, o.converge); });
        break;
    case 5:
        fill_curves(d, ns, gammas, o, [&](const ModelParams& p) {
            const double n = p.n_atoms();
            return fluctuation_points(p, Observable::var_jx, 1.0 / (n * n), o.converge);
        });
        break;
    case 6:
        fill_curves(d, ns, gammas, o,
                    [&](const ModelParams& p) { return fluctuation_points(p, Observable::var_q, 1.0, o.converge); });
        break;
    case 8:
        fill_curves(d, ns, gammas, o, [&](const ModelParams& p) { return fidelity_points(p, o.converge); });
        break;
    default:
        break;
    }
    return d;
}

}  // namespace dicke
