// cli.cpp: subcommands: spectrum, observables, fidelity, distributions, figures, verify

#include "dicke/cli.hpp"

#include "dicke/analytic.hpp"
#include "dicke/compare.hpp"
#include "dicke/dataset.hpp"
#include "dicke/figures.hpp"
#include "dicke/parallel.hpp"
#include "dicke/variational.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <optional>

namespace dicke {

namespace {

using json = nlohmann::ordered_json;

struct RunConfig {
    std::string command;
    double omega_a = 1.0;
    std::optional<double> gamma;
    std::optional<double> gamma_min;
    std::optional<double> gamma_max;
    std::optional<int> steps;
    int n_atoms = 10;
    bool n_atoms_given = false;
    std::string parity = "both";
    double tol = 1e-8;
    int lambda_max_cap = 400;
    std::string format = "csv";
    std::string out;
    unsigned jobs = 1;
    std::optional<int> figure_id;
};

std::vector<Parity> parities(const RunConfig& c) {
    if (c.parity == "both") return {Parity::even, Parity::odd};
    return {parse_parity(c.parity)};
}

ConvergeOptions converge_options(const RunConfig& c) {
    ConvergeOptions o;
    o.tol = c.tol;
    o.lambda_max_cap = c.lambda_max_cap;
    return o;
}

std::optional<GammaGrid> grid_of(const RunConfig& c) {
    const bool range = c.gamma_min || c.gamma_max || c.steps;
    if (c.gamma && range) throw UsageError("use either --gamma or --gamma-min/--gamma-max/--steps");
    if (c.gamma) return GammaGrid{*c.gamma, *c.gamma, 1};
    if (!range) return std::nullopt;
    if (!c.gamma_min || !c.gamma_max || !c.steps) {
        throw UsageError("a gamma range needs --gamma-min, --gamma-max and --steps");
    }
    if (*c.steps < 2) throw UsageError("a gamma range needs --steps >= 2 (use --gamma for a single point)");
    GammaGrid g{*c.gamma_min, *c.gamma_max, *c.steps};
    g.points();  // validates bounds
    return g;
}

std::vector<double> require_gammas(const RunConfig& c) {
    const auto g = grid_of(c);
    if (!g) throw UsageError(c.command + " needs --gamma or a gamma range");
    return g->points();
}

void common_meta(Dataset& d, const RunConfig& c) {
    d.set_meta("command", c.command);
    d.set_meta("version", version);
    d.set_meta("omega_a", c.omega_a);
    d.set_meta("gamma_c", std::sqrt(c.omega_a) / 2.0);
    d.set_meta("n_atoms", c.n_atoms);
    d.set_meta("parity", c.parity);
    d.set_meta("tol", c.tol);
    d.set_meta("lambda_max_cap", c.lambda_max_cap);
}

Cell real(double v) { return v; }
Cell integer(long v) { return static_cast<std::int64_t>(v); }
Cell text(std::string s) { return s; }

Dataset cmd_spectrum(const RunConfig& c) {
    const auto gammas = require_gammas(c);
    const auto ps = parities(c);
    const auto conv = converge_options(c);
    Dataset d("spectrum", {"gamma", "E_exact_even", "E_exact_odd", "E_sas_even", "E_sas_odd", "lambda_max_even",
                           "lambda_max_odd"});
    common_meta(d, c);
    const auto rows = parallel_map(gammas.size(), c.jobs, [&](std::size_t i) {
        const ModelParams params(c.omega_a, gammas[i], c.n_atoms);
        std::vector<Cell> row(7);
        row[0] = real(gammas[i]);
        for (Parity p : ps) {
            const int col = p == Parity::even ? 0 : 1;
            const SpectralResult r = converge_ground(params, p, conv);
            row[1 + col] = real(r.ground_energy());
            row[3 + col] = real(variational_energy(params, p));
            row[5 + col] = integer(r.lambda_max);
        }
        return row;
    });
    for (auto r : rows) d.add_row(std::move(r));
    return d;
}

std::vector<std::string> observable_columns() {
    std::vector<std::string> cols{"gamma", "x", "parity", "source", "lambda_max", "flag"};
    for (Observable o : all_observables) cols.emplace_back(name(o));
    return cols;
}

void push_observables(std::vector<std::vector<Cell>>& rows, double gamma, double x, Cell parity, std::string source,
                      Cell lambda_max, Cell flag, const ObservableSet& s) {
    std::vector<Cell> row{real(gamma), real(x), std::move(parity), text(std::move(source)), std::move(lambda_max),
                          std::move(flag)};
    for (double v : s.values()) row.push_back(real(v));
    rows.push_back(std::move(row));
}

Dataset cmd_observables(const RunConfig& c) {
    const auto gammas = require_gammas(c);
    const auto ps = parities(c);
    const auto conv = converge_options(c);
    Dataset d("observables", observable_columns());
    common_meta(d, c);
    const auto blocks = parallel_map(gammas.size(), c.jobs, [&](std::size_t i) {
        const ModelParams params(c.omega_a, gammas[i], c.n_atoms);
        const bool sr = params.superradiant();
        const Cell normal = sr ? Cell{} : text("normal_phase_trial");
        std::vector<std::vector<Cell>> rows;
        push_observables(rows, gammas[i], params.x(), Cell{}, "coherent", Cell{}, normal,
                         sr ? coherent_observables(params) : measure(variational_state(params, Parity::even)));
        for (Parity p : ps) {
            const ObservableSet v = sr ? sas_observables(params, p) : measure(variational_state(params, p));
            push_observables(rows, gammas[i], params.x(), text(to_string(p)), "sas", Cell{}, normal, v);
            const SpectralResult r = converge_ground(params, p, conv);
            push_observables(rows, gammas[i], params.x(), text(to_string(p)), "exact", integer(r.lambda_max), Cell{},
                             eigen_observables(r.eigenvectors.col(0), r.basis));
        }
        return rows;
    });
    for (const auto& b : blocks) {
        for (auto r : b) d.add_row(std::move(r));
    }
    return d;
}

Dataset cmd_fidelity(const RunConfig& c) {
    const auto gammas = require_gammas(c);
    const auto ps = parities(c);
    const auto conv = converge_options(c);
    Dataset d("fidelity", {"gamma", "x", "parity", "fidelity", "lambda_max", "nu_max", "flag"});
    common_meta(d, c);
    for (Parity p : ps) {
        const auto pts = parallel_map(gammas.size(), c.jobs, [&](std::size_t i) {
            return fidelity_detail(ModelParams(c.omega_a, gammas[i], c.n_atoms), p, conv);
        });
        for (std::size_t i = 0; i < gammas.size(); ++i) {
            const double x = ModelParams(c.omega_a, gammas[i], c.n_atoms).x();
            d.add_row({real(gammas[i]), real(x), text(to_string(p)), real(pts[i].value), integer(pts[i].lambda_max),
                       integer(pts[i].nu_max), pts[i].subspace ? text("degenerate_subspace") : Cell{}});
        }
    }
    return d;
}

FigureOptions figure_options(const RunConfig& c) {
    FigureOptions o;
    o.omega_a = c.omega_a;
    if (c.n_atoms_given) o.n_atoms = std::vector<int>{c.n_atoms};
    o.gamma = grid_of(c);
    o.converge = converge_options(c);
    o.jobs = c.jobs;
    return o;
}

Dataset keep_parities(Dataset d, const RunConfig& c) {
    if (c.parity == "both") return d;
    const std::size_t col = d.column("parity");
    std::vector<std::vector<Cell>> kept;
    for (auto& r : d.rows) {
        if (std::get<std::string>(r[col]) == c.parity) kept.push_back(std::move(r));
    }
    d.rows = std::move(kept);
    return d;
}

Dataset cmd_distributions(const RunConfig& c) {
    require_gammas(c);
    FigureOptions o = figure_options(c);
    o.n_atoms = std::vector<int>{c.n_atoms};
    Dataset d = keep_parities(figure_data(7, o), c);
    d.name = "distributions";
    common_meta(d, c);
    return d;
}

Dataset cmd_figures(const RunConfig& c) {
    if (!c.figure_id) throw UsageError("figures needs --id 1-9");
    return figure_data(*c.figure_id, figure_options(c));
}

Dataset cmd_verify(const RunConfig& c) {
    const auto gammas = require_gammas(c);
    VerifyOptions vo;
    vo.converge = converge_options(c);
    Dataset d("verify", {"gamma", "x", "observable", "column", "kind", "closed_form", "oracle", "exact",
                         "table_deviation", "physics_deviation", "table_flag", "physics_flag"});
    common_meta(d, c);
    const auto reports = parallel_map(gammas.size(), c.jobs, [&](std::size_t i) {
        return verify_table(ModelParams(c.omega_a, gammas[i], c.n_atoms), vo);
    });
    const auto opt_real = [](const std::optional<double>& v) { return v ? real(*v) : Cell{}; };
    for (std::size_t i = 0; i < gammas.size(); ++i) {
        for (const auto& r : reports[i].rows) {
            if (c.parity != "both" && r.column != "coherent" && r.column != c.parity) continue;
            const char* kind = r.kind == RowKind::table ? "table" : r.kind == RowKind::identity ? "identity" : "derived";
            d.add_row({real(gammas[i]), real(reports[i].params.x()), text(r.observable), text(r.column), text(kind),
                       real(r.closed_form), real(r.oracle), opt_real(r.exact), real(r.table_deviation),
                       opt_real(r.physics_deviation), integer(r.table_flag), integer(r.physics_flag)});
        }
    }
    return d;
}

void add_common(CLI::App* sub, RunConfig& c, bool figures) {
    sub->add_option("--omega-a", c.omega_a, "atomic splitting in units of the field frequency")
        ->check(CLI::PositiveNumber);
    sub->add_option("--gamma", c.gamma, "single coupling value");
    sub->add_option("--gamma-min", c.gamma_min, "coupling range start");
    sub->add_option("--gamma-max", c.gamma_max, "coupling range end");
    sub->add_option("--steps", c.steps, "number of grid points in the range (>= 2)");
    sub->add_option("--n-atoms", c.n_atoms, "number of atoms N")->check(CLI::PositiveNumber);
    sub->add_option("--parity", c.parity, "even, odd or both")->check(CLI::IsMember({"even", "odd", "both"}));
    sub->add_option("--tol", c.tol, "relative eigenvalue change that ends the truncation loop");
    sub->add_option("--lambda-max-cap", c.lambda_max_cap, "largest excitation cutoff to try")
        ->check(CLI::PositiveNumber);
    sub->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", c.out, "output file (default stdout)");
    sub->add_option("--jobs", c.jobs, "worker threads")->check(CLI::Range(1u, 1024u));
    if (figures) sub->add_option("--id", c.figure_id, "figure 1-9");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Dicke model lab: exact spectra, projected coherent states and comparisons"};
    app.require_subcommand(1);
    app.set_version_flag("--version", version);

    RunConfig c;
    const std::vector<std::pair<const char*, const char*>> commands{
        {"spectrum", "exact and variational ground energies per parity"},
        {"observables", "expectation values and fluctuations: coherent, projected and exact"},
        {"fidelity", "overlap of the variational and exact ground states"},
        {"distributions", "joint photon / excited-atom distributions"},
        {"figures", "plot-ready data for figure 1-9"},
        {"verify", "closed forms against the numeric oracle and exact diagonalization"},
    };
    for (const auto& [cmd, help] : commands) add_common(app.add_subcommand(cmd, help), c, std::string(cmd) == "figures");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::CallForVersion&) {
        out << version << '\n';
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    }
    c.command = app.get_subcommands().front()->get_name();
    for (const auto* o : app.get_subcommands().front()->get_options()) {
        if (o->get_name() == "--n-atoms" && o->count() > 0) c.n_atoms_given = true;
    }

    try {
        if (!(c.tol > 0.0)) throw UsageError("--tol must be positive");
        const Format fmt = parse_format(c.format);
        Dataset d;
        if (c.command == "spectrum") d = cmd_spectrum(c);
        else if (c.command == "observables") d = cmd_observables(c);
        else if (c.command == "fidelity") d = cmd_fidelity(c);
        else if (c.command == "distributions") d = cmd_distributions(c);
        else if (c.command == "figures") d = cmd_figures(c);
        else d = cmd_verify(c);

        const std::string text_out = serialize(d, fmt);
        if (c.out.empty()) {
            out << text_out;
        } else {
            std::ofstream f(c.out, std::ios::binary);
            if (!f) throw std::runtime_error("cannot open " + c.out);
            f << text_out;
        }
        return exit_ok;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_failure;
    }
}

}  // namespace dicke
