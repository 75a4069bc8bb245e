// model.cpp: basis enumeration and Hamiltonian assembly

#include "dicke/model.hpp"

#include <cmath>
#include <stdexcept>

namespace dicke {

namespace {

// <n_e + 1| J_+ |n_e> = sqrt(j(j+1) - m(m+1)) with m = n_e - j
double jplus_element(int n_atoms, int n_e) {
    return std::sqrt(static_cast<double>(n_e + 1) * static_cast<double>(n_atoms - n_e));
}

bool in_sector(int lambda, Sector sector) {
    switch (sector) {
        case Sector::even: return lambda % 2 == 0;
        case Sector::odd: return lambda % 2 != 0;
        case Sector::full: return true;
    }
    return false;
}

OperatorMatrix diagonal_operator(const SectorBasis& basis, auto&& value) {
    const auto n = static_cast<Eigen::Index>(basis.size());
    OperatorMatrix op;
    op.matrix.resize(n, n);
    op.matrix.reserve(Eigen::VectorXi::Constant(n, 1));
    for (Eigen::Index i = 0; i < n; ++i) {
        op.matrix.insert(i, i) = value(basis[static_cast<std::size_t>(i)]);
    }
    op.matrix.makeCompressed();
    return op;
}

}  // namespace

ModelParams::ModelParams(double omega_a, double gamma, int n_atoms)
    : omega_a_(omega_a), gamma_(gamma), n_atoms_(n_atoms) {
    if (!(omega_a > 0.0) || !std::isfinite(omega_a)) {
        throw std::domain_error("ModelParams: omega_a must be positive and finite");
    }
    if (!std::isfinite(gamma)) {
        throw std::domain_error("ModelParams: gamma must be finite");
    }
    if (n_atoms < 1) {
        throw std::domain_error("ModelParams: n_atoms must be >= 1");
    }
}

double ModelParams::gamma_c() const noexcept { return 0.5 * std::sqrt(omega_a_); }

double ModelParams::abs_x() const noexcept { return std::abs(x()); }

double gamma_critical(double omega_a) {
    if (!(omega_a > 0.0)) {
        throw std::domain_error("gamma_critical: omega_a must be positive");
    }
    return 0.5 * std::sqrt(omega_a);
}

std::string to_string(Parity p) { return p == Parity::even ? "even" : "odd"; }

std::string to_string(Sector s) {
    switch (s) {
        case Sector::even: return "even";
        case Sector::odd: return "odd";
        case Sector::full: return "full";
    }
    return "?";
}

Parity parse_parity(const std::string& s) {
    if (s == "even" || s == "+") return Parity::even;
    if (s == "odd" || s == "-") return Parity::odd;
    throw std::invalid_argument("unknown parity '" + s + "'");
}

SectorBasis::SectorBasis(int n_atoms, int lambda_max, Sector sector)
    : n_atoms_(n_atoms), lambda_max_(lambda_max), sector_(sector) {
    if (n_atoms < 1) throw std::invalid_argument("SectorBasis: n_atoms must be >= 1");
    if (lambda_max < 0) throw std::invalid_argument("SectorBasis: lambda_max must be >= 0");

    const auto width = static_cast<std::size_t>(n_atoms + 1);
    lookup_.assign(static_cast<std::size_t>(lambda_max + 1) * width, -1);
    for (int lambda = 0; lambda <= lambda_max; ++lambda) {
        if (!in_sector(lambda, sector)) continue;
        const int nu_min = std::max(0, lambda - n_atoms);
        for (int nu = nu_min; nu <= lambda; ++nu) {
            const int n_e = lambda - nu;
            lookup_[static_cast<std::size_t>(nu) * width + static_cast<std::size_t>(n_e)] =
                static_cast<long>(states_.size());
            states_.push_back({nu, n_e});
        }
    }
}

std::optional<std::size_t> SectorBasis::index(int nu, int n_e) const noexcept {
    if (nu < 0 || n_e < 0 || n_e > n_atoms_ || nu > lambda_max_) return std::nullopt;
    const long pos = lookup_[static_cast<std::size_t>(nu) * static_cast<std::size_t>(n_atoms_ + 1) +
                             static_cast<std::size_t>(n_e)];
    if (pos < 0) return std::nullopt;
    return static_cast<std::size_t>(pos);
}

SectorBasis build_sector_basis(const ModelParams& params, int lambda_max, Sector sector) {
    return SectorBasis(params.n_atoms(), lambda_max, sector);
}

std::size_t full_dimension_closed_form(int n_atoms, int lambda_max) {
    const auto l = static_cast<std::size_t>(lambda_max);
    const auto n = static_cast<std::size_t>(n_atoms);
    if (l <= n) return (l + 1) * (l + 2) / 2;
    // (2j + 1)(lambda_max - j + 1), written to stay integral for odd N
    return (n + 1) * (2 * l - n + 2) / 2;
}

std::optional<SectorDimensions> sector_dimensions_closed_form(int n_atoms, int lambda_max) {
    if (n_atoms % 2 != 0) return std::nullopt;
    const long j = n_atoms / 2;
    const long s_plus = lambda_max / 2;
    const long s_minus = (lambda_max + 1) / 2;
    long d_plus = 0;
    long d_minus = 0;
    if (lambda_max >= 2 * j) {
        d_plus = (j + 1) * (j + 1) + (2 * j + 1) * (s_plus - j);
        d_minus = j * (j + 1) + (2 * j + 1) * (s_minus - j);
    } else {
        d_plus = (s_plus + 1) * (s_plus + 1);
        d_minus = s_minus * (s_minus + 1);
    }
    return SectorDimensions{full_dimension_closed_form(n_atoms, lambda_max),
                            static_cast<std::size_t>(d_plus), static_cast<std::size_t>(d_minus)};
}

double OperatorMatrix::asymmetry() const {
    const Eigen::MatrixXd d = dense();
    return (d - d.transpose()).cwiseAbs().maxCoeff();
}

OperatorMatrix build_hamiltonian(const ModelParams& params, const SectorBasis& basis) {
    if (params.n_atoms() != basis.n_atoms()) {
        throw std::invalid_argument("build_hamiltonian: basis built for a different atom number");
    }
    const int n_atoms = params.n_atoms();
    const double j = params.j();
    const double coupling = params.gamma() / std::sqrt(static_cast<double>(n_atoms));
    const auto n = static_cast<Eigen::Index>(basis.size());

    std::vector<Eigen::Triplet<double>> entries;
    entries.reserve(basis.size() * 5);
    for (std::size_t col = 0; col < basis.size(); ++col) {
        const auto [nu, n_e] = basis[col];
        const auto c = static_cast<Eigen::Index>(col);
        entries.emplace_back(c, c, nu + params.omega_a() * (n_e - j));
        if (coupling == 0.0) continue;

        // Only generate couplings to states later in the ordering, then mirror.
        // (a^dag + a)(J_+ + J_-) changes (nu, n_e) by (+-1, +-1).
        for (const int dnu : {+1, -1}) {
            for (const int dne : {+1, -1}) {
                const int nu2 = nu + dnu;
                const int ne2 = n_e + dne;
                const auto row = basis.index(nu2, ne2);
                if (!row || *row <= col) continue;
                const double field = dnu > 0 ? std::sqrt(static_cast<double>(nu + 1))
                                             : std::sqrt(static_cast<double>(nu));
                const double atom = dne > 0 ? jplus_element(n_atoms, n_e) : jplus_element(n_atoms, ne2);
                const double value = coupling * field * atom;
                const auto r = static_cast<Eigen::Index>(*row);
                entries.emplace_back(r, c, value);
                entries.emplace_back(c, r, value);
            }
        }
    }
    OperatorMatrix op;
    op.matrix.resize(n, n);
    op.matrix.setFromTriplets(entries.begin(), entries.end());
    op.matrix.makeCompressed();
    return op;
}

OperatorMatrix excitation_operator(const SectorBasis& basis) {
    return diagonal_operator(basis, [](const BasisState& s) { return static_cast<double>(s.lambda()); });
}

OperatorMatrix parity_operator(const SectorBasis& basis) {
    return diagonal_operator(basis, [](const BasisState& s) { return s.lambda() % 2 == 0 ? 1.0 : -1.0; });
}

}  // namespace dicke
