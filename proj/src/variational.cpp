// variational.cpp

#include "dicke/variational.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>

namespace dicke {

namespace {

constexpr double pi = std::numbers::pi;

// 1 + sign * exp(log_mag) without cancellation when the result is small.
double one_plus(int sign, double log_mag) {
    if (sign > 0) return 1.0 + std::exp(log_mag);
    return -std::expm1(log_mag);
}

// Signed quantity stored as sign * exp(log_mag); sign == 0 means exactly zero.
struct LogSigned {
    int sign;
    double log_mag;
};

LogSigned power_times_exp(double c, int power, double exponent) {
    if (power == 0) return {1, exponent};
    if (c == 0.0) return {0, 0.0};
    const int sign = (c < 0 && power % 2 != 0) ? -1 : 1;
    return {sign, exponent + power * std::log(std::abs(c))};
}

void require_superradiant_branch(const ModelParams& params, const char* who) {
    if (params.abs_x() < 1.0) {
        throw std::domain_error(std::string(who) + ": defined for |x| >= 1 only");
    }
}

}  // namespace

cplx PhaseSpacePoint::alpha() const { return cplx(q, p) / std::sqrt(2.0); }

cplx PhaseSpacePoint::zeta() const { return std::polar(std::tan(0.5 * theta), -phi); }

Surface surface_for(Parity parity) { return parity == Parity::even ? Surface::sas_even : Surface::sas_odd; }

double energy_surface(const ModelParams& params, const PhaseSpacePoint& pt) {
    const double j = params.j();
    return 0.5 * (pt.p * pt.p + pt.q * pt.q) - j * params.omega_a() * std::cos(pt.theta) +
           2.0 * std::sqrt(j) * params.gamma() * pt.q * std::sin(pt.theta) * std::cos(pt.phi);
}

std::vector<CriticalPoint> critical_points(const ModelParams& params) {
    if (params.abs_x() <= 1.0) {
        const PhaseSpacePoint origin{};
        return {{origin, Phase::normal, energy_surface(params, origin), 0.0}};
    }
    std::vector<CriticalPoint> out;
    const double ratio = params.gamma_c() / params.gamma();
    const double theta = std::acos(ratio * ratio);
    for (const double phi : {0.0, pi}) {
        const double q = -2.0 * std::sqrt(params.j()) * params.gamma() * std::sqrt(1.0 - std::pow(ratio, 4)) *
                         std::cos(phi);
        const PhaseSpacePoint pt{q, 0.0, theta, phi};
        out.push_back({pt, Phase::superradiant, energy_surface(params, pt), phi});
    }
    return out;
}

CriticalPoint superradiant_point(const ModelParams& params) {
    if (params.abs_x() <= 1.0) throw std::domain_error("superradiant_point: requires |x| > 1");
    return critical_points(params)[1];
}

MinimumEnergies minimum_energy(const ModelParams& params) {
    const double n = params.n_atoms();
    const double gc2 = params.gamma_c() * params.gamma_c();
    MinimumEnergies e{-2.0 * n * gc2, std::nullopt};
    const double x = params.abs_x();
    if (x >= 1.0) e.superradiant = -n * gc2 * x * x * (1.0 + std::pow(x, -4));
    return e;
}

LambdaStatistics lambda_statistics(const ModelParams& params, Phase branch) {
    if (branch == Phase::normal) return {0.0, 0.0};
    require_superradiant_branch(params, "lambda_statistics");
    const double n = params.n_atoms();
    const double gc2 = params.gamma_c() * params.gamma_c();
    const double x2 = params.abs_x() * params.abs_x();
    const double s = 1.0 - 1.0 / (x2 * x2);
    const double mean = 0.5 * n * (1.0 - 1.0 / x2 + 2.0 * gc2 * x2 * s);
    const double var = 0.5 * n * (0.5 + 2.0 * gc2 * x2) * s;
    return {mean, std::sqrt(var)};
}

FValue F_function(const ModelParams& params) {
    require_superradiant_branch(params, "F_function");
    const double n = params.n_atoms();
    const double x = params.abs_x();
    const double gc2 = params.gamma_c() * params.gamma_c();
    const double one_minus_x4 = -std::expm1(-4.0 * std::log(x));
    return {-2.0 * n * std::log(x) - 2.0 * n * gc2 * x * x * one_minus_x4};
}

double odd_branch_ratio(const ModelParams& params) {
    require_superradiant_branch(params, "odd_branch_ratio");
    const double x = params.abs_x();
    const double gc2 = params.gamma_c() * params.gamma_c();
    if (x - 1.0 < 1e-12) return 2.0 / (params.n_atoms() * (1.0 + 4.0 * gc2));
    const double one_minus_x4 = -std::expm1(-4.0 * std::log(x));
    const double one_minus_F = -std::expm1(F_function(params).log_F);
    return one_minus_x4 / one_minus_F;
}

double sas_energy_surface(const ModelParams& params, const PhaseSpacePoint& pt, Parity parity) {
    const int s = parity_sign(parity);
    const int n_atoms = params.n_atoms();
    const double r = pt.q * pt.q + pt.p * pt.p;
    const double c = std::cos(pt.theta);
    const double sin_t = std::sin(pt.theta);

    // t = <alpha,zeta|-alpha,-zeta> = e^{-r} c^N,  u = e^{-r} c^{N-1}
    const LogSigned t = power_times_exp(c, n_atoms, -r);
    const LogSigned u = power_times_exp(c, n_atoms - 1, -r);

    const double denom = t.sign == 0 ? 1.0 : one_plus(s * t.sign, t.log_mag);
    if (!(denom > 0.0)) {
        throw ProjectionAnnihilatesState("sas_energy_surface: odd projection of the coherent state vanishes here");
    }
    const double field_factor = t.sign == 0 ? 1.0 : one_plus(-s * t.sign, t.log_mag);

    // c + s u, written as c (1 + s u / c) to keep the odd branch accurate near t = 1
    double atom_factor = 0.0;
    if (u.sign == 0) {
        atom_factor = c;
    } else if (c == 0.0) {
        atom_factor = s * u.sign * std::exp(u.log_mag);
    } else {
        const int sg = s * u.sign * (c < 0 ? -1 : 1);
        const double l = u.log_mag - std::log(std::abs(c));
        atom_factor = c * (l <= 0.0 ? one_plus(sg, l) : 1.0 + sg * std::exp(l));
    }
    const double u_val = u.sign == 0 ? 0.0 : u.sign * std::exp(u.log_mag);

    const double numer = 0.5 * r * field_factor - params.j() * params.omega_a() * atom_factor +
                         std::sqrt(2.0 * n_atoms) * params.gamma() *
                             (pt.q * sin_t * std::cos(pt.phi) + s * pt.p * sin_t * std::sin(pt.phi) * u_val);
    return numer / denom;
}

double sas_energy_at_critical(const ModelParams& params, Parity parity) {
    require_superradiant_branch(params, "sas_energy_at_critical");
    const double n = params.n_atoms();
    const double gc2 = params.gamma_c() * params.gamma_c();
    const double x = params.abs_x();
    const double log_F = F_function(params).log_F;
    const double F = std::exp(log_F);
    double bracket = 0.0;
    if (parity == Parity::even) {
        const double one_minus_x4 = -std::expm1(-4.0 * std::log(x));
        bracket = 2.0 - one_minus_x4 * (-std::expm1(log_F)) / (1.0 + F);
    } else {
        bracket = 2.0 - odd_branch_ratio(params) * (1.0 + F);
    }
    return -n * gc2 * x * x * bracket;
}

double coherent_sas_overlap(const ModelParams& params, Parity parity) {
    const double log_F = F_function(params).log_F;
    return parity == Parity::even ? 0.5 * (1.0 + std::exp(log_F)) : -0.5 * std::expm1(log_F);
}

double normal_odd_energy(const ModelParams& params, double omega) {
    const double w = params.omega_a();
    const double c = std::cos(omega);
    const double s = std::sin(omega);
    return -params.j() * w + w * c * c + s * s - std::abs(params.gamma()) * std::sin(2.0 * omega);
}

NormalOddState normal_odd_state(const ModelParams& params) {
    if (params.abs_x() > 1.0) {
        throw std::domain_error("normal_odd_state: defined in the normal region |gamma| <= gamma_c");
    }
    const double g = params.gamma();
    const double w = params.omega_a();
    const bool degenerate = g == 0.0 && w == 1.0;
    // minimizer of E(Omega): (cos 2 Omega, sin 2 Omega) parallel to (1 - w, 2|gamma|)
    const double omega_c = degenerate ? 0.0 : 0.5 * std::atan2(2.0 * std::abs(g), 1.0 - w);
    const double sgn = g < 0 ? -1.0 : 1.0;
    return {omega_c, std::cos(omega_c), -sgn * std::sin(omega_c), normal_odd_energy(params, omega_c), degenerate};
}

StateGrid normal_odd_grid(const ModelParams& params) {
    const NormalOddState st = normal_odd_state(params);
    StateGrid g(params.n_atoms(), 1);
    g(0, 1) = st.coeff_atom;
    g(1, 0) = st.coeff_photon;
    return g;
}

double evaluate_surface(const ModelParams& params, Surface surface, const PhaseSpacePoint& point) {
    switch (surface) {
        case Surface::coherent: return energy_surface(params, point);
        case Surface::sas_even: return sas_energy_surface(params, point, Parity::even);
        case Surface::sas_odd: return sas_energy_surface(params, point, Parity::odd);
    }
    return 0.0;
}

namespace {

using Coords = std::array<double, 4>;

Coords to_coords(const PhaseSpacePoint& p) { return {p.q, p.p, p.theta, p.phi}; }
PhaseSpacePoint from_coords(const Coords& c) { return {c[0], c[1], c[2], c[3]}; }

double eval_at(const ModelParams& params, Surface surface, Coords c) {
    return evaluate_surface(params, surface, from_coords(c));
}

}  // namespace

std::array<double, 4> surface_gradient(const ModelParams& params, Surface surface, const PhaseSpacePoint& point,
                                       double h) {
    const Coords x0 = to_coords(point);
    std::array<double, 4> grad{};
    for (std::size_t i = 0; i < 4; ++i) {
        Coords plus = x0;
        Coords minus = x0;
        plus[i] += h;
        minus[i] -= h;
        grad[i] = (eval_at(params, surface, plus) - eval_at(params, surface, minus)) / (2.0 * h);
    }
    return grad;
}

Classification classify_critical(const ModelParams& params, const PhaseSpacePoint& point, Surface surface,
                                 double h) {
    // phi is a chart artifact at the pole theta = 0
    const bool with_phi = std::abs(std::sin(point.theta)) > 1e-12;
    const std::size_t dim = with_phi ? 4 : 3;
    const Coords x0 = to_coords(point);
    const double f0 = eval_at(params, surface, x0);

    Eigen::MatrixXd hess(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) {
        Coords plus = x0;
        Coords minus = x0;
        plus[i] += h;
        minus[i] -= h;
        hess(i, i) = (eval_at(params, surface, plus) - 2.0 * f0 + eval_at(params, surface, minus)) / (h * h);
        for (std::size_t k = i + 1; k < dim; ++k) {
            Coords pp = x0, pm = x0, mp = x0, mm = x0;
            pp[i] += h; pp[k] += h;
            pm[i] += h; pm[k] -= h;
            mp[i] -= h; mp[k] += h;
            mm[i] -= h; mm[k] -= h;
            const double v = (eval_at(params, surface, pp) - eval_at(params, surface, pm) -
                              eval_at(params, surface, mp) + eval_at(params, surface, mm)) /
                             (4.0 * h * h);
            hess(i, k) = v;
            hess(k, i) = v;
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(hess, Eigen::EigenvaluesOnly);
    Classification out;
    out.includes_phi = with_phi;
    out.eigenvalues.assign(es.eigenvalues().data(), es.eigenvalues().data() + dim);
    bool degenerate = false;
    bool positive = true;
    for (const double e : out.eigenvalues) {
        if (std::abs(e) < 1e-6) degenerate = true;
        if (e <= 0.0) positive = false;
    }
    out.kind = degenerate ? Classification::Kind::degenerate
                          : (positive ? Classification::Kind::minimum : Classification::Kind::saddle);
    return out;
}

}  // namespace dicke
