// analytic.cpp

#include "dicke/analytic.hpp"

#include "dicke/log_math.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dicke {

namespace {

double sq(double v) { return v * v; }

void require_x_at_least_one(const ModelParams& params, const char* who) {
    if (params.abs_x() < 1.0) throw std::domain_error(std::string(who) + ": requires |x| >= 1");
}

bool at_separatrix(const ModelParams& params) { return params.abs_x() - 1.0 < 1e-12; }

// 1 - x^{-4} without cancellation
double one_minus_inv_x4(double x) { return -std::expm1(-4.0 * std::log(x)); }

// Limit of the odd projected state as x -> 1+: weights 4 gc^2 : 1 on
// |1>|j,-j> and |0>|j,-j+1>, opposite signs on the phi_c = pi branch.
StateGrid odd_separatrix_state(const ModelParams& params) {
    StateGrid g(params.n_atoms(), 1);
    g(1, 0) = 2.0 * params.gamma_c();
    g(0, 1) = -1.0;
    g.normalize();
    return g;
}

ObservableSet sas_closed_forms(const ModelParams& params, Parity parity, double F, double g) {
    // g = (1 - x^{-4}) / (1 +- F), supplied by the caller so the odd branch
    // can use the cancellation-free ratio
    const double n = params.n_atoms();
    const double gc = params.gamma_c();
    const double gc2 = gc * gc;
    const double x = params.abs_x();
    const double x2 = x * x;
    const double x4 = x2 * x2;
    const double s = parity_sign(parity);
    const double one_minus_sF = 1.0 - s * F;   // 1 -+ F
    const double denom = 1.0 + s * F;          // 1 +- F
    const double R = one_minus_sF / denom;
    const double omx4 = one_minus_inv_x4(x);

    ObservableSet o;
    o.q = o.p = o.jx = o.jy = 0.0;
    o.jz = -0.5 * n * x2 * (1.0 - g);
    o.n = n * gc2 * x2 * g * one_minus_sF;
    o.var_q = 0.5 + 2.0 * n * gc2 * x2 * g;
    o.var_p = 0.5 - s * 2.0 * n * gc2 * x2 * g * F;
    o.var_jx = 0.25 * n * (1.0 + (n - 1.0) * g);
    o.var_jy = 0.25 * n * (1.0 - s * (n - 1.0) * x4 * g * F);
    o.var_jz = 0.25 * n * (g / denom) * (1.0 - s * (n - 1.0) * (1.0 - x4) * F - x4 * F * F);
    o.var_n = n * gc2 * x2 *
              (-n * gc2 / x2 * g * one_minus_sF * R + n * gc2 * x2 * omx4 * omx4 + g * one_minus_sF);
    o.jz_n = -n * gc2 * x4 * g * (1.0 / x4 - s * F);
    o.jx_q = -std::sqrt(n * n * n / 2.0) * gc * x * g;

    o.lambda = o.n + o.jz + 0.5 * n;

    // Lambda moments from <s^Lambda> = e^{mu(s-1)} (1 - p_e + p_e s)^N
    const double mu = n * gc2 * x2 * omx4;
    const double np = 0.5 * n * (1.0 - 1.0 / x2);     // N p_e
    const double np_c = 0.5 * n * (x2 - 1.0);         // N p_e / c with c = x^{-2}
    const double m1 = mu + np;
    const double mc = mu + np_c;
    const double mean = (m1 - s * F * mc) / denom;
    const double pe = 0.5 * (1.0 - 1.0 / x2);
    const double pe_c = 0.5 * (x2 - 1.0);
    const double second = ((m1 * m1 - n * pe * pe) + s * F * (mc * mc - n * pe_c * pe_c)) / denom;
    o.var_lambda = second + mean - mean * mean;
    return o;
}

double sas_ratio(const ModelParams& params, Parity parity, double F) {
    const double x = params.abs_x();
    if (parity == Parity::even) return one_minus_inv_x4(x) / (1.0 + F);
    return odd_branch_ratio(params);
}

}  // namespace

double coherent_photon_number(const ModelParams& params) {
    if (params.abs_x() <= 1.0) return 0.0;
    const double x2 = sq(params.abs_x());
    return params.n_atoms() * sq(params.gamma_c()) * x2 * one_minus_inv_x4(params.abs_x());
}

ObservableSet coherent_observables(const ModelParams& params) {
    require_x_at_least_one(params, "coherent_observables");
    const double n = params.n_atoms();
    const double gc = params.gamma_c();
    const double gc2 = gc * gc;
    const double x = params.abs_x();
    const double x2 = x * x;
    const double omx4 = one_minus_inv_x4(x);

    ObservableSet o;
    o.q = -std::sqrt(2.0 * n) * gc * x * std::sqrt(omx4);
    o.p = 0.0;
    o.jx = 0.5 * n * std::sqrt(omx4);
    o.jy = 0.0;
    o.jz = -0.5 * n / x2;
    o.n = n * gc2 * x2 * omx4;
    o.lambda = 0.5 * n * (1.0 - 1.0 / x2 + 2.0 * gc2 * x2 * omx4);
    o.var_q = 0.5;
    o.var_p = 0.5;
    o.var_jx = 0.25 * n / (x2 * x2);
    o.var_jy = 0.25 * n;
    o.var_jz = 0.25 * n * omx4;
    o.var_n = n * gc2 * x2 * omx4;
    o.var_lambda = 0.5 * n * (0.5 + 2.0 * gc2 * x2) * omx4;
    o.jz_n = -n * gc2 * omx4;
    o.jx_q = -std::sqrt(n * n * n / 2.0) * gc * x * omx4;
    return o;
}

ObservableSet sas_observables(const ModelParams& params, Parity parity) {
    require_x_at_least_one(params, "sas_observables");
    if (parity == Parity::odd && at_separatrix(params)) return measure(odd_separatrix_state(params));
    const double F = F_function(params).F();
    return sas_closed_forms(params, parity, F, sas_ratio(params, parity, F));
}

ObservableSet sas_observables_given_F(const ModelParams& params, Parity parity, double F) {
    require_x_at_least_one(params, "sas_observables_given_F");
    const double x = params.abs_x();
    const double g = one_minus_inv_x4(x) / (1.0 + parity_sign(parity) * F);
    return sas_closed_forms(params, parity, F, g);
}

double sas_lambda_tabulated(const ModelParams& params, Parity parity) {
    require_x_at_least_one(params, "sas_lambda_tabulated");
    const double n = params.n_atoms();
    const double gc2 = sq(params.gamma_c());
    const double x = params.abs_x();
    const double x2 = x * x;
    const double s = parity_sign(parity);
    const double F = F_function(params).F();
    // (1 - x^{-2}) / (1 +- F) = g / (1 + x^{-2})
    const double g = parity == Parity::odd && at_separatrix(params)
                         ? odd_branch_ratio(params)
                         : sas_ratio(params, parity, F);
    const double a = 2.0 * gc2 * x2 * (1.0 + x2);
    return 0.5 * n * (g / (1.0 + 1.0 / x2)) * (x2 + a - s * (x2 * x2 + a) * F);
}

int default_nu_max(const ModelParams& params) {
    const double mu = coherent_photon_number(params);
    return static_cast<int>(std::ceil(mu + 20.0 * std::sqrt(mu) + 50.0));
}

StateGrid coherent_grid(int n_atoms, const PhaseSpacePoint& point, int nu_max) {
    const cplx alpha = point.alpha();
    const cplx zeta = point.zeta();
    const double abs_alpha = std::abs(alpha);
    const double abs_zeta = std::abs(zeta);
    const double arg_alpha = std::arg(alpha);
    const double arg_zeta = std::arg(zeta);
    const double j = 0.5 * n_atoms;

    StateGrid g(n_atoms, nu_max);
    const double field0 = -0.5 * abs_alpha * abs_alpha;
    const double atom0 = -j * std::log1p(abs_zeta * abs_zeta);
    for (int nu = 0; nu <= nu_max; ++nu) {
        if (abs_alpha == 0.0 && nu > 0) break;
        const double lf = field0 + logm::xlogy(nu, abs_alpha) - 0.5 * logm::log_factorial(nu);
        for (int k = 0; k <= n_atoms; ++k) {
            if (abs_zeta == 0.0 && k > 0) break;
            const double la = atom0 + 0.5 * logm::log_binomial(n_atoms, k) + logm::xlogy(k, abs_zeta);
            g(nu, k) = std::polar(std::exp(lf + la), nu * arg_alpha + k * arg_zeta);
        }
    }
    return g;
}

SASStateVector build_projected_state(int n_atoms, const PhaseSpacePoint& point, Parity parity, int nu_max) {
    const int s = parity_sign(parity);
    // <alpha,zeta| e^{i pi Lambda} |alpha,zeta> = e^{-2|alpha|^2} cos(theta)^N
    const double r = point.q * point.q + point.p * point.p;
    const double c = std::cos(point.theta);
    double analytic = 0.0;  // || (1 +- e^{i pi Lambda}) |alpha,zeta> ||^2 / 2
    if (c == 0.0) {
        analytic = 1.0;
    } else {
        const int t_sign = (c < 0 && n_atoms % 2 != 0) ? -1 : 1;
        const double log_t = -r + n_atoms * std::log(std::abs(c));
        analytic = s * t_sign > 0 ? 1.0 + std::exp(log_t) : -std::expm1(log_t);
    }
    if (!(analytic > 0.0)) {
        throw ProjectionAnnihilatesState("build_projected_state: odd projection of the coherent state vanishes");
    }

    StateGrid g = coherent_grid(n_atoms, point, nu_max);
    for (int nu = 0; nu <= nu_max; ++nu) {
        for (int k = 0; k <= n_atoms; ++k) {
            const int pf = ((nu + k) % 2 == 0) ? 1 : -1;
            g(nu, k) *= (1.0 + s * pf);
        }
    }
    const double kept = g.norm_squared() / 2.0;
    const double defect = 1.0 - kept / analytic;
    if (defect > 1e-8) {
        throw std::runtime_error("build_projected_state: nu_max = " + std::to_string(nu_max) +
                                 " truncates the state (norm defect " + std::to_string(defect) + ")");
    }
    g.normalize();
    return {parity, std::move(g), nu_max, defect};
}

SASStateVector build_sas_state(const ModelParams& params, Parity parity, std::optional<int> nu_max) {
    require_x_at_least_one(params, "build_sas_state");
    const int rows = nu_max.value_or(default_nu_max(params));
    const PhaseSpacePoint point = params.abs_x() > 1.0 ? superradiant_point(params).point : PhaseSpacePoint{};
    return build_projected_state(params.n_atoms(), point, parity, rows);
}

namespace {

struct DistributionParts {
    double mu;
    double log_mu;
    double log_pe;      // log((1 - x^{-2}) / 2)
    double log_qe;      // log((1 + x^{-2}) / 2)
    double log_F;
    double log_denom;   // log(1 +- F)
};

DistributionParts distribution_parts(const ModelParams& params, Parity parity) {
    require_x_at_least_one(params, "distribution");
    if (parity == Parity::odd && at_separatrix(params)) {
        throw ProjectionAnnihilatesState("distribution: odd projected state vanishes at x = 1");
    }
    const double x = params.abs_x();
    DistributionParts d{};
    d.mu = coherent_photon_number(params);
    d.log_mu = std::log(d.mu);
    const double inv_x2 = 1.0 / (x * x);
    d.log_pe = std::log(-0.5 * std::expm1(-2.0 * std::log(x)));
    d.log_qe = std::log(0.5 * (1.0 + inv_x2));
    d.log_F = F_function(params).log_F;
    d.log_denom = logm::log1p_signed_exp(parity_sign(parity), d.log_F);
    return d;
}

int default_or(const ModelParams& params, std::optional<int> nu_max) {
    const int rows = nu_max.value_or(default_nu_max(params));
    if (rows < 0) throw std::invalid_argument("nu_max must be >= 0");
    return rows;
}

}  // namespace

JointDistribution joint_distribution_sas(const ModelParams& params, Parity parity, std::optional<int> nu_max) {
    const DistributionParts d = distribution_parts(params, parity);
    const int rows = default_or(params, nu_max);
    const int n = params.n_atoms();
    const int s = parity_sign(parity);
    Eigen::MatrixXd p = Eigen::MatrixXd::Zero(rows + 1, n + 1);
    for (int nu = 0; nu <= rows; ++nu) {
        for (int k = 0; k <= n; ++k) {
            const int pf = ((nu + k) % 2 == 0) ? 1 : -1;
            if (s * pf < 0) continue;  // parity hole
            // [1 +- (-1)^{nu+n_e}] mu^nu / nu! C(N, n_e) p^n_e q^{N-n_e} x^N sqrt(F) / (1 +- F),
            // with x^N sqrt(F) = e^{-mu}
            const double lp = std::log(2.0) + logm::xlogy(nu, d.mu) - logm::log_factorial(nu) +
                              logm::log_binomial(n, k) + (k == 0 ? 0.0 : k * d.log_pe) + (n - k) * d.log_qe -
                              d.mu - d.log_denom;
            p(nu, k) = std::exp(lp);
        }
    }
    return {parity, std::move(p), rows, params};
}

Eigen::VectorXd marginal_photon(const ModelParams& params, Parity parity, std::optional<int> nu_max) {
    const DistributionParts d = distribution_parts(params, parity);
    const int rows = default_or(params, nu_max);
    const int s = parity_sign(parity);
    const double log_x2n = -2.0 * params.n_atoms() * std::log(params.abs_x());  // log x^{-2N}
    Eigen::VectorXd out(rows + 1);
    for (int nu = 0; nu <= rows; ++nu) {
        const int sign = s * ((nu % 2 == 0) ? 1 : -1);
        const double numer = logm::log1p_signed_exp(sign, log_x2n);
        out[nu] = std::exp(logm::xlogy(nu, d.mu) - logm::log_factorial(nu) - d.mu + numer - d.log_denom);
    }
    return out;
}

Eigen::VectorXd marginal_excited(const ModelParams& params, Parity parity) {
    const DistributionParts d = distribution_parts(params, parity);
    const int n = params.n_atoms();
    const int s = parity_sign(parity);
    Eigen::VectorXd out(n + 1);
    for (int k = 0; k <= n; ++k) {
        const int sign = s * ((k % 2 == 0) ? 1 : -1);
        // x^{2N} F = e^{-2 mu}
        const double numer = logm::log1p_signed_exp(sign, -2.0 * d.mu);
        const double lp = logm::log_binomial(n, k) + (k == 0 ? 0.0 : k * d.log_pe) + (n - k) * d.log_qe + numer -
                          d.log_denom;
        out[k] = std::exp(lp);
    }
    return out;
}

GaussianLimits gaussian_limits(const ModelParams& params) {
    if (params.abs_x() <= 1.0) throw std::domain_error("gaussian_limits: requires |x| > 1");
    const double n = params.n_atoms();
    const double x2 = sq(params.abs_x());
    const double mu = coherent_photon_number(params);
    return {mu, mu, 0.5 * n * (1.0 - 1.0 / x2), 0.25 * n * one_minus_inv_x4(params.abs_x())};
}

double gaussian_density(double mean, double var, double at) {
    return std::exp(-sq(at - mean) / (2.0 * var)) / std::sqrt(2.0 * std::numbers::pi * var);
}

double sup_distance_to_gaussian(const Eigen::Ref<const Eigen::VectorXd>& dist, double mean, double var) {
    double worst = 0.0;
    for (Eigen::Index k = 0; k < dist.size(); ++k) {
        worst = std::max(worst, std::abs(dist[k] - gaussian_density(mean, var, static_cast<double>(k))));
    }
    return worst;
}

}  // namespace dicke
