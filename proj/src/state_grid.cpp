// state_grid.cpp

#include "dicke/state_grid.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace dicke {

namespace {

const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
const cplx I{0.0, 1.0};

double jplus_element(int n_atoms, int n_e) {
    return std::sqrt(static_cast<double>(n_e + 1) * static_cast<double>(n_atoms - n_e));
}

double real_inner(const StateGrid& a, const StateGrid& b) { return inner(a, b).real(); }

StateGrid combine(const StateGrid& a, cplx sa, const StateGrid& b, cplx sb) {
    return StateGrid(a.n_atoms(), sa * a.coefficients() + sb * b.coefficients());
}

}  // namespace

StateGrid::StateGrid(int n_atoms, int nu_max)
    : n_atoms_(n_atoms), c_(Eigen::MatrixXcd::Zero(nu_max + 1, n_atoms + 1)) {
    if (n_atoms < 1 || nu_max < 0) throw std::invalid_argument("StateGrid: bad dimensions");
}

StateGrid::StateGrid(int n_atoms, Eigen::MatrixXcd coefficients) : n_atoms_(n_atoms), c_(std::move(coefficients)) {
    if (c_.cols() != n_atoms + 1 || c_.rows() < 1) throw std::invalid_argument("StateGrid: bad coefficient shape");
}

void StateGrid::normalize() {
    const double nrm = c_.norm();
    if (nrm == 0.0) throw std::domain_error("StateGrid: cannot normalize the zero vector");
    c_ /= nrm;
}

StateGrid StateGrid::padded(int extra_rows) const {
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(c_.rows() + extra_rows, c_.cols());
    out.topRows(c_.rows()) = c_;
    return {n_atoms_, std::move(out)};
}

StateGrid StateGrid::apply_a() const {
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(c_.rows(), c_.cols());
    for (Eigen::Index nu = 0; nu + 1 < c_.rows(); ++nu) {
        out.row(nu) = std::sqrt(static_cast<double>(nu + 1)) * c_.row(nu + 1);
    }
    return {n_atoms_, std::move(out)};
}

StateGrid StateGrid::apply_adag() const {
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(c_.rows(), c_.cols());
    for (Eigen::Index nu = 0; nu + 1 < c_.rows(); ++nu) {
        out.row(nu + 1) = std::sqrt(static_cast<double>(nu + 1)) * c_.row(nu);
    }
    return {n_atoms_, std::move(out)};
}

StateGrid StateGrid::apply_jplus() const {
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(c_.rows(), c_.cols());
    for (int k = 0; k < n_atoms_; ++k) out.col(k + 1) = jplus_element(n_atoms_, k) * c_.col(k);
    return {n_atoms_, std::move(out)};
}

StateGrid StateGrid::apply_jminus() const {
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(c_.rows(), c_.cols());
    for (int k = 0; k < n_atoms_; ++k) out.col(k) = jplus_element(n_atoms_, k) * c_.col(k + 1);
    return {n_atoms_, std::move(out)};
}

StateGrid StateGrid::apply_jz() const {
    Eigen::MatrixXcd out = c_;
    const double j = 0.5 * n_atoms_;
    for (int k = 0; k <= n_atoms_; ++k) out.col(k) *= (k - j);
    return {n_atoms_, std::move(out)};
}

StateGrid StateGrid::apply_number() const {
    Eigen::MatrixXcd out = c_;
    for (Eigen::Index nu = 0; nu < c_.rows(); ++nu) out.row(nu) *= static_cast<double>(nu);
    return {n_atoms_, std::move(out)};
}

cplx inner(const StateGrid& a, const StateGrid& b) {
    if (a.n_atoms() != b.n_atoms()) throw std::invalid_argument("inner: atom numbers differ");
    const Eigen::Index rows = std::min(a.coefficients().rows(), b.coefficients().rows());
    return (a.coefficients().topRows(rows).conjugate().cwiseProduct(b.coefficients().topRows(rows))).sum();
}

StateGrid grid_from_sector(const SectorBasis& basis, const Eigen::Ref<const Eigen::VectorXd>& v) {
    if (static_cast<std::size_t>(v.size()) != basis.size()) {
        throw std::invalid_argument("grid_from_sector: vector length does not match basis");
    }
    StateGrid g(basis.n_atoms(), basis.lambda_max());
    for (std::size_t i = 0; i < basis.size(); ++i) {
        g(basis[i].nu, basis[i].n_e) = v[static_cast<Eigen::Index>(i)];
    }
    return g;
}

ObservableSet measure(const StateGrid& state) {
    const double nrm2 = state.norm_squared();
    if (std::abs(std::sqrt(nrm2) - 1.0) > 1e-10) {
        throw std::invalid_argument("measure: state is not normalized");
    }
    // Two spare rows keep a^dag / (a^dag)^2 images inside the grid.
    const StateGrid psi = state.padded(2);
    const StateGrid a = psi.apply_a();
    const StateGrid ad = psi.apply_adag();
    const StateGrid jp = psi.apply_jplus();
    const StateGrid jm = psi.apply_jminus();

    const StateGrid q = combine(a, inv_sqrt2, ad, inv_sqrt2);
    const StateGrid p = combine(ad, I * inv_sqrt2, a, -I * inv_sqrt2);
    const StateGrid jx = combine(jp, 0.5, jm, 0.5);
    const StateGrid jy = combine(jp, -0.5 * I, jm, 0.5 * I);
    const StateGrid jz = psi.apply_jz();
    const StateGrid n = psi.apply_number();
    const StateGrid lambda = combine(n, 1.0, jz, 1.0);  // + j psi, handled below

    const double j = 0.5 * state.n_atoms();
    ObservableSet s;
    s.q = real_inner(psi, q);
    s.p = real_inner(psi, p);
    s.jx = real_inner(psi, jx);
    s.jy = real_inner(psi, jy);
    s.jz = real_inner(psi, jz);
    s.n = real_inner(psi, n);
    s.lambda = real_inner(psi, lambda) + j;

    s.var_q = q.norm_squared() - s.q * s.q;
    s.var_p = p.norm_squared() - s.p * s.p;
    s.var_jx = jx.norm_squared() - s.jx * s.jx;
    s.var_jy = jy.norm_squared() - s.jy * s.jy;
    s.var_jz = jz.norm_squared() - s.jz * s.jz;
    s.var_n = n.norm_squared() - s.n * s.n;
    const StateGrid lambda_full = combine(lambda, 1.0, psi, j);
    s.var_lambda = lambda_full.norm_squared() - s.lambda * s.lambda;

    s.jz_n = real_inner(jz, n);
    s.jx_q = real_inner(jx, q);
    return s;
}

double energy_expectation(const ModelParams& params, const StateGrid& state) {
    if (params.n_atoms() != state.n_atoms()) throw std::invalid_argument("energy_expectation: atom number mismatch");
    const StateGrid psi = state.padded(1);
    const StateGrid field = combine(psi.apply_a(), 1.0, psi.apply_adag(), 1.0);
    const StateGrid coupled = combine(field.apply_jplus(), 1.0, field.apply_jminus(), 1.0);
    const double g = params.gamma() / std::sqrt(static_cast<double>(params.n_atoms()));
    const double e = real_inner(psi, psi.apply_number()) + params.omega_a() * real_inner(psi, psi.apply_jz()) +
                     g * real_inner(psi, coupled);
    return e / psi.norm_squared();
}

}  // namespace dicke
