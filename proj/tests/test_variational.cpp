#include "doctest.h"

#include "dicke/analytic.hpp"
#include "dicke/exact.hpp"
#include "dicke/state_grid.hpp"
#include "dicke/variational.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace dicke;

namespace {

constexpr double pi = std::numbers::pi;

double rel(double a, double b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300}); }

}  // namespace

TEST_CASE("coherent energy surface values") {
    const ModelParams p(1.3, 0.7, 6);
    CHECK(energy_surface(p, {0, 0, 0, 0}) == doctest::Approx(-3.0 * 1.3).epsilon(1e-15));
    CHECK(energy_surface(ModelParams(1.0, 1.0, 4), {1, 0, pi / 2, 0}) ==
          doctest::Approx(0.5 + 2.0 * std::sqrt(2.0)).epsilon(1e-14));
    // the analytic expression is <H> in the product state
    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        const PhaseSpacePoint pt{3 * u(gen) - 1.5, 3 * u(gen) - 1.5, pi * u(gen), 2 * pi * u(gen)};
        const ModelParams q(0.5 + u(gen), 1.5 * u(gen), 1 + trial % 7);
        StateGrid g = coherent_grid(q.n_atoms(), pt, 80);
        g.normalize();
        CHECK(energy_expectation(q, g) == doctest::Approx(energy_surface(q, pt)).epsilon(1e-11));
    }
}

TEST_CASE("energy surface symmetry (q, phi) -> (-q, phi + pi)") {
    const ModelParams p(0.9, 0.8, 5);
    for (double q : {-2.0, -0.3, 0.4, 1.7}) {
        for (double th : {0.2, 1.1, 2.5}) {
            for (double ph : {0.0, 0.6, 2.0}) {
                CHECK(energy_surface(p, {q, 0.3, th, ph}) ==
                      doctest::Approx(energy_surface(p, {-q, 0.3, th, ph + pi})).epsilon(1e-13));
            }
        }
    }
}

TEST_CASE("critical points") {
    const ModelParams normal(1.0, 0.3, 10);
    const auto cn = critical_points(normal);
    REQUIRE(cn.size() == 1);
    CHECK(cn[0].phase == Phase::normal);
    CHECK(cn[0].energy == doctest::Approx(-2.0 * 10 * 0.25).epsilon(1e-15));

    const ModelParams sr(1.0, 1.0, 10);
    const auto cs = critical_points(sr);
    REQUIRE(cs.size() == 2);
    CHECK(cs[0].phi_branch == 0.0);
    CHECK(cs[1].phi_branch == doctest::Approx(pi));
    for (const auto& c : cs) {
        CHECK(c.phase == Phase::superradiant);
        CHECK(c.point.theta == doctest::Approx(std::acos(0.25)).epsilon(1e-14));
        CHECK(c.point.theta == doctest::Approx(1.31812).epsilon(1e-5));
        CHECK(std::abs(c.point.q) == doctest::Approx(2.0 * std::sqrt(5.0) * std::sqrt(15.0 / 16.0)).epsilon(1e-14));
        CHECK(std::abs(c.point.q) == doctest::Approx(4.33013).epsilon(1e-5));
        CHECK(c.energy == doctest::Approx(energy_surface(sr, c.point)).epsilon(1e-14));
        for (double g : surface_gradient(sr, Surface::coherent, c.point)) CHECK(std::abs(g) < 1e-8);
    }
    CHECK(cs[0].point.q < 0);
    CHECK(cs[1].point.q > 0);
    CHECK(superradiant_point(sr).point.q > 0);
    CHECK(superradiant_point(sr).point.alpha().real() > 0);
    CHECK(superradiant_point(sr).point.zeta().real() < 0);
    CHECK_THROWS_AS(superradiant_point(normal), std::domain_error);

    const auto at = critical_points(ModelParams(1.0, 0.5, 10));
    REQUIRE(at.size() == 1);
    CHECK(at[0].point.theta == 0.0);
}

TEST_CASE("minimum energies and lambda statistics") {
    CHECK(minimum_energy(ModelParams(1.0, 0.2, 20)).normal == doctest::Approx(-10.0).epsilon(1e-15));
    const auto at_c = minimum_energy(ModelParams(1.0, 0.5, 20));
    REQUIRE(at_c.superradiant.has_value());
    CHECK(*at_c.superradiant == doctest::Approx(at_c.normal).epsilon(1e-15));
    const auto m = minimum_energy(ModelParams(1.0, 1.0, 10));
    CHECK(*m.superradiant == doctest::Approx(-10.625).epsilon(1e-15));
    CHECK(m.normal == doctest::Approx(-5.0).epsilon(1e-15));
    CHECK_FALSE(minimum_energy(ModelParams(1.0, 0.2, 20)).superradiant.has_value());

    const auto l1 = lambda_statistics(ModelParams(1.0, 0.5, 10), Phase::superradiant);
    CHECK(l1.mean == 0.0);
    CHECK(l1.stddev == 0.0);
    const auto l2 = lambda_statistics(ModelParams(1.0, 1.0, 10), Phase::superradiant);
    CHECK(l2.mean == doctest::Approx(13.125).epsilon(1e-15));
    CHECK(l2.stddev * l2.stddev == doctest::Approx(5.0 * 2.5 * 0.9375).epsilon(1e-14));
    const auto c = coherent_observables(ModelParams(1.0, 1.0, 10));
    CHECK(l2.mean == doctest::Approx(c.n + c.jz + 5.0).epsilon(1e-14));
    const auto ln = lambda_statistics(ModelParams(1.0, 0.3, 10), Phase::normal);
    CHECK(ln.mean == 0.0);
    CHECK_THROWS_AS(lambda_statistics(ModelParams(1.0, 0.3, 10), Phase::superradiant), std::domain_error);
}

TEST_CASE("F function") {
    CHECK(F_function(ModelParams(1.0, 0.5, 10)).F() == 1.0);
    const FValue f = F_function(ModelParams(1.0, 1.0, 10));
    CHECK(f.log_F == doctest::Approx(-20.0 * std::log(2.0) - 18.75).epsilon(1e-14));
    CHECK(f.log_F == doctest::Approx(-32.6129).epsilon(1e-5));
    CHECK(f.F() == doctest::Approx(6.8e-15).epsilon(0.02));
    double prev = 0.0;
    for (int n = 1; n <= 200; ++n) {
        const double lf = F_function(ModelParams(1.0, 0.6, n)).log_F;
        CHECK(lf < prev);
        CHECK(std::isfinite(lf));
        prev = lf;
    }
    CHECK_THROWS_AS(F_function(ModelParams(1.0, 0.4, 10)), std::domain_error);
}

TEST_CASE("projected energy surface equals <H> in the projected state") {
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 30; ++trial) {
        const PhaseSpacePoint pt{4 * u(gen) - 2, 4 * u(gen) - 2, 0.2 + 2.7 * u(gen), 2 * pi * u(gen)};
        const ModelParams p(0.5 + u(gen), 1.2 * u(gen), 1 + trial % 9);
        for (Parity parity : {Parity::even, Parity::odd}) {
            const SASStateVector s = build_projected_state(p.n_atoms(), pt, parity, 90);
            CHECK(sas_energy_surface(p, pt, parity) ==
                  doctest::Approx(energy_expectation(p, s.grid)).epsilon(1e-10));
        }
    }
}

TEST_CASE("projected energy surface special values") {
    const ModelParams p(1.0, 0.3, 8);
    CHECK(sas_energy_surface(p, {0, 0, 0, 0}, Parity::even) == doctest::Approx(-4.0).epsilon(1e-15));
    CHECK_THROWS_AS(sas_energy_surface(p, {0, 0, 0, 0}, Parity::odd), ProjectionAnnihilatesState);

    for (double gamma : {0.51, 0.6, 0.8, 1.0, 1.6}) {
        for (int n : {1, 4, 10, 30, 100}) {
            const ModelParams q(1.0, gamma, n);
            const PhaseSpacePoint c = superradiant_point(q).point;
            for (Parity parity : {Parity::even, Parity::odd}) {
                CHECK(rel(sas_energy_surface(q, c, parity), sas_energy_at_critical(q, parity)) < 1e-12);
            }
            // the other branch gives the same projected energies
            const PhaseSpacePoint c0 = critical_points(q).front().point;
            CHECK(rel(sas_energy_surface(q, c0, Parity::even), sas_energy_at_critical(q, Parity::even)) < 1e-12);
        }
    }
}

TEST_CASE("projected energy at the critical point") {
    const ModelParams sep(1.0, 0.5, 10);
    CHECK(sas_energy_at_critical(sep, Parity::even) == doctest::Approx(-5.0).epsilon(1e-15));
    // odd limit at x -> 1+: -2 N gc^2 + 4 gc^2 / (1 + 4 gc^2)
    for (int n : {2, 10, 20, 50}) {
        const double limit = -0.5 * n + 0.5;
        const ModelParams at(1.0, 0.5, n);
        CHECK(sas_energy_at_critical(at, Parity::odd) == doctest::Approx(limit).epsilon(1e-12));
        const ModelParams near(1.0, 0.5 * (1.0 + 1e-6), n);
        CHECK(sas_energy_at_critical(near, Parity::odd) == doctest::Approx(limit).epsilon(1e-5));
        // equals the lambda = 1 trial energy at the separatrix
        CHECK(sas_energy_at_critical(at, Parity::odd) == doctest::Approx(normal_odd_state(at).energy).epsilon(1e-12));
    }
    const ModelParams x2(1.0, 1.0, 10);
    CHECK(sas_energy_at_critical(x2, Parity::even) == doctest::Approx(-10.625).epsilon(1e-13));
    CHECK_THROWS_AS(sas_energy_at_critical(ModelParams(1.0, 0.3, 10), Parity::even), std::domain_error);

    // |<H>+ - E_super| <= 4 N gc^2 x^2 F
    for (double gamma : {0.55, 0.7, 1.0, 1.5}) {
        for (int n : {2, 6, 10, 20}) {
            const ModelParams q(1.0, gamma, n);
            const double bound = 4.0 * n * 0.25 * q.x() * q.x() * F_function(q).F();
            CHECK(std::abs(sas_energy_at_critical(q, Parity::even) - *minimum_energy(q).superradiant) <= bound * (1 + 1e-12));
        }
    }
}

TEST_CASE("odd branch ratio is continuous across the series switch") {
    for (int n : {2, 10, 40}) {
        const double series = odd_branch_ratio(ModelParams(1.0, 0.5, n));
        CHECK(series == doctest::Approx(2.0 / (n * 2.0)).epsilon(1e-15));
        for (double dx : {2e-12, 1e-10, 1e-8}) {
            const double r = odd_branch_ratio(ModelParams(1.0, 0.5 * (1 + dx), n));
            CHECK(r == doctest::Approx(series).epsilon(1e-3));
        }
    }
}

TEST_CASE("overlap of coherent and projected states") {
    CHECK(coherent_sas_overlap(ModelParams(1.0, 0.5, 10), Parity::even) == 1.0);
    CHECK(coherent_sas_overlap(ModelParams(1.0, 0.5, 10), Parity::odd) == 0.0);
    CHECK(coherent_sas_overlap(ModelParams(1.0, 2.0, 10), Parity::even) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(coherent_sas_overlap(ModelParams(1.0, 2.0, 10), Parity::odd) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("lambda = 1 odd trial state") {
    for (double gamma : {0.05, 0.1, 0.3, 0.49}) {
        const auto s = normal_odd_state(ModelParams(1.0, gamma, 10));
        CHECK(s.omega_c == doctest::Approx(pi / 4).epsilon(1e-15));
        CHECK_FALSE(s.degenerate);
    }
    const ModelParams p(1.0, 0.1, 10);
    CHECK(normal_odd_state(p).energy == doctest::Approx(-5.0 + 1.0 - 0.1).epsilon(1e-15));
    const SectorBasis b1 = build_sector_basis(p, 1, Parity::odd);
    CHECK(lowest_eigenpairs(build_hamiltonian(p, b1), 1).values[0] ==
          doctest::Approx(normal_odd_state(p).energy).epsilon(1e-14));

    const ModelParams q(0.5, 0.2, 6);
    const auto s = normal_odd_state(q);
    CHECK(std::tan(2.0 * s.omega_c) == doctest::Approx(0.8).epsilon(1e-14));
    CHECK(s.omega_c == doctest::Approx(0.337370).epsilon(1e-6));
    const double h = 1e-6;
    CHECK(std::abs(normal_odd_energy(q, s.omega_c + h) - normal_odd_energy(q, s.omega_c - h)) / (2 * h) < 1e-8);
    double best = 1e300;
    for (int i = 0; i <= 200000; ++i) best = std::min(best, normal_odd_energy(q, pi * i / 200000.0));
    CHECK(s.energy <= best + 1e-12);
    // the trial state is that of the 2 x 2 lambda = 1 block
    const SectorBasis bq = build_sector_basis(q, 1, Parity::odd);
    CHECK(lowest_eigenpairs(build_hamiltonian(q, bq), 1).values[0] == doctest::Approx(s.energy).epsilon(1e-14));
    const StateGrid g = normal_odd_grid(q);
    CHECK(energy_expectation(q, g) == doctest::Approx(s.energy).epsilon(1e-14));

    CHECK(normal_odd_state(ModelParams(1.0, 0.0, 4)).degenerate);
    CHECK_FALSE(normal_odd_state(ModelParams(0.7, 0.0, 4)).degenerate);
    CHECK_THROWS_AS(normal_odd_state(ModelParams(1.0, 0.6, 4)), std::domain_error);
    CHECK(normal_odd_state(ModelParams(1.0, -0.2, 4)).energy ==
          doctest::Approx(normal_odd_state(ModelParams(1.0, 0.2, 4)).energy).epsilon(1e-15));
}

TEST_CASE("projected surface gradients") {
    const ModelParams normal(1.0, 0.3, 20);
    for (double g : surface_gradient(normal, Surface::sas_even, {0, 0, 0, 0})) CHECK(std::abs(g) < 1e-6);

    const ModelParams far(1.0, 0.8, 20);
    const auto gf = surface_gradient(far, Surface::sas_even, superradiant_point(far).point);
    CHECK(std::abs(gf[0]) < 1e-6);
    CHECK(std::abs(gf[2]) < 1e-6);
    CHECK(std::abs(gf[1]) < 1e-9);
    CHECK(std::abs(gf[3]) < 1e-9);

    const ModelParams near(1.0, 0.52, 20);
    const double dq = std::abs(surface_gradient(near, Surface::sas_even, superradiant_point(near).point)[0]);
    CHECK(dq > 1e-2);
    CHECK(dq < 10.0);
}

TEST_CASE("Hessian classification") {
    const auto c1 = classify_critical(ModelParams(1.0, 0.3, 10), {0, 0, 0, 0}, Surface::coherent);
    CHECK(c1.kind == Classification::Kind::minimum);
    CHECK_FALSE(c1.includes_phi);
    for (double e : c1.eigenvalues) CHECK(e > 0);

    const auto c2 = classify_critical(ModelParams(1.0, 0.5, 10), {0, 0, 0, 0}, Surface::coherent);
    CHECK(c2.kind == Classification::Kind::degenerate);
    CHECK(std::abs(c2.eigenvalues.front()) < 1e-6);

    const ModelParams sr(1.0, 1.0, 10);
    const auto c3 = classify_critical(sr, superradiant_point(sr).point, Surface::coherent);
    CHECK(c3.kind == Classification::Kind::minimum);
    CHECK(c3.includes_phi);
    CHECK(c3.eigenvalues.size() == 4);

    const auto saddle = classify_critical(sr, {0, 0, 0, 0}, Surface::coherent);
    CHECK(saddle.kind == Classification::Kind::saddle);
}
