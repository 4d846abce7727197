#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "dx3/model.hpp"
#include "dx3/oracle.hpp"
#include "dx3/solutions.hpp"

using namespace dx3;
using Catch::Matchers::WithinAbs;

namespace {
Params with_lambda(double lam) {
    Params P;
    P.lambda = lam;
    return P;
}
} // namespace

TEST_CASE("radial integration returns to the launch point") {
    {
        Params P;
        const TurningPoints tp = turning_points(P, 2.0);
        const auto smp = integrate_radial(P, {tp.r_hi, 0.0}, {M_PI});
        REQUIRE_THAT(smp[0].r, WithinAbs(tp.r_hi, 1e-9));
        REQUIRE_THAT(smp[0].p, WithinAbs(0.0, 1e-9));
    }
    {
        const Params P = with_lambda(0.2);
        const TurningPoints tp = turning_points(P, 2.0);
        const double T = radial_period(P, 2.0);
        const auto smp = integrate_radial(P, {tp.r_hi, 0.0}, {T});
        REQUIRE_THAT(smp[0].r, WithinAbs(tp.r_hi, 1e-7));
    }
}

TEST_CASE("sample time validation") {
    Params P;
    REQUIRE_THROWS_AS(integrate_radial(P, {1.0, 0.0}, {-1.0}), DomainError);
    REQUIRE_THROWS_AS(integrate_radial(P, {1.0, 0.0}, {1.0, 0.5}), DomainError);
    REQUIRE_THROWS_AS(integrate_radial(P, {-1.0, 0.0}, {1.0}), DomainError);
    const auto at_zero = integrate_radial(P, {1.3, 0.2}, {0.0});
    REQUIRE(at_zero[0].r == 1.3);
    REQUIRE(at_zero[0].p == 0.2);
}

TEST_CASE("measured period matches the closed form") {
    IntegratorConfig cfg;
    for (double lam : {0.2, 0.05, -0.2}) {
        const Params P = with_lambda(lam);
        const PeriodResult pr = oracle_period(P, 2.0, cfg);
        REQUIRE_FALSE(pr.analytic);
        REQUIRE_THAT(pr.T / radial_period(P, 2.0), WithinAbs(1.0, 1e-6));
    }
    const PeriodResult pe = oracle_period(Params{}, 2.0, cfg);
    REQUIRE_THAT(pe.T, WithinAbs(M_PI, 1e-6));

    const Params P = with_lambda(0.2);
    const PeriodResult pc = oracle_period(P, potential_minimum(P).second, cfg);
    REQUIRE(pc.analytic);
    REQUIRE_THAT(pc.T, WithinAbs(radial_period(P, potential_minimum(P).second), 1e-12));
    REQUIRE_THROWS_AS(oracle_period(P, 3.0, cfg), RegimeError);
}

TEST_CASE("measured travel times match the closed maps") {
    const Params P = with_lambda(0.2);
    {
        const auto ts = time_at_radii(P, 2.0, {3.0, 2.8675200955});
        REQUIRE_THAT(ts[0], WithinAbs(7.7812895914, 1e-8));
        REQUIRE_THAT(ts[1], WithinAbs(8.026581143575, 1e-8));
    }
    {
        const auto ts = time_at_radii(P, 3.0, {1.0, 2.0, 4.0});
        REQUIRE_THAT(ts[0], WithinAbs(0.401855034769, 1e-8));
        REQUIRE_THAT(ts[1], WithinAbs(1.0009825575, 1e-8));
        REQUIRE_THAT(ts[2], WithinAbs(3.044764058670, 1e-8));
    }
    REQUIRE_THROWS_AS(time_at_radii(P, 2.0, {10.0}), DomainError);
    REQUIRE_THROWS_AS(time_at_radii(P, 2.5, {1.0}), RegimeError);
}

TEST_CASE("full-motion conservation") {
    Params P;
    const double E = 2.0;
    const TurningPoints tp = turning_points(P, E);
    CartesianState s0;
    s0.q = {tp.r_hi, 0.0, 0.0};
    s0.p = {0.0, P.l / tp.r_hi, 0.0};
    std::vector<double> ts;
    for (int k = 0; k <= 20; ++k) ts.push_back(M_PI * k / 20.0);
    const auto traj = integrate_nd(P, s0, ts, {});
    const ConservationReport rep = conservation_report(P, traj);
    REQUIRE(rep.h_drift < 1e-9);
    REQUIRE(rep.l2_drift < 1e-9);
    REQUIRE(rep.fradkin_drift < 1e-9);
    REQUIRE(rep.q_const_drift < 1e-9);
    REQUIRE(rep.q_arg_drift < 1e-8);
    REQUIRE(rep.trace_residual < 1e-12);
    REQUIRE_THROWS_AS(conservation_report(P, {}), DomainError);
}

TEST_CASE("negative deformation confines the inner region") {
    const Params P = with_lambda(-0.2);
    const double E = 2.0;
    const double rs = *singular_radius(P);
    const TurningPoints tp = turning_points(P, E);
    REQUIRE(tp.r_hi < rs);
    const double T = radial_period(P, E);
    std::vector<double> ts;
    for (int k = 0; k <= 50; ++k) ts.push_back(10.0 * T * k / 50.0);
    const auto smp = integrate_radial(P, {tp.r_hi, 0.0}, ts);
    for (const auto& s : smp) {
        REQUIRE(s.r > 0.0);
        REQUIRE(s.r < rs);
    }
}

TEST_CASE("guard band around the metric singularity") {
    const Params P = with_lambda(-0.2);
    const double rs = *singular_radius(P);
    REQUIRE_THROWS_AS(integrate_radial(P, {rs, 0.0}, {1.0}), DomainError);

    IntegratorConfig outer;
    outer.outer_region = true;
    REQUIRE_THROWS_AS(integrate_radial(with_lambda(0.2), {3.0, 0.0}, {1.0}, outer), DomainError);
    REQUIRE_THROWS_AS(integrate_radial(P, {rs, 0.0}, {1.0}, outer), DomainError);

    // a fast inner orbit turns inside the guard band and is rejected mid-flight
    const RadialState hot{1.0, 1789.0};
    REQUIRE_THROWS_AS(integrate_radial(P, hot, {1.0}), SingularityApproach);
}

TEST_CASE("outer region of the negative deformation") {
    const Params P = with_lambda(-0.2);
    IntegratorConfig cfg;
    cfg.outer_region = true;
    const RadialState s0{3.0, 0.0};
    const RadialRhs rhs{P, true};
    const double e0 = rhs.energy(s0.r, s0.p);
    const auto smp = integrate_radial(P, s0, {0.0, 0.5, 1.0}, cfg);
    REQUIRE(smp.size() == 3);
    REQUIRE(smp[2].r > smp[1].r);  // repelled outward
    for (const auto& s : smp)
        REQUIRE_THAT(rhs.energy(s.r, s.p) / e0, WithinAbs(1.0, 1e-9));
}

TEST_CASE("grid minimization of the effective potential") {
    for (double lam : {0.0, 0.2, -0.2}) {
        const Params P = with_lambda(lam);
        const auto [r_g, v_g] = grid_minimize_potential(P);
        const auto [r_a, v_a] = potential_minimum(P);
        REQUIRE_THAT(r_g, WithinAbs(r_a, 1e-9));
        REQUIRE_THAT(v_g, WithinAbs(v_a, 1e-9));
    }
}
