#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>

#include "dx3/model.hpp"

using namespace dx3;
using Catch::Matchers::WithinAbs;

namespace {
Params with_lambda(double lam) {
    Params P;
    P.lambda = lam;
    return P;
}
} // namespace

TEST_CASE("parameter validation") {
    Params P;
    REQUIRE_NOTHROW(P.validate());
    P.m = 0.0;
    REQUIRE_THROWS_AS(P.validate(), DomainError);
    P = Params{};
    P.omega = -1.0;
    REQUIRE_THROWS_AS(P.validate(), DomainError);
    P = Params{};
    P.l = -0.5;
    REQUIRE_THROWS_AS(P.validate(), DomainError);
}

TEST_CASE("singular radius") {
    REQUIRE_FALSE(singular_radius(with_lambda(0.0)).has_value());
    REQUIRE_FALSE(singular_radius(with_lambda(0.3)).has_value());
    const auto rs = singular_radius(with_lambda(-0.2));
    REQUIRE(rs.has_value());
    REQUIRE_THAT(*rs, WithinAbs(std::sqrt(5.0), 1e-12));
}

TEST_CASE("kinetic factor") {
    REQUIRE_THAT(kinetic_factor(with_lambda(0.0), 1.7), WithinAbs(1.0, 1e-15));
    REQUIRE_THAT(kinetic_factor(with_lambda(0.2), 2.0), WithinAbs(1.0 / 1.8, 1e-15));
    REQUIRE_THROWS_AS(kinetic_factor(with_lambda(-0.2), std::sqrt(5.0)), MetricSingular);
}

TEST_CASE("radial hamiltonian spot values") {
    Params P;
    REQUIRE_THAT(radial_hamiltonian(P, {std::sqrt(2.0), 1.2247448714}), WithinAbs(2.0, 1e-9));
    REQUIRE_THROWS_AS(radial_hamiltonian(P, {0.0, 1.0}), DomainError);
    Params Pn = with_lambda(-0.2);
    REQUIRE_THROWS_AS(radial_hamiltonian(Pn, {3.0, 0.0}), MetricSingular);
}

TEST_CASE("nd hamiltonian agrees with the radial reduction") {
    Params P = with_lambda(0.2);
    CartesianState s;
    s.q = {1.2, -0.7, 0.4};
    s.p = {0.3, 1.1, -0.9};
    const Hyperspherical h = to_hyperspherical(s);
    Params Pr = P;
    Pr.l = std::sqrt(h.l_sq);
    REQUIRE_THAT(hamiltonian_nd(P, s),
                 WithinAbs(radial_hamiltonian(Pr, {h.r, h.p_r}), 1e-12));

    CartesianState bad;
    bad.q = {3.0, 0.0};
    bad.p = {0.0, 0.0};
    REQUIRE_THROWS_AS(hamiltonian_nd(with_lambda(-0.2), bad), MetricSingular);
}

TEST_CASE("potential minimum closed form") {
    const auto [r0, v0] = potential_minimum(with_lambda(0.0));
    REQUIRE_THAT(r0, WithinAbs(1.0, 1e-12));
    REQUIRE_THAT(v0, WithinAbs(1.0, 1e-12));
    const auto [rp, vp] = potential_minimum(with_lambda(0.2));
    REQUIRE_THAT(rp, WithinAbs(1.1044473291, 1e-9));
    REQUIRE_THAT(vp, WithinAbs(0.8198039027, 1e-9));
    const auto [rn, vn] = potential_minimum(with_lambda(-0.2));
    REQUIRE_THAT(rn, WithinAbs(0.9054302307, 1e-9));
    REQUIRE_THAT(vn, WithinAbs(1.2198039027, 1e-9));

    Params Pl0;
    Pl0.l = 0.0;
    REQUIRE_THROWS_AS(potential_minimum(Pl0), DomainError);
}

TEST_CASE("effective potential shape") {
    Params P = with_lambda(-0.2);
    const double rs = std::sqrt(5.0);
    double prev = effective_potential(P, 1.5);
    for (double r = 1.6; r < rs - 1e-3; r += 0.05) {
        const double v = effective_potential(P, r);
        REQUIRE(v > prev);
        prev = v;
    }
    REQUIRE(effective_potential(P, rs - 1e-4) > 100.0);
}

TEST_CASE("energy classification") {
    Params P = with_lambda(0.2);
    REQUIRE(classify_energy(P, 0.5) == EnergyRegime::Forbidden);
    REQUIRE(classify_energy(P, potential_minimum(P).second) == EnergyRegime::Circular);
    REQUIRE(classify_energy(P, 2.0) == EnergyRegime::Bounded);
    REQUIRE(classify_energy(P, 2.5) == EnergyRegime::Critical);
    REQUIRE(classify_energy(P, 2.6) == EnergyRegime::Unbounded);

    REQUIRE(classify_energy(with_lambda(0.0), 2.0) == EnergyRegime::Bounded);
    REQUIRE(classify_energy(with_lambda(-0.2), 100.0) == EnergyRegime::Bounded);
}

TEST_CASE("momentum on shell") {
    Params P;
    REQUIRE_THAT(momentum_on_shell(P, 2.0, std::sqrt(2.0)), WithinAbs(1.2247448714, 1e-9));
    const TurningPoints tp = turning_points(P, 2.0);
    REQUIRE(momentum_on_shell(P, 2.0, tp.r_hi) == 0.0);
    REQUIRE(momentum_on_shell(P, 2.0, tp.r_lo) == 0.0);
    REQUIRE_THROWS_AS(momentum_on_shell(P, 2.0, 3.0), DomainError);
}

TEST_CASE("turning points") {
    const TurningPoints t0 = turning_points(with_lambda(0.0), 2.0);
    REQUIRE_THAT(t0.r_lo, WithinAbs(0.5176380902, 1e-9));
    REQUIRE_THAT(t0.r_hi, WithinAbs(1.9318516526, 1e-9));

    const TurningPoints tp = turning_points(with_lambda(0.2), 2.0);
    REQUIRE_THAT(tp.r_lo, WithinAbs(0.5031954443, 1e-9));
    REQUIRE_THAT(tp.r_hi, WithinAbs(4.4437365296, 1e-9));

    const TurningPoints tn = turning_points(with_lambda(-0.2), 2.0);
    REQUIRE_THAT(tn.r_lo, WithinAbs(0.5358069214, 1e-9));
    REQUIRE_THAT(tn.r_hi, WithinAbs(1.3910906388, 1e-9));

    const TurningPoints tu = turning_points(with_lambda(0.2), 3.0);
    REQUIRE_THAT(tu.r_lo, WithinAbs(0.4071251504, 1e-9));
    REQUIRE(std::isinf(tu.r_hi));
    REQUIRE_THAT(turning_points(with_lambda(0.2), 6.0).r_lo, WithinAbs(0.2872951948, 1e-9));

    Params P = with_lambda(0.2);
    const double e_circ = potential_minimum(P).second;
    const TurningPoints tc = turning_points(P, e_circ);
    REQUIRE_THAT(tc.r_lo, WithinAbs(tc.r_hi, 1e-9));
    REQUIRE_THAT(tc.r_lo, WithinAbs(1.1044473291, 1e-7));

    REQUIRE_THROWS_AS(turning_points(P, 0.5), NoRealRoots);
    REQUIRE_THROWS_AS(turning_points(P, 2.5), RegimeError);
}

TEST_CASE("conserved tensor") {
    Params P = with_lambda(0.2);
    CartesianState s;
    s.q = {1.1, -0.4, 0.8};
    s.p = {0.5, 0.9, -0.2};
    const FradkinTensor I = demkov_fradkin(P, s);
    REQUIRE(I.n == 3);
    const double h = hamiltonian_nd(P, s);
    REQUIRE_THAT(I.trace(), WithinAbs(2.0 * P.m * h, 1e-12));
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            REQUIRE_THAT(I(i, j), WithinAbs(I(j, i), 1e-15));

    // undeformed case reduces to p_i p_j + m^2 w^2 q_i q_j
    Params P0;
    const FradkinTensor I0 = demkov_fradkin(P0, s);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            REQUIRE_THAT(I0(i, j), WithinAbs(s.p[i] * s.p[j] + s.q[i] * s.q[j], 1e-12));
}

TEST_CASE("hyperspherical reduction") {
    CartesianState s;
    s.q = {3.0, 4.0, 0.0};
    s.p = {1.0, 2.0, 0.0};
    const Hyperspherical h = to_hyperspherical(s);
    REQUIRE_THAT(h.r, WithinAbs(5.0, 1e-12));
    REQUIRE_THAT(h.p_r, WithinAbs(2.2, 1e-12));
    REQUIRE_THAT(h.l_sq, WithinAbs(4.0, 1e-12));
}

TEST_CASE("regime membership") {
    Params P = with_lambda(0.2);
    REQUIRE(energy_in_regime(P, 2.0, SolutionRegime::Bounded));
    REQUIRE_FALSE(energy_in_regime(P, 2.0, SolutionRegime::Euclidean));
    REQUIRE_FALSE(energy_in_regime(P, 2.0, SolutionRegime::Unbounded));
    REQUIRE(energy_in_regime(P, 3.0, SolutionRegime::Unbounded));
    REQUIRE(energy_in_regime(with_lambda(0.0), 2.0, SolutionRegime::Euclidean));
    REQUIRE(energy_in_regime(with_lambda(0.0), 2.0, SolutionRegime::Bounded));
}
