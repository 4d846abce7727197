#pragma once
#include <cmath>
#include <string>
#include <utility>

#include "errors.hpp"
#include "model.hpp"
#include "sga.hpp"

namespace dx3 {

/// Geometric constants of one energy level's orbit.
struct OrbitGeometry {
    double a_sq = 0.0;      ///< squared semi-axis scale (a^2 bounded, at^2 unbounded)
    double eps = 0.0;       ///< eccentricity-like parameter (< 1 bounded, > 1 unbounded)
    double freq = 0.0;      ///< angular frequency of the radial phase (signed)
    double amplitude = 0.0; ///< modulus of the ladder pair on shell
    double theta = 0.0;     ///< initial phase, normalized to [0, 2pi)
    SolutionRegime regime = SolutionRegime::Bounded;
};

inline OrbitGeometry orbit_geometry(const Params& P, double E) {
    const EnergyRegime c = classify_energy(P, E);
    if (c == EnergyRegime::Forbidden)
        throw RegimeError("orbit_geometry: forbidden energy (below the potential minimum)");
    if (c == EnergyRegime::Critical)
        throw RegimeError("orbit_geometry: geometry degenerates at the critical energy");
    OrbitGeometry g;
    if (c == EnergyRegime::Unbounded) {
        const double dt = 2.0 * P.lambda * E / P.m - P.omega * P.omega;
        const double den = P.lambda * E / P.m - P.omega * P.omega;
        if (den == 0.0)
            throw RegimeError("orbit_geometry: frequency function singular at lambda E = m omega^2");
        g.a_sq = E / (P.m * dt);
        g.eps = std::sqrt(1.0 + dt * P.l * P.l / (E * E));
        g.freq = 2.0 * dt * std::sqrt(dt) / den;
        g.amplitude = amplitude(P, E, SolutionRegime::Unbounded);
        g.regime = SolutionRegime::Unbounded;
        return g;
    }
    const double delta = P.omega * P.omega - 2.0 * P.lambda * E / P.m;
    g.a_sq = E / (P.m * delta);
    g.eps = std::sqrt(std::max(1.0 - delta * P.l * P.l / (E * E), 0.0));
    g.freq = 2.0 * delta * std::sqrt(delta) / (P.omega * P.omega - P.lambda * E / P.m);
    g.regime = (P.lambda == 0.0) ? SolutionRegime::Euclidean : SolutionRegime::Bounded;
    g.amplitude = amplitude(P, E, g.regime);
    return g;
}

namespace detail {

/// Clamp x into [lo, hi], allowing overshoot up to tol; beyond that throw DomainError.
inline double clamp_or_throw(double x, double lo, double hi, double tol, const char* what) {
    if (x < lo - tol || x > hi + tol) throw DomainError(what);
    return std::min(std::max(x, lo), hi);
}

/**
 * Phase angle of the infall branch (p <= 0, r running from r_hi down to r_lo):
 *
 *   Phi(r) = arccos[(r^2/a^2 - 1)/eps]
 *          + (lambda a^2/(1 + lambda a^2)) sqrt(eps^2 - (1 - r^2/a^2)^2),
 *
 * with Phi(r_hi) = 0 and Phi(r_lo) = pi.  The time map is Omega t + theta = Phi.
 */
inline double infall_angle(const Params& P, const OrbitGeometry& g, double r, double arg_tol) {
    const double u = clamp_or_throw((r * r / g.a_sq - 1.0) / g.eps, -1.0, 1.0, arg_tol,
                                    "radius outside the oscillation band [r_lo, r_hi]");
    const double corr = P.lambda * g.a_sq / (1.0 + P.lambda * g.a_sq);
    return std::acos(u) + corr * g.eps * std::sqrt(std::max(1.0 - u * u, 0.0));
}

} // namespace detail

/// Closed-form undeformed motion: r(t), p(t) for lambda = 0.
inline RadialState euclid_trajectory(const Params& P, double E, double theta0, double t) {
    if (P.lambda != 0.0)
        throw DomainError("euclid_trajectory: requires lambda = 0");
    if (E < P.l * P.omega - 1e-12 * std::max(1.0, std::abs(E)))
        throw DomainError("euclid_trajectory: E below the minimum l*omega");
    const double q0 = amplitude(P, E, SolutionRegime::Euclidean);
    const double ph = 2.0 * P.omega * t + theta0;
    const double r_sq = E / (P.m * P.omega * P.omega) + q0 / (P.m * P.omega) * std::cos(ph);
    const double r = std::sqrt(std::max(r_sq, 0.0));
    return {r, -q0 * std::sin(ph) / r};
}

/**
 * Travel time to radius r on the infall branch of a bounded orbit
 * (t increasing as r falls from r_hi to r_lo when theta = 0):
 * t(r_hi) = -theta/Omega and t(r_lo) = (pi - theta)/Omega.
 */
inline double time_of_radius_bounded(const Params& P, double E, double theta, double r) {
    if (classify_energy(P, E) != EnergyRegime::Bounded)
        throw RegimeError("time_of_radius_bounded: energy is not in the bounded band");
    const OrbitGeometry g = orbit_geometry(P, E);
    return (detail::infall_angle(P, g, r, 1e-12) - theta) / g.freq;
}

/**
 * Travel time to radius r on the outgoing branch of an unbounded orbit:
 *
 *   zeta t + theta = arccosh[(1 + r^2/at^2)/eps]
 *                  + (lambda at^2/(1 - lambda at^2)) sqrt((1 + r^2/at^2)^2 - eps^2),
 *
 * with t(r_lo) = -theta/zeta and t strictly increasing in r.
 */
inline double time_of_radius_unbounded(const Params& P, double E, double theta, double r) {
    if (classify_energy(P, E) != EnergyRegime::Unbounded)
        throw RegimeError("time_of_radius_unbounded: energy is below the escape threshold");
    const OrbitGeometry g = orbit_geometry(P, E);
    const double w = 1.0 + r * r / g.a_sq;
    if (w / g.eps < 1.0 - 1e-12)
        throw DomainError("time_of_radius_unbounded: radius below the turning point");
    const double v = std::max(w / g.eps, 1.0);
    const double corr = P.lambda * g.a_sq / (1.0 - P.lambda * g.a_sq);
    const double phi = std::acosh(v) + corr * g.eps * std::sqrt(std::max(v * v - 1.0, 0.0));
    return (phi - theta) / g.freq;
}

/// Period of the radial coordinate, T = 2 pi / Omega(E).
inline double radial_period(const Params& P, double E) {
    const EnergyRegime c = classify_energy(P, E);
    if (c != EnergyRegime::Bounded && c != EnergyRegime::Circular)
        throw RegimeError("radial_period: motion is not periodic at this energy");
    const double delta = P.omega * P.omega - 2.0 * P.lambda * E / P.m;
    const double freq = 2.0 * delta * std::sqrt(delta) / (P.omega * P.omega - P.lambda * E / P.m);
    return 2.0 * M_PI / freq;
}

/**
 * Initial phase theta in [0, 2pi) such that the closed-form orbit of energy E
 * passes through the given state at t = 0.  p < 0 selects the infall branch,
 * p > 0 the reflected branch 2pi - Phi; p = 0 resolves to 0 or pi.
 */
inline double phase_from_initial(const Params& P, double E, const RadialState& s) {
    const double h = radial_hamiltonian(P, s);
    if (std::abs(h - E) > 1e-9 * std::max(1.0, std::abs(E)))
        throw OffShell("phase_from_initial: state energy " + std::to_string(h)
                       + " differs from E = " + std::to_string(E));
    const EnergyRegime c = classify_energy(P, E);
    if (c == EnergyRegime::Circular) return 0.0;
    if (c != EnergyRegime::Bounded)
        throw RegimeError("phase_from_initial: energy is not in the bounded band");
    const OrbitGeometry g = orbit_geometry(P, E);
    const double phi = detail::infall_angle(P, g, s.r, 1e-6);
    double theta = (s.p <= 0.0) ? phi : 2.0 * M_PI - phi;
    theta = std::fmod(theta, 2.0 * M_PI);
    if (theta < 0.0) theta += 2.0 * M_PI;
    return theta;
}

/**
 * Numerical inverse of the bounded time map: the state (r, p) at time t for a
 * bounded orbit with initial phase theta.  Bisects the monotone half-period
 * branch to |dr| < 1e-12; at lambda = 0 agrees with euclid_trajectory.
 */
inline RadialState invert_time(const Params& P, double E, double theta, double t) {
    const EnergyRegime c = classify_energy(P, E);
    if (c == EnergyRegime::Circular) return {potential_minimum(P).first, 0.0};
    if (c != EnergyRegime::Bounded)
        throw RegimeError("invert_time: motion is not periodic at this energy");
    const OrbitGeometry g = orbit_geometry(P, E);
    const TurningPoints tp = turning_points(P, E);
    const double T = 2.0 * M_PI / g.freq;
    double s = std::fmod(t + theta / g.freq, T);
    if (s < 0.0) s += T;
    const bool infall = (s <= 0.5 * T);
    const double phi = infall ? g.freq * s : g.freq * (T - s);
    if (phi < 1e-12) return {tp.r_hi, 0.0};
    if (phi > M_PI - 1e-12) return {tp.r_lo, 0.0};
    double lo = tp.r_lo, hi = tp.r_hi;
    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        // infall_angle decreases from pi at r_lo to 0 at r_hi
        if (detail::infall_angle(P, g, mid, 1e-9) > phi)
            lo = mid;
        else
            hi = mid;
    }
    const double r = 0.5 * (lo + hi);
    const double p = momentum_on_shell(P, E, r);
    return {r, infall ? -p : p};
}

} // namespace dx3
