#pragma once
#include <cmath>
#include <complex>
#include <string>
#include <utility>

#include "errors.hpp"
#include "model.hpp"

namespace dx3 {

/**
 * Closure coefficients of the ladder algebra at energy E:
 *
 *   {H, A^+-} = -+ i alpha A^+-,   {A^+, A^-} = i beta,   A^+ A^- + gamma = -l^2.
 *
 * In the Unbounded regime alpha and beta are stored as the magnitudes of the
 * purely imaginary closure coefficients; gamma stays real in every regime.
 */
struct StructureFunctions {
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
    SolutionRegime regime = SolutionRegime::Euclidean;
};

/**
 * Value of the ladder pair at one phase-space point.
 * f_phase is the real exponent parameter of the dressing factor: the factor is
 * e^{+- i f_phase} (unimodular) in the Euclidean/Bounded regimes and the real
 * e^{+- f_phase} in the Unbounded regime.
 */
struct LadderValue {
    std::complex<double> a_plus;
    std::complex<double> a_minus;
    double f_phase = 0.0;
};

/// Ladder pair of the undeformed oscillator: A^+- = -+ i r p + m w r^2 - H/w.
inline LadderValue ladder_euclidean(const Params& P, const RadialState& s) {
    if (P.lambda != 0.0)
        throw DomainError("ladder_euclidean: requires lambda = 0");
    const double h = radial_hamiltonian(P, s);
    const double re = P.m * P.omega * s.r * s.r - h / P.omega;
    return {{re, -s.r * s.p}, {re, s.r * s.p}, 0.0};
}

/**
 * Deformed ladder pair on the oscillatory side (w^2 - 2 lambda H / m > 0):
 *
 *   A^+- = (-+ i r p + m r^2 s - H/s) e^{+- i f},   s = sqrt(w^2 - 2 lambda H / m),
 *   f    = -lambda r p s / (m (w^2 - lambda H / m)).
 */
inline LadderValue ladder_deformed(const Params& P, const RadialState& s) {
    const double h = radial_hamiltonian(P, s);
    const double delta = P.omega * P.omega - 2.0 * P.lambda * h / P.m;
    if (delta <= 0.0)
        throw RegimeError("ladder_deformed: state energy is outside the oscillatory regime");
    const double sd = std::sqrt(delta);
    const double re = P.m * s.r * s.r * sd - h / sd;
    const double f = -P.lambda * s.r * s.p * sd / (P.m * (P.omega * P.omega - P.lambda * h / P.m));
    const std::complex<double> rot{std::cos(f), std::sin(f)};
    const std::complex<double> base{re, -s.r * s.p};
    return {base * rot, std::conj(base) * std::conj(rot), f};
}

/**
 * Ladder pair on the runaway side (2 lambda H / m - w^2 > 0):
 *
 *   A^+- = i (-+ r p + m r^2 s + H/s) e^{+- f},   s = sqrt(2 lambda H / m - w^2),
 *
 * with the real exponent f = lambda r p s / (m (w^2 - lambda H / m)).
 */
inline LadderValue ladder_unbounded(const Params& P, const RadialState& s) {
    const double h = radial_hamiltonian(P, s);
    const double dt = 2.0 * P.lambda * h / P.m - P.omega * P.omega;
    if (dt <= 0.0)
        throw RegimeError("ladder_unbounded: state energy is below the escape threshold");
    const double sd = std::sqrt(dt);
    const double f = P.lambda * s.r * s.p * sd / (P.m * (P.omega * P.omega - P.lambda * h / P.m));
    const double common = P.m * s.r * s.r * sd + h / sd;
    const std::complex<double> i{0.0, 1.0};
    return {i * ((common - s.r * s.p) * std::exp(f)),
            i * ((common + s.r * s.p) * std::exp(-f)), f};
}

/// Closure coefficients at energy E in the named regime.
inline StructureFunctions structure_functions(const Params& P, double E, SolutionRegime reg) {
    if (!energy_in_regime(P, E, reg))
        throw RegimeError(std::string("structure_functions: E = ") + std::to_string(E)
                          + " is not in the " + to_string(reg) + " regime");
    StructureFunctions out;
    out.regime = reg;
    switch (reg) {
        case SolutionRegime::Euclidean:
            out.alpha = 2.0 * P.omega;
            out.beta = 4.0 * E / P.omega;
            out.gamma = -E * E / (P.omega * P.omega);
            break;
        case SolutionRegime::Bounded: {
            const double delta = P.omega * P.omega - 2.0 * P.lambda * E / P.m;
            out.alpha = 2.0 * delta * std::sqrt(delta) / (P.omega * P.omega - P.lambda * E / P.m);
            out.beta = 4.0 * E / std::sqrt(delta);
            out.gamma = -E * E / delta;
            break;
        }
        case SolutionRegime::Unbounded: {
            const double dt = 2.0 * P.lambda * E / P.m - P.omega * P.omega;
            out.alpha = std::abs(2.0 * dt * std::sqrt(dt) / (P.lambda * E / P.m - P.omega * P.omega));
            out.beta = 4.0 * E / std::sqrt(dt);
            out.gamma = E * E / dt;
            break;
        }
    }
    return out;
}

/**
 * Numerical Poisson bracket {a, b} = a_r b_p - a_p b_r by central differences.
 * Callables receive (params, state) and return complex values.
 */
template <class FA, class FB>
std::complex<double> poisson_bracket(FA&& fa, FB&& fb, const Params& P, const RadialState& s) {
    const double hr = 1e-6 * (1.0 + std::abs(s.r));
    const double hp = 1e-6 * (1.0 + std::abs(s.p));
    try {
        const auto ar = (fa(P, RadialState{s.r + hr, s.p}) - fa(P, RadialState{s.r - hr, s.p}))
                        / (2.0 * hr);
        const auto ap = (fa(P, RadialState{s.r, s.p + hp}) - fa(P, RadialState{s.r, s.p - hp}))
                        / (2.0 * hp);
        const auto br = (fb(P, RadialState{s.r + hr, s.p}) - fb(P, RadialState{s.r - hr, s.p}))
                        / (2.0 * hr);
        const auto bp = (fb(P, RadialState{s.r, s.p + hp}) - fb(P, RadialState{s.r, s.p - hp}))
                        / (2.0 * hp);
        return ar * bp - ap * br;
    } catch (const Dx3Error& e) {
        throw DomainError(std::string("poisson_bracket: stencil left the valid domain: ")
                          + e.what());
    }
}

/// Orbit amplitude |A^+-| at energy E: the modulus of the ladder pair on shell.
inline double amplitude(const Params& P, double E, SolutionRegime reg) {
    if (!energy_in_regime(P, E, reg))
        throw RegimeError(std::string("amplitude: E = ") + std::to_string(E)
                          + " is not in the " + to_string(reg) + " regime");
    if (reg == SolutionRegime::Unbounded) {
        const double dt = 2.0 * P.lambda * E / P.m - P.omega * P.omega;
        return std::sqrt(P.l * P.l + E * E / dt);
    }
    const double delta = P.omega * P.omega - 2.0 * P.lambda * E / P.m;
    double rad = E * E / delta - P.l * P.l;
    const double tol = 1e-12 * std::max(1.0, E * E / delta);
    if (rad < -tol)
        throw DomainError("amplitude: negative radicand (energy below the potential minimum)");
    return std::sqrt(std::max(rad, 0.0));
}

/**
 * Time-dressed ladder value Q^+ = A^+(state) e^{-i alpha(E) t}; constant along
 * any true trajectory of energy E (Euclidean and Bounded regimes).
 */
inline std::complex<double> time_dependent_constant(const Params& P, double E,
                                                    const RadialState& s, double t) {
    const double h = radial_hamiltonian(P, s);
    if (std::abs(h - E) > 1e-9 * std::max(1.0, std::abs(E)))
        throw OffShell("time_dependent_constant: state energy " + std::to_string(h)
                       + " differs from E = " + std::to_string(E));
    const SolutionRegime reg =
        (P.lambda == 0.0) ? SolutionRegime::Euclidean : SolutionRegime::Bounded;
    const LadderValue lv = (P.lambda == 0.0) ? ladder_euclidean(P, s) : ladder_deformed(P, s);
    const double alpha = structure_functions(P, E, reg).alpha;
    return lv.a_plus * std::exp(std::complex<double>{0.0, -alpha * t});
}

} // namespace dx3
