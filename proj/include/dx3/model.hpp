#pragma once
#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace dx3 {

/**
 * Problem parameters for the deformed isotropic oscillator
 *
 *   H = (p^2 + m^2 w^2 q^2) / (2m (1 + lambda q^2))
 *
 * and its radial reduction at fixed angular momentum l.
 */
struct Params {
    double m = 1.0;       ///< mass (> 0)
    double omega = 1.0;   ///< frequency (> 0)
    double l = 1.0;       ///< angular momentum magnitude (>= 0)
    double lambda = 0.0;  ///< deformation strength (any real)

    void validate() const {
        if (!(m > 0.0)) throw DomainError("Params: m must be > 0");
        if (!(omega > 0.0)) throw DomainError("Params: omega must be > 0");
        if (!(l >= 0.0)) throw DomainError("Params: l must be >= 0");
        if (!std::isfinite(lambda)) throw DomainError("Params: lambda must be finite");
    }
};

/// Point of the reduced radial phase plane.
struct RadialState {
    double r = 1.0;  ///< radius (> 0)
    double p = 0.0;  ///< conjugate radial momentum
};

/// Point of the full N-dimensional phase space.
struct CartesianState {
    std::vector<double> q;
    std::vector<double> p;

    std::size_t dim() const {
        if (q.size() != p.size())
            throw DomainError("CartesianState: q and p dimensions differ");
        return q.size();
    }
};

/// Classification of an energy level for the radial motion.
enum class EnergyRegime { Forbidden, Circular, Bounded, Critical, Unbounded };

inline const char* to_string(EnergyRegime reg) {
    switch (reg) {
        case EnergyRegime::Forbidden: return "forbidden";
        case EnergyRegime::Circular: return "circular";
        case EnergyRegime::Bounded: return "bounded";
        case EnergyRegime::Critical: return "critical";
        case EnergyRegime::Unbounded: return "unbounded";
    }
    return "?";
}

/// Family of closed forms that applies to a state or energy.
enum class SolutionRegime { Euclidean, Bounded, Unbounded };

inline const char* to_string(SolutionRegime reg) {
    switch (reg) {
        case SolutionRegime::Euclidean: return "euclidean";
        case SolutionRegime::Bounded: return "bounded";
        case SolutionRegime::Unbounded: return "unbounded";
    }
    return "?";
}

/// Symmetric conserved tensor of the N-dimensional motion.
struct FradkinTensor {
    std::size_t n = 0;
    std::vector<double> v;  ///< row-major n x n storage

    double operator()(std::size_t i, std::size_t j) const { return v[i * n + j]; }
    double& operator()(std::size_t i, std::size_t j) { return v[i * n + j]; }

    double trace() const {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += v[i * n + i];
        return s;
    }
};

/// Radius where the kinetic factor blows up (lambda < 0 only).
inline std::optional<double> singular_radius(const Params& P) {
    if (P.lambda < 0.0) return 1.0 / std::sqrt(-P.lambda);
    return std::nullopt;
}

/// Conformal factor F(r) = 1/(1 + lambda r^2).
inline double kinetic_factor(const Params& P, double r) {
    const double g = 1.0 + P.lambda * r * r;
    if (std::abs(g) < 1e-12)
        throw MetricSingular("kinetic_factor: 1 + lambda r^2 vanishes at r = " + std::to_string(r));
    return 1.0 / g;
}

/// Full N-dimensional Hamiltonian.
inline double hamiltonian_nd(const Params& P, const CartesianState& s) {
    const std::size_t n = s.dim();
    double q2 = 0.0, p2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        q2 += s.q[i] * s.q[i];
        p2 += s.p[i] * s.p[i];
    }
    const double g = 1.0 + P.lambda * q2;
    if (g <= 0.0)
        throw MetricSingular("hamiltonian_nd: 1 + lambda q^2 <= 0");
    return (p2 + P.m * P.m * P.omega * P.omega * q2) / (2.0 * P.m * g);
}

/// Reduced radial Hamiltonian at fixed l.
inline double radial_hamiltonian(const Params& P, const RadialState& s) {
    if (!(s.r > 0.0)) throw DomainError("radial_hamiltonian: r must be > 0");
    const double g = 1.0 + P.lambda * s.r * s.r;
    if (g <= 0.0)
        throw MetricSingular("radial_hamiltonian: 1 + lambda r^2 <= 0");
    const double w = s.p * s.p / (2.0 * P.m) + P.l * P.l / (2.0 * P.m * s.r * s.r)
                   + 0.5 * P.m * P.omega * P.omega * s.r * s.r;
    return w / g;
}

/// Effective radial potential (evaluable on both sides of the singular radius).
inline double effective_potential(const Params& P, double r) {
    if (!(r > 0.0)) throw DomainError("effective_potential: r must be > 0");
    const double f = kinetic_factor(P, r);
    return f * (P.l * P.l / (2.0 * P.m * r * r) + 0.5 * P.m * P.omega * P.omega * r * r);
}

/**
 * Location and value of the effective-potential minimum, in closed form.
 * Valid for every sign of lambda (lambda < 0: the minimum inside the ball r < r_s).
 */
inline std::pair<double, double> potential_minimum(const Params& P) {
    if (!(P.l > 0.0)) throw DomainError("potential_minimum: requires l > 0");
    const double s = std::sqrt(P.lambda * P.lambda + P.m * P.m * P.omega * P.omega / (P.l * P.l));
    const double v_min = P.l * P.l / P.m * (s - P.lambda);
    const double r_min_sq = P.l * P.l / (P.m * P.m * P.omega * P.omega) * (P.lambda + s);
    return {std::sqrt(r_min_sq), v_min};
}

/// Classify an energy level; exact-threshold energies resolve to Circular/Critical.
inline EnergyRegime classify_energy(const Params& P, double E) {
    double v_min = 0.0;
    if (P.l > 0.0) v_min = potential_minimum(P).second;
    const double tol = 1e-12 * std::max({1.0, std::abs(E), std::abs(v_min)});
    if (E < v_min - tol) return EnergyRegime::Forbidden;
    if (std::abs(E - v_min) <= tol) return EnergyRegime::Circular;
    if (P.lambda > 0.0) {
        const double e_crit = P.m * P.omega * P.omega / (2.0 * P.lambda);
        if (std::abs(E - e_crit) <= tol) return EnergyRegime::Critical;
        if (E > e_crit) return EnergyRegime::Unbounded;
    }
    return EnergyRegime::Bounded;
}

/// Nonnegative momentum branch of the energy shell H(r, p) = E.
inline double momentum_on_shell(const Params& P, double E, double r) {
    if (!(r > 0.0)) throw DomainError("momentum_on_shell: r must be > 0");
    const double v = effective_potential(P, r);
    double d = E - v;
    const double tol = 1e-12 * std::max(1.0, std::abs(E));
    if (d < -tol)
        throw DomainError("momentum_on_shell: energy below the effective potential at r = "
                          + std::to_string(r));
    d = std::max(d, 0.0);
    const double g = 1.0 + P.lambda * r * r;
    const double p_sq = 2.0 * P.m * g * d;
    if (p_sq < 0.0)
        throw DomainError("momentum_on_shell: no real momentum at r = " + std::to_string(r));
    return std::sqrt(p_sq);
}

/// Radial turning points; r_hi is +infinity in the unbounded regime.
struct TurningPoints {
    double r_lo = 0.0;
    double r_hi = 0.0;
};

inline TurningPoints turning_points(const Params& P, double E) {
    const EnergyRegime reg = classify_energy(P, E);
    if (reg == EnergyRegime::Forbidden)
        throw NoRealRoots("turning_points: energy below the potential minimum");
    if (reg == EnergyRegime::Critical)
        throw RegimeError("turning_points: outer turning point degenerates at the critical energy");
    if (reg == EnergyRegime::Circular) {
        const double r_min = potential_minimum(P).first;
        return {r_min, r_min};
    }
    // Roots in u = r^2 of 2mE u - l^2 - m^2 (w^2 - 2 lambda E / m) u^2 = 0,
    // smaller root taken from the product of roots to avoid cancellation.
    const double delta = P.omega * P.omega - 2.0 * P.lambda * E / P.m;
    if (reg == EnergyRegime::Unbounded) {
        const double dt = -delta;  // 2 lambda E / m - w^2 > 0
        const double s = std::sqrt(E * E + dt * P.l * P.l);
        const double u_lo = P.l * P.l / (P.m * (E + s));
        return {std::sqrt(u_lo), std::numeric_limits<double>::infinity()};
    }
    const double disc = std::max(E * E - delta * P.l * P.l, 0.0);
    const double s = std::sqrt(disc);
    const double u_hi = (E + s) / (P.m * delta);
    const double u_lo = (P.l > 0.0) ? P.l * P.l / (P.m * P.m * delta * u_hi) : 0.0;
    return {std::sqrt(u_lo), std::sqrt(u_hi)};
}

/// Conserved symmetric tensor I_ij = p_i p_j + m^2 (w^2 - 2 lambda H / m) q_i q_j.
inline FradkinTensor demkov_fradkin(const Params& P, const CartesianState& s) {
    const std::size_t n = s.dim();
    const double h = hamiltonian_nd(P, s);
    const double c = P.m * P.m * (P.omega * P.omega - 2.0 * P.lambda * h / P.m);
    FradkinTensor out;
    out.n = n;
    out.v.resize(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            out.v[i * n + j] = s.p[i] * s.p[j] + c * s.q[i] * s.q[j];
    return out;
}

/// Radial reduction of an N-dimensional phase-space point.
struct Hyperspherical {
    double r = 0.0;
    double p_r = 0.0;
    double l_sq = 0.0;
};

inline Hyperspherical to_hyperspherical(const CartesianState& s) {
    const std::size_t n = s.dim();
    double q2 = 0.0, p2 = 0.0, qp = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        q2 += s.q[i] * s.q[i];
        p2 += s.p[i] * s.p[i];
        qp += s.q[i] * s.p[i];
    }
    if (q2 == 0.0) throw DomainError("to_hyperspherical: q = 0");
    const double r = std::sqrt(q2);
    const double p_r = qp / r;
    const double l_sq = std::max(q2 * (p2 - p_r * p_r), 0.0);
    return {r, p_r, l_sq};
}

/// True when the energy belongs to the named solution family.
inline bool energy_in_regime(const Params& P, double E, SolutionRegime reg) {
    const EnergyRegime c = classify_energy(P, E);
    switch (reg) {
        case SolutionRegime::Euclidean:
            return P.lambda == 0.0 && (c == EnergyRegime::Bounded || c == EnergyRegime::Circular);
        case SolutionRegime::Bounded:
            return c == EnergyRegime::Bounded || c == EnergyRegime::Circular;
        case SolutionRegime::Unbounded:
            return c == EnergyRegime::Unbounded;
    }
    return false;
}

} // namespace dx3
