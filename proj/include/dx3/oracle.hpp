#pragma once
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "dop853.hpp"
#include "errors.hpp"
#include "model.hpp"
#include "sga.hpp"
#include "solutions.hpp"

namespace dx3 {

/// Settings of the brute-force integrator.
struct IntegratorConfig {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    double max_step = std::numeric_limits<double>::infinity();
    double guard_radius = 0.0;  ///< exclusion band around r_s; 0 selects 1e-6 * r_s
    bool outer_region = false;  ///< lambda < 0 only: run r > r_s with the sign-flipped Hamiltonian
};

/// One sampled point of a radial trajectory.
struct TrajectorySample {
    double t = 0.0;
    double r = 0.0;
    double p = 0.0;
};

/// One sampled point of an N-dimensional trajectory.
struct NdSample {
    double t = 0.0;
    CartesianState s;
};

/// Worst relative drifts of the conserved quantities along a trajectory.
struct ConservationReport {
    double h_drift = 0.0;        ///< energy
    double l2_drift = 0.0;       ///< squared angular momentum (N-D samples)
    double fradkin_drift = 0.0;  ///< worst tensor component, scaled by the initial Frobenius norm
    double q_const_drift = 0.0;  ///< modulus of the time-dressed ladder value
    double q_arg_drift = 0.0;    ///< its argument, absolute radians
    double trace_residual = 0.0; ///< worst pointwise |trace - 2mH| / |2mH|
};

/// Measured radial period.
struct PeriodResult {
    double T = 0.0;
    bool analytic = false;  ///< true when returned from the formula (circular orbit)
};

/// Hamilton right-hand side of the reduced radial motion.
struct RadialRhs {
    Params P;
    bool outer = false;  // r > r_s branch, generated by the sign-flipped Hamiltonian

    double energy(double r, double p) const {
        const double w = p * p / (2.0 * P.m) + P.l * P.l / (2.0 * P.m * r * r)
                       + 0.5 * P.m * P.omega * P.omega * r * r;
        const double g = outer ? (-P.lambda * r * r - 1.0) : (1.0 + P.lambda * r * r);
        return w / g;
    }

    void operator()(double, const double* y, double* f) const {
        const double r = y[0], p = y[1];
        const double kap = outer ? -P.lambda : P.lambda;
        const double g = outer ? (kap * r * r - 1.0) : (1.0 + kap * r * r);
        const double h = energy(r, p);
        f[0] = p / (P.m * g);
        f[1] = -(P.m * P.omega * P.omega * r - P.l * P.l / (P.m * r * r * r)
                 - 2.0 * kap * r * h) / g;
    }
};

/// Hamilton right-hand side of the full N-dimensional motion, y = (q, p).
struct NdRhs {
    Params P;
    std::size_t n = 0;

    void operator()(double, const double* y, double* f) const {
        const double* q = y;
        const double* p = y + n;
        double q2 = 0.0, p2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            q2 += q[i] * q[i];
            p2 += p[i] * p[i];
        }
        const double g = 1.0 + P.lambda * q2;
        const double h = (p2 + P.m * P.m * P.omega * P.omega * q2) / (2.0 * P.m * g);
        const double c = (P.m * P.omega * P.omega - 2.0 * P.lambda * h) / g;
        for (std::size_t i = 0; i < n; ++i) {
            f[i] = p[i] / (P.m * g);
            f[n + i] = -c * q[i];
        }
    }
};

namespace detail {

inline double resolved_guard(const Params& P, const IntegratorConfig& cfg) {
    if (P.lambda >= 0.0) return 0.0;
    const double rs = 1.0 / std::sqrt(-P.lambda);
    return cfg.guard_radius > 0.0 ? cfg.guard_radius : 1e-6 * rs;
}

/// One-time sanity check of the analytic derivatives against finite differences.
inline void check_rhs(const RadialRhs& rhs, double r, double p) {
    double y[2] = {r, p}, f[2];
    rhs(0.0, y, f);
    const double hr = 1e-6 * (1.0 + std::abs(r));
    const double hp = 1e-6 * (1.0 + std::abs(p));
    const double dhdp = (rhs.energy(r, p + hp) - rhs.energy(r, p - hp)) / (2.0 * hp);
    const double dhdr = (rhs.energy(r + hr, p) - rhs.energy(r - hr, p)) / (2.0 * hr);
    const double scale = std::max({1.0, std::abs(f[0]), std::abs(f[1])});
    if (std::abs(f[0] - dhdp) > 1e-5 * scale || std::abs(f[1] + dhdr) > 1e-5 * scale)
        throw Dx3Error("integrate_radial: analytic derivatives disagree with finite differences");
}

/// Bisect a dense-output component to its zero crossing in [ta, tb].
template <class Stepper>
double bisect_component(const Stepper& st, std::size_t comp, double target,
                        double ta, double tb) {
    double fa = st.eval1(ta, comp) - target;
    for (int iter = 0; iter < 200 && tb - ta > 1e-12 * std::max(1.0, std::abs(tb)); ++iter) {
        const double tm = 0.5 * (ta + tb);
        const double fm = st.eval1(tm, comp) - target;
        if ((fa <= 0.0) == (fm <= 0.0)) {
            ta = tm;
            fa = fm;
        } else {
            tb = tm;
        }
    }
    return 0.5 * (ta + tb);
}

} // namespace detail

/**
 * Integrate the radial motion from the given state at t = 0 and sample it at
 * the requested times (nondecreasing, >= 0) through dense output.
 */
template <class Inspector>
std::vector<TrajectorySample> integrate_radial_inspect(const Params& P, const RadialState& init,
                                                       const std::vector<double>& times,
                                                       const IntegratorConfig& cfg,
                                                       Inspector&& inspect) {
    P.validate();
    if (!(init.r > 0.0)) throw DomainError("integrate_radial: initial r must be > 0");
    for (std::size_t i = 0; i < times.size(); ++i)
        if (times[i] < 0.0 || (i > 0 && times[i] < times[i - 1]))
            throw DomainError("integrate_radial: sample times must be nondecreasing and >= 0");
    const double guard = detail::resolved_guard(P, cfg);
    double rs = std::numeric_limits<double>::infinity();
    if (P.lambda < 0.0) rs = 1.0 / std::sqrt(-P.lambda);
    if (cfg.outer_region) {
        if (P.lambda >= 0.0)
            throw DomainError("integrate_radial: the outer region exists only for lambda < 0");
        if (!(init.r > rs + guard))
            throw DomainError("integrate_radial: outer-region start must satisfy r > r_s + guard");
    } else if (P.lambda < 0.0 && !(init.r < rs - guard)) {
        throw DomainError("integrate_radial: initial radius is inside the guard band of r_s");
    }

    RadialRhs rhs{P, cfg.outer_region};
    detail::check_rhs(rhs, init.r, init.p);

    std::vector<TrajectorySample> out;
    out.reserve(times.size());
    std::size_t k = 0;
    while (k < times.size() && times[k] == 0.0) {
        out.push_back({0.0, init.r, init.p});
        ++k;
    }
    if (k == times.size()) return out;

    Dop853<RadialRhs> st(rhs, 2, {cfg.rel_tol, cfg.abs_tol, cfg.max_step});
    st.start(0.0, {init.r, init.p});
    std::vector<double> buf(2);
    while (k < times.size()) {
        st.advance();
        if (st.steps_taken() > 5000000)
            throw StepFailure("integrate_radial: step budget exhausted");
        const double r_now = st.y()[0];
        if (cfg.outer_region) {
            if (r_now < rs + guard)
                throw SingularityApproach("integrate_radial: trajectory reached the guard band");
        } else if (P.lambda < 0.0 && r_now > rs - guard) {
            throw SingularityApproach("integrate_radial: trajectory reached the guard band");
        }
        inspect(st);
        while (k < times.size() && times[k] <= st.t_new()) {
            st.eval(times[k], buf);
            out.push_back({times[k], buf[0], buf[1]});
            ++k;
        }
    }
    return out;
}

inline std::vector<TrajectorySample> integrate_radial(const Params& P, const RadialState& init,
                                                      const std::vector<double>& times,
                                                      const IntegratorConfig& cfg = {}) {
    return integrate_radial_inspect(P, init, times, cfg, [](const auto&) {});
}

/// Integrate the full N-dimensional motion and sample it at the requested times.
inline std::vector<NdSample> integrate_nd(const Params& P, const CartesianState& init,
                                          const std::vector<double>& times,
                                          const IntegratorConfig& cfg = {}) {
    P.validate();
    const std::size_t n = init.dim();
    for (std::size_t i = 0; i < times.size(); ++i)
        if (times[i] < 0.0 || (i > 0 && times[i] < times[i - 1]))
            throw DomainError("integrate_nd: sample times must be nondecreasing and >= 0");
    const double guard = detail::resolved_guard(P, cfg);
    double rs = std::numeric_limits<double>::infinity();
    if (P.lambda < 0.0) rs = 1.0 / std::sqrt(-P.lambda);
    hamiltonian_nd(P, init);  // validates the metric factor at the start

    std::vector<double> y0(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        y0[i] = init.q[i];
        y0[n + i] = init.p[i];
    }

    auto unpack = [n](double t, const std::vector<double>& y) {
        NdSample s;
        s.t = t;
        s.s.q.assign(y.begin(), y.begin() + n);
        s.s.p.assign(y.begin() + n, y.end());
        return s;
    };

    std::vector<NdSample> out;
    out.reserve(times.size());
    std::size_t k = 0;
    while (k < times.size() && times[k] == 0.0) {
        out.push_back(unpack(0.0, y0));
        ++k;
    }
    if (k == times.size()) return out;

    Dop853<NdRhs> st(NdRhs{P, n}, 2 * n, {cfg.rel_tol, cfg.abs_tol, cfg.max_step});
    st.start(0.0, y0);
    std::vector<double> buf(2 * n);
    while (k < times.size()) {
        st.advance();
        if (st.steps_taken() > 5000000)
            throw StepFailure("integrate_nd: step budget exhausted");
        if (P.lambda < 0.0) {
            double q2 = 0.0;
            for (std::size_t i = 0; i < n; ++i) q2 += st.y()[i] * st.y()[i];
            if (std::sqrt(q2) > rs - guard)
                throw SingularityApproach("integrate_nd: trajectory reached the guard band");
        }
        while (k < times.size() && times[k] <= st.t_new()) {
            st.eval(times[k], buf);
            out.push_back(unpack(times[k], buf));
            ++k;
        }
    }
    return out;
}

/// Worst drifts of H, L^2, the conserved tensor, and the dressed ladder value.
inline ConservationReport conservation_report(const Params& P,
                                              const std::vector<NdSample>& samples) {
    if (samples.empty())
        throw DomainError("conservation_report: no samples");
    ConservationReport rep;
    const double e0 = hamiltonian_nd(P, samples.front().s);
    const Hyperspherical h0 = to_hyperspherical(samples.front().s);
    const FradkinTensor i0 = demkov_fradkin(P, samples.front().s);
    double fro = 0.0;
    for (double v : i0.v) fro += v * v;
    fro = std::sqrt(fro);

    Params pr = P;
    pr.l = std::sqrt(h0.l_sq);
    const bool track_q = energy_in_regime(pr, e0, SolutionRegime::Euclidean)
                      || energy_in_regime(pr, e0, SolutionRegime::Bounded);
    std::complex<double> q0;
    if (track_q)
        q0 = time_dependent_constant(pr, e0, {h0.r, h0.p_r}, samples.front().t);

    for (const NdSample& smp : samples) {
        const double h = hamiltonian_nd(P, smp.s);
        rep.h_drift = std::max(rep.h_drift, std::abs(h - e0) / std::max(std::abs(e0), 1e-300));
        const Hyperspherical hs = to_hyperspherical(smp.s);
        rep.l2_drift = std::max(rep.l2_drift,
                                std::abs(hs.l_sq - h0.l_sq) / std::max(h0.l_sq, 1e-300));
        const FradkinTensor it = demkov_fradkin(P, smp.s);
        for (std::size_t j = 0; j < it.v.size(); ++j)
            rep.fradkin_drift = std::max(rep.fradkin_drift, std::abs(it.v[j] - i0.v[j]) / fro);
        rep.trace_residual = std::max(rep.trace_residual,
                                      std::abs(it.trace() - 2.0 * P.m * h)
                                          / std::abs(2.0 * P.m * h));
        if (track_q) {
            const std::complex<double> q = time_dependent_constant(pr, e0, {hs.r, hs.p_r}, smp.t);
            rep.q_const_drift = std::max(rep.q_const_drift,
                                         std::abs(std::abs(q) - std::abs(q0)) / std::abs(q0));
            double da = std::arg(q) - std::arg(q0);
            da = std::remainder(da, 2.0 * M_PI);
            rep.q_arg_drift = std::max(rep.q_arg_drift, std::abs(da));
        }
    }
    return rep;
}

/**
 * Measure the radial period by integrating from (r_hi, 0) and bisecting the
 * p = 0 return event near r_hi on the dense output.
 */
inline PeriodResult oracle_period(const Params& P, double E, const IntegratorConfig& cfg = {}) {
    const EnergyRegime c = classify_energy(P, E);
    if (c == EnergyRegime::Circular) return {radial_period(P, E), true};
    if (c != EnergyRegime::Bounded)
        throw RegimeError("oracle_period: motion is not periodic at this energy");
    const TurningPoints tp = turning_points(P, E);
    const double horizon = 10.0 * radial_period(P, E);

    RadialRhs rhs{P, false};
    Dop853<RadialRhs> st(rhs, 2, {cfg.rel_tol, cfg.abs_tol, cfg.max_step});
    st.start(0.0, {tp.r_hi, 0.0});
    double p_prev = 0.0;
    double t_prev = 0.0;
    while (st.t_new() < horizon) {
        st.advance();
        const double p_now = st.y()[1];
        const bool crossed = (p_prev < 0.0 && p_now >= 0.0) || (p_prev > 0.0 && p_now <= 0.0);
        if (crossed) {
            const double t_star = detail::bisect_component(st, 1, 0.0, t_prev, st.t_new());
            const double r_star = st.eval1(t_star, 0);
            if (std::abs(r_star - tp.r_hi) < std::abs(r_star - tp.r_lo))
                return {t_star, false};
        }
        p_prev = p_now;
        t_prev = st.t_new();
    }
    throw EventNotFound("oracle_period: no return event within ten nominal periods");
}

/**
 * First crossing times of the given radii, starting from rest at the outer
 * turning point (bounded: infall) or the single turning point (unbounded:
 * escape).  Radii must lie strictly inside the reachable band.
 */
inline std::vector<double> time_at_radii(const Params& P, double E,
                                         const std::vector<double>& radii,
                                         const IntegratorConfig& cfg = {}) {
    const EnergyRegime c = classify_energy(P, E);
    if (c != EnergyRegime::Bounded && c != EnergyRegime::Unbounded)
        throw RegimeError("time_at_radii: needs a bounded or unbounded energy");
    const TurningPoints tp = turning_points(P, E);
    const bool bounded = (c == EnergyRegime::Bounded);

    std::vector<double> sorted = radii;
    std::sort(sorted.begin(), sorted.end());
    if (bounded) std::reverse(sorted.begin(), sorted.end());  // infall meets large radii first
    for (double r : sorted)
        if (!(r > tp.r_lo) || (bounded && !(r < tp.r_hi)))
            throw DomainError("time_at_radii: radius outside the reachable band");

    const double start = bounded ? tp.r_hi : tp.r_lo;
    RadialRhs rhs{P, false};
    Dop853<RadialRhs> st(rhs, 2, {cfg.rel_tol, cfg.abs_tol, cfg.max_step});
    st.start(0.0, {start, 0.0});

    std::vector<std::pair<double, double>> found;  // (radius, time)
    found.reserve(sorted.size());
    std::size_t k = 0;
    const double horizon = bounded ? 0.75 * radial_period(P, E)
                                   : std::numeric_limits<double>::infinity();
    while (k < sorted.size()) {
        if (st.t_new() > horizon || st.steps_taken() > 5000000)
            throw EventNotFound("time_at_radii: ran out of trajectory before all radii were met");
        st.advance();
        const double r0 = st.eval1(st.t_old(), 0);
        const double r1 = st.y()[0];
        while (k < sorted.size()
               && sorted[k] >= std::min(r0, r1) && sorted[k] <= std::max(r0, r1)) {
            const double t_star =
                detail::bisect_component(st, 0, sorted[k], st.t_old(), st.t_new());
            found.emplace_back(sorted[k], t_star);
            ++k;
        }
    }

    std::vector<double> out(radii.size());
    for (std::size_t i = 0; i < radii.size(); ++i) {
        for (const auto& [r, t] : found)
            if (r == radii[i]) {
                out[i] = t;
                break;
            }
    }
    return out;
}

/// Locate the effective-potential minimum by coarse scan plus golden-section.
inline std::pair<double, double> grid_minimize_potential(const Params& P) {
    if (!(P.l > 0.0)) throw DomainError("grid_minimize_potential: requires l > 0");
    const double r_c = std::sqrt(P.l / (P.m * P.omega));
    double a, b;
    std::vector<double> grid;
    const int n_grid = 2000;
    grid.reserve(n_grid);
    if (P.lambda < 0.0) {
        const double rs = 1.0 / std::sqrt(-P.lambda);
        a = 1e-4 * rs;
        b = rs * (1.0 - 1e-9);
        for (int i = 0; i < n_grid; ++i)
            grid.push_back(a + (b - a) * i / double(n_grid - 1));
    } else {
        a = 1e-3 * r_c;
        b = 1e3 * r_c;
        for (int i = 0; i < n_grid; ++i)
            grid.push_back(a * std::pow(b / a, i / double(n_grid - 1)));
    }
    std::size_t best = 0;
    double v_best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double v = effective_potential(P, grid[i]);
        if (v < v_best) {
            v_best = v;
            best = i;
        }
    }
    double lo = grid[best > 0 ? best - 1 : 0];
    double hi = grid[std::min(best + 1, grid.size() - 1)];
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - invphi * (hi - lo);
    double x2 = lo + invphi * (hi - lo);
    double f1 = effective_potential(P, x1);
    double f2 = effective_potential(P, x2);
    while (hi - lo > 1e-10) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - invphi * (hi - lo);
            f1 = effective_potential(P, x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + invphi * (hi - lo);
            f2 = effective_potential(P, x2);
        }
    }
    double r_min = 0.5 * (lo + hi);
    // parabolic vertex over a wider stencil: comparisons inside the golden
    // bracket are at the V round-off floor, the fit is not
    double h = 1e-5 * std::max(1.0, r_min);
    if (P.lambda < 0.0)
        h = std::min(h, 0.1 * (1.0 / std::sqrt(-P.lambda) - r_min));
    const double f_m = effective_potential(P, r_min - h);
    const double f_0 = effective_potential(P, r_min);
    const double f_p = effective_potential(P, r_min + h);
    const double curv = f_p - 2.0 * f_0 + f_m;
    if (curv > 0.0) {
        const double shift = 0.5 * h * (f_m - f_p) / curv;
        if (std::abs(shift) < 2.0 * h) r_min += shift;
    }
    return {r_min, effective_potential(P, r_min)};
}

} // namespace dx3
