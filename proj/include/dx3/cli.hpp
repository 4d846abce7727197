#pragma once
#include <algorithm>
#include <cmath>
#include <fstream>
#include <future>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"

#include "csv.hpp"
#include "errors.hpp"
#include "model.hpp"
#include "oracle.hpp"
#include "solutions.hpp"
#include "verify.hpp"

namespace dx3 {
namespace cli_detail {

struct Common {
    double m = 1.0;
    double omega = 1.0;
    double l = 1.0;
    double lambda = 0.0;
    std::string out = "-";
};

inline void add_common(CLI::App* cmd, Common& c, bool with_lambda = true) {
    cmd->add_option("--m", c.m, "mass")->capture_default_str();
    cmd->add_option("--omega", c.omega, "angular frequency")->capture_default_str();
    cmd->add_option("--l", c.l, "angular momentum magnitude")->capture_default_str();
    if (with_lambda)
        cmd->add_option("--lambda", c.lambda, "deformation strength")->capture_default_str();
    cmd->add_option("--out", c.out, "output path; '-' writes to standard output")
        ->capture_default_str();
}

inline Params make_params(const Common& c) {
    Params P;
    P.m = c.m;
    P.omega = c.omega;
    P.l = c.l;
    P.lambda = c.lambda;
    P.validate();
    return P;
}

inline int emit(const CsvTable& t, const std::string& path, std::ostream& out,
                std::ostream& diag) {
    if (path == "-") {
        t.write(out);
        return 0;
    }
    std::ofstream f(path);
    if (!f) {
        diag << "error: cannot open '" << path << "' for writing\n";
        return 2;
    }
    t.write(f);
    return 0;
}

/// Turning radius at the threshold energy, where the quadratic degenerates.
inline double critical_inner_radius(const Params& P, double E) {
    return std::sqrt(P.l * P.l / (2.0 * P.m * E));
}

inline int cmd_potential(const Params& P, double r_lo, double r_hi, int samples,
                         const std::string& out_path, std::ostream& out, std::ostream& diag) {
    if (!(r_lo > 0.0) || !(r_lo < r_hi) || samples < 2) {
        diag << "error: need 0 < --r-lo < --r-hi and --samples >= 2\n";
        return 2;
    }
    CsvTable t;
    t.header = {"r", "V_eff"};
    for (int k = 0; k < samples; ++k) {
        const double r = r_lo + (r_hi - r_lo) * k / double(samples - 1);
        if (std::abs(1.0 + P.lambda * r * r) < 1e-9) {
            diag << "note: omitted singular sample at r=" << format_double(r) << "\n";
            continue;
        }
        auto& row = t.add_row();
        row.push_back(format_double(r));
        row.push_back(format_double(effective_potential(P, r)));
    }
    return emit(t, out_path, out, diag);
}

inline int cmd_phase(const Params& P, const std::vector<double>& energies, int samples,
                     double r_cap, const std::string& out_path, std::ostream& out,
                     std::ostream& diag) {
    if (samples < 2 || !(r_cap > 0.0)) {
        diag << "error: need --samples >= 2 and --r-cap > 0\n";
        return 2;
    }
    CsvTable t;
    t.header = {"E", "r", "p_plus", "p_minus"};
    auto shell_p = [&](double E, double r) {
        if (r == 0.0) return std::sqrt(2.0 * P.m * E);  // only reachable when l = 0
        return momentum_on_shell(P, E, r);
    };
    for (double E : energies) {
        const EnergyRegime reg = classify_energy(P, E);
        if (reg == EnergyRegime::Forbidden) {
            diag << "warning: E=" << format_double(E) << " lies below the potential minimum; "
                 << "skipped\n";
            continue;
        }
        double lo = 0.0, hi = 0.0;
        bool closed = false;  // both endpoints are turning points
        if (reg == EnergyRegime::Circular) {
            const auto [r_min, v_min] = potential_minimum(P);
            auto& row = t.add_row();
            row.push_back(format_double(E));
            row.push_back(format_double(r_min));
            row.push_back("0");
            row.push_back("0");
            continue;
        } else if (reg == EnergyRegime::Bounded) {
            const TurningPoints tp = turning_points(P, E);
            lo = tp.r_lo;
            hi = tp.r_hi;
            closed = true;
        } else if (reg == EnergyRegime::Critical) {
            lo = critical_inner_radius(P, E);
            hi = r_cap;
        } else {
            lo = turning_points(P, E).r_lo;
            hi = r_cap;
        }
        if (!(hi > lo)) {
            diag << "error: --r-cap must exceed the inner turning radius "
                 << format_double(lo) << "\n";
            return 2;
        }
        for (int k = 0; k < samples; ++k) {
            const double r = lo + (hi - lo) * k / double(samples - 1);
            const bool turning = (k == 0 && lo > 0.0) || (k == samples - 1 && closed);
            const double p = turning ? 0.0 : shell_p(E, r);
            auto& row = t.add_row();
            row.push_back(format_double(E));
            row.push_back(format_double(r));
            row.push_back(format_double(p));
            row.push_back(format_double(-p));
        }
    }
    return emit(t, out_path, out, diag);
}

inline int cmd_orbit(const Params& P, double E, double theta, double t_max, int samples,
                     bool with_oracle, double r_cap, const std::string& out_path,
                     std::ostream& out, std::ostream& diag) {
    if (samples < 2) {
        diag << "error: need --samples >= 2\n";
        return 2;
    }
    const EnergyRegime reg = classify_energy(P, E);
    if (reg == EnergyRegime::Forbidden)
        throw RegimeError("orbit: E=" + format_double(E)
                          + " is in the forbidden regime (below the potential minimum)");
    if (reg == EnergyRegime::Critical && !with_oracle)
        throw RegimeError("orbit: E=" + format_double(E)
                          + " is in the critical regime; no closed form exists "
                            "(rerun with --oracle for integrated samples)");

    CsvTable t;
    if (reg == EnergyRegime::Critical) {  // oracle-only table
        diag << "note: critical energy; emitting integrated samples only\n";
        if (t_max <= 0.0) t_max = 10.0;
        std::vector<double> ts;
        for (int k = 0; k < samples; ++k) ts.push_back(t_max * k / double(samples - 1));
        const auto num = integrate_radial(P, {critical_inner_radius(P, E), 0.0}, ts);
        t.header = {"t", "r_oracle", "p_oracle"};
        for (const auto& s : num) {
            auto& row = t.add_row();
            row.push_back(format_double(s.t));
            row.push_back(format_double(s.r));
            row.push_back(format_double(s.p));
        }
        return emit(t, out_path, out, diag);
    }

    if (reg == EnergyRegime::Unbounded) {
        if (theta != 0.0) {
            diag << "warning: --theta is ignored for unbounded motion; using 0\n";
            theta = 0.0;
        }
        const TurningPoints tp = turning_points(P, E);
        if (!with_oracle) {  // no closed r(t): emit the time-of-radius table
            diag << "note: unbounded energy; emitting the t(r) table\n";
            if (!(r_cap > tp.r_lo)) {
                diag << "error: --r-cap must exceed the turning radius "
                     << format_double(tp.r_lo) << "\n";
                return 2;
            }
            t.header = {"r", "t_closed"};
            for (int k = 0; k < samples; ++k) {
                const double r = tp.r_lo + (r_cap - tp.r_lo) * k / double(samples - 1);
                auto& row = t.add_row();
                row.push_back(format_double(r));
                row.push_back(format_double(time_of_radius_unbounded(P, E, 0.0, r)));
            }
            return emit(t, out_path, out, diag);
        }
        // closed r(t) by monotone inversion of the time map, plus oracle columns
        if (t_max <= 0.0) t_max = time_of_radius_unbounded(P, E, 0.0, std::max(r_cap, 2.0 * tp.r_lo));
        auto r_of_t = [&](double tt) {
            if (tt <= 0.0) return tp.r_lo;
            double lo = tp.r_lo, hi = std::max(2.0 * tp.r_lo, 1.0);
            while (time_of_radius_unbounded(P, E, 0.0, hi) < tt) {
                lo = hi;
                hi *= 2.0;
                if (hi > 1e12) throw Dx3Error("orbit: escape radius exceeds 1e12");
            }
            for (int it = 0; it < 200 && hi - lo > 1e-13 * std::max(1.0, hi); ++it) {
                const double mid = 0.5 * (lo + hi);
                (time_of_radius_unbounded(P, E, 0.0, mid) < tt ? lo : hi) = mid;
            }
            return 0.5 * (lo + hi);
        };
        std::vector<double> ts;
        for (int k = 0; k < samples; ++k) ts.push_back(t_max * k / double(samples - 1));
        const auto num = integrate_radial(P, {tp.r_lo, 0.0}, ts);
        t.header = {"t", "r_closed", "p_closed", "r_oracle", "p_oracle"};
        for (std::size_t k = 0; k < ts.size(); ++k) {
            const double r = r_of_t(ts[k]);
            const double p = ts[k] == 0.0 ? 0.0 : momentum_on_shell(P, E, r);
            auto& row = t.add_row();
            row.push_back(format_double(ts[k]));
            row.push_back(format_double(r));
            row.push_back(format_double(p));
            row.push_back(format_double(num[k].r));
            row.push_back(format_double(num[k].p));
        }
        return emit(t, out_path, out, diag);
    }

    // Euclidean / Bounded / Circular: closed-form r(t), p(t)
    if (t_max <= 0.0) t_max = radial_period(P, E);
    auto closed_state = [&](double tt) -> RadialState {
        if (reg == EnergyRegime::Circular) return {potential_minimum(P).first, 0.0};
        if (P.lambda == 0.0) return euclid_trajectory(P, E, theta, tt);
        return invert_time(P, E, theta, tt);
    };
    std::vector<double> ts;
    for (int k = 0; k < samples; ++k) ts.push_back(t_max * k / double(samples - 1));
    std::vector<TrajectorySample> num;
    if (with_oracle) {
        const RadialState s0 = closed_state(0.0);
        num = integrate_radial(P, s0, ts);
    }
    t.header = with_oracle
                   ? std::vector<std::string>{"t", "r_closed", "p_closed", "r_oracle", "p_oracle"}
                   : std::vector<std::string>{"t", "r_closed", "p_closed"};
    for (std::size_t k = 0; k < ts.size(); ++k) {
        const RadialState s = closed_state(ts[k]);
        auto& row = t.add_row();
        row.push_back(format_double(ts[k]));
        row.push_back(format_double(s.r));
        row.push_back(format_double(s.p));
        if (with_oracle) {
            row.push_back(format_double(num[k].r));
            row.push_back(format_double(num[k].p));
        }
    }
    return emit(t, out_path, out, diag);
}

inline int cmd_verify(const std::string& suite, double int_rel_tol, unsigned seed,
                      std::ostream& out) {
    const std::vector<CheckResult> checks = verify_suite(suite, base_tol(), seed, int_rel_tol);
    int n_pass = 0;
    for (const CheckResult& c : checks) {
        out << (c.pass ? "[PASS] " : "[FAIL] ") << c.name << "  max_err="
            << format_double(c.max_err) << "  tol=" << format_double(c.tol) << "\n";
        n_pass += c.pass ? 1 : 0;
    }
    out << n_pass << "/" << checks.size() << " checks passed\n";
    return n_pass == int(checks.size()) ? 0 : 1;
}

inline std::vector<std::string> sweep_row(Params P, double lam, double E) {
    std::vector<std::string> c(7);
    c[0] = format_double(lam);
    c[4] = "0";
    c[5] = "none";
    P.lambda = lam;
    try {
        const auto [r_min, v_min] = potential_minimum(P);
        c[1] = format_double(r_min);
        c[2] = format_double(v_min);
        const EnergyRegime reg = classify_energy(P, E);
        c[3] = to_string(reg);
        const double delta = P.omega * P.omega - 2.0 * P.lambda * E / P.m;
        if (reg == EnergyRegime::Bounded || reg == EnergyRegime::Circular) {
            const double freq =
                2.0 * delta * std::sqrt(delta) / (P.omega * P.omega - P.lambda * E / P.m);
            c[4] = format_double(freq);
            c[5] = format_double(2.0 * M_PI / freq);
        } else if (reg == EnergyRegime::Unbounded) {
            const double den = P.lambda * E / P.m - P.omega * P.omega;
            if (den == 0.0)
                c[6] = "escape rate undefined at this energy";
            else
                c[4] = format_double(2.0 * (-delta) * std::sqrt(-delta) / den);
        }
    } catch (const Dx3Error& e) {
        c[6] = e.what();
    }
    return c;
}

inline int cmd_sweep(const Params& base, const std::vector<double>& lambdas, double E,
                     const std::string& out_path, std::ostream& out, std::ostream& diag) {
    std::vector<std::future<std::vector<std::string>>> futs;
    futs.reserve(lambdas.size());
    for (double lam : lambdas)
        futs.push_back(std::async(std::launch::async, sweep_row, base, lam, E));
    CsvTable t;
    t.header = {"lambda", "r_min", "V_min", "regime", "Omega_or_zeta", "T_or_none", "error"};
    for (auto& f : futs) t.rows.push_back(f.get());
    return emit(t, out_path, out, diag);
}

} // namespace cli_detail

/// Parse and run one CLI invocation; args excludes the program name.
inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& diag) {
    using namespace cli_detail;
    CLI::App app{"Darboux III oscillator: closed-form solutions, their algebra, and an "
                 "integration oracle",
                 "dx3"};
    app.require_subcommand(1);

    Common pot_c;
    double pot_r_lo = 0.1, pot_r_hi = 3.0;
    int pot_samples = 100;
    auto* pot = app.add_subcommand("potential", "tabulate the effective potential");
    add_common(pot, pot_c);
    pot->add_option("--r-lo", pot_r_lo, "grid start")->capture_default_str();
    pot->add_option("--r-hi", pot_r_hi, "grid end")->capture_default_str();
    pot->add_option("--samples", pot_samples, "grid size")->capture_default_str();

    Common ph_c;
    std::vector<double> ph_energies{2.0};
    int ph_samples = 100;
    double ph_r_cap = 5.0;
    auto* ph = app.add_subcommand("phase", "tabulate phase-plane contours at fixed energies");
    add_common(ph, ph_c);
    ph->add_option("--energy", ph_energies, "energy levels (repeatable)")->capture_default_str();
    ph->add_option("--samples", ph_samples, "points per contour")->capture_default_str();
    ph->add_option("--r-cap", ph_r_cap, "outer radius for open contours")->capture_default_str();

    Common orb_c;
    double orb_E = 2.0, orb_theta = 0.0, orb_t_max = 0.0, orb_r_cap = 5.0;
    int orb_samples = 200;
    bool orb_oracle = false;
    auto* orb = app.add_subcommand("orbit", "tabulate the closed-form trajectory");
    add_common(orb, orb_c);
    orb->add_option("--energy", orb_E, "energy")->capture_default_str();
    orb->add_option("--theta", orb_theta, "initial phase (radians)")->capture_default_str();
    orb->add_option("--t-max", orb_t_max, "time horizon; 0 selects one period or the --r-cap "
                                          "escape time")
        ->capture_default_str();
    orb->add_option("--samples", orb_samples, "sample count")->capture_default_str();
    orb->add_option("--r-cap", orb_r_cap, "outer radius for unbounded tables")
        ->capture_default_str();
    orb->add_flag("--oracle", orb_oracle, "add columns integrated from Hamilton's equations");

    std::string ver_suite = "all";
    double ver_rel_tol = 1e-10;
    unsigned ver_seed = 20260822u;
    auto* ver = app.add_subcommand("verify", "run a verification suite");
    ver->add_option("--suite", ver_suite, "sga, oracle, limits, or all")
        ->check(CLI::IsMember({"sga", "oracle", "limits", "all"}))
        ->capture_default_str();
    ver->add_option("--rel-tol", ver_rel_tol,
                    "integrator relative tolerance for the oracle checks "
                    "(check tolerance itself comes from DX3_TOL, default 1e-6)")
        ->capture_default_str();
    ver->add_option("--seed", ver_seed, "random-state seed")->capture_default_str();

    Common sw_c;
    std::vector<double> sw_lambdas{0.0, 0.05, 0.10, 0.20, 0.50};
    double sw_E = 2.0;
    auto* sw = app.add_subcommand("sweep", "summarize the model across deformation strengths");
    add_common(sw, sw_c, false);
    sw->add_option("--lambda", sw_lambdas, "deformation strengths (repeatable)")
        ->capture_default_str();
    sw->add_option("--energy", sw_E, "energy used for classification")->capture_default_str();

    try {
        std::reverse(args.begin(), args.end());
        app.parse(std::move(args));
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e, out, diag);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(pot))
            return cmd_potential(make_params(pot_c), pot_r_lo, pot_r_hi, pot_samples, pot_c.out,
                                 out, diag);
        if (app.got_subcommand(ph))
            return cmd_phase(make_params(ph_c), ph_energies, ph_samples, ph_r_cap, ph_c.out, out,
                             diag);
        if (app.got_subcommand(orb))
            return cmd_orbit(make_params(orb_c), orb_E, orb_theta, orb_t_max, orb_samples,
                             orb_oracle, orb_r_cap, orb_c.out, out, diag);
        if (app.got_subcommand(ver)) return cmd_verify(ver_suite, ver_rel_tol, ver_seed, out);
        if (app.got_subcommand(sw))
            return cmd_sweep(make_params(sw_c), sw_lambdas, sw_E, sw_c.out, out, diag);
    } catch (const RegimeError& e) {
        diag << "error: " << e.what() << "\n";
        return 3;
    } catch (const Dx3Error& e) {
        diag << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

} // namespace dx3
