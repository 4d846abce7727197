// Acceptance gate: one numbered criterion per invocation (no argument = all).
// Prints one [PASS]/[FAIL] line per criterion and exits nonzero on any failure.
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "dx3/cli.hpp"

using namespace dx3;

namespace {

Params with_lambda(double lam) {
    Params P;
    P.lambda = lam;
    return P;
}

std::string num(double x) { return format_double(x); }

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> ls;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line))
        if (!line.empty()) ls.push_back(line);
    return ls;
}

std::vector<std::string> cells_of(const std::string& line) {
    std::vector<std::string> cs;
    std::istringstream in(line);
    std::string cell;
    while (std::getline(in, cell, ',')) cs.push_back(cell);
    return cs;
}

bool criterion_singular_radius(std::string& detail) {
    const Params P = with_lambda(-0.2);
    const auto rs = singular_radius(P);
    if (!rs) {
        detail = "no singular radius reported for lambda = -0.2";
        return false;
    }
    if (std::abs(*rs - std::sqrt(5.0)) > 1e-12) {
        detail = "singular radius " + num(*rs) + " is not sqrt(5) to 1e-12";
        return false;
    }
    // halve the distance each step; stop short of the metric guard at |g| < 1e-12
    double prev = 0.0;
    double r = 0.0;
    for (int k = 0; k <= 36; ++k) {
        r = *rs - (*rs - 1.2) * std::pow(2.0, -k);
        const double v = effective_potential(P, r);
        if (k > 0 && v <= prev) {
            detail = "potential not increasing at r = " + num(r);
            return false;
        }
        prev = v;
    }
    if (prev < 1e6) {
        detail = "potential only reaches " + num(prev) + " at r = " + num(r);
        return false;
    }
    return true;
}

bool criterion_euclid_form(std::string& detail) {
    Params P;
    const double E = 2.0;
    const double r_lo_exp = std::sqrt(2.0 - std::sqrt(3.0));
    const double r_hi_exp = std::sqrt(2.0 + std::sqrt(3.0));
    double r_min = 1e300, r_max = 0.0, off = 0.0;
    for (int k = 0; k < 1000; ++k) {
        const double t = M_PI * k / 1000.0;
        const RadialState s = euclid_trajectory(P, E, 0.0, t);
        r_min = std::min(r_min, s.r);
        r_max = std::max(r_max, s.r);
        off = std::max(off, std::abs(radial_hamiltonian(P, s) - E));
    }
    if (std::abs(r_min - r_lo_exp) > 1e-6 || std::abs(r_max - r_hi_exp) > 1e-6) {
        detail = "radial range [" + num(r_min) + ", " + num(r_max) + "] does not match ["
                 + num(r_lo_exp) + ", " + num(r_hi_exp) + "]";
        return false;
    }
    if (off > 1e-12) {
        detail = "on-shell residual " + num(off) + " exceeds 1e-12";
        return false;
    }
    for (double t : {0.3, 0.7, 1.1}) {
        const RadialState a = euclid_trajectory(P, E, 0.0, t);
        const RadialState b = euclid_trajectory(P, E, 0.0, t + M_PI);
        if (std::abs(a.r - b.r) > 1e-12 || std::abs(a.p - b.p) > 1e-12) {
            detail = "motion does not repeat with period pi at t = " + num(t);
            return false;
        }
    }
    return true;
}

bool criterion_bracket_closure(std::string& detail) {
    const auto checks = verify_sga(1e-6, 20260822u, 100);
    for (const CheckResult& c : checks) {
        if (!c.pass) {
            detail = c.name + " max_err=" + num(c.max_err) + " exceeds 1e-6";
            return false;
        }
        const bool is_product = c.name.size() >= 8
                             && c.name.compare(c.name.size() - 8, 8, " product") == 0;
        if (is_product && c.max_err > 1e-10) {
            detail = c.name + " max_err=" + num(c.max_err) + " exceeds 1e-10";
            return false;
        }
    }
    return true;
}

bool criterion_oracle_agreement(std::string& detail) {
    IntegratorConfig cfg;
    cfg.rel_tol = 1e-10;
    cfg.abs_tol = 1e-12;
    bool ok = true;
    std::string msgs;

    struct Case {
        double lam, E;
    };
    for (const Case& c : {Case{0.0, 2.0}, Case{0.05, 2.0}, Case{0.2, 2.0}, Case{-0.2, 2.0}}) {
        const Params P = with_lambda(c.lam);
        const TurningPoints tp = turning_points(P, c.E);
        const double T = radial_period(P, c.E);
        const double span = tp.r_hi - tp.r_lo;
        std::vector<double> radii;
        for (int k = 0; k < 50; ++k)
            radii.push_back(tp.r_lo + span * (0.01 + 0.98 * k / 49.0));
        const auto t_num = time_at_radii(P, c.E, radii, cfg);
        double err = 0.0;
        for (std::size_t k = 0; k < radii.size(); ++k)
            err = std::max(err,
                           std::abs(time_of_radius_bounded(P, c.E, 0.0, radii[k]) - t_num[k]));
        if (err > 1e-6 * std::max(1.0, T)) {
            msgs += " lambda=" + num(c.lam) + " max|dt|=" + num(err) + ";";
            ok = false;
        }
    }
    {
        const Params P = with_lambda(0.2);
        const double E = 3.0;
        const TurningPoints tp = turning_points(P, E);
        std::vector<double> radii;
        for (int k = 0; k < 50; ++k)
            radii.push_back(1.05 * tp.r_lo * std::pow(10.0 / (1.05 * tp.r_lo), k / 49.0));
        const auto t_num = time_at_radii(P, E, radii, cfg);
        double err = 0.0;
        for (std::size_t k = 0; k < radii.size(); ++k)
            err = std::max(err,
                           std::abs(time_of_radius_unbounded(P, E, 0.0, radii[k]) - t_num[k]));
        if (err > 1e-6) {
            msgs += " unbounded max|dt|=" + num(err) + ";";
            ok = false;
        }
    }

    // pinned spot values
    const double t_b = time_of_radius_bounded(with_lambda(0.2), 2.0, 0.0, 3.0);
    if (std::abs(t_b - 3.4449886) > 1e-6) {
        msgs += " t(r=3; lambda=0.2, E=2) = " + num(t_b) + " vs stated 3.4449886;";
        ok = false;
    }
    const double t_u = time_of_radius_unbounded(with_lambda(0.2), 3.0, 0.0, 2.0);
    if (std::abs(t_u - 1.0009609) > 1e-6) {
        msgs += " t(r=2; lambda=0.2, E=3) = " + num(t_u) + " vs stated 1.0009609;";
        ok = false;
    }
    if (!ok) detail = "mismatches:" + msgs;
    return ok;
}

bool criterion_conservation(std::string& detail) {
    for (double lam : {0.0, 0.2, -0.2}) {
        const Params P = with_lambda(lam);
        const double E = 2.0;
        const TurningPoints tp = turning_points(P, E);
        CartesianState s0;
        s0.q = {tp.r_hi, 0.0, 0.0};
        s0.p = {0.0, P.l / tp.r_hi, 0.0};
        const double T = radial_period(P, E);
        std::vector<double> ts;
        for (int k = 0; k <= 400; ++k) ts.push_back(10.0 * T * k / 400.0);
        const auto traj = integrate_nd(P, s0, ts, {});
        const ConservationReport rep = conservation_report(P, traj);
        const double drift = std::max({rep.h_drift, rep.l2_drift, rep.fradkin_drift,
                                       rep.q_const_drift});
        if (drift > 1e-8) {
            detail = "lambda=" + num(lam) + " worst conserved-quantity drift " + num(drift);
            return false;
        }
        if (rep.trace_residual > 1e-12) {
            detail = "lambda=" + num(lam) + " trace residual " + num(rep.trace_residual);
            return false;
        }
    }
    return true;
}

bool criterion_minima_thresholds(std::string& detail) {
    for (double lam : {0.0, 0.2, -0.2}) {
        const Params P = with_lambda(lam);
        const auto [r_g, v_g] = grid_minimize_potential(P);
        const auto [r_a, v_a] = potential_minimum(P);
        if (std::abs(r_g - r_a) > 1e-9) {
            detail = "lambda=" + num(lam) + " grid minimum " + num(r_g)
                     + " vs closed form " + num(r_a);
            return false;
        }
    }
    const Params P = with_lambda(0.2);
    const double e_crit = 2.5;
    if (classify_energy(P, e_crit * (1.0 - 1e-9)) != EnergyRegime::Bounded
        || classify_energy(P, e_crit) != EnergyRegime::Critical
        || classify_energy(P, e_crit * (1.0 + 1e-9)) != EnergyRegime::Unbounded) {
        detail = "classification does not flip bounded -> critical -> unbounded at E = 2.5";
        return false;
    }
    return true;
}

bool criterion_limit_recovery(std::string& detail) {
    Params P0;
    const double E = 2.0;
    const TurningPoints tp0 = turning_points(P0, E);
    const double span = tp0.r_hi - tp0.r_lo;
    std::vector<double> grid;
    for (int k = 0; k < 33; ++k) grid.push_back(tp0.r_lo + span * (0.05 + 0.90 * k / 32.0));

    auto time_dev = [&](double lam) {
        const Params P = with_lambda(lam);
        double d = 0.0;
        for (double r : grid)
            d = std::max(d, std::abs(time_of_radius_bounded(P, E, 0.0, r)
                                     - time_of_radius_bounded(P0, E, 0.0, r)));
        return d;
    };
    const double t_ratio = time_dev(1e-4) / time_dev(1e-5);
    if (std::abs(t_ratio - 10.0) > 0.5) {
        detail = "time-map deviation ratio " + num(t_ratio) + " is outside 10 +- 5%";
        return false;
    }

    const StructureFunctions s0 = structure_functions(P0, E, SolutionRegime::Euclidean);
    auto sf_dev = [&](double lam) {
        const StructureFunctions s =
            structure_functions(with_lambda(lam), E, SolutionRegime::Bounded);
        return std::max({std::abs(s.alpha - s0.alpha), std::abs(s.beta - s0.beta),
                         std::abs(s.gamma - s0.gamma)});
    };
    const double s_ratio = sf_dev(1e-4) / sf_dev(1e-5);
    if (std::abs(s_ratio - 10.0) > 0.5) {
        detail = "structure-function deviation ratio " + num(s_ratio) + " is outside 10 +- 5%";
        return false;
    }
    return true;
}

bool criterion_table_generation(std::string& detail) {
    {
        std::ostringstream out, err;
        const int rc = run_cli({"phase", "--lambda", "0.2", "--samples", "100",
                                "--energy", "1.00", "--energy", "1.25", "--energy", "1.50",
                                "--energy", "1.75", "--energy", "2.00", "--energy", "2.25"},
                               out, err);
        if (rc != 0) {
            detail = "phase exited with code " + std::to_string(rc);
            return false;
        }
        const auto ls = lines_of(out.str());
        if (ls.size() != 1 + 6 * 100) {
            detail = "phase emitted " + std::to_string(ls.size()) + " lines, expected 601";
            return false;
        }
        for (int c = 0; c < 6; ++c) {
            const auto first = cells_of(ls[1 + 100 * c]);
            const auto last = cells_of(ls[100 + 100 * c]);
            if (first[2] != "0" || first[3] != "0" || last[2] != "0" || last[3] != "0") {
                detail = "contour " + std::to_string(c) + " endpoints are not exactly 0";
                return false;
            }
        }
    }
    {
        std::ostringstream out1, err1, out2, err2;
        const int rc1 = run_cli({"sweep"}, out1, err1);
        const int rc2 = run_cli({"sweep"}, out2, err2);
        if (rc1 != 0 || rc2 != 0) {
            detail = "sweep exited with codes " + std::to_string(rc1) + ", "
                     + std::to_string(rc2);
            return false;
        }
        if (out1.str() != out2.str()) {
            detail = "sweep output is not byte-identical across runs";
            return false;
        }
        if (lines_of(out1.str()).size() != 6) {
            detail = "sweep did not emit one row per deformation value";
            return false;
        }
    }
    return true;
}

struct Criterion {
    int id;
    const char* label;
    std::function<bool(std::string&)> fn;
    double cap_seconds;  // 0 = no cap
};

} // namespace

int main(int argc, char** argv) {
    int which = 0;
    if (argc > 1) {
        which = std::atoi(argv[1]);
        if (which < 1 || which > 8) {
            std::cerr << "usage: " << argv[0] << " [1..8]\n";
            return 2;
        }
    }
    const std::vector<Criterion> criteria = {
        {1, "singular radius and potential divergence", criterion_singular_radius, 1.0},
        {2, "undeformed closed form", criterion_euclid_form, 1.0},
        {3, "ladder bracket closure", criterion_bracket_closure, 5.0},
        {4, "closed form against the integration oracle", criterion_oracle_agreement, 30.0},
        {5, "conservation along full orbits", criterion_conservation, 0.0},
        {6, "potential minima and regime thresholds", criterion_minima_thresholds, 0.0},
        {7, "small-deformation limit", criterion_limit_recovery, 0.0},
        {8, "table generation end to end", criterion_table_generation, 10.0},
    };

    bool all_ok = true;
    for (const Criterion& c : criteria) {
        if (which != 0 && c.id != which) continue;
        std::string detail;
        bool ok = false;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            ok = c.fn(detail);
        } catch (const std::exception& e) {
            detail = std::string("unexpected exception: ") + e.what();
            ok = false;
        }
        const double sec =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (ok && c.cap_seconds > 0.0 && sec > c.cap_seconds) {
            ok = false;
            detail = "runtime " + num(sec) + " s exceeds the " + num(c.cap_seconds) + " s cap";
        }
        if (ok) {
            std::cout << "[PASS] criterion " << c.id << ": " << c.label << " ("
                      << num(sec) << " s)\n";
        } else {
            std::cout << "[FAIL] criterion " << c.id << ": " << c.label << ": " << detail
                      << "\n";
            all_ok = false;
        }
    }
    return all_ok ? 0 : 1;
}
