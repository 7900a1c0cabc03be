#pragma once

// Self-contained invariant and oracle-equivalence suite behind `cmup check`.
// Each check recomputes its reference independently of the value it audits,
// so a corrupted constant or a broken identity fails at least one named row.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "cmup/airy_approx.hpp"
#include "cmup/config.hpp"
#include "cmup/numerics.hpp"
#include "cmup/oracle.hpp"
#include "cmup/solver.hpp"

namespace cmup::checks {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct CheckOptions {
    bool quick = false;
    // Test-only hook: offsets the independently root-found |a1'| reference
    // used by the boundary-condition check, simulating a corrupted constant.
    double a1p_perturbation = 0.0;
};

namespace detail {

inline std::string num(double v, const char* fmt = "%.3g") {
    char buf[48];
    std::snprintf(buf, sizeof buf, fmt, v);
    return buf;
}

// Five-point second-derivative stencil; step chosen per side to balance
// rounding noise (decaying side) against truncation (oscillatory side).
template <class F>
double second_derivative(F&& f, double y) {
    const double h = (y >= 3.0) ? 0.025 : 0.004;
    return (-f(y - 2.0 * h) + 16.0 * f(y - h) - 30.0 * f(y) + 16.0 * f(y + h) -
            f(y + 2.0 * h)) /
           (12.0 * h * h);
}

template <class Body>
void run(std::vector<CheckResult>& out, const std::string& name, Body&& body) {
    CheckResult r;
    r.name = name;
    try {
        auto [pass, detail] = body();
        r.pass = pass;
        r.detail = std::move(detail);
    } catch (const std::exception& e) {
        r.pass = false;
        r.detail = std::string("exception: ") + e.what();
    }
    out.push_back(std::move(r));
}

} // namespace detail

inline std::vector<CheckResult> run_checks(const ToleranceConfig& cfg,
                                           const CheckOptions& opt = {}) {
    using numerics::pi;
    namespace airy = airyapprox;
    const bool quick = opt.quick;
    std::vector<CheckResult> out;

    detail::run(out, "airy-ode-residual", [&] {
        double worst = 0.0;
        const double step = quick ? 2.5 : 1.0;
        for (double y = -10.0; y <= 10.0 + 1e-9; y += step) {
            const double lhs = detail::second_derivative(
                [](double t) { return numerics::airy_ai(t); }, y);
            worst = std::max(worst, std::abs(lhs - y * numerics::airy_ai(y)));
        }
        return std::pair{worst <= 1e-9,
                         "max |Ai'' - y Ai| = " + detail::num(worst) +
                             " on [-10, 10] (tol 1e-9)"};
    });

    detail::run(out, "airy-printed-constants", [&] {
        const double z = numerics::first_zero_ai_prime();
        const double ai_z = numerics::airy_ai(z);
        const bool frozen = std::abs(z - (-1.0187929716474711)) <= 1e-12 &&
                            std::abs(ai_z - 0.53565665601569986) <= 1e-12;
        char buf[96];
        std::snprintf(buf, sizeof buf,
                      "first zero of Ai' = %.4f, Ai there = %.4f", z, ai_z);
        const bool rounded = std::string(buf).find("-1.0188") != std::string::npos &&
                             std::string(buf).find("0.5357") != std::string::npos;
        return std::pair{frozen && rounded, std::string(buf)};
    });

    detail::run(out, "airy-boundary-condition", [&] {
        // Reference |a1'| found by fresh root bracketing, not the cached
        // constant, then offset by the test-only perturbation hook.
        const double ap_ref =
            -numerics::find_root(
                [](double y) { return numerics::airy_ai_prime(y); }, -1.2,
                -0.9, 1e-14) +
            opt.a1p_perturbation;
        double worst = 0.0;
        for (double lam : quick ? std::vector<double>{400.0}
                                : std::vector<double>{100.0, 400.0, 1e4}) {
            const auto st = airy::make_airy_state(lam);
            worst = std::max(
                worst, std::abs(st.k * (pi - st.ratio_sqrt) - ap_ref));
        }
        return std::pair{worst <= 1e-10,
                         "max |k (pi - r) - |a1'|| = " + detail::num(worst) +
                             " (tol 1e-10)"};
    });

    detail::run(out, "series-ode-residual", [&] {
        double worst = 0.0;
        const auto cases = quick
                               ? std::vector<std::pair<Regime, double>>{{Regime::large, 1.0}}
                               : std::vector<std::pair<Regime, double>>{
                                     {Regime::large, 1.0},
                                     {Regime::small, 0.3},
                                     {Regime::large, 5.0}};
        for (const auto& [regime, a] : cases) {
            const CmupState st = build_state(regime, a, cfg);
            const auto& s = st.series;
            for (int i = 1; i <= 40; ++i) {
                const double x = st.x0 * i / 40.0;
                const double resid =
                    s.second_derivative(x) -
                    s.sign * (x * x / 4.0 - a) * s.value(x);
                worst = std::max(worst, std::abs(resid));
            }
        }
        return std::pair{worst <= 1e-10,
                         "max series ODE residual = " + detail::num(worst) +
                             " (tol 1e-10)"};
    });

    detail::run(out, "series-vs-rk4", [&] {
        const CmupState st = build_state(Regime::large, 1.0, cfg);
        const double step = quick ? 1e-3 : 1e-4;
        const double tol = quick ? 1e-5 : 1e-8;
        const auto prof = oracle::rk4_shoot(st.problem, st.x0, step);
        double worst = 0.0;
        for (const auto& s : prof.samples)
            worst = std::max(worst, std::abs(s.psi - st.series.value(s.x)));
        return std::pair{worst <= tol, "sup |series - RK4| = " +
                                           detail::num(worst) + " (tol " +
                                           detail::num(tol) + ")"};
    });

    detail::run(out, "lz-identity", [&] {
        const CmupState flat = build_state(Regime::flat, 0.0, cfg);
        if (oracle::lz_by_parts(flat, cfg) != 0.0 || flat.lz_variance != 0.0)
            return std::pair{false, std::string("flat state not exactly zero")};
        double worst = 0.0;
        std::vector<CmupState> states;
        states.push_back(build_state(Regime::large, 1.0, cfg));
        if (!quick) states.push_back(solve_for_delta_phi(2.5, 1e-6, cfg));
        for (const auto& st : states) {
            const double byparts = oracle::lz_by_parts(st, cfg);
            worst = std::max(
                worst, std::abs(byparts - st.lz_variance) / st.lz_variance);
        }
        return std::pair{worst <= 1e-6,
                         "max rel |by-parts - (mu - lambda <phi^2>)| = " +
                             detail::num(worst) + " (tol 1e-6)"};
    });

    detail::run(out, "kummer-ratio-constancy", [&] {
        double worst = 0.0;
        for (double a : quick ? std::vector<double>{1.0}
                              : std::vector<double>{0.5, 1.0}) {
            const CmupState st = build_state(Regime::large, a, cfg);
            const double lam = std::abs(st.lambda);
            const double root = std::sqrt(lam);
            double lo = 0.0, hi = 0.0, first = 0.0;
            bool seeded = false;
            for (int i = 0; i < 20; ++i) {
                const double phi = 0.1 + (3.0 - 0.1) * i / 19.0;
                const std::complex<double> z(0.0, root * phi * phi);
                const std::complex<double> m = numerics::kummer_m(
                    {0.25, -0.5 * a}, {0.5, 0.0}, z);
                const double closed =
                    (std::exp(std::complex<double>(0.0, -0.5 * root * phi * phi)) * m)
                        .real();
                const double ratio =
                    closed / st.series.value(st.x0 * phi / pi);
                if (!seeded) {
                    lo = hi = first = ratio;
                    seeded = true;
                } else {
                    lo = std::min(lo, ratio);
                    hi = std::max(hi, ratio);
                }
            }
            worst = std::max(worst, (hi - lo) / std::abs(first));
        }
        return std::pair{worst <= 1e-6,
                         "max relative ratio spread = " + detail::num(worst) +
                             " (tol 1e-6)"};
    });

    detail::run(out, "uncertainty-bound-margin", [&] {
        const auto rows = sweep(-0.45, 6.0, quick ? 12 : 40, cfg);
        double min_margin = std::numeric_limits<double>::infinity();
        int ok = 0;
        for (const auto& r : rows) {
            if (r.status != "ok") continue;
            ++ok;
            min_margin = std::min(min_margin, r.product - r.bound);
        }
        const bool pass =
            ok == static_cast<int>(rows.size()) && min_margin >= -1e-8;
        return std::pair{pass, "min (product - bound) = " +
                                   detail::num(min_margin) + " over " +
                                   std::to_string(ok) + "/" +
                                   std::to_string(rows.size()) + " rows"};
    });

    detail::run(out, "flat-dividing-point", [&] {
        const CmupState st = solve_for_delta_phi(pi / std::sqrt(3.0), 1e-8, cfg);
        const bool pass = st.problem.regime == Regime::flat &&
                          st.delta_lz() <= 1e-8 && st.product <= 1e-8 &&
                          st.bound <= 1e-8;
        return std::pair{pass, "at delta_phi = pi/sqrt(3): product = " +
                                   detail::num(st.product) + ", bound = " +
                                   detail::num(st.bound)};
    });

    detail::run(out, "mu-over-lambda-limits", [&] {
        const auto rows = sweep(0.05, quick ? 4.0 : 8.0, quick ? 10 : 25, cfg);
        bool monotone = true, below = true, all_ok = true;
        double prev = -std::numeric_limits<double>::infinity();
        for (const auto& r : rows) {
            if (r.status != "ok") {
                all_ok = false;
                continue;
            }
            monotone = monotone && r.mu_over_lambda > prev;
            below = below && r.mu_over_lambda < pi * pi + 1e-6;
            prev = r.mu_over_lambda;
        }
        const double start = rows.front().mu_over_lambda;
        const bool near_flat = std::abs(start - pi * pi / 3.0) <= 0.05;
        return std::pair{all_ok && monotone && below && near_flat,
                         "mu/lambda from " + detail::num(start) + " to " +
                             detail::num(prev) +
                             ", monotone and below pi^2"};
    });

    detail::run(out, "airy-variance-vs-quadrature", [&] {
        double worst = 0.0;
        for (double lam : quick ? std::vector<double>{400.0}
                                : std::vector<double>{100.0, 400.0, 1e4}) {
            const auto st = airy::make_airy_state(lam);
            const double lo = st.ratio_sqrt - 30.0 / st.k;
            const double quad =
                2.0 * oracle::moment_quadrature(
                          [&](double phi) {
                              return airy::airy_wavefunction(st, phi);
                          },
                          lo, pi, 2, cfg);
            worst = std::max(
                worst, std::abs(quad - st.phi_variance) / st.phi_variance);
        }
        return std::pair{worst <= 1e-6,
                         "max rel |quadrature - analytic variance| = " +
                             detail::num(worst) + " (tol 1e-6)"};
    });

    detail::run(out, "airy-normalization", [&] {
        double worst = 0.0;
        for (double lam : quick ? std::vector<double>{400.0}
                                : std::vector<double>{100.0, 400.0}) {
            const auto st = airy::make_airy_state(lam);
            const double lo = st.ratio_sqrt - 30.0 / st.k;
            const double mass =
                2.0 * oracle::moment_quadrature(
                          [&](double phi) {
                              return airy::airy_wavefunction(st, phi);
                          },
                          lo, pi, 0, cfg);
            worst = std::max(worst, std::abs(mass - 1.0));
        }
        return std::pair{worst <= 2e-3, "max |mass - 1| = " +
                                            detail::num(worst) +
                                            " (tol 2e-3, boundary tail cut)"};
    });

    detail::run(out, "small-branch-product-below-half", [&] {
        bool pass = true;
        std::string vals;
        for (double t : quick ? std::vector<double>{1.0}
                              : std::vector<double>{0.7, 0.85, 1.0}) {
            const CmupState st = solve_for_delta_phi(t, 1e-6, cfg);
            pass = pass && st.problem.regime == Regime::small &&
                   st.product > 0.0 && st.product < 0.5;
            if (!vals.empty()) vals += ", ";
            vals += detail::num(st.product);
        }
        return std::pair{pass, "products {" + vals + "} all in (0, 1/2)"};
    });

    detail::run(out, "airy-vs-numeric-window", [&] {
        double worst_dphi = 0.0, sup = 0.0;
        for (double t : quick ? std::vector<double>{3.0}
                              : std::vector<double>{2.9, 3.0}) {
            const CmupState num = solve_for_delta_phi(t, 1e-6, cfg);
            const auto ap = airy::airy_uncertainty_product(std::abs(num.lambda));
            worst_dphi =
                std::max(worst_dphi, std::abs(ap.delta_phi - num.delta_phi()));
            if (t == 3.0) {
                const auto ast = airy::make_airy_state(std::abs(num.lambda));
                for (int i = 0; i <= 100; ++i) {
                    const double phi = pi * i / 100.0;
                    sup = std::max(sup,
                                   std::abs(wavefunction_phi(num, phi) -
                                            airy::airy_wavefunction(ast, phi)));
                }
            }
        }
        const bool pass = worst_dphi <= 0.02 && sup <= 0.05;
        return std::pair{pass, "max |delta_phi gap| = " +
                                   detail::num(worst_dphi) +
                                   " (tol 0.02), sup wavefunction gap = " +
                                   detail::num(sup) + " (tol 0.05)"};
    });

    return out;
}

inline bool all_passed(const std::vector<CheckResult>& results) {
    for (const auto& r : results)
        if (!r.pass) return false;
    return true;
}

} // namespace cmup::checks
