// Acceptance gate: one pass/fail line per criterion, exit 0 only on all-pass.
// Runs against the default tolerance configuration.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cmup/airy_approx.hpp"
#include "cmup/numerics.hpp"
#include "cmup/oracle.hpp"
#include "cmup/solver.hpp"

namespace {

namespace airy = cmup::airyapprox;
namespace oracle = cmup::oracle;
using cmup::numerics::pi;

std::string num(double v, const char* fmt = "%.3g") {
    char buf[48];
    std::snprintf(buf, sizeof buf, fmt, v);
    return buf;
}

struct Outcome {
    bool pass = false;
    std::string detail;
};

struct Criterion {
    int index;
    std::string name;
    double budget_seconds;
    std::function<Outcome()> body;
};

// Shared between criteria 2 and 4 (same sweep by construction).
std::optional<std::vector<cmup::SweepRecord>> shared_sweep;

const cmup::ToleranceConfig cfg{};

Outcome criterion_flat() {
    const cmup::CmupState st =
        cmup::solve_for_delta_phi(pi / std::sqrt(3.0), 1e-8, cfg);
    const bool pass =
        st.delta_lz() <= 1e-8 && st.product <= 1e-8 && st.bound <= 1e-8;
    return {pass, "delta_lz = " + num(st.delta_lz()) + ", product = " +
                      num(st.product) + ", bound = " + num(st.bound)};
}

Outcome criterion_bound() {
    shared_sweep = cmup::sweep(-6.0, 8.0, 200, cfg);
    const auto& rows = *shared_sweep;
    int ok = 0, flagged_on_dead_zone = 0;
    double min_margin = std::numeric_limits<double>::infinity();
    for (const auto& r : rows) {
        if (r.status == "ok") {
            ++ok;
            min_margin = std::min(min_margin, r.product - r.bound);
        } else if (r.control <= -0.4999) {
            // The small branch genuinely ends at the Gaussian limit a = 1/2;
            // rows past it carry no state and therefore no product claim.
            ++flagged_on_dead_zone;
        }
    }
    const bool pass = min_margin >= -1e-8 && ok >= 100 &&
                      ok + flagged_on_dead_zone == static_cast<int>(rows.size());
    return {pass, "min (product - bound) = " + num(min_margin) + " over " +
                      std::to_string(ok) + " ok rows (" +
                      std::to_string(flagged_on_dead_zone) +
                      " rows past the small-branch ceiling)"};
}

Outcome criterion_ratio_limits() {
    const auto rows = cmup::sweep(0.05, 20.0, 100, cfg);
    bool all_ok = true, monotone = true, below = true;
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
    const double at_start = rows.front().mu_over_lambda;
    const bool near_limit = std::abs(at_start - pi * pi / 3.0) <= 0.05;
    const bool pass = all_ok && monotone && below && near_limit;
    return {pass, "mu/lambda(a=0.05) = " + num(at_start, "%.6g") +
                      " (pi^2/3 = " + num(pi * pi / 3.0, "%.6g") +
                      "), rises to " + num(prev, "%.6g") + " < pi^2, monotone"};
}

Outcome criterion_small_branch() {
    if (!shared_sweep) return {false, "criterion 2 sweep unavailable"};
    // Every small-branch row of the shared sweep must respect the ceiling;
    // rows with delta_phi <= 1 sit near the Gaussian limit, which the 200-point
    // grid may miss entirely, so solved targets keep the claim non-vacuous.
    int from_sweep = 0;
    bool pass = true;
    for (const auto& r : *shared_sweep) {
        if (r.status != "ok" || r.regime != cmup::Regime::small) continue;
        pass = pass && r.product > 0.0 && r.product < 0.5;
        if (r.delta_phi <= 1.0) ++from_sweep;
    }
    for (const double target : {0.7, 0.85, 1.0}) {
        const cmup::CmupState st = cmup::solve_for_delta_phi(target, 1e-6, cfg);
        pass = pass && st.problem.regime == cmup::Regime::small &&
               st.product > 0.0 && st.product < 0.5;
    }
    return {pass, std::to_string(from_sweep) +
                      " sweep rows at delta_phi <= 1 plus solved targets "
                      "{0.7, 0.85, 1.0}, products all in (0, 1/2)"};
}

Outcome criterion_airy_agreement() {
    const cmup::CmupState numeric = cmup::solve_for_delta_phi(3.0, 1e-6, cfg);
    if (std::abs(numeric.delta_phi() - 3.0) > 1e-3)
        return {false, "solver missed delta_phi = 3.0"};
    const double lam = std::abs(numeric.lambda);
    const airy::AiryState approx = airy::make_airy_state(lam);
    const double gap =
        std::abs(std::sqrt(approx.phi_variance) - numeric.delta_phi());
    double sup = 0.0;
    for (int i = 0; i <= 400; ++i) {
        const double phi = pi * i / 400.0;
        sup = std::max(sup, std::abs(cmup::wavefunction_phi(numeric, phi) -
                                     airy::airy_wavefunction(approx, phi)));
    }
    const bool pass = sup <= 0.05 && gap <= 0.02;
    return {pass, "sup-norm = " + num(sup) + " (tol 0.05), |delta_phi gap| = " +
                      num(gap) + " (tol 0.02)"};
}

Outcome criterion_airy_exactness() {
    const double ap = airy::first_zero_magnitude();
    double worst_arg = 0.0, worst_var = 0.0;
    for (const double lam : {100.0, 400.0, 1e4}) {
        const airy::AiryState st = airy::make_airy_state(lam);
        worst_arg = std::max(worst_arg,
                             std::abs(st.k * (pi - st.ratio_sqrt) - ap));
        const double lo = st.ratio_sqrt - 30.0 / st.k;
        const double quad =
            2.0 * oracle::moment_quadrature(
                      [&](double phi) { return airy::airy_wavefunction(st, phi); },
                      lo, pi, 2, cfg);
        worst_var = std::max(worst_var,
                             std::abs(quad - st.phi_variance) / st.phi_variance);
    }
    const bool pass = worst_arg <= 1e-10 && worst_var <= 1e-6;
    return {pass, "max |k (pi - r) - |a1'|| = " + num(worst_arg) +
                      " (tol 1e-10), max rel variance gap = " + num(worst_var) +
                      " (tol 1e-6)"};
}

double airy_delta_phi(double lam) {
    return std::sqrt(airy::make_airy_state(lam).phi_variance);
}

Outcome criterion_unboundedness() {
    const auto lambda_for = [](double target) {
        return cmup::numerics::find_root(
            [&](double lam) { return airy_delta_phi(lam) - target; }, 10.0,
            1e7, 1e-4);
    };
    const double p30 =
        airy::airy_uncertainty_product(lambda_for(3.0)).product;
    const double p312 =
        airy::airy_uncertainty_product(lambda_for(3.12)).product;
    const double factor = p312 / p30;

    bool increasing = true;
    double prev = 0.0;
    for (int i = 0; i <= 40; ++i) {
        const double lam = std::pow(10.0, 2.0 + 2.0 * i / 40.0);
        const double p = airy::airy_uncertainty_product(lam).product;
        increasing = increasing && p > prev;
        prev = p;
    }
    const bool pass = factor >= 1.5 && increasing;
    return {pass, "product(3.12) / product(3.0) = " + num(factor, "%.4g") +
                      " (>= 1.5), strictly increasing over lambda in "
                      "[1e2, 1e4]"};
}

Outcome criterion_oracle_equivalence() {
    double worst_sup = 0.0;
    for (const cmup::Regime regime : {cmup::Regime::small, cmup::Regime::large}) {
        for (const double a : {0.5, 1.0, 2.0, 5.0}) {
            const cmup::ScaledProblem problem = cmup::make_problem(regime, a, cfg);
            const cmup::SeriesSolution series =
                cmup::series_solution(problem, cfg);
            // Compare on [0, x0] where a stationary point exists; otherwise
            // (growing small-branch solutions) cap where |psi| reaches 20.
            double x_max = 0.0;
            try {
                x_max = cmup::first_stationary_point(series, cfg);
            } catch (const cmup::search_error&) {
                const double hard_cap = 2.0 * std::sqrt(a) + 2.0;
                x_max = hard_cap;
                for (double x = 0.0; x < hard_cap; x += 1e-3) {
                    if (std::abs(series.value(x)) >= 20.0) {
                        x_max = x;
                        break;
                    }
                }
            }
            const double step =
                (regime == cmup::Regime::large && a == 5.0) ? 2e-5 : 1e-4;
            const auto prof = oracle::rk4_shoot(problem, x_max, step);
            for (const auto& s : prof.samples)
                worst_sup =
                    std::max(worst_sup, std::abs(s.psi - series.value(s.x)));
        }
    }

    double worst_rel = 0.0;
    const auto compare_lz = [&](const cmup::CmupState& st) {
        const double byparts = oracle::lz_by_parts(st, cfg);
        worst_rel = std::max(worst_rel,
                             std::abs(byparts - st.lz_variance) / st.lz_variance);
    };
    for (const double a : {0.5, 1.0, 2.0, 5.0})
        compare_lz(cmup::build_state(cmup::Regime::large, a, cfg));
    for (const double a : {0.3, 0.45})
        compare_lz(cmup::build_state(cmup::Regime::small, a, cfg));

    const bool pass = worst_sup <= 1e-8 && worst_rel <= 1e-6;
    return {pass, "sup |series - RK4| = " + num(worst_sup) +
                      " (tol 1e-8), max rel lz gap = " + num(worst_rel) +
                      " (tol 1e-6)"};
}

Outcome criterion_kummer() {
    double worst = 0.0;
    for (const double a : {0.5, 1.0}) {
        const cmup::CmupState st = cmup::build_state(cmup::Regime::large, a, cfg);
        const double root = std::sqrt(std::abs(st.lambda));
        double lo = 0.0, hi = 0.0, first = 0.0;
        for (int i = 0; i < 30; ++i) {
            const double phi = 0.1 + (3.0 - 0.1) * i / 29.0;
            const std::complex<double> m = cmup::numerics::kummer_m(
                {0.25, -0.5 * a}, {0.5, 0.0},
                {0.0, root * phi * phi});
            const double closed =
                (std::exp(std::complex<double>(0.0, -0.5 * root * phi * phi)) * m)
                    .real();
            const double ratio = closed / st.series.value(st.x0 * phi / pi);
            if (i == 0) {
                lo = hi = first = ratio;
            } else {
                lo = std::min(lo, ratio);
                hi = std::max(hi, ratio);
            }
        }
        worst = std::max(worst, (hi - lo) / std::abs(first));
    }
    return {worst <= 1e-6, "max relative ratio spread = " + num(worst) +
                               " (tol 1e-6) for large a in {0.5, 1}"};
}

Outcome criterion_printed_constants() {
    const double z = cmup::numerics::first_zero_ai_prime();
    const double ai_z = cmup::numerics::airy_ai(z);
    const double z4 = std::round(z * 1e4) / 1e4;
    const double ai4 = std::round(ai_z * 1e4) / 1e4;
    const bool pass = z4 == -1.0188 && ai4 == 0.5357;
    return {pass, "first zero of Ai' rounds to " + num(z4, "%.4f") +
                      ", Ai there rounds to " + num(ai4, "%.4f")};
}

} // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "flat dividing point", 1.0, criterion_flat},
        {2, "uncertainty relation over the full sweep", 30.0, criterion_bound},
        {3, "mu/lambda limit ratios", 30.0, criterion_ratio_limits},
        {4, "small-branch product ceiling", 30.0, criterion_small_branch},
        {5, "Airy wavefunction agreement", 10.0, criterion_airy_agreement},
        {6, "Airy internal exactness", 5.0, criterion_airy_exactness},
        {7, "unboundedness trend", 30.0, criterion_unboundedness},
        {8, "oracle equivalence", 20.0, criterion_oracle_equivalence},
        {9, "Kummer cross-check", 30.0, criterion_kummer},
        {10, "printed-constant regression", 30.0, criterion_printed_constants},
    };

    bool all_pass = true;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome outcome;
        try {
            outcome = c.body();
        } catch (const std::exception& e) {
            outcome = {false, std::string("exception: ") + e.what()};
        }
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                .count();
        const bool in_budget = seconds < c.budget_seconds;
        const bool pass = outcome.pass && in_budget;
        all_pass = all_pass && pass;
        std::printf("%s criterion %d: %s — %s [%.2f s < %.0f s]\n",
                    pass ? "PASS" : "FAIL", c.index, c.name.c_str(),
                    outcome.detail.c_str(), seconds, c.budget_seconds);
    }
    std::printf(all_pass ? "acceptance: all criteria passed\n"
                         : "acceptance: FAILURES above\n");
    return all_pass ? 0 : 1;
}
