#pragma once

// Constrained minimum-uncertainty states of the angle / angular-momentum
// pair.  The stationary states solve psi'' = (lambda*phi^2 - mu) psi on
// [-pi, pi) with psi'(+-pi) = 0, even and normalized.  In scaled form,
// psi'' = s (x^2/4 - a) psi with s = +1 (small regime) or s = -1 (large
// regime); the first positive stationary point x0 of the scaled solution
// maps to phi = pi and fixes lambda and mu.

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "cmup/config.hpp"
#include "cmup/errors.hpp"
#include "cmup/numerics.hpp"

namespace cmup {

enum class Regime { flat, small, large };

inline const char* regime_name(Regime r) {
    switch (r) {
        case Regime::flat: return "flat";
        case Regime::small: return "small";
        case Regime::large: return "large";
    }
    throw domain_error("regime_name: invalid regime value");
}

inline Regime regime_from_name(const std::string& name) {
    if (name == "flat") return Regime::flat;
    if (name == "small") return Regime::small;
    if (name == "large") return Regime::large;
    throw domain_error("regime_from_name: unknown regime \"" + name +
                       "\" (expected flat, small, or large)");
}

struct ScaledProblem {
    Regime regime = Regime::flat;
    double a = 0.0;   // scaled constraint parameter, |mu| / (2 sqrt(|lambda|))
    int sign = 0;     // s in psi'' = s (x^2/4 - a) psi; 0 for the flat state
};

inline ScaledProblem make_problem(Regime regime, double a,
                                  const ToleranceConfig& cfg) {
    if (!std::isfinite(a)) throw domain_error("make_problem: a must be finite");
    if (a < 0.0) throw domain_error("make_problem: a must be non-negative");
    if (regime == Regime::flat) {
        if (a != 0.0)
            throw domain_error("make_problem: the flat state has a == 0");
        return {Regime::flat, 0.0, 0};
    }
    if (a == 0.0)
        throw domain_error(
            "make_problem: a == 0 is the flat state; use Regime::flat");
    if (a > cfg.a_max)
        throw range_error("make_problem: a = " + std::to_string(a) +
                          " exceeds the configured ceiling a_max = " +
                          std::to_string(cfg.a_max));
    return {regime, a, regime == Regime::small ? +1 : -1};
}

// Even power series psi(x) = sum_k c_k x^{2k} with c_0 = 1, certified so the
// dropped tail at |x| = radius is below the configured tolerance relative to
// the largest term there.
struct SeriesSolution {
    int sign = 0;
    double a = 0.0;
    double radius = 0.0;
    double x0 = 0.0;                   // filled in once located
    int truncation_order = 0;          // largest k retained
    std::vector<double> coefficients;  // c_k multiplying x^{2k}

    double value(double x) const {
        const double u = x * x;
        double acc = 0.0;
        for (std::size_t i = coefficients.size(); i-- > 0;)
            acc = acc * u + coefficients[i];
        return acc;
    }

    double derivative(double x) const {
        const double u = x * x;
        double acc = 0.0;
        for (std::size_t i = coefficients.size(); i-- > 1;)
            acc = acc * u + static_cast<double>(2 * i) * coefficients[i];
        return x * acc;
    }

    double second_derivative(double x) const {
        const double u = x * x;
        double acc = 0.0;
        for (std::size_t i = coefficients.size(); i-- > 1;) {
            const double p = static_cast<double>(2 * i);
            acc = acc * u + p * (p - 1.0) * coefficients[i];
        }
        return acc;
    }
};

inline SeriesSolution series_solution(const ScaledProblem& problem,
                                      double tail_tol) {
    if (problem.regime == Regime::flat)
        throw domain_error("series_solution: the flat state has no series");
    if (!(tail_tol > 0.0))
        throw domain_error("series_solution: tail tolerance must be positive");
    const double a = problem.a;
    const double s = static_cast<double>(problem.sign);
    // Radius 1.5x beyond the crude stationary-point estimate 2 sqrt(a) + 2.
    const double radius = std::max(12.0, 1.5 * (2.0 * std::sqrt(a) + 2.0));
    const double log_r2 = 2.0 * std::log(radius);
    const double log_tol = std::log(tail_tol);

    std::vector<double> c{1.0, -s * a / 2.0};
    double log_max = std::max(0.0, std::log(std::abs(c[1])) + log_r2);
    int streak = 0;
    constexpr int cap = 4000;
    for (int k = 1; k < cap; ++k) {
        const double next =
            s * (c[k - 1] / 4.0 - a * c[k]) /
            static_cast<double>((2 * k + 2) * (2 * k + 1));
        c.push_back(next);
        // Track term sizes at the certification radius in log space; the
        // raw terms overflow a double well before the sum converges.
        const double log_term =
            std::log(std::abs(next)) + static_cast<double>(k + 1) * log_r2;
        log_max = std::max(log_max, log_term);
        if (log_term < log_max + log_tol) {
            if (++streak >= 3) {
                SeriesSolution sol;
                sol.sign = problem.sign;
                sol.a = a;
                sol.radius = radius;
                sol.truncation_order = k + 1;
                sol.coefficients = std::move(c);
                return sol;
            }
        } else {
            streak = 0;
        }
    }
    throw convergence_error(
        "series_solution: no certified tail after 4000 terms (a = " +
        std::to_string(a) + ")");
}

inline SeriesSolution series_solution(const ScaledProblem& problem,
                                      const ToleranceConfig& cfg) {
    return series_solution(problem, cfg.series_tail_tol);
}

// First positive zero of psi'.  psi' keeps the sign of -s on (0, x0), so a
// sign change against that marks the bracket.  The scan is geometric near
// zero (x0 ~ sqrt(12 a) for tiny a) and linear afterwards.
inline double first_stationary_point(const SeriesSolution& series,
                                     double root_tol = 1e-12) {
    const double sigma0 = -static_cast<double>(series.sign);
    const double scan_max = series.radius / 1.5;
    const double step = std::min(0.05, 0.5 / std::sqrt(1.0 + series.a));

    double prev = 0.0;
    double x = 1e-7;
    while (x < scan_max) {
        const double d = series.derivative(x);
        if (d == 0.0) return x;
        if (d * sigma0 < 0.0) {
            auto f = [&series](double t) { return series.derivative(t); };
            return numerics::find_root(f, prev, x, root_tol);
        }
        prev = x;
        x = x < 0.5 ? x * 1.5 : x + step;
    }
    throw search_error(
        "first_stationary_point: psi' has no sign change up to x = " +
        std::to_string(prev) + " (a = " + std::to_string(series.a) +
        ", sign = " + std::to_string(series.sign) + ")");
}

inline double first_stationary_point(const SeriesSolution& series,
                                     const ToleranceConfig& cfg) {
    return first_stationary_point(series, cfg.root_tol);
}

struct CmupState {
    ScaledProblem problem;
    SeriesSolution series;
    double x0 = 0.0;
    double lambda = 0.0;  // signed: positive in the small regime
    double mu = 0.0;      // signed: mu = s * a * x0^2 / pi^2
    double norm = 0.0;    // N with psi_phi(phi) = N psi(x0 |phi| / pi)
    double phi_variance = 0.0;
    double lz_variance = 0.0;
    double product = 0.0;
    double p_boundary = 0.0;
    double bound = 0.0;

    double delta_phi() const { return std::sqrt(phi_variance); }
    double delta_lz() const { return std::sqrt(lz_variance); }
};

inline CmupState build_state(const ScaledProblem& input,
                             const ToleranceConfig& cfg) {
    using numerics::pi;
    // Revalidate so hand-built problems pass through the same checks.
    const ScaledProblem problem = make_problem(input.regime, input.a, cfg);
    const Regime regime = problem.regime;
    const double a = problem.a;

    if (regime == Regime::flat) {
        CmupState st;
        st.problem = problem;
        st.series.coefficients = {1.0};
        st.norm = 1.0 / std::sqrt(2.0 * pi);
        st.phi_variance = pi * pi / 3.0;
        st.lz_variance = 0.0;
        st.product = 0.0;
        st.p_boundary = 1.0 / (2.0 * pi);
        st.bound = 0.0;
        return st;
    }

    if (regime == Regime::small && a >= cfg.a_small_max)
        throw range_error(
            "build_state: small-regime a = " + std::to_string(a) +
            " is at or above a_small_max = " + std::to_string(cfg.a_small_max) +
            "; the branch ends at the Gaussian limit a = 1/2");

    CmupState st;
    st.problem = problem;
    st.series = series_solution(problem, cfg);
    st.x0 = first_stationary_point(st.series, cfg);
    st.series.x0 = st.x0;

    // A ground state has no node: reject solutions that dip through zero
    // before the stationary point.
    for (int i = 1; i <= 96; ++i) {
        const double x = st.x0 * static_cast<double>(i) / 96.0;
        if (st.series.value(x) <= 0.0)
            throw range_error(
                "build_state: psi has a node inside (0, x0]; nodal "
                "pseudo-state rejected (a = " + std::to_string(a) + ")");
    }

    const double s = static_cast<double>(problem.sign);
    const double lambda_mag = std::pow(st.x0, 4) / (4.0 * std::pow(pi, 4));
    st.lambda = s * lambda_mag;
    st.mu = s * 2.0 * a * std::sqrt(lambda_mag);

    const numerics::QuadratureRule rule{cfg.quad_nodes, cfg.quad_panels};
    const auto psi2 = [&st](double x) {
        const double v = st.series.value(x);
        return v * v;
    };
    const auto x2psi2 = [&st](double x) {
        const double v = st.series.value(x);
        return x * x * v * v;
    };
    const double s0 = numerics::integrate(psi2, 0.0, st.x0, rule);
    const double s2 = numerics::integrate(x2psi2, 0.0, st.x0, rule);
    if (!(s0 > 0.0))
        throw consistency_error("build_state: non-positive norm integral");

    st.norm = std::sqrt(st.x0 / (2.0 * pi * s0));
    st.phi_variance = pi * pi * s2 / (st.x0 * st.x0 * s0);

    const double lz2 = st.mu - st.lambda * st.phi_variance;
    if (lz2 < -1e-10)
        throw consistency_error(
            "build_state: negative angular-momentum variance " +
            std::to_string(lz2));
    st.lz_variance = std::max(0.0, lz2);
    st.product = std::sqrt(st.phi_variance * st.lz_variance);

    const double boundary_value = st.series.value(st.x0);
    st.p_boundary = st.norm * st.norm * boundary_value * boundary_value;
    st.bound = 0.5 * std::abs(1.0 - 2.0 * pi * st.p_boundary);
    if (st.product < st.bound - 1e-8)
        throw consistency_error(
            "build_state: uncertainty product " + std::to_string(st.product) +
            " fell below the state-dependent bound " +
            std::to_string(st.bound));
    return st;
}

inline CmupState build_state(Regime regime, double a,
                             const ToleranceConfig& cfg) {
    return build_state(make_problem(regime, a, cfg), cfg);
}

// Normalized wavefunction in the angle variable, defined on |phi| <= pi.
inline double wavefunction_phi(const CmupState& state, double phi) {
    using numerics::pi;
    if (!std::isfinite(phi) || std::abs(phi) > pi + 1e-12)
        throw domain_error("wavefunction_phi: phi outside [-pi, pi]");
    if (state.problem.regime == Regime::flat) return state.norm;
    const double x = state.x0 * std::min(std::abs(phi), pi) / pi;
    return state.norm * state.series.value(x);
}

// Signed sweep control: c < 0 is the small regime with a = -c, c = 0 the
// flat state, c > 0 the large regime with a = c.
inline CmupState state_from_control(double c, const ToleranceConfig& cfg) {
    if (!std::isfinite(c))
        throw domain_error("state_from_control: control must be finite");
    if (std::abs(c) < 1e-12) return build_state(Regime::flat, 0.0, cfg);
    if (c < 0.0) return build_state(Regime::small, -c, cfg);
    return build_state(Regime::large, c, cfg);
}

inline CmupState solve_for_delta_phi(double target, double tol,
                                     const ToleranceConfig& cfg) {
    using numerics::pi;
    if (!std::isfinite(target) || target <= 0.0)
        throw domain_error("solve_for_delta_phi: target must be positive");
    if (!std::isfinite(tol) || tol <= 0.0)
        throw domain_error("solve_for_delta_phi: tol must be positive");

    const double flat_value = pi / std::sqrt(3.0);
    if (std::abs(target - flat_value) <= tol)
        return build_state(Regime::flat, 0.0, cfg);

    double c_lo = -cfg.a_small_max * (1.0 - 1e-12);
    double c_hi = cfg.a_max;
    CmupState lo_state = state_from_control(c_lo, cfg);
    CmupState hi_state = state_from_control(c_hi, cfg);
    double f_lo = lo_state.delta_phi() - target;
    double f_hi = hi_state.delta_phi() - target;
    if (std::abs(f_lo) <= tol) return lo_state;
    if (std::abs(f_hi) <= tol) return hi_state;
    if (f_lo > 0.0 || f_hi < 0.0)
        throw range_error(
            "solve_for_delta_phi: target " + std::to_string(target) +
            " outside the achievable range [" +
            std::to_string(lo_state.delta_phi()) + ", " +
            std::to_string(hi_state.delta_phi()) + "]");

    // delta_phi grows monotonically with the control, so bracket and then
    // alternate secant with bisection exactly as find_root does.
    for (int it = 0; it < 200; ++it) {
        double c;
        if (it % 2 == 0 && f_hi != f_lo) {
            c = c_hi - f_hi * (c_hi - c_lo) / (f_hi - f_lo);
            const double guard = 1e-3 * (c_hi - c_lo);
            if (!(c > c_lo + guard && c < c_hi - guard))
                c = 0.5 * (c_lo + c_hi);
        } else {
            c = 0.5 * (c_lo + c_hi);
        }
        CmupState st = state_from_control(c, cfg);
        const double f = st.delta_phi() - target;
        if (std::abs(f) <= tol) return st;
        if (f < 0.0) {
            c_lo = c;
            f_lo = f;
        } else {
            c_hi = c;
            f_hi = f;
        }
    }
    throw convergence_error(
        "solve_for_delta_phi: no convergence to |delta_phi - " +
        std::to_string(target) + "| <= " + std::to_string(tol) +
        " after 200 iterations");
}

struct SweepRecord {
    double control = 0.0;
    double a = 0.0;
    Regime regime = Regime::flat;
    double x0 = 0.0;
    double lambda = 0.0;
    double mu = 0.0;
    double mu_over_lambda = 0.0;
    double delta_phi = 0.0;
    double delta_lz = 0.0;
    double product = 0.0;
    double bound = 0.0;
    std::string status = "ok";
};

inline std::vector<SweepRecord> sweep(double c_lo, double c_hi, int points,
                                      const ToleranceConfig& cfg) {
    using numerics::pi;
    if (!std::isfinite(c_lo) || !std::isfinite(c_hi))
        throw domain_error("sweep: control bounds must be finite");
    if (!(c_lo < c_hi)) throw domain_error("sweep: needs c_lo < c_hi");
    if (points < 2) throw domain_error("sweep: points must be >= 2");

    const double nan = std::numeric_limits<double>::quiet_NaN();
    std::vector<SweepRecord> rows;
    rows.reserve(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) {
        const double c = c_lo + (c_hi - c_lo) * static_cast<double>(i) /
                                    static_cast<double>(points - 1);
        SweepRecord row;
        row.control = c;
        row.a = std::abs(c) < 1e-12 ? 0.0 : std::abs(c);
        row.regime = std::abs(c) < 1e-12
                         ? Regime::flat
                         : (c < 0.0 ? Regime::small : Regime::large);
        try {
            const CmupState st = state_from_control(c, cfg);
            row.x0 = st.x0;
            row.lambda = st.lambda;
            row.mu = st.mu;
            // The flat state is the lambda -> 0 limit along either branch,
            // where mu/lambda -> pi^2/3 continuously.
            row.mu_over_lambda = st.problem.regime == Regime::flat
                                     ? pi * pi / 3.0
                                     : st.mu / st.lambda;
            row.delta_phi = st.delta_phi();
            row.delta_lz = st.delta_lz();
            row.product = st.product;
            row.bound = st.bound;
        } catch (const search_error&) {
            row.status = "no-stationary-point";
        } catch (const range_error&) {
            row.status = "outside-branch";
        } catch (const consistency_error&) {
            row.status = "inconsistent";
        } catch (const convergence_error&) {
            row.status = "no-convergence";
        }
        if (row.status != "ok") {
            row.x0 = row.lambda = row.mu = row.mu_over_lambda = nan;
            row.delta_phi = row.delta_lz = row.product = row.bound = nan;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace cmup
