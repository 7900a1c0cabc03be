#pragma once

// Brute-force verifiers kept deliberately independent of the solver's
// evaluation paths: RK4 shooting for the scaled ODE, the integration-by-parts
// form of the angular-momentum variance, and direct moment quadratures.

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "cmup/config.hpp"
#include "cmup/errors.hpp"
#include "cmup/numerics.hpp"
#include "cmup/solver.hpp"

namespace cmup::oracle {

struct ShootingProfile {
    struct Sample {
        double x = 0.0;
        double psi = 0.0;
        double dpsi = 0.0;
    };
    double step = 0.0;
    std::vector<Sample> samples;
};

// Classical fixed-step RK4 for psi'' = s (x^2/4 - a) psi, psi(0)=1, psi'(0)=0.
inline ShootingProfile rk4_shoot(const ScaledProblem& problem, double x_max,
                                 double step) {
    if (problem.regime == Regime::flat)
        throw domain_error("rk4_shoot: the flat state needs no shooting");
    if (!std::isfinite(x_max) || x_max <= 0.0)
        throw domain_error("rk4_shoot: x_max must be positive");
    if (!std::isfinite(step) || step <= 0.0)
        throw domain_error("rk4_shoot: step must be positive");

    const double s = static_cast<double>(problem.sign);
    const double a = problem.a;
    const auto rhs = [s, a](double x, double psi) {
        return s * (x * x / 4.0 - a) * psi;
    };

    const long n = std::lround(std::ceil(x_max / step - 1e-9));
    const double h = x_max / static_cast<double>(n);
    const long stride = std::max(1L, std::lround(0.01 / h));

    ShootingProfile out;
    out.step = h;
    out.samples.push_back({0.0, 1.0, 0.0});
    double y = 1.0;   // psi
    double v = 0.0;   // psi'
    for (long i = 0; i < n; ++i) {
        const double x = h * static_cast<double>(i);
        const double k1y = v;
        const double k1v = rhs(x, y);
        const double k2y = v + 0.5 * h * k1v;
        const double k2v = rhs(x + 0.5 * h, y + 0.5 * h * k1y);
        const double k3y = v + 0.5 * h * k2v;
        const double k3v = rhs(x + 0.5 * h, y + 0.5 * h * k2y);
        const double k4y = v + h * k3v;
        const double k4v = rhs(x + h, y + h * k3y);
        y += h / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
        v += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
        if (std::abs(y) > 1e280 || !std::isfinite(y) || !std::isfinite(v))
            throw evaluation_error(
                "rk4_shoot: solution overflow; last valid x = " +
                std::to_string(x));
        const double x_next = h * static_cast<double>(i + 1);
        if ((i + 1) % stride == 0 || i + 1 == n)
            out.samples.push_back({x_next, y, v});
    }
    return out;
}

// Angular-momentum variance as the integration-by-parts form
// int_{-pi}^{pi} psi'(phi)^2 dphi, evaluated with a local differentiated
// series (no SeriesSolution methods) at doubled quadrature resolution.
inline double lz_by_parts(const CmupState& state, const ToleranceConfig& cfg) {
    if (state.problem.regime == Regime::flat) return 0.0;
    const std::vector<double>& c = state.series.coefficients;
    const auto dpsi = [&c](double x) {
        const double u = x * x;
        double acc = 0.0;
        for (std::size_t i = c.size(); i-- > 1;)
            acc = acc * u + 2.0 * static_cast<double>(i) * c[i];
        return x * acc;
    };
    const numerics::QuadratureRule rule{2 * cfg.quad_nodes,
                                        2 * cfg.quad_panels};
    const double s1 = numerics::integrate(
        [&dpsi](double x) {
            const double d = dpsi(x);
            return d * d;
        },
        0.0, state.x0, rule);
    return 2.0 * state.norm * state.norm * (state.x0 / numerics::pi) * s1;
}

inline double lz_by_parts(const CmupState& state) {
    return lz_by_parts(state, ToleranceConfig{});
}

// int phi^power profile(phi)^2 dphi at doubled resolution; power 0 checks
// normalizations, power 2 checks variances.
template <class Profile>
double moment_quadrature(Profile&& profile, double lo, double hi, int power,
                         const ToleranceConfig& cfg) {
    if (power != 0 && power != 2)
        throw domain_error("moment_quadrature: power must be 0 or 2");
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi))
        throw domain_error("moment_quadrature: needs finite lo < hi");
    const numerics::QuadratureRule rule{2 * cfg.quad_nodes,
                                        2 * cfg.quad_panels};
    return numerics::integrate(
        [&profile, power](double phi) {
            const double v = profile(phi);
            const double w = power == 0 ? 1.0 : phi * phi;
            return w * v * v;
        },
        lo, hi, rule);
}

template <class Profile>
double moment_quadrature(Profile&& profile, double lo, double hi, int power) {
    return moment_quadrature(std::forward<Profile>(profile), lo, hi, power,
                             ToleranceConfig{});
}

}  // namespace cmup::oracle
