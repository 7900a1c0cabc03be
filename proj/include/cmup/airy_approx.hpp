#pragma once

// Closed-form Airy approximation of the large-uncertainty states near
// delta_phi -> pi.  Around the turning point r = sqrt(mu/lambda) the scaled
// equation linearizes and psi(phi) = C Ai(-k (phi - r)) with
// k = (2 sqrt(mu lambda))^(1/3); the reflecting boundary psi'(pi) = 0 pins
// k (pi - r) to the first zero of Ai'.  This module works throughout in the
// magnitudes |lambda|, |mu|; signs only matter when quoting the variance
// identity, where both multipliers are negative on this branch.

#include <cmath>
#include <string>

#include "cmup/errors.hpp"
#include "cmup/numerics.hpp"

namespace cmup::airyapprox {

// |a1'|, the magnitude of the first zero of Ai'.
inline double first_zero_magnitude() {
    static const double ap = -numerics::first_zero_ai_prime();
    return ap;
}

// Below this lambda the boundary condition k (pi - r) = |a1'| has no root
// with r in (0, pi): the peak of (2 lambda r)^(1/3) (pi - r) over r sits at
// r = pi/4, which gives the closed form 2 (4 |a1'| / (3 pi))^3 / pi.
inline double validity_threshold_lambda() {
    const double ap = first_zero_magnitude();
    const double q = 4.0 * ap / (3.0 * numerics::pi);
    return 2.0 * q * q * q / numerics::pi;
}

inline double ratio_from_lambda_exact(double lambda_mag) {
    using numerics::pi;
    if (!std::isfinite(lambda_mag) || lambda_mag <= 0.0)
        throw domain_error("ratio_from_lambda_exact: lambda must be positive");
    const double ap = first_zero_magnitude();
    const auto g = [lambda_mag, ap](double r) {
        return std::cbrt(2.0 * lambda_mag * r) * (pi - r) - ap;
    };
    // Of the two roots the one closest to pi lies right of the peak at pi/4.
    if (g(pi / 4.0) <= 0.0)
        throw range_error(
            "ratio_from_lambda_exact: lambda = " + std::to_string(lambda_mag) +
            " is below the validity threshold " +
            std::to_string(validity_threshold_lambda()) +
            "; no turning point with ratio in (0, pi)");
    return numerics::find_root(g, pi / 4.0, pi, 1e-14);
}

inline double ratio_from_lambda_approx(double lambda_mag) {
    using numerics::pi;
    if (!std::isfinite(lambda_mag) || lambda_mag <= 0.0)
        throw domain_error("ratio_from_lambda_approx: lambda must be positive");
    return pi - std::cbrt(first_zero_magnitude() / (2.0 * lambda_mag * pi));
}

inline double normalization_constant(double lambda_mag, double mu_mag) {
    if (!(lambda_mag > 0.0) || !(mu_mag > 0.0))
        throw domain_error("normalization_constant: needs positive lambda, mu");
    const double ap = first_zero_magnitude();
    const double ai_at_zero = numerics::airy_ai(-ap);
    return std::pow(mu_mag * lambda_mag, 1.0 / 12.0) /
           (std::sqrt(ap) * ai_at_zero * std::cbrt(2.0));
}

inline double delta_phi_sq_analytic(double lambda_mag, double mu_mag) {
    if (!(lambda_mag > 0.0) || !(mu_mag > 0.0))
        throw domain_error("delta_phi_sq_analytic: needs positive lambda, mu");
    const double ap = first_zero_magnitude();
    const double k = std::cbrt(2.0 * std::sqrt(mu_mag * lambda_mag));
    const double r = std::sqrt(mu_mag / lambda_mag);
    return mu_mag / lambda_mag + (2.0 / 3.0) * ap * r / k +
           (1.0 / 5.0) * (1.0 / ap + ap * ap) / (k * k);
}

struct AiryState {
    double lambda_mag = 0.0;
    double mu_mag = 0.0;
    double ratio_sqrt = 0.0;  // sqrt(mu/lambda), the turning-point angle
    double c_norm = 0.0;
    double k = 0.0;           // (2 sqrt(mu lambda))^(1/3)
    double phi_variance = 0.0;
};

inline AiryState make_airy_state(double lambda_mag) {
    AiryState st;
    st.lambda_mag = lambda_mag;
    st.ratio_sqrt = ratio_from_lambda_exact(lambda_mag);
    st.mu_mag = lambda_mag * st.ratio_sqrt * st.ratio_sqrt;
    st.k = std::cbrt(2.0 * std::sqrt(st.mu_mag * lambda_mag));
    st.c_norm = normalization_constant(lambda_mag, st.mu_mag);
    st.phi_variance = delta_phi_sq_analytic(lambda_mag, st.mu_mag);
    return st;
}

inline double airy_wavefunction(const AiryState& state, double phi) {
    using numerics::pi;
    if (!std::isfinite(phi) || std::abs(phi) > pi + 1e-12)
        throw domain_error("airy_wavefunction: phi outside [-pi, pi]");
    const double p = std::min(std::abs(phi), pi);
    return state.c_norm *
           numerics::airy_ai(-state.k * (p - state.ratio_sqrt));
}

struct AiryProduct {
    double lambda_mag = 0.0;
    double mu_mag = 0.0;
    double ratio_sqrt = 0.0;
    double c_norm = 0.0;
    double delta_phi = 0.0;
    double lz_variance = 0.0;
    double product = 0.0;
    double p_boundary = 0.0;
    double bound = 0.0;
};

inline AiryProduct airy_uncertainty_product(double lambda_mag) {
    using numerics::pi;
    const AiryState st = make_airy_state(lambda_mag);
    AiryProduct out;
    out.lambda_mag = st.lambda_mag;
    out.mu_mag = st.mu_mag;
    out.ratio_sqrt = st.ratio_sqrt;
    out.c_norm = st.c_norm;
    out.delta_phi = std::sqrt(st.phi_variance);
    // Signed multipliers are both negative on this branch, so the variance
    // mu - lambda <phi^2> reads |lambda| <phi^2> - |mu| in magnitudes.
    const double lz2 = lambda_mag * st.phi_variance - st.mu_mag;
    if (lz2 <= 0.0)
        throw range_error(
            "airy_uncertainty_product: non-positive angular-momentum "
            "variance at lambda = " + std::to_string(lambda_mag) +
            "; below the approximation's regime");
    out.lz_variance = lz2;
    out.product = out.delta_phi * std::sqrt(lz2);
    const double psi_pi = airy_wavefunction(st, pi);
    out.p_boundary = psi_pi * psi_pi;
    out.bound = 0.5 * std::abs(1.0 - 2.0 * pi * out.p_boundary);
    return out;
}

struct AlbrightPrimitives {
    double p0 = 0.0;  // primitive of Ai^2
    double p1 = 0.0;  // primitive of t Ai^2
    double p2 = 0.0;  // primitive of t^2 Ai^2
};

// Closed-form primitives built from Ai'' = t Ai; each is certified by the
// differentiation tests in the suite.
inline AlbrightPrimitives albright_primitives(double t) {
    if (!std::isfinite(t))
        throw domain_error("albright_primitives: t must be finite");
    const auto [ai, aip] = numerics::airy_ai_pair(t);
    AlbrightPrimitives out;
    out.p0 = t * ai * ai - aip * aip;
    out.p1 = (t * t * ai * ai - t * aip * aip + ai * aip) / 3.0;
    out.p2 =
        (t * t * t * ai * ai - t * t * aip * aip + 2.0 * t * ai * aip -
         ai * ai) / 5.0;
    return out;
}

}  // namespace cmup::airyapprox
