#pragma once

// Self-contained numerics toolkit: Airy Ai and Ai', the confluent
// hypergeometric (Kummer) function M for complex arguments, composite
// Gauss-Legendre quadrature, and bracketed root finding.  No external
// mathematical dependencies.

#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>
#include <utility>
#include <vector>

#include "cmup/errors.hpp"

namespace cmup::numerics {

inline constexpr double pi = std::numbers::pi;

struct AiryPair {
    double ai;
    double aip;
};

namespace detail {

inline constexpr double ai_at_0 = 0.35502805388781723926;   // Ai(0) = 3^(-2/3)/Gamma(2/3)
inline constexpr double aip_at_0 = -0.25881940379280679841; // Ai'(0) = -3^(-1/3)/Gamma(1/3)

// Maclaurin evaluation through the two standard auxiliary series f, g of the
// Airy ODE (f(0)=1, f'(0)=0 and g(0)=0, g'(0)=1), plus their derivatives.
inline AiryPair ai_maclaurin(double y) {
    const double y3 = y * y * y;
    double f = 1.0, tf = 1.0;          // terms of f:  tf_{k+1} = tf_k y^3/((3k+2)(3k+3))
    double g = y, tg = y;              // terms of g:  tg_{k+1} = tg_k y^3/((3k+3)(3k+4))
    double fp = 0.5 * y * y, tp = fp;  // terms of f': tp_{k+1} = tp_k y^3/((3k+3)(3k+5))
    double gp = 1.0, tq = 1.0;         // terms of g': tq_{k+1} = tq_k y^3/((3k+1)(3k+3))
    for (int k = 0; k < 200; ++k) {
        tf *= y3 / double((3 * k + 2) * (3 * k + 3));
        tg *= y3 / double((3 * k + 3) * (3 * k + 4));
        tp *= y3 / double((3 * k + 3) * (3 * k + 5));
        tq *= y3 / double((3 * k + 1) * (3 * k + 3));
        f += tf;
        g += tg;
        fp += tp;
        gp += tq;
        const double scale = std::abs(f) + std::abs(g) + 1.0;
        if (std::abs(tf) < 1e-18 * scale && std::abs(tg) < 1e-18 * scale &&
            std::abs(tp) < 1e-18 * scale && std::abs(tq) < 1e-18 * scale)
            break;
    }
    return {ai_at_0 * f + aip_at_0 * g, ai_at_0 * fp + aip_at_0 * gp};
}

// One Taylor step for w'' = (m + u) w recentred at m: given w(m), w'(m),
// returns w(m+h), w'(m+h) via (k+2)(k+1) d_{k+2} = m d_k + d_{k-1}.
inline AiryPair ai_taylor_step(double m, double value, double slope, double h) {
    double dkm1 = 0.0, dk = value, dkp1 = slope; // d_{k-1}, d_k, d_{k+1}
    double hk = 1.0;                             // h^k
    double w = value, dw = 0.0;
    for (int k = 0; k < 80; ++k) {
        const double dkp2 = (m * dk + dkm1) / double((k + 2) * (k + 1));
        // accumulate the k+1 term of w and the derivative term (k+1) d_{k+1} h^k
        dw += double(k + 1) * dkp1 * hk;
        hk *= h;
        w += dkp1 * hk;
        dkm1 = dk;
        dk = dkp1;
        dkp1 = dkp2;
        if (std::abs(dkp1 * hk * h) < 1e-20 * (std::abs(w) + 1.0) &&
            std::abs(dk * hk) < 1e-20 * (std::abs(w) + 1.0))
            break;
    }
    return {w, dw};
}

// Asymptotic expansions for |y| >= 8 (Poincare series in zeta = (2/3)|y|^(3/2)).
inline AiryPair ai_asymptotic(double y) {
    const double t = std::abs(y);
    const double zeta = (2.0 / 3.0) * t * std::sqrt(t);
    const double root4 = std::pow(t, 0.25);
    const double sqrt_pi = std::sqrt(pi);
    if (y > 0.0) {
        if (zeta > 700.0) return {0.0, 0.0}; // e^(-zeta) underflows well before |y| = 200
        double u = 1.0, v = 1.0;
        double s = 1.0, sp = 1.0;
        double zk = 1.0; // (-1)^k zeta^(-k)
        double prev = 1.0;
        for (int k = 0; k < 40; ++k) {
            u *= double((6 * k + 1) * (6 * k + 3) * (6 * k + 5)) / (216.0 * double(k + 1) * double(2 * k + 1));
            v = -u * double(6 * k + 7) / double(6 * k + 5);
            zk /= -zeta;
            const double term = u * zk;
            if (std::abs(term) >= prev) break; // asymptotic tail started growing
            s += term;
            sp += v * zk;
            prev = std::abs(term);
            if (prev < 1e-18) break;
        }
        const double damp = std::exp(-zeta);
        return {damp * s / (2.0 * sqrt_pi * root4), -damp * sp * root4 / (2.0 * sqrt_pi)};
    }
    // oscillatory side: Ai(-t) via the phase chi = zeta - pi/4 and even/odd splits
    double u = 1.0, v = 1.0;
    double p = 1.0, q = 0.0, pv = 1.0, qv = 0.0;
    double zk = 1.0; // zeta^(-k) with the (-1)^floor(k/2)-style signs folded in below
    double prev = 1.0;
    for (int k = 0; k < 40; ++k) {
        u *= double((6 * k + 1) * (6 * k + 3) * (6 * k + 5)) / (216.0 * double(k + 1) * double(2 * k + 1));
        v = -u * double(6 * k + 7) / double(6 * k + 5);
        zk /= zeta;
        const double term = u * zk;
        if (std::abs(term) >= prev) break;
        // k+1 is the order of this term; odd orders feed Q, even feed P
        const int order = k + 1;
        if (order % 2 == 1) {
            const double sq = (order % 4 == 1) ? 1.0 : -1.0; // +u1, -u3, +u5, ...
            q += sq * term;
            qv += sq * v * zk;
        } else {
            const double sp2 = (order % 4 == 2) ? -1.0 : 1.0; // -u2, +u4, -u6, ...
            p += sp2 * term;
            pv += sp2 * v * zk;
        }
        prev = std::abs(term);
        if (prev < 1e-18) break;
    }
    const double chi = zeta - 0.25 * pi;
    const double c = std::cos(chi), s = std::sin(chi);
    return {(c * p + s * q) / (sqrt_pi * root4), root4 * (s * pv - c * qv) / sqrt_pi};
}

// Taylor march between the Maclaurin and asymptotic zones.  On the decaying
// side the march runs inward from the asymptotic anchor at +8 (the stable
// direction for the recessive solution); on the oscillatory side it runs
// outward from the Maclaurin anchor at -5.
inline AiryPair ai_march(double y) {
    double anchor;
    AiryPair state{};
    if (y > 0.0) {
        anchor = 8.0;
        state = ai_asymptotic(anchor);
    } else {
        anchor = -5.0;
        state = ai_maclaurin(anchor);
    }
    const double rem = y - anchor;
    const int nstep = std::max(1, int(std::ceil(std::abs(rem) / 1.0)));
    const double h = rem / nstep;
    double m = anchor;
    for (int i = 0; i < nstep; ++i) {
        state = ai_taylor_step(m, state.ai, state.aip, h);
        m += h;
    }
    return state;
}

} // namespace detail

// Ai(y) and Ai'(y) together; |y| <= 200, absolute error <= 1e-12 for |y| <= 10.
inline AiryPair airy_ai_pair(double y) {
    if (!std::isfinite(y)) throw domain_error("airy_ai: non-finite argument");
    if (std::abs(y) > 200.0) throw domain_error("airy_ai: |y| > 200 outside the supported range");
    if (std::abs(y) <= 5.0) return detail::ai_maclaurin(y);
    if (std::abs(y) < 8.0) return detail::ai_march(y);
    return detail::ai_asymptotic(y);
}

inline double airy_ai(double y) { return airy_ai_pair(y).ai; }
inline double airy_ai_prime(double y) { return airy_ai_pair(y).aip; }

// Bracketed root finding: bisection with secant refinement.  The returned
// point always lies inside the initial bracket; final bracket width <= tol.
template <class F>
double find_root(F&& f, double lo, double hi, double tol) {
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi))
        throw domain_error("find_root: invalid interval");
    if (!(tol > 0.0)) throw domain_error("find_root: tol must be > 0");
    double flo = f(lo), fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0)) throw bracket_error("find_root: no sign change over the interval");
    bool bisect = false; // alternate secant/bisection so the width provably halves
    for (int it = 0; it < 400 && hi - lo > tol; ++it, bisect = !bisect) {
        double cand;
        if (bisect) {
            cand = 0.5 * (lo + hi);
        } else {
            cand = lo - flo * (hi - lo) / (fhi - flo);
            const double w = hi - lo;
            if (!(cand > lo + 1e-3 * w && cand < hi - 1e-3 * w)) cand = 0.5 * (lo + hi);
        }
        const double fc = f(cand);
        if (fc == 0.0) return cand;
        if ((fc > 0.0) == (flo > 0.0)) {
            lo = cand;
            flo = fc;
        } else {
            hi = cand;
            fhi = fc;
        }
    }
    return std::abs(flo) <= std::abs(fhi) ? lo : hi;
}

// First (largest) negative zero of Ai'; located once by bracketed root
// finding, then cached (immutable after initialization).
inline double first_zero_ai_prime() {
    static const double zero = find_root([](double y) { return airy_ai_prime(y); }, -1.2, -0.9, 1e-14);
    return zero;
}

// Kummer confluent hypergeometric M(a, b, z) by direct series summation.
inline std::complex<double> kummer_m(std::complex<double> a, std::complex<double> b, std::complex<double> z) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag()) || !std::isfinite(b.real()) ||
        !std::isfinite(b.imag()) || !std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw domain_error("kummer_m: non-finite argument");
    if (b.imag() == 0.0 && b.real() <= 0.0 && b.real() == std::floor(b.real()))
        throw domain_error("kummer_m: b is a non-positive integer (pole of M)");
    if (std::abs(z) > 50.0)
        throw domain_error("kummer_m: |z| > 50 outside the series convergence envelope");
    std::complex<double> sum = 1.0, term = 1.0;
    int small_streak = 0;
    for (int n = 0; n < 10000; ++n) {
        term *= (a + double(n)) * z / ((b + double(n)) * double(n + 1));
        sum += term;
        if (std::abs(term) <= 1e-15 * std::abs(sum)) {
            if (++small_streak >= 2) return sum;
        } else {
            small_streak = 0;
        }
    }
    throw convergence_error("kummer_m: series did not converge within 10000 terms");
}

struct QuadratureRule {
    int node_count_per_panel = 32;
    int panel_count = 64;
};

namespace detail {

// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration on P_n.
// Cheap relative to integrand work, so computed per call: keeps every
// operation a pure function with no shared mutable state.
inline std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n) {
    std::vector<double> x(n), w(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double xi = std::cos(pi * (double(i) + 0.75) / (double(n) + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = xi;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * xi * p1 - (k - 1.0) * p0) / double(k);
                p0 = p1;
                p1 = p2;
            }
            pp = double(n) * (xi * p1 - p0) / (xi * xi - 1.0);
            const double dx = p1 / pp;
            xi -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        x[i] = -xi;
        x[n - 1 - i] = xi;
        w[i] = w[n - 1 - i] = 2.0 / ((1.0 - xi * xi) * pp * pp);
    }
    return {x, w};
}

} // namespace detail

// Composite Gauss-Legendre quadrature over [lo, hi].
template <class F>
double integrate(F&& f, double lo, double hi, QuadratureRule rule = {}) {
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo <= hi))
        throw domain_error("integrate: invalid interval");
    if (rule.node_count_per_panel < 2 || rule.panel_count < 1)
        throw domain_error("integrate: rule needs >= 2 nodes per panel and >= 1 panel");
    if (lo == hi) return 0.0;
    const auto [xs, ws] = detail::gauss_legendre(rule.node_count_per_panel);
    const double width = (hi - lo) / rule.panel_count;
    double total = 0.0;
    for (int p = 0; p < rule.panel_count; ++p) {
        const double center = lo + (double(p) + 0.5) * width;
        double panel = 0.0;
        for (int i = 0; i < rule.node_count_per_panel; ++i) {
            const double xi = center + 0.5 * width * xs[i];
            const double fx = f(xi);
            if (!std::isfinite(fx)) {
                std::ostringstream msg;
                msg.precision(17);
                msg << "integrate: non-finite sample at x = " << xi;
                throw evaluation_error(msg.str());
            }
            panel += ws[i] * fx;
        }
        total += 0.5 * width * panel;
    }
    return total;
}

} // namespace cmup::numerics
