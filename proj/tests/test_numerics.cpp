#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <vector>

#include "cmup/numerics.hpp"

using namespace cmup;
using namespace cmup::numerics;
using Catch::Approx;
using Catch::Matchers::ContainsSubstring;

namespace {

// Independent Airy oracle: Ai(y) = (1/pi) Int_0^inf cos(t^3/3 + y t) dt for
// y > 0, integrated over half-periods of the phase with repeated averaging
// of the alternating partial sums.  Shares only the Gauss-Legendre node
// helper with the implementation under test.
double ai_cos_oracle(double y) {
    auto t_of_theta = [&](double th) {
        double lo = 0.0, hi = std::cbrt(3.0 * th) + th / y + 1.0;
        for (int i = 0; i < 100; ++i) {
            const double mid = 0.5 * (lo + hi);
            ((mid * mid * mid / 3.0 + y * mid - th) > 0.0 ? hi : lo) = mid;
        }
        return 0.5 * (lo + hi);
    };
    const auto [xs, ws] = cmup::numerics::detail::gauss_legendre(24);
    const int nseg = 60;
    std::vector<double> partial(nseg);
    double run = 0.0;
    for (int k = 0; k < nseg; ++k) {
        const double lo = k * pi, hi = (k + 1) * pi;
        const double c = 0.5 * (lo + hi), hw = 0.5 * (hi - lo);
        double seg = 0.0;
        for (size_t i = 0; i < xs.size(); ++i) {
            const double th = c + hw * xs[i];
            const double t = t_of_theta(th);
            seg += ws[i] * std::cos(th) / (t * t + y);
        }
        run += hw * seg;
        partial[k] = run;
    }
    // repeated averaging accelerates the alternating tail
    std::vector<double> row = partial;
    for (int level = 0; level < 30; ++level) {
        std::vector<double> next(row.size() - 1);
        for (size_t i = 0; i + 1 < row.size(); ++i) next[i] = 0.5 * (row[i] + row[i + 1]);
        row.swap(next);
    }
    return row.back() / pi;
}

double fd_second_derivative(double y, double h) {
    // five-point stencil
    const double f2 = airy_ai(y + 2 * h), f1 = airy_ai(y + h), f0 = airy_ai(y);
    const double fm1 = airy_ai(y - h), fm2 = airy_ai(y - 2 * h);
    return (-f2 + 16 * f1 - 30 * f0 + 16 * fm1 - fm2) / (12 * h * h);
}

} // namespace

TEST_CASE("airy_ai matches high-precision reference values", "[numerics][airy]") {
    // reference values from an independent arbitrary-precision evaluation
    const struct {
        double y, ai, aip;
    } table[] = {
        {0.0, 0.35502805388781724, -0.2588194037928068},
        {1.0, 0.13529241631288142, -0.15914744129679321},
        {-1.0, 0.53556088329235212, -0.010160567116645209},
        {2.5, 0.01572592338047049, -0.02625088103590323},
        {-2.5, -0.11232506769296609, 0.67885273426479436},
        {5.0, 0.00010834442813607442, -0.00024741389086846248},
        {-5.0, 0.35076100902411432, 0.32719281855444314},
        {6.5, 2.7958823432049136e-6, -7.2319314666017926e-6},
        {-6.5, -0.2380203019971158, -0.67495249251320217},
        {8.0, 4.6922076160992316e-8, -1.3414392979067866e-7},
        {-8.0, -0.052705050356386203, 0.93556093819830655},
        {10.0, 1.1047532552898686e-10, -3.5206336767389236e-10},
        {-10.0, 0.040241238486443191, 0.99626504413279006},
    };
    for (const auto& row : table) {
        CAPTURE(row.y);
        CHECK_THAT(airy_ai(row.y), Catch::Matchers::WithinAbs(row.ai, 1e-12));
        CHECK_THAT(airy_ai_prime(row.y), Catch::Matchers::WithinAbs(row.aip, 1e-12));
    }
    // beyond the tight-error window the relative accuracy still holds up
    CHECK_THAT(airy_ai(-50.0), Catch::Matchers::WithinRel(-0.16188142361232092, 1e-12));
    CHECK_THAT(airy_ai(-100.0), Catch::Matchers::WithinRel(0.17675339323955288, 1e-12));
    CHECK_THAT(airy_ai(50.0), Catch::Matchers::WithinRel(4.5849417240748285e-104, 1e-12));
    CHECK_THAT(airy_ai(100.0), Catch::Matchers::WithinRel(2.6344821520881845e-291, 1e-11));
}

TEST_CASE("airy_ai reproduces the printed working constants", "[numerics][airy]") {
    CHECK_THAT(airy_ai(0.0), Catch::Matchers::WithinAbs(0.3550280538878172, 1e-15));
    CHECK_THAT(airy_ai_prime(0.0), Catch::Matchers::WithinAbs(-0.2588194037928068, 1e-15));
    CHECK_THAT(airy_ai(-1.0188), Catch::Matchers::WithinAbs(0.5357, 5e-5));
}

TEST_CASE("airy_ai agrees with the cosine-integral quadrature oracle", "[numerics][airy][oracle]") {
    CHECK_THAT(airy_ai(5.0), Catch::Matchers::WithinAbs(ai_cos_oracle(5.0), 1e-10));
    CHECK_THAT(airy_ai(2.0), Catch::Matchers::WithinAbs(ai_cos_oracle(2.0), 1e-10));
}

TEST_CASE("airy zone switchovers agree on overlap points", "[numerics][airy]") {
    // Maclaurin remains usable past its production zone; compare it against
    // the marched/asymptotic evaluations that own those regions.
    for (double y : {5.0, 5.5, -5.5, -6.0, -7.0}) {
        CAPTURE(y);
        CHECK_THAT(detail::ai_maclaurin(y).ai, Catch::Matchers::WithinAbs(detail::ai_march(y).ai, 1e-10));
        CHECK_THAT(detail::ai_maclaurin(y).aip, Catch::Matchers::WithinAbs(detail::ai_march(y).aip, 1e-10));
    }
    CHECK_THAT(detail::ai_maclaurin(-8.0).ai, Catch::Matchers::WithinAbs(detail::ai_asymptotic(-8.0).ai, 1e-10));
    CHECK_THAT(detail::ai_maclaurin(-8.0).aip, Catch::Matchers::WithinAbs(detail::ai_asymptotic(-8.0).aip, 1e-10));
}

TEST_CASE("airy_ai satisfies the ODE residual on a grid", "[numerics][airy]") {
    for (double y = -10.0; y <= 10.0 + 1e-9; y += 0.5) {
        // On the decaying side the stencil error is dominated by rounding in
        // the exponentially cancelling series, so a wider step wins; on the
        // oscillatory side truncation dominates and needs a narrow step.
        const double h = (y >= 3.0) ? 0.025 : 0.004;
        const double residual = fd_second_derivative(y, h) - y * airy_ai(y);
        CAPTURE(y, residual);
        CHECK(std::abs(residual) <= 1e-9);
    }
}

TEST_CASE("airy_ai_prime is consistent with finite differences", "[numerics][airy]") {
    const double h = 1e-5;
    for (double y : {1.0, -1.0, 3.0, -3.0, 0.5}) {
        const double fd = (airy_ai(y + h) - airy_ai(y - h)) / (2 * h);
        CAPTURE(y);
        CHECK_THAT(airy_ai_prime(y), Catch::Matchers::WithinAbs(fd, 1e-7));
    }
}

TEST_CASE("airy_ai rejects out-of-domain input", "[numerics][airy]") {
    CHECK_THROWS_AS(airy_ai(std::nan("")), domain_error);
    CHECK_THROWS_AS(airy_ai(std::numeric_limits<double>::infinity()), domain_error);
    CHECK_THROWS_AS(airy_ai(201.0), domain_error);
    CHECK_THROWS_AS(airy_ai_prime(-201.0), domain_error);
}

TEST_CASE("first_zero_ai_prime locates the boundary-condition constant", "[numerics][airy]") {
    const double z = first_zero_ai_prime();
    CHECK_THAT(z, Catch::Matchers::WithinAbs(-1.0187929716474711, 1e-12));
    CHECK_THAT(airy_ai_prime(z), Catch::Matchers::WithinAbs(0.0, 1e-10));
    CHECK(airy_ai(z) > 0.0);
    CHECK_THAT(airy_ai(z), Catch::Matchers::WithinAbs(0.53565665601569986, 1e-12));
    // the values the rest of the project quotes at 4 decimals
    CHECK_THAT(z, Catch::Matchers::WithinAbs(-1.0188, 5e-5));
    CHECK_THAT(airy_ai(z), Catch::Matchers::WithinAbs(0.5357, 5e-5));
}

TEST_CASE("kummer_m evaluates the confluent hypergeometric series", "[numerics][kummer]") {
    using cd = std::complex<double>;
    CHECK(kummer_m(cd(0.3, -1.2), cd(0.5), cd(0.0)) == cd(1.0));
    CHECK_THAT(kummer_m(cd(1.0), cd(1.0), cd(2.0)).real(),
               Catch::Matchers::WithinRel(7.3890560989306502, 1e-14));
    CHECK_THAT(kummer_m(cd(1.0), cd(1.0), cd(2.0)).imag(), Catch::Matchers::WithinAbs(0.0, 1e-15));

    const cd m = kummer_m(cd(0.25, -0.3), cd(0.5), cd(0.0, 2.5));
    CHECK_THAT(m.real(), Catch::Matchers::WithinAbs(0.6458766917933343, 1e-13));
    CHECK_THAT(m.imag(), Catch::Matchers::WithinAbs(1.9438109046760695, 1e-13));

    // conjugating every argument conjugates the sum exactly (term-by-term)
    const cd mc = kummer_m(std::conj(cd(0.25, -0.3)), cd(0.5), std::conj(cd(0.0, 2.5)));
    CHECK(mc == std::conj(m));
}

TEST_CASE("kummer_m rejects poles and oversized arguments", "[numerics][kummer]") {
    using cd = std::complex<double>;
    CHECK_THROWS_AS(kummer_m(cd(1.0), cd(0.0), cd(1.0)), domain_error);
    CHECK_THROWS_AS(kummer_m(cd(1.0), cd(-1.0), cd(1.0)), domain_error);
    CHECK_THROWS_AS(kummer_m(cd(1.0), cd(-7.0), cd(1.0)), domain_error);
    CHECK_NOTHROW(kummer_m(cd(1.0), cd(-1.5), cd(1.0))); // non-integer negative b is fine
    CHECK_THROWS_AS(kummer_m(cd(1.0), cd(1.0), cd(60.0)), domain_error);
    CHECK_THROWS_AS(kummer_m(cd(std::nan(""), 0.0), cd(1.0), cd(1.0)), domain_error);
}

TEST_CASE("integrate handles polynomials, symmetry and smooth integrands", "[numerics][quadrature]") {
    CHECK_THAT(integrate([](double x) { return x * x; }, 0.0, 1.0), Catch::Matchers::WithinAbs(1.0 / 3.0, 1e-12));
    CHECK_THAT(integrate([](double x) { return std::cos(x); }, -pi, pi), Catch::Matchers::WithinAbs(0.0, 1e-12));
    // single panel with n nodes is exact for degree 2n-1
    CHECK_THAT(integrate([](double x) { return std::pow(x, 9.0); }, 0.0, 1.0, QuadratureRule{5, 1}),
               Catch::Matchers::WithinAbs(0.1, 1e-13));
    CHECK_THAT(integrate([](double x) { return std::pow(x, 63.0); }, 0.0, 1.0, QuadratureRule{32, 1}),
               Catch::Matchers::WithinAbs(1.0 / 64.0, 1e-13));
}

TEST_CASE("integrate is stable under panel doubling", "[numerics][quadrature]") {
    auto f = [](double x) { return std::exp(-x * x) * std::cos(3.0 * x); };
    const double base = integrate(f, 0.0, 3.0, QuadratureRule{32, 64});
    const double fine = integrate(f, 0.0, 3.0, QuadratureRule{32, 128});
    CHECK_THAT(base, Catch::Matchers::WithinAbs(fine, 1e-13));
}

TEST_CASE("integrate reproduces the closed-form Airy-squared primitive", "[numerics][quadrature][airy]") {
    // antiderivative of Ai^2 is t Ai^2(t) - Ai'^2(t)
    auto p0 = [](double t) {
        const auto v = airy_ai_pair(t);
        return t * v.ai * v.ai - v.aip * v.aip;
    };
    const double a = first_zero_ai_prime();
    const double quad = integrate([](double x) { return airy_ai(x) * airy_ai(x); }, a, 10.0);
    CHECK_THAT(quad, Catch::Matchers::WithinAbs(p0(10.0) - p0(a), 1e-10));
}

TEST_CASE("integrate reports non-finite samples with the abscissa", "[numerics][quadrature]") {
    auto bad = [](double x) { return x > 0.5 ? std::nan("") : 1.0; };
    CHECK_THROWS_MATCHES(integrate(bad, 0.0, 1.0), evaluation_error,
                         Catch::Matchers::MessageMatches(ContainsSubstring("non-finite sample at x =")));
    CHECK_THROWS_AS(integrate([](double) { return 1.0; }, 1.0, 0.0), domain_error);
    CHECK_THROWS_AS(integrate([](double) { return 1.0; }, 0.0, 1.0, QuadratureRule{1, 4}), domain_error);
}

TEST_CASE("find_root brackets and refines", "[numerics][roots]") {
    CHECK_THAT(find_root([](double x) { return x - 2.0; }, 0.0, 5.0, 1e-12), Catch::Matchers::WithinAbs(2.0, 1e-12));
    CHECK_THAT(find_root([](double x) { return x * x * x - 2.0; }, 1.0, 2.0, 1e-12),
               Catch::Matchers::WithinAbs(1.2599210498948732, 1e-12));
    CHECK_THAT(find_root([](double y) { return airy_ai_prime(y); }, -2.0, -0.5, 1e-12),
               Catch::Matchers::WithinAbs(-1.0188, 5e-5));

    const double r = find_root([](double x) { return std::sin(x); }, 2.0, 4.0, 1e-14);
    CHECK(r >= 2.0);
    CHECK(r <= 4.0);
    CHECK_THAT(r, Catch::Matchers::WithinAbs(pi, 1e-13));

    CHECK_THROWS_AS(find_root([](double x) { return x * x + 1.0; }, 0.0, 1.0, 1e-12), bracket_error);
    CHECK_THROWS_AS(find_root([](double x) { return x; }, 1.0, 0.0, 1e-12), domain_error);
    CHECK_THROWS_AS(find_root([](double x) { return x; }, -1.0, 1.0, 0.0), domain_error);
}
