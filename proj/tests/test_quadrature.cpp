#include "doctest.h"

#include "mixedbf/quadrature.hpp"

#include <cmath>

using namespace mixedbf::quadrature;

TEST_CASE("Gauss-Legendre nodes integrate polynomials exactly") {
    GaussLegendre gl(6);
    double sum = 0.0, x4 = 0.0;
    for (int i = 0; i < 6; ++i) {
        sum += gl.w[i];
        x4 += gl.w[i] * std::pow(gl.x[i], 10);
    }
    CHECK(sum == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(x4 == doctest::Approx(2.0 / 11).epsilon(1e-13));
}

TEST_CASE("log-box integrator on a separable power law") {
    // integral over [eps, L]^2 of (T0 T1)^{-1/2} = (2(sqrt(L) - sqrt(eps)))^2
    BoxOptions opt;
    opt.rel_tol = 1e-10;
    opt.max_level = 4;
    auto r = integrate_log_box(2, 1e-3, 1.0, [](const std::vector<double>& T) {
        return 1.0 / std::sqrt(T[0] * T[1]);
    }, opt);
    double expect = std::pow(2 * (1.0 - std::sqrt(1e-3)), 2);
    CHECK(r.value == doctest::Approx(expect).epsilon(1e-9));
    CHECK(r.converged);
}

TEST_CASE("log-box thread determinism") {
    BoxOptions o1, o4;
    o1.threads = 1;
    o4.threads = 4;
    auto f = [](const std::vector<double>& T) {
        return std::exp(-1.0 / (T[0] + T[1])) / (T[0] + T[1]);
    };
    auto r1 = integrate_log_box(2, 1e-4, 2.0, f, o1);
    auto r4 = integrate_log_box(2, 1e-4, 2.0, f, o4);
    CHECK(r1.value == r4.value);
}

TEST_CASE("half-space integrator on Gaussian moments") {
    // int_0^inf t^2 exp(-t^2/4) dt = 2 sqrt(pi)
    BoxOptions opt;
    opt.order = 16;
    opt.max_level = 2;
    opt.rel_tol = 1e-10;
    auto r = integrate_half_space({2.0}, [](const std::vector<double>& t) {
        return t[0] * t[0] * std::exp(-t[0] * t[0] / 4);
    }, opt);
    CHECK(r.value == doctest::Approx(2 * std::sqrt(M_PI)).epsilon(1e-9));
    // two dimensions, correlated quadratic
    auto r2 = integrate_half_space({1.0, 1.0}, [](const std::vector<double>& t) {
        return std::exp(-(t[0] * t[0] + t[0] * t[1] + t[1] * t[1]) / 2);
    }, opt);
    // reference by dense midpoint rule
    const int N = 2000;
    double h = 12.0 / N, ref = 0.0;
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            double a = (i + 0.5) * h, b = (j + 0.5) * h;
            ref += std::exp(-(a * a + a * b + b * b) / 2) * h * h;
        }
    CHECK(r2.value == doctest::Approx(ref).epsilon(1e-5));
}

TEST_CASE("extrapolation helpers") {
    // geometric decay to a limit
    std::vector<double> seq;
    for (int k = 0; k < 5; ++k) seq.push_back(3.0 + 2.0 * std::pow(0.3, k));
    auto [a_lim, a_err] = aitken_limit(seq);
    CHECK(a_lim == doctest::Approx(3.0).epsilon(1e-10));
    auto [p_lim, p_err] = power_law_limit(seq, 10.0);
    CHECK(p_lim == doctest::Approx(3.0).epsilon(1e-10));
    // power-law decay to zero
    std::vector<double> pw;
    for (int k = 0; k < 4; ++k) pw.push_back(0.7 * std::pow(10.0, -0.5 * k));
    auto [z_lim, z_err] = power_law_limit(pw, 10.0);
    CHECK(std::abs(z_lim) < 1e-10);
    CHECK_THROWS_AS(power_law_limit({1.0, 2.0}, 10.0), std::invalid_argument);
}

TEST_CASE("proportional fit") {
    std::vector<double> x{1, 2, 3, 4}, y{2.01, 3.98, 6.02, 7.99};
    auto fit = fit_proportional(x, y);
    CHECK(fit.slope == doctest::Approx(2.0).epsilon(1e-2));
    CHECK(fit.residual_norm / fit.value_norm < 0.01);
    CHECK(fit.stderr_slope < 0.05);
    CHECK_THROWS_AS(fit_proportional({0.0, 0.0}, {1.0, 1.0}), std::domain_error);
    CHECK_THROWS_AS(fit_proportional({1.0}, {1.0}), std::invalid_argument);
}

TEST_CASE("invalid domains") {
    auto f = [](const std::vector<double>&) { return 1.0; };
    CHECK_THROWS_AS(integrate_log_box(2, -1.0, 1.0, f), std::domain_error);
    CHECK_THROWS_AS(integrate_log_box(2, 1.0, 0.5, f), std::domain_error);
    CHECK_THROWS_AS(integrate_log_box(0, 0.1, 1.0, f), std::domain_error);
}
