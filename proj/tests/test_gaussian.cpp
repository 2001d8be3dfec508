#include "doctest.h"

#include "mixedbf/gaussian.hpp"

#include <cmath>
#include <random>

using namespace mixedbf;
using namespace mixedbf::gaussian;

namespace {

// cofactor-expansion determinant oracle over exact rationals
ScaleRational cofactor_det(const std::vector<std::vector<ScaleRational>>& a) {
    size_t n = a.size();
    if (n == 1) return a[0][0];
    ScaleRational total;
    for (size_t j = 0; j < n; ++j) {
        std::vector<std::vector<ScaleRational>> minor;
        for (size_t r = 1; r < n; ++r) {
            std::vector<ScaleRational> row;
            for (size_t c = 0; c < n; ++c)
                if (c != j) row.push_back(a[r][c]);
            minor.push_back(row);
        }
        ScaleRational term = a[0][j] * cofactor_det(minor);
        if (j % 2) term = -term;
        total += term;
    }
    return total;
}

std::map<int, double> binding_of(const std::vector<double>& T) {
    std::map<int, double> b;
    for (size_t i = 0; i < T.size(); ++i) b[int(i)] = T[i];
    return b;
}

RealMono mono_of(std::initializer_list<std::array<int, 3>> exps) {
    RealMono m;
    m.exps.assign(exps);
    return m;
}

}  // namespace

TEST_CASE("Sherman-Morrison inverse: frozen 2x2 example") {
    // T = (1, 2, 4): M = [[5/4, 1/4], [1/4, 3/4]], inverse [[6/7, -2/7], [-2/7, 10/7]]
    RankOneShiftedMatrix m(2);
    auto inv = inverse(m);
    std::map<int, double> b{{0, 1.0}, {1, 2.0}, {2, 4.0}};
    CHECK(inv[0][0].evaluate(b) == doctest::Approx(6.0 / 7).epsilon(1e-15));
    CHECK(inv[0][1].evaluate(b) == doctest::Approx(-2.0 / 7).epsilon(1e-15));
    CHECK(inv[1][0].evaluate(b) == doctest::Approx(-2.0 / 7).epsilon(1e-15));
    CHECK(inv[1][1].evaluate(b) == doctest::Approx(10.0 / 7).epsilon(1e-15));
    CHECK(m.entry(0, 0).evaluate(b) == doctest::Approx(5.0 / 4).epsilon(1e-15));
    CHECK(m.entry(0, 1).evaluate(b) == doctest::Approx(1.0 / 4).epsilon(1e-15));
}

TEST_CASE("scalar case n = 1: inverse is T0 T1 / (T0 + T1)") {
    RankOneShiftedMatrix m(1);
    auto inv = inverse(m);
    ScaleRational expect(ScalePoly::symbol(0) * ScalePoly::symbol(1),
                         ScalePoly::symbol(0) + ScalePoly::symbol(1));
    CHECK(inv[0][0] == expect);
}

TEST_CASE("M * M^{-1} = identity exactly for n <= 6") {
    for (int n = 1; n <= 6; ++n) {
        RankOneShiftedMatrix m(n);
        auto inv = inverse(m);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                ScaleRational acc;
                for (int k = 0; k < n; ++k) acc += m.entry(i, k) * inv[k][j];
                CHECK(acc == ScaleRational(Rat(i == j ? 1 : 0)));
            }
        }
    }
}

TEST_CASE("det_inverse equals the cofactor determinant for n <= 5") {
    for (int n = 1; n <= 5; ++n) {
        RankOneShiftedMatrix m(n);
        CHECK(det_inverse(m) == cofactor_det(inverse(m)));
    }
}

TEST_CASE("det_inverse frozen values") {
    // T = (1,1,1), n = 2: det([[2,1],[1,2]])^{-1} = 1/3
    RankOneShiftedMatrix m(2);
    CHECK(det_inverse(m).evaluate(binding_of({1, 1, 1})) == doctest::Approx(1.0 / 3).epsilon(1e-15));
    // equal scales: t^n/(n+1)
    for (int n = 1; n <= 4; ++n) {
        RankOneShiftedMatrix mm(n);
        double t = 0.7;
        CHECK(det_inverse(mm).evaluate(binding_of(std::vector<double>(n + 1, t))) ==
              doctest::Approx(std::pow(t, n) / (n + 1)).epsilon(1e-14));
    }
}

TEST_CASE("zeroth moment is the Gaussian mass") {
    RealPoly one = {{RealMono{}, Rat(1)}};
    for (int n : {1, 2, 3}) {
        MomentValue v = expectation(one, n);
        CHECK(v.ratio == ScaleRational(Rat(1)));
        std::vector<double> T(n + 1, 1.0);
        double prod = 1.0, sum = n + 1.0;
        CHECK(v.evaluate(T) ==
              doctest::Approx(std::pow(4 * M_PI, 1.5 * n) * std::pow(prod / sum, 1.5)).epsilon(1e-13));
    }
}

TEST_CASE("odd moments vanish") {
    CHECK(expectation(mono_of({{0, 0, 1}}), 2).ratio.is_zero());           // t_0
    CHECK(expectation(mono_of({{1, 0, 0}}), 2).ratio.is_zero());           // x_0
    CHECK(expectation(mono_of({{1, 1, 1}}), 2).ratio.is_zero());           // x0 y0 t0
    CHECK(expectation(mono_of({{2, 0, 1}, {0, 0, 2}}), 3).ratio.is_zero());
}

TEST_CASE("normalized second moment matches the closed-form covariance") {
    // <t_0 t_1> / <1> = 2 d_{01} = -2 T0 T1 / (T0+T1+T2)
    MomentValue v = expectation(mono_of({{0, 0, 1}, {0, 0, 1}}), 2);
    ScalePoly sum = ScalePoly::symbol(0) + ScalePoly::symbol(1) + ScalePoly::symbol(2);
    ScaleRational expect(-(ScalePoly(Rat(2)) * ScalePoly::symbol(0) * ScalePoly::symbol(1)), sum);
    CHECK(v.ratio == expect);
}

TEST_CASE("covariance scaling: doubling every scale doubles second moments") {
    MomentValue v = expectation(mono_of({{0, 0, 1}, {0, 0, 1}}), 2);
    double a = v.ratio.evaluate(binding_of({0.3, 0.9, 1.7}));
    double b = v.ratio.evaluate(binding_of({0.6, 1.8, 3.4}));
    CHECK(b == doctest::Approx(2 * a).epsilon(1e-14));
    MomentValue x2 = expectation(mono_of({{2, 0, 0}}), 3);
    double c = x2.ratio.evaluate(binding_of({0.3, 0.9, 1.7, 0.5}));
    double d = x2.ratio.evaluate(binding_of({0.6, 1.8, 3.4, 1.0}));
    CHECK(d == doctest::Approx(2 * c).epsilon(1e-14));
}

TEST_CASE("non-polynomial style errors") {
    CHECK_THROWS_AS(expectation(mono_of({{1, 0, 0}, {0, 0, 0}, {0, 0, 0}}), 2), std::domain_error);
    CHECK_THROWS_AS(gaussian_mass({1.0}), std::domain_error);
    CHECK_THROWS_AS(gaussian_mass({1.0, -2.0}), std::domain_error);
}

TEST_CASE("seeded Monte Carlo oracle confirms moments within 3 standard errors") {
    // density exp(-1/4 v^T M v) per real direction; sampling covariance 2 M^{-1}
    const int n = 3;
    std::vector<double> T{1.0, 0.5, 2.0, 1.5};
    RankOneShiftedMatrix m(n);
    std::vector<std::vector<double>> M(n, std::vector<double>(n));
    auto b = binding_of(T);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) M[i][j] = m.entry(i, j).evaluate(b);
    // Cholesky of 2 M^{-1}
    std::vector<std::vector<double>> inv;
    auto a = M;
    det_and_invert(a, inv);
    std::vector<std::vector<double>> cov(n, std::vector<double>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) cov[i][j] = 2 * inv[i][j];
    std::vector<std::vector<double>> L(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= i; ++j) {
            double s = cov[i][j];
            for (int k = 0; k < j; ++k) s -= L[i][k] * L[j][k];
            L[i][j] = (i == j) ? std::sqrt(s) : s / L[j][j];
        }

    std::mt19937_64 rng(20260810);
    std::normal_distribution<double> nd(0.0, 1.0);
    auto draw_direction = [&](std::vector<double>& v) {
        std::vector<double> g(n);
        for (int i = 0; i < n; ++i) g[i] = nd(rng);
        for (int i = 0; i < n; ++i) {
            v[i] = 0.0;
            for (int k = 0; k <= i; ++k) v[i] += L[i][k] * g[k];
        }
    };

    struct Probe {
        RealMono mono;
        double sum = 0.0, sq = 0.0;
    };
    std::vector<Probe> probes = {
        {mono_of({{0, 0, 1}, {0, 0, 1}}), 0, 0},                    // t0 t1
        {mono_of({{2, 0, 0}}), 0, 0},                               // x0^2
        {mono_of({{0, 2, 0}, {0, 0, 0}, {0, 0, 2}}), 0, 0},         // y0^2 t2^2
        {mono_of({{1, 0, 0}, {1, 0, 0}, {1, 0, 1}}), 0, 0},         // x0 x1 x2 t2
    };

    const int samples = 1000000;
    std::vector<double> x(n), y(n), t(n);
    for (int s = 0; s < samples; ++s) {
        draw_direction(x);
        draw_direction(y);
        draw_direction(t);
        for (auto& p : probes) {
            double val = 1.0;
            for (size_t i = 0; i < p.mono.exps.size(); ++i) {
                for (int q = 0; q < p.mono.exps[i][0]; ++q) val *= x[i];
                for (int q = 0; q < p.mono.exps[i][1]; ++q) val *= y[i];
                for (int q = 0; q < p.mono.exps[i][2]; ++q) val *= t[i];
            }
            p.sum += val;
            p.sq += val * val;
        }
    }
    for (auto& p : probes) {
        double mean = p.sum / samples;
        double var = p.sq / samples - mean * mean;
        double se = std::sqrt(var / samples);
        // the sampler is normalized; compare against ratio (normalized moment)
        double expect = expectation(p.mono, n).ratio.evaluate(b);
        CHECK(std::abs(mean - expect) < 3 * se + 1e-12);
    }
}
