#include "doctest.h"

#include "mixedbf/kernels.hpp"

#include <cmath>
#include <random>

using namespace mixedbf;
using namespace mixedbf::kernels;

namespace {

FormExpression coord(int v, Kind k) { return FormExpression::coordinate(v, k); }

ScaleRational inv_T(int sym, int half = 2) {
    ScalePoly p;
    p.add_term({{sym, -half}}, Rat(1));
    return ScaleRational(p);
}

// sum_{i<n} zbar_i (or t_i) as a scalar expression
FormExpression coord_sum(int n, Kind k) {
    FormExpression s;
    for (int i = 0; i < n; ++i) s += coord(i, k);
    return s;
}

}  // namespace

TEST_CASE("solved lambda constants reproduce the propagator integrand") {
    auto [c1, c2] = lambda_constants();
    // frozen from the symbolic solve: E_T = (-2 dzbar d/dt - 4 dt d/dz) G_T
    CHECK(c1 == Rat(-2));
    CHECK(c2 == Rat(-4));
    CHECK(lambda_op(0).apply(gaussian_form(0)) == propagator_integrand(0));
}

TEST_CASE("solved gauge constants: Q* K_T = E_T") {
    auto [a1, a2] = gauge_constants();
    CHECK(a1 == Rat(4));
    CHECK(a2 == Rat(-2));
    CHECK(gauge_fix(heat_kernel(0), 1, a1, a2) == propagator_integrand(0));
}

TEST_CASE("QQ* + Q*Q is the flat Laplacian on scalars with textbook constants") {
    auto [a1, a2] = laplacian_constants();
    // test scalars: z zbar t^2 * gaussian, and a plain monomial
    GaussBlock blk;
    blk.scale_sym = 0;
    blk.zc = {1};
    blk.tc = {1};
    FormTerm t;
    t.coeff = ScaleRational(Rat(1));
    t.mono = {{gen_id(0, Kind::dz), 1}, {gen_id(0, Kind::dzbar), 2}, {gen_id(0, Kind::dt), 2}};
    t.gauss = GaussTag({blk});
    for (FormExpression f : {FormExpression::term(t), wedge(coord(0, Kind::dz), coord(0, Kind::dt))}) {
        FormExpression anticom = gauge_fix(q_operator(f, 1), 1, a1, a2) +
                                 q_operator(gauge_fix(f, 1, a1, a2), 1);
        // flat Laplacian = 4 d_z d_zbar + d_t^2
        FormExpression lap = derive(derive(f, 0, Kind::dz), 0, Kind::dzbar).scaled(ScaleRational(Rat(4))) +
                             derive(derive(f, 0, Kind::dt), 0, Kind::dt);
        CHECK(anticom == lap);
    }
}

TEST_CASE("heat kernel is annihilated by Q on the two-point pullback") {
    FormExpression K = heat_kernel_pullback(0, 0, 1);
    CHECK(q_operator(K, 2).is_zero());
}

TEST_CASE("heat kernel normalization and symmetry") {
    KernelForm K = heat_kernel_at(1.0);
    Point p;
    p.z = {{0.0, 0.0}};
    p.t = {0.0};
    GenWord vol{gen_id(0, Kind::dz), gen_id(0, Kind::dzbar), gen_id(0, Kind::dt)};
    // coefficient of the canonical word at the origin: -(4 pi)^{-3/2}
    // (dzbar^dz^dt = -dz^dzbar^dt)
    auto v = evaluate(K.form, p, K.binding, vol);
    CHECK(v.imag() == 0.0);
    CHECK(v.real() == doctest::Approx(-std::pow(4 * M_PI, -1.5)).epsilon(1e-12));
    CHECK_THROWS_AS(heat_kernel_at(0.0), std::domain_error);
    CHECK_THROWS_AS(heat_kernel_at(-1.0), std::domain_error);

    // the scalar factor is even under swapping the points; the three
    // difference one-forms each flip, so the full form is odd
    FormExpression K2 = heat_kernel_pullback(0, 0, 1);
    CHECK(swap_vertices(K2, 0, 1) == -K2);
    std::map<int, double> b2{{0, 0.8}};
    Point p1, p2;
    p1.z = {{0.3, -0.2}, {0.7, 0.1}};
    p1.t = {0.4, -0.9};
    p2.z = {p1.z[1], p1.z[0]};
    p2.t = {p1.t[1], p1.t[0]};
    GenWord w{gen_id(0, Kind::dz), gen_id(0, Kind::dzbar), gen_id(0, Kind::dt)};
    CHECK(std::abs(evaluate(K2, p1, b2, w) - evaluate(K2, p2, b2, w)) < 1e-15);
}

TEST_CASE("total heat mass is one (numeric quadrature)") {
    // integrate (4 pi T)^{-3/2} exp(-(x^2+y^2+t^2)/4T) over R^3 by
    // midpoint quadrature after tanh substitution, T = 0.35
    const double T = 0.35;
    auto f = [&](double x, double y, double t) {
        return std::pow(4 * M_PI * T, -1.5) * std::exp(-(x * x + y * y + t * t) / (4 * T));
    };
    const int N = 60;
    double total = 0.0;
    const double h = 2.0 / N;
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            for (int k = 0; k < N; ++k) {
                auto m = [&](int q) { return -1.0 + (q + 0.5) * h; };
                double u = m(i), v = m(j), w = m(k);
                auto map1 = [](double s) { return std::atanh(s); };
                auto jac = [](double s) { return 1.0 / (1.0 - s * s); };
                total += f(map1(u) * 2, map1(v) * 2, map1(w) * 2) * 8 * jac(u) * jac(v) * jac(w) * h * h * h;
            }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("E_T structure: no dz-free terms, vanishes at the origin") {
    FormExpression E = propagator_integrand(0);
    int dz = gen_id(0, Kind::dz);
    E.for_each([&](const FormExpression::Key& k, const ScaleRational&) {
        CHECK(std::find(k.word.begin(), k.word.end(), dz) != k.word.end());
        // every term carries a linear zbar or t factor
        CHECK(k.mono.size() == 1);
        CHECK(k.mono[0].second == 1);
    });
    Point origin;
    origin.z = {{0.0, 0.0}};
    origin.t = {0.0};
    std::map<int, double> b{{0, 1.0}};
    for (GenWord w : {GenWord{gen_id(0, Kind::dz), gen_id(0, Kind::dt)},
                      GenWord{gen_id(0, Kind::dz), gen_id(0, Kind::dzbar)}})
        CHECK(std::abs(evaluate(E, origin, b, w)) == 0.0);
}

TEST_CASE("E_T evaluation against the closed form") {
    // coefficient of dz^dt at z=1, t=0, T=1 is -e^{-1/4} (4 pi)^{-3/2} * zbar, zbar = 1
    FormExpression E = propagator_integrand(0);
    Point p;
    p.z = {{1.0, 0.0}};
    p.t = {0.0};
    std::map<int, double> b{{0, 1.0}};
    auto v = evaluate(E, p, b, {gen_id(0, Kind::dz), gen_id(0, Kind::dt)});
    CHECK(v.real() == doctest::Approx(-std::exp(-0.25) * std::pow(4 * M_PI, -1.5)).epsilon(1e-12));
    CHECK(v.imag() == 0.0);
}

TEST_CASE("G_T evaluation: coefficient of dz at origin is (4 pi)^{-3/2}") {
    FormExpression G = gaussian_form(0);
    Point p;
    p.z = {{0.0, 0.0}};
    p.t = {0.0};
    auto v = evaluate(G, p, {{0, 1.0}}, {gen_id(0, Kind::dz)});
    CHECK(v.real() == doctest::Approx(std::pow(4 * M_PI, -1.5)).epsilon(1e-12));
}

TEST_CASE("kernel T-degrees: heat ~ T^{-3/2}, E ~ T^{-5/2}") {
    heat_kernel(0).for_each([&](const FormExpression::Key&, const ScaleRational& c) {
        CHECK(c.num().max_half_degree() - c.den().max_half_degree() == -3);
    });
    propagator_integrand(0).for_each([&](const FormExpression::Key&, const ScaleRational& c) {
        CHECK(c.num().max_half_degree() - c.den().max_half_degree() == -5);
    });
}

TEST_CASE("zeta eigenvalue identity for n = 1..4 with symbolic scales") {
    for (int n = 1; n <= 4; ++n) {
        FormExpression G = product_gaussian(n);
        FormExpression lhs = zeta(n).apply(G);
        FormExpression rhs =
            wedge(coord_sum(n, Kind::dzbar), G).scaled(-(ScaleRational(Rat(1, 4)) * inv_T(n)));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("dz minus zeta eigenvalue identity for n = 1..4, all j") {
    for (int n = 1; n <= 4; ++n) {
        FormExpression G = product_gaussian(n);
        for (int j = 0; j < n; ++j) {
            FormExpression lhs = dz_minus_zeta(j, n).apply(G);
            FormExpression rhs =
                wedge(coord(j, Kind::dzbar), G).scaled(-(ScaleRational(Rat(1, 4)) * inv_T(j)));
            CHECK(lhs == rhs);
        }
        CHECK_THROWS_AS(dz_minus_zeta(n, n), std::domain_error);
    }
}

TEST_CASE("tau eigenvalue identities for n = 1..4") {
    for (int n = 1; n <= 4; ++n) {
        FormExpression G = product_gaussian(n);
        FormExpression lhs = tau(n).apply(G);
        FormExpression rhs = wedge(coord_sum(n, Kind::dt), G).scaled(-(ScaleRational(Rat(1, 2)) * inv_T(n)));
        CHECK(lhs == rhs);
        for (int j = 0; j < n; ++j) {
            FormExpression l2 = dt_minus_tau(j, n).apply(G);
            FormExpression r2 = wedge(coord(j, Kind::dt), G).scaled(-(ScaleRational(Rat(1, 2)) * inv_T(j)));
            CHECK(l2 == r2);
        }
    }
}

TEST_CASE("zeta reduces to the plain weighted derivative without a Gaussian tag") {
    FormExpression f = wedge(coord(0, Kind::dz), coord(0, Kind::dz));  // z0^2
    FormExpression lhs = zeta(1).apply(f);
    ScalePoly den = ScalePoly::symbol(0) + ScalePoly::symbol(1);
    FormExpression rhs = coord(0, Kind::dz).scaled(ScaleRational(ScalePoly::symbol(0) * ScalePoly(Rat(2)), den));
    CHECK(lhs == rhs);
}

TEST_CASE("product propagator equals slotwise lambdas pulled back, n = 2, 3") {
    for (int n = 2; n <= 3; ++n) {
        FormExpression slots = slot_gaussian_product(n);
        // apply the 1-form lambda content per slot: dzbar_i d/dt_i + ... with solved constants,
        // but without the holomorphic frame factor, lambda acts slotwise
        FormExpression acc = slots;
        for (int i = 0; i <= n; ++i) acc = lambda_op(i).apply(acc);
        // slotwise eigen-action has no cross terms because slots are independent
        FormExpression lhs = product_propagator(n);
        FormExpression rhs = pullback_last_to_sum(acc, n);
        // product_propagator uses the same 1-form content modulo the solved constants:
        // lambda G = -(g/T)(zbar dt + t dzbar) per slot
        CHECK(lhs == rhs);
    }
}

TEST_CASE("product gaussian exponent for (1,1,1), n = 2") {
    FormExpression G = product_gaussian(2);
    Point p;
    p.z = {{0.3, 0.1}, {-0.2, 0.4}};
    p.t = {0.5, -0.7};
    std::map<int, double> b{{0, 1.0}, {1, 1.0}, {2, 1.0}};
    auto q0 = p.z[0], q1 = p.z[1];
    double expo = -(std::norm(q0) + std::norm(q1) + std::norm(q0 + q1) + p.t[0] * p.t[0] +
                    p.t[1] * p.t[1] + (p.t[0] + p.t[1]) * (p.t[0] + p.t[1])) /
                  4.0;
    double expect = std::pow(4 * M_PI, -4.5) * std::exp(expo);
    auto v = evaluate(G, p, b, {});
    CHECK(v.real() == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("n=1 product gaussian merges both scales on one coordinate") {
    FormExpression G = product_gaussian(1);
    Point p;
    p.z = {{0.3, -0.4}};
    p.t = {0.2};
    std::map<int, double> b{{0, 0.5}, {1, 2.0}};
    double q = std::norm(p.z[0]) + p.t[0] * p.t[0];
    double expect = std::pow(4 * M_PI * 0.5, -1.5) * std::pow(4 * M_PI * 2.0, -1.5) *
                    std::exp(-q / (4 * 0.5) - q / (4 * 2.0));
    CHECK(evaluate(G, p, b, {}).real() == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("operators lambda_i, zeta, dz_j - zeta mutually commute on the Gaussian family") {
    std::mt19937_64 rng(101);
    for (int n : {2, 3}) {
        // random member of the family: coordinate polynomial times product gaussian
        FormExpression G = product_gaussian(n);
        std::uniform_int_distribution<int> pick(0, n - 1);
        for (int it = 0; it < 5; ++it) {
            FormExpression f = wedge(coord(pick(rng), Kind::dzbar), G) + G.scaled(ScaleRational(Rat(2)));
            std::vector<DiffOperator> ops = {lambda_op(pick(rng)), zeta(n), dz_minus_zeta(pick(rng), n)};
            for (size_t a = 0; a < ops.size(); ++a)
                for (size_t b = 0; b < ops.size(); ++b) {
                    FormExpression ab = ops[a].apply(ops[b].apply(f));
                    FormExpression ba = ops[b].apply(ops[a].apply(f));
                    CHECK(ab == ba);
                }
        }
    }
}

TEST_CASE("holomorphic reduction: d^n/dz^n E_T = (-zbar/4T)^n E_T") {
    FormExpression E = propagator_integrand(0);
    FormExpression lhs = E;
    for (int n = 1; n <= 3; ++n) {
        lhs = derive(lhs, 0, Kind::dz);
        FormExpression rhs = E;
        for (int k = 0; k < n; ++k)
            rhs = wedge(rhs, coord(0, Kind::dzbar).scaled(-(ScaleRational(Rat(1, 4)) * inv_T(0))));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("image kernels") {
    SUBCASE("image summand is odd under reflecting the time sum") {
        FormExpression Estar = image_summand(0, 0, 1);
        // (t,s) -> (-s,-t): swap vertices then negate both times
        FormExpression mapped = swap_vertices(Estar, 0, 1);
        mapped = reflect_time(reflect_time(mapped, 0), 1);
        CHECK(mapped == -Estar);
        // while the direct part is invariant under the same map
        FormExpression E = propagator_pullback(0, 0, 1);
        FormExpression mappedE = reflect_time(reflect_time(swap_vertices(E, 0, 1), 0), 1);
        CHECK(mappedE == E);
    }

    SUBCASE("Dirichlet heat kernel vanishes at the time boundary") {
        // components without the reflected slot's dt carry k(t-s) - k(t+s),
        // which cancels when either endpoint sits on the boundary
        FormExpression Kchi = image_heat_kernel(0, 0, 1);
        std::map<int, double> b{{0, 0.3}};
        std::vector<GenWord> dirichlet_words = {
            {gen_id(0, Kind::dz), gen_id(0, Kind::dzbar), gen_id(0, Kind::dt)},
            {gen_id(0, Kind::dzbar), gen_id(0, Kind::dt), gen_id(1, Kind::dz)}};
        for (double other : {0.0, 0.4, 1.1}) {
            for (bool first_on_boundary : {true, false}) {
                Point p;
                p.z = {{0.3, 0.2}, {-0.1, 0.5}};
                p.t = first_on_boundary ? std::vector<double>{0.0, other}
                                        : std::vector<double>{other, 0.0};
                for (const GenWord& w : dirichlet_words)
                    CHECK(std::abs(evaluate(Kchi, p, b, w)) < 1e-14);
            }
        }
        // the Neumann sector (words with the reflected dt) does not vanish
        Point p;
        p.z = {{0.3, 0.2}, {-0.1, 0.5}};
        p.t = {0.0, 0.4};
        GenWord neumann{gen_id(0, Kind::dzbar), gen_id(1, Kind::dz), gen_id(1, Kind::dt)};
        CHECK(std::abs(evaluate(Kchi, p, b, neumann)) > 1e-3);
    }

    SUBCASE("far from the boundary the image part is exponentially small") {
        FormExpression Et = image_propagator_integrand(0, 0, 1);
        FormExpression E = propagator_pullback(0, 0, 1);
        const double T = 0.5;
        std::map<int, double> b{{0, T}};
        Point p;
        p.z = {{0.4, 0.0}, {0.1, 0.2}};
        p.t = {3.0, 2.5};
        GenWord w{gen_id(0, Kind::dz), gen_id(0, Kind::dt)};
        double gap = std::abs(evaluate(Et, p, b, w) - evaluate(E, p, b, w));
        CHECK(gap < std::exp(-(p.t[0] + p.t[1]) * (p.t[0] + p.t[1]) / (4 * T)));
    }

    SUBCASE("positive scale required") {
        CHECK_THROWS_AS(image_propagator_integrand_at(0.0), std::domain_error);
    }
}

TEST_CASE("directed edge kernels vanish on self-loops and reproduce squares cancelling") {
    CHECK(edge_propagator(0, 1, 1).is_zero());
    CHECK(edge_heat(0, 1, 1).is_zero());
    // two-vertex double edge: product vanishes identically (the bracket square dies)
    FormExpression e01 = edge_propagator(0, 0, 1);
    FormExpression e10 = edge_propagator(1, 1, 0);
    CHECK(wedge(e01, e10).is_zero());
    // still zero with holomorphic derivatives on the edges
    for (int k1 : {1, 2})
        for (int k2 : {0, 1})
            CHECK(wedge(edge_propagator(0, 0, 1, k1), edge_propagator(1, 1, 0, k2)).is_zero());
}
