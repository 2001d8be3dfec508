#include "mixedbf/verify.hpp"

#include "mixedbf/gaussian.hpp"
#include "mixedbf/kernels.hpp"
#include "mixedbf/weights.hpp"

#include <functional>
#include <random>

namespace mixedbf {
namespace verify {

namespace {

using namespace mixedbf::kernels;

FormExpression coord(int v, Kind k) { return FormExpression::coordinate(v, k); }

ScaleRational inv_scale(int sym, int half = 2) {
    ScalePoly p;
    p.add_term({{sym, -half}}, Rat(1));
    return ScaleRational(p);
}

FormExpression coord_sum(int n, Kind k) {
    FormExpression s;
    for (int i = 0; i < n; ++i) s += coord(i, k);
    return s;
}

DiffOperator lambda_with(int vertex, const Rat& c1, const Rat& c2) {
    DiffOperator op;
    op.terms.push_back({FormExpression::generator(vertex, Kind::dzbar).scaled(ScaleRational(c1)),
                        gen_id(vertex, Kind::dt)});
    op.terms.push_back({FormExpression::generator(vertex, Kind::dt).scaled(ScaleRational(c2)),
                        gen_id(vertex, Kind::dz)});
    return op;
}

}  // namespace

std::vector<CheckResult> run_symbolic_suite(const Options& opt) {
    std::vector<CheckResult> out;
    auto check = [&](const std::string& name, bool ok, const std::string& detail = "") {
        out.push_back({name, ok, detail});
    };

    auto [c1, c2] = opt.lambda_override ? *opt.lambda_override : lambda_constants();
    auto [a1, a2] = gauge_constants();

    {
        FormExpression lhs = gauge_fix(heat_kernel(0), 1, a1, a2);
        check("gauge kernel reproduces the propagator integrand", lhs == propagator_integrand(0),
              "constants (" + to_string(a1) + ", " + to_string(a2) + ")");
    }
    {
        FormExpression lhs = lambda_with(0, c1, c2).apply(gaussian_form(0));
        check("first-order operator maps the Gaussian form to the propagator integrand",
              lhs == propagator_integrand(0),
              "constants (" + to_string(c1) + ", " + to_string(c2) + ")");
    }
    {
        check("heat kernel closed under the mixed differential",
              q_operator(heat_kernel_pullback(0, 0, 1), 2).is_zero());
    }
    {
        auto [l1, l2] = laplacian_constants();
        GaussBlock blk;
        blk.scale_sym = 0;
        blk.zc = {1};
        blk.tc = {1};
        FormTerm t;
        t.coeff = ScaleRational(Rat(1));
        t.mono = {{gen_id(0, Kind::dz), 1}, {gen_id(0, Kind::dzbar), 1}};
        t.gauss = GaussTag({blk});
        bool ok = true;
        for (FormExpression f :
             {FormExpression::term(t), wedge(coord(0, Kind::dt), coord(0, Kind::dt))}) {
            FormExpression anticom =
                gauge_fix(q_operator(f, 1), 1, l1, l2) + q_operator(gauge_fix(f, 1, l1, l2), 1);
            FormExpression lap =
                derive(derive(f, 0, Kind::dz), 0, Kind::dzbar).scaled(ScaleRational(Rat(4))) +
                derive(derive(f, 0, Kind::dt), 0, Kind::dt);
            ok = ok && anticom == lap;
        }
        check("gauge commutator acts as the flat Laplacian on scalars", ok);
    }
    {
        bool ok = true;
        for (int n = 1; n <= 4 && ok; ++n) {
            FormExpression G = product_gaussian(n);
            ok = zeta(n).apply(G) ==
                 wedge(coord_sum(n, Kind::dzbar), G).scaled(-(ScaleRational(Rat(1, 4)) * inv_scale(n)));
        }
        check("zeta eigenvalue identity on product Gaussians (n = 1..4)", ok);
    }
    {
        bool ok = true;
        for (int n = 1; n <= 4 && ok; ++n) {
            FormExpression G = product_gaussian(n);
            for (int j = 0; j < n && ok; ++j)
                ok = dz_minus_zeta(j, n).apply(G) ==
                     wedge(coord(j, Kind::dzbar), G).scaled(-(ScaleRational(Rat(1, 4)) * inv_scale(j)));
        }
        check("shifted holomorphic derivative eigenvalue identity (n = 1..4)", ok);
    }
    {
        bool ok = true;
        for (int n = 1; n <= 4 && ok; ++n) {
            FormExpression G = product_gaussian(n);
            ok = tau(n).apply(G) ==
                 wedge(coord_sum(n, Kind::dt), G).scaled(-(ScaleRational(Rat(1, 2)) * inv_scale(n)));
            for (int j = 0; j < n && ok; ++j)
                ok = dt_minus_tau(j, n).apply(G) ==
                     wedge(coord(j, Kind::dt), G).scaled(-(ScaleRational(Rat(1, 2)) * inv_scale(j)));
        }
        check("time-direction eigenvalue identities (n = 1..4)", ok);
    }
    {
        bool ok = true;
        for (int order = 1; order <= 3 && ok; ++order)
            ok = weights::holomorphic_reduction_check(order);
        check("holomorphic derivative reduction on the propagator integrand (orders 1..3)", ok);
    }
    {
        std::mt19937_64 rng(opt.seed);
        bool ok = true;
        for (int n : {2, 3}) {
            FormExpression G = product_gaussian(n);
            std::uniform_int_distribution<int> pick(0, n - 1);
            for (int it = 0; it < 3 && ok; ++it) {
                FormExpression f =
                    wedge(coord(pick(rng), Kind::dzbar), G) + G.scaled(ScaleRational(Rat(2)));
                std::vector<DiffOperator> ops = {lambda_op(pick(rng)), zeta(n),
                                                 dz_minus_zeta(pick(rng), n)};
                for (size_t x = 0; x < ops.size() && ok; ++x)
                    for (size_t y = 0; y < ops.size() && ok; ++y)
                        ok = ops[x].apply(ops[y].apply(f)) == ops[y].apply(ops[x].apply(f));
            }
        }
        check("first-order operator family commutes on the Gaussian family", ok);
    }
    {
        bool ok = true;
        for (int n = 2; n <= 3 && ok; ++n) {
            FormExpression slots = slot_gaussian_product(n);
            FormExpression acc = slots;
            for (int i = 0; i <= n; ++i) acc = lambda_with(i, c1, c2).apply(acc);
            ok = product_propagator(n) == pullback_last_to_sum(acc, n);
        }
        check("product propagator equals the slotwise operator action (n = 2, 3)", ok);
    }
    {
        bool ok = true;
        for (int n = 1; n <= 6 && ok; ++n) {
            gaussian::RankOneShiftedMatrix m(n);
            auto inv = gaussian::inverse(m);
            for (int i = 0; i < n && ok; ++i)
                for (int j = 0; j < n && ok; ++j) {
                    ScaleRational acc;
                    for (int k = 0; k < n; ++k) acc += m.entry(i, k) * inv[k][j];
                    ok = acc == ScaleRational(Rat(i == j ? 1 : 0));
                }
        }
        check("rank-one-shifted inverse is exact (n <= 6)", ok);
    }
    {
        bool ok = true;
        for (int n = 1; n <= 5 && ok; ++n) {
            gaussian::RankOneShiftedMatrix m(n);
            auto inv = gaussian::inverse(m);
            // cofactor expansion determinant
            std::function<ScaleRational(const std::vector<std::vector<ScaleRational>>&)> det =
                [&](const std::vector<std::vector<ScaleRational>>& a) -> ScaleRational {
                size_t nn = a.size();
                if (nn == 1) return a[0][0];
                ScaleRational total;
                for (size_t j = 0; j < nn; ++j) {
                    std::vector<std::vector<ScaleRational>> minor;
                    for (size_t r = 1; r < nn; ++r) {
                        std::vector<ScaleRational> row;
                        for (size_t c = 0; c < nn; ++c)
                            if (c != j) row.push_back(a[r][c]);
                        minor.push_back(row);
                    }
                    ScaleRational term = a[0][j] * det(minor);
                    if (j % 2) term = -term;
                    total += term;
                }
                return total;
            };
            ok = gaussian::det_inverse(m) == det(inv);
        }
        check("determinant ratio matches the cofactor expansion (n <= 5)", ok);
    }
    {
        bool ok = true;
        for (int k = 0; k <= 2 && ok; ++k) {
            auto g1 = graphs::wheel(1, {k});
            auto g2 = graphs::wheel(2, {k, (k + 1) % 3});
            ok = weights::assemble_wheel(g1, weights::default_wheel_input(1), 0.5).empty() &&
                 weights::assemble_wheel(g2, weights::default_wheel_input(2), 0.5).empty();
        }
        check("one- and two-vertex wheel weights vanish by form degree (orders 0..2)", ok);
    }
    {
        bool ok = true;
        for (int k = 0; k <= 2 && ok; ++k) {
            auto g1 = graphs::wheel(1, {k});
            auto g2 = graphs::wheel(2, {k, (k * 2) % 3});
            ok = weights::assemble_wheel(g1, weights::default_wheel_input(1, true), 0.5, 0).empty() &&
                 weights::assemble_wheel(g2, weights::default_wheel_input(2, true), 0.5, 0).empty();
        }
        check("small-wheel anomaly weights vanish by form degree (orders 0..2)", ok);
    }
    {
        bool ok = true;
        heat_kernel(0).for_each([&](const FormExpression::Key&, const ScaleRational& c) {
            ok = ok && c.num().max_half_degree() - c.den().max_half_degree() == -3;
        });
        propagator_integrand(0).for_each([&](const FormExpression::Key&, const ScaleRational& c) {
            ok = ok && c.num().max_half_degree() - c.den().max_half_degree() == -5;
        });
        check("kernel scale degrees match the closed forms", ok);
    }
    return out;
}

bool all_passed(const std::vector<CheckResult>& results) {
    for (const auto& r : results)
        if (!r.passed) return false;
    return true;
}

}  // namespace verify
}  // namespace mixedbf
