#include "mixedbf/kernels.hpp"

#include <algorithm>
#include <stdexcept>

namespace mixedbf {
namespace kernels {

ScaleVector::ScaleVector(std::vector<double> e) : entries(std::move(e)) {
    for (double v : entries)
        if (!(v > 0.0)) throw std::domain_error("ScaleVector: entries must be strictly positive");
}

std::map<int, double> ScaleVector::binding() const {
    std::map<int, double> b;
    for (size_t i = 0; i < entries.size(); ++i) b[int(i)] = entries[i];
    return b;
}

namespace {

// (1/8) pi^{-3/2} T^{-3/2}, the heat normalization (4 pi T)^{-3/2}.
ScaleRational heat_norm(int scale_sym) {
    ScalePoly p;
    p.add_term({{scale_sym, -3}}, Rat(1, 8));
    return ScaleRational(p);
}

ScaleRational inv_scale(int scale_sym, int half_exp) {
    ScalePoly p;
    p.add_term({{scale_sym, -half_exp}}, Rat(1));
    return ScaleRational(p);
}

GaussTag point_tag(int scale_sym, int vertex) {
    GaussBlock b;
    b.scale_sym = scale_sym;
    b.zc.assign(vertex + 1, 0);
    b.tc.assign(vertex + 1, 0);
    b.zc[vertex] = 1;
    b.tc[vertex] = 1;
    return GaussTag({b});
}

FormExpression gen(int v, Kind k) { return FormExpression::generator(v, k); }
FormExpression coord(int v, Kind k) { return FormExpression::coordinate(v, k); }

}  // namespace

FormExpression heat_function(int scale_sym, int vertex) {
    FormTerm t;
    t.coeff = heat_norm(scale_sym);
    t.pi_half = -3;
    t.gauss = point_tag(scale_sym, vertex);
    return FormExpression::term(t);
}

FormExpression gaussian_form(int scale_sym, int vertex) {
    return wedge(heat_function(scale_sym, vertex), gen(vertex, Kind::dz));
}

FormExpression heat_kernel(int scale_sym, int vertex) {
    FormExpression vol = wedge(gen(vertex, Kind::dzbar), wedge(gen(vertex, Kind::dz), gen(vertex, Kind::dt)));
    return wedge(heat_function(scale_sym, vertex), vol);
}

FormExpression propagator_integrand(int scale_sym, int vertex) {
    FormExpression bracket = wedge(coord(vertex, Kind::dzbar), gen(vertex, Kind::dt)) +
                             wedge(coord(vertex, Kind::dt), gen(vertex, Kind::dzbar));
    FormExpression f = wedge(heat_function(scale_sym, vertex), wedge(gen(vertex, Kind::dz), bracket));
    return f.scaled(-inv_scale(scale_sym, 2));
}

// --- linear coordinate substitutions ----------------------------------------

namespace {

struct LinearSub {
    // coordinate of input vertex v maps to sum_w map[v][w] * coordinate(w)
    std::vector<std::vector<int>> map;
    int out_nv = 0;
};

FormExpression apply_linear_sub(const FormExpression& f, const LinearSub& sub) {
    auto map_coord = [&](int var) {
        int v = gen_vertex(var);
        Kind k = gen_kind(var);
        FormExpression s;
        for (int w = 0; w < sub.out_nv; ++w) {
            int c = sub.map[v][w];
            if (c == 0) continue;
            s += coord(w, k).scaled(ScaleRational(Rat(c)));
        }
        return s;
    };
    auto map_gen = [&](int g) {
        int v = gen_vertex(g);
        Kind k = gen_kind(g);
        FormExpression s;
        for (int w = 0; w < sub.out_nv; ++w) {
            int c = sub.map[v][w];
            if (c == 0) continue;
            s += gen(w, k).scaled(ScaleRational(Rat(c)));
        }
        return s;
    };
    FormExpression out;
    for (const auto& [k, c] : f.terms()) {
        std::vector<GaussBlock> blocks;
        for (const auto& b : k.gauss.blocks()) {
            GaussBlock nb;
            nb.scale_sym = b.scale_sym;
            nb.mult = b.mult;
            nb.zc.assign(sub.out_nv, 0);
            nb.tc.assign(sub.out_nv, 0);
            for (size_t v = 0; v < b.zc.size(); ++v)
                for (int w = 0; w < sub.out_nv; ++w) nb.zc[w] += b.zc[v] * sub.map[v][w];
            for (size_t v = 0; v < b.tc.size(); ++v)
                for (int w = 0; w < sub.out_nv; ++w) nb.tc[w] += b.tc[v] * sub.map[v][w];
            blocks.push_back(nb);
        }
        FormTerm seed;
        seed.coeff = c;
        seed.pi_half = k.pi_half;
        seed.gauss = GaussTag(std::move(blocks));
        FormExpression acc = FormExpression::term(seed);
        for (const auto& [var, e] : k.mono) {
            FormExpression m = map_coord(var);
            for (int q = 0; q < e; ++q) acc = wedge(acc, m);
        }
        for (int g : k.word) acc = wedge(acc, map_gen(g));
        out += acc;
    }
    return out;
}

LinearSub difference_sub(int v0, int v1) {
    LinearSub s;
    s.out_nv = std::max(v0, v1) + 1;
    s.map.assign(1, std::vector<int>(s.out_nv, 0));
    s.map[0][v0] = 1;
    s.map[0][v1] = -1;
    return s;
}

}  // namespace

FormExpression heat_kernel_pullback(int scale_sym, int v0, int v1) {
    return apply_linear_sub(heat_kernel(scale_sym, 0), difference_sub(v0, v1));
}

FormExpression propagator_pullback(int scale_sym, int v0, int v1) {
    return apply_linear_sub(propagator_integrand(scale_sym, 0), difference_sub(v0, v1));
}

FormExpression image_heat_kernel(int scale_sym, int v0, int v1) {
    FormExpression direct = heat_kernel_pullback(scale_sym, v0, v1);
    return direct - reflect_time(direct, v1);
}

FormExpression image_summand(int scale_sym, int v0, int v1) {
    return reflect_time(propagator_pullback(scale_sym, v0, v1), v1);
}

FormExpression image_propagator_integrand(int scale_sym, int v0, int v1) {
    return propagator_pullback(scale_sym, v0, v1) - image_summand(scale_sym, v0, v1);
}

KernelForm heat_kernel_at(double T) {
    if (!(T > 0.0)) throw std::domain_error("heat_kernel: scale must be positive");
    return KernelForm{heat_kernel(0), 1, KernelVariant::bulk, {{0, T}}};
}

KernelForm propagator_integrand_at(double T) {
    if (!(T > 0.0)) throw std::domain_error("propagator_integrand: scale must be positive");
    return KernelForm{propagator_integrand(0), 1, KernelVariant::bulk, {{0, T}}};
}

KernelForm image_propagator_integrand_at(double T) {
    if (!(T > 0.0)) throw std::domain_error("image_propagator_integrand: scale must be positive");
    return KernelForm{image_propagator_integrand(0, 0, 1), 2, KernelVariant::image, {{0, T}}};
}

// --- products ---------------------------------------------------------------

FormExpression product_gaussian(int n) {
    if (n < 1) throw std::domain_error("product_gaussian: arity must be >= 1");
    std::vector<GaussBlock> blocks;
    ScaleMono mono;
    for (int i = 0; i <= n; ++i) mono.push_back({i, -3});
    for (int i = 0; i < n; ++i) {
        GaussBlock b;
        b.scale_sym = i;
        b.zc.assign(n, 0);
        b.tc.assign(n, 0);
        b.zc[i] = b.tc[i] = 1;
        blocks.push_back(b);
    }
    GaussBlock last;
    last.scale_sym = n;
    last.zc.assign(n, 1);
    last.tc.assign(n, 1);
    blocks.push_back(last);

    Rat c(1);
    for (int i = 0; i <= n; ++i) c /= 8;
    ScalePoly p;
    p.add_term(mono, c);

    FormTerm t;
    t.coeff = ScaleRational(p);
    t.pi_half = -3 * (n + 1);
    t.gauss = GaussTag(std::move(blocks));
    return FormExpression::term(t);
}

FormExpression slot_gaussian_product(int n) {
    FormExpression f(Rat(1));
    for (int i = 0; i <= n; ++i) f = wedge(f, heat_function(i, i));
    return f;
}

FormExpression pullback_last_to_sum(const FormExpression& f, int n) {
    LinearSub s;
    s.out_nv = n;
    s.map.assign(n + 1, std::vector<int>(n, 0));
    for (int i = 0; i < n; ++i) s.map[i][i] = 1;
    for (int w = 0; w < n; ++w) s.map[n][w] = 1;
    return apply_linear_sub(f, s);
}

FormExpression product_propagator(int n) {
    if (n < 1) throw std::domain_error("product_propagator: arity must be >= 1");
    // per-slot 1-form content -(g/T)(zbar dt + t dzbar), frame factor dropped
    auto one_form = [&](int slot) {
        FormExpression bracket = wedge(coord(slot, Kind::dzbar), gen(slot, Kind::dt)) +
                                 wedge(coord(slot, Kind::dt), gen(slot, Kind::dzbar));
        return wedge(heat_function(slot, slot), bracket).scaled(-inv_scale(slot, 2));
    };
    FormExpression slots(Rat(1));
    for (int i = 0; i <= n; ++i) slots = wedge(slots, one_form(i));
    return pullback_last_to_sum(slots, n);
}

// --- operators ----------------------------------------------------------------

FormExpression DiffOperator::apply(const FormExpression& f) const {
    FormExpression out;
    for (const auto& t : terms) out += wedge(t.coeff, derive(f, t.coord));
    return out;
}

namespace {

ScaleRational scale_sum_fraction(int i, int n, bool eps_for_last) {
    ScalePoly den;
    for (int j = 0; j < n; ++j) den += ScalePoly::symbol(j);
    den += ScalePoly::symbol(eps_for_last ? kEpsSymbol : n);
    return ScaleRational(ScalePoly::symbol(i), den);
}

}  // namespace

DiffOperator zeta(int n, bool eps_for_last) {
    if (n < 1) throw std::domain_error("zeta: arity must be >= 1");
    DiffOperator op;
    for (int i = 0; i < n; ++i)
        op.terms.push_back({FormExpression::scalar(scale_sum_fraction(i, n, eps_for_last)),
                            gen_id(i, Kind::dz)});
    return op;
}

DiffOperator tau(int n) {
    if (n < 1) throw std::domain_error("tau: arity must be >= 1");
    DiffOperator op;
    for (int i = 0; i < n; ++i)
        op.terms.push_back({FormExpression::scalar(scale_sum_fraction(i, n, false)), gen_id(i, Kind::dt)});
    return op;
}

DiffOperator dz_minus_zeta(int j, int n) {
    if (j < 0 || j >= n) throw std::domain_error("dz_minus_zeta: index out of range");
    DiffOperator op;
    op.terms.push_back({FormExpression(Rat(1)), gen_id(j, Kind::dz)});
    for (int i = 0; i < n; ++i)
        op.terms.push_back({FormExpression::scalar(-scale_sum_fraction(i, n, false)), gen_id(i, Kind::dz)});
    return op;
}

DiffOperator dt_minus_tau(int j, int n) {
    if (j < 0 || j >= n) throw std::domain_error("dt_minus_tau: index out of range");
    DiffOperator op;
    op.terms.push_back({FormExpression(Rat(1)), gen_id(j, Kind::dt)});
    for (int i = 0; i < n; ++i)
        op.terms.push_back({FormExpression::scalar(-scale_sum_fraction(i, n, false)), gen_id(i, Kind::dt)});
    return op;
}

DiffOperator lambda_op(int vertex) {
    auto [c1, c2] = lambda_constants();
    DiffOperator op;
    op.terms.push_back({gen(vertex, Kind::dzbar).scaled(ScaleRational(c1)), gen_id(vertex, Kind::dt)});
    op.terms.push_back({gen(vertex, Kind::dt).scaled(ScaleRational(c2)), gen_id(vertex, Kind::dz)});
    return op;
}

FormExpression q_operator(const FormExpression& f, int n_vertices) {
    FormExpression out;
    for (int v = 0; v < n_vertices; ++v) {
        out += wedge(gen(v, Kind::dzbar), derive(f, v, Kind::dzbar));
        out += wedge(gen(v, Kind::dt), derive(f, v, Kind::dt));
    }
    return out;
}

FormExpression gauge_fix(const FormExpression& f, int n_vertices, const Rat& a1, const Rat& a2) {
    FormExpression out;
    for (int v = 0; v < n_vertices; ++v) {
        out += derive(interior(f, gen_id(v, Kind::dzbar)), v, Kind::dz).scaled(ScaleRational(a1));
        out += derive(interior(f, gen_id(v, Kind::dt)), v, Kind::dt).scaled(ScaleRational(a2));
    }
    return out;
}

namespace {

// Solve c1*A + c2*B = target exactly; throws std::logic_error if unsolvable.
std::pair<Rat, Rat> solve_two(const FormExpression& A, const FormExpression& B,
                              const FormExpression& target) {
    std::vector<FormExpression::Key> keys;
    auto collect = [&](const FormExpression& f) {
        for (const auto& [k, c] : f.terms()) keys.push_back(k);
    };
    collect(A);
    collect(B);
    collect(target);
    auto comp = [&](const FormExpression& f, const FormExpression::Key& k) -> ScaleRational {
        auto it = f.terms().find(k);
        return it == f.terms().end() ? ScaleRational() : it->second;
    };
    for (size_t i = 0; i < keys.size(); ++i) {
        for (size_t j = i + 1; j < keys.size(); ++j) {
            ScaleRational a1 = comp(A, keys[i]), b1 = comp(B, keys[i]);
            ScaleRational a2 = comp(A, keys[j]), b2 = comp(B, keys[j]);
            ScaleRational det = a1 * b2 - a2 * b1;
            if (det.is_zero()) continue;
            ScaleRational t1 = comp(target, keys[i]), t2 = comp(target, keys[j]);
            ScaleRational c1 = (t1 * b2 - t2 * b1) / det;
            ScaleRational c2 = (a1 * t2 - a2 * t1) / det;
            if (!c1.is_constant() || !c2.is_constant()) continue;
            Rat r1 = c1.constant_value(), r2 = c2.constant_value();
            FormExpression check = A.scaled(ScaleRational(r1)) + B.scaled(ScaleRational(r2));
            if (check == target) return {r1, r2};
        }
    }
    throw std::logic_error("solve_two: no consistent constants found");
}

}  // namespace

std::pair<Rat, Rat> lambda_constants() {
    static const std::pair<Rat, Rat> solved = [] {
        FormExpression G = gaussian_form(0);
        FormExpression A = wedge(gen(0, Kind::dzbar), derive(G, 0, Kind::dt));
        FormExpression B = wedge(gen(0, Kind::dt), derive(G, 0, Kind::dz));
        return solve_two(A, B, propagator_integrand(0));
    }();
    return solved;
}

std::pair<Rat, Rat> gauge_constants() {
    static const std::pair<Rat, Rat> solved = [] {
        FormExpression K = heat_kernel(0);
        FormExpression A = derive(interior(K, gen_id(0, Kind::dzbar)), 0, Kind::dz);
        FormExpression B = derive(interior(K, gen_id(0, Kind::dt)), 0, Kind::dt);
        return solve_two(A, B, propagator_integrand(0));
    }();
    return solved;
}

std::pair<Rat, Rat> laplacian_constants() { return {Rat(4), Rat(1)}; }

// --- directed edge kernels ----------------------------------------------------

FormExpression edge_propagator(int scale_sym, int b, int a, int deriv_order, bool image) {
    if (b == a) {
        // self-loop: the propagator vanishes on the diagonal
        (void)scale_sym;
        return FormExpression::zero();
    }
    GaussBlock blk;
    int nv = std::max(a, b) + 1;
    blk.scale_sym = scale_sym;
    blk.zc.assign(nv, 0);
    blk.tc.assign(nv, 0);
    blk.zc[b] = 1;
    blk.zc[a] = -1;
    blk.tc[b] = 1;
    blk.tc[a] = image ? 1 : -1;

    FormExpression dzbar_diff = gen(b, Kind::dzbar) - gen(a, Kind::dzbar);
    FormExpression dt_pair = image ? (gen(b, Kind::dt) + gen(a, Kind::dt))
                                   : (gen(b, Kind::dt) - gen(a, Kind::dt));
    FormExpression zbar_diff = coord(b, Kind::dzbar) - coord(a, Kind::dzbar);
    FormExpression t_pair = image ? (coord(b, Kind::dt) + coord(a, Kind::dt))
                                  : (coord(b, Kind::dt) - coord(a, Kind::dt));

    FormTerm seed;
    seed.coeff = -inv_scale(scale_sym, 5) * ScaleRational(Rat(1, 8));
    seed.pi_half = -3;
    seed.gauss = GaussTag({blk});
    FormExpression f = FormExpression::term(seed);
    f = wedge(f, gen(b, Kind::dz));
    f = wedge(f, wedge(zbar_diff, dt_pair) + wedge(t_pair, dzbar_diff));
    for (int q = 0; q < deriv_order; ++q)
        f = wedge(f, zbar_diff.scaled(-(ScaleRational(Rat(1, 4)) * inv_scale(scale_sym, 2))));
    return f;
}

FormExpression edge_heat(int scale_sym, int b, int a, int deriv_order, bool image) {
    if (b == a) return FormExpression::zero();
    GaussBlock blk;
    int nv = std::max(a, b) + 1;
    blk.scale_sym = scale_sym;
    blk.zc.assign(nv, 0);
    blk.tc.assign(nv, 0);
    blk.zc[b] = 1;
    blk.zc[a] = -1;
    blk.tc[b] = 1;
    blk.tc[a] = image ? 1 : -1;

    FormExpression dzbar_diff = gen(b, Kind::dzbar) - gen(a, Kind::dzbar);
    FormExpression dt_pair = image ? (gen(b, Kind::dt) + gen(a, Kind::dt))
                                   : (gen(b, Kind::dt) - gen(a, Kind::dt));
    FormExpression zbar_diff = coord(b, Kind::dzbar) - coord(a, Kind::dzbar);

    FormTerm seed;
    seed.coeff = inv_scale(scale_sym, 3) * ScaleRational(Rat(1, 8));
    seed.pi_half = -3;
    seed.gauss = GaussTag({blk});
    FormExpression f = FormExpression::term(seed);
    f = wedge(f, wedge(dzbar_diff, wedge(gen(b, Kind::dz), dt_pair)));
    for (int q = 0; q < deriv_order; ++q)
        f = wedge(f, zbar_diff.scaled(-(ScaleRational(Rat(1, 4)) * inv_scale(scale_sym, 2))));
    return f;
}

}  // namespace kernels
}  // namespace mixedbf
