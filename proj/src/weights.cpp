#include "mixedbf/weights.hpp"

#include "mixedbf/gaussian.hpp"
#include "mixedbf/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace mixedbf {
namespace weights {

LegInput LegInput::component(LegComponent c) {
    LegInput leg;
    leg.content[size_t(c)] = Rat(1);
    return leg;
}

size_t AssembledIntegrand::term_count() const {
    size_t n = 0;
    for (const auto& g : groups) n += g.terms.size();
    return n;
}

namespace {

FormExpression leg_form(const LegInput& leg, int vertex, int cycle_pos) {
    FormExpression words[4] = {
        FormExpression(Rat(1)),
        FormExpression::generator(vertex, Kind::dzbar),
        FormExpression::generator(vertex, Kind::dt),
        wedge(FormExpression::generator(vertex, Kind::dzbar),
              FormExpression::generator(vertex, Kind::dt)),
    };

    auto poly_for = [&](const ZPoly& a, const TPoly& f) {
        FormExpression poly;
        for (const auto& [ab, coeff] : a) {
            for (const auto& [tp, tc] : f) {
                FormExpression::Key k;
                CoordMono mono;
                if (ab.first > 0) mono.push_back({gen_id(vertex, Kind::dz), ab.first});
                if (ab.second > 0) mono.push_back({gen_id(vertex, Kind::dzbar), ab.second});
                if (tp > 0) mono.push_back({gen_id(vertex, Kind::dt), tp});
                std::sort(mono.begin(), mono.end());
                k.mono = mono;
                FormExpression term;
                term.add(k, ScaleRational(coeff * tc));
                poly += term;
            }
        }
        return poly;
    };
    const ZPoly& abar = leg.a_dzbar.empty() ? leg.a : leg.a_dzbar;
    const TPoly& fone = leg.f_one_form.empty() ? leg.f : leg.f_one_form;
    FormExpression polys[4] = {poly_for(leg.a, leg.f), poly_for(abar, leg.f),
                               poly_for(leg.a, fone), poly_for(abar, fone)};

    FormExpression content;
    for (int c = 0; c < 4; ++c) {
        if (leg.content[size_t(c)] == 0) continue;
        content += wedge(polys[c], words[c]).scaled(ScaleRational(leg.content[size_t(c)]));
    }
    if (content.is_zero()) return content;

    // Gaussian envelopes exp(-|z|^2/4s_z) exp(-t^2/4s_t)
    GaussBlock zb, tb;
    zb.scale_sym = envelope_symbol(2 * cycle_pos);
    zb.zc.assign(size_t(vertex) + 1, 0);
    zb.zc[size_t(vertex)] = 1;
    tb.scale_sym = envelope_symbol(2 * cycle_pos + 1);
    tb.tc.assign(size_t(vertex) + 1, 0);
    tb.tc[size_t(vertex)] = 1;
    FormTerm env;
    env.coeff = ScaleRational(Rat(1));
    env.gauss = GaussTag({zb, tb});

    return wedge(FormExpression::term(env), content);
}

}  // namespace

AssembledIntegrand assemble_wheel(const graphs::ChiralGraph& g, const TestInput& phi, double eps,
                                  int heat_edge, bool image) {
    if (!graphs::is_wheel(g)) throw std::domain_error("assemble_wheel: graph is not a wheel");
    if (!(eps > 0.0)) throw std::domain_error("assemble_wheel: cutoff must be positive");
    std::vector<int> order = graphs::wheel_order(g);
    int m = int(order.size());
    if (int(phi.legs.size()) != m)
        throw std::domain_error("assemble_wheel: one external leg per vertex required");
    if (heat_edge >= m) throw std::domain_error("assemble_wheel: distinguished edge out of range");

    // edge lookup: beta end -> (alpha end, alpha leg)
    std::vector<std::pair<int, int>> succ(g.vertices.size());
    for (const auto& e : g.edges) succ[size_t(e.beta_vertex)] = {e.alpha_vertex, e.alpha_leg};

    AssembledIntegrand ai;
    ai.m = m;
    ai.half_space = image;
    ai.fixed[kEpsSymbol] = eps;

    FormExpression acc(Rat(1));
    int next_sym = 0;
    for (int j = 0; j < m && !acc.is_zero(); ++j) {
        int b = order[size_t(j)];
        auto [a, aleg] = succ[size_t(b)];
        const auto& bv = g.vertices[size_t(b)];
        int k = bv.leg_deriv(bv.alpha_legs) + g.vertices[size_t(a)].leg_deriv(aleg);
        int sym;
        if (j == heat_edge) {
            sym = kEpsSymbol;
        } else {
            sym = next_sym++;
            ai.tbox_syms.push_back(sym);
        }
        FormExpression kernel;
        if (j == heat_edge) {
            kernel = kernels::edge_heat(sym, b, a, k, false);
            if (image) kernel = kernel - kernels::edge_heat(sym, b, a, k, true);
        } else {
            kernel = kernels::edge_propagator(sym, b, a, k, false);
            if (image) kernel = kernel - kernels::edge_propagator(sym, b, a, k, true);
        }
        acc = wedge(acc, kernel);
    }
    for (int j = 0; j < m && !acc.is_zero(); ++j) {
        int v = order[size_t(j)];
        const LegInput& leg = phi.legs[size_t(j)];
        ai.fixed[envelope_symbol(2 * j)] = leg.sigma_z;
        ai.fixed[envelope_symbol(2 * j + 1)] = leg.sigma_t;
        acc = wedge(acc, leg_form(leg, v, j));
    }

    // extract the canonical top word
    GenWord top;
    for (int v = 0; v < m; ++v)
        for (int c = 0; c < 3; ++c) top.push_back(3 * v + c);

    std::map<GaussTag, std::vector<IntegrandTerm>> grouped;
    acc.for_each([&](const FormExpression::Key& key, const ScaleRational& c) {
        if (key.word != top) return;
        IntegrandTerm t;
        t.coeff = c;
        t.pi_half = key.pi_half;
        t.zexp.assign(size_t(m), 0);
        t.zbexp.assign(size_t(m), 0);
        t.texp.assign(size_t(m), 0);
        for (const auto& [var, e] : key.mono) {
            int v = gen_vertex(var);
            switch (gen_kind(var)) {
                case Kind::dz: t.zexp[size_t(v)] = e; break;
                case Kind::dzbar: t.zbexp[size_t(v)] = e; break;
                case Kind::dt: t.texp[size_t(v)] = e; break;
            }
        }
        grouped[key.gauss].push_back(std::move(t));
    });
    for (auto& [tag, terms] : grouped) ai.groups.push_back(IntegrandGroup{tag, std::move(terms)});
    return ai;
}

double integrand_value(const AssembledIntegrand& ai, const std::vector<double>& tbox_values,
                       const quadrature::BoxOptions& tquad) {
    if (tbox_values.size() != ai.tbox_syms.size())
        throw std::invalid_argument("integrand_value: scale count mismatch");
    std::map<int, double> binding = ai.fixed;
    for (size_t i = 0; i < ai.tbox_syms.size(); ++i) binding[ai.tbox_syms[i]] = tbox_values[i];

    const int m = ai.m;
    double total = 0.0;
    for (const auto& group : ai.groups) {
        std::vector<std::vector<double>> Mz(m, std::vector<double>(m, 0.0));
        std::vector<std::vector<double>> Mt(m, std::vector<double>(m, 0.0));
        for (const auto& b : group.tag.blocks()) {
            double s = binding.at(b.scale_sym);
            double w = double(b.mult) / s;
            for (int i = 0; i < int(b.zc.size()); ++i)
                for (int j = 0; j < int(b.zc.size()); ++j) Mz[i][j] += w * b.zc[i] * b.zc[j];
            for (int i = 0; i < int(b.tc.size()); ++i)
                for (int j = 0; j < int(b.tc.size()); ++j) Mt[i][j] += w * b.tc[i] * b.tc[j];
        }
        gaussian::NumericWick wick(Mz, Mt);

        if (!ai.half_space) {
            for (const auto& t : group.terms) {
                double zpart = wick.z_pairing_sum(t.zexp, t.zbexp);
                if (zpart == 0.0) continue;
                double coeff = t.coeff.evaluate(binding) * std::pow(M_PI, 0.5 * t.pi_half);
                total += coeff * wick.mass() * zpart * wick.t_pairing_sum(t.texp);
            }
        } else {
            // z sector closed form, t sector over the half space
            std::vector<double> scales(m);
            for (int d = 0; d < m; ++d) scales[d] = std::sqrt(std::max(wick.cov_t(d, d), 1e-300));
            std::map<std::vector<int>, double> tcache;
            for (const auto& t : group.terms) {
                double zpart = wick.z_pairing_sum(t.zexp, t.zbexp);
                if (zpart == 0.0) continue;
                auto it = tcache.find(t.texp);
                double tval;
                if (it != tcache.end()) {
                    tval = it->second;
                } else {
                    auto f = [&](const std::vector<double>& tv) {
                        double mono = 1.0;
                        for (int d = 0; d < m; ++d)
                            for (int q = 0; q < t.texp[size_t(d)]; ++q) mono *= tv[size_t(d)];
                        double quad = 0.0;
                        for (int i = 0; i < m; ++i)
                            for (int j = 0; j < m; ++j) quad += tv[size_t(i)] * Mt[i][j] * tv[size_t(j)];
                        return mono * std::exp(-0.25 * quad);
                    };
                    tval = quadrature::integrate_half_space(scales, f, tquad).value;
                    tcache[t.texp] = tval;
                }
                double coeff = t.coeff.evaluate(binding) * std::pow(M_PI, 0.5 * t.pi_half);
                total += coeff * wick.mass_z() * zpart * tval;
            }
        }
    }
    return total;
}

namespace {

WeightResult run_box(const AssembledIntegrand& ai, double eps, double L, const WeightOptions& opt) {
    WeightResult res;
    res.term_count = int(ai.term_count());
    if (ai.empty()) {
        res.degree_zero_flag = true;
        return res;
    }
    quadrature::BoxOptions box = opt.box;
    if (box.threads == 0) box.threads = quadrature::thread_count_from_env();
    quadrature::BoxOptions tquad;
    tquad.order = 10;
    tquad.base_panels = 2;
    tquad.max_level = 2;
    tquad.rel_tol = opt.box.rel_tol * 0.1;
    tquad.threads = 1;
    int dim = int(ai.tbox_syms.size());
    auto f = [&](const std::vector<double>& T) { return integrand_value(ai, T, tquad); };
    auto r = quadrature::integrate_log_box(dim, eps, L, f, box);
    res.value = r.value;
    res.quadrature_error_estimate = r.error_estimate;
    res.converged = r.converged;
    return res;
}

}  // namespace

WeightResult bulk_weight(const graphs::ChiralGraph& g, double eps, double L, const TestInput& phi,
                         const WeightOptions& opt) {
    if (!(eps > 0.0 && eps < L)) throw std::domain_error("bulk_weight: need 0 < eps < L");
    AssembledIntegrand ai = assemble_wheel(g, phi, eps, -1, false);
    return run_box(ai, eps, L, opt);
}

WeightResult anomaly_weight(const graphs::ChiralGraph& g, int distinguished_edge, double eps,
                            double L, const TestInput& phi, const WeightOptions& opt) {
    if (!(eps > 0.0 && eps < L)) throw std::domain_error("anomaly_weight: need 0 < eps < L");
    if (distinguished_edge < 0) throw std::domain_error("anomaly_weight: edge index must be >= 0");
    AssembledIntegrand ai = assemble_wheel(g, phi, eps, distinguished_edge, false);
    return run_box(ai, eps, L, opt);
}

TBoxBound t_box_bound(int n, double eps, double L, const WeightOptions& opt) {
    if (!(eps > 0.0 && eps < L)) throw std::domain_error("t_box_bound: need 0 < eps < L");
    if (n < 0) throw std::domain_error("t_box_bound: n must be >= 0");
    TBoxBound out;
    quadrature::BoxOptions box = opt.box;
    if (box.threads == 0) box.threads = quadrature::thread_count_from_env();
    auto f = [](const std::vector<double>& T) {
        double s = 0.0;
        for (double t : T) s += t;
        return std::pow(s, -1.5);
    };
    out.lhs = quadrature::integrate_log_box(n + 1, eps, L, f, box).value;
    double c = 3.0 / (2.0 * (n + 1));
    out.rhs = std::pow((std::pow(L, 1.0 - c) - std::pow(eps, 1.0 - c)) / (1.0 - c), n + 1);
    return out;
}

double anomaly_box_bound(int n, double eps, double L) {
    double c = 3.0 / (2.0 * n);
    return std::pow((std::pow(L, 1.0 - c) - std::pow(eps, 1.0 - c)) / (1.0 - c), n);
}

bool holomorphic_reduction_check(int order) {
    if (order < 0) throw std::domain_error("holomorphic_reduction_check: order must be >= 0");
    FormExpression E = kernels::propagator_integrand(0);
    FormExpression lhs = E;
    FormExpression rhs = E;
    ScalePoly invT;
    invT.add_term({{0, -2}}, Rat(-1, 4));
    for (int k = 0; k < order; ++k) {
        lhs = derive(lhs, 0, Kind::dz);
        rhs = wedge(rhs, FormExpression::coordinate(0, Kind::dzbar).scaled(ScaleRational(invT)));
    }
    return lhs == rhs;
}

std::string graph_id(const graphs::ChiralGraph& g) {
    std::ostringstream os;
    if (graphs::is_wheel(g)) {
        os << "wheel" << g.vertices.size() << "[k=";
        auto order = graphs::wheel_order(g);
        for (size_t i = 0; i < order.size(); ++i) {
            if (i) os << ",";
            const auto& v = g.vertices[size_t(order[i])];
            os << v.leg_deriv(v.alpha_legs);
        }
        os << "]";
    } else {
        os << "graph(V=" << g.vertices.size() << ",E=" << g.edges.size() << ")";
    }
    return os.str();
}

std::vector<SweepRow> epsilon_sweep(const graphs::ChiralGraph& g, const std::vector<double>& eps_values,
                                    double L, const TestInput& phi, const WeightOptions& opt,
                                    bool anomaly, int distinguished_edge) {
    std::vector<SweepRow> rows;
    std::string id = graph_id(g);
    for (double eps : eps_values) {
        WeightResult r = anomaly ? anomaly_weight(g, distinguished_edge, eps, L, phi, opt)
                                 : bulk_weight(g, eps, L, phi, opt);
        rows.push_back(SweepRow{eps, L, id, r.value, r.quadrature_error_estimate});
    }
    return rows;
}

namespace {

// A term contributes only if the holomorphic powers balance and the total
// t-degree is even (odd Gaussian moments vanish).
bool has_live_term(const AssembledIntegrand& ai) {
    for (const auto& g : ai.groups) {
        for (const auto& t : g.terms) {
            int z = 0, zb = 0, td = 0;
            for (int e : t.zexp) z += e;
            for (int e : t.zbexp) zb += e;
            for (int e : t.texp) td += e;
            if (z == zb && td % 2 == 0) return true;
        }
    }
    return false;
}

}  // namespace

TestInput default_wheel_input(int m, bool anomaly) {
    // Single-component legs completing the top form with a live Wick sector.
    // Full-content legs with equal coefficients are degenerate (the content
    // factors as (1 + dzbar)(1 + dt) per leg and the completion routes to the
    // top form cancel identically), and a candidate must respect both the
    // z/zbar balance and the even-t parity of Gaussian moments, which depend
    // on the wheel size and on the distinguished edge. Candidates are checked
    // against the assembled integrand and the first live one wins.
    ZPoly one{{{0, 0}, Rat(1)}};
    ZPoly z{{{1, 0}, Rat(1)}};
    TPoly tone{{0, Rat(1)}};
    TPoly todd{{1, Rat(1)}};

    auto build = [&](const std::vector<std::tuple<LegComponent, ZPoly, TPoly>>& spec) {
        TestInput phi;
        for (int i = 0; i < m; ++i) {
            LegInput leg;
            auto [comp, za, ft] = spec[size_t(std::min<int>(i, int(spec.size()) - 1))];
            leg.content[size_t(comp)] = Rat(1);
            leg.a = za;
            leg.f = ft;
            if (anomaly) leg.sigma_t = 2.0;  // proportional z/t covariances cancel here
            phi.legs.push_back(leg);
        }
        return phi;
    };

    std::vector<std::vector<std::tuple<LegComponent, ZPoly, TPoly>>> candidates;
    if (anomaly) {
        candidates = {
            {{kScalar, one, tone}, {kDzbar, one, tone}, {kDt, z, todd}, {kDt, one, tone}},
            {{kScalar, one, tone}, {kDzbar, z, tone}, {kDt, one, todd}, {kDt, one, tone}},
            {{kScalar, one, tone}, {kDzbar, one, tone}, {kDt, z, tone}, {kDt, one, tone}},
            {{kScalar, one, tone}, {kDzbar, z, tone}, {kDt, one, tone}, {kDt, one, tone}},
        };
    } else {
        candidates = {
            {{kDzbar, one, tone}, {kDt, z, tone}, {kDt, one, tone}},
            {{kDzbar, one, tone}, {kDzbar, z, tone}, {kDt, z, tone}, {kDt, one, tone}},
            {{kDzbar, one, tone}, {kDt, z, todd}, {kDt, one, tone}},
            {{kDzbar, z, tone}, {kDt, one, todd}, {kDt, one, tone}},
        };
    }
    if (m <= 2) return build(candidates[0]);  // weights vanish identically there

    graphs::ChiralGraph g = graphs::wheel(m);
    for (const auto& cand : candidates) {
        TestInput phi = build(cand);
        AssembledIntegrand ai = assemble_wheel(g, phi, 0.5, anomaly ? 0 : -1, false);
        if (has_live_term(ai)) return phi;
    }
    return build(candidates[0]);
}

}  // namespace weights
}  // namespace mixedbf
