#include "mixedbf/boundary.hpp"

#include "mixedbf/gaussian.hpp"

#include <cmath>

namespace mixedbf {
namespace boundary {

void validate_parity(const ParityLeg& leg) {
    for (const auto& [p, c] : leg.f0)
        if (c != 0 && p % 2 == 0)
            throw std::domain_error("parity: the 0-form t-factor must be odd");
    for (const auto& [p, c] : leg.f1)
        if (c != 0 && p % 2 == 1)
            throw std::domain_error("parity: the dt-factor must be even");
    if (!(leg.sigma_z > 0.0) || !(leg.sigma_t > 0.0))
        throw std::domain_error("parity: envelope widths must be positive");
}

weights::LegInput to_leg_input(const ParityLeg& leg) {
    validate_parity(leg);
    weights::LegInput out;
    out.a = leg.a0;
    out.a_dzbar = leg.a1;
    out.sigma_z = leg.sigma_z;
    out.f = leg.f0;
    out.f_one_form = leg.f1;
    out.sigma_t = leg.sigma_t;
    out.content = leg.content;
    return out;
}

double boundary_t_integral(double eps, double L) {
    if (!(eps > 0.0 && eps < L)) throw std::domain_error("boundary_t_integral: need 0 < eps < L");
    return L * std::log(2 * L) - eps * std::log(L + eps) - L * std::log(eps + L) +
           eps * std::log(2 * eps);
}

double boundary_t_integral_quadrature(double eps, double L, int order) {
    if (!(eps > 0.0 && eps < L)) throw std::domain_error("boundary_t_integral: need 0 < eps < L");
    // ordered region eps <= T0 <= T1 <= L, nested Gauss-Legendre in log scales
    quadrature::GaussLegendre gl(order);
    double ulo = std::log(eps), uhi = std::log(L);
    double total = 0.0;
    for (int i = 0; i < order; ++i) {
        double u1 = ulo + 0.5 * (uhi - ulo) * (gl.x[i] + 1.0);
        double w1 = 0.5 * (uhi - ulo) * gl.w[i];
        double T1 = std::exp(u1);
        double inner = 0.0;
        for (int j = 0; j < order; ++j) {
            double u0 = ulo + 0.5 * (u1 - ulo) * (gl.x[j] + 1.0);
            double w0 = 0.5 * (u1 - ulo) * gl.w[j];
            double T0 = std::exp(u0);
            inner += w0 * T0 / (T0 + T1);
        }
        total += w1 * T1 * inner;
    }
    return total;
}

namespace {

WeightResult run_image_box(const graphs::ChiralGraph& g, int heat_edge, double eps, double L,
                           const ParityInput& legs, const WeightOptions& opt) {
    if (!(eps > 0.0 && eps < L)) throw std::domain_error("boundary weight: need 0 < eps < L");
    weights::TestInput phi;
    for (const auto& leg : legs) phi.legs.push_back(to_leg_input(leg));
    weights::AssembledIntegrand ai = weights::assemble_wheel(g, phi, eps, heat_edge, true);
    WeightResult res;
    res.term_count = int(ai.term_count());
    if (ai.empty()) {
        res.degree_zero_flag = true;
        return res;
    }
    quadrature::BoxOptions box = opt.box;
    if (box.threads == 0) box.threads = quadrature::thread_count_from_env();
    quadrature::BoxOptions tquad;
    tquad.order = 8;
    tquad.base_panels = 1;
    tquad.max_level = 1;
    tquad.rel_tol = opt.box.rel_tol;
    tquad.threads = 1;
    auto f = [&](const std::vector<double>& T) { return weights::integrand_value(ai, T, tquad); };
    auto r = quadrature::integrate_log_box(int(ai.tbox_syms.size()), eps, L, f, box);
    res.value = r.value;
    res.quadrature_error_estimate = r.error_estimate;
    res.converged = r.converged;
    return res;
}

}  // namespace

WeightResult two_vertex_boundary_weight(double eps, double L, const ParityLeg& alpha,
                                        const WeightOptions& opt) {
    graphs::ChiralGraph g = graphs::wheel(2);
    return run_image_box(g, -1, eps, L, {alpha, alpha}, opt);
}

double level_functional(const ParityLeg& alpha) {
    validate_parity(alpha);
    // int (a0 d_z a1 - a1 d_z a0) exp(-|z|^2 / (2 sigma)) over the plane:
    // the scalar component of a is a0, the dzbar component a1 (shared
    // polynomial here, distinguished by the content flags).
    // <z^p zbar^q> against exp(-|z|^2/c): zero unless p = q, else pi p! c^{p+1}.
    const double c = 2.0 * alpha.sigma_z;
    ZPoly a0, a1;
    if (alpha.content[weights::kScalar] != 0)
        for (const auto& [pq, coeff] : alpha.a0) a0[pq] += coeff * alpha.content[weights::kScalar];
    if (alpha.content[weights::kDzbar] != 0)
        for (const auto& [pq, coeff] : alpha.a1) a1[pq] += coeff * alpha.content[weights::kDzbar];
    auto dz = [](const ZPoly& p) {
        ZPoly d;
        for (const auto& [pq, coeff] : p)
            if (pq.first > 0) d[{pq.first - 1, pq.second}] += coeff * pq.first;
        return d;
    };
    auto integrate = [&](const ZPoly& p) {
        double total = 0.0;
        for (const auto& [pq, coeff] : p) {
            if (pq.first != pq.second || coeff == 0) continue;
            double fact = 1.0;
            for (int k = 2; k <= pq.first; ++k) fact *= k;
            total += to_double(coeff) * M_PI * fact * std::pow(c, pq.first + 1);
        }
        return total;
    };
    ZPoly da1 = dz(a1), da0 = dz(a0);
    ZPoly combined;
    for (const auto& [pq, coeff] : a0)
        for (const auto& [pq2, c2] : da1) combined[{pq.first + pq2.first, pq.second + pq2.second}] += coeff * c2;
    for (const auto& [pq, coeff] : a1)
        for (const auto& [pq2, c2] : da0) combined[{pq.first + pq2.first, pq.second + pq2.second}] -= coeff * c2;
    return integrate(combined);
}

double two_vertex_odd_weight(double eps, double L, const ParityLeg& alpha,
                             const WeightOptions& opt) {
    // The level functional lives in the sector odd under f0 -> -f0 (the
    // t ds - s dt structure of the mixed image products); the even remainder
    // carries boundary data of the odd component's normal derivative and is
    // projected out here.
    ParityLeg flipped = alpha;
    for (auto& [p, c] : flipped.f0) c = -c;
    double w1 = two_vertex_boundary_weight(eps, L, alpha, opt).value;
    double w2 = two_vertex_boundary_weight(eps, L, flipped, opt).value;
    return 0.5 * (w1 - w2);
}

LevelReport extract_level(const std::vector<double>& eps_sequence, double L,
                          const std::vector<ParityLeg>& family, const WeightOptions& opt) {
    if (family.size() < 3) throw std::domain_error("extract_level: need at least three inputs");
    if (eps_sequence.size() < 3)
        throw std::domain_error("extract_level: need at least three cutoffs");
    LevelReport rep;
    rep.eps_sequence = eps_sequence;
    double ratio = eps_sequence[0] / eps_sequence[1];
    for (const auto& alpha : family) {
        rep.levels.push_back(level_functional(alpha));
        std::vector<double> vals;
        for (double eps : eps_sequence) vals.push_back(two_vertex_odd_weight(eps, L, alpha, opt));
        rep.sweep_values.push_back(vals);
        rep.extrapolated_weights.push_back(quadrature::power_law_limit(vals, ratio).first);
    }
    double level_norm = 0.0;
    for (double l : rep.levels) level_norm = std::max(level_norm, std::abs(l));
    if (level_norm < 1e-12) throw std::domain_error("extract_level: degenerate family (levels vanish)");
    auto fit = quadrature::fit_proportional(rep.levels, rep.extrapolated_weights);
    rep.c_an = fit.slope;
    rep.residual = fit.residual_norm;
    rep.relative_residual = fit.value_norm > 0 ? fit.residual_norm / fit.value_norm : 0.0;
    rep.stderr_c = fit.stderr_slope;
    return rep;
}

WeightResult boundary_wheel_weight(const graphs::ChiralGraph& g, double eps, double L,
                                   const ParityInput& legs, const WeightOptions& opt) {
    return run_image_box(g, -1, eps, L, legs, opt);
}

WeightResult boundary_anomaly_weight(const graphs::ChiralGraph& g, int distinguished_edge,
                                     double eps, double L, const ParityInput& legs,
                                     const WeightOptions& opt) {
    if (distinguished_edge < 0)
        throw std::domain_error("boundary_anomaly_weight: edge index must be >= 0");
    return run_image_box(g, distinguished_edge, eps, L, legs, opt);
}

std::vector<ParityLeg> default_level_family() {
    // a = 1 on the scalar component, a = z on the dzbar component, with
    // distinct envelope widths so the level functionals span a range.
    std::vector<ParityLeg> family;
    for (double s : {0.5, 1.0, 1.5}) {
        ParityLeg leg;
        leg.a0 = {{{0, 0}, Rat(1)}};      // scalar part 1
        leg.a1 = {{{1, 0}, Rat(1)}};      // dzbar part z
        leg.sigma_z = s;
        leg.f0 = {{1, Rat(1)}};
        leg.f1 = {{0, Rat(1)}};
        leg.content = {Rat(1), Rat(1), Rat(1), Rat(0)};
        family.push_back(leg);
    }
    return family;
}

ParityInput default_boundary_wheel_input(int m) {
    ParityInput legs;
    for (int i = 0; i < m; ++i) {
        ParityLeg leg;
        leg.a0 = (i == 1) ? ZPoly{{{1, 0}, Rat(1)}} : ZPoly{{{0, 0}, Rat(1)}};
        leg.a1 = leg.a0;
        leg.f0 = {{1, Rat(1)}};
        leg.f1 = {{0, Rat(1)}};
        leg.sigma_t = 1.0 + 0.5 * i;
        if (i == 0)
            leg.content = {Rat(0), Rat(1), Rat(0), Rat(0)};  // dzbar
        else
            leg.content = {Rat(0), Rat(0), Rat(1), Rat(0)};  // dt
        legs.push_back(leg);
    }
    return legs;
}

}  // namespace boundary
}  // namespace mixedbf
