#pragma once

#include "mixedbf/exterior.hpp"
#include "mixedbf/graphs.hpp"
#include "mixedbf/quadrature.hpp"

#include <array>
#include <map>
#include <string>
#include <vector>

namespace mixedbf {
namespace weights {

// Polynomial in one vertex's z, zbar with rational coefficients.
using ZPoly = std::map<std::pair<int, int>, Rat>;  // (z power, zbar power) -> coeff
// Polynomial in one vertex's t.
using TPoly = std::map<int, Rat>;

// Form-degree components an external leg can contribute at its vertex.
enum LegComponent : int {
    kScalar = 0,   // 1
    kDzbar = 1,    // dzbar
    kDt = 2,       // dt
    kDzbarDt = 3,  // dzbar ^ dt
};

// Separable test insertion a(z) f(t) per external leg: polynomial times
// Gaussian envelope in each factor, plus the form-degree content. When
// f_one_form is nonempty it replaces f on the dt-carrying components (the
// boundary parity inputs distinguish the 0-form and 1-form t factors).
struct LegInput {
    ZPoly a = {{{0, 0}, Rat(1)}};
    ZPoly a_dzbar = {};  // when nonempty, replaces a on the dzbar-carrying components
    double sigma_z = 1.0;
    TPoly f = {{0, Rat(1)}};
    TPoly f_one_form = {};
    double sigma_t = 1.0;
    std::array<Rat, 4> content = {Rat(0), Rat(0), Rat(0), Rat(0)};

    static LegInput component(LegComponent c);
};

struct TestInput {
    std::vector<LegInput> legs;  // one per wheel vertex, in cycle order
};

struct WeightResult {
    double value = 0.0;
    double quadrature_error_estimate = 0.0;
    bool degree_zero_flag = false;  // vanished exactly by form-degree accounting
    bool converged = true;
    int term_count = 0;
};

struct WeightOptions {
    quadrature::BoxOptions box;  // T-box quadrature controls
    WeightOptions() {
        box.order = 8;
        box.base_panels = 1;
        box.max_level = 3;
        box.rel_tol = 1e-6;
        box.threads = 0;  // 0: resolve from MIXEDBF_THREADS / hardware
    }
};

// Scalar integrand extracted from the top generator word of the assembled
// wheel: terms grouped by Gaussian tag, each a rational-in-scales coefficient
// times pi^{pi_half/2} times a coordinate monomial. Bulk evaluation closes
// the coordinate integral by Wick's lemma.
struct IntegrandTerm {
    ScaleRational coeff;
    int pi_half = 0;
    std::vector<int> zexp, zbexp, texp;  // per-vertex exponents
};

struct IntegrandGroup {
    GaussTag tag;
    std::vector<IntegrandTerm> terms;
};

struct AssembledIntegrand {
    int m = 0;                    // number of vertices
    std::vector<int> tbox_syms;   // scale symbols integrated over the T-box
    std::map<int, double> fixed;  // bindings for eps and envelope symbols
    std::vector<IntegrandGroup> groups;
    bool half_space = false;  // t-sector over the half space (boundary use)
    bool empty() const { return groups.empty(); }
    size_t term_count() const;
};

// Assemble a wheel integrand. `heat_edge` (cycle position) marks the
// distinguished anomaly edge carrying the heat kernel at the cutoff scale;
// -1 for none. With image = true every propagator edge carries the
// method-of-images pair E - E* and the t-sector is a half-space integral.
AssembledIntegrand assemble_wheel(const graphs::ChiralGraph& g, const TestInput& phi,
                                  double eps, int heat_edge = -1, bool image = false);

// Inner coordinate integral at fixed scales (closed form via Wick's lemma).
double integrand_value(const AssembledIntegrand& ai, const std::vector<double>& tbox_values,
                       const quadrature::BoxOptions& tquad = {});

// Analytic weight of a one-loop wheel between cutoffs. Throws
// std::domain_error unless the graph is a wheel and 0 < eps < L.
WeightResult bulk_weight(const graphs::ChiralGraph& g, double eps, double L, const TestInput& phi,
                         const WeightOptions& opt = {});

// Anomaly weight: the heat kernel at scale eps sits on the distinguished
// edge (cycle position), the remaining edges carry propagators integrated
// over [eps, L]^n.
WeightResult anomaly_weight(const graphs::ChiralGraph& g, int distinguished_edge, double eps,
                            double L, const TestInput& phi, const WeightOptions& opt = {});

// Scale-box comparison: lhs = integral of (sum T)^{-3/2} over [eps, L]^{n+1},
// rhs = the mean-inequality closed form (integral of (prod T)^{-3/2(n+1)}).
struct TBoxBound {
    double lhs = 0.0;
    double rhs = 0.0;
};
TBoxBound t_box_bound(int n, double eps, double L, const WeightOptions& opt = {});

// Closed-form bound value for the anomaly scale integral over [eps, L]^n.
double anomaly_box_bound(int n, double eps, double L);

// Symbolic check that order-n holomorphic derivatives of the propagator
// integrand reduce to (-zbar/4T)^n times itself.
bool holomorphic_reduction_check(int order);

// Deterministic identifier for sweep outputs.
std::string graph_id(const graphs::ChiralGraph& g);

struct SweepRow {
    double eps = 0.0;
    double L = 0.0;
    std::string graph_id;
    double value = 0.0;
    double error_estimate = 0.0;
};

std::vector<SweepRow> epsilon_sweep(const graphs::ChiralGraph& g, const std::vector<double>& eps_values,
                                    double L, const TestInput& phi, const WeightOptions& opt = {},
                                    bool anomaly = false, int distinguished_edge = 0);

// Default separable inputs completing the wheel's top form, built from the
// form-degree bookkeeping: one dzbar^dt leg is replaced by lower components
// until the count matches. Returns an input with nonzero weight sectors for
// cubic wheels.
TestInput default_wheel_input(int m, bool anomaly = false);

}  // namespace weights
}  // namespace mixedbf
