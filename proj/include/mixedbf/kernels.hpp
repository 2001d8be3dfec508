#pragma once

#include "mixedbf/exterior.hpp"

#include <utility>
#include <vector>

namespace mixedbf {
namespace kernels {

// Ordered tuple of positive length-scale parameters, units of length^2.
struct ScaleVector {
    std::vector<double> entries;
    explicit ScaleVector(std::vector<double> e);
    int arity() const { return int(entries.size()); }
    std::map<int, double> binding() const;  // symbol i -> entries[i]
};

enum class KernelVariant { bulk, image };

struct KernelForm {
    FormExpression form;
    int arity = 1;  // number of coordinate slots
    KernelVariant variant = KernelVariant::bulk;
    std::map<int, double> binding;  // numeric values for the scale symbols used
};

// --- single-coordinate kernels, symbolic in the scale symbol ---------------

// Scalar heat kernel function (4 pi T)^{-3/2} exp(-(|z|^2+t^2)/4T).
FormExpression heat_function(int scale_sym, int vertex = 0);

// Gaussian 1-form G_T = heat_function * dz.
FormExpression gaussian_form(int scale_sym, int vertex = 0);

// Heat kernel on fields, K_T = heat_function * dzbar ^ dz ^ dt.
FormExpression heat_kernel(int scale_sym, int vertex = 0);

// Propagator integrand E_T = -(heat_function/T) dz ^ (zbar dt + t dzbar).
FormExpression propagator_integrand(int scale_sym, int vertex = 0);

// Two-point pullbacks along the difference map (v0 coords minus v1 coords).
FormExpression heat_kernel_pullback(int scale_sym, int v0, int v1);
FormExpression propagator_pullback(int scale_sym, int v0, int v1);

// Method-of-images variants on the half-space (reflect v1's time):
//   K^chi = K(t-s) - K(t+s),  Etilde = E - E*,  E* = reflection image of E.
FormExpression image_heat_kernel(int scale_sym, int v0, int v1);
FormExpression image_summand(int scale_sym, int v0, int v1);  // E*
FormExpression image_propagator_integrand(int scale_sym, int v0, int v1);

// Numeric-scale convenience wrappers. Throw std::domain_error for T <= 0.
KernelForm heat_kernel_at(double T);
KernelForm propagator_integrand_at(double T);
KernelForm image_propagator_integrand_at(double T);

// --- product kernels over difference coordinates ---------------------------

// Scalar product Gaussian: prod_{i<n} g_{T_i}(q_i) * g_{T_n}(sum q_i) on the
// vertex universe q_0..q_{n-1}, scale symbols 0..n. The degenerate holomorphic
// frame factors are omitted; all identities below act on this scalar family.
FormExpression product_gaussian(int n);

// Product of propagator integrands with the per-factor 1-form content
// (zbar dt + t dzbar), the holomorphic frame factor dropped as above.
FormExpression product_propagator(int n);

// --- differential operators -------------------------------------------------

struct DiffOpTerm {
    FormExpression coeff;  // form-valued coefficient
    int coord;             // coordinate id the derivation acts on
};

struct DiffOperator {
    std::vector<DiffOpTerm> terms;
    FormExpression apply(const FormExpression& f) const;
};

// Pullback substituting the last slot's coordinates by the sum of the others:
// slot n -> q_0 + ... + q_{n-1}, output universe of n vertices.
FormExpression pullback_last_to_sum(const FormExpression& f, int n);

// Product of single-slot scalar Gaussians g_{T_i}(slot i), i = 0..n.
FormExpression slot_gaussian_product(int n);

// zeta = (sum_j T_j)^{-1} sum_{i<n} T_i d/dz_i  on the n-coordinate universe
// with scale symbols 0..n. When eps_for_last is true the last scale symbol is
// the cutoff symbol instead of T_n (the distinguished-edge normalization).
DiffOperator zeta(int n, bool eps_for_last = false);
DiffOperator tau(int n);
DiffOperator dz_minus_zeta(int j, int n);  // throws std::domain_error if j >= n
DiffOperator dt_minus_tau(int j, int n);

// lambda_i = c1 dzbar_i d/dt_i + c2 dt_i d/dz_i with the solved constants.
DiffOperator lambda_op(int vertex);

// --- gauge machinery ---------------------------------------------------------

// Q = dbar + d_t as an operator on form expressions (sum over vertices).
FormExpression q_operator(const FormExpression& f, int n_vertices);

// Gauge-fix operator with sector constants:
//   Q*(F) = sum_v [ a1 * d/dz_v interior(dzbar_v) + a2 * d/dt_v interior(dt_v) ] F
FormExpression gauge_fix(const FormExpression& f, int n_vertices, const Rat& a1, const Rat& a2);

// Solved constants (computed once, exactly):
//   lambda_constants: (c1, c2) with (c1 dzbar d/dt + c2 dt d/dz) G_T = E_T
//   gauge_constants:  (a1, a2) with Q*(a1,a2) K_T = E_T
// laplacian_constants are the flat-space textbook values (4, 1) for which
// [Q, Q*] equals the standard Laplacian on scalars.
std::pair<Rat, Rat> lambda_constants();
std::pair<Rat, Rat> gauge_constants();
std::pair<Rat, Rat> laplacian_constants();

// --- directed edge kernels used by graph weights -----------------------------

// Directed propagator kernel on an edge with beta end b and alpha end a:
//   -(g_T(delta)/T) dz_b ^ [ dzbar(delta) * (dt_b - dt_a) + dt(delta) * (dzbar_b - dzbar_a) ]
// where delta = coords(b) - coords(a) and deriv_order k multiplies by
// (-(zbar_b - zbar_a)/4T)^k. With image = true the alpha end's time is
// reflected, producing the boundary image summand E*.
FormExpression edge_propagator(int scale_sym, int b, int a, int deriv_order = 0, bool image = false);

// Directed heat kernel (distinguished anomaly edge): keeps dz_b from the
// frame, no 1/T factor and no polynomial prefactor.
FormExpression edge_heat(int scale_sym, int b, int a, int deriv_order = 0, bool image = false);

}  // namespace kernels
}  // namespace mixedbf
