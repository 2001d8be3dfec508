#pragma once

#include "mixedbf/weights.hpp"

#include <array>
#include <vector>

namespace mixedbf {
namespace boundary {

using weights::TPoly;
using weights::WeightOptions;
using weights::WeightResult;
using weights::ZPoly;

// Half-space field insertion obeying the chiral boundary condition: the
// 0-form t-factor f0 is an odd polynomial (so it vanishes at the boundary),
// the dt-factor f1 is even. The complex factor a covers both the scalar and
// the dzbar component of the field.
struct ParityLeg {
    ZPoly a0 = {{{0, 0}, Rat(1)}};  // scalar component of the complex factor
    ZPoly a1 = {{{0, 0}, Rat(1)}};  // dzbar component
    double sigma_z = 1.0;
    TPoly f0 = {{1, Rat(1)}};  // odd polynomial x envelope
    TPoly f1 = {{0, Rat(1)}};  // even polynomial x envelope
    double sigma_t = 1.0;
    std::array<Rat, 4> content = {Rat(1), Rat(1), Rat(1), Rat(1)};
};

using ParityInput = std::vector<ParityLeg>;

// Throws std::domain_error when f0 has even powers or f1 odd powers.
void validate_parity(const ParityLeg& leg);

weights::LegInput to_leg_input(const ParityLeg& leg);

// Closed form of the two-scale boundary integral
//   L log(2L) - eps log(L+eps) - L log(eps+L) + eps log(2 eps),
// the ordered-region (T0 <= T1) share of the box integral of 1/(T0+T1).
double boundary_t_integral(double eps, double L);

// Independent cross-check by nested quadrature over the ordered region.
double boundary_t_integral_quadrature(double eps, double L, int order = 24);

// Two-vertex wheel on the half space with the method-of-images propagators;
// the single field alpha sits on both external legs. The surviving mixed
// E-E* products factor into a complex-plane sector (closed form) and a
// half-line t-sector (deterministic quadrature).
WeightResult two_vertex_boundary_weight(double eps, double L, const ParityLeg& alpha,
                                        const WeightOptions& opt = {});

// Projection of the two-vertex weight onto the sector odd under f0 -> -f0,
// the home of the level functional.
double two_vertex_odd_weight(double eps, double L, const ParityLeg& alpha,
                             const WeightOptions& opt = {});

// The level functional int a ^ del a over the plane against the squared
// envelope: for a = a0 + a1 dzbar this is the closed-form Gaussian integral
// of (a0 d_z a1 - a1 d_z a0).
double level_functional(const ParityLeg& alpha);

struct LevelReport {
    double c_an = 0.0;
    double residual = 0.0;          // residual norm over the family
    double relative_residual = 0.0; // residual / value norm
    double stderr_c = 0.0;
    std::vector<double> levels;
    std::vector<double> extrapolated_weights;
    std::vector<std::vector<double>> sweep_values;  // per input, per eps
    std::vector<double> eps_sequence;
};

// Least-squares fit of the eps -> 0 extrapolated two-vertex weights against
// the level functional over a family of inputs. Throws std::domain_error for
// degenerate families (all levels near zero) or fewer than three inputs.
LevelReport extract_level(const std::vector<double>& eps_sequence, double L,
                          const std::vector<ParityLeg>& family, const WeightOptions& opt = {});

// Wheel weights on the half space: every propagator edge carries E - E*.
WeightResult boundary_wheel_weight(const graphs::ChiralGraph& g, double eps, double L,
                                   const ParityInput& legs, const WeightOptions& opt = {});

// Distinguished-edge variant with the image heat kernel at the cutoff scale.
WeightResult boundary_anomaly_weight(const graphs::ChiralGraph& g, int distinguished_edge,
                                     double eps, double L, const ParityInput& legs,
                                     const WeightOptions& opt = {});

// Spanning default family for the level fit (distinct envelope widths).
std::vector<ParityLeg> default_level_family();

// Parity inputs giving a live three-vertex boundary wheel.
ParityInput default_boundary_wheel_input(int m);

}  // namespace boundary
}  // namespace mixedbf
