#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

namespace mixedbf {
namespace quadrature {

struct QuadratureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Gauss-Legendre rule on [-1, 1].
struct GaussLegendre {
    std::vector<double> x, w;
    explicit GaussLegendre(int order);
};

struct BoxResult {
    double value = 0.0;
    double error_estimate = 0.0;
    int level = 0;
    bool converged = true;
};

struct BoxOptions {
    int order = 8;        // GL points per panel
    int base_panels = 1;  // panels per dimension at level 0
    int max_level = 3;    // panel count doubles per level
    double rel_tol = 1e-6;
    double abs_floor = 1e-300;  // scale floor for the relative test
    int threads = 1;
    bool throw_on_nonconvergence = false;
};

// Deterministic tensor-product quadrature of f over the box [lo, hi]^dim in
// logarithmic coordinates (the integrand is smooth there; power-law edges at
// the lower endpoint become benign). Refines by doubling the panel count per
// dimension and estimates the error from the last two levels. Results are
// bit-identical for a fixed grid regardless of the thread count: threads own
// fixed index ranges and partial sums are combined in index order.
BoxResult integrate_log_box(int dim, double lo, double hi,
                            const std::function<double(const std::vector<double>&)>& f,
                            const BoxOptions& opt = {});

// Same machinery over [0, 1)^dim with the map t_i = scale_i * x / (1 - x),
// for half-space integrals of rapidly decaying integrands.
BoxResult integrate_half_space(const std::vector<double>& scales,
                               const std::function<double(const std::vector<double>&)>& f,
                               const BoxOptions& opt = {});

// Aitken (Shanks) limit estimate from the last three entries; the second
// member is a crude error estimate (the size of the last correction).
std::pair<double, double> aitken_limit(const std::vector<double>& seq);

// Rate-fitted limit of values sampled along a geometric parameter sequence
// (parameter shrinking by `ratio` per step): the decay exponent of the
// leading power-law correction is estimated from successive differences and
// removed. Falls back to the last value when the differences do not decay.
std::pair<double, double> power_law_limit(const std::vector<double>& values, double ratio);

// Least-squares fit through the origin y = c x: returns (c, residual norm,
// standard error of c).
struct ProportionalFit {
    double slope = 0.0;
    double residual_norm = 0.0;
    double stderr_slope = 0.0;
    double value_norm = 0.0;
};
ProportionalFit fit_proportional(const std::vector<double>& x, const std::vector<double>& y);

int thread_count_from_env();

}  // namespace quadrature
}  // namespace mixedbf
