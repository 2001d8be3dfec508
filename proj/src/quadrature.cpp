#include "mixedbf/quadrature.hpp"

#include <cmath>
#include <atomic>
#include <cstdlib>
#include <thread>

namespace mixedbf {
namespace quadrature {

GaussLegendre::GaussLegendre(int order) {
    if (order < 1) throw std::invalid_argument("GaussLegendre: order must be >= 1");
    x.resize(order);
    w.resize(order);
    // Newton iteration on Legendre polynomials
    for (int i = 0; i < order; ++i) {
        double t = std::cos(M_PI * (i + 0.75) / (order + 0.5));
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = t;
            for (int k = 2; k <= order; ++k) {
                double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            double dp = order * (t * p1 - p0) / (t * t - 1.0);
            double dt = p1 / dp;
            t -= dt;
            if (std::abs(dt) < 1e-15) break;
        }
        double p0 = 1.0, p1 = t;
        for (int k = 2; k <= order; ++k) {
            double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        double dp = order * (t * p1 - p0) / (t * t - 1.0);
        x[i] = t;
        w[i] = 2.0 / ((1.0 - t * t) * dp * dp);
    }
}

int thread_count_from_env() {
    const char* env = std::getenv("MIXEDBF_THREADS");
    if (env) {
        int n = std::atoi(env);
        if (n >= 1) return n;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : int(std::min(hc, 8u));
}

namespace {

// Evaluate one level of the composite tensor rule. Nodes along each dimension
// are identical; the flat index enumerates the tensor grid in row-major order.
// The grid is cut into fixed-size chunks independent of the thread count;
// each chunk is summed sequentially and chunk partials are combined in chunk
// order, so the result is bit-identical for any number of threads.
double tensor_level(int dim, const std::vector<double>& nodes, const std::vector<double>& weights,
                    const std::function<double(const std::vector<double>&)>& f, int threads) {
    const size_t per_dim = nodes.size();
    size_t total = 1;
    for (int d = 0; d < dim; ++d) total *= per_dim;

    auto eval_range = [&](size_t begin, size_t end) {
        std::vector<double> pt(dim);
        double acc = 0.0;
        for (size_t flat = begin; flat < end; ++flat) {
            size_t rem = flat;
            double wt = 1.0;
            for (int d = 0; d < dim; ++d) {
                size_t idx = rem % per_dim;
                rem /= per_dim;
                pt[d] = nodes[idx];
                wt *= weights[idx];
            }
            acc += wt * f(pt);
        }
        return acc;
    };

    constexpr size_t kChunk = 4096;
    const size_t nchunks = (total + kChunk - 1) / kChunk;
    int nthreads = std::max(1, threads);
    if (nthreads == 1 || nchunks == 1) {
        double acc = 0.0;
        for (size_t c = 0; c < nchunks; ++c)
            acc += eval_range(c * kChunk, std::min(total, (c + 1) * kChunk));
        return acc;
    }
    std::vector<double> partial(nchunks, 0.0);
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    for (int t = 0; t < nthreads; ++t) {
        pool.emplace_back([&] {
            for (;;) {
                size_t c = next.fetch_add(1);
                if (c >= nchunks) break;
                partial[c] = eval_range(c * kChunk, std::min(total, (c + 1) * kChunk));
            }
        });
    }
    for (auto& th : pool) th.join();
    double acc = 0.0;
    for (double p : partial) acc += p;
    return acc;
}

BoxResult refine(int dim, const std::function<void(int, std::vector<double>&, std::vector<double>&)>& grid,
                 const std::function<double(const std::vector<double>&)>& f, const BoxOptions& opt) {
    BoxResult res;
    double prev = 0.0;
    bool have_prev = false;
    std::vector<double> nodes, weights;
    for (int level = 0;; ++level) {
        grid(level, nodes, weights);
        double val = tensor_level(dim, nodes, weights, f, opt.threads);
        res.value = val;
        res.level = level;
        if (have_prev) {
            res.error_estimate = std::abs(val - prev);
            double scale = std::max(std::abs(val), opt.abs_floor);
            if (res.error_estimate <= opt.rel_tol * scale) {
                res.converged = true;
                return res;
            }
        }
        prev = val;
        have_prev = true;
        if (level >= opt.max_level) break;
    }
    res.converged = false;
    if (opt.throw_on_nonconvergence)
        throw QuadratureError("quadrature did not reach the requested tolerance");
    return res;
}

}  // namespace

BoxResult integrate_log_box(int dim, double lo, double hi,
                            const std::function<double(const std::vector<double>&)>& f,
                            const BoxOptions& opt) {
    if (!(lo > 0.0) || !(hi > lo)) throw std::domain_error("integrate_log_box: need 0 < lo < hi");
    if (dim < 1) throw std::domain_error("integrate_log_box: dimension must be >= 1");
    const double ulo = std::log(lo), uhi = std::log(hi);
    GaussLegendre gl(opt.order);

    auto grid = [&](int level, std::vector<double>& nodes, std::vector<double>& weights) {
        int panels = opt.base_panels << level;
        nodes.clear();
        weights.clear();
        double h = (uhi - ulo) / panels;
        for (int p = 0; p < panels; ++p) {
            double a = ulo + p * h;
            for (int q = 0; q < opt.order; ++q) {
                double u = a + 0.5 * h * (gl.x[q] + 1.0);
                double T = std::exp(u);
                nodes.push_back(T);
                weights.push_back(0.5 * h * gl.w[q] * T);  // du weight times dT/du
            }
        }
    };
    return refine(dim, grid, f, opt);
}

BoxResult integrate_half_space(const std::vector<double>& scales,
                               const std::function<double(const std::vector<double>&)>& f,
                               const BoxOptions& opt) {
    int dim = int(scales.size());
    if (dim < 1) throw std::domain_error("integrate_half_space: dimension must be >= 1");
    GaussLegendre gl(opt.order);
    // same node layout per dimension up to the scale factor; to keep a single
    // shared axis we fold the scale into the integrand via pt scaling
    auto grid = [&](int level, std::vector<double>& nodes, std::vector<double>& weights) {
        int panels = opt.base_panels << level;
        nodes.clear();
        weights.clear();
        double h = 1.0 / panels;
        for (int p = 0; p < panels; ++p) {
            double a = p * h;
            for (int q = 0; q < opt.order; ++q) {
                double x = a + 0.5 * h * (gl.x[q] + 1.0);
                double t = x / (1.0 - x);
                double jac = 1.0 / ((1.0 - x) * (1.0 - x));
                nodes.push_back(t);
                weights.push_back(0.5 * h * gl.w[q] * jac);
            }
        }
    };
    auto scaled_f = [&](const std::vector<double>& pt) {
        std::vector<double> t(dim);
        double jac = 1.0;
        for (int d = 0; d < dim; ++d) {
            t[d] = scales[d] * pt[d];
            jac *= scales[d];
        }
        return jac * f(t);
    };
    return refine(dim, grid, scaled_f, opt);
}

std::pair<double, double> aitken_limit(const std::vector<double>& seq) {
    if (seq.size() < 3) throw std::invalid_argument("aitken_limit: need at least three values");
    size_t k = seq.size() - 3;
    double a = seq[k], b = seq[k + 1], c = seq[k + 2];
    double denom = a - 2 * b + c;
    if (denom == 0.0) return {c, std::abs(c - b)};
    double limit = c - (c - b) * (c - b) / denom;
    return {limit, std::abs(limit - c)};
}

std::pair<double, double> power_law_limit(const std::vector<double>& values, double ratio) {
    if (values.size() < 3) throw std::invalid_argument("power_law_limit: need at least three values");
    if (!(ratio > 1.0)) throw std::invalid_argument("power_law_limit: ratio must exceed one");
    auto extrapolate_at = [&](size_t n) -> std::pair<double, bool> {
        double d1 = values[n - 2] - values[n - 1];
        double d2 = values[n - 1] - values[n];
        if (d2 == 0.0) return {values[n], true};
        double q = d1 / d2;
        if (!(q > 1.0 + 1e-9)) return {values[n], false};
        return {values[n] - d2 / (q - 1.0), true};
    };
    auto [limit, ok] = extrapolate_at(values.size() - 1);
    double err;
    if (!ok) {
        err = std::abs(values[values.size() - 1] - values[values.size() - 2]);
    } else if (values.size() >= 4) {
        auto [prev, ok2] = extrapolate_at(values.size() - 2);
        err = std::abs(limit - prev);
    } else {
        err = std::abs(limit - values.back());
    }
    return {limit, err};
}

ProportionalFit fit_proportional(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("fit_proportional: need matching samples, at least two");
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (size_t i = 0; i < x.size(); ++i) {
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
        syy += y[i] * y[i];
    }
    if (sxx == 0.0) throw std::domain_error("fit_proportional: degenerate abscissae");
    ProportionalFit fit;
    fit.slope = sxy / sxx;
    double ss = 0.0;
    for (size_t i = 0; i < x.size(); ++i) {
        double r = y[i] - fit.slope * x[i];
        ss += r * r;
    }
    fit.residual_norm = std::sqrt(ss);
    fit.value_norm = std::sqrt(syy);
    size_t dof = x.size() > 1 ? x.size() - 1 : 1;
    fit.stderr_slope = std::sqrt(ss / double(dof) / sxx);
    return fit;
}

}  // namespace quadrature
}  // namespace mixedbf
