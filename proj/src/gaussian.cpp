#include "mixedbf/gaussian.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

namespace mixedbf {
namespace gaussian {

RankOneShiftedMatrix::RankOneShiftedMatrix(int dim) : n(dim) {
    if (dim < 1) throw std::domain_error("RankOneShiftedMatrix: dimension must be >= 1");
}

ScaleRational RankOneShiftedMatrix::entry(int i, int j) const {
    ScaleRational b = ScaleRational(ScalePoly(Rat(1)), ScalePoly::symbol(n));
    if (i != j) return b;
    return ScaleRational(ScalePoly(Rat(1)), ScalePoly::symbol(i)) + b;
}

namespace {

ScalePoly scale_sum(int n) {
    ScalePoly s;
    for (int j = 0; j <= n; ++j) s += ScalePoly::symbol(j);
    return s;
}

}  // namespace

std::vector<std::vector<ScaleRational>> inverse(const RankOneShiftedMatrix& m) {
    int n = m.n;
    ScalePoly sum = scale_sum(n);
    std::vector<std::vector<ScaleRational>> out(n, std::vector<ScaleRational>(n));
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
            out[j][k] = -ScaleRational(ScalePoly::symbol(j) * ScalePoly::symbol(k), sum);
            if (j == k) out[j][k] += ScaleRational::symbol(j);
        }
    }
    return out;
}

ScaleRational det_inverse(const RankOneShiftedMatrix& m) {
    ScalePoly prod(Rat(1));
    for (int i = 0; i <= m.n; ++i) prod = prod * ScalePoly::symbol(i);
    return ScaleRational(prod, scale_sum(m.n));
}

namespace {

// Perfect-matching sum within one direction's slot list.
ScaleRational pair_sum(const std::vector<int>& slots,
                       const std::vector<std::vector<ScaleRational>>& cov2) {
    if (slots.empty()) return ScaleRational(Rat(1));
    if (slots.size() % 2) return ScaleRational();
    int first = slots[0];
    ScaleRational total;
    for (size_t k = 1; k < slots.size(); ++k) {
        std::vector<int> rest;
        rest.reserve(slots.size() - 2);
        for (size_t q = 1; q < slots.size(); ++q)
            if (q != k) rest.push_back(slots[q]);
        total += cov2[first][slots[k]] * pair_sum(rest, cov2);
    }
    return total;
}

}  // namespace

MomentValue expectation(const RealMono& mono, int n) {
    RankOneShiftedMatrix m(n);
    auto minv = inverse(m);
    std::vector<std::vector<ScaleRational>> cov2(n, std::vector<ScaleRational>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) cov2[i][j] = minv[i][j] * ScaleRational(Rat(2));

    if (int(mono.exps.size()) > n) throw std::domain_error("expectation: coordinate index out of range");
    MomentValue out;
    out.n = n;
    ScaleRational total(Rat(1));
    for (int dir = 0; dir < 3 && !total.is_zero(); ++dir) {
        std::vector<int> slots;
        for (size_t i = 0; i < mono.exps.size(); ++i)
            for (int q = 0; q < mono.exps[i][dir]; ++q) slots.push_back(int(i));
        total *= pair_sum(slots, cov2);
    }
    out.ratio = total;
    return out;
}

MomentValue expectation(const RealPoly& poly, int n) {
    MomentValue out;
    out.n = n;
    for (const auto& [mono, c] : poly) out.ratio += expectation(mono, n).ratio * ScaleRational(c);
    return out;
}

double gaussian_mass(const std::vector<double>& T) {
    int n = int(T.size()) - 1;
    if (n < 1) throw std::domain_error("gaussian_mass: need at least two scales");
    double prod = 1.0, sum = 0.0;
    for (double t : T) {
        if (!(t > 0.0)) throw std::domain_error("gaussian_mass: scales must be positive");
        prod *= t;
        sum += t;
    }
    return std::pow(4.0 * M_PI, 1.5 * n) * std::pow(prod / sum, 1.5);
}

double MomentValue::evaluate(const std::vector<double>& T) const {
    if (int(T.size()) != n + 1) throw std::invalid_argument("MomentValue::evaluate: scale count mismatch");
    std::map<int, double> binding;
    for (size_t i = 0; i < T.size(); ++i) binding[int(i)] = T[i];
    return ratio.evaluate(binding) * gaussian_mass(T);
}

// --- numeric engine ----------------------------------------------------------

double det_and_invert(std::vector<std::vector<double>>& a, std::vector<std::vector<double>>& inv) {
    int n = int(a.size());
    inv.assign(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i) inv[i][i] = 1.0;
    double det = 1.0;
    for (int c = 0; c < n; ++c) {
        int p = c;
        for (int r = c + 1; r < n; ++r)
            if (std::abs(a[r][c]) > std::abs(a[p][c])) p = r;
        if (a[p][c] == 0.0) throw std::domain_error("det_and_invert: singular matrix");
        if (p != c) {
            std::swap(a[p], a[c]);
            std::swap(inv[p], inv[c]);
            det = -det;
        }
        det *= a[c][c];
        double piv = a[c][c];
        for (int j = 0; j < n; ++j) {
            a[c][j] /= piv;
            inv[c][j] /= piv;
        }
        for (int r = 0; r < n; ++r) {
            if (r == c || a[r][c] == 0.0) continue;
            double f = a[r][c];
            for (int j = 0; j < n; ++j) {
                a[r][j] -= f * a[c][j];
                inv[r][j] -= f * inv[c][j];
            }
        }
    }
    return det;
}

NumericWick::NumericWick(std::vector<std::vector<double>> Mz, std::vector<std::vector<double>> Mt)
    : m_(int(Mz.size())) {
    double dz = det_and_invert(Mz, Mz_inv_);
    double dt = det_and_invert(Mt, Mt_inv_);
    if (dz <= 0.0 || dt <= 0.0) throw std::domain_error("NumericWick: matrix not positive definite");
    mass_z_ = std::pow(4.0 * M_PI, m_) / dz;
    mass_t_ = std::pow(4.0 * M_PI, 0.5 * m_) / std::sqrt(dt);
    mass_ = mass_z_ * mass_t_;
}

double NumericWick::t_pairing_sum(const std::vector<int>& texp) const {
    std::vector<int> slots;
    for (size_t i = 0; i < texp.size(); ++i)
        for (int q = 0; q < texp[i]; ++q) slots.push_back(int(i));
    std::function<double(std::vector<int>&)> rec = [&](std::vector<int>& s) -> double {
        if (s.empty()) return 1.0;
        if (s.size() % 2) return 0.0;
        double total = 0.0;
        int first = s[0];
        for (size_t k = 1; k < s.size(); ++k) {
            std::vector<int> rest;
            rest.reserve(s.size() - 2);
            for (size_t q = 1; q < s.size(); ++q)
                if (q != k) rest.push_back(s[q]);
            total += cov_t(first, s[k]) * rec(rest);
        }
        return total;
    };
    return rec(slots);
}

double NumericWick::z_pairing_sum(const std::vector<int>& zexp, const std::vector<int>& zbexp) const {
    std::vector<int> zs, zbs;
    for (size_t i = 0; i < zexp.size(); ++i)
        for (int q = 0; q < zexp[i]; ++q) zs.push_back(int(i));
    for (size_t i = 0; i < zbexp.size(); ++i)
        for (int q = 0; q < zbexp[i]; ++q) zbs.push_back(int(i));
    if (zs.size() != zbs.size()) return 0.0;
    std::function<double(size_t, std::vector<bool>&)> rec = [&](size_t i,
                                                                std::vector<bool>& used) -> double {
        if (i == zs.size()) return 1.0;
        double total = 0.0;
        for (size_t j = 0; j < zbs.size(); ++j) {
            if (used[j]) continue;
            used[j] = true;
            total += cov_z(zs[i], zbs[j]) * rec(i + 1, used);
            used[j] = false;
        }
        return total;
    };
    std::vector<bool> used(zbs.size(), false);
    return rec(0, used);
}

double NumericWick::moment(const std::vector<int>& zexp, const std::vector<int>& zbexp,
                           const std::vector<int>& texp) const {
    double z = z_pairing_sum(zexp, zbexp);
    if (z == 0.0) return 0.0;
    double t = t_pairing_sum(texp);
    return mass_ * z * t;
}

}  // namespace gaussian
}  // namespace mixedbf
