#pragma once

#include "mixedbf/scalepoly.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <vector>

namespace mixedbf {
namespace gaussian {

// Matrix of the wheel quadratic form: diagonal (1/T_0, ..., 1/T_{n-1}) plus
// the rank-one all-(1/T_n) matrix. Symbolic in the scale symbols 0..n.
struct RankOneShiftedMatrix {
    int n = 0;
    explicit RankOneShiftedMatrix(int dim);
    ScaleRational entry(int i, int j) const;
};

// Closed-form inverse: diagonal T_i plus d_jk = -T_j T_k / (T_0 + ... + T_n).
std::vector<std::vector<ScaleRational>> inverse(const RankOneShiftedMatrix& m);

// det(M^{-1}) = T_0 ... T_n / (T_0 + ... + T_n).
ScaleRational det_inverse(const RankOneShiftedMatrix& m);

// Monomial over the real coordinates of (q_0, ..., q_{n-1}): per coordinate a
// direction (0 = x, 1 = y, 2 = t) and index, with exponent.
struct RealMono {
    // exps[dir][i] = exponent of that real coordinate
    std::vector<std::array<int, 3>> exps;  // size n, entries {x_i, y_i, t_i}
};

// Polynomial over the real coordinates with rational coefficients.
using RealPoly = std::vector<std::pair<RealMono, Rat>>;

// Exact Wick moment against the Gaussian density
//   exp( - sum |q_i|^2 / 4T_i - |sum q_i|^2 / 4T_n )
// over (C x R)^n. The value is prefactor x ratio, where the prefactor is the
// total mass (4 pi)^{3n/2} (T_0...T_n / sum T)^{3/2} and ratio is an exact
// rational function of the scales. Covariance per real direction is 2 M^{-1}.
struct MomentValue {
    int n = 0;                // arity (prefactor exponent bookkeeping)
    ScaleRational ratio;      // rational part; full value = ratio * mass(n)
    double evaluate(const std::vector<double>& T) const;  // numeric total
};

MomentValue expectation(const RealPoly& poly, int n);

// Convenience: moment of a single monomial.
MomentValue expectation(const RealMono& mono, int n);

// Numeric total Gaussian mass (4 pi)^{3n/2} (prod T / sum T)^{3/2}.
double gaussian_mass(const std::vector<double>& T);

// --- numeric Wick engine (used by the weight evaluators) --------------------

// Moments of monomials in (z_i, zbar_i, t_i) against exp(-1/4 v^T M_* v) per
// real direction, where M_z governs x and y and M_t governs t. Pairings:
//   <z_i zbar_j> = 4 (M_z^{-1})_{ij},  <t_i t_j> = 2 (M_t^{-1})_{ij},
//   <z z> = <zbar zbar> = <z t> = 0.
// Total mass: (4 pi)^m / det(M_z) x (4 pi)^{m/2} / det(M_t)^{1/2}.
class NumericWick {
  public:
    NumericWick(std::vector<std::vector<double>> Mz, std::vector<std::vector<double>> Mt);

    int dim() const { return m_; }
    double mass() const { return mass_; }
    double cov_z(int i, int j) const { return 4.0 * Mz_inv_[i][j]; }   // <z_i zbar_j>
    double cov_t(int i, int j) const { return 2.0 * Mt_inv_[i][j]; }   // <t_i t_j>

    // Moment (including the mass factor) of prod z_i^{a_i} zbar_i^{b_i} t_i^{c_i}.
    double moment(const std::vector<int>& zexp, const std::vector<int>& zbexp,
                  const std::vector<int>& texp) const;

    // Moment of the t-monomial alone (no mass, pure pairing sum).
    double t_pairing_sum(const std::vector<int>& texp) const;
    double z_pairing_sum(const std::vector<int>& zexp, const std::vector<int>& zbexp) const;
    double mass_z() const { return mass_z_; }
    double mass_t() const { return mass_t_; }

  private:
    int m_;
    std::vector<std::vector<double>> Mz_inv_, Mt_inv_;
    double mass_, mass_z_, mass_t_;
};

// Exact LU-free helpers shared with the defcomplex module.
double det_and_invert(std::vector<std::vector<double>>& a, std::vector<std::vector<double>>& inv);

}  // namespace gaussian
}  // namespace mixedbf
