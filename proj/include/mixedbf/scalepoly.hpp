#pragma once

#include "mixedbf/rational.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace mixedbf {

// Scale symbols. Nonnegative ids are the length-scale parameters T_0, T_1, ...
// Negative ids are reserved: kEpsSymbol is the short-distance cutoff, and
// envelope widths of test inputs get ids from envelope_symbol().
constexpr int kEpsSymbol = -1;

inline int envelope_symbol(int k) { return -2 - k; }

std::string symbol_name(int sym);

// Monomial in scale symbols. Exponents are stored in *half* units so that the
// kernel normalizations T^{-3/2}, T^{-5/2} stay exact; negative exponents are
// allowed (Laurent monomials).
using ScaleMono = std::vector<std::pair<int, int>>;  // (symbol, half-exponent), sorted

// Sparse Laurent polynomial in the scale symbols with rational coefficients.
class ScalePoly {
  public:
    ScalePoly() = default;
    explicit ScalePoly(const Rat& c);
    static ScalePoly symbol(int sym, int half_exp = 2);  // T_sym^(half_exp/2)

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Rat constant_value() const;  // requires is_constant()

    ScalePoly operator+(const ScalePoly& o) const;
    ScalePoly operator-(const ScalePoly& o) const;
    ScalePoly operator*(const ScalePoly& o) const;
    ScalePoly operator-() const;
    ScalePoly& operator+=(const ScalePoly& o);

    bool operator==(const ScalePoly& o) const { return terms_ == o.terms_; }
    bool operator<(const ScalePoly& o) const { return terms_ < o.terms_; }

    // Evaluate at positive symbol values (half exponents use sqrt).
    double evaluate(const std::map<int, double>& binding) const;

    // Max/min total half-degree over terms; 0 for the zero polynomial.
    int max_half_degree() const;
    int min_half_degree() const;

    const std::map<ScaleMono, Rat>& terms() const { return terms_; }
    void add_term(const ScaleMono& m, const Rat& c);

    std::string str() const;

  private:
    std::map<ScaleMono, Rat> terms_;
};

// Quotient of scale polynomials, kept with a factored denominator: the
// denominator is a product of monic, monomial-free factors with positive
// integer powers; all monomial and rational content lives in the Laurent
// numerator. Sums over a shared factor family (the ubiquitous sum-of-scales
// denominators) therefore stay compact. Equality cross-multiplies, so the
// partial normalization is never trusted for identities.
class ScaleRational {
  public:
    ScaleRational() = default;
    ScaleRational(const Rat& c);
    explicit ScaleRational(const ScalePoly& p);
    ScaleRational(const ScalePoly& num, const ScalePoly& den);

    static ScaleRational symbol(int sym, int half_exp = 2) {
        return ScaleRational(ScalePoly::symbol(sym, half_exp));
    }

    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const { return den_.empty() && num_.is_constant(); }
    Rat constant_value() const;

    ScaleRational operator+(const ScaleRational& o) const;
    ScaleRational operator-(const ScaleRational& o) const;
    ScaleRational operator*(const ScaleRational& o) const;
    ScaleRational operator/(const ScaleRational& o) const;
    ScaleRational operator-() const;
    ScaleRational& operator+=(const ScaleRational& o);
    ScaleRational& operator*=(const ScaleRational& o);

    bool equals(const ScaleRational& o) const;  // exact, via cross-multiplication
    bool operator==(const ScaleRational& o) const { return equals(o); }

    double evaluate(const std::map<int, double>& binding) const;

    const ScalePoly& num() const { return num_; }
    ScalePoly den() const;  // expanded denominator
    const std::map<ScalePoly, int>& den_factors() const { return den_; }

    std::string str() const;

    // Total order usable as a map key (structural, not mathematical).
    bool operator<(const ScaleRational& o) const {
        if (!(num_ == o.num_)) return num_ < o.num_;
        return den_ < o.den_;
    }

  private:
    void push_den_factor(const ScalePoly& f, int power);
    void prune();
    ScalePoly num_;                 // Laurent numerator
    std::map<ScalePoly, int> den_;  // factor -> power, factors monic & monomial-free
};

ScaleRational pow(const ScaleRational& b, int e);

}  // namespace mixedbf
