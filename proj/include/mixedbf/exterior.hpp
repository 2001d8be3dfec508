#pragma once

#include "mixedbf/scalepoly.hpp"

#include <complex>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace mixedbf {

// Generator kinds and coordinate kinds share one encoding: id = 3*vertex + kind.
// The canonical generator order is dz < dzbar < dt within each vertex.
enum class Kind : int { dz = 0, dzbar = 1, dt = 2 };

struct Generator {
    int vertex;
    Kind kind;
    int id() const { return 3 * vertex + static_cast<int>(kind); }
};

inline int gen_id(int vertex, Kind kind) { return 3 * vertex + static_cast<int>(kind); }
inline int gen_vertex(int id) { return id / 3; }
inline Kind gen_kind(int id) { return static_cast<Kind>(id % 3); }
std::string gen_name(int id);
std::string coord_name(int id);

// Anticommuting word, stored sorted and repetition-free.
using GenWord = std::vector<int>;

// Coordinate monomial: sorted (coordinate id, exponent>0) pairs. Coordinate
// ids reuse the generator encoding with kinds z, zbar, t.
using CoordMono = std::vector<std::pair<int, int>>;

// One quadratic block of a Gaussian exponent:
//   exp( -mult * ( |sum_i zc[i] z_i|^2 + (sum_i tc[i] t_i)^2 ) / (4 * scale) )
// zc/tc are integer coefficient vectors over the vertex universe; either may
// be all zero. Canonical form: first nonzero entry of zc (and of tc) positive.
struct GaussBlock {
    int scale_sym = 0;
    int mult = 1;
    std::vector<int> zc;
    std::vector<int> tc;

    void canonicalize();
    bool operator<(const GaussBlock& o) const;
    bool operator==(const GaussBlock& o) const;
};

// Multiset of blocks, sorted, equal blocks merged into mult.
class GaussTag {
  public:
    GaussTag() = default;
    explicit GaussTag(std::vector<GaussBlock> blocks);

    bool empty() const { return blocks_.empty(); }
    const std::vector<GaussBlock>& blocks() const { return blocks_; }

    GaussTag merged(const GaussTag& o) const;  // exponents add

    bool operator<(const GaussTag& o) const { return blocks_ < o.blocks_; }
    bool operator==(const GaussTag& o) const { return blocks_ == o.blocks_; }

    double evaluate(const std::vector<std::complex<double>>& z, const std::vector<double>& t,
                    const std::map<int, double>& binding) const;
    std::string str() const;

  private:
    std::vector<GaussBlock> blocks_;
};

// A single canonical term: coefficient x pi^(pi_half/2) x monomial x Gaussian x word.
struct FormTerm {
    ScaleRational coeff;
    int pi_half = 0;
    CoordMono mono;
    GaussTag gauss;
    GenWord word;
};

// Graded anticommutative algebra element over per-vertex generators, with
// coefficients that are coordinate monomials times rational functions of the
// scale symbols times a shared family of Gaussian factors. Always canonical:
// terms with equal (word, mono, gauss, pi_half) are merged, zeros dropped.
class FormExpression {
  public:
    FormExpression() = default;
    explicit FormExpression(const Rat& c);
    static FormExpression zero() { return FormExpression(); }
    static FormExpression scalar(ScaleRational c, int pi_half = 0);
    static FormExpression generator(int vertex, Kind kind);
    static FormExpression coordinate(int vertex, Kind kind);  // z, zbar or t monomial
    static FormExpression term(const FormTerm& t);

    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }

    FormExpression operator+(const FormExpression& o) const;
    FormExpression operator-(const FormExpression& o) const;
    FormExpression operator-() const;
    FormExpression& operator+=(const FormExpression& o);
    FormExpression scaled(const ScaleRational& c, int pi_half = 0) const;

    bool operator==(const FormExpression& o) const;

    // Homogeneous degree, or nullopt for mixed/zero expressions.
    std::optional<int> degree() const;

    // Iterate in deterministic canonical order.
    template <typename F>
    void for_each(F&& f) const {
        for (const auto& [k, v] : terms_) f(k, v);
    }

    std::string render() const;  // deterministic plain-text form

    // map key part: (word, mono, gauss, pi_half)
    struct Key {
        GenWord word;
        CoordMono mono;
        GaussTag gauss;
        int pi_half = 0;
        bool operator<(const Key& o) const;
    };

    const std::map<Key, ScaleRational>& terms() const { return terms_; }
    void add(const Key& k, const ScaleRational& c);

  private:
    std::map<Key, ScaleRational> terms_;
};

// Graded product. Gaussian exponents of the two factors add blockwise.
FormExpression wedge(const FormExpression& a, const FormExpression& b);

// Coordinate derivation d/d(coordinate). Generators are annihilated; the
// product rule covers the monomial and the Gaussian exponent.
FormExpression derive(const FormExpression& f, int coord_id);
inline FormExpression derive(const FormExpression& f, int vertex, Kind kind) {
    return derive(f, gen_id(vertex, kind));
}

// Point assignment for numeric evaluation.
struct Point {
    std::vector<std::complex<double>> z;  // per vertex; zbar is the conjugate
    std::vector<double> t;
};

// Coefficient of the requested generator word at the point. Throws
// std::domain_error when the expression has mixed degree and the requested
// word is not of the top degree present.
std::complex<double> evaluate(const FormExpression& f, const Point& p,
                              const std::map<int, double>& binding, const GenWord& word);

// Multiply two sorted repetition-free words; returns sign 0 if a generator repeats.
int merge_words(const GenWord& a, const GenWord& b, GenWord& out);

CoordMono mono_mul(const CoordMono& a, const CoordMono& b);

// Pullback along t_v -> -t_v: flips odd t_v powers, dt_v generators and the
// t-coefficients of Gaussian blocks at that vertex.
FormExpression reflect_time(const FormExpression& f, int vertex);

// Pullback along the swap of two vertices' coordinates (z, t and forms).
FormExpression swap_vertices(const FormExpression& f, int v0, int v1);

// Interior product with a single generator (antiderivation, acting from the left).
FormExpression interior(const FormExpression& f, int gen);

}  // namespace mixedbf
