#pragma once

#include "mixedbf/graphs.hpp"
#include "mixedbf/rational.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace mixedbf {
namespace defcomplex {

using Matrix = std::vector<std::vector<Rat>>;

int rank(Matrix m);  // exact rational Gaussian elimination

// Finite-dimensional Lie algebra with rational structure constants and an
// invariant nondegenerate symmetric pairing.
struct FinDimLieAlgebra {
    int dim = 0;
    // bracket[i][j][k]: coefficient of e_k in [e_i, e_j]
    std::vector<std::vector<std::vector<Rat>>> bracket;
    std::vector<std::vector<Rat>> pairing;
    std::string name;

    void validate() const;  // antisymmetry, Jacobi, pairing invariance, nondegeneracy
    Matrix killing_form() const;
    bool is_semisimple() const;  // Killing form nondegenerate

    static FinDimLieAlgebra sl2();
    static FinDimLieAlgebra abelian(int n);
    static FinDimLieAlgebra direct_sum(const FinDimLieAlgebra& a, const FinDimLieAlgebra& b);
};

enum class Module { trivial, adjoint, coadjoint };

// Chevalley-Eilenberg complex Lambda g-dual tensor M with exact rational
// differentials; optionally reduced (the constants in degree zero dropped).
class CEComplex {
  public:
    CEComplex(const FinDimLieAlgebra& g, Module m, bool reduced = false);

    int top_degree() const { return g_.dim; }
    int dim_at(int k) const;
    Matrix differential(int k) const;  // C^k -> C^{k+1}
    std::vector<int> cohomology_dims() const;  // per degree 0..dim
    bool reduced() const { return reduced_; }
    const FinDimLieAlgebra& algebra() const { return g_; }

  private:
    FinDimLieAlgebra g_;
    Module module_;
    bool reduced_;
    int module_dim_;
};

// Two-term total complex  C*_red(g)[3] --delta--> C*(g, g-dual)[1]  with the
// connecting map sending a dual generator to 1 tensor itself, extended as an
// odd derivation. Degrees are total degrees; the construction verifies that
// the total differential squares to zero (throws std::logic_error if not).
class ComplexA {
  public:
    explicit ComplexA(const FinDimLieAlgebra& g);
    int min_degree() const { return -2; }          // C^1_red sits in degree -2
    int max_degree() const { return g_.dim; }      // C^{dim}(g; g-dual)[1]
    int dim_at(int total_degree) const;
    Matrix differential(int total_degree) const;
    std::vector<int> cohomology_dims() const;      // indexed from min_degree()

  private:
    FinDimLieAlgebra g_;
    std::vector<Matrix> reduced_d_, coef_d_, connecting_;
    int connecting_sign_ = 1;
};

// H^k(g; g) = 0 for all k; requires a semisimple input (checked through the
// Killing form; throws std::domain_error with a diagnostic otherwise).
bool weight_one_triviality(const FinDimLieAlgebra& g);

// Vertex descriptors of the deformation cochains: a weight-zero vertex with
// arity+1 alpha legs and one holomorphic derivative, and a weight-one vertex
// with arity alpha legs and the beta leg. The zero cochain has no descriptor.
std::optional<graphs::ChiralVertex> render_j0(int arity, bool is_zero = false);
std::optional<graphs::ChiralVertex> render_j1(int arity, bool is_zero = false);

// Structured text input: dim / bracket i j k value / pairing i j value.
FinDimLieAlgebra parse_algebra(std::istream& in);
FinDimLieAlgebra parse_algebra_text(const std::string& text);
std::string format_algebra(const FinDimLieAlgebra& g);

}  // namespace defcomplex
}  // namespace mixedbf
