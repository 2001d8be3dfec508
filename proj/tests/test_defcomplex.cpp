#include "doctest.h"

#include "mixedbf/defcomplex.hpp"

#include <fstream>
#include <numeric>

using namespace mixedbf;
using namespace mixedbf::defcomplex;

namespace {

// d^2 = 0, degreewise, exact
void check_d_squared(const CEComplex& c) {
    for (int k = 0; k + 2 <= c.top_degree(); ++k) {
        Matrix a = c.differential(k);
        Matrix b = c.differential(k + 1);
        if (a.empty() || b.empty()) continue;
        for (size_t r = 0; r < b.size(); ++r) {
            for (size_t j = 0; j < (a.empty() ? 0 : a[0].size()); ++j) {
                Rat total(0);
                for (size_t m = 0; m < a.size(); ++m) total += b[r][m] * a[m][j];
                CHECK(total == 0);
            }
        }
    }
}

int euler_from_dims(const std::vector<int>& dims, int start_sign = 1) {
    int chi = 0, sgn = start_sign;
    for (int d : dims) {
        chi += sgn * d;
        sgn = -sgn;
    }
    return chi;
}

}  // namespace

TEST_CASE("lie algebra validation") {
    auto sl2 = FinDimLieAlgebra::sl2();
    CHECK_NOTHROW(sl2.validate());
    CHECK(sl2.is_semisimple());
    auto bad = sl2;
    bad.bracket[0][1][2] = Rat(2);  // breaks antisymmetry against [1][0][2]
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    auto bad2 = sl2;
    bad2.pairing[2][2] = Rat(0);  // degenerate pairing
    CHECK_THROWS_AS(bad2.validate(), std::invalid_argument);
    CHECK(!FinDimLieAlgebra::abelian(2).is_semisimple());
}

TEST_CASE("d squared vanishes exactly for the shipped algebras") {
    for (auto g : {FinDimLieAlgebra::sl2(), FinDimLieAlgebra::abelian(1),
                   FinDimLieAlgebra::direct_sum(FinDimLieAlgebra::sl2(), FinDimLieAlgebra::sl2())}) {
        check_d_squared(CEComplex(g, Module::trivial));
        check_d_squared(CEComplex(g, Module::adjoint));
        check_d_squared(CEComplex(g, Module::coadjoint));
    }
}

TEST_CASE("sl2 cohomology with trivial coefficients is 1,0,0,1") {
    CEComplex c(FinDimLieAlgebra::sl2(), Module::trivial);
    CHECK(c.cohomology_dims() == std::vector<int>{1, 0, 0, 1});
    CEComplex red(FinDimLieAlgebra::sl2(), Module::trivial, true);
    CHECK(red.cohomology_dims() == std::vector<int>{0, 0, 0, 1});
}

TEST_CASE("Euler characteristic consistency") {
    for (auto module : {Module::trivial, Module::adjoint}) {
        CEComplex c(FinDimLieAlgebra::sl2(), module);
        int chain_chi = 0, sgn = 1;
        for (int k = 0; k <= c.top_degree(); ++k) {
            chain_chi += sgn * c.dim_at(k);
            sgn = -sgn;
        }
        CHECK(chain_chi == euler_from_dims(c.cohomology_dims()));
    }
}

TEST_CASE("two-term total complex of sl2 is one dimensional, matching H^3 reduced") {
    auto sl2 = FinDimLieAlgebra::sl2();
    ComplexA A(sl2);
    auto dims = A.cohomology_dims();
    int total = std::accumulate(dims.begin(), dims.end(), 0);
    CHECK(total == 1);
    // the class sits in total degree 0 = (reduced degree 3) - 3, and the
    // independently computed reduced cohomology confirms the dimension
    CHECK(dims[size_t(0 - A.min_degree())] == 1);
    CEComplex red(sl2, Module::trivial, true);
    CHECK(red.cohomology_dims()[3] == 1);
}

TEST_CASE("weight-one triviality for semisimple inputs") {
    CHECK(weight_one_triviality(FinDimLieAlgebra::sl2()));
    CHECK(weight_one_triviality(
        FinDimLieAlgebra::direct_sum(FinDimLieAlgebra::sl2(), FinDimLieAlgebra::sl2())));
    CHECK_THROWS_AS(weight_one_triviality(FinDimLieAlgebra::abelian(1)), std::domain_error);
}

TEST_CASE("abelian counterexample: weight-one cohomology is nonzero") {
    CEComplex c(FinDimLieAlgebra::abelian(1), Module::adjoint);
    CHECK(c.cohomology_dims() == std::vector<int>{1, 1});
}

TEST_CASE("vertex descriptors of the deformation cochains") {
    auto v = render_j0(1);  // symmetric invariant tensor: two alpha legs, one derivative
    REQUIRE(v.has_value());
    CHECK(v->alpha_legs == 2);
    CHECK(v->beta_legs == 0);
    int total_deriv = 0;
    for (int k : v->deriv_orders) total_deriv += k;
    CHECK(total_deriv == 1);
    CHECK(graphs::weight(*v) == 0);

    CHECK(!render_j0(1, true).has_value());  // zero cochain

    auto w = render_j1(2);
    REQUIRE(w.has_value());
    CHECK(w->alpha_legs == 2);
    CHECK(w->beta_legs == 1);
    CHECK(graphs::weight(*w) == 1);
}

TEST_CASE("algebra files round trip and load") {
    auto sl2 = FinDimLieAlgebra::sl2();
    auto back = parse_algebra_text(format_algebra(sl2));
    CHECK(back.dim == 3);
    CHECK(back.is_semisimple());
    CHECK(CEComplex(back, Module::trivial).cohomology_dims() == std::vector<int>{1, 0, 0, 1});
    CHECK_THROWS_AS(parse_algebra_text("bracket 0 1 2 1\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_algebra_text("dim 2\nbracket 0 1 0 1\n"), std::invalid_argument);

    std::ifstream f(std::string(MIXEDBF_SOURCE_DIR) + "/data/sl2_sl2.alg");
    REQUIRE(bool(f));
    auto sum = parse_algebra(f);
    CHECK(sum.dim == 6);
    CHECK(weight_one_triviality(sum));
}
