#include "doctest.h"

#include "mixedbf/graphs.hpp"

#include <map>
#include <set>

using namespace mixedbf::graphs;

namespace {

ChiralVertex cubic() { return ChiralVertex(2, 1, {}, "cubic"); }
ChiralVertex cs_vertex() { return ChiralVertex(2, 0, {1, 0}, "cs"); }

}  // namespace

TEST_CASE("single cubic vertex with no edges is a beta-rooted tree") {
    ChiralGraph g;
    g.vertices.push_back(cubic());
    CHECK(classify(g) == GraphClass::beta_rooted_tree);
}

TEST_CASE("two cubic vertices joined by opposite edges form a wheel") {
    ChiralGraph g = wheel(2);
    CHECK(classify(g) == GraphClass::one_loop_wheel);
    CHECK(is_wheel(g));
    CHECK(wheel_order(g).size() == 2);
    // all external legs of the wheel are alpha legs
    CHECK(g.external_beta_legs() == 0);
    CHECK(g.external_alpha_legs() == 2);
}

TEST_CASE("cubic joined to a chiral deformation vertex: beta-free tree with all-alpha legs") {
    ChiralGraph g;
    g.vertices.push_back(cubic());
    g.vertices.push_back(cs_vertex());
    g.edges.push_back(Edge{1, 0, 0});  // alpha leg of the deformation vertex takes the beta
    CHECK(classify(g) == GraphClass::beta_free_tree);
    CHECK(g.external_beta_legs() == 0);
    CHECK(g.external_alpha_legs() == 3);
}

TEST_CASE("disconnected input is a domain error") {
    ChiralGraph g;
    g.vertices.push_back(cubic());
    g.vertices.push_back(cubic());
    CHECK_THROWS_AS(classify(g), std::domain_error);
}

TEST_CASE("leg-reuse is rejected") {
    ChiralGraph g;
    g.vertices.push_back(cubic());
    g.vertices.push_back(cubic());
    g.edges.push_back(Edge{0, 0, 1});
    g.edges.push_back(Edge{0, 0, 1});
    CHECK_THROWS_AS(g.validate(), std::invalid_argument);
}

TEST_CASE("weights count beta inputs") {
    CHECK(weight(FunctionalSignature{2, 0}) == 0);   // int <alpha, d alpha>
    CHECK(weight(FunctionalSignature{2, 1}) == 1);   // int <beta, [alpha, alpha]>
    CHECK(weight(FunctionalSignature{0, 0}) == 0);   // constant functional
    CHECK(weight(cubic()) == 1);
    CHECK(weight(cs_vertex()) == 0);
}

TEST_CASE("enumerate: two cubic vertices give one tree and one wheel") {
    auto graphs = enumerate_graphs({cubic(), cubic()});
    CHECK(graphs.size() == 2);
    std::multiset<GraphClass> classes;
    for (const auto& g : graphs) classes.insert(classify(g));
    CHECK(classes.count(GraphClass::beta_rooted_tree) == 1);
    CHECK(classes.count(GraphClass::one_loop_wheel) == 1);
}

TEST_CASE("enumerate: brute-force pairing oracle agrees after quotient") {
    // oracle: enumerate raw pairings (no isomorphism dedup, self-loops off),
    // keep connected, and count distinct (betti, external-leg) profiles
    auto vs = std::vector<ChiralVertex>{cubic(), cubic()};
    int raw_connected = 0;
    std::set<std::string> profiles;
    // beta of v0: external, or to one of v1's 2 alpha legs; same for v1
    for (int b0 = 0; b0 <= 2; ++b0) {
        for (int b1 = 0; b1 <= 2; ++b1) {
            ChiralGraph g;
            g.vertices = vs;
            if (b0 > 0) g.edges.push_back(Edge{1, b0 - 1, 0});
            if (b1 > 0) g.edges.push_back(Edge{0, b1 - 1, 1});
            if (!g.connected()) continue;
            ++raw_connected;
            profiles.insert(std::to_string(g.betti()) + "/" + std::to_string(g.external_beta_legs()));
        }
    }
    CHECK(raw_connected == 8);   // 4 trees (leg choices) + 4 wheels
    CHECK(profiles.size() == 2);
    CHECK(enumerate_graphs(vs).size() == profiles.size());
}

TEST_CASE("enumerate: empty multiset") { CHECK(enumerate_graphs({}).empty()); }

TEST_CASE("enumerate: budget enforced") {
    std::vector<ChiralVertex> eight(8, cubic());
    CHECK_THROWS_AS(enumerate_graphs(eight), ResourceError);
}

TEST_CASE("closure: no admissible connected graph has betti >= 2, mixed catalog") {
    std::vector<std::vector<ChiralVertex>> multisets = {
        {cubic(), cubic(), cubic()},
        {cubic(), cubic(), cs_vertex()},
        {cubic(), ChiralVertex(3, 1), cs_vertex()},
        {cubic(), cubic(), cubic(), cs_vertex()},
    };
    for (const auto& ms : multisets) {
        for (const auto& g : enumerate_graphs(ms, true)) {
            CHECK(g.betti() <= 1);
            GraphClass c = classify(g);
            CHECK(c != GraphClass::inadmissible);
            if (c == GraphClass::one_loop_wheel) CHECK(g.external_beta_legs() == 0);
            // edge direction consistency
            std::map<int, int> out_deg, in_deg;
            for (const auto& e : g.edges) {
                ++out_deg[e.beta_vertex];
                ++in_deg[e.alpha_vertex];
            }
            for (auto& [v, d] : out_deg) CHECK(d <= 1);
            for (auto& [v, d] : in_deg) CHECK(d <= g.vertices[v].alpha_legs);
        }
    }
}

TEST_CASE("graph text format round-trips") {
    ChiralGraph g = wheel(3, {0, 1, 2});
    std::string text = format_graph(g);
    ChiralGraph h = parse_graph_text(text);
    CHECK(format_graph(h) == text);
    CHECK(is_wheel(h));

    ChiralGraph p = parse_graph_text(
        "# a tree\n"
        "vertex 2 1\n"
        "vertex 2 1 label=root\n"
        "edge 1 0\n");
    CHECK(classify(p) == GraphClass::beta_rooted_tree);
    CHECK_THROWS_AS(parse_graph_text("vertex 2\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_graph_text("frobnicate 1 2\n"), std::invalid_argument);
}

TEST_CASE("wheel builder attaches derivative orders to the beta legs") {
    ChiralGraph g = wheel(3, {2, 0, 1});
    CHECK(g.vertices[0].leg_deriv(2) == 2);
    CHECK(g.vertices[2].leg_deriv(2) == 1);
    CHECK(is_wheel(g));
    CHECK_THROWS_AS(wheel(0), std::invalid_argument);
    CHECK_THROWS_AS(wheel(2, {1}), std::invalid_argument);
}
