#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace mixedbf {
namespace graphs {

struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Vertex of a chiral interaction: alpha inputs, at most one beta input, and a
// holomorphic derivative order per leg (alpha legs first, then the beta leg).
struct ChiralVertex {
    int alpha_legs = 1;
    int beta_legs = 0;
    std::vector<int> deriv_orders;  // size alpha_legs + beta_legs; defaults to zeros
    std::string label;

    ChiralVertex() = default;
    ChiralVertex(int a, int b, std::vector<int> k = {}, std::string name = "");
    int legs() const { return alpha_legs + beta_legs; }
    int leg_deriv(int leg) const { return deriv_orders.empty() ? 0 : deriv_orders.at(leg); }
};

// Internal edge: directed from the alpha end to the beta end.
struct Edge {
    int alpha_vertex = 0;
    int alpha_leg = 0;   // which alpha leg of alpha_vertex
    int beta_vertex = 0; // uses that vertex's (unique) beta leg
};

struct ChiralGraph {
    std::vector<ChiralVertex> vertices;
    std::vector<Edge> edges;

    void validate() const;  // throws std::invalid_argument on malformed wiring
    bool connected() const;
    int betti() const;  // first Betti number, connected graphs only
    int external_alpha_legs() const;
    int external_beta_legs() const;
};

enum class GraphClass {
    beta_rooted_tree,  // tree with exactly one external beta leg
    beta_free_tree,    // tree with no external beta (single vertices included)
    one_loop_wheel,    // exactly one directed cycle, no external beta
    inadmissible,
};

std::string to_string(GraphClass c);

// Classification of connected admissible graphs; throws std::domain_error on
// disconnected input.
GraphClass classify(const ChiralGraph& g);

// True when every internal edge lies on one directed cycle through all
// vertices (the pure wheel evaluated by the weight machinery).
bool is_wheel(const ChiralGraph& g);

// Vertices of a wheel in cycle order (successor = alpha end of the edge using
// the current vertex's beta leg), starting from vertex 0.
std::vector<int> wheel_order(const ChiralGraph& g);

// Weight of a functional signature: the number of beta inputs.
struct FunctionalSignature {
    int alpha_inputs = 0;
    int beta_inputs = 0;
};
int weight(const FunctionalSignature& s);
int weight(const ChiralVertex& v);

// All admissible connected pairings of the vertex multiset, up to isomorphism.
// Self-contractions (a vertex's beta leg into its own alpha leg) are excluded
// unless requested. Budget: at most 7 vertices (throws ResourceError beyond).
std::vector<ChiralGraph> enumerate_graphs(const std::vector<ChiralVertex>& vertices,
                                          bool allow_self_loops = false);

// Cycle of n cubic vertices (2 alpha + 1 beta); deriv[i] is attached to the
// beta leg of vertex i (the outgoing edge's derivative order).
ChiralGraph wheel(int n, const std::vector<int>& deriv = {});

// Structured text format: vertex/edge lines, '#' comments.
ChiralGraph parse_graph(std::istream& in);
ChiralGraph parse_graph_text(const std::string& text);
std::string format_graph(const ChiralGraph& g);

}  // namespace graphs
}  // namespace mixedbf
