#include "mixedbf/graphs.hpp"

#include <algorithm>
#include <functional>
#include <istream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace mixedbf {
namespace graphs {

ChiralVertex::ChiralVertex(int a, int b, std::vector<int> k, std::string name)
    : alpha_legs(a), beta_legs(b), deriv_orders(std::move(k)), label(std::move(name)) {
    if (alpha_legs < 1) throw std::invalid_argument("ChiralVertex: needs at least one alpha leg");
    if (beta_legs != 0 && beta_legs != 1)
        throw std::invalid_argument("ChiralVertex: at most one beta leg");
    if (deriv_orders.empty()) deriv_orders.assign(size_t(legs()), 0);
    if (int(deriv_orders.size()) != legs())
        throw std::invalid_argument("ChiralVertex: one derivative order per leg");
    for (int k0 : deriv_orders)
        if (k0 < 0) throw std::invalid_argument("ChiralVertex: derivative orders are nonnegative");
}

void ChiralGraph::validate() const {
    std::set<std::pair<int, int>> used_alpha;
    std::set<int> used_beta;
    for (const auto& e : edges) {
        if (e.alpha_vertex < 0 || e.alpha_vertex >= int(vertices.size()) || e.beta_vertex < 0 ||
            e.beta_vertex >= int(vertices.size()))
            throw std::invalid_argument("ChiralGraph: edge references missing vertex");
        if (e.alpha_leg < 0 || e.alpha_leg >= vertices[e.alpha_vertex].alpha_legs)
            throw std::invalid_argument("ChiralGraph: edge references missing alpha leg");
        if (vertices[e.beta_vertex].beta_legs == 0)
            throw std::invalid_argument("ChiralGraph: beta end has no beta leg");
        if (!used_alpha.insert({e.alpha_vertex, e.alpha_leg}).second)
            throw std::invalid_argument("ChiralGraph: alpha leg used twice");
        if (!used_beta.insert(e.beta_vertex).second)
            throw std::invalid_argument("ChiralGraph: beta leg used twice");
    }
}

bool ChiralGraph::connected() const {
    if (vertices.empty()) return true;
    std::vector<std::vector<int>> adj(vertices.size());
    for (const auto& e : edges) {
        adj[e.alpha_vertex].push_back(e.beta_vertex);
        adj[e.beta_vertex].push_back(e.alpha_vertex);
    }
    std::vector<bool> seen(vertices.size(), false);
    std::vector<int> stack{0};
    seen[0] = true;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : adj[v])
            if (!seen[w]) {
                seen[w] = true;
                stack.push_back(w);
            }
    }
    return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

int ChiralGraph::betti() const { return int(edges.size()) - int(vertices.size()) + 1; }

int ChiralGraph::external_alpha_legs() const {
    int total = 0;
    for (const auto& v : vertices) total += v.alpha_legs;
    return total - int(edges.size());
}

int ChiralGraph::external_beta_legs() const {
    int total = 0;
    for (const auto& v : vertices) total += v.beta_legs;
    return total - int(edges.size());
}

std::string to_string(GraphClass c) {
    switch (c) {
        case GraphClass::beta_rooted_tree: return "beta_rooted_tree";
        case GraphClass::beta_free_tree: return "beta_free_tree";
        case GraphClass::one_loop_wheel: return "one_loop_wheel";
        case GraphClass::inadmissible: return "inadmissible";
    }
    return "?";
}

GraphClass classify(const ChiralGraph& g) {
    g.validate();
    if (g.vertices.empty()) throw std::domain_error("classify: empty graph");
    if (!g.connected()) throw std::domain_error("classify: disconnected input");
    int b = g.betti();
    int ext_beta = g.external_beta_legs();
    if (b == 0) {
        if (ext_beta == 1) return GraphClass::beta_rooted_tree;
        if (ext_beta == 0) return GraphClass::beta_free_tree;
        return GraphClass::inadmissible;
    }
    if (b == 1 && ext_beta == 0) return GraphClass::one_loop_wheel;
    return GraphClass::inadmissible;
}

bool is_wheel(const ChiralGraph& g) {
    if (g.vertices.empty() || g.edges.size() != g.vertices.size()) return false;
    g.validate();
    if (!g.connected()) return false;
    std::vector<int> out(g.vertices.size(), 0), in(g.vertices.size(), 0);
    for (const auto& e : g.edges) {
        ++out[e.beta_vertex];
        ++in[e.alpha_vertex];
    }
    for (size_t v = 0; v < g.vertices.size(); ++v)
        if (out[v] != 1 || in[v] != 1) return false;
    return true;
}

std::vector<int> wheel_order(const ChiralGraph& g) {
    if (!is_wheel(g)) throw std::domain_error("wheel_order: not a wheel");
    std::vector<int> next(g.vertices.size());
    for (const auto& e : g.edges) next[e.beta_vertex] = e.alpha_vertex;
    std::vector<int> order;
    int v = 0;
    do {
        order.push_back(v);
        v = next[v];
    } while (v != 0 && order.size() <= g.vertices.size());
    return order;
}

int weight(const FunctionalSignature& s) { return s.beta_inputs; }
int weight(const ChiralVertex& v) { return v.beta_legs; }

namespace {

std::string vertex_signature(const ChiralVertex& v) {
    std::ostringstream os;
    os << v.alpha_legs << "," << v.beta_legs << ",";
    for (int k : v.deriv_orders) os << k << ".";
    os << v.label;
    return os.str();
}

// canonical key: vertex signatures plus relabeled edge multiset, minimized
// over signature-preserving vertex permutations
std::string canonical_key(const ChiralGraph& g) {
    size_t n = g.vertices.size();
    std::vector<std::string> sig(n);
    for (size_t i = 0; i < n; ++i) sig[i] = vertex_signature(g.vertices[i]);
    std::vector<int> sorted(n);
    std::iota(sorted.begin(), sorted.end(), 0);
    std::sort(sorted.begin(), sorted.end(), [&](int a, int b) { return sig[a] < sig[b]; });
    std::string best;
    std::vector<int> p = sorted;
    do {
        bool ok = true;
        for (size_t i = 0; i < n; ++i)
            if (sig[p[i]] != sig[sorted[i]]) {
                ok = false;
                break;
            }
        if (!ok) continue;
        std::vector<int> newidx(n);
        for (size_t i = 0; i < n; ++i) newidx[p[i]] = int(i);
        std::vector<std::string> edesc;
        for (const auto& e : g.edges) {
            std::ostringstream os;
            os << newidx[e.alpha_vertex] << ">" << newidx[e.beta_vertex] << "@"
               << g.vertices[e.alpha_vertex].leg_deriv(e.alpha_leg);
            edesc.push_back(os.str());
        }
        std::sort(edesc.begin(), edesc.end());
        std::ostringstream key;
        for (size_t i = 0; i < n; ++i) key << "[" << sig[p[i]] << "]";
        for (const auto& d : edesc) key << d << ";";
        std::string s = key.str();
        if (best.empty() || s < best) best = s;
    } while (std::next_permutation(p.begin(), p.end()));
    return best;
}

}  // namespace

std::vector<ChiralGraph> enumerate_graphs(const std::vector<ChiralVertex>& vertices,
                                          bool allow_self_loops) {
    if (vertices.size() > 7)
        throw ResourceError("enumerate_graphs: combinatorial budget is 7 vertices");
    std::vector<ChiralGraph> out;
    if (vertices.empty()) return out;

    std::vector<int> beta_vertices;
    for (size_t v = 0; v < vertices.size(); ++v)
        if (vertices[v].beta_legs == 1) beta_vertices.push_back(int(v));

    std::set<std::string> seen;
    std::vector<Edge> edges;
    std::vector<std::vector<bool>> alpha_used(vertices.size());
    for (size_t v = 0; v < vertices.size(); ++v)
        alpha_used[v].assign(size_t(vertices[v].alpha_legs), false);

    std::function<void(size_t)> rec = [&](size_t bi) {
        if (bi == beta_vertices.size()) {
            ChiralGraph g{vertices, edges};
            if (!g.connected()) return;
            if (seen.insert(canonical_key(g)).second) out.push_back(g);
            return;
        }
        rec(bi + 1);  // leave this beta leg external
        int bv = beta_vertices[bi];
        for (size_t av = 0; av < vertices.size(); ++av) {
            if (!allow_self_loops && int(av) == bv) continue;
            // alpha legs of equal derivative order within a vertex are interchangeable
            std::set<int> orders_tried;
            for (int leg = 0; leg < vertices[av].alpha_legs; ++leg) {
                if (alpha_used[av][size_t(leg)]) continue;
                if (!orders_tried.insert(vertices[av].leg_deriv(leg)).second) continue;
                alpha_used[av][size_t(leg)] = true;
                edges.push_back(Edge{int(av), leg, bv});
                rec(bi + 1);
                edges.pop_back();
                alpha_used[av][size_t(leg)] = false;
            }
        }
    };
    rec(0);
    return out;
}

ChiralGraph wheel(int n, const std::vector<int>& deriv) {
    if (n < 1) throw std::invalid_argument("wheel: need at least one vertex");
    if (!deriv.empty() && int(deriv.size()) != n)
        throw std::invalid_argument("wheel: one derivative order per vertex");
    ChiralGraph g;
    for (int i = 0; i < n; ++i) {
        int k = deriv.empty() ? 0 : deriv[i];
        g.vertices.push_back(ChiralVertex(2, 1, {0, 0, k}, "cubic"));
    }
    for (int i = 0; i < n; ++i) g.edges.push_back(Edge{(i + 1) % n, 0, i});
    g.validate();
    return g;
}

ChiralGraph parse_graph_text(const std::string& text) {
    std::istringstream is(text);
    return parse_graph(is);
}

ChiralGraph parse_graph(std::istream& in) {
    ChiralGraph g;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream ls(line);
        std::string kw;
        if (!(ls >> kw)) continue;
        if (kw == "vertex") {
            int a, b;
            if (!(ls >> a >> b))
                throw std::invalid_argument("graph line " + std::to_string(lineno) +
                                            ": vertex needs alpha and beta leg counts");
            std::vector<int> k;
            std::string opt, label;
            while (ls >> opt) {
                if (opt.rfind("deriv=", 0) == 0) {
                    std::istringstream ks(opt.substr(6));
                    std::string tok;
                    while (std::getline(ks, tok, ',')) k.push_back(std::stoi(tok));
                } else if (opt.rfind("label=", 0) == 0) {
                    label = opt.substr(6);
                } else {
                    throw std::invalid_argument("graph line " + std::to_string(lineno) +
                                                ": unknown vertex option " + opt);
                }
            }
            g.vertices.push_back(ChiralVertex(a, b, k, label));
        } else if (kw == "edge") {
            std::string from, to;
            if (!(ls >> from >> to))
                throw std::invalid_argument("graph line " + std::to_string(lineno) +
                                            ": edge needs alpha and beta endpoints");
            Edge e;
            auto colon = from.find(':');
            if (colon == std::string::npos) {
                e.alpha_vertex = std::stoi(from);
                e.alpha_leg = -1;
            } else {
                e.alpha_vertex = std::stoi(from.substr(0, colon));
                e.alpha_leg = std::stoi(from.substr(colon + 1));
            }
            e.beta_vertex = std::stoi(to);
            g.edges.push_back(e);
        } else {
            throw std::invalid_argument("graph line " + std::to_string(lineno) + ": unknown keyword " +
                                        kw);
        }
    }
    std::vector<std::set<int>> used(g.vertices.size());
    for (auto& e : g.edges)
        if (e.alpha_leg >= 0 && e.alpha_vertex >= 0 && e.alpha_vertex < int(g.vertices.size()))
            used[e.alpha_vertex].insert(e.alpha_leg);
    for (auto& e : g.edges) {
        if (e.alpha_leg >= 0) continue;
        if (e.alpha_vertex < 0 || e.alpha_vertex >= int(g.vertices.size()))
            throw std::invalid_argument("graph: edge references missing vertex");
        for (int leg = 0; leg < g.vertices[e.alpha_vertex].alpha_legs; ++leg) {
            if (!used[e.alpha_vertex].count(leg)) {
                e.alpha_leg = leg;
                used[e.alpha_vertex].insert(leg);
                break;
            }
        }
        if (e.alpha_leg < 0) throw std::invalid_argument("graph: no free alpha leg for edge");
    }
    g.validate();
    return g;
}

std::string format_graph(const ChiralGraph& g) {
    std::ostringstream os;
    for (const auto& v : g.vertices) {
        os << "vertex " << v.alpha_legs << " " << v.beta_legs;
        bool nonzero = false;
        for (int k : v.deriv_orders) nonzero = nonzero || k != 0;
        if (nonzero) {
            os << " deriv=";
            for (size_t i = 0; i < v.deriv_orders.size(); ++i) {
                if (i) os << ",";
                os << v.deriv_orders[i];
            }
        }
        if (!v.label.empty()) os << " label=" << v.label;
        os << "\n";
    }
    for (const auto& e : g.edges)
        os << "edge " << e.alpha_vertex << ":" << e.alpha_leg << " " << e.beta_vertex << "\n";
    return os.str();
}

}  // namespace graphs
}  // namespace mixedbf
