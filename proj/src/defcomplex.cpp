#include "mixedbf/defcomplex.hpp"

#include <algorithm>
#include <functional>
#include <istream>
#include <map>
#include <sstream>

namespace mixedbf {
namespace defcomplex {

int rank(Matrix m) {
    int rows = int(m.size());
    if (rows == 0) return 0;
    int cols = int(m[0].size());
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int pivot = -1;
        for (int i = r; i < rows; ++i)
            if (m[i][c] != 0) {
                pivot = i;
                break;
            }
        if (pivot < 0) continue;
        std::swap(m[r], m[pivot]);
        for (int i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0) continue;
            Rat f = m[i][c] / m[r][c];
            for (int j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        ++r;
    }
    return r;
}

void FinDimLieAlgebra::validate() const {
    if (dim < 1) throw std::invalid_argument("lie algebra: dimension must be positive");
    auto at = [&](int i, int j, int k) -> const Rat& { return bracket.at(i).at(j).at(k); };
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            for (int k = 0; k < dim; ++k)
                if (at(i, j, k) != -at(j, i, k))
                    throw std::invalid_argument("lie algebra: bracket is not antisymmetric");
    // Jacobi: [[i,j],k] + [[j,k],i] + [[k,i],j] = 0
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            for (int k = 0; k < dim; ++k)
                for (int m = 0; m < dim; ++m) {
                    Rat total(0);
                    for (int a = 0; a < dim; ++a) {
                        total += at(i, j, a) * at(a, k, m);
                        total += at(j, k, a) * at(a, i, m);
                        total += at(k, i, a) * at(a, j, m);
                    }
                    if (total != 0) throw std::invalid_argument("lie algebra: Jacobi identity fails");
                }
    if (int(pairing.size()) != dim) throw std::invalid_argument("lie algebra: pairing size mismatch");
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            if (pairing[i][j] != pairing[j][i])
                throw std::invalid_argument("lie algebra: pairing is not symmetric");
    // invariance <[x,y],z> + <y,[x,z]> = 0
    for (int x = 0; x < dim; ++x)
        for (int y = 0; y < dim; ++y)
            for (int z = 0; z < dim; ++z) {
                Rat total(0);
                for (int a = 0; a < dim; ++a) {
                    total += at(x, y, a) * pairing[a][z];
                    total += at(x, z, a) * pairing[y][a];
                }
                if (total != 0) throw std::invalid_argument("lie algebra: pairing is not invariant");
            }
    if (rank(pairing) != dim) throw std::invalid_argument("lie algebra: pairing is degenerate");
}

Matrix FinDimLieAlgebra::killing_form() const {
    Matrix k(dim, std::vector<Rat>(dim, Rat(0)));
    for (int x = 0; x < dim; ++x)
        for (int y = 0; y < dim; ++y) {
            Rat tr(0);
            for (int a = 0; a < dim; ++a)
                for (int b = 0; b < dim; ++b) tr += bracket[x][a][b] * bracket[y][b][a];
            k[x][y] = tr;
        }
    return k;
}

bool FinDimLieAlgebra::is_semisimple() const { return rank(killing_form()) == dim; }

FinDimLieAlgebra FinDimLieAlgebra::sl2() {
    // basis (e, f, h): [h,e] = 2e, [h,f] = -2f, [e,f] = h; pairing = Killing/4
    FinDimLieAlgebra g;
    g.dim = 3;
    g.name = "sl2";
    g.bracket.assign(3, std::vector<std::vector<Rat>>(3, std::vector<Rat>(3, Rat(0))));
    auto set = [&](int i, int j, int k, Rat v) {
        g.bracket[i][j][k] = v;
        g.bracket[j][i][k] = -v;
    };
    set(2, 0, 0, Rat(2));   // [h,e] = 2e
    set(2, 1, 1, Rat(-2));  // [h,f] = -2f
    set(0, 1, 2, Rat(1));   // [e,f] = h
    g.pairing.assign(3, std::vector<Rat>(3, Rat(0)));
    g.pairing[0][1] = g.pairing[1][0] = Rat(1);
    g.pairing[2][2] = Rat(2);
    return g;
}

FinDimLieAlgebra FinDimLieAlgebra::abelian(int n) {
    FinDimLieAlgebra g;
    g.dim = n;
    g.name = "abelian" + std::to_string(n);
    g.bracket.assign(n, std::vector<std::vector<Rat>>(n, std::vector<Rat>(n, Rat(0))));
    g.pairing.assign(n, std::vector<Rat>(n, Rat(0)));
    for (int i = 0; i < n; ++i) g.pairing[i][i] = Rat(1);
    return g;
}

FinDimLieAlgebra FinDimLieAlgebra::direct_sum(const FinDimLieAlgebra& a, const FinDimLieAlgebra& b) {
    FinDimLieAlgebra g;
    g.dim = a.dim + b.dim;
    g.name = a.name + "+" + b.name;
    g.bracket.assign(g.dim, std::vector<std::vector<Rat>>(g.dim, std::vector<Rat>(g.dim, Rat(0))));
    g.pairing.assign(g.dim, std::vector<Rat>(g.dim, Rat(0)));
    for (int i = 0; i < a.dim; ++i)
        for (int j = 0; j < a.dim; ++j) {
            for (int k = 0; k < a.dim; ++k) g.bracket[i][j][k] = a.bracket[i][j][k];
            g.pairing[i][j] = a.pairing[i][j];
        }
    for (int i = 0; i < b.dim; ++i)
        for (int j = 0; j < b.dim; ++j) {
            for (int k = 0; k < b.dim; ++k)
                g.bracket[a.dim + i][a.dim + j][a.dim + k] = b.bracket[i][j][k];
            g.pairing[a.dim + i][a.dim + j] = b.pairing[i][j];
        }
    return g;
}

// --- Chevalley-Eilenberg complexes --------------------------------------------

namespace {

// enumerate sorted k-subsets of {0..n-1}
std::vector<std::vector<int>> subsets(int n, int k) {
    std::vector<std::vector<int>> out;
    if (k < 0 || k > n) return out;
    std::vector<int> cur(k);
    std::function<void(int, int)> rec = [&](int start, int depth) {
        if (depth == k) {
            out.push_back(cur);
            return;
        }
        for (int v = start; v < n; ++v) {
            cur[depth] = v;
            rec(v + 1, depth + 1);
        }
    };
    rec(0, 0);
    return out;
}

int subset_index(const std::vector<std::vector<int>>& list, const std::vector<int>& s) {
    auto it = std::lower_bound(list.begin(), list.end(), s);
    if (it == list.end() || *it != s) return -1;
    return int(it - list.begin());
}

// sign of sorting value v into the sorted set rest (assumes v not in rest)
int insertion_sign(const std::vector<int>& rest, int v) {
    int before = 0;
    for (int r : rest)
        if (r < v) ++before;
    return before % 2 ? -1 : 1;
}

}  // namespace

CEComplex::CEComplex(const FinDimLieAlgebra& g, Module m, bool reduced)
    : g_(g), module_(m), reduced_(reduced) {
    g_.validate();
    module_dim_ = (m == Module::trivial) ? 1 : g_.dim;
}

int CEComplex::dim_at(int k) const {
    if (k < 0 || k > g_.dim) return 0;
    if (reduced_ && k == 0) return 0;
    long long binom = 1;
    for (int i = 0; i < k; ++i) binom = binom * (g_.dim - i) / (i + 1);
    return int(binom) * module_dim_;
}

Matrix CEComplex::differential(int k) const {
    int n = g_.dim;
    auto src = subsets(n, k);
    auto dst = subsets(n, k + 1);
    int sdim = dim_at(k), ddim = dim_at(k + 1);
    Matrix d(ddim, std::vector<Rat>(sdim, Rat(0)));
    if (sdim == 0 || ddim == 0) return d;

    auto act = [&](int x, int m, int mm) -> Rat {
        // coefficient of e_mm in x . e_m for the module action
        switch (module_) {
            case Module::trivial: return Rat(0);
            case Module::adjoint: return g_.bracket[x][m][mm];
            case Module::coadjoint: return -g_.bracket[x][mm][m];
        }
        return Rat(0);
    };

    // (d mu)(e_T) = sum_i (-1)^i t_i . mu(T \ t_i)
    //            + sum_{i<j} (-1)^{i+j} mu([t_i, t_j] ^ T \ {t_i, t_j})
    for (size_t ti = 0; ti < dst.size(); ++ti) {
        const auto& T = dst[ti];
        for (int i = 0; i <= k; ++i) {
            std::vector<int> rest;
            for (int q = 0; q <= k; ++q)
                if (q != i) rest.push_back(T[size_t(q)]);
            int si = subset_index(src, rest);
            if (si >= 0) {
                int sgn = (i % 2) ? -1 : 1;
                for (int m = 0; m < module_dim_; ++m)
                    for (int mm = 0; mm < module_dim_; ++mm) {
                        Rat c = act(T[size_t(i)], m, mm);
                        if (c != 0)
                            d[size_t(ti) * size_t(module_dim_) + size_t(mm)]
                             [size_t(si) * size_t(module_dim_) + size_t(m)] += Rat(sgn) * c;
                    }
            }
            for (int j = i + 1; j <= k; ++j) {
                std::vector<int> rest2;
                for (int q = 0; q <= k; ++q)
                    if (q != i && q != j) rest2.push_back(T[size_t(q)]);
                int sgn = ((i + j) % 2) ? -1 : 1;
                for (int a = 0; a < n; ++a) {
                    Rat c = g_.bracket[T[size_t(i)]][T[size_t(j)]][a];
                    if (c == 0) continue;
                    if (std::find(rest2.begin(), rest2.end(), a) != rest2.end()) continue;
                    std::vector<int> s = rest2;
                    s.push_back(a);
                    std::sort(s.begin(), s.end());
                    int si2 = subset_index(src, s);
                    if (si2 < 0) continue;
                    int isign = insertion_sign(rest2, a);
                    for (int m = 0; m < module_dim_; ++m)
                        d[size_t(ti) * size_t(module_dim_) + size_t(m)]
                         [size_t(si2) * size_t(module_dim_) + size_t(m)] +=
                            Rat(sgn * isign) * c;
                }
            }
        }
    }
    return d;
}

std::vector<int> CEComplex::cohomology_dims() const {
    std::vector<int> dims;
    std::vector<int> ranks(size_t(g_.dim) + 1, 0);
    for (int k = 0; k < g_.dim; ++k) ranks[size_t(k)] = rank(differential(k));
    for (int k = 0; k <= g_.dim; ++k) {
        int dk = dim_at(k);
        int out_rank = (k < g_.dim) ? ranks[size_t(k)] : 0;
        int in_rank = (k > 0) ? ranks[size_t(k - 1)] : 0;
        dims.push_back(dk - out_rank - in_rank);
    }
    return dims;
}

// --- the two-term total complex ------------------------------------------------

ComplexA::ComplexA(const FinDimLieAlgebra& g) : g_(g) {
    CEComplex red(g, Module::trivial, true);
    CEComplex coef(g, Module::coadjoint, false);
    int n = g_.dim;
    for (int k = 0; k <= n; ++k) {
        reduced_d_.push_back(red.differential(k));
        coef_d_.push_back(coef.differential(k));
    }
    // connecting map Lambda^k -> Lambda^{k-1} (x) g-dual:
    // e_S -> sum_i (-1)^{i-1} e_{S\s_i} (x) e_{s_i}-dual  (odd derivation)
    for (int k = 0; k <= n; ++k) {
        auto src = subsets(n, k);
        auto dst = subsets(n, k - 1);
        int sdim = (k == 0) ? 0 : int(src.size());  // reduced source
        int ddim = int(dst.size()) * n;
        Matrix c(size_t(std::max(ddim, 0)), std::vector<Rat>(size_t(std::max(sdim, 0)), Rat(0)));
        if (k >= 1) {
            for (size_t si = 0; si < src.size(); ++si) {
                const auto& S = src[si];
                for (int i = 0; i < k; ++i) {
                    std::vector<int> rest;
                    for (int q = 0; q < k; ++q)
                        if (q != i) rest.push_back(S[size_t(q)]);
                    int di = subset_index(dst, rest);
                    if (di < 0) continue;
                    int sgn = (i % 2) ? -1 : 1;
                    c[size_t(di) * size_t(n) + size_t(S[size_t(i)])][si] += Rat(sgn);
                }
            }
        }
        connecting_.push_back(c);
    }
    // fix the relative sign by requiring the total differential to square to zero
    for (int sign : {1, -1}) {
        connecting_sign_ = sign;
        bool ok = true;
        for (int k = 1; k < n && ok; ++k) {
            // delta(d_red(x)) + sign-adjusted d_coef(delta(x)) must vanish:
            // D(phi, 0) = (d phi, s*delta phi); D^2 first comp 0;
            // second comp: s*delta(d phi) + s^2 ... compute directly below
            auto& dred = reduced_d_[size_t(k)];
            auto& delta_next = connecting_[size_t(k + 1)];
            auto& delta_here = connecting_[size_t(k)];
            auto& dcoef = coef_d_[size_t(k - 1)];
            // (delta after d_red) + sign * (d_coef after delta): matrix test
            size_t rows = delta_next.size() ? delta_next.size() : dcoef.size();
            if (delta_next.empty() && dcoef.empty()) continue;
            size_t cols = dred.empty() ? (delta_here.empty() ? 0 : delta_here[0].size())
                                       : dred[0].size();
            for (size_t r = 0; r < rows && ok; ++r) {
                for (size_t cidx = 0; cidx < cols && ok; ++cidx) {
                    Rat total(0);
                    if (!delta_next.empty() && !dred.empty())
                        for (size_t mid = 0; mid < dred.size(); ++mid)
                            total += delta_next[r][mid] * dred[mid][cidx];
                    if (!dcoef.empty() && !delta_here.empty())
                        for (size_t mid = 0; mid < delta_here.size(); ++mid)
                            total += Rat(sign) * dcoef[r][mid] * delta_here[mid][cidx];
                    if (total != 0) ok = false;
                }
            }
        }
        if (ok) return;
    }
    throw std::logic_error("ComplexA: no sign choice makes the total differential square to zero");
}

int ComplexA::dim_at(int total_degree) const {
    // piece 1: C^{m+3}_red(g); piece 2: C^{m+1}(g; g-dual)
    int k1 = total_degree + 3;
    int k2 = total_degree + 1;
    int n = g_.dim;
    auto binom = [&](int k) -> int {
        if (k < 0 || k > n) return 0;
        long long b = 1;
        for (int i = 0; i < k; ++i) b = b * (n - i) / (i + 1);
        return int(b);
    };
    int d1 = (k1 >= 1) ? binom(k1) : 0;
    int d2 = binom(k2) * n;
    return d1 + d2;
}

Matrix ComplexA::differential(int total_degree) const {
    int k1 = total_degree + 3;  // reduced piece degree
    int k2 = total_degree + 1;  // coefficient piece degree
    int rows = dim_at(total_degree + 1), cols = dim_at(total_degree);
    Matrix d(size_t(rows), std::vector<Rat>(size_t(cols), Rat(0)));
    int n = g_.dim;
    auto binom = [&](int k) -> int {
        if (k < 0 || k > n) return 0;
        long long b = 1;
        for (int i = 0; i < k; ++i) b = b * (n - i) / (i + 1);
        return int(b);
    };
    int src1 = (k1 >= 1) ? binom(k1) : 0;
    int dst1 = (k1 + 1 >= 1) ? binom(k1 + 1) : 0;
    // block (1,1): d_red
    if (src1 > 0 && dst1 > 0 && k1 >= 0 && k1 < n) {
        const Matrix& m = reduced_d_[size_t(k1)];
        for (int r = 0; r < dst1; ++r)
            for (int c = 0; c < src1; ++c) d[size_t(r)][size_t(c)] = m[size_t(r)][size_t(c)];
    }
    // block (2,1): connecting map (with the solved sign)
    if (src1 > 0 && k1 >= 1 && k1 <= n) {
        const Matrix& m = connecting_[size_t(k1)];
        for (size_t r = 0; r < m.size(); ++r)
            for (int c = 0; c < src1; ++c)
                d[size_t(dst1) + r][size_t(c)] = Rat(connecting_sign_) * m[r][size_t(c)];
    }
    // block (2,2): d_coef
    if (k2 >= 0 && k2 < n) {
        const Matrix& m = coef_d_[size_t(k2)];
        for (size_t r = 0; r < m.size(); ++r)
            for (size_t c = 0; c < m[0].size(); ++c)
                d[size_t(dst1) + r][size_t(src1) + c] = m[r][c];
    }
    return d;
}

std::vector<int> ComplexA::cohomology_dims() const {
    std::vector<int> dims;
    std::map<int, int> ranks;
    for (int m = min_degree(); m < max_degree(); ++m) ranks[m] = rank(differential(m));
    for (int m = min_degree(); m <= max_degree(); ++m) {
        int dm = dim_at(m);
        int out_rank = (m < max_degree()) ? ranks[m] : 0;
        int in_rank = (m > min_degree()) ? ranks[m - 1] : 0;
        dims.push_back(dm - out_rank - in_rank);
    }
    return dims;
}

bool weight_one_triviality(const FinDimLieAlgebra& g) {
    if (!g.is_semisimple())
        throw std::domain_error("weight_one_triviality: input is not semisimple (Killing form "
                                "degenerate); the hypothesis of the vanishing statement fails");
    CEComplex adj(g, Module::adjoint);
    for (int h : adj.cohomology_dims())
        if (h != 0) return false;
    return true;
}

std::optional<graphs::ChiralVertex> render_j0(int arity, bool is_zero) {
    if (is_zero) return std::nullopt;
    if (arity < 1) throw std::domain_error("render_j0: arity must be >= 1");
    std::vector<int> derivs(size_t(arity) + 1, 0);
    derivs[0] = 1;  // one holomorphic derivative on one alpha leg
    return graphs::ChiralVertex(arity + 1, 0, derivs, "weight0");
}

std::optional<graphs::ChiralVertex> render_j1(int arity, bool is_zero) {
    if (is_zero) return std::nullopt;
    if (arity < 1) throw std::domain_error("render_j1: arity must be >= 1");
    return graphs::ChiralVertex(arity, 1, std::vector<int>(size_t(arity) + 1, 0), "weight1");
}

FinDimLieAlgebra parse_algebra_text(const std::string& text) {
    std::istringstream is(text);
    return parse_algebra(is);
}

FinDimLieAlgebra parse_algebra(std::istream& in) {
    FinDimLieAlgebra g;
    std::string line;
    int lineno = 0;
    auto parse_rat = [](const std::string& tok) -> Rat {
        auto slash = tok.find('/');
        if (slash == std::string::npos) return Rat(BigInt(tok));
        return Rat(BigInt(tok.substr(0, slash)), BigInt(tok.substr(slash + 1)));
    };
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream ls(line);
        std::string kw;
        if (!(ls >> kw)) continue;
        if (kw == "dim") {
            if (!(ls >> g.dim) || g.dim < 1)
                throw std::invalid_argument("algebra line " + std::to_string(lineno) + ": bad dim");
            g.bracket.assign(size_t(g.dim), std::vector<std::vector<Rat>>(
                                                size_t(g.dim), std::vector<Rat>(size_t(g.dim), Rat(0))));
            g.pairing.assign(size_t(g.dim), std::vector<Rat>(size_t(g.dim), Rat(0)));
        } else if (kw == "name") {
            ls >> g.name;
        } else if (kw == "bracket" || kw == "pairing") {
            if (g.dim == 0)
                throw std::invalid_argument("algebra line " + std::to_string(lineno) +
                                            ": dim must come first");
            int i, j;
            std::string val;
            if (kw == "bracket") {
                int k;
                if (!(ls >> i >> j >> k >> val))
                    throw std::invalid_argument("algebra line " + std::to_string(lineno) +
                                                ": bracket i j k value");
                Rat v = parse_rat(val);
                g.bracket.at(size_t(i)).at(size_t(j)).at(size_t(k)) = v;
                g.bracket.at(size_t(j)).at(size_t(i)).at(size_t(k)) = -v;
            } else {
                if (!(ls >> i >> j >> val))
                    throw std::invalid_argument("algebra line " + std::to_string(lineno) +
                                                ": pairing i j value");
                Rat v = parse_rat(val);
                g.pairing.at(size_t(i)).at(size_t(j)) = v;
                g.pairing.at(size_t(j)).at(size_t(i)) = v;
            }
        } else {
            throw std::invalid_argument("algebra line " + std::to_string(lineno) +
                                        ": unknown keyword " + kw);
        }
    }
    g.validate();
    return g;
}

std::string format_algebra(const FinDimLieAlgebra& g) {
    std::ostringstream os;
    if (!g.name.empty()) os << "name " << g.name << "\n";
    os << "dim " << g.dim << "\n";
    for (int i = 0; i < g.dim; ++i)
        for (int j = i + 1; j < g.dim; ++j)
            for (int k = 0; k < g.dim; ++k)
                if (g.bracket[i][j][k] != 0)
                    os << "bracket " << i << " " << j << " " << k << " "
                       << to_string(g.bracket[i][j][k]) << "\n";
    for (int i = 0; i < g.dim; ++i)
        for (int j = i; j < g.dim; ++j)
            if (g.pairing[i][j] != 0)
                os << "pairing " << i << " " << j << " " << to_string(g.pairing[i][j]) << "\n";
    return os.str();
}

}  // namespace defcomplex
}  // namespace mixedbf
