#include "mixedbf/exterior.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace mixedbf {

std::string gen_name(int id) {
    static const char* names[3] = {"dz", "dzbar", "dt"};
    return std::string(names[id % 3]) + std::to_string(id / 3);
}

std::string coord_name(int id) {
    static const char* names[3] = {"z", "zbar", "t"};
    return std::string(names[id % 3]) + std::to_string(id / 3);
}

void GaussBlock::canonicalize() {
    while (!zc.empty() && zc.back() == 0) zc.pop_back();
    while (!tc.empty() && tc.back() == 0) tc.pop_back();
    auto flip_if_needed = [](std::vector<int>& v) {
        for (int x : v) {
            if (x > 0) return;
            if (x < 0) {
                for (int& y : v) y = -y;
                return;
            }
        }
    };
    // |sum zc z|^2 and (sum tc t)^2 are even, so each sign is a free choice.
    flip_if_needed(zc);
    flip_if_needed(tc);
    // Pull a square content factor into mult.
    int g = 0;
    for (int x : zc) g = std::gcd(g, std::abs(x));
    for (int x : tc) g = std::gcd(g, std::abs(x));
    if (g > 1) {
        for (int& x : zc) x /= g;
        for (int& x : tc) x /= g;
        mult *= g * g;
    }
}

bool GaussBlock::operator<(const GaussBlock& o) const {
    if (scale_sym != o.scale_sym) return scale_sym < o.scale_sym;
    if (zc != o.zc) return zc < o.zc;
    if (tc != o.tc) return tc < o.tc;
    return mult < o.mult;
}

bool GaussBlock::operator==(const GaussBlock& o) const {
    return scale_sym == o.scale_sym && mult == o.mult && zc == o.zc && tc == o.tc;
}

GaussTag::GaussTag(std::vector<GaussBlock> blocks) {
    for (auto& b : blocks) b.canonicalize();
    std::sort(blocks.begin(), blocks.end());
    for (auto& b : blocks) {
        if (b.mult == 0 || (b.zc.empty() && b.tc.empty())) continue;
        if (!blocks_.empty()) {
            auto& last = blocks_.back();
            if (last.scale_sym == b.scale_sym && last.zc == b.zc && last.tc == b.tc) {
                last.mult += b.mult;
                if (last.mult == 0) blocks_.pop_back();
                continue;
            }
        }
        blocks_.push_back(b);
    }
}

GaussTag GaussTag::merged(const GaussTag& o) const {
    std::vector<GaussBlock> all = blocks_;
    all.insert(all.end(), o.blocks_.begin(), o.blocks_.end());
    return GaussTag(std::move(all));
}

double GaussTag::evaluate(const std::vector<std::complex<double>>& z, const std::vector<double>& t,
                          const std::map<int, double>& binding) const {
    double expo = 0.0;
    for (const auto& b : blocks_) {
        std::complex<double> zs{0.0, 0.0};
        for (size_t i = 0; i < b.zc.size(); ++i) zs += double(b.zc[i]) * z[i];
        double ts = 0.0;
        for (size_t i = 0; i < b.tc.size(); ++i) ts += double(b.tc[i]) * t[i];
        auto it = binding.find(b.scale_sym);
        if (it == binding.end())
            throw std::invalid_argument("GaussTag::evaluate: unbound scale " + symbol_name(b.scale_sym));
        expo += -double(b.mult) * (std::norm(zs) + ts * ts) / (4.0 * it->second);
    }
    return std::exp(expo);
}

std::string GaussTag::str() const {
    if (blocks_.empty()) return "";
    std::ostringstream os;
    os << "exp(-(";
    bool first = true;
    for (const auto& b : blocks_) {
        if (!first) os << " + ";
        first = false;
        if (b.mult != 1) os << b.mult << "*";
        os << "(";
        bool some = false;
        auto lin = [&](const std::vector<int>& v, Kind kind) {
            std::ostringstream ls;
            bool f2 = true;
            for (size_t i = 0; i < v.size(); ++i) {
                if (v[i] == 0) continue;
                if (!f2) ls << (v[i] > 0 ? "+" : "-");
                else if (v[i] < 0) ls << "-";
                f2 = false;
                if (std::abs(v[i]) != 1) ls << std::abs(v[i]) << "*";
                ls << coord_name(gen_id(int(i), kind));
            }
            return ls.str();
        };
        std::string zl = lin(b.zc, Kind::dz);
        if (!zl.empty()) {
            os << "|" << zl << "|^2";
            some = true;
        }
        std::string tl = lin(b.tc, Kind::dt);
        if (!tl.empty()) {
            if (some) os << " + ";
            os << "(" << tl << ")^2";
        }
        os << ")/(4*" << symbol_name(b.scale_sym) << ")";
    }
    os << "))";
    return os.str();
}

bool FormExpression::Key::operator<(const Key& o) const {
    if (word != o.word) return word < o.word;
    if (mono != o.mono) return mono < o.mono;
    if (!(gauss == o.gauss)) return gauss < o.gauss;
    return pi_half < o.pi_half;
}

FormExpression::FormExpression(const Rat& c) {
    if (c != 0) terms_[Key{}] = ScaleRational(c);
}

FormExpression FormExpression::scalar(ScaleRational c, int pi_half) {
    FormExpression f;
    if (!c.is_zero()) f.terms_[Key{{}, {}, {}, pi_half}] = std::move(c);
    return f;
}

FormExpression FormExpression::generator(int vertex, Kind kind) {
    FormExpression f;
    f.terms_[Key{{gen_id(vertex, kind)}, {}, {}, 0}] = ScaleRational(Rat(1));
    return f;
}

FormExpression FormExpression::coordinate(int vertex, Kind kind) {
    FormExpression f;
    f.terms_[Key{{}, {{gen_id(vertex, kind), 1}}, {}, 0}] = ScaleRational(Rat(1));
    return f;
}

FormExpression FormExpression::term(const FormTerm& t) {
    FormExpression f;
    f.add(Key{t.word, t.mono, t.gauss, t.pi_half}, t.coeff);
    return f;
}

void FormExpression::add(const Key& k, const ScaleRational& c) {
    if (c.is_zero()) return;
    // enforce canonical word
    for (size_t i = 0; i + 1 < k.word.size(); ++i) {
        if (k.word[i] >= k.word[i + 1]) throw std::logic_error("FormExpression::add: non-canonical word");
    }
    auto it = terms_.find(k);
    if (it == terms_.end()) {
        terms_.emplace(k, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

FormExpression FormExpression::operator+(const FormExpression& o) const {
    FormExpression r = *this;
    for (const auto& [k, c] : o.terms_) r.add(k, c);
    return r;
}

FormExpression& FormExpression::operator+=(const FormExpression& o) {
    for (const auto& [k, c] : o.terms_) add(k, c);
    return *this;
}

FormExpression FormExpression::operator-(const FormExpression& o) const {
    FormExpression r = *this;
    for (const auto& [k, c] : o.terms_) r.add(k, -c);
    return r;
}

FormExpression FormExpression::operator-() const {
    FormExpression r;
    for (const auto& [k, c] : terms_) r.terms_[k] = -c;
    return r;
}

FormExpression FormExpression::scaled(const ScaleRational& c, int pi_half) const {
    FormExpression r;
    if (c.is_zero()) return r;
    for (const auto& [k, v] : terms_) {
        Key nk = k;
        nk.pi_half += pi_half;
        r.add(nk, v * c);
    }
    return r;
}

bool FormExpression::operator==(const FormExpression& o) const {
    return (*this - o).is_zero();
}

std::optional<int> FormExpression::degree() const {
    std::optional<int> d;
    for (const auto& [k, c] : terms_) {
        int kd = int(k.word.size());
        if (!d)
            d = kd;
        else if (*d != kd)
            return std::nullopt;
    }
    return d;
}

int merge_words(const GenWord& a, const GenWord& b, GenWord& out) {
    out.clear();
    out.reserve(a.size() + b.size());
    size_t i = 0, j = 0;
    int sign = 1;
    while (i < a.size() && j < b.size()) {
        if (a[i] == b[j]) return 0;
        if (a[i] < b[j]) {
            out.push_back(a[i++]);
        } else {
            // b[j] hops over the remaining a-generators
            if ((a.size() - i) % 2 == 1) sign = -sign;
            out.push_back(b[j++]);
        }
    }
    while (i < a.size()) out.push_back(a[i++]);
    while (j < b.size()) out.push_back(b[j++]);
    return sign;
}

CoordMono mono_mul(const CoordMono& a, const CoordMono& b) {
    CoordMono r;
    size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            r.push_back(a[i++]);
        } else if (i == a.size() || b[j].first < a[i].first) {
            r.push_back(b[j++]);
        } else {
            r.push_back({a[i].first, a[i].second + b[j].second});
            ++i;
            ++j;
        }
    }
    return r;
}

FormExpression wedge(const FormExpression& a, const FormExpression& b) {
    FormExpression r;
    GenWord w;
    for (const auto& [ka, ca] : a.terms()) {
        for (const auto& [kb, cb] : b.terms()) {
            int s = merge_words(ka.word, kb.word, w);
            if (s == 0) continue;
            FormExpression::Key k;
            k.word = w;
            k.mono = mono_mul(ka.mono, kb.mono);
            k.gauss = ka.gauss.merged(kb.gauss);
            k.pi_half = ka.pi_half + kb.pi_half;
            ScaleRational c = ca * cb;
            if (s < 0) c = -c;
            r.add(k, c);
        }
    }
    return r;
}

namespace {

// d/d(coord) of the Gaussian exponent of one block:
//   z_v: -mult * zc[v] * (sum_i zc[i] zbar_i) / (4 T)
//   zbar_v: -mult * zc[v] * (sum_i zc[i] z_i) / (4 T)
//   t_v: -mult * tc[v] * (sum_i tc[i] t_i) / (2 T)
FormExpression block_derivative(const GaussBlock& b, int coord_id) {
    FormExpression out;
    int v = gen_vertex(coord_id);
    Kind kind = gen_kind(coord_id);
    ScaleRational inv_scale = ScaleRational(Rat(1)) / ScaleRational::symbol(b.scale_sym);
    if (kind == Kind::dz || kind == Kind::dzbar) {
        if (v >= int(b.zc.size()) || b.zc[v] == 0) return out;
        Kind other = (kind == Kind::dz) ? Kind::dzbar : Kind::dz;
        for (size_t i = 0; i < b.zc.size(); ++i) {
            if (b.zc[i] == 0) continue;
            ScaleRational c = ScaleRational(Rat(-b.mult * b.zc[v] * b.zc[i], 4)) * inv_scale;
            FormExpression::Key k;
            k.mono = {{gen_id(int(i), other), 1}};
            out.add(k, c);
        }
    } else {
        if (v >= int(b.tc.size()) || b.tc[v] == 0) return out;
        for (size_t i = 0; i < b.tc.size(); ++i) {
            if (b.tc[i] == 0) continue;
            ScaleRational c = ScaleRational(Rat(-b.mult * b.tc[v] * b.tc[i], 2)) * inv_scale;
            FormExpression::Key k;
            k.mono = {{gen_id(int(i), Kind::dt), 1}};
            out.add(k, c);
        }
    }
    return out;
}

}  // namespace

FormExpression derive(const FormExpression& f, int coord_id) {
    FormExpression r;
    for (const auto& [k, c] : f.terms()) {
        // product rule over the monomial
        for (size_t i = 0; i < k.mono.size(); ++i) {
            if (k.mono[i].first != coord_id) continue;
            FormExpression::Key nk = k;
            int e = nk.mono[i].second;
            if (e == 1)
                nk.mono.erase(nk.mono.begin() + i);
            else
                nk.mono[i].second = e - 1;
            r.add(nk, c * ScaleRational(Rat(e)));
        }
        // chain rule over the Gaussian exponent
        for (const auto& b : k.gauss.blocks()) {
            FormExpression d = block_derivative(b, coord_id);
            for (const auto& [dk, dc] : d.terms()) {
                FormExpression::Key nk = k;
                nk.mono = mono_mul(k.mono, dk.mono);
                r.add(nk, c * dc);
            }
        }
    }
    return r;
}

std::complex<double> evaluate(const FormExpression& f, const Point& p,
                              const std::map<int, double>& binding, const GenWord& word) {
    size_t top = 0;
    for (const auto& [k, c] : f.terms()) top = std::max(top, k.word.size());
    if (!f.is_zero() && !f.degree().has_value() && word.size() < top)
        throw std::domain_error("evaluate: non-top word requested on a mixed-degree expression");
    std::complex<double> total{0.0, 0.0};
    for (const auto& [k, c] : f.terms()) {
        if (k.word != word) continue;
        std::complex<double> v{c.evaluate(binding), 0.0};
        v *= std::pow(M_PI, 0.5 * k.pi_half);
        for (const auto& [var, e] : k.mono) {
            std::complex<double> base;
            switch (gen_kind(var)) {
                case Kind::dz: base = p.z.at(gen_vertex(var)); break;
                case Kind::dzbar: base = std::conj(p.z.at(gen_vertex(var))); break;
                case Kind::dt: base = {p.t.at(gen_vertex(var)), 0.0}; break;
            }
            for (int q = 0; q < e; ++q) v *= base;
        }
        v *= k.gauss.evaluate(p.z, p.t, binding);
        total += v;
    }
    return total;
}

FormExpression reflect_time(const FormExpression& f, int vertex) {
    int tvar = gen_id(vertex, Kind::dt);
    FormExpression r;
    for (const auto& [k, c] : f.terms()) {
        int sgn = 1;
        for (const auto& [var, e] : k.mono)
            if (var == tvar && (e % 2)) sgn = -sgn;
        for (int g : k.word)
            if (g == tvar) sgn = -sgn;
        std::vector<GaussBlock> blocks = k.gauss.blocks();
        for (auto& b : blocks)
            if (vertex < int(b.tc.size())) b.tc[vertex] = -b.tc[vertex];
        FormExpression::Key nk = k;
        nk.gauss = GaussTag(std::move(blocks));
        r.add(nk, sgn < 0 ? -c : c);
    }
    return r;
}

FormExpression swap_vertices(const FormExpression& f, int v0, int v1) {
    auto swap_id = [&](int id) {
        int v = gen_vertex(id);
        if (v == v0) v = v1;
        else if (v == v1) v = v0;
        return gen_id(v, gen_kind(id));
    };
    FormExpression r;
    for (const auto& [k, c] : f.terms()) {
        FormExpression piece = FormExpression::scalar(c, k.pi_half);
        {
            // rebuild monomial and word with swapped vertex ids
            FormExpression::Key nk;
            nk.pi_half = k.pi_half;
            CoordMono m;
            for (const auto& [var, e] : k.mono) m.push_back({swap_id(var), e});
            std::sort(m.begin(), m.end());
            nk.mono = m;
            std::vector<GaussBlock> blocks = k.gauss.blocks();
            size_t need = size_t(std::max(v0, v1)) + 1;
            for (auto& b : blocks) {
                if (b.zc.size() < need) b.zc.resize(need, 0);
                if (b.tc.size() < need) b.tc.resize(need, 0);
                std::swap(b.zc[v0], b.zc[v1]);
                std::swap(b.tc[v0], b.tc[v1]);
            }
            nk.gauss = GaussTag(std::move(blocks));
            // word: swap ids, re-sort counting transpositions
            std::vector<int> w;
            for (int g : k.word) w.push_back(swap_id(g));
            int sgn = 1;
            for (size_t i = 0; i < w.size(); ++i)
                for (size_t j = i + 1; j < w.size(); ++j)
                    if (w[i] > w[j]) sgn = -sgn;
            std::sort(w.begin(), w.end());
            bool dup = std::adjacent_find(w.begin(), w.end()) != w.end();
            if (dup) continue;
            nk.word = w;
            r.add(nk, sgn < 0 ? -c : c);
        }
        (void)piece;
    }
    return r;
}

FormExpression interior(const FormExpression& f, int gen) {
    FormExpression r;
    for (const auto& [k, c] : f.terms()) {
        auto it = std::find(k.word.begin(), k.word.end(), gen);
        if (it == k.word.end()) continue;
        int pos = int(it - k.word.begin());
        FormExpression::Key nk = k;
        nk.word.erase(nk.word.begin() + pos);
        r.add(nk, (pos % 2) ? -c : c);
    }
    return r;
}

std::string FormExpression::render() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : terms_) {
        if (!first) os << "\n+ ";
        first = false;
        os << "(" << c.str() << ")";
        if (k.pi_half != 0) {
            if (k.pi_half % 2 == 0)
                os << "*pi^" << (k.pi_half / 2);
            else
                os << "*pi^(" << k.pi_half << "/2)";
        }
        for (const auto& [var, e] : k.mono) {
            os << "*" << coord_name(var);
            if (e != 1) os << "^" << e;
        }
        if (!k.gauss.empty()) os << "*" << k.gauss.str();
        if (!k.word.empty()) {
            os << " ";
            for (size_t i = 0; i < k.word.size(); ++i) {
                if (i) os << "^";
                os << gen_name(k.word[i]);
            }
        }
    }
    return os.str();
}

}  // namespace mixedbf
