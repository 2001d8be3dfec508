#include "mixedbf/scalepoly.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace mixedbf {

std::string symbol_name(int sym) {
    if (sym == kEpsSymbol) return "eps";
    if (sym >= 0) return "T" + std::to_string(sym);
    return "s" + std::to_string(-2 - sym);
}

ScalePoly::ScalePoly(const Rat& c) {
    if (c != 0) terms_[{}] = c;
}

ScalePoly ScalePoly::symbol(int sym, int half_exp) {
    ScalePoly p;
    if (half_exp == 0) return ScalePoly(Rat(1));
    p.terms_[{{sym, half_exp}}] = Rat(1);
    return p;
}

bool ScalePoly::is_constant() const {
    if (terms_.empty()) return true;
    return terms_.size() == 1 && terms_.begin()->first.empty();
}

Rat ScalePoly::constant_value() const {
    if (terms_.empty()) return Rat(0);
    if (!is_constant()) throw std::logic_error("ScalePoly: not a constant");
    return terms_.begin()->second;
}

void ScalePoly::add_term(const ScaleMono& m, const Rat& c) {
    if (c == 0) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_[m] = c;
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

ScalePoly ScalePoly::operator+(const ScalePoly& o) const {
    ScalePoly r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, c);
    return r;
}

ScalePoly& ScalePoly::operator+=(const ScalePoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

ScalePoly ScalePoly::operator-(const ScalePoly& o) const {
    ScalePoly r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, -c);
    return r;
}

ScalePoly ScalePoly::operator-() const {
    ScalePoly r;
    for (const auto& [m, c] : terms_) r.terms_[m] = -c;
    return r;
}

namespace {

ScaleMono mono_product(const ScaleMono& a, const ScaleMono& b) {
    ScaleMono r;
    size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            r.push_back(a[i++]);
        } else if (i == a.size() || b[j].first < a[i].first) {
            r.push_back(b[j++]);
        } else {
            int e = a[i].second + b[j].second;
            if (e != 0) r.push_back({a[i].first, e});
            ++i;
            ++j;
        }
    }
    return r;
}

}  // namespace

ScalePoly ScalePoly::operator*(const ScalePoly& o) const {
    ScalePoly r;
    for (const auto& [ma, ca] : terms_)
        for (const auto& [mb, cb] : o.terms_) r.add_term(mono_product(ma, mb), ca * cb);
    return r;
}

double ScalePoly::evaluate(const std::map<int, double>& binding) const {
    double total = 0.0;
    for (const auto& [m, c] : terms_) {
        double v = to_double(c);
        for (const auto& [sym, he] : m) {
            auto it = binding.find(sym);
            if (it == binding.end())
                throw std::invalid_argument("ScalePoly::evaluate: unbound symbol " + symbol_name(sym));
            if (it->second <= 0.0)
                throw std::domain_error("ScalePoly::evaluate: scale symbol must be positive");
            v *= std::pow(std::sqrt(it->second), he);
        }
        total += v;
    }
    return total;
}

int ScalePoly::max_half_degree() const {
    int best = 0;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        int d = 0;
        for (const auto& [s, e] : m) d += e;
        if (first || d > best) best = d;
        first = false;
    }
    return best;
}

int ScalePoly::min_half_degree() const {
    int best = 0;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        int d = 0;
        for (const auto& [s, e] : m) d += e;
        if (first || d < best) best = d;
        first = false;
    }
    return best;
}

std::string ScalePoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << to_string(c);
        for (const auto& [sym, he] : m) {
            os << "*" << symbol_name(sym);
            if (he != 2) {
                if (he % 2 == 0)
                    os << "^" << (he / 2);
                else
                    os << "^(" << he << "/2)";
            }
        }
    }
    return os.str();
}

namespace {

// Monomial gcd over all terms: per symbol the minimum exponent (absent = 0).
ScaleMono content_mono(const ScalePoly& p) {
    std::map<int, int> mins;
    bool first = true;
    for (const auto& [m, c] : p.terms()) {
        std::map<int, int> e(m.begin(), m.end());
        if (first) {
            mins = e;
            first = false;
        } else {
            for (auto it = mins.begin(); it != mins.end();) {
                auto je = e.find(it->first);
                int other = (je == e.end()) ? 0 : je->second;
                it->second = std::min(it->second, other);
                if (it->second == 0)
                    it = mins.erase(it);
                else
                    ++it;
            }
            for (const auto& [s, v] : e)
                if (v < 0 && !mins.count(s)) mins[s] = 0;  // handled below
        }
    }
    // ensure negative exponents are always pulled out
    for (const auto& [m, c] : p.terms())
        for (const auto& [s, v] : m)
            if (v < 0) {
                auto it = mins.find(s);
                if (it == mins.end())
                    mins[s] = v;
                else
                    it->second = std::min(it->second, v);
            }
    ScaleMono out;
    for (const auto& [s, v] : mins)
        if (v != 0) out.push_back({s, v});
    return out;
}

ScalePoly times_mono(const ScalePoly& p, const ScaleMono& m, const Rat& c) {
    ScalePoly f;
    f.add_term(m, c);
    return p * f;
}

ScaleMono mono_inverse(const ScaleMono& m) {
    ScaleMono r = m;
    for (auto& [s, e] : r) e = -e;
    return r;
}

}  // namespace

ScaleRational::ScaleRational(const Rat& c) : num_(c) {}

ScaleRational::ScaleRational(const ScalePoly& p) : num_(p) {}

ScaleRational::ScaleRational(const ScalePoly& num, const ScalePoly& den) : num_(num) {
    if (den.is_zero()) throw std::domain_error("ScaleRational: zero denominator");
    push_den_factor(den, 1);
    prune();
}

// Insert a denominator factor: strip monomial/rational content into the
// numerator, keep the monic remainder with its power.
void ScaleRational::push_den_factor(const ScalePoly& f, int power) {
    if (power == 0) return;
    if (f.is_zero()) throw std::domain_error("ScaleRational: zero denominator factor");
    ScaleMono content = content_mono(f);
    ScalePoly g = times_mono(f, mono_inverse(content), Rat(1));
    Rat lead = g.terms().begin()->second;
    if (lead != 1) g = times_mono(g, {}, Rat(1) / lead);
    // numerator absorbs content^{-power} * lead^{-power}
    Rat cc(1);
    ScaleMono shift;
    for (int i = 0; i < std::abs(power); ++i) {
        shift = mono_product(shift, content);
        cc *= lead;
    }
    if (power > 0) {
        num_ = times_mono(num_, mono_inverse(shift), Rat(1) / cc);
    } else {
        num_ = times_mono(num_, shift, cc);
    }
    if (!g.is_constant()) {
        den_[g] += power;
        if (den_[g] == 0) den_.erase(g);
        if (den_[g] < 0) {
            // negative power: multiply numerator instead
            int p = -den_[g];
            den_.erase(g);
            for (int i = 0; i < p; ++i) num_ = num_ * g;
        }
    }
}

void ScaleRational::prune() {
    if (num_.is_zero()) den_.clear();
}

ScalePoly ScaleRational::den() const {
    ScalePoly d{Rat(1)};
    for (const auto& [f, p] : den_)
        for (int i = 0; i < p; ++i) d = d * f;
    return d;
}

Rat ScaleRational::constant_value() const {
    if (!is_constant()) throw std::logic_error("ScaleRational: not a constant");
    return num_.constant_value();
}

ScaleRational ScaleRational::operator+(const ScaleRational& o) const {
    ScaleRational r;
    // common denominator: factor-wise max powers
    r.den_ = den_;
    for (const auto& [f, p] : o.den_) {
        auto it = r.den_.find(f);
        if (it == r.den_.end())
            r.den_[f] = p;
        else
            it->second = std::max(it->second, p);
    }
    ScalePoly a = num_, b = o.num_;
    for (const auto& [f, p] : r.den_) {
        auto ia = den_.find(f);
        int pa = (ia == den_.end()) ? 0 : ia->second;
        for (int i = 0; i < p - pa; ++i) a = a * f;
        auto ib = o.den_.find(f);
        int pb = (ib == o.den_.end()) ? 0 : ib->second;
        for (int i = 0; i < p - pb; ++i) b = b * f;
    }
    r.num_ = a + b;
    r.prune();
    return r;
}

ScaleRational& ScaleRational::operator+=(const ScaleRational& o) {
    *this = *this + o;
    return *this;
}

ScaleRational ScaleRational::operator-(const ScaleRational& o) const { return *this + (-o); }

ScaleRational ScaleRational::operator-() const {
    ScaleRational r = *this;
    r.num_ = -r.num_;
    return r;
}

ScaleRational ScaleRational::operator*(const ScaleRational& o) const {
    ScaleRational r;
    r.num_ = num_ * o.num_;
    r.den_ = den_;
    for (const auto& [f, p] : o.den_) {
        r.den_[f] += p;
        if (r.den_[f] == 0) r.den_.erase(f);
    }
    r.prune();
    return r;
}

ScaleRational& ScaleRational::operator*=(const ScaleRational& o) {
    *this = *this * o;
    return *this;
}

ScaleRational ScaleRational::operator/(const ScaleRational& o) const {
    if (o.is_zero()) throw std::domain_error("ScaleRational: division by zero");
    ScaleRational r;
    r.num_ = num_;
    r.den_ = den_;
    // multiply by o.den factors
    for (const auto& [f, p] : o.den_) {
        ScalePoly fp = f;
        for (int i = 1; i < p; ++i) fp = fp * f;
        r.num_ = r.num_ * fp;
    }
    r.push_den_factor(o.num_, 1);
    // cancel identical factor powers where possible
    r.prune();
    return r;
}

bool ScaleRational::equals(const ScaleRational& o) const {
    // fast path: identical factored denominators
    if (den_ == o.den_) return num_ == o.num_;
    return (num_ * o.den()) == (o.num_ * den());
}

double ScaleRational::evaluate(const std::map<int, double>& binding) const {
    double d = 1.0;
    for (const auto& [f, p] : den_) d *= std::pow(f.evaluate(binding), p);
    if (d == 0.0) throw std::domain_error("ScaleRational::evaluate: denominator vanished");
    return num_.evaluate(binding) / d;
}

std::string ScaleRational::str() const {
    if (den_.empty()) return num_.str();
    std::ostringstream os;
    os << "(" << num_.str() << ")/(";
    bool first = true;
    for (const auto& [f, p] : den_) {
        if (!first) os << "*";
        first = false;
        os << "(" << f.str() << ")";
        if (p != 1) os << "^" << p;
    }
    os << ")";
    return os.str();
}

ScaleRational pow(const ScaleRational& b, int e) {
    ScaleRational r{Rat(1)};
    ScaleRational base = b;
    if (e < 0) {
        base = ScaleRational(Rat(1)) / b;
        e = -e;
    }
    for (int i = 0; i < e; ++i) r = r * base;
    return r;
}

}  // namespace mixedbf
